"""Membership rules for level patterns in the Borda range at odd voter counts.

The classifier applies a fixed list of decision rules and reports which one
fired.  Patterns not covered by any rule get an explicit Unknown verdict;
the classifier never guesses.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import InvalidPattern, OddLevelPresent
from .model import LevelPattern


class Verdict(str, Enum):
    IN_RANGE = "in_range"
    NOT_IN_RANGE = "not_in_range"
    UNKNOWN = "unknown"


class Rule(str, Enum):
    ODD_LEVEL = "OddLevel"
    LEMMA4 = "Lemma4"
    NEW_LEMMA = "NewLemma"
    NEW_THEOREM = "NewTheorem"
    THEOREM3 = "Theorem3"


APPLICABLE_IN_RANGE = "all odd n >= 3"
APPLICABLE_NOT_IN_RANGE = "no odd n"
APPLICABLE_UNKNOWN = "unknown"


@dataclass(frozen=True)
class PowerDecomposition:
    """Factorization m_i = 2^k * s_i with k maximal across all levels."""

    k: int
    s: tuple[int, ...]

    @property
    def s_sum(self) -> int:
        return sum(self.s)


@dataclass(frozen=True)
class Classification:
    verdict: Verdict
    rule: Rule | None
    applicable_n: str


def _validate(pattern: LevelPattern) -> None:
    if len(pattern) < 1 or any(s < 1 for s in pattern):
        raise InvalidPattern(f"invalid pattern {pattern}")


def power_decomposition(pattern: LevelPattern) -> PowerDecomposition:
    """Largest power of 2 dividing every level size, and the odd parts-of-2 quotients.

    Only defined when every size is even; then k >= 1 and at least one
    quotient s_i is odd (otherwise k would not be maximal).
    """
    _validate(pattern)
    if any(s % 2 for s in pattern):
        raise OddLevelPresent(f"pattern {pattern} has an odd level")
    k = 1
    while all(s % (2 ** (k + 1)) == 0 for s in pattern):
        k += 1
    s = tuple(size // 2**k for size in pattern)
    assert any(x % 2 for x in s), "maximality of k guarantees an odd quotient"
    return PowerDecomposition(k=k, s=s)


def _is_two_two_lemma_shape(pattern: LevelPattern) -> bool:
    """Exactly two 2s, everything else 4, with the 2s placed as one of the
    four supported shapes: (2,4..4,2), (4,2,4..4,2), (2,4..4,2,4), (4,2,4..4,2,4)."""
    twos = [i for i, s in enumerate(pattern) if s == 2]
    if len(twos) != 2 or any(s not in (2, 4) for s in pattern) or 4 not in pattern:
        return False
    t = len(pattern)
    return tuple(twos) in {(0, t - 1), (1, t - 1), (0, t - 2), (1, t - 2)}


def classify(pattern: LevelPattern) -> Classification:
    """Decide membership of a pattern in the Borda range for odd n >= 3.

    Rule precedence (first match wins):

    1. any level size odd           -> in range (OddLevel)
    2. all even, sum of s_i odd     -> not in range (Theorem3)
    3. all even, sum even, s_i odd  -> in range (Lemma4)
    4. sizes in {2,4}, both present,
       even count >= 2 of 2s        -> in range (NewLemma for the four
                                       two-2s shapes, else NewTheorem)
    5. otherwise                    -> unknown
    """
    _validate(pattern)
    if sum(pattern) < 2:
        raise InvalidPattern(f"pattern {pattern} covers fewer than 2 alternatives")

    if any(s % 2 for s in pattern):
        return Classification(Verdict.IN_RANGE, Rule.ODD_LEVEL, APPLICABLE_IN_RANGE)

    decomposition = power_decomposition(pattern)
    if decomposition.s_sum % 2 == 1:
        return Classification(Verdict.NOT_IN_RANGE, Rule.THEOREM3, APPLICABLE_NOT_IN_RANGE)
    if all(x % 2 for x in decomposition.s):
        # T odd numbers with an even sum force an even T
        assert len(pattern) % 2 == 0
        return Classification(Verdict.IN_RANGE, Rule.LEMMA4, APPLICABLE_IN_RANGE)

    twos = pattern.count(2)
    if set(pattern) == {2, 4} and twos % 2 == 0 and twos >= 2:
        rule = Rule.NEW_LEMMA if _is_two_two_lemma_shape(pattern) else Rule.NEW_THEOREM
        return Classification(Verdict.IN_RANGE, rule, APPLICABLE_IN_RANGE)

    return Classification(Verdict.UNKNOWN, None, APPLICABLE_UNKNOWN)
