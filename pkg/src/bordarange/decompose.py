"""Block planner and end-to-end realization of level patterns.

``plan_decomposition`` splits a {2,4}-pattern with an even number (>= 2) of
2s into individually realizable blocks: leading runs of 4s of even length
become four-blocks, the prefix through the next second occurrence of 2
becomes one of the sequence-family shapes, and a trailing odd run of 4s
donates one 4 to that shape.  ``realize`` builds each block at n = 3,
catenates them in order, and pads to the requested odd voter count.
"""

from __future__ import annotations

from dataclasses import dataclass

from .classify import Rule, Verdict, classify
from .construct import (
    BaseWitnessRequest,
    SeqI,
    SeqII,
    SeqIII,
    SeqIV,
    TwoLevel,
    base_profile,
    request_target,
)
from .errors import (
    ConstructionError,
    NotDecomposable,
    NotInRangeError,
    ParityError,
    UnsupportedConstruction,
)
from .model import (
    LevelPattern,
    Profile,
    borda_scores,
    catenate,
    extend_to_odd_n,
    format_pattern,
    pattern_of,
)


@dataclass(frozen=True)
class FourBlock:
    """A run of 2*pairs levels of size 4, realized as catenated (4,4) witnesses."""

    pairs: int


PlanBlock = BaseWitnessRequest | FourBlock


def block_target(block: PlanBlock) -> LevelPattern:
    if isinstance(block, FourBlock):
        return (4,) * (2 * block.pairs)
    return request_target(block)


@dataclass(frozen=True)
class DecompositionPlan:
    pattern: LevelPattern
    blocks: tuple[PlanBlock, ...]


def _base_request_for(shape: LevelPattern) -> BaseWitnessRequest:
    # shape is a prefix through its second 2, possibly with one trailing 4
    fours = shape.count(4)
    if shape == (2, 2):
        return TwoLevel(1, 1)
    if shape[0] == 2 and shape[-1] == 2:
        return SeqI(fours)
    if shape[0] == 4 and shape[-1] == 2:
        return SeqII(fours)
    if shape[0] == 2 and shape[-1] == 4:
        return SeqIII(fours)
    return SeqIV(fours)


def plan_decomposition(pattern: LevelPattern) -> DecompositionPlan:
    """Split a {2,4}-pattern with an even number (>= 2) of 2s into blocks.

    The planner is greedy and leftmost, so plans are deterministic.  The
    concatenation of all block targets always equals the input pattern; this
    is asserted before returning.
    """
    pattern = tuple(pattern)
    if not pattern or any(s not in (2, 4) for s in pattern):
        raise NotDecomposable(f"pattern {format_pattern(pattern)} has sizes outside {{2,4}}")
    twos = pattern.count(2)
    if twos < 2 or twos % 2 == 1:
        raise NotDecomposable(
            f"pattern {format_pattern(pattern)} needs an even number (>= 2) of 2s"
        )

    blocks: list[PlanBlock] = []
    rest = pattern
    while rest:
        if 2 not in rest:
            # trailing run of 4s; the planner keeps it even (see below)
            assert len(rest) % 2 == 0
            blocks.append(FourBlock(pairs=len(rest) // 2))
            break
        lead = 0
        while rest[lead] == 4:
            lead += 1
        even_lead = lead - (lead % 2)
        if even_lead:
            blocks.append(FourBlock(pairs=even_lead // 2))
            rest = rest[even_lead:]
        # rest now starts (2, ...) or (4, 2, ...); cut through the second 2
        second_two = [i for i, s in enumerate(rest) if s == 2][1]
        shape, rest = rest[: second_two + 1], rest[second_two + 1 :]
        if rest and 2 not in rest and len(rest) % 2 == 1:
            # odd trailing run of 4s donates one 4 to the shape
            shape, rest = shape + (4,), rest[1:]
        blocks.append(_base_request_for(shape))

    flattened = tuple(s for block in blocks for s in block_target(block))
    assert flattened == pattern, f"plan lost sizes: {flattened} != {pattern}"
    return DecompositionPlan(pattern=pattern, blocks=tuple(blocks))


def _four_four_witness(cache, seed: int, search_budget: int | None) -> Profile:
    """The (4,4) base witness: taken from the cache, else searched and cached."""
    from .oracle import search_witness

    target = (4, 4)
    if cache is not None:
        hit = cache.get(target, 3)
        if hit is not None:
            return hit
    kwargs = {"seed": seed}
    if search_budget is not None:
        kwargs["budget"] = search_budget
    result = search_witness(target, 3, **kwargs)
    if result.profile is None:
        raise ConstructionError("no (4,4) witness found within the search budget")
    if cache is not None:
        cache.put(target, 3, result.profile, provenance="searched")
    return result.profile


def _build_block(block: PlanBlock, cache, seed: int, search_budget: int | None) -> Profile:
    if isinstance(block, FourBlock):
        unit = _four_four_witness(cache, seed, search_budget)
        profile = unit
        for _ in range(block.pairs - 1):
            profile = catenate(profile, unit)
        return profile
    return base_profile(block)


def _lemma4_blocks(pattern: LevelPattern) -> list[PlanBlock]:
    # all sizes even with odd quotients and even total implies an even level
    # count, so consecutive levels pair up
    assert len(pattern) % 2 == 0
    blocks: list[PlanBlock] = []
    for first, second in zip(pattern[0::2], pattern[1::2]):
        if (first, second) == (4, 4):
            blocks.append(FourBlock(pairs=1))
        elif (first // 2) % 2 == 1 and (second // 2) % 2 == 1:
            blocks.append(TwoLevel(first // 2, second // 2))
        else:
            raise UnsupportedConstruction(
                f"no recipe for the two-level block ({first},{second}); "
                "only odd half-sizes and (4,4) are constructible"
            )
    return blocks


def realize(
    pattern: LevelPattern,
    n: int = 3,
    *,
    cache=None,
    seed: int = 0,
    search_budget: int | None = None,
) -> Profile:
    """Build a verified witness profile for ``pattern`` at odd ``n`` >= 3.

    Raises NotInRangeError for patterns provably outside the range,
    UnsupportedConstruction for patterns whose membership is known (or
    unknown) but for which no constructive recipe exists here.
    """
    pattern = tuple(pattern)
    if n < 3 or n % 2 == 0:
        raise ParityError(f"voter count must be odd and >= 3, got {n}")

    verdict = classify(pattern)
    if verdict.verdict is Verdict.NOT_IN_RANGE:
        raise NotInRangeError(
            f"pattern {format_pattern(pattern)} is not in the Borda range for any odd n"
        )
    if verdict.verdict is Verdict.UNKNOWN:
        raise UnsupportedConstruction(
            f"membership of {format_pattern(pattern)} is unknown; nothing to build"
        )

    twos = pattern.count(2)
    if set(pattern) <= {2, 4} and twos >= 2 and twos % 2 == 0:
        blocks = plan_decomposition(pattern).blocks
    elif verdict.rule is Rule.LEMMA4:
        blocks = tuple(_lemma4_blocks(pattern))
    else:
        raise UnsupportedConstruction(
            f"pattern {format_pattern(pattern)} is in range ({verdict.rule.value}) "
            "but no construction is implemented for it"
        )

    profile: Profile | None = None
    boundary_checks: list[tuple[int, int]] = []  # (max score so far, min of next block)
    for block in blocks:
        piece = _build_block(block, cache, seed, search_budget)
        if profile is None:
            profile = piece
        else:
            before = max(borda_scores(profile))
            profile = catenate(profile, piece)
            scores = borda_scores(profile)
            boundary_checks.append((before, min(scores[-piece.m:])))
    assert profile is not None
    for upper_max, lower_min in boundary_checks:
        if upper_max >= lower_min:
            raise ConstructionError("catenated blocks overlap in score; this is a bug")

    if pattern_of(profile) != pattern:
        raise ConstructionError(
            f"realized pattern {format_pattern(pattern_of(profile))} "
            f"!= requested {format_pattern(pattern)}"
        )
    return extend_to_odd_n(profile, n)
