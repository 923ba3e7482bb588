"""Explicit witness builders for three-voter profiles.

Every builder returns a verified profile: after assembling the rankings it
re-scores them and checks the resulting pattern against the target.  A
mismatch raises ConstructionError; builders never fall back to search, so a
returned profile is itself the proof of membership.

The builders share one base object, the two-level profile for a pattern
(2*a, 2*b) with a, b odd.  The four sequence families rewrite only voter 1
of that base, block by block; voters 2 and 3 are never touched.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

from .errors import ConstructionError, NotInTable
from .model import (
    LevelPattern,
    Profile,
    borda_scores,
    format_pattern,
    invert_profile,
    pattern_of,
    weak_order_of,
)


@dataclass(frozen=True)
class TwoLevel:
    s1: int
    s2: int


@dataclass(frozen=True)
class SeqI:
    fours: int


@dataclass(frozen=True)
class SeqII:
    fours: int


@dataclass(frozen=True)
class SeqIII:
    fours: int


@dataclass(frozen=True)
class SeqIV:
    fours: int


@dataclass(frozen=True)
class Appendix:
    pattern: LevelPattern


BaseWitnessRequest = TwoLevel | SeqI | SeqII | SeqIII | SeqIV | Appendix


def _verified(profile: Profile, target: LevelPattern, what: str) -> Profile:
    found = pattern_of(profile)
    if found != target:
        raise ConstructionError(
            f"{what}: built pattern {format_pattern(found)}, wanted {format_pattern(target)}"
        )
    return profile


def two_level_profile(s1: int, s2: int) -> Profile:
    """Three-voter witness for the two-level pattern (2*s1, 2*s2), s1 and s2 odd.

    Voter 1 ranks 0..m-1 in order.  Voters 2 and 3 interleave four blocks of
    descending same-parity subscripts over the two halves of the alternative
    set, then append the remaining parity class in descending order.  The two
    level scores always differ by exactly (s1 + s2) / 2.
    """
    if s1 < 1 or s2 < 1 or s1 % 2 == 0 or s2 % 2 == 0:
        raise ValueError(f"both block sizes must be odd and positive, got {s1}, {s2}")
    span = s1 + s2
    m = 2 * span

    # 1-based subscripts; x1..x_s1 and x_{span+1}..x_{span+s1} form the best
    # level, the rest the worst level.
    voter2 = (
        [span + j for j in range(s1 - 1, 0, -2)]
        + [span + j for j in range(span, s1, -2)]
        + [j for j in range(s1 - 1, 0, -2)]
        + [j for j in range(span, s1, -2)]
        + [j for j in range(2 * span - 1, 0, -2)]
    )
    voter3 = (
        [span + j for j in range(s1, 0, -2)]
        + [span + j for j in range(span - 1, s1 + 1, -2)]
        + [j for j in range(s1, 0, -2)]
        + [j for j in range(span - 1, s1 + 1, -2)]
        + [j for j in range(2 * span, 0, -2)]
    )
    profile = Profile(
        m=m,
        n=3,
        rankings=(
            tuple(range(m)),
            tuple(x - 1 for x in voter2),
            tuple(x - 1 for x in voter3),
        ),
    )
    target = (2 * s1, 2 * s2)
    profile = _verified(profile, target, f"two_level_profile({s1},{s2})")
    order = weak_order_of(profile)
    gap = order.level_scores[1] - order.level_scores[0]
    if gap != span // 2:
        raise ConstructionError(
            f"two_level_profile({s1},{s2}): level gap {gap}, wanted {span // 2}"
        )
    return profile


# Voter-1 block rewrites.  Each takes a block size g (odd) and returns the new
# order of the 1-based in-block labels 1..g.

def _single_then_pairs(g: int) -> list[int]:
    # [g, g-2, g-1, g-4, g-3, ..., 1, 2]
    order = [g]
    for j in range((g - 1) // 2, 0, -1):
        order += [2 * j - 1, 2 * j]
    return order


def _pair_then_single_then_pairs(g: int) -> list[int]:
    # [g-1, g, g-2, g-4, g-3, ..., 1, 2]
    order = [g - 1, g, g - 2]
    for j in range((g - 3) // 2, 0, -1):
        order += [2 * j - 1, 2 * j]
    return order


def _pairs_then_single(g: int) -> list[int]:
    # [g-1, g, g-3, g-2, ..., 2, 3, 1]
    order: list[int] = []
    for j in range((g - 1) // 2, 0, -1):
        order += [2 * j, 2 * j + 1]
    order.append(1)
    return order


def _pairs_then_single_then_pair(g: int) -> list[int]:
    # [g-1, g, ..., 4, 5, 3, 1, 2]; needs g >= 3
    order: list[int] = []
    for j in range((g - 1) // 2, 1, -1):
        order += [2 * j, 2 * j + 1]
    order += [3, 1, 2]
    return order


def _assemble_voter1(half: list[int], span: int) -> tuple[int, ...]:
    # the same half layout repeats for subscripts span+1 .. 2*span
    labels = half + [x + span for x in half]
    return tuple(x - 1 for x in labels)


def _build_sequence(
    s1: int,
    s2: int,
    upper_rewrite,
    lower_rewrite,
    target: LevelPattern,
    repair: bool,
    what: str,
) -> Profile:
    """Assemble voter 1 from the block rewrites on top of the two-level base.

    ``repair`` enables the relocation of the bottom pair {x1, x2}: when some
    level of the lower block ends up exactly one score point better than in
    the base profile, that level collides with the relocated pair's natural
    position, and {x1, x2} must be re-inserted just below it, then shifted
    down two slots at a time while its score still ties any lower-block
    option.  If the first insertion point fails verification, the top of the
    lower block is tried instead (one shape needs this; scoring arbitrates).
    """
    base = two_level_profile(s1, s2)
    base_scores = borda_scores(base)
    span = s1 + s2

    half = [x for x in upper_rewrite(s1)] + [s1 + x for x in lower_rewrite(s2)]

    def profile_for(half_order: list[int]) -> Profile:
        return Profile(
            m=base.m,
            n=3,
            rankings=(_assemble_voter1(half_order, span),) + base.rankings[1:],
        )

    candidate = profile_for(half)
    if not repair:
        return _verified(candidate, target, what)

    lower_labels = list(range(s1 + 1, span + 1))
    scores = borda_scores(candidate)
    special = [
        x for x in lower_labels if scores[x - 1] - base_scores[x - 1] == -1
    ]
    if not special:
        return _verified(candidate, target, what)
    if len(special) != 2:
        raise ConstructionError(f"{what}: expected one displaced pair, got {special}")

    trimmed = [x for x in half if x not in (1, 2)]
    anchor_positions = sorted(trimmed.index(x) for x in special)
    top_of_lower = min(trimmed.index(x) for x in lower_labels)
    start_points = [anchor_positions[1] + 1, top_of_lower + 2]

    last_error: ConstructionError | None = None
    for start in start_points:
        insert_at = start
        for _ in range(len(target) + 1):
            attempt = profile_for(trimmed[:insert_at] + [1, 2] + trimmed[insert_at:])
            attempt_scores = borda_scores(attempt)
            lower_scores = {attempt_scores[x - 1] for x in lower_labels}
            if attempt_scores[0] not in lower_scores:
                try:
                    return _verified(attempt, target, what)
                except ConstructionError as exc:
                    last_error = exc
                    break
            insert_at += 2
        else:
            last_error = ConstructionError(f"{what}: pair relocation did not settle")
    raise last_error or ConstructionError(f"{what}: pair relocation failed")


def seq_i_profile(fours: int) -> Profile:
    """Witness for (2, 4, ..., 4, 2) with ``fours`` middle levels of size 4."""
    if fours < 0:
        raise ValueError("fours must be >= 0")
    if fours == 0:
        return two_level_profile(1, 1)
    target = (2,) + (4,) * fours + (2,)
    if fours % 2 == 0:
        k = fours // 2
        return _build_sequence(
            2 * k + 1, 2 * k + 1, _single_then_pairs, _pairs_then_single,
            target, repair=False, what=f"seq_i_profile({fours})",
        )
    k = (fours - 1) // 2
    return _build_sequence(
        2 * k + 3, 2 * k + 1, _single_then_pairs, _pairs_then_single,
        target, repair=True, what=f"seq_i_profile({fours})",
    )


def seq_ii_profile(fours: int) -> Profile:
    """Witness for (4, 2, 4, ..., 4, 2) with ``fours`` levels of size 4 in total."""
    if fours < 1:
        raise ValueError("fours must be >= 1")
    if fours == 1:
        return appendix_profile((4, 2, 2))
    if fours == 2:
        return appendix_profile((4, 2, 4, 2))
    target = (4, 2) + (4,) * (fours - 1) + (2,)
    if fours % 2 == 0:
        k = fours // 2
        return _build_sequence(
            2 * k + 1, 2 * k + 1, _pair_then_single_then_pairs, _pairs_then_single,
            target, repair=False, what=f"seq_ii_profile({fours})",
        )
    k = (fours - 1) // 2
    return _build_sequence(
        2 * k + 3, 2 * k + 1, _pair_then_single_then_pairs, _pairs_then_single,
        target, repair=True, what=f"seq_ii_profile({fours})",
    )


def seq_iii_profile(fours: int) -> Profile:
    """Witness for (2, 4, ..., 4, 2, 4): the inversion of the matching family II witness."""
    if fours < 1:
        raise ValueError("fours must be >= 1")
    target = (2,) + (4,) * (fours - 1) + (2, 4)
    return _verified(
        invert_profile(seq_ii_profile(fours)), target, f"seq_iii_profile({fours})"
    )


def seq_iv_profile(fours: int) -> Profile:
    """Witness for (4, 2, 4, ..., 4, 2, 4) with ``fours`` levels of size 4 in total."""
    if fours < 2:
        raise ValueError("fours must be >= 2")
    if fours == 2:
        return appendix_profile((4, 2, 2, 4))
    if fours == 3:
        return appendix_profile((4, 2, 4, 2, 4))
    target = (4, 2) + (4,) * (fours - 2) + (2, 4)
    if fours % 2 == 0:
        k = fours // 2
        return _build_sequence(
            2 * k + 1, 2 * k + 1, _pair_then_single_then_pairs, _pairs_then_single_then_pair,
            target, repair=False, what=f"seq_iv_profile({fours})",
        )
    k = (fours - 1) // 2
    return _build_sequence(
        2 * k + 3, 2 * k + 1, _pair_then_single_then_pairs, _pairs_then_single_then_pair,
        target, repair=True, what=f"seq_iv_profile({fours})",
    )


_fixtures: dict[LevelPattern, Profile] | None = None


def _load_fixtures() -> dict[LevelPattern, Profile]:
    global _fixtures
    if _fixtures is None:
        raw = json.loads(
            resources.files("bordarange.data").joinpath("appendix_profiles.json").read_text()
        )
        table: dict[LevelPattern, Profile] = {}
        for key, entry in raw.items():
            pattern = tuple(int(p) for p in key.split(","))
            profile = Profile.from_dict(entry["profile"])
            order = weak_order_of(profile)
            expected_levels = tuple(tuple(sorted(level)) for level in entry["levels"])
            if order.levels != expected_levels or order.pattern != pattern:
                raise ConstructionError(f"fixture {key} failed verification")
            table[pattern] = profile
        _fixtures = table
    return _fixtures


APPENDIX_PATTERNS: tuple[LevelPattern, ...] = (
    (4, 2, 4, 2),
    (4, 2, 2, 4),
    (4, 2, 2),
    (2, 2, 4),
    (4, 2, 4, 2, 4),
)


def appendix_profile(pattern: LevelPattern) -> Profile:
    """Return one of the five shipped fixture witnesses."""
    table = _load_fixtures()
    pattern = tuple(pattern)
    if pattern not in table:
        raise NotInTable(f"no fixture for pattern {format_pattern(pattern)}")
    return table[pattern]


def base_profile(request: BaseWitnessRequest) -> Profile:
    """Dispatch a witness request to the matching builder."""
    match request:
        case TwoLevel(s1=s1, s2=s2):
            return two_level_profile(s1, s2)
        case SeqI(fours=fours):
            return seq_i_profile(fours)
        case SeqII(fours=fours):
            return seq_ii_profile(fours)
        case SeqIII(fours=fours):
            return seq_iii_profile(fours)
        case SeqIV(fours=fours):
            return seq_iv_profile(fours)
        case Appendix(pattern=pattern):
            return appendix_profile(pattern)
    raise TypeError(f"unknown request {request!r}")


def request_target(request: BaseWitnessRequest) -> LevelPattern:
    """The pattern a request is expected to realize."""
    match request:
        case TwoLevel(s1=s1, s2=s2):
            return (2 * s1, 2 * s2)
        case SeqI(fours=fours):
            return (2, 2) if fours == 0 else (2,) + (4,) * fours + (2,)
        case SeqII(fours=fours):
            return (4, 2) + (4,) * (fours - 1) + (2,)
        case SeqIII(fours=fours):
            return (2,) + (4,) * (fours - 1) + (2, 4)
        case SeqIV(fours=fours):
            return (4, 2) + (4,) * (fours - 2) + (2, 4)
        case Appendix(pattern=pattern):
            return tuple(pattern)
    raise TypeError(f"unknown request {request!r}")
