"""Profiles of strict rankings, Borda scoring, and the induced weak order.

Conventions used everywhere in this package:

- Alternatives are the integers ``0 .. m-1``.
- A ranking lists alternatives from best (rank 1) to worst (rank m).
- The Borda score of an alternative is the sum of its ranks across voters,
  so lower scores are better.
- A weak order groups alternatives into levels of equal score, best level
  first; its pattern is the tuple of level sizes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import ParityError, VoterCountMismatch

LevelPattern = tuple[int, ...]


@dataclass(frozen=True)
class Profile:
    """An ordered tuple of strict rankings over the same alternative set.

    Immutable; all combinators below return new profiles.  ``m`` may be 0
    (the empty profile), which acts as the identity for catenation.
    """

    m: int
    n: int
    rankings: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.m < 0 or self.n < 1:
            raise ValueError(f"invalid profile shape m={self.m}, n={self.n}")
        if len(self.rankings) != self.n:
            raise ValueError(f"expected {self.n} rankings, got {len(self.rankings)}")
        expected = set(range(self.m))
        for i, ranking in enumerate(self.rankings):
            if len(ranking) != self.m or set(ranking) != expected:
                raise ValueError(f"ranking {i} is not a permutation of 0..{self.m - 1}")

    @classmethod
    def from_rankings(cls, rankings) -> "Profile":
        rankings = tuple(tuple(r) for r in rankings)
        if not rankings:
            raise ValueError("a profile needs at least one voter")
        return cls(m=len(rankings[0]), n=len(rankings), rankings=rankings)

    def to_dict(self) -> dict:
        return {"m": self.m, "n": self.n, "rankings": [list(r) for r in self.rankings]}

    @classmethod
    def from_dict(cls, data: dict) -> "Profile":
        try:
            m = int(data["m"])
            n = int(data["n"])
            rankings = tuple(tuple(int(x) for x in r) for r in data["rankings"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed profile object: {exc}") from exc
        return cls(m=m, n=n, rankings=rankings)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "Profile":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class WeakOrder:
    """Levels of equal Borda score, best (lowest score) first."""

    levels: tuple[tuple[int, ...], ...]
    level_scores: tuple[int, ...]

    @property
    def pattern(self) -> LevelPattern:
        return tuple(len(level) for level in self.levels)


def borda_scores(profile: Profile) -> tuple[int, ...]:
    """Sum of rank positions per alternative; index = alternative id."""
    scores = [0] * profile.m
    for ranking in profile.rankings:
        for position, x in enumerate(ranking):
            scores[x] += position + 1
    return tuple(scores)


def weak_order_of(profile: Profile) -> WeakOrder:
    """Group alternatives by equal Borda score, sorted by increasing score."""
    scores = borda_scores(profile)
    by_score: dict[int, list[int]] = {}
    for x, s in enumerate(scores):
        by_score.setdefault(s, []).append(x)
    level_scores = tuple(sorted(by_score))
    levels = tuple(tuple(sorted(by_score[s])) for s in level_scores)
    return WeakOrder(levels=levels, level_scores=level_scores)


def pattern_of(profile: Profile) -> LevelPattern:
    """Level sizes of the profile's Borda weak order, best level first."""
    return weak_order_of(profile).pattern


def invert_profile(profile: Profile) -> Profile:
    """Reverse every voter's ranking.

    Scores obey S'(x) = n*(m+1) - S(x), so the level order (and hence the
    pattern) reverses exactly.
    """
    return Profile(
        m=profile.m,
        n=profile.n,
        rankings=tuple(tuple(reversed(r)) for r in profile.rankings),
    )


def catenate(top: Profile, bottom: Profile) -> Profile:
    """Stack ``top``'s alternatives above ``bottom``'s in every ballot.

    Bottom alternative ids are offset by ``top.m``.  Every bottom score is
    shifted by ``n * top.m``, which exceeds every top score, so the combined
    pattern is the concatenation of the two patterns.
    """
    if top.n != bottom.n:
        raise VoterCountMismatch(f"voter counts differ: {top.n} != {bottom.n}")
    offset = top.m
    rankings = tuple(
        tuple(t) + tuple(x + offset for x in b)
        for t, b in zip(top.rankings, bottom.rankings)
    )
    return Profile(m=top.m + bottom.m, n=top.n, rankings=rankings)


def extend_to_odd_n(profile: Profile, target_n: int) -> Profile:
    """Pad a profile to a larger odd voter count without changing its order.

    Appends (target_n - n) / 2 pairs of mutually inverse rankings.  Each pair
    adds exactly m+1 to every score, so the level sets and their order are
    preserved; this is re-checked before returning.
    """
    if profile.n % 2 == 0:
        raise ParityError(f"profile has even voter count {profile.n}")
    if target_n % 2 == 0:
        raise ParityError(f"target voter count {target_n} is even")
    if target_n < profile.n:
        raise ValueError(f"cannot shrink profile from n={profile.n} to n={target_n}")
    if target_n == profile.n:
        return profile
    identity = tuple(range(profile.m))
    pair = (identity, tuple(reversed(identity)))
    extra = pair * ((target_n - profile.n) // 2)
    extended = Profile(m=profile.m, n=target_n, rankings=profile.rankings + extra)
    if weak_order_of(extended).levels != weak_order_of(profile).levels:
        raise AssertionError("padding changed the weak order; this is a bug")
    return extended


def parse_pattern(text: str) -> LevelPattern:
    """Parse a comma-separated pattern such as ``2,4,4,2``."""
    parts = [p.strip() for p in text.split(",")]
    if not parts or any(not p for p in parts):
        raise ValueError(f"malformed pattern {text!r}")
    try:
        sizes = tuple(int(p) for p in parts)
    except ValueError as exc:
        raise ValueError(f"malformed pattern {text!r}") from exc
    if any(s < 1 for s in sizes):
        raise ValueError(f"pattern sizes must be positive: {text!r}")
    return sizes


def format_pattern(pattern: LevelPattern) -> str:
    return ",".join(str(s) for s in pattern)
