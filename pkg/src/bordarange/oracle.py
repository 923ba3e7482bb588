"""Ground truth at desk scale: exhaustive enumeration and witness search.

The enumeration fixes voter 1 to the identity ranking.  Borda is neutral, so
relabeling alternatives maps any profile to one with voter 1 = identity while
preserving the pattern; the reduced search space therefore achieves exactly
the same pattern set.  For more than three voters an anonymity reduction is
applied on top (voters 2..n enumerated as a multiset).

Everything returned here is re-verified through the scoring functions before
it leaves the module.
"""

from __future__ import annotations

import itertools
import json
import logging
import math
import os
import random
import threading
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .classify import Verdict, classify
from .errors import BudgetExceeded, InvalidPattern
from .model import LevelPattern, Profile, format_pattern, pattern_of

logger = logging.getLogger(__name__)

# Candidate budget for exhaustive work; (6!)^2 for n=3 fits comfortably.
DEFAULT_ENUM_BUDGET = 10_000_000
# Score evaluations spent by the randomized search before giving up.
DEFAULT_SEARCH_BUDGET = 1_000_000

CACHE_ENV_VAR = "BORDARANGE_CACHE"


@dataclass(frozen=True)
class AtlasEntry:
    witness: Profile
    count: int


@dataclass
class RangeAtlas:
    m: int
    n: int
    mode: str  # "exhaustive" | "sampled"
    trials: int | None
    achieved: dict[LevelPattern, AtlasEntry] = field(default_factory=dict)

    def patterns(self) -> list[LevelPattern]:
        return sorted(self.achieved)

    def verify(self) -> None:
        for pattern, entry in self.achieved.items():
            if entry.witness.m != self.m or entry.witness.n != self.n:
                raise AssertionError(f"witness shape mismatch for {pattern}")
            if pattern_of(entry.witness) != pattern:
                raise AssertionError(f"stored witness does not realize {pattern}")


def _rank_rows(m: int) -> tuple[list[tuple[int, ...]], np.ndarray]:
    """All permutations of 0..m-1 in lexicographic order plus their rank rows.

    Row i column x holds the rank (1-based) of alternative x under
    permutation i.
    """
    perms = list(itertools.permutations(range(m)))
    ranks = np.empty((len(perms), m), dtype=np.int64)
    for i, perm in enumerate(perms):
        for position, x in enumerate(perm):
            ranks[i, x] = position + 1
    return perms, ranks


def _signature_bits(m: int) -> np.ndarray:
    return 1 << np.arange(m - 1, dtype=np.int64)


def _pattern_signature(pattern: LevelPattern, m: int) -> int:
    """Bitmask of level boundaries in the sorted score vector."""
    sig = 0
    position = 0
    for size in pattern[:-1]:
        position += size
        sig |= 1 << (position - 1)
    return sig


def _signature_pattern(sig: int, m: int) -> LevelPattern:
    sizes = []
    run = 0
    for position in range(m - 1):
        run += 1
        if sig >> position & 1:
            sizes.append(run)
            run = 0
    sizes.append(run + 1)
    return tuple(sizes)


def exhaustive_candidate_count(m: int, n: int) -> int:
    """Number of candidates after the symmetry reductions."""
    p = math.factorial(m)
    if n == 3:
        return p * p
    return math.comb(p + n - 2, n - 1)


def enumerate_range(
    m: int,
    n: int = 3,
    mode: str = "exhaustive",
    *,
    budget: int = DEFAULT_ENUM_BUDGET,
    trials: int = 10_000,
    seed: int = 0,
    voter2_range: tuple[int, int] | None = None,
) -> RangeAtlas:
    """Atlas of all patterns achieved at (m, n), with one witness each.

    Exhaustive mode is deterministic and stores the lexicographically
    minimal witness per pattern (voter 1 fixed to the identity).  Sampled
    mode draws ``trials`` random profiles and returns a sound subset.
    ``voter2_range`` restricts the n=3 enumeration to a slice of the voter-2
    permutations so that partitioned runs can be merged deterministically.
    """
    if m < 2:
        raise ValueError("need at least 2 alternatives")
    if n < 1 or n % 2 == 0:
        raise ValueError("voter count must be odd")
    if mode == "sampled":
        return _sampled_atlas(m, n, trials, seed)
    if mode != "exhaustive":
        raise ValueError(f"unknown mode {mode!r}")
    if exhaustive_candidate_count(m, n) > budget:
        raise BudgetExceeded(
            f"exhaustive enumeration at m={m}, n={n} needs "
            f"{exhaustive_candidate_count(m, n)} candidates (budget {budget})"
        )
    if n == 3:
        return _exhaustive_three_voters(m, voter2_range)
    return _exhaustive_many_voters(m, n)


def _exhaustive_three_voters(m: int, voter2_range: tuple[int, int] | None) -> RangeAtlas:
    perms, ranks = _rank_rows(m)
    bits = _signature_bits(m)
    identity = ranks[0]
    total = len(perms)
    lo, hi = voter2_range if voter2_range is not None else (0, total)

    counts = np.zeros(1 << (m - 1), dtype=np.int64)
    first_seen: dict[int, tuple[int, int]] = {}
    for i in range(lo, hi):
        scores = identity + ranks[i] + ranks
        ordered = np.sort(scores, axis=1)
        boundaries = ordered[:, 1:] != ordered[:, :-1]
        sigs = boundaries @ bits
        counts += np.bincount(sigs, minlength=counts.size)
        for sig in np.unique(sigs):
            key = int(sig)
            if key not in first_seen:
                j = int(np.nonzero(sigs == sig)[0][0])
                first_seen[key] = (i, j)

    atlas = RangeAtlas(m=m, n=3, mode="exhaustive", trials=None)
    for sig, (i, j) in first_seen.items():
        witness = Profile(m=m, n=3, rankings=(tuple(range(m)), perms[i], perms[j]))
        pattern = _signature_pattern(sig, m)
        atlas.achieved[pattern] = AtlasEntry(witness=witness, count=int(counts[sig]))
    atlas.verify()
    return atlas


def _exhaustive_many_voters(m: int, n: int) -> RangeAtlas:
    perms, ranks = _rank_rows(m)
    identity = ranks[0]
    atlas = RangeAtlas(m=m, n=n, mode="exhaustive", trials=None)
    counts: dict[LevelPattern, int] = {}
    for combo in itertools.combinations_with_replacement(range(len(perms)), n - 1):
        scores = identity + sum(ranks[i] for i in combo)
        pattern = _scores_pattern(scores)
        counts[pattern] = counts.get(pattern, 0) + 1
        if pattern not in atlas.achieved:
            rankings = (tuple(range(m)),) + tuple(perms[i] for i in combo)
            atlas.achieved[pattern] = AtlasEntry(
                witness=Profile(m=m, n=n, rankings=rankings), count=0
            )
    for pattern, count in counts.items():
        atlas.achieved[pattern] = AtlasEntry(atlas.achieved[pattern].witness, count)
    atlas.verify()
    return atlas


def _scores_pattern(scores) -> LevelPattern:
    ordered = sorted(scores)
    sizes = []
    run = 1
    for previous, current in zip(ordered, ordered[1:]):
        if current == previous:
            run += 1
        else:
            sizes.append(run)
            run = 1
    sizes.append(run)
    return tuple(sizes)


def _sampled_atlas(m: int, n: int, trials: int, seed: int) -> RangeAtlas:
    rng = random.Random(seed)
    base = list(range(m))
    atlas = RangeAtlas(m=m, n=n, mode="sampled", trials=trials)
    counts: dict[LevelPattern, int] = {}
    for _ in range(trials):
        rankings = [tuple(base)]
        for _ in range(n - 1):
            ballot = base[:]
            rng.shuffle(ballot)
            rankings.append(tuple(ballot))
        profile = Profile(m=m, n=n, rankings=tuple(rankings))
        pattern = pattern_of(profile)
        counts[pattern] = counts.get(pattern, 0) + 1
        if pattern not in atlas.achieved:
            atlas.achieved[pattern] = AtlasEntry(witness=profile, count=0)
    for pattern, count in counts.items():
        atlas.achieved[pattern] = AtlasEntry(atlas.achieved[pattern].witness, count)
    atlas.verify()
    return atlas


def merge_atlases(left: RangeAtlas, right: RangeAtlas) -> RangeAtlas:
    """Deterministic merge of two partial atlases (minimal witness wins)."""
    if (left.m, left.n) != (right.m, right.n):
        raise ValueError("cannot merge atlases with different shapes")
    merged = RangeAtlas(m=left.m, n=left.n, mode=left.mode, trials=left.trials)
    for source in (left, right):
        for pattern, entry in source.achieved.items():
            if pattern in merged.achieved:
                existing = merged.achieved[pattern]
                witness = min(existing.witness, entry.witness, key=lambda p: p.rankings)
                merged.achieved[pattern] = AtlasEntry(witness, existing.count + entry.count)
            else:
                merged.achieved[pattern] = entry
    return merged


def atlas_to_rows(atlas: RangeAtlas) -> list[dict]:
    rows = []
    for pattern in atlas.patterns():
        entry = atlas.achieved[pattern]
        rows.append(
            {
                "pattern": format_pattern(pattern),
                "count_of_witnesses": entry.count,
                "min_witness_json": entry.witness.to_json(),
            }
        )
    return rows


# ---------------------------------------------------------------------------
# Witness search


@dataclass(frozen=True)
class SearchResult:
    """Outcome of a witness search.

    ``exhaustive`` is True when the negative answer is conclusive: either the
    whole reduced space was scanned, or no score multiset compatible with the
    pattern exists at all.  A non-exhaustive miss never proves impossibility.
    """

    profile: Profile | None
    exhaustive: bool
    evaluations: int

    @property
    def found(self) -> bool:
        return self.profile is not None


def feasible_score_targets(pattern: LevelPattern, n: int, limit: int = 200_000) -> list[tuple[int, ...]]:
    """All strictly increasing level-score tuples consistent with the pattern.

    Scores must lie in [n, n*m] and satisfy the conservation identity
    sum(size_i * score_i) = n*m*(m+1)/2.
    """
    m = sum(pattern)
    total = n * m * (m + 1) // 2
    lowest, highest = n, n * m
    results: list[tuple[int, ...]] = []

    def extend(index: int, previous: int, remaining: int, chosen: list[int]) -> None:
        if len(results) > limit:
            raise BudgetExceeded("too many candidate score systems")
        if index == len(pattern):
            if remaining == 0:
                results.append(tuple(chosen))
            return
        size = pattern[index]
        tail = pattern[index + 1 :]
        tail_total = sum(tail)
        for value in range(previous + 1, highest + 1):
            used = size * value
            if used > remaining:
                break
            rest = remaining - used
            # the tail must fit with strictly increasing values above `value`
            min_rest = sum(
                s * (value + offset + 1) for offset, s in enumerate(tail)
            )
            max_rest = sum(
                s * (highest - (len(tail) - 1 - offset)) for offset, s in enumerate(tail)
            )
            if rest < min_rest or rest > max_rest:
                continue
            chosen.append(value)
            extend(index + 1, value, rest, chosen)
            chosen.pop()

    extend(0, lowest - 1, total, [])
    return results


def search_witness(
    pattern: LevelPattern,
    n: int = 3,
    *,
    budget: int = DEFAULT_SEARCH_BUDGET,
    seed: int = 0,
) -> SearchResult:
    """Find a profile realizing ``pattern`` at odd ``n``, or report failure.

    Strategy: an infeasible score system fails immediately (conclusive);
    small spaces are scanned exhaustively; otherwise randomized restarts with
    an adjacent-swap local search run until the evaluation budget is spent.
    Deterministic for a fixed seed.
    """
    pattern = tuple(pattern)
    if any(s < 1 for s in pattern) or not pattern:
        raise InvalidPattern(f"invalid pattern {pattern}")
    if n < 1 or n % 2 == 0:
        raise ValueError("voter count must be odd")
    m = sum(pattern)

    targets = feasible_score_targets(pattern, n)
    if not targets:
        return SearchResult(profile=None, exhaustive=True, evaluations=0)

    if exhaustive_candidate_count(m, n) <= budget:
        return _search_exhaustive(pattern, m, n)
    return _search_local(pattern, m, n, targets, budget, seed)


def _search_exhaustive(pattern: LevelPattern, m: int, n: int) -> SearchResult:
    if n == 3:
        perms, ranks = _rank_rows(m)
        bits = _signature_bits(m)
        identity = ranks[0]
        goal = _pattern_signature(pattern, m)
        evaluations = 0
        for i in range(len(perms)):
            scores = identity + ranks[i] + ranks
            ordered = np.sort(scores, axis=1)
            sigs = (ordered[:, 1:] != ordered[:, :-1]) @ bits
            evaluations += len(perms)
            hits = np.nonzero(sigs == goal)[0]
            if hits.size:
                j = int(hits[0])
                witness = Profile(m=m, n=3, rankings=(tuple(range(m)), perms[i], perms[j]))
                assert pattern_of(witness) == pattern
                return SearchResult(witness, exhaustive=True, evaluations=evaluations)
        return SearchResult(None, exhaustive=True, evaluations=evaluations)

    perms, ranks = _rank_rows(m)
    identity = ranks[0]
    evaluations = 0
    for combo in itertools.combinations_with_replacement(range(len(perms)), n - 1):
        evaluations += 1
        scores = identity + sum(ranks[i] for i in combo)
        if _scores_pattern(scores) == pattern:
            rankings = (tuple(range(m)),) + tuple(perms[i] for i in combo)
            witness = Profile(m=m, n=n, rankings=rankings)
            assert pattern_of(witness) == pattern
            return SearchResult(witness, exhaustive=True, evaluations=evaluations)
    return SearchResult(None, exhaustive=True, evaluations=evaluations)


def _search_local(
    pattern: LevelPattern,
    m: int,
    n: int,
    targets: list[tuple[int, ...]],
    budget: int,
    seed: int,
) -> SearchResult:
    """Randomized restarts + steepest-descent over adjacent swaps.

    The objective is the squared distance between the sorted score vector and
    the nearest consistent score system; a swap of adjacent entries in one
    ballot moves two scores by one point each, so the objective changes
    smoothly under the move set.
    """
    expanded = np.array(
        [np.repeat(t, pattern) for t in targets], dtype=np.int64
    )  # (K, m)
    rng = random.Random(seed)
    base = list(range(m))
    evaluations = 0

    def cost(scores: np.ndarray) -> int:
        nonlocal evaluations
        evaluations += 1
        ordered = np.sort(scores)
        return int(((expanded - ordered) ** 2).sum(axis=1).min())

    while evaluations < budget:
        ballots = [base[:]]
        for _ in range(n - 1):
            ballot = base[:]
            rng.shuffle(ballot)
            ballots.append(ballot)
        scores = np.zeros(m, dtype=np.int64)
        for ballot in ballots:
            for position, x in enumerate(ballot):
                scores[x] += position + 1
        current = cost(scores)
        improved = True
        while improved and current > 0 and evaluations < budget:
            improved = False
            best_move: tuple[int, int] | None = None
            best_cost = current
            for voter in range(1, n):
                ballot = ballots[voter]
                for position in range(m - 1):
                    upper, lower = ballot[position], ballot[position + 1]
                    scores[upper] += 1
                    scores[lower] -= 1
                    trial = cost(scores)
                    scores[upper] -= 1
                    scores[lower] += 1
                    if trial < best_cost:
                        best_cost = trial
                        best_move = (voter, position)
            if best_move is not None:
                voter, position = best_move
                ballot = ballots[voter]
                upper, lower = ballot[position], ballot[position + 1]
                ballot[position], ballot[position + 1] = lower, upper
                scores[upper] += 1
                scores[lower] -= 1
                current = best_cost
                improved = True
        if current == 0:
            witness = Profile(m=m, n=n, rankings=tuple(tuple(b) for b in ballots))
            if pattern_of(witness) == pattern:
                return SearchResult(witness, exhaustive=False, evaluations=evaluations)
    return SearchResult(None, exhaustive=False, evaluations=evaluations)


# ---------------------------------------------------------------------------
# Classifier cross-checking


def compositions(total: int):
    """All ordered compositions of ``total`` into positive parts."""
    if total == 0:
        yield ()
        return
    for first in range(1, total + 1):
        for rest in compositions(total - first):
            yield (first,) + rest


@dataclass(frozen=True)
class Contradiction:
    pattern: LevelPattern
    verdict: Verdict
    achieved: bool


@dataclass
class CrossCheckReport:
    max_m: int
    n: int
    patterns_checked: int
    contradictions: list[Contradiction]
    unknown_status: dict[LevelPattern, bool]
    in_range_present: int
    not_in_range_absent: int

    @property
    def consistent(self) -> bool:
        return not self.contradictions


def cross_check(max_m: int, n: int = 3, *, budget: int = DEFAULT_ENUM_BUDGET) -> CrossCheckReport:
    """Compare classifier verdicts against exhaustive atlases for all total <= max_m.

    A contradiction is a NotInRange pattern that the oracle achieved, or an
    InRange pattern it missed.  Unknown patterns are reported with their
    empirical status, never promoted to verdicts.
    """
    if max_m < 2:
        raise ValueError("max_m must be >= 2")
    if n < 3 or n % 2 == 0:
        raise ValueError("cross-check needs an odd voter count >= 3")
    report = CrossCheckReport(
        max_m=max_m,
        n=n,
        patterns_checked=0,
        contradictions=[],
        unknown_status={},
        in_range_present=0,
        not_in_range_absent=0,
    )
    for m in range(2, max_m + 1):
        atlas = enumerate_range(m, n, "exhaustive", budget=budget)
        for pattern in compositions(m):
            report.patterns_checked += 1
            achieved = pattern in atlas.achieved
            verdict = classify(pattern).verdict
            if verdict is Verdict.UNKNOWN:
                report.unknown_status[pattern] = achieved
            elif verdict is Verdict.IN_RANGE:
                if achieved:
                    report.in_range_present += 1
                else:
                    report.contradictions.append(Contradiction(pattern, verdict, achieved))
            else:
                if achieved:
                    report.contradictions.append(Contradiction(pattern, verdict, achieved))
                else:
                    report.not_in_range_absent += 1
    return report


# ---------------------------------------------------------------------------
# Persistent witness cache


class WitnessCache:
    """JSON-backed map (pattern, n) -> witness profile.

    Entries are re-verified on load; corrupt or stale entries are dropped
    with a warning.  Writes are atomic (write-then-replace) and guarded by a
    lock so concurrent service handlers cannot interleave.
    """

    def __init__(self, path: str | Path | None = None):
        if path is None:
            path = os.environ.get(CACHE_ENV_VAR)
        if path is None:
            path = Path.home() / ".cache" / "bordarange" / "witnesses.json"
        self.path = Path(path)
        self._lock = threading.Lock()
        self._entries: dict[str, dict] | None = None

    @staticmethod
    def _key(pattern: LevelPattern, n: int) -> str:
        return f"{format_pattern(pattern)}@n={n}"

    def _load(self) -> dict[str, dict]:
        if self._entries is not None:
            return self._entries
        entries: dict[str, dict] = {}
        if self.path.exists():
            try:
                raw = json.loads(self.path.read_text())
            except (OSError, json.JSONDecodeError) as exc:
                logger.warning("dropping unreadable witness cache %s: %s", self.path, exc)
                raw = {}
            for key, record in raw.items() if isinstance(raw, dict) else []:
                try:
                    profile = Profile.from_dict(record["profile"])
                    pattern = tuple(int(p) for p in record["pattern"])
                    if record["n"] != profile.n or pattern_of(profile) != pattern:
                        raise ValueError("stored witness does not verify")
                except (KeyError, TypeError, ValueError) as exc:
                    logger.warning("dropping corrupt cache entry %s: %s", key, exc)
                    continue
                entries[key] = record
        self._entries = entries
        return entries

    def get(self, pattern: LevelPattern, n: int) -> Profile | None:
        with self._lock:
            record = self._load().get(self._key(pattern, n))
        if record is None:
            return None
        return Profile.from_dict(record["profile"])

    def put(self, pattern: LevelPattern, n: int, profile: Profile, provenance: str) -> None:
        if pattern_of(profile) != tuple(pattern) or profile.n != n:
            raise ValueError("refusing to cache a witness that does not verify")
        if provenance not in ("constructed", "searched", "fixture"):
            raise ValueError(f"unknown provenance {provenance!r}")
        record = {
            "pattern": list(pattern),
            "n": n,
            "provenance": provenance,
            "profile": profile.to_dict(),
        }
        with self._lock:
            entries = self._load()
            entries[self._key(pattern, n)] = record
            self.path.parent.mkdir(parents=True, exist_ok=True)
            tmp = self.path.with_suffix(".tmp")
            tmp.write_text(json.dumps(entries, sort_keys=True, indent=2))
            tmp.replace(self.path)

    def provenance(self, pattern: LevelPattern, n: int) -> str | None:
        with self._lock:
            record = self._load().get(self._key(pattern, n))
        return None if record is None else record["provenance"]
