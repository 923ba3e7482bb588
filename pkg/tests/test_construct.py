"""Witness builders: the two-level base, the four families, and the fixtures."""

import pytest

from bordarange.construct import (
    APPENDIX_PATTERNS,
    Appendix,
    SeqI,
    SeqII,
    SeqIII,
    SeqIV,
    TwoLevel,
    appendix_profile,
    base_profile,
    request_target,
    seq_i_profile,
    seq_ii_profile,
    seq_iii_profile,
    seq_iv_profile,
    two_level_profile,
)
from bordarange.errors import NotInTable
from bordarange.model import (
    borda_scores,
    invert_profile,
    pattern_of,
    weak_order_of,
)


def test_two_level_frozen_witness():
    p = two_level_profile(1, 1)
    assert p.rankings == ((0, 1, 2, 3), (3, 1, 2, 0), (2, 0, 3, 1))
    assert borda_scores(p) == (7, 8, 7, 8)
    assert pattern_of(p) == (2, 2)


@pytest.mark.parametrize("s1,s2,target", [(3, 1, (6, 2)), (1, 3, (2, 6)), (3, 3, (6, 6))])
def test_two_level_small_cases(s1, s2, target):
    p = two_level_profile(s1, s2)
    assert p.n == 3 and p.m == 2 * (s1 + s2)
    assert pattern_of(p) == target
    order = weak_order_of(p)
    assert order.level_scores[1] - order.level_scores[0] == (s1 + s2) // 2


def test_inverting_a_two_level_witness_swaps_the_levels():
    witness = two_level_profile(3, 1)
    assert pattern_of(witness) == (6, 2)
    assert pattern_of(invert_profile(witness)) == (2, 6)


def test_two_level_rejects_even_sizes():
    for s1, s2 in [(2, 1), (1, 2), (0, 1), (1, -3)]:
        with pytest.raises(ValueError):
            two_level_profile(s1, s2)


def test_two_level_gap_grid():
    for s1 in (1, 3, 5, 7):
        for s2 in (1, 3, 5, 7):
            order = weak_order_of(two_level_profile(s1, s2))
            assert order.level_scores[1] - order.level_scores[0] == (s1 + s2) // 2


def test_seq_i_boundary_delegates_to_two_level():
    assert seq_i_profile(0) == two_level_profile(1, 1)


@pytest.mark.parametrize("fours", range(0, 9))
def test_seq_i_patterns(fours):
    p = seq_i_profile(fours)
    expected = (2, 2) if fours == 0 else (2,) + (4,) * fours + (2,)
    assert pattern_of(p) == expected
    assert p.n == 3 and p.m == sum(expected)


def test_seq_i_even_case_interior_structure():
    # with an even number of 4s the outer levels are singleton pairs per half
    p = seq_i_profile(2)
    assert p.m == 12
    assert p.rankings[0] == (2, 0, 1, 4, 5, 3, 8, 6, 7, 10, 11, 9)
    order = weak_order_of(p)
    assert order.levels[0] == (2, 8)
    assert order.levels[-1] == (3, 9)


def test_seq_i_odd_case_needs_pair_relocation():
    p = seq_i_profile(3)
    assert p.rankings[0] == (4, 2, 3, 6, 7, 0, 1, 5, 12, 10, 11, 14, 15, 8, 9, 13)
    assert pattern_of(p) == (2, 4, 4, 4, 2)


@pytest.mark.parametrize("fours", range(1, 9))
def test_seq_ii_patterns(fours):
    p = seq_ii_profile(fours)
    assert pattern_of(p) == (4, 2) + (4,) * (fours - 1) + (2,)


def test_seq_ii_small_cases_come_from_fixtures():
    assert seq_ii_profile(1) == appendix_profile((4, 2, 2))
    assert seq_ii_profile(2) == appendix_profile((4, 2, 4, 2))


def test_seq_ii_odd_case_frozen_voter1():
    p = seq_ii_profile(3)
    assert p.rankings[0] == (3, 4, 2, 6, 7, 0, 1, 5, 11, 12, 10, 14, 15, 8, 9, 13)


@pytest.mark.parametrize("fours", range(1, 9))
def test_seq_iii_is_structural_inversion_of_seq_ii(fours):
    p = seq_iii_profile(fours)
    assert p == invert_profile(seq_ii_profile(fours))
    assert pattern_of(p) == (2,) + (4,) * (fours - 1) + (2, 4)


def test_seq_iii_small_patterns():
    assert pattern_of(seq_iii_profile(1)) == (2, 2, 4)
    assert pattern_of(seq_iii_profile(2)) == (2, 4, 2, 4)
    assert pattern_of(seq_iii_profile(3)) == (2, 4, 4, 2, 4)


@pytest.mark.parametrize("fours", range(2, 10))
def test_seq_iv_patterns(fours):
    p = seq_iv_profile(fours)
    assert pattern_of(p) == (4, 2) + (4,) * (fours - 2) + (2, 4)


def test_seq_iv_small_cases_come_from_fixtures():
    assert seq_iv_profile(2) == appendix_profile((4, 2, 2, 4))
    assert seq_iv_profile(3) == appendix_profile((4, 2, 4, 2, 4))


def test_sequences_never_touch_voters_two_and_three():
    pairs = [
        (seq_i_profile(2), two_level_profile(3, 3)),
        (seq_i_profile(3), two_level_profile(5, 3)),
        (seq_ii_profile(4), two_level_profile(5, 5)),
        (seq_ii_profile(5), two_level_profile(7, 5)),
        (seq_iv_profile(4), two_level_profile(5, 5)),
        (seq_iv_profile(5), two_level_profile(7, 5)),
    ]
    for built, base in pairs:
        assert built.rankings[1:] == base.rankings[1:]


def test_parameter_validation():
    with pytest.raises(ValueError):
        seq_i_profile(-1)
    with pytest.raises(ValueError):
        seq_ii_profile(0)
    with pytest.raises(ValueError):
        seq_iii_profile(0)
    with pytest.raises(ValueError):
        seq_iv_profile(1)


APPENDIX_LEVELS = {
    (4, 2, 4, 2): ((3, 4, 9, 10), (0, 6), (1, 2, 7, 8), (5, 11)),
    (4, 2, 2, 4): ((1, 2, 7, 8), (5, 11), (0, 6), (3, 4, 9, 10)),
    (4, 2, 2): ((1, 2, 5, 6), (3, 7), (0, 4)),
    (2, 2, 4): ((0, 4), (3, 7), (1, 2, 5, 6)),
    (4, 2, 4, 2, 4): ((3, 4, 11, 12), (2, 10), (6, 7, 14, 15), (5, 13), (0, 1, 8, 9)),
}


@pytest.mark.parametrize("pattern", APPENDIX_PATTERNS)
def test_appendix_fixture_levels(pattern):
    p = appendix_profile(pattern)
    order = weak_order_of(p)
    assert order.pattern == pattern
    assert order.levels == APPENDIX_LEVELS[pattern]


def test_appendix_two_two_four_is_inversion_of_four_two_two():
    assert appendix_profile((2, 2, 4)) == invert_profile(appendix_profile((4, 2, 2)))


def test_appendix_rejects_unknown_pattern():
    with pytest.raises(NotInTable):
        appendix_profile((3, 3))


def test_base_profile_dispatch_and_targets():
    requests = [
        TwoLevel(1, 1),
        TwoLevel(3, 5),
        SeqI(2),
        SeqII(3),
        SeqIII(2),
        SeqIV(4),
        Appendix((4, 2, 2)),
    ]
    for request in requests:
        profile = base_profile(request)
        assert pattern_of(profile) == request_target(request)
        assert profile.n == 3
