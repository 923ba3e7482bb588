"""Borda range membership tests and explicit witness construction."""

from .classify import Classification, PowerDecomposition, Rule, Verdict, classify, power_decomposition
from .construct import (
    APPENDIX_PATTERNS,
    Appendix,
    BaseWitnessRequest,
    SeqI,
    SeqII,
    SeqIII,
    SeqIV,
    TwoLevel,
    appendix_profile,
    base_profile,
    seq_i_profile,
    seq_ii_profile,
    seq_iii_profile,
    seq_iv_profile,
    two_level_profile,
)
from .model import (
    LevelPattern,
    Profile,
    WeakOrder,
    borda_scores,
    catenate,
    extend_to_odd_n,
    format_pattern,
    invert_profile,
    parse_pattern,
    pattern_of,
    weak_order_of,
)

__version__ = "0.1.0"
