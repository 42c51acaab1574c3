"""Periodic Zeckendorf-style digit systems and exact subsystem counting."""

from .digits import (
    Block,
    BlockDecomposition,
    DigitRule,
    DigitVector,
    LeadingZeroError,
    NegativeEntryError,
    NotMemberError,
    RuleError,
    TooShortError,
    basis_predecessor,
    compare_ascending,
    decompose,
    format_digits,
    is_member,
    parse_digits,
)
from .duality import (
    NotInSuperCollectionError,
    SubcollectionError,
    SystemPair,
    is_subcollection,
    same_collection,
)
from .extremal import (
    ExtremalReport,
    InvalidCandidateError,
    StarCandidate,
    delta_star,
    enumerate_tilings,
    extremes,
    generating_identity_check,
    is_unit_member,
    measure_check,
    measure_tail_bound,
    tiling_counts,
    unit_blocks,
    validate_candidate,
)
from .numeration import InternalInconsistencyError, Numeration
from .spectra import (
    NoSignChangeError,
    SpectralConstants,
    char_poly,
    derived_constants,
    dominant_root,
    growth_constant,
)

__version__ = "0.1.0"
