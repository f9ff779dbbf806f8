"""Symbolic combinatorics of local Arthur packets for Sp(2n) and SO(2n+1)."""

from .core import (
    ArthurKitError,
    HalfInt,
    MultiSet,
    Parity,
    RhoSymbol,
    Segment,
    TRIVIAL_RHO,
    ValidationError,
    multiset_combine,
    segment_elements,
)
from .params import (
    ArthurParameter,
    Character,
    CharacterTable,
    Decomposition,
    Family,
    GroupTag,
    LParameter,
    LPiece,
    Summand,
    characters_of,
    decompose,
    dual_parameter,
    is_good_parity,
    iter_characters,
    l_parameter_of,
    make_parameter,
    predicates,
    steinberg_parameter,
    validate,
)
from .ldata import (
    GLSegmentRep,
    LData,
    MultiplicityProfile,
    SegKind,
    SpehBlock,
    TemperedData,
    gl_derivative,
    is_good_parity_ldata,
    make_ldata,
    make_tempered,
    omega_pi,
    speh_of_summand,
    steinberg_segment,
    zelevinsky_segment,
)
from .ems import (
    ExtendedMultiSegment,
    ExtendedSegment,
    dual,
    l_class,
    make_row,
    omega_sets,
    order_check,
    parameter_of,
    pi_of_L,
    satisfies_L,
    sign_condition,
    weak_equivalent,
)
from .classify import (
    UnramifiedCertificate,
    UnramifiedParameterSet,
    UnramifiedRejection,
    classify_unramified,
    has_generic_member,
    is_generic_member,
    tempered_packet,
    tempered_singleton,
    unramified_member,
    unramified_parameter_set,
)
from .arthur_algo import (
    AlgoState,
    ArthurVia,
    Candidate,
    DerivativeOracle,
    NotArthurType,
    TemperedOracle,
    UnramifiedOracle,
    UnsupportedInputError,
    arthur_type_check,
    arthur_type_check_with_state,
    oracle_tempered,
    oracle_unramified,
)
from .oracle import (
    dimension_audit,
    enumerate_ems,
    enumerate_good_parity,
    standard_rhos,
)
from .textio import ParseError, Workspace, parse, serialize_workspace, workspace_for

__version__ = "0.1.0"
