"""Belyi-degree certificates: passports, censuses, bounds, and equations."""

__version__ = "0.1.0"

from .perm import (
    CycleType,
    Permutation,
    compose,
    conjugate,
    cycle_type,
    centralizer_order,
    group_order,
    is_transitive,
)
from .passports import (
    RamificationType,
    enumerate_partitions,
    family_upper_bound,
    lower_bound_from_genus,
    ramification_type,
    rh_genus,
    types_with_genus,
)
from .census import (
    BelyiTriple,
    PassportEntry,
    classify_monodromy,
    enumerate_classes,
    free_action_obstruction,
    passport_report,
    verify_fermat4,
)
from .bounds import (
    AlgebraicPoint,
    BranchSet,
    belyi_upper_bound,
    branch_set,
    height,
    khadjavi_bound,
    rational_point,
    algebraic_point,
    INFINITY,
)
from .curves import CurveModel, RRData, RationalFunction, fixture, implicit_slope
from .equations import (
    PolynomialSystem,
    SystemCase,
    build_system,
    compute_t,
    dump_system,
    enumerate_cases,
    expected_rr_dimension,
    parse_system,
)
from .groebner import buchberger, is_empty_variety, reduce_poly
from .mpoly import MultiPoly

__all__ = [name for name in dir() if not name.startswith("_")]
