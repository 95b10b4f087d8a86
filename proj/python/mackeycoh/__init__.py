"""Exact RO(G)-graded Bredon cohomology of S^0 for cyclic p-groups."""

from ._core import (
    CohomResult,
    DomainError,
    DualityViolation,
    ExactnessViolation,
    Grading,
    GradingParseError,
    InvalidDiagram,
    MackeyError,
    MackeyFunctor,
    OrderTooLarge,
    StoreConflict,
    UnknownDependencyError,
    __version__,
    b_ts,
    check_anderson,
    check_les_orders,
    compute,
    cone_group,
    direct_sum,
    engine_version,
    ext_l,
    extend_const,
    extend_dual,
    from_json,
    hom_l,
    inflate,
    iso_test,
    parse_grading,
    recognize,
    restrict_to,
    t_n,
    z_s,
)

__all__ = [
    "CohomResult",
    "DomainError",
    "DualityViolation",
    "ExactnessViolation",
    "Grading",
    "GradingParseError",
    "InvalidDiagram",
    "MackeyError",
    "MackeyFunctor",
    "OrderTooLarge",
    "StoreConflict",
    "UnknownDependencyError",
    "__version__",
    "b_ts",
    "check_anderson",
    "check_les_orders",
    "compute",
    "cone_group",
    "direct_sum",
    "engine_version",
    "ext_l",
    "extend_const",
    "extend_dual",
    "from_json",
    "hom_l",
    "inflate",
    "iso_test",
    "parse_grading",
    "recognize",
    "restrict_to",
    "t_n",
    "z_s",
]
