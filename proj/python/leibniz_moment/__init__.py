"""Moment map critical points of Leibniz algebras.

Thin layer over the compiled ``_core`` module.
"""

from ._core import (
    Bracket,
    CriticalType,
    FlowParams,
    FlowTrace,
    IdentityReport,
    LeibnizError,
    MomentReport,
    analyze,
    build_extension,
    catalog_get,
    catalog_names,
    catalog_verify,
    check_identities,
    critical_type,
    critical_value_formula,
    criticality_decompose,
    descend,
    functional_value,
    gl_act,
    inf_act,
    make_bracket,
    moment_matrix,
    perturb_in_orbit,
    run_cli,
)

__all__ = [
    "Bracket",
    "CriticalType",
    "FlowParams",
    "FlowTrace",
    "IdentityReport",
    "LeibnizError",
    "MomentReport",
    "analyze",
    "build_extension",
    "catalog_get",
    "catalog_names",
    "catalog_verify",
    "check_identities",
    "critical_type",
    "critical_value_formula",
    "criticality_decompose",
    "descend",
    "functional_value",
    "gl_act",
    "inf_act",
    "make_bracket",
    "moment_matrix",
    "perturb_in_orbit",
    "run_cli",
]
