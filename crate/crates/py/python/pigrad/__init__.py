from ._pigrad import (
    Algebra,
    catalog_names,
    check_identity,
    cocharacter,
    codim,
    codim_report,
    equivalent,
    growth,
    proper_codim,
    verify_basis,
)

__all__ = [
    "Algebra",
    "catalog_names",
    "check_identity",
    "cocharacter",
    "codim",
    "codim_report",
    "equivalent",
    "growth",
    "proper_codim",
    "verify_basis",
]
