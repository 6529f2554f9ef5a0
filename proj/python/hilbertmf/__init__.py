"""Hilbert modular forms over real quadratic fields of narrow class number one."""

from ._hmf import (
    HmfError,
    bracket,
    cohen_kernel,
    coset_count,
    cusp_dimension,
    double_eisenstein,
    eigenforms,
    eisenstein,
    eisenstein_numeric,
    evaluate,
    field_info,
    lgrid,
    lipschitz_check,
    zeta_neg,
)

__all__ = [
    "HmfError",
    "bracket",
    "cohen_kernel",
    "coset_count",
    "cusp_dimension",
    "double_eisenstein",
    "eigenforms",
    "eisenstein",
    "eisenstein_numeric",
    "evaluate",
    "field_info",
    "lgrid",
    "lipschitz_check",
    "zeta_neg",
]
