"""Exact polynomials and truncated power series."""

from .poly import (
    DEFAULT_REGISTRY,
    PRIORITY_VARIABLES,
    MultiPoly,
    VariableRegistry,
    as_poly,
    const,
    falling_factorial,
    parse_rational,
    poly_arith,
    rising_factorial,
    var,
)
from .series import (
    TruncatedSeries,
    extract_coeff,
    implicit_knuth_solve,
    series_exp,
    series_from_sequence,
    series_log,
    series_pow_symbolic,
)

__all__ = [
    "DEFAULT_REGISTRY",
    "PRIORITY_VARIABLES",
    "MultiPoly",
    "VariableRegistry",
    "as_poly",
    "const",
    "falling_factorial",
    "parse_rational",
    "poly_arith",
    "rising_factorial",
    "var",
    "TruncatedSeries",
    "extract_coeff",
    "implicit_knuth_solve",
    "series_exp",
    "series_from_sequence",
    "series_log",
    "series_pow_symbolic",
]
