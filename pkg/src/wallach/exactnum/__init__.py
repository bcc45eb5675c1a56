"""Exact arbitrary-precision arithmetic and certified univariate polynomial algebra."""

from .bivar import BivarPoly, resultant_eliminate, resultant_y
from .interval import Interval, sqrt_enclosure
from .poly import (
    UniPoly,
    isolate_real_roots,
    isolate_roots,
    refine_root,
    refine_to,
    root_bound,
    sturm_chain,
    sturm_count,
    sturm_root_count,
)
from .quadext import QuadExt, sqrt_in_field
from .rational import (
    Rat,
    decimal_str,
    format_rational,
    parse_rational,
    rat,
    rational_sqrt,
    sign,
    squarefree_split,
)

__all__ = [
    "BivarPoly",
    "Interval",
    "QuadExt",
    "Rat",
    "UniPoly",
    "decimal_str",
    "format_rational",
    "isolate_real_roots",
    "isolate_roots",
    "parse_rational",
    "rat",
    "rational_sqrt",
    "refine_root",
    "refine_to",
    "resultant_eliminate",
    "resultant_y",
    "root_bound",
    "sign",
    "sqrt_enclosure",
    "sqrt_in_field",
    "squarefree_split",
    "sturm_chain",
    "sturm_count",
    "sturm_root_count",
]
