"""Generalized Wallach spaces: exact region classification by the sign of the
degree-12 classifying polynomial, certified Einstein-metric solving, and
normalized Ricci-flow equilibrium analysis."""

__version__ = "0.1.0"

from .core import (
    AParams,
    GWSpace,
    MetricTriple,
    abstract_space,
    catalog_space,
    expected_region,
    homothety_classes,
)
from .omega import classify_region, eval_Q, grad_Q

__all__ = [
    "AParams",
    "GWSpace",
    "MetricTriple",
    "abstract_space",
    "catalog_space",
    "classify_region",
    "eval_Q",
    "expected_region",
    "grad_Q",
    "homothety_classes",
    "__version__",
]
