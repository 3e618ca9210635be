"""Numerical verification toolkit for curvature gap bounds."""

from ._gapcheck import (
    annulus_log_bound,
    charge,
    commutator_constant,
    curvature,
    equality_ratio,
    gap_constant,
    gap_verdict,
    instanton_norm,
    kato_ratio,
    pointwise_inequality,
    poincare_ratio,
    sharpness_search,
    spaces,
    theorems,
    threshold,
    weight_value,
)

__all__ = [
    "annulus_log_bound",
    "charge",
    "commutator_constant",
    "curvature",
    "equality_ratio",
    "gap_constant",
    "gap_verdict",
    "instanton_norm",
    "kato_ratio",
    "pointwise_inequality",
    "poincare_ratio",
    "sharpness_search",
    "spaces",
    "theorems",
    "threshold",
    "weight_value",
]
