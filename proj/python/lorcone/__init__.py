"""Generalized cones I x_f X: causal relations, time separation, geodesics and
timelike curvature comparison."""

from ._lorcone import (
    Circle,
    Cone,
    ConePoint,
    ConfigError,
    ConvergenceError,
    DomainError,
    Euclidean,
    Fiber,
    Hyperbolic2,
    IndeterminateError,
    MetricGraph,
    NullTransport,
    RealLine,
    Sphere2,
    Warp,
    concavity_check,
    llcheck,
    model_tau,
    modified_distance,
    realize_timelike_triangle,
    singularity_report,
    size_bounds_check,
)

__all__ = [name for name in dir() if not name.startswith("_")]
