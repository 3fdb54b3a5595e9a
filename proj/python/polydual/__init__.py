from ._core import (
    GeometryError,
    Polytope,
    analyze,
    apply_linear,
    check_bound,
    convergence_table,
    dp_delta,
    floating_support,
    generator,
    illumination_radial,
    invariant_g,
    lambda_constant,
    polar,
    random_symmetric,
    uniform_bound_constant,
    vertex_float_ratio,
)

__all__ = [
    "GeometryError",
    "Polytope",
    "analyze",
    "apply_linear",
    "check_bound",
    "convergence_table",
    "dp_delta",
    "floating_support",
    "generator",
    "illumination_radial",
    "invariant_g",
    "lambda_constant",
    "polar",
    "random_symmetric",
    "uniform_bound_constant",
    "vertex_float_ratio",
]
