"""Exact symbolic kernel: Gaussian rationals, polynomials, forms and fields."""

from .formal import ExpTrig
from .forms import (
    DegenerateFormError,
    PolyField,
    PolyForm,
    PolyMap,
    evaluate_2form,
    exterior_derivative,
    hamiltonian_vector_field,
    interior_product,
    poisson_bracket,
    pullback,
    wedge,
)
from .poly import PolyFn, poly_sum
from .scalar import I, ONE, QI, ZERO, parse_rational

__all__ = [
    "DegenerateFormError",
    "ExpTrig",
    "I",
    "ONE",
    "PolyField",
    "PolyFn",
    "PolyForm",
    "PolyMap",
    "QI",
    "ZERO",
    "evaluate_2form",
    "exterior_derivative",
    "hamiltonian_vector_field",
    "interior_product",
    "parse_rational",
    "poisson_bracket",
    "poly_sum",
    "pullback",
    "wedge",
]
