"""Exact computations in U_q(sl2): normal forms, presentations, identities, representations."""

from .coeff_field import RationalFunction, rf_format, rf_parse
from .expr import evaluate
from .ncalgebra import NormalElement, convert, format_element, membership, nc_multiply
from .presentations import apply_morphism, get_morphism, named

__all__ = ["RationalFunction", "rf_format", "rf_parse", "evaluate", "NormalElement", "convert",
           "format_element", "membership", "nc_multiply", "apply_morphism", "get_morphism", "named"]
