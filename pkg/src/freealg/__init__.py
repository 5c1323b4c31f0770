"""Exact computation in the free associative algebra K<x, y> over Q and F_p."""

from .bimodule import CommutatorEqSolution, MonomialClass, classify_monomial, solve_commutator_equation
from .endo import (
    AddToX,
    AddToY,
    Endomorphism,
    LinearAffine,
    coordinate_certify,
    decompose_tame,
    invert,
    is_automorphism,
    is_retraction,
    iterate_to_retraction,
    orbit_witness,
    retract_generator,
)
from .errors import AlgebraError
from .estimate import alg_dependent, build_counterexample, check_conjecture_inequality, check_estimate
from .fields import GF, QQ, FieldElem, field_from_selector
from .malcev import (
    TruncatedSeries,
    build_theorem9_input,
    mn_fractional_power,
    mn_nth_root,
    mn_sqrt_char2,
    negative_power_witness,
    parse_series,
)
from .parsing import parse_poly, print_poly
from .poly import Polynomial, commutator

__all__ = [name for name in dir() if not name.startswith("_")]
