"""Polynomials, Groebner bases and ideal operations over the rationals."""

from .groebner import TermOrder
from .ideals import (
    BinomialCertificate, PolynomialIdeal, algebra_map_kernel, circuits,
    contains_monomial, eliminate, groebner_basis, hypersurface_tropical_cones,
    ideal_equals, ideal_from_strings, initial_form, initial_ideal,
    is_binomial_prime, saturate, saturate_variables, support_minimal_vectors,
)
from .polynomial import Polynomial, format_polynomial, parse_polynomial
