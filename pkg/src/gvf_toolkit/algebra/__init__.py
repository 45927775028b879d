from __future__ import annotations

from .bigfloat import DEFAULT_PRECISION, MAX_PRECISION, BigFloat, ComplexBall, evaluate_at
from .exceptions import NotSquarefree
from .finite_field import (
  factor_poly_fp,
  fp_add,
  fp_divmod,
  fp_gcd,
  fp_inverse,
  fp_is_irreducible,
  fp_monic,
  fp_mul,
  fp_reduce,
  fp_scale,
  fp_sub,
)
from .integers import (
  Rat,
  factor_int,
  int_valuation,
  is_prime,
  is_squarefree_int,
  legendre,
  p_adic_valuation,
  parse_rational,
  prime_divisors,
  render_rational,
)
from .polynomials import Poly, hensel_lift, poly_product, resultant
from .roots import RootBox, complex_roots, mahler_measure

__all__ = [
  # bigfloat
  "DEFAULT_PRECISION",
  "MAX_PRECISION",
  "BigFloat",
  "ComplexBall",
  "evaluate_at",
  # exceptions
  "NotSquarefree",
  # finite_field
  "factor_poly_fp",
  "fp_add",
  "fp_divmod",
  "fp_gcd",
  "fp_inverse",
  "fp_is_irreducible",
  "fp_monic",
  "fp_mul",
  "fp_reduce",
  "fp_scale",
  "fp_sub",
  # integers
  "Rat",
  "factor_int",
  "int_valuation",
  "is_prime",
  "is_squarefree_int",
  "legendre",
  "p_adic_valuation",
  "parse_rational",
  "prime_divisors",
  "render_rational",
  # polynomials
  "Poly",
  "hensel_lift",
  "poly_product",
  "resultant",
  # roots
  "RootBox",
  "complex_roots",
  "mahler_measure",
]
