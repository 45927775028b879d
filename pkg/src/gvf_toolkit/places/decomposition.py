"""Places above a rational prime, archimedean places, and function-field places."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from gvf_toolkit.algebra import (
  Poly,
  RootBox,
  complex_roots,
  factor_poly_fp,
  hensel_lift,
  is_prime,
  legendre,
)
from gvf_toolkit.exceptions import InputError

from .exceptions import UnsupportedRamification
from .types import (
  Carrier,
  FunctionField,
  NumberCarrier,
  NumberField,
  Place,
  PlaceKind,
  QuadraticField,
  RATIONALS,
  RationalsQ,
  Weight,
)

TWO_ADIC_BRANCHES = (1, 3)


@lru_cache(maxsize=512)
def residue_factors(min_poly: Poly, p: int) -> tuple[Poly, ...]:
  """Sorted monic irreducible factors of min_poly mod p; the reduction must be squarefree."""
  factors = factor_poly_fp(min_poly, p)
  repeated = [f for f, k in factors if k > 1]
  if repeated:
    raise UnsupportedRamification(p, f"{min_poly} has the repeated factor {repeated[0]} mod {p}")
  return tuple(f for f, _ in factors)


@lru_cache(maxsize=512)
def lifted_factors(min_poly: Poly, p: int, n: int) -> tuple[Poly, ...]:
  """The residue factors Hensel-lifted to precision p^n, in the same order."""
  return tuple(hensel_lift(min_poly, residue_factors(min_poly, p), p, n))


def two_adic_sqrt(d: int, bits: int) -> int:
  """r ≡ 1 (mod 4) with r² ≡ d (mod 2^bits), for d ≡ 1 (mod 8).

  r agrees with a true 2-adic square root of d modulo 2^(bits-1).
  """
  if d % 8 != 1:
    raise ValueError(f"{d} has no 2-adic square root congruent to 1 mod 4")
  r = 1
  for k in range(3, bits):
    if (r * r - d) % (1 << (k + 1)):
      r += 1 << (k - 1)
  return r % (1 << bits)


def _rational_place(p: int) -> Place:
  return Place(RATIONALS, PlaceKind.FINITE, Weight(Fraction(1), p), p=p)


def _quadratic_places(field: QuadraticField, p: int) -> list[Place]:
  d = field.d

  def place(factor: Poly, e: int, f: int, branch: int = 0) -> Place:
    weight = Weight(Fraction(f, 2), p)
    return Place(field, PlaceKind.FINITE, weight, p=p, factor=factor, e=e, f=f, branch=branch)

  if p == 2:
    match d % 8:
      case 1:
        # Branch r is the embedding sending √d to the 2-adic root congruent to r mod 4.
        return [place(Poly.of(-r % 4, 1), 1, 1, branch=r) for r in TWO_ADIC_BRANCHES]
      case 5:
        return [place(Poly.of(1, 1, 1), 1, 2)]
      case _:
        return [place(Poly.of(d % 2, 1), 2, 1)]
  if d % p == 0:
    return [place(Poly.x(), 2, 1)]
  if legendre(d, p) == 1:
    factors = residue_factors(field.min_poly, p)
    return [place(factor, 1, 1, branch=i) for i, factor in enumerate(factors)]
  return [place(field.min_poly.reduce_mod(p), 1, 2)]


def _number_field_places(field: NumberField, p: int) -> list[Place]:
  n = field.degree
  places: list[Place] = []
  for i, factor in enumerate(residue_factors(field.min_poly, p)):
    weight = Weight(Fraction(factor.degree, n), p)
    places.append(
      Place(field, PlaceKind.FINITE, weight, p=p, factor=factor, e=1, f=factor.degree, branch=i)
    )
  return places


def decompose_prime(carrier: Carrier, p: int) -> list[Place]:
  """Places above p with their ramification index e and residue degree f."""
  if not is_prime(p):
    raise InputError(f"{p} is not prime")
  match carrier:
    case RationalsQ():
      return [_rational_place(p)]
    case QuadraticField():
      return _quadratic_places(carrier, p)
    case NumberField():
      return _number_field_places(carrier, p)
    case FunctionField():
      raise InputError("function fields have no rational primes; use function_field_place")


@lru_cache(maxsize=128)
def embedding_boxes(min_poly: Poly, prec: int) -> tuple[RootBox, ...]:
  return tuple(complex_roots(min_poly, prec))


def archimedean_places(carrier: NumberCarrier, prec: int) -> list[Place]:
  """One place per complex embedding; conjugate embeddings are separate places."""
  if isinstance(carrier, RationalsQ):
    return [Place(carrier, PlaceKind.ARCHIMEDEAN, Weight(Fraction(1)), root_index=0)]
  n = carrier.degree
  weight = Weight(Fraction(1, n))
  return [
    Place(carrier, PlaceKind.ARCHIMEDEAN, weight, root_index=i, is_real=box.is_real)
    for i, box in enumerate(embedding_boxes(carrier.min_poly, prec))
  ]


def function_field_place(field: FunctionField, factor: Poly) -> Place:
  if not factor.is_monic() or factor.degree < 1:
    raise InputError(f"place polynomial must be monic of positive degree: {factor}")
  return Place(
    field,
    PlaceKind.FUNCTION_FINITE,
    Weight(Fraction(factor.degree)),
    factor=factor.reduce_mod(field.p),
    f=factor.degree,
  )


def infinity_place(field: FunctionField) -> Place:
  return Place(field, PlaceKind.FUNCTION_INFINITY, Weight(Fraction(1)))
