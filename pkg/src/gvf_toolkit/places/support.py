"""Places where some element of a tuple has nonzero valuation, plus every archimedean place."""

from __future__ import annotations

from collections.abc import Sequence

from libsh import get_logger

from gvf_toolkit.algebra import Poly, factor_poly_fp, prime_divisors, resultant

from .decomposition import archimedean_places, decompose_prime, function_field_place, infinity_place
from .elements import FfElem, FieldElem, NfElem, QElem, require_nonzero
from .exceptions import CarrierMismatch
from .types import (
  DEFAULT_POLICY,
  Carrier,
  FunctionField,
  NumberField,
  Place,
  PrecisionPolicy,
  QuadraticField,
  RationalsQ,
)

_logger = get_logger(__name__)


def candidate_primes(elem: QElem | NfElem) -> set[int]:
  """Rational primes p such that some place above p may see a nonzero valuation."""
  match elem:
    case QElem(value):
      return set(prime_divisors(value.numerator, value.denominator))
    case NfElem(field=QuadraticField(d)):
      g, den = elem.integral_form()
      a, b = int(g.coeff(0)), int(g.coeff(1))
      return set(prime_divisors(den, a * a - d * b * b))
    case NfElem(field=field):
      g, den = elem.integral_form()
      return set(prime_divisors(den, int(resultant(field.min_poly, g))))


def _function_field_factors(elem: FfElem) -> set[tuple[int, ...]]:
  keys: set[tuple[int, ...]] = set()
  for poly in (elem.num, elem.den):
    if poly.degree < 1:
      continue
    for factor, _ in factor_poly_fp(poly, elem.p):
      keys.add(tuple(factor.to_ints()))
  return keys


def support_places(
  carrier: Carrier,
  elems: Sequence[FieldElem],
  policy: PrecisionPolicy = DEFAULT_POLICY,
) -> list[Place]:
  """Finite places in (p, factor) order, then the archimedean places (or infinity).

  Every finite place where some element has nonzero valuation is included; a few extra places with
  all valuations zero may appear and contribute nothing.
  """
  require_nonzero(tuple(elems))
  for elem in elems:
    if elem.carrier != carrier:
      raise CarrierMismatch(f"{elem.render()} is not in {carrier.label()}")

  places: list[Place] = []
  match carrier:
    case FunctionField():
      keys: set[tuple[int, ...]] = set()
      for elem in elems:
        assert isinstance(elem, FfElem)
        keys |= _function_field_factors(elem)
      places = [function_field_place(carrier, Poly(key)) for key in keys]
      places.append(infinity_place(carrier))
    case RationalsQ() | QuadraticField() | NumberField():
      primes: set[int] = set()
      for elem in elems:
        assert isinstance(elem, (QElem, NfElem))
        primes |= candidate_primes(elem)
      for p in sorted(primes):
        places.extend(decompose_prime(carrier, p))
      places.extend(archimedean_places(carrier, policy.bits))

  places.sort(key=Place.sort_key)
  _logger.debug("support places", carrier=carrier.label(), count=len(places))
  return places