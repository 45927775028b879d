"""Valuations of field elements at places, and norms.

Finite places return exact rationals in the ord_P normalization (a uniformizer has valuation 1,
so v_P(p) = e). Archimedean places return the ball -log|σ(a)|. Function-field places return
ord_π, or deg(den) - deg(num) at infinity.
"""

from __future__ import annotations

from fractions import Fraction

from libsh import get_logger

from gvf_toolkit.algebra import (
  BigFloat,
  Poly,
  evaluate_at,
  fp_divmod,
  int_valuation,
  p_adic_valuation,
  resultant,
)
from gvf_toolkit.exceptions import InputError, PrecisionExhausted

from .decomposition import embedding_boxes, lifted_factors, two_adic_sqrt
from .elements import FfElem, FieldElem, NfElem, QElem
from .exceptions import CarrierMismatch, ZeroElement
from .types import (
  DEFAULT_POLICY,
  Carrier,
  NumberField,
  Place,
  PlaceKind,
  PrecisionPolicy,
  QuadraticField,
)

_logger = get_logger(__name__)

Valuation = Fraction | BigFloat


def _check(place: Place, elem: FieldElem) -> None:
  if place.carrier != elem.carrier:
    raise CarrierMismatch(f"place {place.label()} of {place.carrier.label()} vs {elem.render()}")
  if elem.is_zero():
    raise ZeroElement("valuation of 0 is undefined")


# --- quadratic fields ---


def _split_root(field: QuadraticField, place: Place, precision: int) -> tuple[int, int]:
  """(r, k): r ≡ the image of √d in ℤ_p under this place, correct modulo p^k."""
  p = place.p
  assert p is not None
  if p == 2:
    r = two_adic_sqrt(field.d, precision + 1)
    root = r if place.branch == 1 else (-r) % (1 << (precision + 1))
    return root, precision
  factor = lifted_factors(field.min_poly, p, precision)[place.branch]
  return (-int(factor.coeff(0))) % p**precision, precision


def _quadratic_integral_valuation(
  field: QuadraticField, place: Place, a: int, b: int, policy: PrecisionPolicy
) -> Fraction:
  """v_P(a + b√d) for integers a, b, not both zero."""
  p = place.p
  assert p is not None
  d = field.d
  if b == 0:
    return Fraction(place.e * int_valuation(a, p))
  if place.f == 2:
    return Fraction(int_valuation(a * a - d * b * b, p), 2)
  if place.e == 2:
    if p == 2:
      return Fraction(int_valuation(a * a - d * b * b, p))
    candidates = [1 + 2 * int_valuation(b, p)]
    if a != 0:
      candidates.append(2 * int_valuation(a, p))
    return Fraction(min(candidates))
  vb = int_valuation(b, p)
  precision = policy.hensel
  while precision <= policy.max_hensel:
    r, correct = _split_root(field, place, precision)
    x = a + b * r
    if x != 0 and int_valuation(x, p) < vb + correct:
      return Fraction(int_valuation(x, p))
    precision *= 2
  raise PrecisionExhausted(
    f"split valuation at {place.label()} needs more than p^{policy.max_hensel}"
  )


def _quadratic_valuation(place: Place, elem: NfElem, policy: PrecisionPolicy) -> Fraction:
  assert isinstance(elem.field, QuadraticField) and place.p is not None
  g, den = elem.integral_form()
  a, b = int(g.coeff(0)), int(g.coeff(1))
  base = _quadratic_integral_valuation(elem.field, place, a, b, policy)
  return base - place.e * int_valuation(den, place.p)


# --- general number fields ---


def _resultant_valuation(place: Place, elem: NfElem, policy: PrecisionPolicy) -> Fraction:
  """v_P(g(α)/den) = v_p(Res(h̃, g))/f - v_p(den) for the lifted local factor h̃.

  The lift precision doubles until v_p(Res(h̃, g)) < N/2.
  """
  assert isinstance(elem.field, NumberField) and place.p is not None
  p = place.p
  g, den = elem.integral_form()
  precision = policy.hensel
  while precision <= policy.max_hensel:
    h = lifted_factors(elem.field.min_poly, p, precision)[place.branch]
    res = resultant(h, g, modulus=p**precision)
    if res != 0:
      v = int_valuation(int(res), p)
      if 2 * v < precision:
        if v % place.f:
          raise InputError(f"inconsistent local data at {place.label()}: v_p(Res) = {v}")
        return Fraction(v, place.f) - int_valuation(den, p)
    _logger.debug("raising Hensel precision", place=place.label(), precision=precision * 2)
    precision *= 2
  raise PrecisionExhausted(f"valuation at {place.label()} needs more than p^{policy.max_hensel}")


# --- archimedean ---


def archimedean_valuation(place: Place, elem: QElem | NfElem, policy: PrecisionPolicy) -> BigFloat:
  """-log|σ(a)| as a ball, retrying at higher precision while the embedded value touches 0."""
  if isinstance(elem, QElem):
    return BigFloat.log_of(1 / abs(elem.value), policy.bits)
  assert place.root_index is not None
  prec = policy.bits
  while prec <= policy.max_bits:
    box = embedding_boxes(elem.field.min_poly, prec)[place.root_index]
    value = evaluate_at(elem.coeffs, box.ball)
    try:
      return value.neg_log_abs()
    except PrecisionExhausted:
      prec *= 2
  raise PrecisionExhausted(f"embedding {place.label()} of {elem.render()} not separated from 0")


# --- function fields ---


def _order_at(poly: Poly, pi: Poly, p: int) -> int:
  order = 0
  current = poly
  while True:
    quotient, remainder = fp_divmod(current, pi, p)
    if not remainder.is_zero():
      return order
    order += 1
    current = quotient


def _function_valuation(place: Place, elem: FfElem) -> Fraction:
  if place.kind is PlaceKind.FUNCTION_INFINITY:
    return Fraction(elem.den.degree - elem.num.degree)
  assert place.factor is not None
  p = elem.p
  return Fraction(_order_at(elem.num, place.factor, p) - _order_at(elem.den, place.factor, p))


def valuation(place: Place, elem: FieldElem, policy: PrecisionPolicy = DEFAULT_POLICY) -> Valuation:
  """v(a) for a nonzero element at a place of the same carrier."""
  _check(place, elem)
  match place.kind:
    case PlaceKind.ARCHIMEDEAN:
      assert isinstance(elem, (QElem, NfElem))
      return archimedean_valuation(place, elem, policy)
    case PlaceKind.FUNCTION_FINITE | PlaceKind.FUNCTION_INFINITY:
      assert isinstance(elem, FfElem)
      return _function_valuation(place, elem)
    case PlaceKind.FINITE:
      assert place.p is not None
      match elem:
        case QElem(value):
          return Fraction(p_adic_valuation(value, place.p))
        case NfElem(field=QuadraticField()):
          return _quadratic_valuation(place, elem, policy)
        case NfElem():
          return _resultant_valuation(place, elem, policy)
        case FfElem():
          raise CarrierMismatch("function-field elements have no rational-prime places")


def norm(carrier: Carrier, elem: FieldElem) -> Fraction:
  """N_{K/ℚ}(a); for a general number field this is Res(min_poly, g)/den^n."""
  if elem.carrier != carrier:
    raise CarrierMismatch(f"{elem.render()} is not in {carrier.label()}")
  match elem:
    case QElem(value):
      return value
    case NfElem(field=QuadraticField(d)):
      return elem.a * elem.a - d * elem.b * elem.b
    case NfElem(field=field):
      g, den = elem.integral_form()
      return Fraction(resultant(field.min_poly, g)) / Fraction(den) ** field.degree
    case FfElem():
      raise InputError("norms to Q are not defined for function-field elements")
