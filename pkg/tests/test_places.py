from __future__ import annotations

import math
import random
from fractions import Fraction

import pytest

from gvf_toolkit.algebra import BigFloat, Poly, p_adic_valuation, prime_divisors
from gvf_toolkit.exceptions import InputError, PayloadError
from gvf_toolkit.places import (
  RATIONALS,
  CarrierMismatch,
  FfElem,
  FunctionField,
  NfElem,
  NumberField,
  PlaceKind,
  PrecisionPolicy,
  QElem,
  QuadraticField,
  UnsupportedRamification,
  ZeroElement,
  decode_element,
  decode_elements,
  decode_field,
  decompose_prime,
  encode_element,
  encode_field,
  generator,
  norm,
  parse_element,
  support_places,
  valuation,
)

CUBIC = NumberField(Poly.of(-1, -1, 0, 1))


def test_decode_field_descriptors() -> None:
  assert decode_field("Q") == RATIONALS
  assert decode_field('{"type": "Q"}') == RATIONALS
  assert decode_field({"type": "quadratic", "d": -1}) == QuadraticField(-1)
  assert decode_field('{"type":"number_field","min_poly":[-2,0,1]}') == NumberField(
    Poly.of(-2, 0, 1)
  )
  assert decode_field({"type": "function_field", "p": 7}) == FunctionField(7)
  for carrier in (RATIONALS, QuadraticField(5), CUBIC, FunctionField(3)):
    assert decode_field(encode_field(carrier)) == carrier


@pytest.mark.parametrize(
  "raw",
  [
    '{"type": "cubic"}',
    '{"type": "quadratic"}',
    '{"type": "Q", "d": 2}',
    '{"type": "number_field", "min_poly": [1, 2]}',
    '{"type": "number_field", "min_poly": [1, 0, 2]}',
  ],
)
def test_decode_field_rejects_malformed_descriptors(raw: str) -> None:
  with pytest.raises(PayloadError):
    decode_field(raw)


def test_carriers_validate_their_parameters() -> None:
  with pytest.raises(InputError):
    QuadraticField(12)
  with pytest.raises(InputError):
    FunctionField(6)
  with pytest.raises(InputError, match="reducible"):
    NumberField(Poly.of(-1, 0, 1))


def test_parse_element_in_each_carrier() -> None:
  q2 = QuadraticField(2)
  assert parse_element("12/35", RATIONALS) == QElem(Fraction(12, 35))
  assert parse_element("1 + sqrt(2)", q2) == NfElem(q2, (Fraction(1), Fraction(1)))
  assert parse_element("sqrt(8)", q2) == NfElem(q2, (Fraction(0), Fraction(2)))
  assert parse_element("I", QuadraticField(-1)) == generator(QuadraticField(-1))
  assert parse_element("a^3", CUBIC) == parse_element("a + 1", CUBIC)
  f2 = FunctionField(2)
  assert parse_element("(t^3+1)/(t+1)", f2).render() == "t^2 + t + 1"


@pytest.mark.parametrize(
  ("text", "carrier"),
  [
    ("sqrt(3)", QuadraticField(2)),
    ("0.5", RATIONALS),
    ("y + 1", RATIONALS),
    ("2^(1/3)", RATIONALS),
  ],
)
def test_parse_element_rejects_values_outside_the_carrier(text: str, carrier: object) -> None:
  with pytest.raises(InputError):
    parse_element(text, carrier)  # type: ignore[arg-type]


def test_decode_structured_elements() -> None:
  q5 = QuadraticField(5)
  assert decode_element(q5, {"a": "1/2", "b": "3"}) == NfElem(q5, (Fraction(1, 2), Fraction(3)))
  assert decode_element(CUBIC, '{"coeffs": ["0", "1"]}') == generator(CUBIC)
  f7 = FunctionField(7)
  elem = decode_element(f7, {"num": "t^3+2*t", "den": "t+1"})
  assert isinstance(elem, FfElem)
  assert elem.num == Poly.of(0, 2, 0, 1)
  assert elem.den == Poly.of(1, 1)
  with pytest.raises(PayloadError):
    decode_element(RATIONALS, {"a": "1", "b": "1"})
  with pytest.raises(PayloadError):
    decode_element(q5, {"a": "1", "c": "1"})


def test_decode_elements_accepts_lists_and_comma_separated_text() -> None:
  expected = [QElem(Fraction(1, 2)), QElem(Fraction(3))]
  assert decode_elements(RATIONALS, '["1/2", 3]') == expected
  assert decode_elements(RATIONALS, "1/2, 3") == expected
  assert decode_elements(RATIONALS, "2") == [QElem(Fraction(2))]
  q2 = QuadraticField(2)
  assert len(decode_elements(q2, "sqrt(2), (1 + sqrt(2))/3")) == 2


def test_encode_element_shapes() -> None:
  assert encode_element(QElem(Fraction(-3, 4))) == "-3/4"
  q2 = QuadraticField(2)
  assert encode_element(NfElem(q2, (Fraction(1), Fraction(1, 2)))) == {"a": "1", "b": "1/2"}
  assert encode_element(generator(CUBIC)) == {"coeffs": ["0", "1", "0"]}
  assert encode_element(generator(FunctionField(3))) == {"num": "t", "den": "1"}


def test_element_arithmetic() -> None:
  q2 = QuadraticField(2)
  unit = parse_element("1 + sqrt(2)", q2)
  assert unit * unit.inverse() == parse_element("1", q2)
  assert isinstance(unit, NfElem)
  assert unit * unit.conjugate() == parse_element("-1", q2)
  alpha = generator(CUBIC)
  one = parse_element("1", CUBIC)
  assert alpha * alpha.inverse() == one
  assert alpha**3 == alpha + one
  f5 = FunctionField(5)
  reduced = parse_element("(t^2 - 1)/(t - 1)", f5)
  assert reduced == parse_element("t + 1", f5)
  with pytest.raises(ZeroElement):
    QElem(Fraction(0)).inverse()


def test_norms() -> None:
  assert norm(QuadraticField(2), parse_element("1 + sqrt(2)", QuadraticField(2))) == -1
  assert norm(CUBIC, generator(CUBIC)) == 1
  assert norm(CUBIC, parse_element("2", CUBIC)) == 8


def test_support_places_over_q() -> None:
  places = support_places(RATIONALS, [QElem(Fraction(12, 35))])
  assert [p.label() for p in places] == ["v_2", "v_3", "v_5", "v_7", "v_inf"]
  assert places[-1].kind is PlaceKind.ARCHIMEDEAN
  values = [valuation(place, QElem(Fraction(12, 35))) for place in places[:-1]]
  assert values == [2, 1, -1, -1]
  arch = valuation(places[-1], QElem(Fraction(12, 35)))
  assert isinstance(arch, BigFloat)
  assert abs(float(arch) - math.log(35 / 12)) < 1e-15


def test_support_places_validate_inputs() -> None:
  with pytest.raises(ZeroElement):
    support_places(RATIONALS, [QElem(Fraction(0))])
  with pytest.raises(CarrierMismatch):
    support_places(QuadraticField(2), [QElem(Fraction(2))])


def test_units_have_only_archimedean_places() -> None:
  q2 = QuadraticField(2)
  places = support_places(q2, [parse_element("1 + sqrt(2)", q2)])
  assert [p.kind for p in places] == [PlaceKind.ARCHIMEDEAN, PlaceKind.ARCHIMEDEAN]
  assert all(p.is_real for p in places)


def test_ramified_prime_in_gaussian_rationals() -> None:
  gauss = QuadraticField(-1)
  (place,) = decompose_prime(gauss, 2)
  assert (place.e, place.f) == (2, 1)
  assert valuation(place, parse_element("2", gauss)) == 2
  assert valuation(place, parse_element("1 + I", gauss)) == 1
  assert valuation(place, parse_element("1/2", gauss)) == -2


def test_split_and_inert_primes_in_gaussian_rationals() -> None:
  gauss = QuadraticField(-1)
  split = decompose_prime(gauss, 5)
  assert [(p.e, p.f) for p in split] == [(1, 1), (1, 1)]
  values = sorted(valuation(p, parse_element("2 + I", gauss)) for p in split)
  assert values == [0, 1]
  (inert,) = decompose_prime(gauss, 3)
  assert inert.f == 2
  assert valuation(inert, parse_element("3", gauss)) == 1


def test_two_adic_split_prime() -> None:
  q17 = QuadraticField(17)
  places = decompose_prime(q17, 2)
  assert [p.branch for p in places] == [1, 3]
  elem = parse_element("(1 + sqrt(17))/2", q17)
  values = sorted(valuation(p, elem) for p in places)
  assert values == [0, 2]


def test_general_number_field_places() -> None:
  (place,) = decompose_prime(CUBIC, 2)
  assert place.f == 3
  assert valuation(place, parse_element("2", CUBIC)) == 1
  places = support_places(CUBIC, [generator(CUBIC)])
  assert [p.kind for p in places] == [PlaceKind.ARCHIMEDEAN] * 3
  assert sum(p.is_real for p in places) == 1


def test_ramified_general_number_field_is_unsupported() -> None:
  with pytest.raises(UnsupportedRamification):
    decompose_prime(NumberField(Poly.of(-2, 0, 0, 1)), 3)


def test_function_field_places() -> None:
  f2 = FunctionField(2)
  t = generator(f2)
  places = support_places(f2, [t])
  assert [p.label() for p in places] == ["v_{t}", "v_inf"]
  assert [valuation(p, t) for p in places] == [1, -1]
  elem = parse_element("1/(t^2 + t + 1)", f2)
  places = support_places(f2, [elem])
  assert [valuation(p, elem) for p in places] == [-1, 2]
  assert places[0].weight.multiplier == 2


FIELDS = [
  QuadraticField(2),
  QuadraticField(-1),
  QuadraticField(5),
  QuadraticField(-3),
  QuadraticField(17),
  CUBIC,
]
CUBIC_DISCRIMINANT = 23


def random_element(rng: random.Random, field: QuadraticField | NumberField) -> NfElem:
  while True:
    den = rng.randint(1, 12)
    coeffs = tuple(Fraction(rng.randint(-30, 30), den) for _ in range(field.degree))
    elem = NfElem(field, coeffs)
    if elem.is_zero():
      continue
    if field == CUBIC:
      n = norm(field, elem)
      if (n.numerator * n.denominator * den) % CUBIC_DISCRIMINANT == 0:
        continue
    return elem


@pytest.mark.parametrize("field", FIELDS, ids=lambda field: field.label())
def test_ramification_and_inertia_fill_the_degree(field: QuadraticField | NumberField) -> None:
  for p in (2, 3, 5, 7, 11, 13, 17, 29, 31, 101):
    if field == CUBIC and p == CUBIC_DISCRIMINANT:
      continue
    places = decompose_prime(field, p)
    assert sum(place.e * place.f for place in places) == field.degree, p


def test_norm_valuation_identity(rng: random.Random) -> None:
  for i in range(500):
    field = FIELDS[i % len(FIELDS)]
    elem = random_element(rng, field)
    n = norm(field, elem)
    den = elem.integral_form()[1]
    for p in prime_divisors(n.numerator, n.denominator, den):
      total = sum(place.f * valuation(place, elem) for place in decompose_prime(field, p))
      assert total == p_adic_valuation(n, p), (elem.render(), p)


def test_valuations_are_stable_under_doubled_precision(rng: random.Random) -> None:
  coarse = PrecisionPolicy()
  fine = PrecisionPolicy(
    bits=2 * coarse.bits, max_bits=2 * coarse.max_bits, hensel=2 * coarse.hensel
  )
  for i in range(120):
    field = FIELDS[i % len(FIELDS)]
    elem = random_element(rng, field)
    for place in support_places(field, [elem], coarse):
      low = valuation(place, elem, coarse)
      high = valuation(place, elem, fine)
      if isinstance(low, Fraction):
        assert low == high, (elem.render(), place.label())
      else:
        assert isinstance(high, BigFloat)
        assert (low - high).contains_zero(), (elem.render(), place.label())
