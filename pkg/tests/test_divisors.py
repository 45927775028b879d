from __future__ import annotations

import math
import random
from fractions import Fraction

import pytest

from gvf_toolkit.divisors import (
  Evidence,
  LatticeDivisor,
  PointOnSupport,
  PointSpec,
  add,
  beta,
  combine,
  decode_divisor,
  decode_point,
  decode_template,
  divisor_places,
  encode_divisor,
  encode_point,
  functional_value,
  height_at_point,
  height_difference_template,
  height_divisor,
  height_template,
  infer_variables,
  is_effective_on_support,
  make_template,
  negate,
  principal,
  scale,
  specialize,
  wedge,
  zero_divisor,
)
from gvf_toolkit.exceptions import PayloadError
from gvf_toolkit.gvf import LogCombination, compare_logs, height, r_t
from gvf_toolkit.places import (
  RATIONALS,
  CarrierMismatch,
  PrecisionPolicy,
  QElem,
  QuadraticField,
  generator,
  parse_element,
)
from gvf_toolkit.tropical import ArityMismatch, parse


def q(value: str) -> QElem:
  return QElem(Fraction(value))


def test_wedge_of_principal_divisors_takes_placewise_minimum(policy: PrecisionPolicy) -> None:
  d = principal(RATIONALS, q("4"))
  e = principal(RATIONALS, q("6"))
  meet = wedge(d, e)
  assert meet.generators == (q("4"), q("6"))
  assert meet.term == parse("min(x1, x2)")
  places = divisor_places(meet, policy)
  assert [p.label() for p in places] == ["v_2", "v_3", "v_inf"]
  assert [beta(p, meet, policy) for p in places[:2]] == [1, 0]
  assert beta(places[2], meet, policy) == -LogCombination.log_of(6)


def test_principal_divisors_of_integers_fail_only_at_infinity(policy: PrecisionPolicy) -> None:
  meet = wedge(principal(RATIONALS, q("4")), principal(RATIONALS, q("6")))
  verdict = is_effective_on_support(meet, policy)
  assert not verdict.effective
  assert verdict.evidence is Evidence.PROVEN
  assert [w.place.label() for w in verdict.witnesses] == ["v_inf"]


def test_height_divisor_is_effective_and_measures_height(policy: PrecisionPolicy) -> None:
  d = height_divisor(RATIONALS, q("3/4"))
  verdict = is_effective_on_support(d, policy)
  assert verdict.effective
  assert verdict.evidence is Evidence.PROVEN
  assert functional_value(RATIONALS, d, policy) == height(RATIONALS, q("3/4"), policy)


def test_effectivity_with_archimedean_balls_is_only_sampled(policy: PrecisionPolicy) -> None:
  q2 = QuadraticField(2)
  d = height_divisor(q2, generator(q2))
  verdict = is_effective_on_support(d, policy)
  assert verdict.effective
  assert verdict.evidence is Evidence.SAMPLED
  value = functional_value(q2, d, policy)
  assert abs(float(value.numeric()) - math.log(2) / 2) < 1e-15


def test_principal_divisors_have_degree_zero(policy: PrecisionPolicy) -> None:
  value = functional_value(RATIONALS, principal(RATIONALS, q("-12/35")), policy)
  assert value.is_exact
  assert value.exact_part_vanishes()


def test_functional_is_additive_and_homogeneous(policy: PrecisionPolicy) -> None:
  d = height_divisor(RATIONALS, q("2/9"))
  e = height_divisor(RATIONALS, q("5"))
  fd = functional_value(RATIONALS, d, policy)
  fe = functional_value(RATIONALS, e, policy)
  assert functional_value(RATIONALS, add(d, e), policy) == fd + fe
  assert functional_value(RATIONALS, scale(Fraction(3, 2), d), policy) == fd.scale(Fraction(3, 2))
  assert functional_value(RATIONALS, negate(e), policy) == -fe
  assert functional_value(RATIONALS, zero_divisor(RATIONALS), policy).exact_part_vanishes()
  assert is_effective_on_support(zero_divisor(RATIONALS), policy).effective


def test_combine_folds_left_to_right() -> None:
  items = [principal(RATIONALS, q(text)) for text in ("2", "3", "5")]
  folded = combine(items, "wedge")
  assert folded.term == parse("min(min(x1, x2), x3)")
  assert combine(items, "add").term == parse("x1 + x2 + x3")
  with pytest.raises(ValueError):
    combine([], "add")


def test_lattice_operations_require_one_carrier() -> None:
  q2 = QuadraticField(2)
  with pytest.raises(CarrierMismatch):
    wedge(principal(RATIONALS, q("2")), principal(q2, generator(q2)))
  with pytest.raises(CarrierMismatch):
    functional_value(q2, principal(RATIONALS, q("2")))


def test_divisor_payloads() -> None:
  d = decode_divisor(RATIONALS, '{"generators": ["4", "6"], "term": "min(x1,x2)"}')
  assert encode_divisor(d) == {"generators": ["4", "6"], "term": "min(x1, x2)"}
  with pytest.raises(ArityMismatch):
    decode_divisor(RATIONALS, {"generators": ["4"], "term": "x1 + x2"})
  with pytest.raises(PayloadError):
    decode_divisor(RATIONALS, {"generators": ["4"], "term": "x1", "extra": 1})
  with pytest.raises(PayloadError):
    decode_divisor(RATIONALS, "{not json")


def test_template_payloads_and_variable_inference() -> None:
  assert infer_variables(["y", "1 - y"]) == ("y",)
  assert infer_variables(["x*y + I", "sqrt(2)*z"]) == ("x", "y", "z")
  template = decode_template({"functions": ["y", "1 - y"], "term": "min(x1, x2)"})
  assert template.variables == ("y",)
  with pytest.raises(PayloadError):
    decode_template({"functions": [], "term": "x1"})


def test_point_payloads() -> None:
  q2 = QuadraticField(2)
  point = decode_point(q2, {"y": {"a": "0", "b": "1"}})
  assert point == PointSpec.single(q2, "y", generator(q2))
  assert encode_point(point) == {"y": {"a": "0", "b": "1"}}
  with pytest.raises(PayloadError):
    decode_point(q2, "[]")


def test_specialize_rejects_points_on_the_support() -> None:
  template = height_difference_template("y", "1 - y")
  assert specialize(template, PointSpec.single(RATIONALS, "y", q("2"))) == [q("2"), q("-1")]
  with pytest.raises(PointOnSupport) as info:
    specialize(template, PointSpec.single(RATIONALS, "y", q("1")))
  assert info.value.index == 1
  with pytest.raises(PointOnSupport):
    specialize(make_template(["1/y"], "x1"), PointSpec.single(RATIONALS, "y", q("0")))
  with pytest.raises(PointOnSupport):
    specialize(template, PointSpec.single(RATIONALS, "x", q("2")))


def test_height_at_points(policy: PrecisionPolicy) -> None:
  value = height_at_point(height_template(), PointSpec.single(RATIONALS, "y", q("2")), policy)
  assert value.symbolic() == "log(2)"
  q2 = QuadraticField(2)
  root = PointSpec.single(q2, "y", parse_element("sqrt(2)", q2))
  value = height_at_point(height_template(), root, policy)
  assert abs(float(value.numeric()) - math.log(2) / 2) < 1e-15
  # h(y) - h(1 - y) at y = 3/2: log 3 - log 2.
  diff = height_at_point(
    height_difference_template("y", "1 - y"), PointSpec.single(RATIONALS, "y", q("3/2")), policy
  )
  assert diff.logs == LogCombination.of({3: Fraction(1), 2: Fraction(-1)})


@pytest.mark.parametrize(
  ("d", "text"), [(2, "sqrt(2)"), (2, "3 + sqrt(2)"), (-1, "1 + I"), (5, "(1 + sqrt(5))/2")]
)
def test_principal_divisors_have_degree_zero_in_number_fields(
  d: int, text: str, policy: PrecisionPolicy
) -> None:
  field = QuadraticField(d)
  value = functional_value(field, principal(field, parse_element(text, field)), policy)
  assert value.is_exact
  assert value.exact_part_vanishes()


def random_rational(rng: random.Random) -> QElem:
  return QElem(Fraction(rng.choice([-1, 1]) * rng.randint(1, 200), rng.randint(1, 200)))


def random_divisor(rng: random.Random) -> LatticeDivisor:
  a = random_rational(rng)
  match rng.randrange(5):
    case 0:
      return principal(RATIONALS, a)
    case 1:
      return height_divisor(RATIONALS, a)
    case 2:
      return scale(Fraction(rng.randint(-6, 6), rng.randint(1, 4)), principal(RATIONALS, a))
    case 3:
      return add(principal(RATIONALS, a), negate(height_divisor(RATIONALS, random_rational(rng))))
    case _:
      return wedge(principal(RATIONALS, a), principal(RATIONALS, random_rational(rng)))


def test_beta_of_wedge_is_the_placewise_minimum(
  rng: random.Random, policy: PrecisionPolicy
) -> None:
  for _ in range(1000):
    d = random_divisor(rng)
    e = random_divisor(rng)
    meet = wedge(d, e)
    for place in divisor_places(meet, policy):
      bd = beta(place, d, policy)
      be = beta(place, e, policy)
      if place.is_archimedean:
        assert isinstance(bd, LogCombination) and isinstance(be, LogCombination)
        expected = bd if compare_logs(bd, be, policy) <= 0 else be
      else:
        expected = min(bd, be)
      assert beta(place, meet, policy) == expected, (d.render(), e.render(), place.label())


def test_functional_axioms_on_random_divisors(
  rng: random.Random, policy: PrecisionPolicy
) -> None:
  for _ in range(200):
    d = random_divisor(rng)
    e = random_divisor(rng)
    q = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
    fd = functional_value(RATIONALS, d, policy)
    fe = functional_value(RATIONALS, e, policy)
    assert functional_value(RATIONALS, add(d, e), policy) == fd + fe
    assert functional_value(RATIONALS, scale(q, d), policy) == fd.scale(q)
    assert functional_value(RATIONALS, negate(d), policy) == -fd
    a = random_rational(rng)
    assert functional_value(RATIONALS, principal(RATIONALS, a), policy).exact_part_vanishes()
    verdict = is_effective_on_support(d, policy)
    if verdict.effective and verdict.evidence is Evidence.PROVEN:
      assert fd.is_exact
      assert compare_logs(fd.logs, LogCombination(), policy) >= 0, d.render()


def test_specialization_agrees_with_direct_integration(
  rng: random.Random, policy: PrecisionPolicy
) -> None:
  template = make_template(["y^2 - 2*y", "1/y"], "min(x1, x2)")
  for _ in range(150):
    a = random_rational(rng)
    point = PointSpec.single(RATIONALS, "y", a)
    assert height_at_point(height_template(), point, policy) == height(RATIONALS, a, policy)
    if a.value == 2:
      continue
    direct = r_t(RATIONALS, template.term, [a * a - a - a, a.inverse()], policy)
    assert height_at_point(template, point, policy) == direct
  q2 = QuadraticField(2)
  sqrt2 = generator(q2)
  for _ in range(30):
    a = sqrt2 + parse_element(str(random_rational(rng).value), q2)
    point = PointSpec.single(q2, "y", a)
    diff = height_at_point(height_template(), point, policy) - height(q2, a, policy)
    assert diff.vanishes_termwise(), a.render()
