from __future__ import annotations

import math
from dataclasses import replace
from fractions import Fraction

import pytest
import sympy

from gvf_toolkit.divisors import (
  PointSpec,
  height_at_point,
  height_difference_template,
  height_template,
)
from gvf_toolkit.exceptions import InputError, PayloadError
from gvf_toolkit.places import (
  RATIONALS,
  QElem,
  QuadraticField,
  parse_element,
  parse_expression,
)
from gvf_toolkit.search import (
  CandidateClass,
  NoCandidateSatisfiesEquations,
  PointFilter,
  SearchBounds,
  SearchMode,
  approximate,
  approximate_async,
  candidate_pools,
  compositions,
  cyclotomic_field,
  decode_search,
  deviation,
  encode_result,
  encode_zeta,
  enumerate_candidates,
  quadratic_discriminants,
  roots_of_unity,
  scan,
  stern_brocot,
  target_value,
  vanishes_at,
  zeta_estimate_async,
)
from gvf_toolkit.search.candidates import custom_polynomials

LOG2_SEARCH = """
targets:
  - {functions: [y], term: "-1*min(x1,0)", target: "log(2)"}
eps: "1e-9"
bounds: {rational: 2}
"""

SQRT2_SEARCH = """
variables: [y]
targets:
  - {functions: [y], term: "-1*min(x1,0)", target: "1/2*log(2)"}
equations: ["y^2 - 2"]
eps: "1e-9"
classes: [%s]
bounds: {rational: 4, quadratic_d: 2, quadratic_height: 1}
"""


def values_of(points: list[PointSpec]) -> list[Fraction]:
  out: list[Fraction] = []
  for point in points:
    (elem,) = point.values()
    assert isinstance(elem, QElem)
    out.append(elem.value)
  return out


def test_stern_brocot_walks_reduced_fractions_by_depth() -> None:
  assert list(stern_brocot(2)) == [(1, Fraction(1)), (2, Fraction(1, 2)), (2, Fraction(2))]
  found = [q for _, q in stern_brocot(3)]
  assert sorted(found) == sorted(
    {Fraction(a, b) for a in range(1, 4) for b in range(1, 4)}
  )
  assert len(found) == len(set(found)) == 7
  depths = [depth for depth, _ in stern_brocot(10)]
  assert depths == sorted(depths)


def test_quadratic_discriminants_are_squarefree_and_ordered() -> None:
  assert quadratic_discriminants(5) == [-1, -2, 2, -3, 3, -5, 5]


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5, 6, 8, 10, 12])
def test_roots_of_unity_are_primitive(k: int) -> None:
  roots = roots_of_unity(k)
  assert len(roots) == len({j for j in range(1, k + 1) if math.gcd(j, k) == 1})
  for root in roots:
    one = parse_element("1", root.carrier)
    assert root**k == one
    assert all(root**j != one for j in range(1, k))


def test_cyclotomic_fields_beyond_degree_four_are_skipped() -> None:
  assert cyclotomic_field(4) == QuadraticField(-1)
  assert cyclotomic_field(7) is None
  assert roots_of_unity(9) == []


def test_custom_polynomials_are_monic_irreducible() -> None:
  found = [poly for _, poly in custom_polynomials(2, 1)]
  assert len(found) == 5
  assert all(poly.degree == 2 and poly.is_monic() for poly in found)
  assert all(poly.is_irreducible_over_q() for poly in found)


def test_compositions_in_lexicographic_order() -> None:
  assert list(compositions(4, 2, 1, 3)) == [(1, 3), (2, 2), (3, 1)]
  assert list(compositions(2, 3, 1, 3)) == []


def test_rational_pool_for_bound_two() -> None:
  pools = candidate_pools([CandidateClass.RATIONAL], SearchBounds(rational=2))
  assert list(pools) == [RATIONALS]
  buckets = pools[RATIONALS]
  assert [e.value for e in buckets[1]] == [1, -1]  # type: ignore[attr-defined]
  assert {e.value for e in buckets[2]} == {  # type: ignore[attr-defined]
    Fraction(1, 2),
    Fraction(-1, 2),
    Fraction(2),
    Fraction(-2),
  }


def test_seeded_pools_are_reproducible() -> None:
  classes = [CandidateClass.RATIONAL, CandidateClass.QUADRATIC]
  bounds = SearchBounds(rational=6, quadratic_d=3)
  assert candidate_pools(classes, bounds, seed=5) == candidate_pools(classes, bounds, seed=5)


def test_enumeration_orders_points_by_total_grade() -> None:
  bounds = SearchBounds(rational=2)
  points = list(enumerate_candidates([CandidateClass.RATIONAL], bounds))
  assert values_of(points) == [
    Fraction(1),
    Fraction(-1),
    Fraction(1, 2),
    Fraction(-1, 2),
    Fraction(2),
    Fraction(-2),
  ]
  pairs = list(enumerate_candidates([CandidateClass.RATIONAL], bounds, variables=("x", "y")))
  assert len(pairs) == 36
  assert len(set(pairs)) == 36
  assert pairs[0] == PointSpec.of(RATIONALS, {"x": QElem(Fraction(1)), "y": QElem(Fraction(1))})


def test_cyclotomic_enumeration_stays_within_degree_cap() -> None:
  bounds = SearchBounds(cyclotomic_order=4)
  points = list(enumerate_candidates([CandidateClass.CYCLOTOMIC], bounds))
  # 1, -1, two cube roots, two fourth roots.
  assert len(points) == 6
  assert all(point.carrier.degree <= 4 for point in points)


def test_vanishes_at_treats_poles_as_nonzero() -> None:
  point = PointSpec.single(RATIONALS, "y", QElem(Fraction(1)))
  assert vanishes_at(parse_expression("y^2 - 1", ("y",)), point)
  assert not vanishes_at(parse_expression("1/(y - 1)", ("y",)), point)


def test_target_value_is_a_ball_around_the_log_combination() -> None:
  ball = target_value("1/2*log(2) + 1", 128)
  assert abs(float(ball) - (math.log(2) / 2 + 1)) < 1e-15


async def test_search_for_height_log_two() -> None:
  inst = decode_search(LOG2_SEARCH)
  result = await approximate_async(inst)
  assert result.examined == 6
  assert result.admissible == 6
  assert sorted(values_of([ev.point for ev in result.hits])) == [
    Fraction(-2),
    Fraction(-1, 2),
    Fraction(1, 2),
    Fraction(2),
  ]
  assert result.best in result.hits
  assert all(ev.max_deviation < inst.eps for ev in result.hits)


async def test_equations_without_rational_solutions_fail() -> None:
  inst = decode_search(SQRT2_SEARCH % "rational")
  with pytest.raises(NoCandidateSatisfiesEquations) as info:
    await approximate_async(inst)
  assert info.value.examined > 0


async def test_quadratic_candidates_find_sqrt_two() -> None:
  inst = decode_search(SQRT2_SEARCH % "rational, quadratic")
  result = await approximate_async(inst)
  q2 = QuadraticField(2)
  assert {ev.point for ev in result.hits} == {
    PointSpec.single(q2, "y", parse_element("sqrt(2)", q2)),
    PointSpec.single(q2, "y", parse_element("-sqrt(2)", q2)),
  }
  assert abs(float(result.achieved[0].numeric()) - math.log(2) / 2) < 1e-15


async def test_first_mode_stops_at_the_first_hit() -> None:
  inst = replace(
    decode_search(LOG2_SEARCH), mode=SearchMode.FIRST, bounds=SearchBounds(rational=10)
  )
  result = await approximate_async(inst)
  assert result.mode is SearchMode.FIRST
  assert len(result.hits) == 1
  assert result.examined == result.hits[0].index + 1


async def test_results_do_not_depend_on_thread_count() -> None:
  inst = replace(decode_search(LOG2_SEARCH), bounds=SearchBounds(rational=12), seed=3)
  single = encode_result(inst, await approximate_async(inst))
  many = encode_result(inst, await approximate_async(replace(inst, threads=4)))
  assert single == many


def test_approximate_runs_its_own_loop() -> None:
  result = approximate(decode_search(LOG2_SEARCH))
  assert len(result.hits) == 4


async def test_zeta_without_exclusions_reaches_zero() -> None:
  estimate = await zeta_estimate_async(height_template(), bounds=SearchBounds(rational=3))
  assert estimate.estimate is not None
  assert estimate.estimate.exact_part_vanishes()
  assert estimate.witness == PointSpec.single(RATIONALS, "y", QElem(Fraction(1)))
  assert encode_zeta(estimate)["kind"] == "upper_bound_over_enumerated_points"


async def test_zeta_with_exclusions_is_positive_and_non_increasing() -> None:
  estimate = await zeta_estimate_async(
    height_template(),
    exclusions=["y - 1", "y + 1"],
    bounds=SearchBounds(rational=5),
    seed=11,
    threads=2,
  )
  assert estimate.estimate is not None
  assert abs(float(estimate.estimate.numeric()) - math.log(2)) < 1e-15
  heights = [float(entry.height.numeric()) for entry in estimate.trace]
  assert heights == sorted(heights, reverse=True)
  assert estimate.admissible == estimate.examined - 2


async def test_scan_keeps_candidate_order() -> None:
  outcome = await scan(range(100), lambda i, x: x if x % 7 == 0 else None, threads=3, chunk_size=8)
  assert [index for index, _ in outcome.results] == list(range(0, 100, 7))
  assert outcome.examined == 100
  first = await scan(
    range(100),
    lambda i, x: x if x % 7 == 0 else None,
    threads=3,
    chunk_size=8,
    is_hit=lambda r: r >= 50,
  )
  assert first.first_hit == 56
  assert first.examined == 57
  assert first.results[-1] == (56, 56)


@pytest.mark.parametrize(
  ("doc", "error"),
  [
    ('eps: "1e-9"', PayloadError),
    ('targets: [{functions: [y], term: "x1", target: "1"}]\neps: "0"', InputError),
    ('targets: [{functions: [x], term: "x1", target: "1"}]\neps: "1"', InputError),
    ('targets: [{functions: [y], term: "x1", target: "1"}]\neps: "1"\nthreads: 0', PayloadError),
    ('targets: [{functions: [y], term: "x1", target: "1"}]\neps: "1"\nmode: fast', PayloadError),
  ],
)
def test_malformed_search_documents(doc: str, error: type[Exception]) -> None:
  with pytest.raises(error):
    decode_search(doc)


def test_search_bounds_validate() -> None:
  with pytest.raises(InputError):
    SearchBounds(custom_degree=4)
  with pytest.raises(InputError):
    SearchBounds(rational=0)


@pytest.mark.parametrize("target", ["log(2)", "log(3)", "log(6)", "1/2*log(2)", "log(5) - log(2)"])
async def test_every_hit_is_confirmed_by_direct_evaluation(target: str) -> None:
  doc = (
    "targets:\n"
    f'  - {{functions: [y], term: "-1*min(x1,0)", target: "{target}"}}\n'
    'eps: "1e-9"\n'
    "classes: [rational, quadratic]\n"
    "bounds: {rational: 8, quadratic_d: 3, quadratic_height: 2}\n"
  )
  inst = decode_search(doc)
  result = await approximate_async(inst)
  for ev in result.hits:
    for aim, claimed in zip(inst.targets, ev.heights, strict=True):
      value = height_at_point(aim.template, ev.point, inst.policy)
      assert value == claimed
      assert deviation(value, aim.target) < inst.eps, ev.point.render()
      assert abs(float(value.numeric()) - float(aim.target)) < 1e-9


def test_filters_agree_with_direct_substitution() -> None:
  y = sympy.Symbol("y")
  equation = y**2 - y - 2
  inequation = y + 1
  where = PointFilter.compile(("y",), ["y^2 - y - 2"], "y + 1", ["y - 5"])
  admitted: list[Fraction] = []
  for point in enumerate_candidates([CandidateClass.RATIONAL], SearchBounds(rational=9)):
    (elem,) = point.values()
    assert isinstance(elem, QElem)
    value = sympy.Rational(elem.value.numerator, elem.value.denominator)
    expected = (
      equation.subs(y, value) == 0 and inequation.subs(y, value) != 0 and value - 5 != 0
    )
    assert where.admits(point) is expected, elem.value
    if expected:
      admitted.append(elem.value)
  assert admitted == [Fraction(2)]


async def test_search_hits_satisfy_the_equations() -> None:
  inst = decode_search(SQRT2_SEARCH % "rational, quadratic")
  result = await approximate_async(inst)
  equation = parse_expression("y^2 - 2", ("y",))
  assert result.hits
  for ev in result.hits:
    assert vanishes_at(equation, ev.point)


async def test_zeta_never_increases_as_the_bound_grows() -> None:
  template = height_difference_template("y", "1 - y")
  previous = None
  for bound in range(2, 9):
    estimate = await zeta_estimate_async(
      template, exclusions=["y", "y - 1"], bounds=SearchBounds(rational=bound)
    )
    current = estimate.estimate
    assert current is not None
    if previous is not None:
      assert not (current.numeric() - previous.numeric()).certainly_positive(), bound
    previous = current
