from __future__ import annotations

import math
import random
from fractions import Fraction

import pytest

from gvf_toolkit.exceptions import InputError, PayloadError
from gvf_toolkit.feasibility import (
  AtomClass,
  FeasibilityStatus,
  LogTable,
  LpStatus,
  MissingGenerator2,
  ToleranceTooTight,
  Unbounded,
  build_constraints,
  check_certificate,
  decode_instance,
  encode_verdict,
  lipschitz,
  log_interval,
  minimize_functional,
  parse_target,
  realized_bound,
  solve_feasible,
  solve_lp,
  standard_weights,
  verify_certificate,
)
from gvf_toolkit.algebra import render_rational
from gvf_toolkit.gvf import LogCombination
from gvf_toolkit.tropical import parse

POINT_INSTANCE = """
version: 1
generators: ["2", "y"]
divisors:
  - {term: "-1*min(x2,0)", target: "%s"}
points:
  - {field: "Q", point: {y: "3"}}
eps: "1e-9"
"""

UNBOUNDED_INSTANCE = """
generators: ["2", "y"]
atoms:
  - {values: ["0", "1"], kind: free}
  - {values: ["0", "-1"], kind: free}
points:
  - {field: "Q", point: {y: "3"}}
eps: "1e-9"
objective: "min(x2, -1*x2)"
"""


def test_solve_lp_finds_exact_optimum() -> None:
  one = Fraction(1)
  solution = solve_lp([[one, Fraction(2)]], [Fraction(4)], [one, one])
  assert solution.status is LpStatus.OPTIMAL
  assert solution.x == (Fraction(0), Fraction(2))
  assert solution.value == 2


def test_solve_lp_reports_infeasible_and_unbounded() -> None:
  one = Fraction(1)
  infeasible = solve_lp([[one, one]], [Fraction(-1)])
  assert infeasible.status is LpStatus.INFEASIBLE
  unbounded = solve_lp([[one, -one]], [Fraction(0)], [-one, Fraction(0)])
  assert unbounded.status is LpStatus.UNBOUNDED


def test_parse_target_splits_rational_and_log_parts() -> None:
  value, logs = parse_target("1/2*log(2) - log(3) + 1")
  assert value == 1
  assert logs == LogCombination.of({2: Fraction(1, 2), 3: Fraction(-1)})
  assert parse_target("log(12)") == (Fraction(0), LogCombination.of({2: 2, 3: 1}))
  assert parse_target("-3/4") == (Fraction(-3, 4), LogCombination())


@pytest.mark.parametrize("text", ["log(-2)", "y + 1", "log(2)^2", "sqrt(2)"])
def test_parse_target_rejects_non_log_combinations(text: str) -> None:
  with pytest.raises(PayloadError):
    parse_target(text)


def test_log_interval_brackets_log_p() -> None:
  lo, hi = log_interval(2, 64)
  assert lo < hi
  assert abs(float(lo) - math.log(2)) < 1e-15
  assert hi - lo <= Fraction(2, 2**64)
  approx = LogTable(64).log(3)
  assert abs(float(approx.value) - math.log(3)) < 1e-15
  assert approx.error <= Fraction(1, 2**64)


def test_lipschitz_constants() -> None:
  assert lipschitz(parse("min(x1, 2*x2) + -1*x3")) == 3
  assert lipschitz(parse("0")) == 0
  assert lipschitz(parse("-1*min(x1, 0)")) == 1


def test_points_expand_into_weighted_atoms() -> None:
  inst = decode_instance(POINT_INSTANCE % "log(3)")
  assert [atom.kind for atom in inst.atoms] == [
    AtomClass.FINITE,
    AtomClass.FINITE,
    AtomClass.ARCHIMEDEAN,
  ]
  assert [atom.prime for atom in inst.atoms] == [2, 3, None]
  assert inst.atoms[0].values == (Fraction(1), Fraction(0))
  assert standard_weights(inst.atoms) == (Fraction(1),) * 3


def test_standard_weights_satisfy_every_constraint() -> None:
  inst = decode_instance(POINT_INSTANCE % "log(3)")
  constraints, bound = build_constraints(inst)
  assert 0 < bound < inst.eps
  weights = standard_weights(inst.atoms)
  assert all(c.holds(weights) for c in constraints)


def test_feasible_instance() -> None:
  inst = decode_instance(POINT_INSTANCE % "log(3)")
  verdict = solve_feasible(inst)
  assert verdict.status is FeasibilityStatus.FEASIBLE
  assert all(c.holds(verdict.weights) for c in verdict.constraints)
  payload = encode_verdict(inst, verdict)
  assert payload["status"] == "feasible"
  assert "certificate" not in payload


def test_infeasible_instance_has_checkable_certificate() -> None:
  inst = decode_instance(POINT_INSTANCE % "log(3) + 1")
  verdict = solve_feasible(inst)
  assert not verdict.feasible
  assert verdict.certificate is not None
  assert verify_certificate(inst, verdict.certificate) > 0
  payload = encode_verdict(inst, verdict)
  assert payload["status"] == "infeasible"
  assert payload["certificate"]
  assert "violation_lower_bound" in payload


def test_minimize_height_of_y() -> None:
  inst = decode_instance(POINT_INSTANCE % "log(3)")
  verdict = minimize_functional(inst, parse("-1*min(x2, 0)"))
  assert verdict.feasible
  assert verdict.objective is not None
  assert abs(float(verdict.objective) - math.log(3)) < 1e-6
  assert "optimum" in verdict.describe()


def test_minimize_needs_an_objective() -> None:
  inst = decode_instance(POINT_INSTANCE % "log(3)")
  with pytest.raises(InputError, match="objective"):
    minimize_functional(inst)


def test_minimize_reports_unbounded_objectives() -> None:
  inst = decode_instance(UNBOUNDED_INSTANCE)
  assert inst.objective == parse("min(x2, -1*x2)")
  with pytest.raises(Unbounded):
    minimize_functional(inst)


def test_normalization_needs_the_generator_two() -> None:
  doc = (POINT_INSTANCE % "log(3)").replace('["2", "y"]', '["3", "y"]')
  inst = decode_instance(doc)
  with pytest.raises(MissingGenerator2):
    solve_feasible(inst)


def test_tolerance_must_exceed_the_perturbation_bound() -> None:
  doc = (POINT_INSTANCE % "log(3)").replace('eps: "1e-9"', 'eps: "0"')
  with pytest.raises(ToleranceTooTight) as info:
    solve_feasible(decode_instance(doc))
  assert info.value.bound > 0


@pytest.mark.parametrize(
  "doc",
  [
    'generators: ["2"]',
    'generators: []\neps: "1"',
    'generators: ["2"]\neps: "1"\ncolour: red',
    'generators: ["2"]\neps: "1"\nlog_bits: 8',
    "generators: [2\n",
  ],
)
def test_malformed_instances_are_payload_errors(doc: str) -> None:
  with pytest.raises(PayloadError):
    decode_instance(doc)


def test_instances_need_an_archimedean_atom() -> None:
  doc = 'generators: ["2"]\neps: "1/10"\natoms:\n  - {values: ["1"], kind: finite, prime: 2}\n'
  with pytest.raises(InputError, match="archimedean"):
    decode_instance(doc)
  doc = 'generators: ["2"]\neps: "1/10"\natoms:\n  - {values: ["1"], kind: finite, prime: 4}\n'
  with pytest.raises(InputError, match="prime"):
    decode_instance(doc)


HEAVY_INSTANCE = """
generators: ["2", "y"]
divisors:
  - {term: "-1*min(x2,0)", target: "1"}
atoms:
  - {values: ["1", "0"], kind: finite, prime: 2}
  - {values: ["-0.693147", "0"], kind: archimedean, error: "1e-6"}
  - {values: ["0", "-1/1000"], kind: archimedean, error: "1e-6"}
  - {values: ["0", "1/1000"], kind: archimedean, error: "1e-6"}
eps: "%s"
"""


def test_tolerance_must_cover_the_weights_the_solver_picks() -> None:
  # Hitting the target forces weight 1000 on the atoms with v(y) = ±1/1000, so their 1e-6 entry
  # errors add up to 2e-3 even though the bound for weights in [0, 1] is 3e-6.
  inst = decode_instance(HEAVY_INSTANCE % "1e-4")
  _, bound = build_constraints(inst)
  assert bound < inst.eps
  with pytest.raises(ToleranceTooTight) as info:
    solve_feasible(inst)
  assert info.value.bound > Fraction(1, 1000)
  loose = decode_instance(HEAVY_INSTANCE % "1e-2")
  verdict = solve_feasible(loose)
  assert verdict.feasible
  assert verdict.perturbation_bound == realized_bound(loose, verdict.weights)
  assert verdict.perturbation_bound > Fraction(1, 1000)


def test_realized_bound_stays_below_the_unit_weight_bound() -> None:
  inst = decode_instance(POINT_INSTANCE % "log(3)")
  _, bound = build_constraints(inst)
  assert realized_bound(inst, standard_weights(inst.atoms)) <= bound
  with pytest.raises(InputError):
    realized_bound(inst, (Fraction(1),))


def random_height(rng: random.Random) -> Fraction:
  while True:
    y = Fraction(rng.choice([-1, 1]) * rng.randint(2, 60), rng.randint(1, 60))
    if abs(y) != 1:
      return y


def point_instance(
  ys: list[Fraction], divisors: list[dict[str, str]], eps: str = "1e-6"
) -> dict[str, object]:
  return {
    "generators": ["2", "y"],
    "divisors": divisors,
    "points": [{"field": "Q", "point": {"y": render_rational(y)}} for y in ys],
    "eps": eps,
  }


def test_principal_divisors_are_forced_to_zero(rng: random.Random) -> None:
  for _ in range(50):
    ys = [random_height(rng) for _ in range(rng.randint(1, 3))]
    target = Fraction(rng.choice([-1, 1]) * rng.randint(1, 50), rng.randint(1, 50))
    divisors = [{"term": "x2", "target": render_rational(target)}]
    forced = decode_instance(point_instance(ys, divisors))
    verdict = solve_feasible(forced)
    assert not verdict.feasible, (ys, target)
    assert verdict.certificate is not None
    assert verify_certificate(forced, verdict.certificate) > 0
    free = decode_instance(point_instance(ys, [{"term": "x2", "target": "0"}]))
    assert solve_feasible(free).feasible, ys


def test_every_infeasible_certificate_is_checkable(rng: random.Random) -> None:
  seen = 0
  for _ in range(40):
    y = random_height(rng)
    height = max(abs(y.numerator), y.denominator)
    shift = Fraction(rng.randint(-3, 3), rng.randint(1, 4))
    divisors = [{"term": "-1*min(x2,0)", "target": f"log({height}) + {render_rational(shift)}"}]
    inst = decode_instance(point_instance([y], divisors))
    verdict = solve_feasible(inst)
    if verdict.feasible:
      continue
    seen += 1
    assert verdict.certificate is not None
    constraints, _ = build_constraints(inst)
    margin = check_certificate(constraints, verdict.certificate, len(inst.atoms))
    assert margin > 0
    assert margin == verify_certificate(inst, verdict.certificate)
  assert seen > 0


def test_adding_atoms_keeps_feasible_systems_feasible(rng: random.Random) -> None:
  for _ in range(20):
    ys = [random_height(rng) for _ in range(4)]
    first = ys[0]
    height = max(abs(first.numerator), first.denominator)
    divisors = [{"term": "-1*min(x2,0)", "target": f"log({height})"}]
    for k in range(1, len(ys) + 1):
      verdict = solve_feasible(decode_instance(point_instance(ys[:k], divisors)))
      assert verdict.feasible, (ys[:k], height)


def test_finer_log_tables_never_flip_a_verdict(rng: random.Random) -> None:
  checked = 0
  for _ in range(30):
    y = random_height(rng)
    height = max(abs(y.numerator), y.denominator)
    target = rng.choice([f"log({height})", f"log({height}) + 1/2", "log(2)", "0"])
    doc = point_instance([y, random_height(rng)], [{"term": "-1*min(x2,0)", "target": target}])
    coarse = decode_instance(doc)
    _, bound = build_constraints(coarse)
    if coarse.eps <= 2 * bound:
      continue
    fine = decode_instance(doc, log_bits=512)
    assert fine.log_bits == 512
    assert solve_feasible(fine).status is solve_feasible(coarse).status, (y, target)
    checked += 1
  assert checked == 30
