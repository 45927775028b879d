"""Normalized GVF functionals on a sampled atom set, posed as exact linear programs.

The unknowns are nonnegative atom weights w. Rows ask that every generator integrates to zero
(product formula), that each divisor hits its target within eps, and that the height of 2 hits
normalization·log 2 within eps. log p and archimedean entries enter as rationals from a shared
`LogTable`. The shift this causes in a row is at most Σ w_j·err_j plus the target's error. Before
solving it is bounded for weights in [0, 1], the range of the standard weights; after solving it
is recomputed from the weights found. eps must exceed both, and the larger is reported.
"""

from __future__ import annotations

from collections.abc import Sequence
from fractions import Fraction

from libsh import get_logger

from gvf_toolkit.exceptions import InputError
from gvf_toolkit.gvf import LogCombination
from gvf_toolkit.tropical import Add, Min, Scale, TropTerm, Var, Zero, evaluate, height_term, render

from .exceptions import ToleranceTooTight, Unbounded
from .logs import Approximation, LogTable
from .simplex import LpStatus, solve_lp
from .types import (
  AtomClass,
  Constraint,
  FarkasCertificate,
  FeasibilityInstance,
  FeasibilityStatus,
  FeasibilityVerdict,
  ValuationAtom,
)

_logger = get_logger(__name__)


def lipschitz(term: TropTerm) -> Fraction:
  """Lipschitz constant of t in the max norm."""
  match term:
    case Var():
      return Fraction(1)
    case Zero():
      return Fraction(0)
    case Scale(coeff, inner):
      return abs(coeff) * lipschitz(inner)
    case Add(left, right):
      return lipschitz(left) + lipschitz(right)
    case Min(args):
      return max(lipschitz(arg) for arg in args)


def _scale(atom: ValuationAtom, table: LogTable) -> Approximation:
  if atom.kind is AtomClass.FINITE:
    assert atom.prime is not None
    return table.log(atom.prime)
  return Approximation(Fraction(1))


def coefficient(atom: ValuationAtom, term: TropTerm, table: LogTable) -> Approximation:
  """λ·t(u) for the atom, with λ = log p at finite atoms and 1 otherwise."""
  value = evaluate(term, atom.values)
  scale = _scale(atom, table)
  error = abs(value) * scale.error
  if atom.error:
    error += (abs(scale.value) + scale.error) * lipschitz(term) * atom.error
  return Approximation(scale.value * value, error)


def _coefficients(
  term: TropTerm, atoms: Sequence[ValuationAtom], table: LogTable
) -> list[Approximation]:
  return [coefficient(atom, term, table) for atom in atoms]


def _target(value: Fraction, logs: LogCombination, table: LogTable) -> Approximation:
  return Approximation(value) + table.combination(logs)


type _Row = tuple[str, list[Approximation], Approximation, bool]


def _rows(inst: FeasibilityInstance) -> list[_Row]:
  table = LogTable(inst.log_bits)
  two = inst.two_index()
  rows: list[_Row] = []
  for j, name in enumerate(inst.generators):
    coeffs = _coefficients(Var(j + 1), inst.atoms, table)
    rows.append((f"product formula on {name}", coeffs, Approximation(Fraction(0)), True))
  for target in inst.divisors:
    coeffs = _coefficients(target.term, inst.atoms, table)
    wanted = _target(target.value, target.logs, table)
    rows.append((f"divisor {render(target.term)}", coeffs, wanted, False))
  coeffs = _coefficients(height_term(two + 1), inst.atoms, table)
  norm = _target(Fraction(0), LogCombination.of({2: inst.normalization}), table)
  rows.append(("normalization h(2)", coeffs, norm, False))
  return rows


def _shift(rows: Sequence[_Row], weights: Sequence[Fraction] | None) -> Fraction:
  """Largest Σ w_j·err_j + err_target over the rows; None stands for weights of 1."""
  worst = Fraction(0)
  for _, coeffs, target, _ in rows:
    if weights is None:
      shift = sum((c.error for c in coeffs), Fraction(0))
    else:
      shift = sum((w * c.error for w, c in zip(weights, coeffs, strict=True)), Fraction(0))
    worst = max(worst, shift + target.error)
  return worst


def _require_tolerance(inst: FeasibilityInstance, bound: Fraction) -> None:
  if bound > 0 and inst.eps <= bound:
    raise ToleranceTooTight(inst.eps, bound)


def build_constraints(inst: FeasibilityInstance) -> tuple[tuple[Constraint, ...], Fraction]:
  """The rationalized constraint rows and the perturbation bound for weights in [0, 1].

  Raises ToleranceTooTight when eps does not exceed a nonzero bound, and MissingGenerator2 when
  the constant 2 is not a generator.
  """
  rows = _rows(inst)
  bound = _shift(rows, None)
  _require_tolerance(inst, bound)

  constraints: list[Constraint] = []
  for label, coeffs, target, is_product in rows:
    slack = bound if is_product else inst.eps
    values = tuple(c.value for c in coeffs)
    constraints.append(Constraint(label, values, target.value - slack, target.value + slack))
  return tuple(constraints), bound


def _standard_form(
  constraints: Sequence[Constraint], n: int
) -> tuple[list[list[Fraction]], list[Fraction]]:
  """Rows over (w, slacks): equalities stay, bands get one slack per side."""
  banded = [c for c in constraints if c.lower != c.upper]
  width = n + 2 * len(banded)
  matrix: list[list[Fraction]] = []
  rhs: list[Fraction] = []
  k = n
  for c in constraints:
    if c.lower == c.upper:
      matrix.append([*c.coeffs, *([Fraction(0)] * (width - n))])
      rhs.append(c.lower)
      continue
    upper = [*c.coeffs, *([Fraction(0)] * (width - n))]
    upper[k] = Fraction(1)
    lower = [*c.coeffs, *([Fraction(0)] * (width - n))]
    lower[k + 1] = Fraction(-1)
    matrix += [upper, lower]
    rhs += [c.upper, c.lower]
    k += 2
  return matrix, rhs


def _inequalities(
  constraints: Sequence[Constraint],
) -> list[tuple[tuple[Fraction, ...], Fraction]]:
  """G w ≤ h, two rows per constraint in (upper, lower) order."""
  rows: list[tuple[tuple[Fraction, ...], Fraction]] = []
  for c in constraints:
    rows.append((c.coeffs, c.upper))
    rows.append((tuple(-v for v in c.coeffs), -c.lower))
  return rows


def farkas_certificate(constraints: Sequence[Constraint], n: int) -> FarkasCertificate:
  """y ≥ 0 with yᵀG ≥ 0 and yᵀh = -1, which exists exactly when the system is infeasible."""
  rows = _inequalities(constraints)
  k = len(rows)
  matrix: list[list[Fraction]] = []
  for j in range(n):
    surplus = [Fraction(0)] * n
    surplus[j] = Fraction(-1)
    matrix.append([g[j] for g, _ in rows] + surplus)
  matrix.append([h for _, h in rows] + [Fraction(0)] * n)
  rhs = [Fraction(0)] * n + [Fraction(-1)]
  solution = solve_lp(matrix, rhs)
  if solution.status is not LpStatus.OPTIMAL:
    raise RuntimeError("no Farkas certificate for a system reported infeasible")
  y = solution.x[:k]
  return FarkasCertificate(upper=y[0::2], lower=y[1::2])


def check_certificate(
  constraints: Sequence[Constraint], certificate: FarkasCertificate, n: int
) -> Fraction:
  """The lower bound max_k (G w - h)_k ≥ -yᵀh / Σy that holds for every w ≥ 0."""
  if len(certificate.upper) != len(constraints) or len(certificate.lower) != len(constraints):
    raise InputError("certificate length does not match the constraint count")
  y = [v for pair in zip(certificate.upper, certificate.lower, strict=True) for v in pair]
  if any(v < 0 for v in y):
    raise InputError("certificate multipliers must be nonnegative")
  rows = _inequalities(constraints)
  for j in range(n):
    if sum((yk * g[j] for yk, (g, _) in zip(y, rows, strict=True)), Fraction(0)) < 0:
      raise InputError(f"certificate gives weight {j + 1} a negative coefficient")
  rhs = sum((yk * h for yk, (_, h) in zip(y, rows, strict=True)), Fraction(0))
  if rhs >= 0:
    raise InputError("certificate right-hand side is not negative")
  return -rhs / sum(y, Fraction(0))


def realized_bound(inst: FeasibilityInstance, weights: Sequence[Fraction]) -> Fraction:
  """The perturbation bound at the given weights, which the LP leaves unbounded above."""
  if len(weights) != len(inst.atoms):
    raise InputError(f"expected {len(inst.atoms)} weights, got {len(weights)}")
  if any(w < 0 for w in weights):
    raise InputError("weights must be nonnegative")
  return _shift(_rows(inst), weights)


def verify_certificate(inst: FeasibilityInstance, certificate: FarkasCertificate) -> Fraction:
  """Rebuild the constraints from the instance and check the certificate against them.

  Returns a strictly positive amount by which every weight vector violates some constraint.
  """
  constraints, _ = build_constraints(inst)
  return check_certificate(constraints, certificate, len(inst.atoms))


def _solve(inst: FeasibilityInstance, objective: TropTerm | None) -> FeasibilityVerdict:
  constraints, bound = build_constraints(inst)
  n = len(inst.atoms)
  matrix, rhs = _standard_form(constraints, n)
  cost: list[Fraction] | None = None
  if objective is not None:
    table = LogTable(inst.log_bits)
    width = len(matrix[0]) if matrix else n
    cost = [coefficient(atom, objective, table).value for atom in inst.atoms]
    cost += [Fraction(0)] * (width - n)
  solution = solve_lp(matrix, rhs, cost)
  match solution.status:
    case LpStatus.INFEASIBLE:
      _logger.debug("feasibility system infeasible", atoms=n, rows=len(constraints))
      return FeasibilityVerdict(
        FeasibilityStatus.INFEASIBLE,
        constraints,
        bound,
        certificate=farkas_certificate(constraints, n),
        pivots=solution.pivots,
      )
    case LpStatus.UNBOUNDED:
      raise Unbounded(
        "objective is unbounded below over the sampled atoms; add atoms or constraints that pin "
        "the free directions"
      )
    case LpStatus.OPTIMAL:
      weights = solution.x[:n]
      realized = realized_bound(inst, weights)
      _require_tolerance(inst, realized)
      bound = max(bound, realized)
      value = None
      if objective is not None:
        assert cost is not None
        value = sum((c * w for c, w in zip(cost, weights, strict=False)), Fraction(0))
      _logger.debug("feasibility system solved", atoms=n, rows=len(constraints), objective=value)
      return FeasibilityVerdict(
        FeasibilityStatus.FEASIBLE,
        constraints,
        bound,
        weights=weights,
        objective=value,
        pivots=solution.pivots,
      )


def solve_feasible(inst: FeasibilityInstance) -> FeasibilityVerdict:
  """Is there a normalized functional on the sampled atoms meeting every divisor target?"""
  return _solve(inst, None)


def minimize_functional(
  inst: FeasibilityInstance, objective: TropTerm | None = None
) -> FeasibilityVerdict:
  """Minimize the functional on t_0(div(ā)) over the same feasible region.

  The optimum is exact for the rationalized data and is an upper estimate of the infimum over all
  normalized functionals: enlarging the atom set can only lower it. An empty region yields the
  infeasible verdict with its certificate.
  """
  chosen = objective if objective is not None else inst.objective
  if chosen is None:
    raise InputError("minimize needs an objective divisor term")
  return _solve(inst, chosen)
