"""Exact two-phase simplex over Fractions: minimize c·x subject to A x = b, x ≥ 0.

Dense tableau, Bland's rule for both the entering and the leaving variable, so the method
terminates without cycling. Phase 1 minimizes the sum of one artificial per row; artificials still
basic at zero are pivoted out afterwards, and rows where that is impossible are redundant and
dropped.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from enum import StrEnum
from fractions import Fraction

from libsh import get_logger

_logger = get_logger(__name__)

Row = list[Fraction]


class LpStatus(StrEnum):
  OPTIMAL = "optimal"
  INFEASIBLE = "infeasible"
  UNBOUNDED = "unbounded"


@dataclass(frozen=True, slots=True)
class LpSolution:
  status: LpStatus
  x: tuple[Fraction, ...] = ()
  value: Fraction | None = None
  pivots: int = 0


class _Tableau:
  def __init__(self, rows: list[Row], basis: list[int]) -> None:
    # each row holds the coefficients followed by the right-hand side
    self.rows = rows
    self.basis = basis
    self.pivots = 0

  def pivot(self, r: int, c: int) -> None:
    inv = 1 / self.rows[r][c]
    pivot_row = [value * inv for value in self.rows[r]]
    self.rows[r] = pivot_row
    for i, row in enumerate(self.rows):
      factor = row[c]
      if i != r and factor != 0:
        self.rows[i] = [a - factor * b for a, b in zip(row, pivot_row, strict=True)]
    self.basis[r] = c
    self.pivots += 1

  def reduced_cost(self, cost: Sequence[Fraction], j: int) -> Fraction:
    return cost[j] - sum(
      (cost[b] * row[j] for b, row in zip(self.basis, self.rows, strict=True)), Fraction(0)
    )

  def objective(self, cost: Sequence[Fraction]) -> Fraction:
    pairs = zip(self.basis, self.rows, strict=True)
    return sum((cost[b] * row[-1] for b, row in pairs), Fraction(0))

  def solution(self, n: int) -> tuple[Fraction, ...]:
    x = [Fraction(0)] * n
    for b, row in zip(self.basis, self.rows, strict=True):
      if b < n:
        x[b] = row[-1]
    return tuple(x)

  def optimize(self, cost: Sequence[Fraction], allowed: int) -> bool:
    """Run Bland steps over columns < `allowed`; False when the objective is unbounded below."""
    while True:
      basic = set(self.basis)
      entering = next(
        (j for j in range(allowed) if j not in basic and self.reduced_cost(cost, j) < 0), None
      )
      if entering is None:
        return True
      candidates = [
        (row[-1] / row[entering], self.basis[i], i)
        for i, row in enumerate(self.rows)
        if row[entering] > 0
      ]
      if not candidates:
        return False
      _, _, leaving = min(candidates)
      self.pivot(leaving, entering)


def _standard_rows(matrix: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> list[Row]:
  rows: list[Row] = []
  for coeffs, b in zip(matrix, rhs, strict=True):
    row = [Fraction(v) for v in coeffs] + [Fraction(b)]
    if b < 0:
      row = [-v for v in row]
    rows.append(row)
  return rows


def solve_lp(
  matrix: Sequence[Sequence[Fraction]],
  rhs: Sequence[Fraction],
  cost: Sequence[Fraction] | None = None,
) -> LpSolution:
  """Minimize cost·x over {x ≥ 0 : matrix·x = rhs}; a missing cost asks for feasibility only."""
  m = len(matrix)
  n = len(matrix[0]) if m else len(cost or ())
  objective = [Fraction(c) for c in cost] if cost is not None else [Fraction(0)] * n
  if m == 0:
    if any(c < 0 for c in objective):
      return LpSolution(LpStatus.UNBOUNDED)
    return LpSolution(LpStatus.OPTIMAL, tuple([Fraction(0)] * n), Fraction(0))

  # phase 1: one artificial per row, basis = artificials
  base = _standard_rows(matrix, rhs)
  rows = [
    row[:-1] + [Fraction(int(i == k)) for k in range(m)] + [row[-1]] for i, row in enumerate(base)
  ]
  tableau = _Tableau(rows, [n + i for i in range(m)])
  phase1 = [Fraction(0)] * n + [Fraction(1)] * m
  tableau.optimize(phase1, n + m)
  if tableau.objective(phase1) > 0:
    _logger.debug("lp infeasible", rows=m, columns=n, pivots=tableau.pivots)
    return LpSolution(LpStatus.INFEASIBLE, pivots=tableau.pivots)

  # drive artificials out of the basis; rows with no original entry are redundant
  r = 0
  while r < len(tableau.rows):
    if tableau.basis[r] >= n:
      column = next((j for j in range(n) if tableau.rows[r][j] != 0), None)
      if column is None:
        del tableau.rows[r]
        del tableau.basis[r]
        continue
      tableau.pivot(r, column)
    r += 1
  tableau.rows = [row[:n] + [row[-1]] for row in tableau.rows]

  # phase 2
  if not tableau.optimize(objective, n):
    _logger.debug("lp unbounded", rows=m, columns=n, pivots=tableau.pivots)
    return LpSolution(LpStatus.UNBOUNDED, pivots=tableau.pivots)
  x = tableau.solution(n)
  value = sum((c * v for c, v in zip(objective, x, strict=True)), Fraction(0))
  _logger.debug("lp solved", rows=m, columns=n, pivots=tableau.pivots)
  return LpSolution(LpStatus.OPTIMAL, x, value, tableau.pivots)
