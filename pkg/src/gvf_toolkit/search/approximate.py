"""Search for points whose height tuple approximates prescribed targets."""

from __future__ import annotations

import asyncio
import time
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

import sympy
from libsh import get_logger

from gvf_toolkit.algebra import BigFloat
from gvf_toolkit.divisors import PointOnSupport, PointSpec, PointTemplate, height_at_point
from gvf_toolkit.gvf import GvfValue
from gvf_toolkit.places import (
  DEFAULT_POLICY,
  PrecisionPolicy,
  UnsupportedRamification,
  ZeroElement,
  evaluate_expression,
  parse_expression,
)

from .candidates import enumerate_candidates
from .exceptions import NoCandidateSatisfiesEquations
from .scan import scan
from .types import Evaluation, SearchInstance, SearchMode, SearchResult

_logger = get_logger(__name__)


@dataclass(frozen=True, slots=True)
class PointFilter:
  """Polynomial conditions on a point: every `equation` vanishes, the `inequation` does not."""

  equations: tuple[sympy.Expr, ...] = ()
  inequation: sympy.Expr | None = None
  exclusions: tuple[sympy.Expr, ...] = ()

  @classmethod
  def compile(
    cls,
    variables: Sequence[str],
    equations: Sequence[str] = (),
    inequation: str | None = None,
    exclusions: Sequence[str] = (),
  ) -> PointFilter:
    return cls(
      tuple(parse_expression(text, variables) for text in equations),
      parse_expression(inequation, variables) if inequation is not None else None,
      tuple(parse_expression(text, variables) for text in exclusions),
    )

  def admits(self, point: PointSpec) -> bool:
    if not all(vanishes_at(expr, point) for expr in self.equations):
      return False
    if self.inequation is not None and vanishes_at(self.inequation, point):
      return False
    return not any(vanishes_at(expr, point) for expr in self.exclusions)


def vanishes_at(expr: sympy.Expr, point: PointSpec) -> bool:
  """True when `expr` evaluates to 0 at the point; a pole counts as nonzero."""
  try:
    return evaluate_expression(expr, point.carrier, point.bindings()).is_zero()
  except ZeroElement:
    return False


def deviation(height: GvfValue, target: BigFloat) -> Fraction:
  """Exact upper bound on |height - target| over both error balls."""
  lo, hi = (height.numeric() - target).bounds()
  return max(abs(lo), abs(hi))


def heights_at(
  templates: Sequence[PointTemplate], point: PointSpec, policy: PrecisionPolicy = DEFAULT_POLICY
) -> tuple[GvfValue, ...] | None:
  """Every template's height at the point, or None when the point meets a template support."""
  try:
    return tuple(height_at_point(template, point, policy) for template in templates)
  except PointOnSupport:
    return None
  except UnsupportedRamification as exc:
    _logger.debug("skipping candidate", point=point.render(), reason=str(exc))
    return None


def evaluate_candidate(
  inst: SearchInstance, where: PointFilter, index: int, point: PointSpec
) -> Evaluation | None:
  if not where.admits(point):
    return None
  heights = heights_at([t.template for t in inst.targets], point, inst.policy)
  if heights is None:
    return None
  deviations = tuple(
    deviation(h, t.target) for h, t in zip(heights, inst.targets, strict=True)
  )
  return Evaluation(index, point, heights, deviations)


async def approximate_async(inst: SearchInstance) -> SearchResult:
  """Scan the enumerated candidates and keep the best point and every ε-hit.

  The best point minimizes the maximum deviation, ties going to the earliest candidate. Raises
  NoCandidateSatisfiesEquations when no candidate passes the filters.
  """
  started = time.perf_counter()
  where = PointFilter.compile(inst.variables, inst.equations, inst.inequation)
  stream = enumerate_candidates(inst.classes, inst.bounds, inst.seed, inst.variables)
  outcome = await scan(
    stream,
    lambda index, point: evaluate_candidate(inst, where, index, point),
    threads=inst.threads,
    is_hit=(lambda ev: ev.is_hit(inst.eps)) if inst.mode is SearchMode.FIRST else None,
  )
  evaluations = [ev for _, ev in outcome.results]
  if not evaluations:
    raise NoCandidateSatisfiesEquations(outcome.examined)
  best = min(evaluations, key=lambda ev: (ev.max_deviation, ev.index))
  hits = tuple(ev for ev in evaluations if ev.is_hit(inst.eps))
  elapsed = time.perf_counter() - started
  _logger.debug(
    "search finished",
    examined=outcome.examined,
    admissible=len(evaluations),
    hits=len(hits),
    best=best.point.render(),
  )
  return SearchResult(best, hits, outcome.examined, len(evaluations), elapsed, inst.mode)


def approximate(inst: SearchInstance) -> SearchResult:
  return asyncio.run(approximate_async(inst))
