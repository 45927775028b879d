"""Running-minimum estimate of the essential infimum of a height over enumerated points."""

from __future__ import annotations

import asyncio
from collections.abc import Iterable, Sequence

from libsh import get_logger

from gvf_toolkit.divisors import PointSpec, PointTemplate
from gvf_toolkit.gvf import GvfValue
from gvf_toolkit.places import DEFAULT_POLICY, PrecisionPolicy

from .approximate import PointFilter, heights_at
from .candidates import enumerate_candidates
from .scan import scan
from .types import CandidateClass, SearchBounds, TraceEntry, ZetaEstimate

_logger = get_logger(__name__)


def certainly_below(candidate: GvfValue, current: GvfValue) -> bool:
  return (candidate.numeric() - current.numeric()).certainly_negative()


def running_minimum(
  evaluated: Iterable[tuple[int, tuple[PointSpec, GvfValue]]],
) -> list[TraceEntry]:
  """Entries where the height drops strictly below every earlier one, in candidate order."""
  trace: list[TraceEntry] = []
  for index, (point, height) in evaluated:
    if not trace or certainly_below(height, trace[-1].height):
      trace.append(TraceEntry(index, point, height))
  return trace


async def zeta_estimate_async(
  template: PointTemplate,
  exclusions: Sequence[str] = (),
  classes: Iterable[CandidateClass] = (CandidateClass.RATIONAL,),
  bounds: SearchBounds = SearchBounds(),
  *,
  seed: int | None = None,
  threads: int = 1,
  policy: PrecisionPolicy = DEFAULT_POLICY,
) -> ZetaEstimate:
  """Minimum of h over the enumerated points off the exclusions and the template support.

  A point is excluded when any exclusion polynomial vanishes there. The estimate bounds the infimum
  over the enumerated family from above; it says nothing about points beyond the bounds.
  """
  where = PointFilter.compile(template.variables, exclusions=exclusions)

  def evaluate(_: int, point: PointSpec) -> tuple[PointSpec, GvfValue] | None:
    if not where.admits(point):
      return None
    heights = heights_at((template,), point, policy)
    return None if heights is None else (point, heights[0])

  stream = enumerate_candidates(classes, bounds, seed, template.variables)
  outcome = await scan(stream, evaluate, threads=threads)
  trace = running_minimum(outcome.results)
  _logger.debug(
    "zeta estimate",
    examined=outcome.examined,
    admissible=len(outcome.results),
    steps=len(trace),
  )
  return ZetaEstimate(
    template, tuple(exclusions), tuple(trace), outcome.examined, len(outcome.results)
  )


def zeta_estimate(
  template: PointTemplate,
  exclusions: Sequence[str] = (),
  classes: Iterable[CandidateClass] = (CandidateClass.RATIONAL,),
  bounds: SearchBounds = SearchBounds(),
  *,
  seed: int | None = None,
  threads: int = 1,
  policy: PrecisionPolicy = DEFAULT_POLICY,
) -> ZetaEstimate:
  return asyncio.run(
    zeta_estimate_async(
      template, exclusions, classes, bounds, seed=seed, threads=threads, policy=policy
    )
  )
