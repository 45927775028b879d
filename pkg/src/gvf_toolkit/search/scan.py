"""Chunked parallel map over a candidate stream with a reduction in candidate order."""

from __future__ import annotations

import asyncio
import itertools
from collections.abc import Callable, Iterable
from dataclasses import dataclass

from libsh import get_logger

_logger = get_logger(__name__)

DEFAULT_CHUNK_SIZE = 32


@dataclass(frozen=True, slots=True)
class ScanOutcome[R]:
  """Results of every evaluated candidate that produced one, ordered by candidate index.

  `examined` counts candidates whose outcome is part of the result: all of them, or in first-hit
  mode everything up to and including the first hit.
  """

  results: tuple[tuple[int, R], ...]
  examined: int
  first_hit: int | None = None


def _leaf(group: BaseExceptionGroup[BaseException]) -> BaseException:
  first = group.exceptions[0]
  return _leaf(first) if isinstance(first, BaseExceptionGroup) else first


async def scan[T, R](
  items: Iterable[T],
  evaluate: Callable[[int, T], R | None],
  *,
  threads: int = 1,
  chunk_size: int = DEFAULT_CHUNK_SIZE,
  is_hit: Callable[[R], bool] | None = None,
) -> ScanOutcome[R]:
  """Evaluate `items` in chunks on up to `threads` worker threads.

  With `is_hit`, dispatch stops once a hit is known before the next chunk; every chunk before the
  first hit has already been dispatched, so the first hit and the truncated results do not depend
  on scheduling.
  """
  sem = asyncio.Semaphore(threads)
  collected: dict[int, list[tuple[int, R]]] = {}
  first_hit: int | None = None
  dispatched = 0

  def run_chunk(start: int, chunk: tuple[T, ...]) -> list[tuple[int, R]]:
    out: list[tuple[int, R]] = []
    for offset, item in enumerate(chunk):
      result = evaluate(start + offset, item)
      if result is not None:
        out.append((start + offset, result))
    return out

  async def run_one(index: int, start: int, chunk: tuple[T, ...]) -> None:
    nonlocal first_hit
    try:
      out = await asyncio.to_thread(run_chunk, start, chunk)
    finally:
      sem.release()
    collected[index] = out
    if is_hit is None:
      return
    for position, result in out:
      if is_hit(result):
        first_hit = position if first_hit is None else min(first_hit, position)
        break

  try:
    async with asyncio.TaskGroup() as tg:
      for index, chunk in enumerate(itertools.batched(items, chunk_size)):
        await sem.acquire()
        start = index * chunk_size
        if first_hit is not None and start > first_hit:
          sem.release()
          break
        dispatched = start + len(chunk)
        tg.create_task(run_one(index, start, chunk))
  except BaseExceptionGroup as group:
    raise _leaf(group) from None

  ordered = [pair for index in sorted(collected) for pair in collected[index]]
  if first_hit is not None:
    ordered = [pair for pair in ordered if pair[0] <= first_hit]
    examined = first_hit + 1
  else:
    examined = dispatched
  _logger.debug("scan finished", examined=examined, kept=len(ordered), first_hit=first_hit)
  return ScanOutcome(tuple(ordered), examined, first_hit)
