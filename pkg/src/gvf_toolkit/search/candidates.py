"""Graded candidate streams for the point search.

Every stream yields `(grade, element)` pairs in non-decreasing grade. `enumerate_candidates` pools
the enabled streams by carrier, drops repeats, and walks tuples of coordinates in order of total
grade so small points come first.
"""

from __future__ import annotations

import itertools
import random
from collections.abc import Iterable, Iterator, Sequence
from fractions import Fraction
from math import gcd

import sympy

from gvf_toolkit.algebra import Poly, is_squarefree_int
from gvf_toolkit.divisors import PointSpec
from gvf_toolkit.places import (
  Carrier,
  FieldElem,
  NfElem,
  NumberField,
  QElem,
  QuadraticField,
  generator,
)

from .types import CandidateClass, SearchBounds

Graded = tuple[int, FieldElem]

# Cyclotomic fields beyond this degree are skipped.
MAX_CYCLOTOMIC_DEGREE = 4

_CLASS_ORDER = (
  CandidateClass.RATIONAL,
  CandidateClass.QUADRATIC,
  CandidateClass.CYCLOTOMIC,
  CandidateClass.CUSTOM,
)


def stern_brocot(bound: int) -> Iterator[tuple[int, Fraction]]:
  """Positive reduced a/b with max(a, b) ≤ bound, breadth first through the Stern–Brocot tree.

  Yields (depth, fraction) with the root 1/1 at depth 1. A node's descendants have larger
  numerators and denominators, so an out-of-bound mediant prunes its whole subtree.
  """
  level = [((0, 1), (1, 0))]
  depth = 1
  while level:
    deeper: list[tuple[tuple[int, int], tuple[int, int]]] = []
    for (a, b), (c, d) in level:
      p, q = a + c, b + d
      if max(p, q) > bound:
        continue
      yield depth, Fraction(p, q)
      deeper.append(((a, b), (p, q)))
      deeper.append(((p, q), (c, d)))
    level = deeper
    depth += 1


def rational_candidates(bound: int) -> Iterator[Graded]:
  for depth, q in stern_brocot(bound):
    yield depth, QElem(q)
    yield depth, QElem(-q)


def quadratic_discriminants(bound: int) -> list[int]:
  """Squarefree d with |d| ≤ bound and d ∉ {0, 1}, ordered by (|d|, d)."""
  values = [d for d in range(-bound, bound + 1) if d not in (0, 1) and is_squarefree_int(d)]
  return sorted(values, key=lambda d: (abs(d), d))


def quadratic_candidates(d_bound: int, height_bound: int) -> Iterator[Graded]:
  """(a + b√d)/c with b ≠ 0, c ≥ 1, gcd(a, b, c) = 1, graded by max(|a|, |b|, c)."""
  fields = [QuadraticField(d) for d in quadratic_discriminants(d_bound)]
  for h in range(1, height_bound + 1):
    for carrier in fields:
      for c in range(1, h + 1):
        for a in range(-h, h + 1):
          for b in range(-h, h + 1):
            if b == 0 or max(abs(a), abs(b), c) != h or gcd(gcd(a, b), c) != 1:
              continue
            yield h, NfElem(carrier, (Fraction(a, c), Fraction(b, c)))


def cyclotomic_field(k: int) -> QuadraticField | NumberField | None:
  """The carrier holding the primitive k-th roots of unity, or None when it is out of range."""
  match k:
    case 3 | 6:
      return QuadraticField(-3)
    case 4:
      return QuadraticField(-1)
  if int(sympy.totient(k)) > MAX_CYCLOTOMIC_DEGREE:
    return None
  phi = Poly.from_sympy(sympy.cyclotomic_poly(k, sympy.Symbol("x"), polys=True))
  return NumberField(phi, trust_irreducible=True)


def roots_of_unity(k: int) -> list[FieldElem]:
  """Primitive k-th roots of unity, exact in their carrier."""
  half = Fraction(1, 2)
  match k:
    case 1:
      return [QElem(Fraction(1))]
    case 2:
      return [QElem(Fraction(-1))]
    case 3:
      carrier = QuadraticField(-3)
      return [NfElem(carrier, (-half, half)), NfElem(carrier, (-half, -half))]
    case 4:
      carrier = QuadraticField(-1)
      zero = Fraction(0)
      return [NfElem(carrier, (zero, Fraction(1))), NfElem(carrier, (zero, Fraction(-1)))]
    case 6:
      carrier = QuadraticField(-3)
      return [NfElem(carrier, (half, half)), NfElem(carrier, (half, -half))]
  field = cyclotomic_field(k)
  if field is None:
    return []
  alpha = generator(field)
  return [alpha**j for j in range(1, k) if gcd(j, k) == 1]


def cyclotomic_candidates(max_order: int) -> Iterator[Graded]:
  for k in range(1, max_order + 1):
    for root in roots_of_unity(k):
      yield k, root


def custom_polynomials(degree: int, coeff_bound: int) -> Iterator[tuple[int, Poly]]:
  """Monic irreducible x^n + c_{n-1}x^{n-1} + … + c_0 with c_0 ≠ 0, graded by max |c_i|."""
  span = range(-coeff_bound, coeff_bound + 1)
  found: list[tuple[int, int, tuple[int, ...]]] = []
  for n in range(2, degree + 1):
    for coeffs in itertools.product(span, repeat=n):
      if coeffs[0] == 0:
        continue
      found.append((max(abs(c) for c in coeffs), n, coeffs))
  for grade, _, coeffs in sorted(found):
    poly = Poly.of(*coeffs, 1)
    if poly.is_irreducible_over_q():
      yield grade, poly


def custom_candidates(degree: int, coeff_bound: int) -> Iterator[Graded]:
  for grade, poly in custom_polynomials(degree, coeff_bound):
    yield grade, generator(NumberField(poly, trust_irreducible=True))


def class_stream(klass: CandidateClass, bounds: SearchBounds) -> Iterator[Graded]:
  match klass:
    case CandidateClass.RATIONAL:
      return rational_candidates(bounds.rational)
    case CandidateClass.QUADRATIC:
      return quadratic_candidates(bounds.quadratic_d, bounds.quadratic_height)
    case CandidateClass.CYCLOTOMIC:
      return cyclotomic_candidates(bounds.cyclotomic_order)
    case CandidateClass.CUSTOM:
      return custom_candidates(bounds.custom_degree, bounds.custom_coeff)


Pools = dict[Carrier, dict[int, list[FieldElem]]]


def candidate_pools(
  classes: Iterable[CandidateClass], bounds: SearchBounds, seed: int | None = None
) -> Pools:
  """Elements of every enabled class grouped by carrier, then grade, without repeats.

  With a seed each grade bucket is shuffled by one `random.Random(seed)` in a fixed order, so the
  result depends only on (classes, bounds, seed).
  """
  enabled = set(classes)
  pools: Pools = {}
  seen: set[FieldElem] = set()
  for klass in _CLASS_ORDER:
    if klass not in enabled:
      continue
    for grade, elem in class_stream(klass, bounds):
      if elem in seen:
        continue
      seen.add(elem)
      pools.setdefault(elem.carrier, {}).setdefault(grade, []).append(elem)
  if seed is not None:
    rng = random.Random(seed)
    for buckets in pools.values():
      for grade in sorted(buckets):
        rng.shuffle(buckets[grade])
  return pools


def compositions(total: int, parts: int, low: int, high: int) -> Iterator[tuple[int, ...]]:
  """Tuples of `parts` integers in [low, high] summing to `total`, in lexicographic order."""
  if parts == 1:
    if low <= total <= high:
      yield (total,)
    return
  for first in range(low, high + 1):
    rest = total - first
    if rest < low * (parts - 1):
      break
    for tail in compositions(rest, parts - 1, low, high):
      yield (first, *tail)


def enumerate_candidates(
  classes: Iterable[CandidateClass],
  bounds: SearchBounds,
  seed: int | None = None,
  variables: Sequence[str] = ("y",),
) -> Iterator[PointSpec]:
  """Deterministic stream of points, ordered by total grade, then carrier, then coordinates.

  All coordinates of one point share a carrier. The stream is finite and lazy, so multi-variable
  searches never materialize the full product.
  """
  pools = candidate_pools(classes, bounds, seed)
  grades = [grade for buckets in pools.values() for grade in buckets]
  if not grades:
    return
  low, high = min(grades), max(grades)
  arity = len(variables)
  for total in range(arity * low, arity * high + 1):
    for carrier, buckets in pools.items():
      for split in compositions(total, arity, low, high):
        if any(grade not in buckets for grade in split):
          continue
        for values in itertools.product(*(buckets[grade] for grade in split)):
          yield PointSpec.of(carrier, dict(zip(variables, values, strict=True)))
