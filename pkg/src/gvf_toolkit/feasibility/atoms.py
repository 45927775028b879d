"""Valuation atoms sampled from the places of concrete points."""

from __future__ import annotations

from collections.abc import Sequence
from fractions import Fraction

from gvf_toolkit.algebra import BigFloat
from gvf_toolkit.divisors import PointSpec, make_template, specialize
from gvf_toolkit.exceptions import InputError
from gvf_toolkit.gvf import LocalValue, LogCombination, local_value
from gvf_toolkit.places import (
  DEFAULT_POLICY,
  FunctionField,
  Place,
  PrecisionPolicy,
  support_places,
)
from gvf_toolkit.tropical import ZERO

from .logs import Approximation, LogTable
from .types import AtomClass, ValuationAtom


def rationalize(value: LocalValue, table: LogTable) -> Approximation:
  match value:
    case Fraction():
      return Approximation(value)
    case LogCombination():
      return table.combination(value)
    case BigFloat():
      return table.ball(value)


def atom_at(
  place: Place, values: Sequence[LocalValue], table: LogTable, label: str = ""
) -> ValuationAtom:
  """The atom of one place, weighted as in the standard measure."""
  weight = place.weight.multiplier
  if place.is_archimedean:
    approx = [rationalize(v, table) for v in values]
    return ValuationAtom(
      tuple(a.value for a in approx),
      AtomClass.ARCHIMEDEAN,
      error=max((a.error for a in approx), default=Fraction(0)),
      label=label,
      standard_weight=weight,
    )
  exact = tuple(v for v in values if isinstance(v, Fraction))
  if len(exact) != len(values) or place.p is None:
    raise InputError(f"place {place.label()} has no exact rational valuations")
  return ValuationAtom(exact, AtomClass.FINITE, prime=place.p, label=label, standard_weight=weight)


def atoms_from_points(
  generators: Sequence[str],
  points: Sequence[PointSpec],
  *,
  variables: Sequence[str] | None = None,
  table: LogTable | None = None,
  policy: PrecisionPolicy = DEFAULT_POLICY,
) -> list[ValuationAtom]:
  """One atom per support place of (g_1(x), ..., g_n(x)), for every point x.

  Each atom records (v(g_1(x)), ..., v(g_n(x))) at its place; archimedean entries are rationalized
  through `table`, so the standard weights satisfy the product-formula rows up to the reported
  perturbation bound.
  """
  chosen = table if table is not None else LogTable()
  template = make_template(generators, ZERO, variables)
  atoms: list[ValuationAtom] = []
  for point in points:
    if isinstance(point.carrier, FunctionField):
      raise InputError("atoms are sampled from number-field points only")
    elems = specialize(template, point)
    for place in support_places(point.carrier, elems, policy):
      values = [local_value(place, elem, policy) for elem in elems]
      atoms.append(atom_at(place, values, chosen, label=f"{point.render()} @ {place.label()}"))
  return atoms


def standard_weights(atoms: Sequence[ValuationAtom]) -> tuple[Fraction, ...]:
  """The measure each atom carries in its own field; atoms without one get 0."""
  return tuple(atom.standard_weight or Fraction(0) for atom in atoms)
