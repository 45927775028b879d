"""Lattice operations on tuple-generated divisors, the β pairing and effectivity.

Binary operations keep the left operand's variable indices and shift the right operand's past
them; generator tuples are concatenated as they are.
"""

from __future__ import annotations

from collections.abc import Sequence
from fractions import Fraction

from gvf_toolkit.algebra import BigFloat
from gvf_toolkit.gvf import (
  GvfValue,
  LocalValue,
  LogCombination,
  Witness,
  compare_logs,
  evaluate_local,
  local_value,
  r_t,
)
from gvf_toolkit.places import (
  DEFAULT_POLICY,
  Carrier,
  CarrierMismatch,
  FieldElem,
  Place,
  PrecisionPolicy,
  embed_rational,
  support_places,
)
from gvf_toolkit.tropical import ZERO, Add, Min, Scale, TropTerm, contains_min, shift

from .types import BetaValue, EffectivityVerdict, Evidence, LatticeDivisor


def _same_carrier(d: LatticeDivisor, e: LatticeDivisor) -> None:
  if d.carrier != e.carrier:
    raise CarrierMismatch(f"{d.carrier.label()} vs {e.carrier.label()}")


def _joined(d: LatticeDivisor, e: LatticeDivisor) -> tuple[tuple[FieldElem, ...], TropTerm]:
  _same_carrier(d, e)
  return d.generators + e.generators, shift(e.term, len(d.generators))


def wedge(d: LatticeDivisor, e: LatticeDivisor) -> LatticeDivisor:
  """D ∧ E; β(v, D ∧ E) = min(β(v, D), β(v, E)) at every place."""
  generators, right = _joined(d, e)
  return LatticeDivisor(d.carrier, generators, Min((d.term, right)))


def add(d: LatticeDivisor, e: LatticeDivisor) -> LatticeDivisor:
  generators, right = _joined(d, e)
  return LatticeDivisor(d.carrier, generators, Add(d.term, right))


def scale(q: Fraction | int, d: LatticeDivisor) -> LatticeDivisor:
  return LatticeDivisor(d.carrier, d.generators, Scale(Fraction(q), d.term))


def negate(d: LatticeDivisor) -> LatticeDivisor:
  return scale(-1, d)


def principal(carrier: Carrier, elem: FieldElem) -> LatticeDivisor:
  """div(a)."""
  return LatticeDivisor.principal(carrier, elem)


def height_divisor(carrier: Carrier, elem: FieldElem) -> LatticeDivisor:
  """-(div(a) ∧ div(1)), whose functional value is the height of a."""
  one = embed_rational(carrier, 1)
  return negate(wedge(principal(carrier, elem), principal(carrier, one)))


def zero_divisor(carrier: Carrier) -> LatticeDivisor:
  return LatticeDivisor(carrier, (), ZERO)


def beta(
  place: Place, d: LatticeDivisor, policy: PrecisionPolicy = DEFAULT_POLICY
) -> LocalValue:
  """β(v, D) = t(v(a_1), ..., v(a_n)): exact at finite places, symbolic or a ball otherwise."""
  if place.carrier != d.carrier:
    raise CarrierMismatch(f"place {place.label()} is not a place of {d.carrier.label()}")
  values = [local_value(place, elem, policy) for elem in d.generators]
  return evaluate_local(d.term, values, policy)


def divisor_places(d: LatticeDivisor, policy: PrecisionPolicy = DEFAULT_POLICY) -> list[Place]:
  """Support places of the generators, with every archimedean place (or infinity) included."""
  return support_places(d.carrier, d.generators, policy)


def _sign(value: LocalValue, policy: PrecisionPolicy) -> int | None:
  """-1, 0 or 1, or None when a ball straddles 0."""
  match value:
    case Fraction():
      return (value > 0) - (value < 0)
    case LogCombination():
      return compare_logs(value, LogCombination(), policy)
    case BigFloat():
      if value.certainly_negative():
        return -1
      if value.certainly_positive():
        return 1
      return None


def is_effective_on_support(
  d: LatticeDivisor, policy: PrecisionPolicy = DEFAULT_POLICY
) -> EffectivityVerdict:
  """β(v, D) ≥ 0 at every support place of the generators and every archimedean place.

  Finite places are decided exactly and cover all other finite places, which see the zero vector.
  The verdict is SAMPLED when a ball could not be separated from 0, or when the term has a min and
  some archimedean β is only known as a ball; otherwise it is PROVEN.
  """
  betas: list[BetaValue] = []
  witnesses: list[Witness] = []
  undecided = False
  for place in divisor_places(d, policy):
    value = beta(place, d, policy)
    betas.append(BetaValue(place, value))
    sign = _sign(value, policy)
    if sign is None:
      undecided = True
    elif sign < 0:
      witnesses.append(Witness(place, value))
  ball_at_archimedean = any(
    item.place.is_archimedean and isinstance(item.value, BigFloat) for item in betas
  )
  proven = not undecided and not (ball_at_archimedean and contains_min(d.term))
  evidence = Evidence.PROVEN if proven else Evidence.SAMPLED
  return EffectivityVerdict(not witnesses, evidence, tuple(betas), tuple(witnesses))


def functional_value(
  carrier: Carrier, d: LatticeDivisor, policy: PrecisionPolicy = DEFAULT_POLICY
) -> GvfValue:
  """The standard GVF functional on D, equal to R_t(ā) for D = t(div(ā))."""
  if carrier != d.carrier:
    raise CarrierMismatch(f"{d.render()} is not a divisor over {carrier.label()}")
  return r_t(carrier, d.term, d.generators, policy)


def combine(divisors: Sequence[LatticeDivisor], op: str) -> LatticeDivisor:
  """Fold `wedge` or `add` over a non-empty list, left to right."""
  if not divisors:
    raise ValueError("combine needs at least one divisor")
  fold = {"wedge": wedge, "add": add}[op]
  result = divisors[0]
  for item in divisors[1:]:
    result = fold(result, item)
  return result