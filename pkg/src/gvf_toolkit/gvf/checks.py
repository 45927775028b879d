"""Checks of the globally valued field axioms on concrete tuples.

Positivity is checked at place representatives only. For ℚ, number fields and 𝔽_p(t) every
valuation is a positive multiple of a place valuation, tropical terms are positively homogeneous,
and places outside the support see the zero vector, so this covers every valuation of these
carriers. Nothing here claims more for other fields.
"""

from __future__ import annotations

from collections.abc import Sequence
from fractions import Fraction
from functools import partial

from libsh import get_logger

from gvf_toolkit.algebra import BigFloat
from gvf_toolkit.places import (
  DEFAULT_POLICY,
  Carrier,
  FieldElem,
  NfElem,
  NumberField,
  PrecisionPolicy,
  QuadraticField,
)
from gvf_toolkit.tropical import Add, Scale, TropTerm, Var

from .exceptions import NotConjugate
from .integrals import archimedean_total, compare_logs, integrate, local_terms, r_t
from .types import (
  GvfValue,
  LocalValue,
  LogCombination,
  PositivityStatus,
  PositivityVerdict,
  Witness,
)

_logger = get_logger(__name__)


def check_product_formula(
  carrier: Carrier, elem: FieldElem, policy: PrecisionPolicy = DEFAULT_POLICY
) -> GvfValue:
  """Residual ∫ v(a) dv. Its exact part is identically zero on every carrier; over number fields
  the archimedean side is summed through the norm, so no ball is left either.
  """
  return r_t(carrier, Var(1), [elem], policy)


def check_linearity(
  carrier: Carrier,
  t1: TropTerm,
  t2: TropTerm,
  alpha: Fraction,
  elems: Sequence[FieldElem],
  policy: PrecisionPolicy = DEFAULT_POLICY,
) -> tuple[GvfValue, GvfValue]:
  """(R_{t1+t2} - R_{t1} - R_{t2}, R_{α·t1} - α·R_{t1}) on the same tuple.

  Every side is integrated place by place, so exact parts cancel identically and the embedding
  balls cancel within their radii.
  """
  r = partial(r_t, carrier, elems=elems, policy=policy, exact_archimedean=False)
  r1 = r(t1)
  r2 = r(t2)
  additive = r(Add(t1, t2)) - r1 - r2
  homogeneous = r(Scale(Fraction(alpha), t1)) - r1.scale(alpha)
  return additive, homogeneous


def _certainly_negative(value: LocalValue, policy: PrecisionPolicy) -> bool:
  match value:
    case Fraction():
      return value < 0
    case LogCombination():
      return compare_logs(value, LogCombination(), policy) < 0
    case BigFloat():
      return value.certainly_negative()


def check_positivity(
  carrier: Carrier,
  term: TropTerm,
  elems: Sequence[FieldElem],
  policy: PrecisionPolicy = DEFAULT_POLICY,
) -> PositivityVerdict:
  """If t(v(ā)) ≥ 0 at every place, then R_t(ā) must be ≥ 0 up to its error radius.

  The premise only fails at places where t(v(ā)) is certainly negative; a ball straddling 0 does
  not refute it.
  """
  terms = local_terms(carrier, term, elems, policy)
  failures = tuple(
    Witness(local.place, local.integrand)
    for local in terms
    if _certainly_negative(local.integrand, policy)
  )
  if failures:
    return PositivityVerdict(PositivityStatus.PREMISE_FAILS, None, failures, tuple(terms))
  fold = archimedean_total(carrier, term, elems, [local.place for local in terms])
  value = integrate(terms, policy.bits, fold)
  if value.numeric().certainly_negative():
    _logger.warning("positivity violated", carrier=carrier.label(), value=value.render(12))
    return PositivityVerdict(PositivityStatus.VIOLATION, value, (), tuple(terms))
  return PositivityVerdict(PositivityStatus.NONNEGATIVE, value, (), tuple(terms))


def _require_conjugates(elems: Sequence[FieldElem], conjugates: Sequence[FieldElem]) -> None:
  for index, (elem, image) in enumerate(zip(elems, conjugates, strict=True)):
    if not isinstance(elem, NfElem) or not isinstance(image, NfElem):
      raise NotConjugate(index, "entries must be number field elements")
    if elem.field != image.field:
      raise NotConjugate(index, "entries live in different fields")
    if isinstance(elem.field, QuadraticField) and image != elem.conjugate():
      raise NotConjugate(index, f"{image.render()} is not the conjugate of {elem.render()}")


def check_galois_invariance(
  carrier: Carrier,
  term: TropTerm,
  elems: Sequence[FieldElem],
  conjugates: Sequence[FieldElem],
  policy: PrecisionPolicy = DEFAULT_POLICY,
) -> GvfValue:
  """R_t(ā) - R_t(σ(ā)).

  For quadratic fields σ is b ↦ -b and is verified; for general number fields the caller vouches
  for σ.
  """
  if not isinstance(carrier, (QuadraticField, NumberField)):
    raise NotConjugate(0, f"{carrier.label()} has no nontrivial automorphism to check")
  if len(elems) != len(conjugates):
    raise NotConjugate(min(len(elems), len(conjugates)), "tuples have different lengths")
  _require_conjugates(elems, conjugates)
  return r_t(carrier, term, elems, policy) - r_t(carrier, term, conjugates, policy)
