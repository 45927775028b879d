"""R_t(ā) = ∫ t(v(ā)) dv as a finite weighted sum over support places."""

from __future__ import annotations

from collections.abc import Sequence
from fractions import Fraction
from functools import partial

from libsh import get_logger

from gvf_toolkit.algebra import BigFloat, mahler_measure
from gvf_toolkit.exceptions import InputError, PrecisionExhausted
from gvf_toolkit.places import (
  DEFAULT_POLICY,
  Carrier,
  FieldElem,
  NfElem,
  NumberField,
  Place,
  PlaceKind,
  PrecisionPolicy,
  QElem,
  QuadraticField,
  norm,
  require_nonzero,
  support_places,
  valuation,
)
from gvf_toolkit.tropical import (
  ArityMismatch,
  TropTerm,
  arity,
  contains_min,
  evaluate,
  evaluate_mixed,
  evaluate_with,
  height_term,
  tuple_height_term,
)

from .types import GvfValue, LocalTerm, LocalValue, LogCombination

_logger = get_logger(__name__)


def local_value(
  place: Place, elem: FieldElem, policy: PrecisionPolicy = DEFAULT_POLICY
) -> LocalValue:
  """v(a), kept symbolic at archimedean places when a is rational (v = -log|a|)."""
  if place.is_archimedean:
    match elem:
      case QElem(value):
        return -LogCombination.log_of(value)
      case NfElem() if elem.is_rational():
        return -LogCombination.log_of(elem.a)
      case _:
        pass
  return valuation(place, elem, policy)


def compare_logs(a: LogCombination, b: LogCombination, policy: PrecisionPolicy) -> int:
  """Sign of a - b, deciding with balls of growing precision.

  Logs of distinct primes are linearly independent over ℚ, so a nonzero difference always
  separates from 0 eventually.
  """
  diff = a - b
  if diff.is_zero():
    return 0
  prec = policy.bits
  while prec <= policy.max_bits:
    ball = diff.numeric(prec)
    if ball.certainly_negative():
      return -1
    if ball.certainly_positive():
      return 1
    prec *= 2
  raise PrecisionExhausted(f"cannot decide the sign of {diff.render()}")


def _log_min(policy: PrecisionPolicy, a: LogCombination, b: LogCombination) -> LogCombination:
  return a if compare_logs(a, b, policy) <= 0 else b


def evaluate_local(
  term: TropTerm, values: Sequence[LocalValue], policy: PrecisionPolicy = DEFAULT_POLICY
) -> LocalValue:
  """t at one place's valuation vector: exact, symbolic in log p, or a ball."""
  if all(isinstance(v, Fraction) for v in values):
    return evaluate(term, values)  # type: ignore[arg-type]
  if all(isinstance(v, LogCombination) for v in values):
    return evaluate_with(
      term,
      values,  # type: ignore[arg-type]
      zero=LogCombination(),
      minimum=partial(_log_min, policy),
    )
  balls = [v.numeric(policy.bits) if isinstance(v, LogCombination) else v for v in values]
  return evaluate_mixed(term, balls)


def _contribution(place: Place, integrand: LocalValue, prec: int) -> GvfValue:
  weight = place.weight
  match integrand:
    case Fraction() if place.kind is PlaceKind.FINITE:
      assert weight.base is not None
      return GvfValue(LogCombination.of({weight.base: weight.multiplier * integrand}), prec=prec)
    case Fraction():
      return GvfValue(constant=weight.multiplier * integrand, prec=prec)
    case LogCombination():
      return GvfValue(integrand * weight.multiplier, prec=prec)
    case BigFloat():
      return GvfValue(arch=integrand * weight.multiplier, prec=prec)


def local_terms(
  carrier: Carrier,
  term: TropTerm,
  elems: Sequence[FieldElem],
  policy: PrecisionPolicy = DEFAULT_POLICY,
  places: Sequence[Place] | None = None,
) -> list[LocalTerm]:
  """Per-place breakdown of R_t(ā), in support-place order."""
  needed = arity(term)
  if len(elems) < needed:
    raise ArityMismatch(needed, len(elems))
  require_nonzero(tuple(elems))
  chosen = support_places(carrier, elems, policy) if places is None else list(places)
  terms: list[LocalTerm] = []
  for place in chosen:
    values = tuple(local_value(place, elem, policy) for elem in elems)
    integrand = evaluate_local(term, values, policy)
    terms.append(LocalTerm(place, values, integrand, _contribution(place, integrand, policy.bits)))
  return terms


def archimedean_total(
  carrier: Carrier, term: TropTerm, elems: Sequence[FieldElem], places: Sequence[Place]
) -> LogCombination | None:
  """Σ_σ w_σ·t(v_σ(ā)) over all embeddings, exactly, when t has no min.

  A linear t = Σ c_i·x_i gives Σ_i c_i·(-log|N(a_i)|)/[K:ℚ]. Returns None when t has a min,
  the carrier has no embeddings to fold, or `places` does not list every embedding.
  """
  if not isinstance(carrier, (QuadraticField, NumberField)) or contains_min(term):
    return None
  mass = sum((p.weight.multiplier for p in places if p.is_archimedean), Fraction(0))
  if mass != 1:
    return None
  n = arity(term)
  total = LogCombination()
  for i, elem in enumerate(elems[:n]):
    coeff = evaluate(term, [Fraction(int(j == i)) for j in range(n)])
    if coeff:
      total = total - LogCombination.log_of(norm(carrier, elem)) * (coeff / carrier.degree)
  return total


def integrate(
  terms: Sequence[LocalTerm], prec: int, archimedean: LogCombination | None = None
) -> GvfValue:
  """Sum of the contributions; `archimedean` replaces the embedding balls by their exact total."""
  total = GvfValue.zero(prec)
  for local in terms:
    if archimedean is not None and local.place.is_archimedean:
      continue
    total = total + local.contribution
  if archimedean is not None:
    total = total + GvfValue(archimedean, prec=prec)
  return total


def r_t(
  carrier: Carrier,
  term: TropTerm,
  elems: Sequence[FieldElem],
  policy: PrecisionPolicy = DEFAULT_POLICY,
  places: Sequence[Place] | None = None,
  *,
  exact_archimedean: bool = True,
) -> GvfValue:
  """R_t(ā): the weighted sum of t(v(ā)) over the support places of ā.

  Places outside the support see the zero vector, where every term vanishes, so passing a larger
  `places` list gives the same value. With `exact_archimedean`, a term without min has its
  archimedean part folded into exact logs through the norm; comparisons between a folded and an
  unfolded value then only agree numerically.
  """
  terms = local_terms(carrier, term, elems, policy, places)
  fold = None
  if exact_archimedean:
    fold = archimedean_total(carrier, term, elems, [local.place for local in terms])
  value = integrate(terms, policy.bits, fold)
  _logger.debug("integrated term", carrier=carrier.label(), places=len(terms), exact=value.is_exact)
  return value


def height(carrier: Carrier, elem: FieldElem, policy: PrecisionPolicy = DEFAULT_POLICY) -> GvfValue:
  """∫ -min(v(a), 0) dv; over ℚ this is log max(|numerator|, |denominator|)."""
  return r_t(carrier, height_term(), [elem], policy)


def tuple_height(
  carrier: Carrier, elems: Sequence[FieldElem], policy: PrecisionPolicy = DEFAULT_POLICY
) -> GvfValue:
  """∫ -min(v(a_1), ..., v(a_n), 0) dv, the height of the affine point (a_1, ..., a_n)."""
  if not elems:
    raise InputError("tuple_height needs at least one coordinate")
  return r_t(carrier, tuple_height_term(len(elems)), elems, policy)


def max_height(
  carrier: Carrier, elems: Sequence[FieldElem], policy: PrecisionPolicy = DEFAULT_POLICY
) -> GvfValue:
  """Largest coordinate height; ties keep the first coordinate."""
  if not elems:
    raise InputError("max_height needs at least one coordinate")
  best = height(carrier, elems[0], policy)
  for elem in elems[1:]:
    candidate = height(carrier, elem, policy)
    if (candidate - best).numeric().certainly_positive():
      best = candidate
  return best


def generator_height_oracle(carrier: Carrier, prec: int = DEFAULT_POLICY.bits) -> BigFloat:
  """log M(min_poly) / [K:ℚ]; equals height(α) for a monic integral minimal polynomial."""
  if not isinstance(carrier, (QuadraticField, NumberField)):
    raise InputError(f"{carrier.label()} has no algebraic generator")
  return mahler_measure(carrier.min_poly, prec) * Fraction(1, carrier.degree)
