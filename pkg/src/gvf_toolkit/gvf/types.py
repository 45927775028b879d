from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from enum import StrEnum
from fractions import Fraction
from functools import lru_cache

from gvf_toolkit.algebra import DEFAULT_PRECISION, BigFloat, factor_int, render_rational
from gvf_toolkit.places import Place


@lru_cache(maxsize=1024)
def log_prime(p: int, prec: int) -> BigFloat:
  return BigFloat.log_of(p, prec)


def _render_log(p: int, coeff: Fraction) -> str:
  if coeff == 1:
    return f"log({p})"
  return f"{render_rational(coeff)}*log({p})"


@dataclass(frozen=True, slots=True)
class LogCombination:
  """Σ c_p·log p with exact rational coefficients, sorted by prime, no zero terms."""

  terms: tuple[tuple[int, Fraction], ...] = ()

  @classmethod
  def of(cls, mapping: Mapping[int, Fraction] | Iterable[tuple[int, Fraction]]) -> LogCombination:
    totals: dict[int, Fraction] = {}
    items = mapping.items() if isinstance(mapping, Mapping) else mapping
    for p, c in items:
      totals[p] = totals.get(p, Fraction(0)) + Fraction(c)
    return cls(tuple(sorted((p, c) for p, c in totals.items() if c != 0)))

  @classmethod
  def log_of(cls, q: Fraction | int) -> LogCombination:
    """log|q| for a nonzero rational, as Σ v_p(q)·log p."""
    value = abs(Fraction(q))
    if value == 0:
      raise ValueError("log of 0")
    pairs = [(p, Fraction(k)) for p, k in factor_int(value.numerator)]
    pairs += [(p, Fraction(-k)) for p, k in factor_int(value.denominator)]
    return cls.of(pairs)

  def as_dict(self) -> dict[int, Fraction]:
    return dict(self.terms)

  def is_zero(self) -> bool:
    return not self.terms

  def __add__(self, other: LogCombination) -> LogCombination:
    return LogCombination.of([*self.terms, *other.terms])

  def __neg__(self) -> LogCombination:
    return LogCombination(tuple((p, -c) for p, c in self.terms))

  def __sub__(self, other: LogCombination) -> LogCombination:
    return self + (-other)

  def __mul__(self, coeff: Fraction | int) -> LogCombination:
    return LogCombination.of([(p, c * coeff) for p, c in self.terms])

  def __rmul__(self, coeff: Fraction | int) -> LogCombination:
    return self * coeff

  def numeric(self, prec: int = DEFAULT_PRECISION) -> BigFloat:
    total = BigFloat.zero(prec)
    for p, c in self.terms:
      total = total + log_prime(p, prec) * c
    return total

  def render(self) -> str:
    if not self.terms:
      return "0"
    text = " + ".join(_render_log(p, c) for p, c in self.terms)
    return text.replace("+ -", "- ")

  def __str__(self) -> str:
    return self.render()


LocalValue = Fraction | LogCombination | BigFloat


def render_local(value: LocalValue, digits: int = 20) -> str:
  match value:
    case Fraction():
      return render_rational(value)
    case LogCombination():
      return value.render()
    case BigFloat():
      return value.render(digits)


@dataclass(frozen=True, slots=True)
class GvfValue:
  """The number ∫ t(v(ā)) dv split into an exact part and an archimedean ball.

  `logs` holds the exact ℚ-combination of log p (finite places of number carriers, plus
  archimedean places whenever every value there was rational or the term was folded through the
  norm); `constant` holds the exact value over function fields; `arch` is the ball sum of the
  remaining archimedean contributions, or None when the value is exact.
  """

  logs: LogCombination = field(default_factory=LogCombination)
  constant: Fraction = Fraction(0)
  arch: BigFloat | None = None
  prec: int = DEFAULT_PRECISION

  @classmethod
  def zero(cls, prec: int = DEFAULT_PRECISION) -> GvfValue:
    return cls(prec=prec)

  @property
  def is_exact(self) -> bool:
    return self.arch is None

  def exact_part_vanishes(self) -> bool:
    return self.logs.is_zero() and self.constant == 0

  def vanishes(self) -> bool:
    """Zero as far as can be told: exactly zero, or its total ball contains zero."""
    if self.arch is None:
      return self.exact_part_vanishes()
    return self.numeric().contains_zero()

  def vanishes_termwise(self) -> bool:
    """Exact part identically zero and the archimedean ball contains zero."""
    return self.exact_part_vanishes() and (self.arch is None or self.arch.contains_zero())

  def numeric(self) -> BigFloat:
    total = self.logs.numeric(self.prec) + self.constant
    if self.arch is not None:
      total = total + self.arch
    return total

  def __add__(self, other: GvfValue) -> GvfValue:
    if self.arch is None:
      arch = other.arch
    elif other.arch is None:
      arch = self.arch
    else:
      arch = self.arch + other.arch
    return GvfValue(
      self.logs + other.logs, self.constant + other.constant, arch, max(self.prec, other.prec)
    )

  def __neg__(self) -> GvfValue:
    arch = None if self.arch is None else -self.arch
    return GvfValue(-self.logs, -self.constant, arch, self.prec)

  def __sub__(self, other: GvfValue) -> GvfValue:
    return self + (-other)

  def scale(self, coeff: Fraction | int) -> GvfValue:
    q = Fraction(coeff)
    arch = None if self.arch is None else self.arch * q
    return GvfValue(self.logs * q, self.constant * q, arch, self.prec)

  def symbolic(self) -> str | None:
    """Exact rendering ("log(2) - 2*log(3)", "1"), or None when an archimedean ball remains."""
    if self.arch is not None:
      return None
    if self.logs.is_zero():
      return render_rational(self.constant)
    text = self.logs.render()
    if self.constant != 0:
      sign = "-" if self.constant < 0 else "+"
      text = f"{text} {sign} {render_rational(abs(self.constant))}"
    return text

  def render(self, digits: int = 30) -> str:
    symbolic = self.symbolic()
    if symbolic is not None and self.logs.is_zero():
      return symbolic
    decimal = self.numeric().render(digits)
    if symbolic is not None:
      return f"{decimal} (= {symbolic})"
    return decimal

  def __str__(self) -> str:
    return self.render()

  def to_payload(self, digits: int = 30) -> dict[str, object]:
    total = self.numeric()
    data: dict[str, object] = {
      "value": total.render(digits),
      "exact": self.is_exact,
      "log_terms": {str(p): render_rational(c) for p, c in self.logs.terms},
      "constant": render_rational(self.constant),
    }
    symbolic = self.symbolic()
    if symbolic is not None:
      data["symbolic"] = symbolic
    if self.arch is not None:
      data["archimedean"] = self.arch.render(digits)
    return data


@dataclass(frozen=True, slots=True)
class LocalTerm:
  """One place's share of an integral: the valuation vector, t at it, and weight times that."""

  place: Place
  values: tuple[LocalValue, ...]
  integrand: LocalValue
  contribution: GvfValue


class PositivityStatus(StrEnum):
  NONNEGATIVE = "premise_holds_nonnegative"
  VIOLATION = "premise_holds_violation"
  PREMISE_FAILS = "premise_fails"


@dataclass(frozen=True, slots=True)
class Witness:
  place: Place
  value: LocalValue

  def render(self) -> str:
    return f"{self.place.label()}: {render_local(self.value)}"


@dataclass(frozen=True, slots=True)
class PositivityVerdict:
  status: PositivityStatus
  value: GvfValue | None
  witnesses: tuple[Witness, ...] = ()
  local: tuple[LocalTerm, ...] = ()

  @property
  def holds(self) -> bool:
    return self.status is not PositivityStatus.VIOLATION
