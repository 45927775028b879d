from __future__ import annotations

from dataclasses import dataclass
from enum import StrEnum
from fractions import Fraction

from gvf_toolkit.algebra import (
  DEFAULT_PRECISION,
  MAX_PRECISION,
  BigFloat,
  Poly,
  is_prime,
  is_squarefree_int,
  render_rational,
)
from gvf_toolkit.exceptions import InputError

# --- carriers ---


@dataclass(frozen=True, slots=True)
class RationalsQ:
  @property
  def degree(self) -> int:
    return 1

  @property
  def min_poly(self) -> Poly:
    return Poly.x()

  def label(self) -> str:
    return "Q"


@dataclass(frozen=True, slots=True)
class QuadraticField:
  """ℚ(√d) for a squarefree integer d ∉ {0, 1}; elements are a + b√d."""

  d: int

  def __post_init__(self) -> None:
    if self.d in (0, 1) or not is_squarefree_int(self.d):
      raise InputError(f"quadratic field needs a squarefree d other than 0 and 1, got {self.d}")

  @property
  def degree(self) -> int:
    return 2

  @property
  def min_poly(self) -> Poly:
    return Poly.of(-self.d, 0, 1)

  def label(self) -> str:
    return f"Q(sqrt({self.d}))"


@dataclass(frozen=True, slots=True)
class NumberField:
  """ℚ(α) with α a root of a monic irreducible integer polynomial."""

  min_poly: Poly
  trust_irreducible: bool = False

  def __post_init__(self) -> None:
    f = self.min_poly
    if f.degree < 2 or not f.is_integral() or not f.is_monic():
      raise InputError(f"minimal polynomial must be monic, integral and of degree >= 2: {f}")
    if not self.trust_irreducible and not f.is_irreducible_over_q():
      raise InputError(f"minimal polynomial {f} is reducible over Q")

  @property
  def degree(self) -> int:
    return self.min_poly.degree

  def label(self) -> str:
    return f"Q[x]/({self.min_poly})"


@dataclass(frozen=True, slots=True)
class FunctionField:
  """𝔽_p(t) with the trivial valuation on the constants."""

  p: int

  def __post_init__(self) -> None:
    if not is_prime(self.p):
      raise InputError(f"function field characteristic must be prime, got {self.p}")

  def label(self) -> str:
    return f"F_{self.p}(t)"


NumberCarrier = RationalsQ | QuadraticField | NumberField
Carrier = RationalsQ | QuadraticField | NumberField | FunctionField

RATIONALS = RationalsQ()


# --- places ---


class PlaceKind(StrEnum):
  FINITE = "finite"
  ARCHIMEDEAN = "archimedean"
  FUNCTION_FINITE = "function_finite"
  FUNCTION_INFINITY = "function_infinity"


@dataclass(frozen=True, slots=True)
class Weight:
  """Measure mass `multiplier · log(base)`, or just `multiplier` when base is None."""

  multiplier: Fraction
  base: int | None = None

  def numeric(self, prec: int = DEFAULT_PRECISION) -> BigFloat:
    if self.base is None:
      return BigFloat.from_rational(self.multiplier, prec)
    return BigFloat.log_of(self.base, prec) * self.multiplier

  def render(self) -> str:
    m = render_rational(self.multiplier)
    if self.base is None:
      return m
    return f"{m}*log({self.base})" if self.multiplier != 1 else f"log({self.base})"


@dataclass(frozen=True, slots=True)
class Place:
  """A place of a carrier together with its measure weight.

  Finite places carry the rational prime `p`, the local factor (mod p, or lifted for general
  number fields) and e, f. Archimedean places carry the index of their embedding's root box.
  Function-field finite places carry the monic irreducible `factor` π.
  """

  carrier: Carrier
  kind: PlaceKind
  weight: Weight
  p: int | None = None
  factor: Poly | None = None
  e: int = 1
  f: int = 1
  root_index: int | None = None
  is_real: bool = True
  branch: int = 0

  @property
  def is_archimedean(self) -> bool:
    return self.kind is PlaceKind.ARCHIMEDEAN

  @property
  def is_finite(self) -> bool:
    return self.kind in (PlaceKind.FINITE, PlaceKind.FUNCTION_FINITE)

  def sort_key(self) -> tuple[int, int, int, tuple[int, ...], int]:
    match self.kind:
      case PlaceKind.FINITE:
        coeffs = tuple(self.factor.to_ints()) if self.factor is not None else ()
        return 0, self.p or 0, 0, coeffs, self.branch
      case PlaceKind.FUNCTION_FINITE:
        assert self.factor is not None
        return 0, self.factor.degree, 0, tuple(self.factor.to_ints()), 0
      case PlaceKind.FUNCTION_INFINITY:
        return 1, 0, 0, (), 0
      case PlaceKind.ARCHIMEDEAN:
        return 1, 0, self.root_index or 0, (), 0

  def label(self) -> str:
    match self.kind:
      case PlaceKind.FINITE:
        if isinstance(self.carrier, RationalsQ):
          return f"v_{self.p}"
        factor = self.factor.render("x") if self.factor is not None else "?"
        return f"P_{self.p}[{factor}]"
      case PlaceKind.FUNCTION_FINITE:
        assert self.factor is not None
        return f"v_{{{self.factor.render('t')}}}"
      case PlaceKind.FUNCTION_INFINITY:
        return "v_inf"
      case PlaceKind.ARCHIMEDEAN:
        if isinstance(self.carrier, RationalsQ):
          return "v_inf"
        return f"sigma_{(self.root_index or 0) + 1}"

  def describe(self) -> dict[str, object]:
    data: dict[str, object] = {
      "label": self.label(),
      "kind": self.kind.value,
      "weight": self.weight.render(),
    }
    if self.kind is PlaceKind.FINITE:
      data |= {"p": self.p, "e": self.e, "f": self.f}
    if self.factor is not None:
      data["factor"] = self.factor.render("t" if isinstance(self.carrier, FunctionField) else "x")
    if self.kind is PlaceKind.ARCHIMEDEAN:
      data |= {"embedding": self.root_index, "real": self.is_real}
    return data


@dataclass(frozen=True, slots=True)
class PrecisionPolicy:
  """Working precisions for valuations: ball bits, their ceiling, and the first Hensel exponent."""

  bits: int = DEFAULT_PRECISION
  max_bits: int = MAX_PRECISION
  hensel: int = 8
  max_hensel: int = 4096

  def __post_init__(self) -> None:
    if self.bits < 16 or self.max_bits < self.bits:
      raise InputError(f"invalid precision policy: {self.bits} bits, ceiling {self.max_bits}")
    if self.hensel < 1:
      raise InputError("Hensel precision must be at least 1")


DEFAULT_POLICY = PrecisionPolicy()
