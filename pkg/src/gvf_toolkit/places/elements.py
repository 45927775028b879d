"""Field elements and exact arithmetic in each carrier."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import lcm

from sympy.polys.domains import QQ
from sympy.polys.euclidtools import dup_invert

from gvf_toolkit.algebra import (
  Poly,
  fp_add,
  fp_divmod,
  fp_gcd,
  fp_inverse,
  fp_monic,
  fp_mul,
  fp_scale,
  fp_sub,
  render_rational,
)

from .exceptions import ZeroElement
from .types import RATIONALS, Carrier, FunctionField, NumberField, QuadraticField, RationalsQ


def _common_denominator(values: tuple[Fraction, ...]) -> int:
  return reduce(lcm, (v.denominator for v in values), 1)


@dataclass(frozen=True, slots=True)
class QElem:
  value: Fraction

  @property
  def carrier(self) -> RationalsQ:
    return RATIONALS

  def is_zero(self) -> bool:
    return self.value == 0

  def __add__(self, other: QElem) -> QElem:
    return QElem(self.value + other.value)

  def __sub__(self, other: QElem) -> QElem:
    return QElem(self.value - other.value)

  def __mul__(self, other: QElem) -> QElem:
    return QElem(self.value * other.value)

  def __neg__(self) -> QElem:
    return QElem(-self.value)

  def inverse(self) -> QElem:
    if self.value == 0:
      raise ZeroElement("0 has no inverse")
    return QElem(1 / self.value)

  def __truediv__(self, other: QElem) -> QElem:
    return self * other.inverse()

  def __pow__(self, k: int) -> QElem:
    if k < 0:
      return self.inverse() ** (-k)
    return QElem(self.value**k)

  def render(self) -> str:
    return render_rational(self.value)


@dataclass(frozen=True, slots=True)
class NfElem:
  """c_0 + c_1 α + … + c_{n-1} α^{n-1} in a quadratic or general number field."""

  field: QuadraticField | NumberField
  coeffs: tuple[Fraction, ...]

  def __post_init__(self) -> None:
    n = self.field.degree
    if len(self.coeffs) > n:
      raise ValueError(f"expected at most {n} coefficients, got {len(self.coeffs)}")
    padded = tuple(Fraction(c) for c in self.coeffs) + (Fraction(0),) * (n - len(self.coeffs))
    object.__setattr__(self, "coeffs", padded)

  @property
  def carrier(self) -> QuadraticField | NumberField:
    return self.field

  @property
  def a(self) -> Fraction:
    return self.coeffs[0]

  @property
  def b(self) -> Fraction:
    return self.coeffs[1]

  def is_zero(self) -> bool:
    return all(c == 0 for c in self.coeffs)

  def is_rational(self) -> bool:
    return all(c == 0 for c in self.coeffs[1:])

  def as_poly(self) -> Poly:
    return Poly(self.coeffs)

  def integral_form(self) -> tuple[Poly, int]:
    """(g, den) with self = g(α)/den, g integral and den ≥ 1 minimal."""
    den = _common_denominator(self.coeffs)
    return Poly(tuple(int(c * den) for c in self.coeffs)), den

  def _make(self, poly: Poly) -> NfElem:
    reduced = poly % self.field.min_poly if poly.degree >= self.field.degree else poly
    return NfElem(self.field, tuple(Fraction(c) for c in reduced.coeffs))

  def __add__(self, other: NfElem) -> NfElem:
    return NfElem(self.field, tuple(x + y for x, y in zip(self.coeffs, other.coeffs)))

  def __sub__(self, other: NfElem) -> NfElem:
    return NfElem(self.field, tuple(x - y for x, y in zip(self.coeffs, other.coeffs)))

  def __neg__(self) -> NfElem:
    return NfElem(self.field, tuple(-c for c in self.coeffs))

  def __mul__(self, other: NfElem) -> NfElem:
    if isinstance(self.field, QuadraticField):
      d = self.field.d
      real = self.a * other.a + d * self.b * other.b
      return NfElem(self.field, (real, self.a * other.b + self.b * other.a))
    return self._make(self.as_poly() * other.as_poly())

  def inverse(self) -> NfElem:
    if self.is_zero():
      raise ZeroElement("0 has no inverse")
    if isinstance(self.field, QuadraticField):
      norm = self.a * self.a - self.field.d * self.b * self.b
      return NfElem(self.field, (self.a / norm, -self.b / norm))
    inv = dup_invert(self.as_poly().to_dense_qq(), self.field.min_poly.to_dense_qq(), QQ)
    return self._make(Poly.from_dense(inv))

  def __truediv__(self, other: NfElem) -> NfElem:
    return self * other.inverse()

  def __pow__(self, k: int) -> NfElem:
    if k < 0:
      return self.inverse() ** (-k)
    result = NfElem(self.field, (Fraction(1),))
    base = self
    while k:
      if k & 1:
        result = result * base
      base = base * base
      k >>= 1
    return result

  def conjugate(self) -> NfElem:
    """a - b√d; only quadratic fields have this automorphism built in."""
    if not isinstance(self.field, QuadraticField):
      raise TypeError("conjugate() is only defined for quadratic fields")
    return NfElem(self.field, (self.a, -self.b))

  def render(self) -> str:
    symbol = f"sqrt({self.field.d})" if isinstance(self.field, QuadraticField) else "a"
    parts: list[str] = []
    for k, c in enumerate(self.coeffs):
      if c == 0:
        continue
      if k == 0:
        parts.append(render_rational(c))
        continue
      mono = symbol if k == 1 else f"{symbol}^{k}"
      parts.append(mono if c == 1 else f"-{mono}" if c == -1 else f"{render_rational(c)}*{mono}")
    if not parts:
      return "0"
    return " + ".join(parts).replace("+ -", "- ")


@dataclass(frozen=True, slots=True)
class FfElem:
  """num/den over 𝔽_p, reduced, with monic denominator."""

  field: FunctionField
  num: Poly
  den: Poly = Poly((1,))

  def __post_init__(self) -> None:
    p = self.field.p
    num = self.num.reduce_mod(p)
    den = self.den.reduce_mod(p)
    if den.is_zero():
      raise ZeroElement("zero denominator in a function-field element")
    if num.is_zero():
      object.__setattr__(self, "num", Poly())
      object.__setattr__(self, "den", Poly((1,)))
      return
    g = fp_gcd(num, den, p)
    if g.degree > 0:
      num = fp_divmod(num, g, p)[0]
      den = fp_divmod(den, g, p)[0]
    lc, den = fp_monic(den, p)
    if lc != 1:
      num = fp_scale(num, fp_inverse(lc, p), p)
    object.__setattr__(self, "num", num)
    object.__setattr__(self, "den", den)

  @property
  def carrier(self) -> FunctionField:
    return self.field

  @property
  def p(self) -> int:
    return self.field.p

  def is_zero(self) -> bool:
    return self.num.is_zero()

  def __add__(self, other: FfElem) -> FfElem:
    p = self.p
    num = fp_add(fp_mul(self.num, other.den, p), fp_mul(other.num, self.den, p), p)
    return FfElem(self.field, num, fp_mul(self.den, other.den, p))

  def __sub__(self, other: FfElem) -> FfElem:
    return self + (-other)

  def __neg__(self) -> FfElem:
    return FfElem(self.field, fp_sub(Poly(), self.num, self.p), self.den)

  def __mul__(self, other: FfElem) -> FfElem:
    p = self.p
    return FfElem(self.field, fp_mul(self.num, other.num, p), fp_mul(self.den, other.den, p))

  def inverse(self) -> FfElem:
    if self.is_zero():
      raise ZeroElement("0 has no inverse")
    return FfElem(self.field, self.den, self.num)

  def __truediv__(self, other: FfElem) -> FfElem:
    return self * other.inverse()

  def __pow__(self, k: int) -> FfElem:
    if k < 0:
      return self.inverse() ** (-k)
    result = FfElem(self.field, Poly((1,)))
    base = self
    while k:
      if k & 1:
        result = result * base
      base = base * base
      k >>= 1
    return result

  @property
  def degree(self) -> int:
    """deg num - deg den: minus the valuation at infinity."""
    return self.num.degree - self.den.degree

  def render(self) -> str:
    num = self.num.render("t")
    if self.den.degree == 0:
      return num
    return f"({num})/({self.den.render('t')})"


FieldElem = QElem | NfElem | FfElem


def embed_rational(carrier: Carrier, value: Fraction | int) -> FieldElem:
  q = Fraction(value)
  match carrier:
    case RationalsQ():
      return QElem(q)
    case QuadraticField() | NumberField():
      return NfElem(carrier, (q,))
    case FunctionField(p):
      if q.denominator % p == 0:
        raise ZeroElement(f"{render_rational(q)} is not defined in characteristic {p}")
      return FfElem(carrier, Poly.constant(q.numerator * fp_inverse(q.denominator, p) % p))


def generator(carrier: Carrier) -> FieldElem:
  """α for number fields (√d for quadratic fields), t for function fields."""
  match carrier:
    case RationalsQ():
      raise ValueError("Q has no adjoined generator")
    case QuadraticField() | NumberField():
      return NfElem(carrier, (Fraction(0), Fraction(1)))
    case FunctionField():
      return FfElem(carrier, Poly.x())


def require_nonzero(elems: list[FieldElem] | tuple[FieldElem, ...]) -> None:
  for index, elem in enumerate(elems):
    if elem.is_zero():
      raise ZeroElement(f"element {index + 1} is zero")
