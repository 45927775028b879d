"""Univariate polynomials over ℚ and ℤ, with the few sympy dense routines we lean on."""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction

from sympy import Poly as SympyPoly
from sympy import Symbol
from sympy.polys.densearith import dup_div
from sympy.polys.domains import QQ, ZZ
from sympy.polys.euclidtools import dup_gcd, dup_resultant
from sympy.polys.factortools import dup_zz_hensel_lift
from sympy.polys.galoistools import gf_from_int_poly, gf_mul, gf_sqf_p
from sympy.polys.sqfreetools import dup_sqf_p

from .exceptions import NotSquarefree

type Coeff = int | Fraction


def _normalize_coeff(value: Coeff) -> Coeff:
  if isinstance(value, Fraction) and value.denominator == 1:
    return value.numerator
  if isinstance(value, bool):
    return int(value)
  return value


@dataclass(frozen=True, slots=True)
class Poly:
  """Polynomial with coefficients lowest degree first; trailing zeros stripped."""

  coeffs: tuple[Coeff, ...] = ()

  def __post_init__(self) -> None:
    items = [_normalize_coeff(c) for c in self.coeffs]
    while items and items[-1] == 0:
      items.pop()
    object.__setattr__(self, "coeffs", tuple(items))

  # --- construction ---

  @classmethod
  def of(cls, *coeffs: Coeff) -> Poly:
    return cls(tuple(coeffs))

  @classmethod
  def constant(cls, value: Coeff) -> Poly:
    return cls((value,))

  @classmethod
  def x(cls) -> Poly:
    return cls((0, 1))

  @classmethod
  def from_dense(cls, dense: Sequence[object]) -> Poly:
    """Build from a sympy dense list (highest degree first)."""
    return cls(tuple(_from_domain(c) for c in reversed(dense)))

  @classmethod
  def from_sympy(cls, poly: SympyPoly) -> Poly:
    return cls(tuple(Fraction(str(c)) for c in reversed(poly.all_coeffs())))

  # --- inspection ---

  @property
  def degree(self) -> int:
    return len(self.coeffs) - 1

  @property
  def leading(self) -> Coeff:
    return self.coeffs[-1] if self.coeffs else 0

  def is_zero(self) -> bool:
    return not self.coeffs

  def is_constant(self) -> bool:
    return len(self.coeffs) <= 1

  def is_monic(self) -> bool:
    return self.leading == 1

  def is_integral(self) -> bool:
    return all(isinstance(c, int) for c in self.coeffs)

  def coeff(self, k: int) -> Coeff:
    return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

  def to_ints(self) -> list[int]:
    if not self.is_integral():
      raise ValueError(f"polynomial {self} has non-integer coefficients")
    return [int(c) for c in self.coeffs]

  def to_dense(self) -> list[int]:
    """Integer coefficients highest degree first."""
    return list(reversed(self.to_ints()))

  def to_dense_qq(self) -> list[object]:
    return [_to_qq(c) for c in reversed(self.coeffs)]

  def to_sympy(self, symbol: Symbol) -> SympyPoly:
    return SympyPoly(list(reversed([Fraction(c) for c in self.coeffs])) or [0], symbol, domain="QQ")

  # --- arithmetic over ℚ ---

  def __neg__(self) -> Poly:
    return Poly(tuple(-c for c in self.coeffs))

  def __add__(self, other: Poly | Coeff) -> Poly:
    rhs = other if isinstance(other, Poly) else Poly.constant(other)
    n = max(len(self.coeffs), len(rhs.coeffs))
    return Poly(tuple(self.coeff(k) + rhs.coeff(k) for k in range(n)))

  def __radd__(self, other: Coeff) -> Poly:
    return self + other

  def __sub__(self, other: Poly | Coeff) -> Poly:
    rhs = other if isinstance(other, Poly) else Poly.constant(other)
    return self + (-rhs)

  def __rsub__(self, other: Coeff) -> Poly:
    return Poly.constant(other) - self

  def __mul__(self, other: Poly | Coeff) -> Poly:
    if not isinstance(other, Poly):
      return Poly(tuple(c * other for c in self.coeffs))
    if self.is_zero() or other.is_zero():
      return Poly()
    out: list[Coeff] = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
    for i, a in enumerate(self.coeffs):
      if a == 0:
        continue
      for j, b in enumerate(other.coeffs):
        out[i + j] += a * b
    return Poly(tuple(out))

  def __rmul__(self, other: Coeff) -> Poly:
    return self * other

  def __pow__(self, k: int) -> Poly:
    if k < 0:
      raise ValueError("negative polynomial power")
    result = Poly.constant(1)
    base = self
    while k:
      if k & 1:
        result = result * base
      base = base * base
      k >>= 1
    return result

  def __call__(self, value: Coeff) -> Coeff:
    acc: Coeff = 0
    for c in reversed(self.coeffs):
      acc = acc * value + c
    return _normalize_coeff(acc)

  def derivative(self) -> Poly:
    return Poly(tuple(k * c for k, c in enumerate(self.coeffs) if k > 0))

  def monic(self) -> Poly:
    if self.is_zero():
      return self
    lead = Fraction(self.leading)
    return Poly(tuple(Fraction(c) / lead for c in self.coeffs))

  def reduce_mod(self, m: int) -> Poly:
    """Reduce integer coefficients into [0, m)."""
    return Poly(tuple(c % m for c in self.to_ints()))

  def divmod(self, other: Poly) -> tuple[Poly, Poly]:
    if other.is_zero():
      raise ZeroDivisionError("polynomial division by zero")
    q, r = dup_div(self.to_dense_qq(), other.to_dense_qq(), QQ)
    return Poly.from_dense(q), Poly.from_dense(r)

  def __mod__(self, other: Poly) -> Poly:
    return self.divmod(other)[1]

  def gcd(self, other: Poly) -> Poly:
    """Monic gcd over ℚ."""
    return Poly.from_dense(dup_gcd(self.to_dense_qq(), other.to_dense_qq(), QQ)).monic()

  def is_squarefree(self) -> bool:
    return bool(dup_sqf_p(self.to_dense_qq(), QQ))

  def is_irreducible_over_q(self) -> bool:
    if self.degree < 1:
      return False
    return bool(self.to_sympy(Symbol("x")).is_irreducible)

  # --- rendering ---

  def render(self, var: str = "x") -> str:
    if self.is_zero():
      return "0"
    parts: list[str] = []
    for k in range(self.degree, -1, -1):
      c = self.coeffs[k]
      if c == 0:
        continue
      sign = "-" if c < 0 else "+"
      mag = abs(c)
      if k == 0:
        body = str(mag)
      else:
        mono = var if k == 1 else f"{var}^{k}"
        body = mono if mag == 1 else f"{mag}*{mono}"
      parts.append(f"{sign} {body}")
    text = " ".join(parts)
    return text[2:] if text.startswith("+ ") else "-" + text[2:]

  def __str__(self) -> str:
    return self.render()


def _to_qq(c: Coeff) -> object:
  q = Fraction(c)
  return QQ(q.numerator, q.denominator)


def _from_domain(c: object) -> Coeff:
  if isinstance(c, int):
    return c
  numer = getattr(c, "numerator", None)
  denom = getattr(c, "denominator", None)
  if numer is not None and denom is not None:
    return _normalize_coeff(Fraction(int(numer), int(denom)))
  return int(c)  # type: ignore[call-overload]


def poly_product(factors: Iterable[Poly]) -> Poly:
  result = Poly.constant(1)
  for f in factors:
    result = result * f
  return result


def resultant(f: Poly, g: Poly, modulus: int | None = None) -> Coeff:
  """Res(f, g) = lc(f)^deg g · ∏ g(ρ) over the roots ρ of f.

  With `modulus`, the result is reduced into [0, modulus); resultants are integer polynomials in
  the coefficients, so reducing afterwards agrees with working in ℤ/modulus throughout.
  """
  if f.is_zero():
    raise ValueError("resultant with the zero polynomial")
  if g.is_zero():
    value: Coeff = 0
  elif g.is_constant():
    value = g.leading ** f.degree
  elif f.is_integral() and g.is_integral():
    value = int(dup_resultant(f.to_dense(), g.to_dense(), ZZ))
  else:
    value = _from_domain(dup_resultant(f.to_dense_qq(), g.to_dense_qq(), QQ))
  value = _normalize_coeff(value)
  if modulus is not None:
    if not isinstance(value, int):
      raise ValueError("modular resultant needs integer polynomials")
    return value % modulus
  return value


def hensel_lift(f: Poly, factors: Sequence[Poly], p: int, n: int) -> list[Poly]:
  """Lift monic factors of f mod p to monic factors of f mod p^n, keeping their order."""
  if n < 1:
    raise ValueError("lift precision must be at least 1")
  if not f.is_monic() or not f.is_integral():
    raise ValueError("hensel_lift expects a monic integer polynomial")
  reduced = gf_from_int_poly(f.to_dense(), p)
  if not gf_sqf_p(reduced, p, ZZ):
    raise NotSquarefree(p, f"{f} has a repeated factor")
  product = [1]
  for factor in factors:
    if not factor.is_monic():
      raise ValueError(f"factor {factor} is not monic")
    product = gf_mul(product, gf_from_int_poly(factor.to_dense(), p), p, ZZ)
  if [int(c) for c in product] != [int(c) for c in reduced]:
    raise ValueError(f"factors do not multiply to {f} modulo {p}")
  if n == 1:
    return [factor.reduce_mod(p) for factor in factors]
  modulus = p**n
  lifted = dup_zz_hensel_lift(ZZ(p), f.to_dense(), [fac.to_dense() for fac in factors], n, ZZ)
  return [Poly.from_dense([int(c) for c in dense]).reduce_mod(modulus) for dense in lifted]
