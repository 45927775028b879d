"""Ball arithmetic on top of mpmath's raw mpf tuples.

Every value is a midpoint plus a radius that bounds the distance to the true value. Midpoints are
rounded to nearest at the ball's working precision; radii are carried at a fixed small precision
and always rounded towards +inf. Nothing here touches `mpmath.mp`, so balls are safe to build from
many threads at once.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from mpmath.libmp import (
  fone,
  fzero,
  from_int,
  from_rational,
  mpf_abs,
  mpf_add,
  mpf_cmp,
  mpf_cos_sin,
  mpf_div,
  mpf_log,
  mpf_lt,
  mpf_mul,
  mpf_neg,
  mpf_shift,
  mpf_sqrt,
  mpf_sub,
  round_ceiling,
  round_floor,
  round_nearest,
  to_float,
  to_man_exp,
  to_rational,
  to_str,
)

from gvf_toolkit.exceptions import PrecisionExhausted

type MpfTuple = tuple[int, int, int, int]
type Scalar = BigFloat | Fraction | int

DEFAULT_PRECISION = 256
MAX_PRECISION = 8192
RADIUS_PRECISION = 64


def _ulp(value: MpfTuple, prec: int) -> MpfTuple:
  """Upper bound on the rounding error of a result rounded to `prec` bits."""
  _sign, man, exp, bc = value
  if not man:
    return fzero
  return mpf_shift(fone, exp + bc - prec)


def _rad_add(*terms: MpfTuple) -> MpfTuple:
  total = fzero
  for term in terms:
    total = mpf_add(total, term, RADIUS_PRECISION, round_ceiling)
  return total


def _rad_mul(a: MpfTuple, b: MpfTuple) -> MpfTuple:
  return mpf_mul(a, b, RADIUS_PRECISION, round_ceiling)


def _rad_max(a: MpfTuple, b: MpfTuple) -> MpfTuple:
  return b if mpf_lt(a, b) else a


def _abs_up(value: MpfTuple) -> MpfTuple:
  return mpf_abs(value, RADIUS_PRECISION, round_ceiling)


@dataclass(frozen=True, slots=True)
class BigFloat:
  """A real ball `mid ± rad` at a working precision of `prec` bits."""

  mid: MpfTuple
  rad: MpfTuple = fzero
  prec: int = DEFAULT_PRECISION

  # --- construction ---

  @classmethod
  def zero(cls, prec: int = DEFAULT_PRECISION) -> BigFloat:
    return cls(fzero, fzero, prec)

  @classmethod
  def from_rational(cls, value: Fraction | int, prec: int = DEFAULT_PRECISION) -> BigFloat:
    q = Fraction(value)
    mid = from_rational(q.numerator, q.denominator, prec, round_nearest)
    if Fraction(*to_rational(mid)) == q:
      return cls(mid, fzero, prec)
    return cls(mid, _ulp(mid, prec), prec)

  @classmethod
  def from_decimal(cls, text: str, prec: int = DEFAULT_PRECISION) -> BigFloat:
    """Parse a decimal string such as "0.6931" or "1e-3" exactly, then round."""
    try:
      q = Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
      raise ValueError(f"not a decimal number: {text!r}") from exc
    return cls.from_rational(q, prec)

  @classmethod
  def log_of(cls, value: Fraction | int, prec: int = DEFAULT_PRECISION) -> BigFloat:
    """Ball around log(value) for a positive rational."""
    q = Fraction(value)
    if q <= 0:
      raise ValueError("log_of needs a positive rational")
    if q == 1:
      return cls.zero(prec)
    return cls.from_rational(q, prec + 16).log().with_precision(prec)

  @classmethod
  def sqrt_of(cls, value: Fraction | int, prec: int = DEFAULT_PRECISION) -> BigFloat:
    q = Fraction(value)
    if q < 0:
      raise ValueError("sqrt_of needs a nonnegative rational")
    arg = cls.from_rational(q, prec + 16)
    mid = mpf_sqrt(arg.mid, prec, round_nearest)
    rad = _ulp(mid, prec)
    if arg.rad != fzero:
      # |sqrt(x) - sqrt(m)| <= r / sqrt(m - r)
      lower = mpf_sub(arg.mid, arg.rad, RADIUS_PRECISION, round_floor)
      if not mpf_lt(fzero, lower):
        raise PrecisionExhausted("sqrt argument ball touches zero")
      root_lower = mpf_sqrt(lower, RADIUS_PRECISION, round_floor)
      rad = _rad_add(rad, mpf_div(arg.rad, root_lower, RADIUS_PRECISION, round_ceiling))
    return cls(mid, rad, prec)

  @classmethod
  def cos_sin_pi(cls, turns: Fraction, prec: int = DEFAULT_PRECISION) -> tuple[BigFloat, BigFloat]:
    """Balls around cos(pi * turns) and sin(pi * turns)."""
    arg = from_rational(turns.numerator, turns.denominator, prec + 16, round_nearest)
    cos, sin = mpf_cos_sin(arg, prec, round_nearest, 0, True)
    slack_c = _rad_add(_ulp(cos, prec), mpf_shift(fone, -prec))
    slack_s = _rad_add(_ulp(sin, prec), mpf_shift(fone, -prec))
    return cls(cos, slack_c, prec), cls(sin, slack_s, prec)

  @staticmethod
  def coerce(value: Scalar, prec: int = DEFAULT_PRECISION) -> BigFloat:
    if isinstance(value, BigFloat):
      return value
    return BigFloat.from_rational(value, prec)

  def with_precision(self, prec: int) -> BigFloat:
    if prec >= self.prec:
      return BigFloat(self.mid, self.rad, prec)
    mid = mpf_add(self.mid, fzero, prec, round_nearest)
    return BigFloat(mid, _rad_add(self.rad, _ulp(mid, prec)), prec)

  # --- inspection ---

  @property
  def mantissa(self) -> int:
    return to_man_exp(self.mid)[0]

  @property
  def exponent(self) -> int:
    return to_man_exp(self.mid)[1]

  def lower(self) -> MpfTuple:
    return mpf_sub(self.mid, self.rad, RADIUS_PRECISION, round_floor)

  def upper(self) -> MpfTuple:
    return mpf_add(self.mid, self.rad, RADIUS_PRECISION, round_ceiling)

  def abs_upper(self) -> MpfTuple:
    return _rad_add(_abs_up(self.mid), self.rad)

  def certainly_negative(self) -> bool:
    return mpf_lt(self.upper(), fzero)

  def certainly_positive(self) -> bool:
    return mpf_lt(fzero, self.lower())

  def contains_zero(self) -> bool:
    return not self.certainly_negative() and not self.certainly_positive()

  def is_exact(self) -> bool:
    return self.rad == fzero

  def to_fraction(self) -> Fraction:
    return Fraction(*to_rational(self.mid))

  def radius_fraction(self) -> Fraction:
    return Fraction(*to_rational(self.rad))

  def bounds(self) -> tuple[Fraction, Fraction]:
    mid = self.to_fraction()
    rad = self.radius_fraction()
    return mid - rad, mid + rad

  def __float__(self) -> float:
    return to_float(self.mid)

  def render(self, digits: int = 30) -> str:
    mid = to_str(self.mid, digits)
    if self.rad == fzero:
      return mid
    return f"{mid} ± {to_str(self.rad, 2)}"

  def __str__(self) -> str:
    return self.render()

  # --- arithmetic ---

  def __neg__(self) -> BigFloat:
    return BigFloat(mpf_neg(self.mid), self.rad, self.prec)

  def __add__(self, other: Scalar) -> BigFloat:
    rhs = BigFloat.coerce(other, self.prec)
    prec = max(self.prec, rhs.prec)
    mid = mpf_add(self.mid, rhs.mid, prec, round_nearest)
    return BigFloat(mid, _rad_add(self.rad, rhs.rad, _ulp(mid, prec)), prec)

  def __radd__(self, other: Scalar) -> BigFloat:
    return self + other

  def __sub__(self, other: Scalar) -> BigFloat:
    return self + (-BigFloat.coerce(other, self.prec))

  def __rsub__(self, other: Scalar) -> BigFloat:
    return BigFloat.coerce(other, self.prec) - self

  def __mul__(self, other: Scalar) -> BigFloat:
    rhs = BigFloat.coerce(other, self.prec)
    prec = max(self.prec, rhs.prec)
    mid = mpf_mul(self.mid, rhs.mid, prec, round_nearest)
    rad = _rad_add(
      _rad_mul(_abs_up(self.mid), rhs.rad),
      _rad_mul(_abs_up(rhs.mid), self.rad),
      _rad_mul(self.rad, rhs.rad),
      _ulp(mid, prec),
    )
    return BigFloat(mid, rad, prec)

  def __rmul__(self, other: Scalar) -> BigFloat:
    return self * other

  def log(self) -> BigFloat:
    """Ball around log(x) for every x in a ball that lies strictly right of zero."""
    lower = self.lower()
    if not mpf_lt(fzero, lower):
      raise PrecisionExhausted("log argument ball touches zero")
    mid = mpf_log(self.mid, self.prec, round_nearest)
    rad = _rad_add(mpf_shift(_ulp(mid, self.prec), 1), mpf_shift(fone, -self.prec))
    if self.rad != fzero:
      rad = _rad_add(rad, mpf_div(self.rad, lower, RADIUS_PRECISION, round_ceiling))
    return BigFloat(mid, rad, self.prec)

  def sqrt_upper(self) -> MpfTuple:
    """Upper bound for sqrt of the ball's upper end (ball assumed nonnegative)."""
    upper = self.upper()
    if mpf_lt(upper, fzero):
      return fzero
    return mpf_sqrt(upper, RADIUS_PRECISION, round_ceiling)

  def sqrt_lower(self) -> MpfTuple:
    lower = self.lower()
    if not mpf_lt(fzero, lower):
      return fzero
    return mpf_sqrt(lower, RADIUS_PRECISION, round_floor)

  @staticmethod
  def minimum(a: BigFloat, b: BigFloat) -> BigFloat:
    """min is 1-Lipschitz in the sup norm, so the larger radius covers both inputs."""
    mid = a.mid if mpf_cmp(a.mid, b.mid) <= 0 else b.mid
    return BigFloat(mid, _rad_max(a.rad, b.rad), max(a.prec, b.prec))


def radius_sum(*terms: MpfTuple) -> MpfTuple:
  return _rad_add(*terms)


def radius_product(a: MpfTuple, b: MpfTuple) -> MpfTuple:
  return _rad_mul(a, b)


def radius_quotient(a: MpfTuple, b: MpfTuple) -> MpfTuple:
  return mpf_div(a, b, RADIUS_PRECISION, round_ceiling)


def radius_of_int(n: int) -> MpfTuple:
  return from_int(n, RADIUS_PRECISION, round_ceiling)


@dataclass(frozen=True, slots=True)
class ComplexBall:
  """Rectangle `re × im` of real balls; used for root boxes and embedding values."""

  re: BigFloat
  im: BigFloat

  @classmethod
  def from_real(cls, value: Scalar, prec: int = DEFAULT_PRECISION) -> ComplexBall:
    return cls(BigFloat.coerce(value, prec), BigFloat.zero(prec))

  @property
  def prec(self) -> int:
    return max(self.re.prec, self.im.prec)

  @property
  def radius(self) -> MpfTuple:
    return _rad_max(self.re.rad, self.im.rad)

  def conjugate(self) -> ComplexBall:
    return ComplexBall(self.re, -self.im)

  def __add__(self, other: ComplexBall) -> ComplexBall:
    return ComplexBall(self.re + other.re, self.im + other.im)

  def __sub__(self, other: ComplexBall) -> ComplexBall:
    return ComplexBall(self.re - other.re, self.im - other.im)

  def __mul__(self, other: ComplexBall) -> ComplexBall:
    return ComplexBall(
      self.re * other.re - self.im * other.im,
      self.re * other.im + self.im * other.re,
    )

  def scale(self, factor: Scalar) -> ComplexBall:
    return ComplexBall(self.re * factor, self.im * factor)

  def abs_squared(self) -> BigFloat:
    return self.re * self.re + self.im * self.im

  def neg_log_abs(self) -> BigFloat:
    """-log|z|, the archimedean valuation of the embedded value."""
    return self.abs_squared().log() * Fraction(-1, 2)

  def render(self, digits: int = 20) -> str:
    if self.im.is_exact() and self.im.mid == fzero:
      return self.re.render(digits)
    return f"({self.re.render(digits)}) + ({self.im.render(digits)})i"


def evaluate_at(coeffs: tuple[Fraction, ...] | tuple[int, ...], z: ComplexBall) -> ComplexBall:
  """Horner evaluation of a lowest-first coefficient vector on a complex ball."""
  prec = z.prec
  acc = ComplexBall.from_real(0, prec)
  for c in reversed(coeffs):
    acc = acc * z + ComplexBall.from_real(c, prec)
  return acc
