"""Certified complex root isolation and Mahler measures.

Roots are found with Aberth's simultaneous iteration at a working precision, then certified with
Weierstrass-correction inclusion disks: for approximations z_1..z_n of the roots of f, of degree
n, every root lies in some disk |z - z_i| <= n·|f(z_i) / (lc · ∏_{j≠i}(z_i - z_j))|,
and a connected union of k disks holds exactly k roots. Pairwise disjoint disks therefore isolate
one root each. When certification fails the working precision doubles until the budget runs out.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from libsh import get_logger
from mpmath.libmp import (
  fone,
  fzero,
  from_rational,
  mpc_add,
  mpc_div,
  mpc_is_nonzero,
  mpc_mul,
  mpc_sub,
  mpf_abs,
  mpf_cos_sin,
  mpf_hypot,
  mpf_le,
  mpf_lt,
  mpf_neg,
  mpf_shift,
  mpf_sub,
  round_floor,
  round_nearest,
)

from gvf_toolkit.exceptions import PrecisionExhausted

from .bigfloat import (
  DEFAULT_PRECISION,
  MAX_PRECISION,
  RADIUS_PRECISION,
  BigFloat,
  ComplexBall,
  MpfTuple,
  evaluate_at,
  radius_of_int,
  radius_product,
  radius_quotient,
  radius_sum,
)
from .polynomials import Poly

_logger = get_logger(__name__)

type MpcTuple = tuple[MpfTuple, MpfTuple]

GUARD_BITS = 32
MAX_ITERATIONS = 600
ORDER_GRID = 1 << 40


@dataclass(frozen=True, slots=True)
class RootBox:
  """A certified box around exactly one root.

  `conjugate` is the index of the box holding the complex conjugate root (itself for real roots).
  """

  ball: ComplexBall
  is_real: bool
  conjugate: int

  @property
  def re(self) -> BigFloat:
    return self.ball.re

  @property
  def im(self) -> BigFloat:
    return self.ball.im


def _mpc_coeff(c: int | Fraction, prec: int) -> MpcTuple:
  q = Fraction(c)
  return from_rational(q.numerator, q.denominator, prec, round_nearest), fzero


def _horner_with_derivative(
  coeffs: list[MpcTuple], z: MpcTuple, prec: int
) -> tuple[MpcTuple, MpcTuple]:
  """Evaluate f and f' at z; `coeffs` is highest degree first."""
  value = coeffs[0]
  deriv: MpcTuple = (fzero, fzero)
  for c in coeffs[1:]:
    deriv = mpc_add(mpc_mul(deriv, z, prec), value, prec)
    value = mpc_add(mpc_mul(value, z, prec), c, prec)
  return value, deriv


def _initial_points(f: Poly, prec: int) -> list[MpcTuple]:
  n = f.degree
  lead = abs(Fraction(f.leading))
  # Fujiwara-style radius: 2^e with 2^(e·(n-k)) above every |c_k / lc|, in integer bit lengths.
  radius_exp = 0
  for k in range(n):
    c = abs(Fraction(f.coeff(k))) / lead
    if c:
      bits = c.numerator.bit_length() - c.denominator.bit_length() + 1
      radius_exp = max(radius_exp, -(-bits // (n - k)))
  points: list[MpcTuple] = []
  for k in range(n):
    turns = Fraction(2 * k, n) + Fraction(1, 7)
    cos, sin = mpf_cos_sin(
      from_rational(turns.numerator, turns.denominator, prec, round_nearest),
      prec,
      round_nearest,
      0,
      True,
    )
    points.append((mpf_shift(cos, radius_exp), mpf_shift(sin, radius_exp)))
  return points


def _aberth(f: Poly, points: list[MpcTuple], prec: int) -> list[MpcTuple]:
  coeffs = [_mpc_coeff(c, prec) for c in reversed(f.coeffs)]
  zs = list(points)
  n = len(zs)
  tolerance = mpf_shift(fone, -(prec // 2))
  polish = 2
  one: MpcTuple = (fone, fzero)
  for _ in range(MAX_ITERATIONS):
    largest_step = fzero
    for i in range(n):
      value, deriv = _horner_with_derivative(coeffs, zs[i], prec)
      if not mpc_is_nonzero(value):
        continue
      if not mpc_is_nonzero(deriv):
        # Nudge off a critical point.
        nudge = mpf_shift(fone, -(prec // 2))
        zs[i] = mpc_add(zs[i], (nudge, nudge), prec)
        largest_step = fone
        continue
      newton = mpc_div(value, deriv, prec)
      repulsion: MpcTuple = (fzero, fzero)
      for j in range(n):
        if j == i:
          continue
        gap = mpc_sub(zs[i], zs[j], prec)
        if mpc_is_nonzero(gap):
          repulsion = mpc_add(repulsion, mpc_div(one, gap, prec), prec)
      denom = mpc_sub(one, mpc_mul(newton, repulsion, prec), prec)
      step = mpc_div(newton, denom, prec) if mpc_is_nonzero(denom) else newton
      zs[i] = mpc_sub(zs[i], step, prec)
      size = mpf_hypot(step[0], step[1], RADIUS_PRECISION)
      scale = mpf_hypot(zs[i][0], zs[i][1], RADIUS_PRECISION)
      relative = size if mpf_lt(scale, fone) else radius_quotient(size, scale)
      if mpf_lt(largest_step, relative):
        largest_step = relative
    if mpf_lt(largest_step, tolerance):
      # Convergence is cubic; a couple more sweeps reach the working precision.
      if polish == 0:
        break
      polish -= 1
  return zs


def _distance_lower(a: MpcTuple, b: MpcTuple) -> MpfTuple:
  re = mpf_sub(a[0], b[0])
  im = mpf_sub(a[1], b[1])
  return mpf_hypot(re, im, RADIUS_PRECISION, round_floor)


def _inclusion_radii(f: Poly, zs: list[MpcTuple], prec: int) -> list[MpfTuple] | None:
  n = f.degree
  lead = abs(Fraction(f.leading))
  lead_lower = from_rational(lead.numerator, lead.denominator, RADIUS_PRECISION, round_floor)
  balls = [ComplexBall(BigFloat(z[0], fzero, prec), BigFloat(z[1], fzero, prec)) for z in zs]
  radii: list[MpfTuple] = []
  for i, z in enumerate(balls):
    value = evaluate_at(f.coeffs, z)
    product = ComplexBall.from_real(1, prec)
    for j, w in enumerate(balls):
      if j != i:
        product = product * (z - w)
    denom = product.abs_squared().sqrt_lower()
    if not mpf_lt(fzero, denom):
      return None
    numer = value.abs_squared().sqrt_upper()
    radii.append(
      radius_quotient(radius_product(radius_of_int(n), numer), radius_product(lead_lower, denom))
    )
  return radii


def _classify(
  zs: list[MpcTuple], radii: list[MpfTuple], prec: int
) -> list[RootBox] | None:
  n = len(zs)
  for i in range(n):
    for j in range(i + 1, n):
      if not mpf_lt(radius_sum(radii[i], radii[j]), _distance_lower(zs[i], zs[j])):
        return None

  boxes: list[RootBox] = []
  for i, z in enumerate(zs):
    mirror: MpcTuple = (z[0], mpf_neg(z[1]))
    partners = [
      j
      for j in range(n)
      if j != i
      and not mpf_lt(radius_sum(radii[i], radii[j]), _distance_lower(mirror, zs[j]))
    ]
    touches_axis = not mpf_lt(radii[i], mpf_abs(z[1]))
    re = BigFloat(z[0], radii[i], prec)
    if touches_axis and not partners:
      boxes.append(RootBox(ComplexBall(re, BigFloat.zero(prec)), True, i))
    elif not touches_axis and len(partners) == 1:
      boxes.append(RootBox(ComplexBall(re, BigFloat(z[1], radii[i], prec)), False, partners[0]))
    else:
      return None
  return boxes


def _grid(value: BigFloat) -> int:
  # Coarse key so the order does not flip with sub-ulp noise between precisions.
  return round(value.to_fraction() * ORDER_GRID)


def _order(boxes: list[RootBox]) -> list[RootBox]:
  """Real roots ascending, then conjugate pairs by real part with the upper root first."""
  reals = sorted((b for b in boxes if b.is_real), key=lambda b: _grid(b.re))
  uppers = sorted(
    (b for b in boxes if not b.is_real and b.im.certainly_positive()),
    key=lambda b: (_grid(b.re), _grid(b.im)),
  )
  ordered: list[RootBox] = [RootBox(b.ball, True, k) for k, b in enumerate(reals)]
  for upper in uppers:
    k = len(ordered)
    ordered.append(RootBox(upper.ball, False, k + 1))
    ordered.append(RootBox(upper.ball.conjugate(), False, k))
  return ordered


def _pure_quadratic_roots(f: Poly, prec: int) -> list[RootBox]:
  value = -Fraction(f.coeff(0)) / Fraction(f.leading)
  s = BigFloat.sqrt_of(abs(value), prec)
  zero = BigFloat.zero(prec)
  if value > 0:
    return [
      RootBox(ComplexBall(-s, zero), True, 0),
      RootBox(ComplexBall(s, zero), True, 1),
    ]
  return [
    RootBox(ComplexBall(zero, s), False, 1),
    RootBox(ComplexBall(zero, -s), False, 0),
  ]


def complex_roots(
  f: Poly, prec: int = DEFAULT_PRECISION, *, max_precision: int = MAX_PRECISION
) -> list[RootBox]:
  """Certified, pairwise disjoint boxes around the roots of a squarefree f over ℚ."""
  if f.degree < 1:
    raise ValueError("complex_roots needs a polynomial of degree at least 1")
  if f.degree == 1:
    root = -Fraction(f.coeff(0)) / Fraction(f.leading)
    return [RootBox(ComplexBall.from_real(root, prec), True, 0)]
  if not f.is_squarefree():
    raise ValueError(f"{f} is not squarefree")
  if f.degree == 2 and f.coeff(1) == 0:
    return _pure_quadratic_roots(f, prec)

  working = prec + GUARD_BITS
  points = _initial_points(f, working)
  while working <= max_precision + GUARD_BITS:
    points = _aberth(f, points, working)
    radii = _inclusion_radii(f, points, working)
    boxes = _classify(points, radii, prec) if radii is not None else None
    if boxes is not None:
      _logger.debug("root boxes certified", degree=f.degree, precision=working)
      return _order(boxes)
    _logger.debug("root certification failed, doubling precision", precision=working)
    working *= 2
  raise PrecisionExhausted(f"could not certify the roots of {f} within {max_precision} bits")


def mahler_measure(f: Poly, prec: int = DEFAULT_PRECISION) -> BigFloat:
  """log M(f) = log|lc| + Σ log max(1, |ρ|) over the roots ρ of f."""
  total = BigFloat.log_of(abs(Fraction(f.leading)), prec)
  zero = BigFloat.zero(prec)
  for box in complex_roots(f, prec):
    if mpf_le(box.ball.abs_squared().upper(), fone):
      continue
    contribution = box.ball.abs_squared().log() * Fraction(1, 2)
    total = total - BigFloat.minimum(-contribution, zero)
  return total
