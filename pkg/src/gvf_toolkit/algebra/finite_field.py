"""Polynomials over 𝔽_p: factorization and the handful of ring operations function fields need.

Polynomials are `Poly` values with integer coefficients in [0, p). Internally we hand sympy's
galoistools dense lists (highest degree first) and convert back at the boundary.
"""

from __future__ import annotations

import random
from collections.abc import Sequence

from sympy.polys.domains import ZZ
from sympy.polys.galoistools import (
  gf_add,
  gf_ddf_zassenhaus,
  gf_degree,
  gf_div,
  gf_from_int_poly,
  gf_gcd,
  gf_gcdex,
  gf_irreducible_p,
  gf_monic,
  gf_mul,
  gf_pow_mod,
  gf_quo,
  gf_sqf_list,
  gf_sub,
  gf_sub_ground,
)

from .polynomials import Poly

type Dense = list[int]


def _dense(f: Poly, p: int) -> Dense:
  return [int(c) for c in gf_from_int_poly(f.to_dense(), p)]


def _poly(dense: Sequence[int]) -> Poly:
  return Poly.from_dense([int(c) for c in dense])


def fp_reduce(f: Poly, p: int) -> Poly:
  return f.reduce_mod(p)


def fp_add(f: Poly, g: Poly, p: int) -> Poly:
  return _poly(gf_add(_dense(f, p), _dense(g, p), p, ZZ))


def fp_sub(f: Poly, g: Poly, p: int) -> Poly:
  return _poly(gf_sub(_dense(f, p), _dense(g, p), p, ZZ))


def fp_mul(f: Poly, g: Poly, p: int) -> Poly:
  return _poly(gf_mul(_dense(f, p), _dense(g, p), p, ZZ))


def fp_divmod(f: Poly, g: Poly, p: int) -> tuple[Poly, Poly]:
  if fp_reduce(g, p).is_zero():
    raise ZeroDivisionError("division by the zero polynomial over F_p")
  q, r = gf_div(_dense(f, p), _dense(g, p), p, ZZ)
  return _poly(q), _poly(r)


def fp_gcd(f: Poly, g: Poly, p: int) -> Poly:
  """Monic gcd; gcd(0, 0) is 0."""
  return _poly(gf_gcd(_dense(f, p), _dense(g, p), p, ZZ))


def fp_inverse(a: int, p: int) -> int:
  if a % p == 0:
    raise ZeroDivisionError(f"0 has no inverse modulo {p}")
  return pow(a, -1, p)


def fp_monic(f: Poly, p: int) -> tuple[int, Poly]:
  """Split f into (leading coefficient, monic part)."""
  lc, monic = gf_monic(_dense(f, p), p, ZZ)
  return int(lc), _poly(monic)


def fp_scale(f: Poly, c: int, p: int) -> Poly:
  return Poly(tuple(x * c for x in f.to_ints())).reduce_mod(p)


def fp_is_irreducible(f: Poly, p: int) -> bool:
  dense = _dense(f, p)
  if gf_degree(dense) < 1:
    return False
  return bool(gf_irreducible_p(dense, p, ZZ))


def fp_gcdex(f: Poly, g: Poly, p: int) -> tuple[Poly, Poly, Poly]:
  s, t, h = gf_gcdex(_dense(f, p), _dense(g, p), p, ZZ)
  return _poly(s), _poly(t), _poly(h)


def _random_dense(degree_below: int, p: int, rng: random.Random) -> Dense:
  coeffs = [rng.randrange(p) for _ in range(degree_below)]
  while coeffs and coeffs[0] == 0:
    coeffs.pop(0)
  return coeffs


def _split_equal_degree(f: Dense, n: int, p: int, rng: random.Random) -> list[Dense]:
  """Cantor–Zassenhaus splitting of a monic squarefree f whose factors all have degree n."""
  degree = gf_degree(f)
  if degree <= n:
    return [f]
  while True:
    r = _random_dense(degree, p, rng)
    if gf_degree(r) < 1:
      continue
    if p == 2:
      # Absolute trace of r into F_2 for the degree-n residue fields.
      h = r
      power = r
      for _ in range(n - 1):
        power = gf_pow_mod(power, 2, f, p, ZZ)
        h = gf_add(h, power, p, ZZ)
      g = gf_gcd(f, h, p, ZZ)
    else:
      h = gf_pow_mod(r, (p**n - 1) // 2, f, p, ZZ)
      g = gf_gcd(f, gf_sub_ground(h, ZZ.one, p, ZZ), p, ZZ)
    if 0 < gf_degree(g) < degree:
      rest = gf_quo(f, g, p, ZZ)
      return _split_equal_degree(g, n, p, rng) + _split_equal_degree(rest, n, p, rng)


def _factor_key(item: tuple[Poly, int]) -> tuple[int, tuple[int, ...], int]:
  poly, mult = item
  return poly.degree, tuple(poly.to_ints()), mult


def factor_poly_fp(f: Poly, p: int, *, seed: int = 0) -> list[tuple[Poly, int]]:
  """Factor f over 𝔽_p into monic irreducibles with multiplicities.

  Squarefree decomposition, then distinct-degree, then randomized equal-degree splitting. The
  seed only changes how quickly factors split; the output is sorted by (degree, coefficients).
  """
  dense = _dense(f, p)
  if not dense:
    raise ValueError("cannot factor the zero polynomial")
  rng = random.Random(seed)
  _lc, parts = gf_sqf_list(dense, p, ZZ)
  found: list[tuple[Poly, int]] = []
  for part, multiplicity in parts:
    part_dense = [int(c) for c in part]
    for block, degree in gf_ddf_zassenhaus(part_dense, p, ZZ):
      block_dense = [int(c) for c in block]
      for piece in _split_equal_degree(block_dense, int(degree), p, rng):
        found.append((_poly(piece), int(multiplicity)))
  return sorted(found, key=_factor_key)
