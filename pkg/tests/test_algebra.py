from __future__ import annotations

import math
import random
from fractions import Fraction

import pytest

from gvf_toolkit.algebra import (
  BigFloat,
  ComplexBall,
  NotSquarefree,
  Poly,
  complex_roots,
  evaluate_at,
  factor_int,
  factor_poly_fp,
  fp_is_irreducible,
  fp_reduce,
  hensel_lift,
  is_squarefree_int,
  mahler_measure,
  p_adic_valuation,
  parse_rational,
  poly_product,
  prime_divisors,
  render_rational,
  resultant,
)


def test_factor_int_sorts_primes_and_ignores_sign() -> None:
  assert factor_int(-360) == [(2, 3), (3, 2), (5, 1)]
  assert prime_divisors(12, 35, 1, -1) == [2, 3, 5, 7]
  with pytest.raises(ValueError):
    factor_int(0)


def test_p_adic_valuation_of_rationals() -> None:
  assert p_adic_valuation(Fraction(12, 35), 2) == 2
  assert p_adic_valuation(Fraction(12, 35), 5) == -1
  assert p_adic_valuation(Fraction(12, 35), 3) == 1
  assert p_adic_valuation(7, 3) == 0
  with pytest.raises(ValueError):
    p_adic_valuation(0, 2)


def test_squarefree_integers() -> None:
  assert is_squarefree_int(-30)
  assert not is_squarefree_int(12)
  assert not is_squarefree_int(0)


def test_parse_and_render_rationals() -> None:
  assert parse_rational("-7/4") == Fraction(-7, 4)
  assert parse_rational(" 0.25 ") == Fraction(1, 4)
  assert render_rational(Fraction(6, 3)) == "2"
  assert render_rational(Fraction(-1, 3)) == "-1/3"
  with pytest.raises(ValueError, match="not a rational"):
    parse_rational("1/0")


def test_poly_strips_trailing_zeros_and_renders() -> None:
  f = Poly.of(-2, 0, 1, 0, 0)
  assert f.degree == 2
  assert f.is_monic()
  assert f.render() == "x^2 - 2"
  assert Poly.of(1, -3, 0, 2).render("t") == "2*t^3 - 3*t + 1"
  assert Poly().render() == "0"


def test_poly_arithmetic_and_evaluation() -> None:
  x = Poly.x()
  f = (x + 1) ** 2
  assert f == Poly.of(1, 2, 1)
  assert f(Fraction(1, 2)) == Fraction(9, 4)
  q, r = (x**3 - 1).divmod(x - 1)
  assert q == Poly.of(1, 1, 1)
  assert r.is_zero()
  assert (x**2 - 1).gcd(x**2 + 2 * x + 1) == x + 1
  assert poly_product([x - 1, x + 1]) == x**2 - 1


def test_resultant_matches_norm_of_quadratic_integer() -> None:
  # N(1 + sqrt 2) = 1 - 2 = -1 is Res(x^2 - 2, 1 + x) up to sign.
  f = Poly.of(-2, 0, 1)
  g = Poly.of(1, 1)
  assert resultant(f, g) == -1
  assert resultant(f, Poly.of(3, 0, 1), modulus=7) == 25 % 7


def test_factor_poly_fp_returns_sorted_irreducibles() -> None:
  # x^4 - 1 over F_5 splits into linear factors.
  f = Poly.of(-1, 0, 0, 0, 1)
  factors = factor_poly_fp(f, 5)
  assert [g.degree for g, _ in factors] == [1, 1, 1, 1]
  assert all(fp_is_irreducible(g, 5) and m == 1 for g, m in factors)
  assert fp_reduce(poly_product(g for g, _ in factors), 5) == fp_reduce(f, 5)


def test_factor_poly_fp_keeps_multiplicities() -> None:
  # (x + 1)^2 (x^2 + 1) over F_3, where x^2 + 1 is irreducible.
  f = Poly.of(1, 1) ** 2 * Poly.of(1, 0, 1)
  factors = factor_poly_fp(f, 3)
  assert factors == [(Poly.of(1, 1), 2), (Poly.of(1, 0, 1), 1)]


def test_hensel_lift_refines_factors_modulo_prime_powers() -> None:
  f = Poly.of(-2, 0, 1)
  # x^2 - 2 = (x - 3)(x + 3) mod 7.
  lifted = hensel_lift(f, [Poly.of(-3, 1), Poly.of(3, 1)], 7, 3)
  modulus = 7**3
  product = fp_reduce(lifted[0] * lifted[1], modulus)
  assert product == fp_reduce(f, modulus)


def test_hensel_lift_rejects_repeated_factors() -> None:
  with pytest.raises(NotSquarefree):
    hensel_lift(Poly.of(-2, 0, 1), [Poly.of(0, 1), Poly.of(0, 1)], 2, 2)


def test_bigfloat_log_and_sqrt_balls() -> None:
  log2 = BigFloat.log_of(2)
  lo, hi = log2.bounds()
  assert lo <= Fraction(math.log(2)) + Fraction(1, 10**15)
  assert hi >= Fraction(math.log(2)) - Fraction(1, 10**15)
  assert log2.radius_fraction() < Fraction(1, 2**200)
  root = BigFloat.sqrt_of(2)
  assert abs(float(root) - math.sqrt(2)) < 1e-15
  assert BigFloat.from_rational(Fraction(1, 4)).is_exact()
  assert not BigFloat.from_rational(Fraction(1, 3)).is_exact()


def test_bigfloat_sign_tests() -> None:
  third = BigFloat.from_rational(Fraction(1, 3))
  assert (third - Fraction(1, 3)).contains_zero()
  assert (third - Fraction(1, 4)).certainly_positive()
  assert (-third).certainly_negative()
  assert BigFloat.minimum(third, -third).certainly_negative()


def test_complex_roots_of_cyclotomic_polynomial() -> None:
  roots = complex_roots(Poly.of(1, 1, 1))
  assert len(roots) == 2
  assert not any(box.is_real for box in roots)
  assert {roots[0].conjugate, roots[1].conjugate} == {0, 1}
  for box in roots:
    assert abs(float(box.re) + 0.5) < 1e-30
    assert abs(abs(float(box.im)) - math.sqrt(3) / 2) < 1e-15


def test_complex_roots_of_cubic() -> None:
  roots = complex_roots(Poly.of(-2, 0, 0, 1))
  assert sum(box.is_real for box in roots) == 1
  real = next(box for box in roots if box.is_real)
  assert abs(float(real.re) - 2 ** (1 / 3)) < 1e-15


@pytest.mark.parametrize(
  ("coeffs", "expected"),
  [
    ((-2, 0, 1), math.log(2)),
    ((1, 1, 1), 0.0),
    ((-1, -1, 1), math.log((1 + math.sqrt(5)) / 2)),
    ((1, 0, 2), math.log(2)),
  ],
)
def test_mahler_measure(coeffs: tuple[int, ...], expected: float) -> None:
  assert abs(float(mahler_measure(Poly.of(*coeffs))) - expected) < 1e-15


def random_poly(rng: random.Random, degree: int, bound: int = 9, *, monic: bool = True) -> Poly:
  coeffs = [rng.randint(-bound, bound) for _ in range(degree)]
  lead = 1 if monic else rng.choice([c for c in range(-bound, bound + 1) if c])
  return Poly.of(*coeffs, lead)


def test_resultant_is_product_over_certified_roots(rng: random.Random) -> None:
  checked = 0
  while checked < 40:
    f = random_poly(rng, rng.randint(2, 4))
    if not f.is_squarefree():
      continue
    g = random_poly(rng, rng.randint(1, 3), monic=False)
    product = ComplexBall.from_real(1)
    for box in complex_roots(f):
      product = product * evaluate_at(g.coeffs, box.ball)
    expected = resultant(f, g)
    assert (product.re - expected).contains_zero(), (f, g)
    assert product.im.contains_zero(), (f, g)
    checked += 1


@pytest.mark.parametrize("p", [2, 3, 5, 7, 101])
def test_factor_poly_fp_multiplies_back(p: int, rng: random.Random) -> None:
  for _ in range(60):
    f = random_poly(rng, rng.randint(1, 8), bound=p)
    factors = factor_poly_fp(f, p)
    assert all(fp_is_irreducible(g, p) and g.is_monic() for g, _ in factors)
    product = poly_product(g**m for g, m in factors)
    assert fp_reduce(product, p) == fp_reduce(f, p)


def test_bigfloat_balls_contain_their_four_fold_refinement(rng: random.Random) -> None:
  for _ in range(200):
    value = Fraction(rng.randint(1, 10**9), rng.randint(1, 10**9))
    for make in (BigFloat.log_of, BigFloat.sqrt_of, BigFloat.from_rational):
      coarse = make(value, 64)
      fine = make(value, 256)
      assert (coarse - fine).contains_zero(), (make, value)
    if value > 1:
      coarse = (BigFloat.log_of(value, 64) * BigFloat.sqrt_of(value, 64)).log()
      fine = (BigFloat.log_of(value, 256) * BigFloat.sqrt_of(value, 256)).log()
      assert (coarse - fine).contains_zero(), value


def test_root_boxes_contain_their_four_fold_refinement() -> None:
  for f in (Poly.of(-2, 0, 0, 1), Poly.of(1, 1, 1), Poly.of(-1, -1, 0, 1), Poly.of(3, -1, 2, 0, 1)):
    coarse = complex_roots(f, 64)
    fine = complex_roots(f, 256)
    assert len(coarse) == len(fine)
    for low, high in zip(coarse, fine, strict=True):
      assert (low.re - high.re).contains_zero()
      assert (low.im - high.im).contains_zero()


def test_roots_of_polynomials_with_huge_coefficients() -> None:
  # x^3 + x - 10^400: one real root near 10^(400/3), beyond the range of a float coefficient.
  f = Poly.of(-(10**400), 1, 0, 1)
  roots = complex_roots(f)
  assert len(roots) == 3
  real = next(box for box in roots if box.is_real)
  assert abs(float(real.re) / 10 ** (400 / 3) - 1) < 1e-12
  assert abs(float(mahler_measure(f)) - 400 * math.log(10)) < 1e-9
