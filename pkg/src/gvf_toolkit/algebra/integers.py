"""Integer and rational helpers: factorization, p-adic valuations, squarefreeness."""

from __future__ import annotations

from fractions import Fraction

from sympy import factorint, isprime, multiplicity
from sympy.ntheory import legendre_symbol

Rat = Fraction


def factor_int(n: int) -> list[tuple[int, int]]:
  """Factor |n| into (prime, multiplicity) pairs with strictly increasing primes."""
  if n == 0:
    raise ValueError("cannot factor 0")
  factors: dict[int, int] = factorint(abs(n))
  return sorted((int(p), int(k)) for p, k in factors.items())


def prime_divisors(*values: int) -> list[int]:
  primes: set[int] = set()
  for value in values:
    if value not in (0, 1, -1):
      primes.update(p for p, _ in factor_int(value))
  return sorted(primes)


def int_valuation(n: int, p: int) -> int:
  if n == 0:
    raise ValueError("valuation of 0 is infinite")
  return int(multiplicity(p, abs(n)))


def p_adic_valuation(q: Rat | int, p: int) -> int:
  """v_p of a nonzero rational."""
  value = Fraction(q)
  if value == 0:
    raise ValueError("valuation of 0 is infinite")
  return int_valuation(value.numerator, p) - int_valuation(value.denominator, p)


def is_prime(p: int) -> bool:
  return p >= 2 and bool(isprime(p))


def is_squarefree_int(d: int) -> bool:
  if d == 0:
    return False
  return all(k == 1 for _, k in factor_int(d))


def legendre(a: int, p: int) -> int:
  """Legendre symbol (a/p) for an odd prime p, 0 when p | a."""
  if a % p == 0:
    return 0
  return int(legendre_symbol(a % p, p))


def parse_rational(text: str | int | Fraction) -> Rat:
  """Parse "3", "-7/4" or "0.25" into an exact rational."""
  if isinstance(text, Fraction):
    return text
  if isinstance(text, int):
    return Fraction(text)
  try:
    return Fraction(text.strip())
  except (ValueError, ZeroDivisionError) as exc:
    raise ValueError(f"not a rational number: {text!r}") from exc


def render_rational(q: Rat) -> str:
  if q.denominator == 1:
    return str(q.numerator)
  return f"{q.numerator}/{q.denominator}"
