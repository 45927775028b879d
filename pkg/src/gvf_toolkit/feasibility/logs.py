"""Rational stand-ins for log p and for archimedean balls, each with a rigorous error bound."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from gvf_toolkit.algebra import BigFloat
from gvf_toolkit.gvf import LogCombination

DEFAULT_LOG_BITS = 256


@lru_cache(maxsize=1024)
def log_interval(p: int, bits: int) -> tuple[Fraction, Fraction]:
  """[lo, hi] ∋ log p with endpoints rounded outward to multiples of 2^-bits."""
  lo, hi = BigFloat.log_of(p, bits + 32).bounds()
  scale = 1 << bits
  return Fraction(math.floor(lo * scale), scale), Fraction(math.ceil(hi * scale), scale)


@dataclass(frozen=True, slots=True)
class Approximation:
  value: Fraction
  error: Fraction = Fraction(0)

  def __add__(self, other: Approximation) -> Approximation:
    return Approximation(self.value + other.value, self.error + other.error)

  def __mul__(self, coeff: Fraction) -> Approximation:
    return Approximation(self.value * coeff, self.error * abs(coeff))


@dataclass(frozen=True, slots=True)
class LogTable:
  """Shared symbol table: each prime's log as the midpoint of its directed-rounding interval."""

  bits: int = DEFAULT_LOG_BITS

  def interval(self, p: int) -> tuple[Fraction, Fraction]:
    return log_interval(p, self.bits)

  def log(self, p: int) -> Approximation:
    lo, hi = self.interval(p)
    return Approximation((lo + hi) / 2, (hi - lo) / 2)

  def combination(self, logs: LogCombination) -> Approximation:
    total = Approximation(Fraction(0))
    for p, c in logs.terms:
      total = total + self.log(p) * c
    return total

  def ball(self, value: BigFloat) -> Approximation:
    """Round the midpoint to the table's grid; the error absorbs the radius and the rounding."""
    mid = value.to_fraction()
    scale = 1 << self.bits
    rounded = Fraction(round(mid * scale), scale)
    return Approximation(rounded, value.radius_fraction() + abs(mid - rounded))
