from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True, slots=True)
class Var:
  index: int

  def __post_init__(self) -> None:
    if self.index < 1:
      raise ValueError(f"variable indices start at 1, got {self.index}")


@dataclass(frozen=True, slots=True)
class Zero:
  pass


@dataclass(frozen=True, slots=True)
class Scale:
  coeff: Fraction
  body: TropTerm


@dataclass(frozen=True, slots=True)
class Add:
  left: TropTerm
  right: TropTerm


@dataclass(frozen=True, slots=True)
class Min:
  args: tuple[TropTerm, ...]

  def __post_init__(self) -> None:
    if len(self.args) < 2:
      raise ValueError("min needs at least two arguments")


TropTerm = Var | Zero | Scale | Add | Min

ZERO = Zero()
