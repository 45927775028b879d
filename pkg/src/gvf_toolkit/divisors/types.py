from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from enum import StrEnum

from gvf_toolkit.gvf import LocalValue, Witness
from gvf_toolkit.places import Carrier, CarrierMismatch, FieldElem, Place, require_nonzero
from gvf_toolkit.tropical import ArityMismatch, TropTerm, Var, arity, render


@dataclass(frozen=True, slots=True)
class LatticeDivisor:
  """t(div(a_1), ..., div(a_n)), kept symbolic as a term over a generator tuple."""

  carrier: Carrier
  generators: tuple[FieldElem, ...]
  term: TropTerm

  def __post_init__(self) -> None:
    needed = arity(self.term)
    if needed > len(self.generators):
      raise ArityMismatch(needed, len(self.generators))
    require_nonzero(self.generators)
    for elem in self.generators:
      if elem.carrier != self.carrier:
        raise CarrierMismatch(f"generator {elem.render()} is not in {self.carrier.label()}")

  @classmethod
  def principal(cls, carrier: Carrier, elem: FieldElem) -> LatticeDivisor:
    return cls(carrier, (elem,), Var(1))

  def render(self) -> str:
    gens = ", ".join(elem.render() for elem in self.generators)
    return f"{render(self.term)} on ({gens})"

  def __str__(self) -> str:
    return self.render()


class Evidence(StrEnum):
  PROVEN = "proven"
  SAMPLED = "sampled"


@dataclass(frozen=True, slots=True)
class BetaValue:
  place: Place
  value: LocalValue


@dataclass(frozen=True, slots=True)
class EffectivityVerdict:
  """β(v, D) ≥ 0 at every checked place, labelled by how much that proves."""

  effective: bool
  evidence: Evidence
  betas: tuple[BetaValue, ...]
  witnesses: tuple[Witness, ...] = ()


@dataclass(frozen=True, slots=True)
class PointSpec:
  """A point given by coordinate values in one carrier, e.g. y = √2 in ℚ(√2)."""

  carrier: Carrier
  coordinates: tuple[tuple[str, FieldElem], ...]

  @classmethod
  def of(cls, carrier: Carrier, coordinates: Mapping[str, FieldElem]) -> PointSpec:
    for name, elem in coordinates.items():
      if elem.carrier != carrier:
        raise CarrierMismatch(f"coordinate {name} is not in {carrier.label()}")
    return cls(carrier, tuple(sorted(coordinates.items(), key=lambda item: item[0])))

  @classmethod
  def single(cls, carrier: Carrier, name: str, elem: FieldElem) -> PointSpec:
    return cls.of(carrier, {name: elem})

  def bindings(self) -> dict[str, FieldElem]:
    return dict(self.coordinates)

  def values(self) -> list[FieldElem]:
    return [elem for _, elem in self.coordinates]

  def render(self) -> str:
    return ", ".join(f"{name} = {elem.render()}" for name, elem in self.coordinates)

  def __str__(self) -> str:
    return self.render()


@dataclass(frozen=True, slots=True)
class PointTemplate:
  """Rational functions f_i in the point variables together with a term t over (f_1, ..., f_n).

  `functions` keeps the source text of each f_i; `variables` lists the point variable names.
  """

  functions: tuple[str, ...]
  variables: tuple[str, ...]
  term: TropTerm

  def __post_init__(self) -> None:
    needed = arity(self.term)
    if needed > len(self.functions):
      raise ArityMismatch(needed, len(self.functions))

  @classmethod
  def of(
    cls, functions: Sequence[str], term: TropTerm, variables: Sequence[str] = ("y",)
  ) -> PointTemplate:
    return cls(tuple(functions), tuple(variables), term)

  def render(self) -> str:
    return f"{render(self.term)} on ({', '.join(self.functions)})"
