from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import StrEnum
from fractions import Fraction

from gvf_toolkit.algebra import is_prime, parse_rational, render_rational
from gvf_toolkit.exceptions import InputError
from gvf_toolkit.gvf import LogCombination
from gvf_toolkit.tropical import ArityMismatch, TropTerm, arity

from .exceptions import MissingGenerator2
from .logs import DEFAULT_LOG_BITS


class AtomClass(StrEnum):
  FINITE = "finite"
  ARCHIMEDEAN = "archimedean"
  FREE = "free"


@dataclass(frozen=True, slots=True)
class ValuationAtom:
  """One sampled valuation, recorded as the vector (v(a_1), ..., v(a_n)).

  A finite atom at p contributes w·log p·t(u), so its weight counts multiples of log p;
  archimedean and free atoms contribute w·t(u). `error` bounds the distance (in the max norm)
  between the stored archimedean entries and the true values they stand in for.
  """

  values: tuple[Fraction, ...]
  kind: AtomClass
  prime: int | None = None
  error: Fraction = Fraction(0)
  label: str = ""
  standard_weight: Fraction | None = None

  def __post_init__(self) -> None:
    if self.kind is AtomClass.FINITE:
      if self.prime is None or not is_prime(self.prime):
        raise InputError(f"finite atom {self.label or self.values} needs a prime")
    elif self.prime is not None:
      raise InputError(f"only finite atoms carry a prime (atom {self.label or self.values})")
    if self.error < 0:
      raise InputError("atom error bound must be nonnegative")

  def render(self) -> str:
    if self.label:
      return self.label
    entries = ", ".join(render_rational(v) for v in self.values)
    suffix = f" @ p={self.prime}" if self.prime is not None else ""
    return f"{self.kind.value}({entries}){suffix}"


@dataclass(frozen=True, slots=True)
class DivisorTarget:
  """Prescribed functional value on t(div(ā)): `value` + Σ c_p·log p."""

  term: TropTerm
  value: Fraction = Fraction(0)
  logs: LogCombination = field(default_factory=LogCombination)

  def render_target(self) -> str:
    if self.logs.is_zero():
      return render_rational(self.value)
    if self.value == 0:
      return self.logs.render()
    return f"{render_rational(self.value)} + {self.logs.render()}".replace("+ -", "- ")


@dataclass(frozen=True, slots=True)
class FeasibilityInstance:
  """Divisor targets over generator expressions, a sampled atom set and a tolerance.

  The functional is normalized by requiring the height-of-2 divisor to take `normalization`·log 2.
  """

  generators: tuple[str, ...]
  divisors: tuple[DivisorTarget, ...]
  atoms: tuple[ValuationAtom, ...]
  eps: Fraction
  normalization: Fraction = Fraction(1)
  objective: TropTerm | None = None
  log_bits: int = DEFAULT_LOG_BITS

  def __post_init__(self) -> None:
    n = len(self.generators)
    if self.eps < 0:
      raise InputError("tolerance must be nonnegative")
    if self.log_bits < 32:
      raise InputError("log precision must be at least 32 bits")
    if not any(atom.kind is AtomClass.ARCHIMEDEAN for atom in self.atoms):
      raise InputError("the atom set needs at least one archimedean atom")
    for atom in self.atoms:
      if len(atom.values) != n:
        raise InputError(f"atom {atom.render()} has {len(atom.values)} entries, expected {n}")
    for target in self.divisors:
      if arity(target.term) > n:
        raise ArityMismatch(arity(target.term), n)
    if self.objective is not None and arity(self.objective) > n:
      raise ArityMismatch(arity(self.objective), n)

  def two_index(self) -> int:
    """Index of the generator equal to the constant 2."""
    for i, text in enumerate(self.generators):
      try:
        if parse_rational(text) == 2:
          return i
      except ValueError:
        continue
    raise MissingGenerator2()

  def with_objective(self, objective: TropTerm) -> FeasibilityInstance:
    return replace(self, objective=objective)


class FeasibilityStatus(StrEnum):
  FEASIBLE = "feasible"
  INFEASIBLE = "infeasible"


@dataclass(frozen=True, slots=True)
class Constraint:
  """lower ≤ coeffs·w ≤ upper over the atom weights."""

  label: str
  coeffs: tuple[Fraction, ...]
  lower: Fraction
  upper: Fraction

  def activity(self, weights: tuple[Fraction, ...]) -> Fraction:
    return sum((c * w for c, w in zip(self.coeffs, weights, strict=True)), Fraction(0))

  def holds(self, weights: tuple[Fraction, ...]) -> bool:
    return self.lower <= self.activity(weights) <= self.upper


@dataclass(frozen=True, slots=True)
class FarkasCertificate:
  """Nonnegative multipliers on `coeffs·w ≤ upper` and `-coeffs·w ≤ -lower`, per constraint.

  Their combination has nonnegative coefficients on every weight and a negative right-hand side,
  so no w ≥ 0 satisfies all constraints.
  """

  upper: tuple[Fraction, ...]
  lower: tuple[Fraction, ...]


@dataclass(frozen=True, slots=True)
class FeasibilityVerdict:
  status: FeasibilityStatus
  constraints: tuple[Constraint, ...]
  perturbation_bound: Fraction
  weights: tuple[Fraction, ...] = ()
  certificate: FarkasCertificate | None = None
  objective: Fraction | None = None
  pivots: int = 0

  @property
  def feasible(self) -> bool:
    return self.status is FeasibilityStatus.FEASIBLE

  def describe(self) -> str:
    if not self.feasible:
      return f"infeasible over {len(self.constraints)} constraints"
    if self.objective is None:
      return "feasible"
    return f"feasible, optimum {render_rational(self.objective)} (~{float(self.objective):.12g})"
