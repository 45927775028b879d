from __future__ import annotations

from dataclasses import dataclass
from enum import StrEnum
from fractions import Fraction

from gvf_toolkit.algebra import BigFloat
from gvf_toolkit.divisors import PointSpec, PointTemplate
from gvf_toolkit.exceptions import InputError
from gvf_toolkit.gvf import GvfValue
from gvf_toolkit.places import DEFAULT_POLICY, PrecisionPolicy


class CandidateClass(StrEnum):
  RATIONAL = "rational"
  QUADRATIC = "quadratic"
  CYCLOTOMIC = "cyclotomic"
  CUSTOM = "custom"


class SearchMode(StrEnum):
  FIRST = "first"
  EXHAUSTIVE = "exhaustive"


@dataclass(frozen=True, slots=True)
class SearchBounds:
  """Finite bounds for every candidate class.

  rational bounds max(|a|, b) for a/b. quadratic_d bounds |d| for ℚ(√d) and quadratic_height
  bounds max(|a|, |b|, c) for (a + b√d)/c. cyclotomic_order is the largest k with Φ_k enumerated.
  Custom roots come from monic integer polynomials of degree 2..custom_degree with coefficients
  in [-custom_coeff, custom_coeff].
  """

  rational: int = 10
  quadratic_d: int = 5
  quadratic_height: int = 2
  cyclotomic_order: int = 6
  custom_degree: int = 3
  custom_coeff: int = 2

  def __post_init__(self) -> None:
    if min(self.rational, self.quadratic_d, self.quadratic_height, self.custom_coeff) < 1:
      raise InputError("search bounds must be positive")
    if self.cyclotomic_order < 1:
      raise InputError("cyclotomic order bound must be at least 1")
    if not 2 <= self.custom_degree <= 3:
      raise InputError("custom roots have degree 2 or 3")


@dataclass(frozen=True, slots=True)
class HeightTarget:
  """A template h_D together with the value r it should approximate."""

  template: PointTemplate
  target: BigFloat
  text: str = ""

  def render_target(self) -> str:
    return self.text or self.target.render(20)


@dataclass(frozen=True, slots=True)
class SearchInstance:
  targets: tuple[HeightTarget, ...]
  eps: Fraction
  variables: tuple[str, ...] = ("y",)
  equations: tuple[str, ...] = ()
  inequation: str | None = None
  classes: frozenset[CandidateClass] = frozenset({CandidateClass.RATIONAL})
  bounds: SearchBounds = SearchBounds()
  seed: int | None = 0
  threads: int = 1
  mode: SearchMode = SearchMode.EXHAUSTIVE
  policy: PrecisionPolicy = DEFAULT_POLICY

  def __post_init__(self) -> None:
    if self.eps <= 0:
      raise InputError("eps must be positive")
    if not self.targets:
      raise InputError("a search needs at least one height target")
    if not self.classes:
      raise InputError("enable at least one candidate class")
    if self.threads < 1:
      raise InputError("threads must be at least 1")
    if not self.variables:
      raise InputError("a search needs at least one point variable")
    for target in self.targets:
      unknown = set(target.template.variables) - set(self.variables)
      if unknown:
        raise InputError(f"template uses undeclared variables: {', '.join(sorted(unknown))}")


@dataclass(frozen=True, slots=True)
class Evaluation:
  """One admissible candidate: its heights and certified upper bounds on |h_i(x) - r_i|."""

  index: int
  point: PointSpec
  heights: tuple[GvfValue, ...]
  deviations: tuple[Fraction, ...]

  @property
  def max_deviation(self) -> Fraction:
    return max(self.deviations)

  def is_hit(self, eps: Fraction) -> bool:
    return self.max_deviation < eps


@dataclass(frozen=True, slots=True)
class SearchResult:
  best: Evaluation
  hits: tuple[Evaluation, ...]
  examined: int
  admissible: int
  elapsed: float
  mode: SearchMode

  @property
  def point(self) -> PointSpec:
    return self.best.point

  @property
  def achieved(self) -> tuple[GvfValue, ...]:
    return self.best.heights

  @property
  def max_deviation(self) -> Fraction:
    return self.best.max_deviation


@dataclass(frozen=True, slots=True)
class TraceEntry:
  index: int
  point: PointSpec
  height: GvfValue


@dataclass(frozen=True, slots=True)
class ZetaEstimate:
  """Running minimum of h_D over the enumerated candidates outside the excluded set.

  `estimate` is an upper bound for the infimum over the enumerated family only.
  """

  template: PointTemplate
  exclusions: tuple[str, ...]
  trace: tuple[TraceEntry, ...]
  examined: int
  admissible: int

  @property
  def estimate(self) -> GvfValue | None:
    return self.trace[-1].height if self.trace else None

  @property
  def witness(self) -> PointSpec | None:
    return self.trace[-1].point if self.trace else None


@dataclass(frozen=True, slots=True)
class SearchSettings:
  """Fallbacks for whatever a search or zeta document leaves out."""

  bounds: SearchBounds = SearchBounds()
  classes: frozenset[CandidateClass] = frozenset({CandidateClass.RATIONAL})
  seed: int | None = 0
  threads: int = 1
  mode: SearchMode = SearchMode.EXHAUSTIVE


@dataclass(frozen=True, slots=True)
class ZetaRequest:
  template: PointTemplate
  exclusions: tuple[str, ...] = ()
  classes: frozenset[CandidateClass] = frozenset({CandidateClass.RATIONAL})
  bounds: SearchBounds = SearchBounds()
  seed: int | None = 0
  threads: int = 1
