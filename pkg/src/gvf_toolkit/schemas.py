"""Models for the documents the CLI prints under `--json`.

Every line of JSON output is one of: a command summary (picked by its `command` key), an
`{"error": ...}` object, or a zeta trace record. `parse_output_line` validates a line against the
matching model and `dump_output` turns the model back into the plain document.
"""

from __future__ import annotations

import json
from typing import Annotated, Literal

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from gvf_toolkit.config import FeasibilityConfig, SearchConfig
from gvf_toolkit.exceptions import PayloadError


class OutputModel(BaseModel):
  model_config = ConfigDict(extra="forbid", frozen=True)


# --- fields and elements ---


class RationalsDoc(OutputModel):
  type: Literal["Q"]


class QuadraticDoc(OutputModel):
  type: Literal["quadratic"]
  d: int


class NumberFieldDoc(OutputModel):
  type: Literal["number_field"]
  min_poly: list[int]


class FunctionFieldDoc(OutputModel):
  type: Literal["function_field"]
  p: int


FieldDoc = Annotated[
  RationalsDoc | QuadraticDoc | NumberFieldDoc | FunctionFieldDoc, Field(discriminator="type")
]


class QuadraticCoords(OutputModel):
  a: str
  b: str


class PowerBasisCoords(OutputModel):
  coeffs: list[str]


class RationalFunctionDoc(OutputModel):
  num: str
  den: str


ElementDoc = str | QuadraticCoords | PowerBasisCoords | RationalFunctionDoc


# --- values ---


class ValueDoc(OutputModel):
  value: str
  exact: bool
  log_terms: dict[str, str]
  constant: str
  symbolic: str | None = None
  archimedean: str | None = None


class LocalTermDoc(OutputModel):
  place: str
  weight: str
  values: list[str]
  integrand: str


class PlaceDoc(OutputModel):
  label: str
  kind: Literal["finite", "archimedean", "function_finite", "function_infinity"]
  weight: str
  valuations: list[str]
  p: int | None = None
  e: int | None = None
  f: int | None = None
  factor: str | None = None
  embedding: int | None = None
  real: bool | None = None


class IntegralOutput(OutputModel):
  command: Literal["eval", "height"]
  field: FieldDoc
  term: str
  args: list[ElementDoc]
  value: ValueDoc
  places: list[LocalTermDoc]


class PlacesOutput(OutputModel):
  command: Literal["places"]
  field: FieldDoc
  args: list[ElementDoc]
  places: list[PlaceDoc]


# --- checks ---


class ProductOutput(OutputModel):
  command: Literal["check product"]
  field: FieldDoc
  elem: str
  residual: ValueDoc
  holds: bool


class LinearityOutput(OutputModel):
  command: Literal["check linearity"]
  field: FieldDoc
  terms: list[str] = Field(min_length=2, max_length=2)
  alpha: str
  additive_residual: ValueDoc
  homogeneous_residual: ValueDoc
  holds: bool


class PositivityOutput(OutputModel):
  command: Literal["check positivity"]
  field: FieldDoc
  term: str
  status: Literal["premise_holds_nonnegative", "premise_holds_violation", "premise_fails"]
  value: ValueDoc | None
  witnesses: list[str]


class GaloisOutput(OutputModel):
  command: Literal["check galois"]
  field: FieldDoc
  term: str
  args: list[ElementDoc]
  conjugates: list[ElementDoc]
  difference: ValueDoc
  holds: bool


# --- divisors ---


class DivisorDoc(OutputModel):
  generators: list[ElementDoc]
  term: str


class BetaDoc(OutputModel):
  place: str
  beta: str


class DivisorEvalOutput(OutputModel):
  command: Literal["divisor eval"]
  field: FieldDoc
  divisor: DivisorDoc
  value: ValueDoc


class EffectiveOutput(OutputModel):
  command: Literal["divisor effective"]
  field: FieldDoc
  divisor: DivisorDoc
  effective: bool
  evidence: Literal["proven", "sampled"]
  betas: list[BetaDoc]
  witnesses: list[str]


class WedgeOutput(OutputModel):
  command: Literal["divisor wedge"]
  field: FieldDoc
  wedge: DivisorDoc
  value: ValueDoc


class TemplateDoc(OutputModel):
  functions: list[str]
  term: str
  variables: list[str]


class PointHeightOutput(OutputModel):
  command: Literal["point-height"]
  field: FieldDoc
  template: TemplateDoc
  point: dict[str, ElementDoc]
  value: ValueDoc


# --- feasibility ---


class NumberDoc(OutputModel):
  exact: str
  decimal: str


class WeightDoc(OutputModel):
  atom: str
  weight: str


class MultiplierDoc(OutputModel):
  constraint: str
  upper: str
  lower: str


class FeasibilityOutput(OutputModel):
  command: Literal["feasible", "minimize"]
  version: Literal[1]
  status: Literal["feasible", "infeasible"]
  eps: str
  log_bits: int
  perturbation_bound: str
  pivots: int
  weights: list[WeightDoc] | None = None
  objective: NumberDoc | None = None
  certificate: list[MultiplierDoc] | None = None
  violation_lower_bound: NumberDoc | None = None


# --- search ---


class PointRecordDoc(OutputModel):
  field: FieldDoc
  point: dict[str, ElementDoc]
  text: str


class EvaluationDoc(PointRecordDoc):
  index: int
  heights: list[ValueDoc]
  deviations: list[str]
  max_deviation: str


class SearchOutput(OutputModel):
  command: Literal["search"]
  version: Literal[1]
  mode: Literal["first", "exhaustive"]
  eps: str
  targets: list[str]
  examined: int
  admissible: int
  best: EvaluationDoc
  hits: list[EvaluationDoc]


class TraceRecord(PointRecordDoc):
  index: int
  height: ValueDoc


class ZetaOutput(OutputModel):
  command: Literal["zeta"]
  version: Literal[1]
  template: TemplateDoc
  exclusions: list[str]
  examined: int
  admissible: int
  kind: Literal["upper_bound_over_enumerated_points"]
  estimate: ValueDoc | None
  witness: PointRecordDoc | None = None


# --- config and errors ---


class ConfigOutput(OutputModel):
  command: Literal["config"]
  precision: int
  max_precision: int
  hensel_precision: int
  seed: int
  threads: int = Field(ge=1)
  search: SearchConfig
  feasibility: FeasibilityConfig


class ErrorDoc(OutputModel):
  type: str
  message: str
  exit_code: int


class ErrorOutput(OutputModel):
  error: ErrorDoc


COMMAND_MODELS: dict[str, type[OutputModel]] = {
  "eval": IntegralOutput,
  "height": IntegralOutput,
  "places": PlacesOutput,
  "check product": ProductOutput,
  "check linearity": LinearityOutput,
  "check positivity": PositivityOutput,
  "check galois": GaloisOutput,
  "divisor eval": DivisorEvalOutput,
  "divisor effective": EffectiveOutput,
  "divisor wedge": WedgeOutput,
  "point-height": PointHeightOutput,
  "feasible": FeasibilityOutput,
  "minimize": FeasibilityOutput,
  "search": SearchOutput,
  "zeta": ZetaOutput,
  "config": ConfigOutput,
}


def _model_for(data: dict[str, object]) -> type[OutputModel]:
  if "error" in data:
    return ErrorOutput
  command = data.get("command")
  if command is None:
    return TraceRecord
  model = COMMAND_MODELS.get(str(command))
  if model is None:
    raise PayloadError(f"unknown command {command!r} in output")
  return model


def parse_output_line(line: str) -> OutputModel:
  """Validate one line of `--json` output against the model for its kind."""
  try:
    data: object = json.loads(line)
  except json.JSONDecodeError as exc:
    raise PayloadError(f"output line is not JSON: {exc}") from exc
  if not isinstance(data, dict):
    raise PayloadError("output line must be a JSON object")
  model = _model_for(data)  # pyright: ignore[reportUnknownArgumentType]
  try:
    return model.model_validate(data)
  except ValidationError as exc:
    details = "; ".join(
      f"{'.'.join(str(part) for part in err['loc']) or '<root>'}: {err['msg']}"
      for err in exc.errors()
    )
    raise PayloadError(f"invalid {model.__name__}: {details}") from exc


def dump_output(doc: OutputModel) -> dict[str, object]:
  """The plain document again; keys absent from the input stay absent."""
  return doc.model_dump(mode="json", exclude_unset=True)


__all__ = [
  "COMMAND_MODELS",
  "ConfigOutput",
  "ErrorOutput",
  "FeasibilityOutput",
  "IntegralOutput",
  "OutputModel",
  "SearchOutput",
  "TraceRecord",
  "ZetaOutput",
  "dump_output",
  "parse_output_line",
]
