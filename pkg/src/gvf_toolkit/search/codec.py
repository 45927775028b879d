"""Search and zeta documents (JSON or YAML) and their result records.

    version: 1
    variables: [y]
    targets:
      - {functions: [y], term: "-1*min(x1,0)", target: "log(2)"}
    equations: ["y^2 - 2"]
    eps: "1e-9"
    classes: [rational, quadratic]
    bounds: {rational: 10, quadratic_d: 5}
    mode: exhaustive

A zeta document carries one `template` plus `exclusions` instead of targets and equations.
"""

from __future__ import annotations

from dataclasses import replace
from fractions import Fraction
from pathlib import Path
from typing import Literal

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from gvf_toolkit.algebra import BigFloat, render_rational
from gvf_toolkit.divisors import (
  PointSpec,
  encode_point,
  encode_template,
  make_template,
)
from gvf_toolkit.exceptions import PayloadError
from gvf_toolkit.feasibility import parse_target
from gvf_toolkit.gvf import GvfValue
from gvf_toolkit.places import DEFAULT_POLICY, PrecisionPolicy, encode_field
from gvf_toolkit.places.codec import RationalText

from .types import (
  CandidateClass,
  Evaluation,
  HeightTarget,
  SearchBounds,
  SearchInstance,
  SearchMode,
  SearchResult,
  SearchSettings,
  TraceEntry,
  ZetaEstimate,
  ZetaRequest,
)


class BoundsDocument(BaseModel):
  model_config = ConfigDict(extra="forbid")

  rational: int | None = None
  quadratic_d: int | None = None
  quadratic_height: int | None = None
  cyclotomic_order: int | None = None
  custom_degree: int | None = None
  custom_coeff: int | None = None

  def to_bounds(self, defaults: SearchBounds) -> SearchBounds:
    return replace(defaults, **self.model_dump(exclude_none=True))


class TargetDocument(BaseModel):
  model_config = ConfigDict(extra="forbid")

  functions: list[str] = Field(min_length=1)
  term: str
  target: str


class TemplateDocument(BaseModel):
  model_config = ConfigDict(extra="forbid")

  functions: list[str] = Field(min_length=1)
  term: str


class SearchDocument(BaseModel):
  model_config = ConfigDict(extra="forbid")

  version: Literal[1] = 1
  variables: list[str] = Field(default_factory=lambda: ["y"], min_length=1)
  targets: list[TargetDocument] = Field(min_length=1)
  equations: list[str] = Field(default_factory=list)
  inequation: str | None = None
  eps: RationalText
  classes: list[CandidateClass] | None = None
  bounds: BoundsDocument = Field(default_factory=BoundsDocument)
  seed: int | None = None
  threads: int | None = Field(default=None, ge=1)
  mode: SearchMode | None = None


class ZetaDocument(BaseModel):
  model_config = ConfigDict(extra="forbid")

  version: Literal[1] = 1
  variables: list[str] = Field(default_factory=lambda: ["y"], min_length=1)
  template: TemplateDocument
  exclusions: list[str] = Field(default_factory=list)
  classes: list[CandidateClass] | None = None
  bounds: BoundsDocument = Field(default_factory=BoundsDocument)
  seed: int | None = None
  threads: int | None = Field(default=None, ge=1)


def _load(raw: object) -> object:
  if isinstance(raw, Path):
    raw = raw.read_text(encoding="utf-8")
  if not isinstance(raw, str):
    return raw
  try:
    return yaml.safe_load(raw)
  except yaml.YAMLError as exc:
    raise PayloadError(f"document is not valid JSON or YAML: {exc}") from exc


def _validate[M: BaseModel](model: type[M], what: str, raw: object) -> M:
  try:
    return model.model_validate(_load(raw))
  except ValidationError as exc:
    details = "; ".join(
      f"{'.'.join(str(part) for part in err['loc']) or '<root>'}: {err['msg']}"
      for err in exc.errors()
    )
    raise PayloadError(f"invalid {what}: {details}") from exc


def target_value(text: str, prec: int) -> BigFloat:
  """A target such as "0.6931", "log(2)" or "1/2*log(3) - 1" as a ball at `prec` bits."""
  value, logs = parse_target(text)
  return logs.numeric(prec) + value


def decode_search(
  raw: object,
  *,
  defaults: SearchSettings = SearchSettings(),
  policy: PrecisionPolicy = DEFAULT_POLICY,
) -> SearchInstance:
  """Validate a search document; settings it leaves out come from `defaults`."""
  doc = _validate(SearchDocument, "search instance", raw)
  targets = tuple(
    HeightTarget(
      make_template(item.functions, item.term, doc.variables),
      target_value(item.target, policy.bits),
      item.target,
    )
    for item in doc.targets
  )
  return SearchInstance(
    targets=targets,
    eps=doc.eps,
    variables=tuple(doc.variables),
    equations=tuple(doc.equations),
    inequation=doc.inequation,
    classes=frozenset(doc.classes) if doc.classes is not None else defaults.classes,
    bounds=doc.bounds.to_bounds(defaults.bounds),
    seed=doc.seed if doc.seed is not None else defaults.seed,
    threads=doc.threads if doc.threads is not None else defaults.threads,
    mode=doc.mode if doc.mode is not None else defaults.mode,
    policy=policy,
  )


def decode_zeta(raw: object, *, defaults: SearchSettings = SearchSettings()) -> ZetaRequest:
  doc = _validate(ZetaDocument, "zeta instance", raw)
  return ZetaRequest(
    template=make_template(doc.template.functions, doc.template.term, doc.variables),
    exclusions=tuple(doc.exclusions),
    classes=frozenset(doc.classes) if doc.classes is not None else defaults.classes,
    bounds=doc.bounds.to_bounds(defaults.bounds),
    seed=doc.seed if doc.seed is not None else defaults.seed,
    threads=doc.threads if doc.threads is not None else defaults.threads,
  )


def _decimal(value: Fraction) -> str:
  return f"{float(value):.6e}"


def encode_point_record(point: PointSpec) -> dict[str, object]:
  return {
    "field": encode_field(point.carrier),
    "point": encode_point(point),
    "text": point.render(),
  }


def _height(value: GvfValue) -> dict[str, object]:
  return value.to_payload(20)


def encode_evaluation(ev: Evaluation) -> dict[str, object]:
  return {
    "index": ev.index,
    **encode_point_record(ev.point),
    "heights": [_height(h) for h in ev.heights],
    "deviations": [_decimal(d) for d in ev.deviations],
    "max_deviation": _decimal(ev.max_deviation),
  }


def encode_result(inst: SearchInstance, result: SearchResult) -> dict[str, object]:
  """Result document; wall time stays out so repeated runs compare byte for byte."""
  return {
    "version": 1,
    "mode": result.mode.value,
    "eps": render_rational(inst.eps),
    "targets": [t.render_target() for t in inst.targets],
    "examined": result.examined,
    "admissible": result.admissible,
    "best": encode_evaluation(result.best),
    "hits": [encode_evaluation(ev) for ev in result.hits],
  }


def encode_trace_entry(entry: TraceEntry) -> dict[str, object]:
  return {
    "index": entry.index,
    **encode_point_record(entry.point),
    "height": _height(entry.height),
  }


def encode_zeta(estimate: ZetaEstimate) -> dict[str, object]:
  payload: dict[str, object] = {
    "version": 1,
    "template": encode_template(estimate.template),
    "exclusions": list(estimate.exclusions),
    "examined": estimate.examined,
    "admissible": estimate.admissible,
    "kind": "upper_bound_over_enumerated_points",
  }
  if estimate.estimate is not None and estimate.witness is not None:
    payload["estimate"] = _height(estimate.estimate)
    payload["witness"] = encode_point_record(estimate.witness)
  else:
    payload["estimate"] = None
  return payload
