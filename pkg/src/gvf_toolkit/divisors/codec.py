"""Divisor, template and point payloads.

Divisor: {"generators": ["4", "6"], "term": "min(x1,x2)"}.
Template: {"functions": ["y", "1-y"], "term": "min(x1,x2)", "variables": ["y"]} (variables are
inferred when omitted).
Point: {"y": "2"} or {"y": {"a": "0", "b": "1"}}, decoded in a given carrier.
"""

from __future__ import annotations

import json
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from gvf_toolkit.exceptions import PayloadError
from gvf_toolkit.places import Carrier, decode_element, encode_element
from gvf_toolkit.tropical import parse, render

from .points import make_template
from .types import LatticeDivisor, PointSpec, PointTemplate


def _load(raw: object) -> object:
  if not isinstance(raw, str):
    return raw
  try:
    return json.loads(raw)
  except json.JSONDecodeError as exc:
    raise PayloadError(f"expected a JSON document: {exc}") from exc


def _errors(what: str, exc: ValidationError) -> PayloadError:
  details = "; ".join(
    f"{'.'.join(str(part) for part in err['loc']) or '<root>'}: {err['msg']}"
    for err in exc.errors()
  )
  return PayloadError(f"invalid {what}: {details}")


class DivisorPayload(BaseModel):
  model_config = ConfigDict(extra="forbid")

  generators: list[Any] = Field(default_factory=list)
  term: str


class TemplatePayload(BaseModel):
  model_config = ConfigDict(extra="forbid")

  functions: list[str]
  term: str
  variables: list[str] | None = None

  @field_validator("functions", mode="after")
  @classmethod
  def _non_empty(cls, value: list[str]) -> list[str]:
    if not value:
      raise ValueError("a template needs at least one function")
    return value


def decode_divisor(carrier: Carrier, raw: object) -> LatticeDivisor:
  try:
    payload = DivisorPayload.model_validate(_load(raw))
  except ValidationError as exc:
    raise _errors("divisor", exc) from exc
  generators = tuple(decode_element(carrier, item) for item in payload.generators)
  return LatticeDivisor(carrier, generators, parse(payload.term))


def encode_divisor(divisor: LatticeDivisor) -> dict[str, object]:
  return {
    "generators": [encode_element(elem) for elem in divisor.generators],
    "term": render(divisor.term),
  }


def decode_template(raw: object) -> PointTemplate:
  try:
    payload = TemplatePayload.model_validate(_load(raw))
  except ValidationError as exc:
    raise _errors("template", exc) from exc
  return make_template(payload.functions, payload.term, payload.variables)


def encode_template(template: PointTemplate) -> dict[str, object]:
  return {
    "functions": list(template.functions),
    "term": render(template.term),
    "variables": list(template.variables),
  }


def decode_point(carrier: Carrier, raw: object) -> PointSpec:
  data = _load(raw)
  if not isinstance(data, dict) or not data:
    raise PayloadError("a point is a non-empty object mapping variable names to elements")
  coordinates = {str(name): decode_element(carrier, value) for name, value in data.items()}
  return PointSpec.of(carrier, coordinates)


def encode_point(point: PointSpec) -> dict[str, object]:
  return {name: encode_element(elem) for name, elem in point.coordinates}
