"""Instance documents (JSON or YAML) and verdict documents.

    version: 1
    generators: ["2", "y"]
    divisors:
      - {term: "x2", target: "0"}
      - {term: "-1*min(x2,0)", target: "log(3)"}
    atoms:
      - {values: ["1", "0"], kind: finite, prime: 2}
      - {values: ["-0.693147", "0"], kind: archimedean, error: "1e-6"}
    points:
      - {field: "Q", point: {y: "3"}}
    eps: "1e-9"
    objective: "-1*min(x2,0)"

Targets are rationals plus ℚ-combinations of log p, e.g. "1/2*log(2) - log(3) + 1".
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path
from typing import Any, Literal

import sympy
import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError
from sympy.core.function import AppliedUndef
from sympy.parsing.sympy_parser import (
  convert_xor,
  parse_expr,
  rationalize,
  standard_transformations,
)

from gvf_toolkit.algebra import render_rational
from gvf_toolkit.divisors import PointSpec, decode_point
from gvf_toolkit.exceptions import PayloadError
from gvf_toolkit.gvf import LogCombination
from gvf_toolkit.places import DEFAULT_POLICY, PrecisionPolicy, decode_field
from gvf_toolkit.places.codec import RationalText
from gvf_toolkit.tropical import TropTerm, parse

from .atoms import atoms_from_points
from .logs import DEFAULT_LOG_BITS, LogTable
from .solver import check_certificate
from .types import (
  AtomClass,
  DivisorTarget,
  FeasibilityInstance,
  FeasibilityVerdict,
  ValuationAtom,
)

_LOG = sympy.Function("log")
_TRANSFORMATIONS = (*standard_transformations, convert_xor, rationalize)
_GLOBALS: dict[str, object] = {
  "Integer": sympy.Integer,
  "Rational": sympy.Rational,
  "Float": sympy.Float,
  "Symbol": sympy.Symbol,
}


def _fraction(value: sympy.Expr, text: str) -> Fraction:
  if not isinstance(value, sympy.Rational):
    raise PayloadError(f"target {text!r}: {value} is not rational")
  return Fraction(int(value.p), int(value.q))


def parse_target(text: str) -> tuple[Fraction, LogCombination]:
  """Split "r + Σ c·log(q)" into its rational part and its log combination."""
  try:
    expr = parse_expr(
      text,
      local_dict={"log": _LOG},
      global_dict=dict(_GLOBALS),
      transformations=_TRANSFORMATIONS,
    )
  except (SyntaxError, TypeError, ValueError, NameError, AttributeError) as exc:
    raise PayloadError(f"cannot parse target {text!r}: {exc}") from exc
  if not isinstance(expr, sympy.Expr) or expr.free_symbols:
    raise PayloadError(f"target {text!r} must be a number or a combination of logs")
  value = Fraction(0)
  logs = LogCombination()
  for term in sympy.Add.make_args(expr):
    coeff, rest = term.as_coeff_Mul()
    if rest == 1:
      value += _fraction(coeff, text)
    elif isinstance(rest, AppliedUndef) and rest.func == _LOG and len(rest.args) == 1:
      argument = _fraction(rest.args[0], text)
      if argument <= 0:
        raise PayloadError(f"target {text!r} takes the log of a non-positive number")
      logs = logs + LogCombination.log_of(argument) * _fraction(coeff, text)
    else:
      raise PayloadError(f"target {text!r}: cannot read the term {term}")
  return value, logs


class AtomDocument(BaseModel):
  model_config = ConfigDict(extra="forbid")

  values: list[RationalText]
  kind: AtomClass
  prime: int | None = None
  error: RationalText = Fraction(0)
  label: str = ""


class TargetDocument(BaseModel):
  model_config = ConfigDict(extra="forbid")

  term: str
  target: str = "0"


class PointDocument(BaseModel):
  model_config = ConfigDict(extra="forbid")

  field: Any = "Q"
  point: dict[str, Any]


class InstanceDocument(BaseModel):
  model_config = ConfigDict(extra="forbid")

  version: Literal[1] = 1
  generators: list[str] = Field(min_length=1)
  variables: list[str] | None = None
  divisors: list[TargetDocument] = Field(default_factory=list)
  atoms: list[AtomDocument] = Field(default_factory=list)
  points: list[PointDocument] = Field(default_factory=list)
  eps: RationalText
  normalization: RationalText = Fraction(1)
  objective: str | None = None
  log_bits: int = Field(default=DEFAULT_LOG_BITS, ge=32)


def _load(raw: object) -> object:
  if isinstance(raw, Path):
    raw = raw.read_text(encoding="utf-8")
  if not isinstance(raw, str):
    return raw
  try:
    return yaml.safe_load(raw)
  except yaml.YAMLError as exc:
    raise PayloadError(f"instance is not valid JSON or YAML: {exc}") from exc


def decode_instance(
  raw: object,
  *,
  log_bits: int | None = None,
  policy: PrecisionPolicy = DEFAULT_POLICY,
) -> FeasibilityInstance:
  """Validate an instance document; `points` expand into atoms through their support places."""
  try:
    doc = InstanceDocument.model_validate(_load(raw))
  except ValidationError as exc:
    details = "; ".join(
      f"{'.'.join(str(part) for part in err['loc']) or '<root>'}: {err['msg']}"
      for err in exc.errors()
    )
    raise PayloadError(f"invalid feasibility instance: {details}") from exc
  bits = log_bits if log_bits is not None else doc.log_bits
  atoms = [ValuationAtom(tuple(a.values), a.kind, a.prime, a.error, a.label) for a in doc.atoms]
  if doc.points:
    points: list[PointSpec] = []
    for item in doc.points:
      carrier = decode_field(item.field)
      points.append(decode_point(carrier, item.point))
    atoms += atoms_from_points(
      doc.generators, points, variables=doc.variables, table=LogTable(bits), policy=policy
    )
  divisors: list[DivisorTarget] = []
  for item in doc.divisors:
    value, logs = parse_target(item.target)
    divisors.append(DivisorTarget(parse(item.term), value, logs))
  objective: TropTerm | None = parse(doc.objective) if doc.objective is not None else None
  return FeasibilityInstance(
    tuple(doc.generators),
    tuple(divisors),
    tuple(atoms),
    doc.eps,
    doc.normalization,
    objective,
    bits,
  )


def _number(value: Fraction) -> dict[str, object]:
  return {"exact": render_rational(value), "decimal": f"{float(value):.17g}"}


def encode_verdict(inst: FeasibilityInstance, verdict: FeasibilityVerdict) -> dict[str, object]:
  """Structured verdict with every weight and multiplier as an exact rational string."""
  payload: dict[str, object] = {
    "version": 1,
    "status": verdict.status.value,
    "eps": render_rational(inst.eps),
    "log_bits": inst.log_bits,
    "perturbation_bound": f"{float(verdict.perturbation_bound):.3e}",
    "pivots": verdict.pivots,
  }
  if verdict.feasible:
    payload["weights"] = [
      {"atom": atom.render(), "weight": render_rational(w)}
      for atom, w in zip(inst.atoms, verdict.weights, strict=True)
      if w != 0
    ]
    if verdict.objective is not None:
      payload["objective"] = _number(verdict.objective)
  elif verdict.certificate is not None:
    cert = verdict.certificate
    payload["certificate"] = [
      {"constraint": c.label, "upper": render_rational(u), "lower": render_rational(lo)}
      for c, u, lo in zip(verdict.constraints, cert.upper, cert.lower, strict=True)
      if u != 0 or lo != 0
    ]
    violation = check_certificate(verdict.constraints, cert, len(inst.atoms))
    payload["violation_lower_bound"] = _number(violation)
  return payload
