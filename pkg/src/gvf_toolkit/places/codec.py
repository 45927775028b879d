"""JSON-shaped field descriptors and element payloads.

Field descriptors: {"type": "Q"}, {"type": "quadratic", "d": -1},
{"type": "number_field", "min_poly": [-2, 0, 1]} (lowest degree first),
{"type": "function_field", "p": 7}.

Elements: a rational or expression string ("12/35", "1 + sqrt(2)", "t^3+2*t"), an integer,
{"a": "1/2", "b": "3"} for a + b√d, {"coeffs": ["0", "1"]} in the power basis, or
{"num": "t^3+2*t", "den": "t+1"} for function fields.
"""

from __future__ import annotations

import json
from collections.abc import Mapping, Sequence
from fractions import Fraction
from typing import Annotated, Literal

from pydantic import (
  BaseModel,
  ConfigDict,
  Field,
  PlainSerializer,
  PlainValidator,
  TypeAdapter,
  ValidationError,
  field_validator,
)

from gvf_toolkit.algebra import Poly, parse_rational, render_rational
from gvf_toolkit.exceptions import PayloadError

from .elements import FfElem, FieldElem, NfElem, QElem
from .expressions import FUNCTION_FIELD_SYMBOL, evaluate_expression, parse_element, parse_expression
from .types import RATIONALS, Carrier, FunctionField, NumberField, QuadraticField, RationalsQ


def _rational(value: object) -> Fraction:
  if isinstance(value, bool) or not isinstance(value, (str, int, Fraction)):
    raise ValueError(f"expected a rational string or integer, got {value!r}")
  return parse_rational(value)


RationalText = Annotated[
  Fraction,
  PlainValidator(_rational),
  PlainSerializer(render_rational, return_type=str),
]


# --- fields ---


class RationalsDescriptor(BaseModel):
  model_config = ConfigDict(extra="forbid", frozen=True)

  type: Literal["Q"]

  def to_carrier(self) -> Carrier:
    return RATIONALS


class QuadraticDescriptor(BaseModel):
  model_config = ConfigDict(extra="forbid", frozen=True)

  type: Literal["quadratic"]
  d: int

  def to_carrier(self) -> Carrier:
    return QuadraticField(self.d)


class NumberFieldDescriptor(BaseModel):
  model_config = ConfigDict(extra="forbid", frozen=True)

  type: Literal["number_field"]
  min_poly: list[int]
  trust_irreducible: bool = False

  @field_validator("min_poly", mode="after")
  @classmethod
  def _validate_min_poly(cls, value: list[int]) -> list[int]:
    if len(value) < 3:
      raise ValueError("min_poly needs degree at least 2 (three or more coefficients)")
    if value[-1] != 1:
      raise ValueError("min_poly must be monic (last coefficient 1)")
    return value

  def to_carrier(self) -> Carrier:
    return NumberField(Poly(tuple(self.min_poly)), trust_irreducible=self.trust_irreducible)


class FunctionFieldDescriptor(BaseModel):
  model_config = ConfigDict(extra="forbid", frozen=True)

  type: Literal["function_field"]
  p: int

  def to_carrier(self) -> Carrier:
    return FunctionField(self.p)


AnyFieldDescriptor = (
  RationalsDescriptor | QuadraticDescriptor | NumberFieldDescriptor | FunctionFieldDescriptor
)
FieldDescriptor = Annotated[AnyFieldDescriptor, Field(discriminator="type")]

_FIELD_ADAPTER: TypeAdapter[AnyFieldDescriptor] = TypeAdapter(FieldDescriptor)


def _load(raw: object) -> object:
  """Accept already-decoded payloads or JSON text; non-JSON text is returned unchanged."""
  if not isinstance(raw, str):
    return raw
  try:
    return json.loads(raw)
  except json.JSONDecodeError:
    return raw


def _payload_error(what: str, exc: ValidationError) -> PayloadError:
  details = "; ".join(
    f"{'.'.join(str(part) for part in err['loc']) or '<root>'}: {err['msg']}"
    for err in exc.errors()
  )
  return PayloadError(f"invalid {what}: {details}")


def decode_field(raw: object) -> Carrier:
  data = _load(raw)
  if isinstance(data, str):
    # Shorthand: "Q".
    data = {"type": data}
  try:
    descriptor = _FIELD_ADAPTER.validate_python(data)
  except ValidationError as exc:
    raise _payload_error("field descriptor", exc) from exc
  return descriptor.to_carrier()


def encode_field(carrier: Carrier) -> dict[str, object]:
  match carrier:
    case RationalsQ():
      return {"type": "Q"}
    case QuadraticField(d):
      return {"type": "quadratic", "d": d}
    case NumberField(min_poly):
      return {"type": "number_field", "min_poly": min_poly.to_ints()}
    case FunctionField(p):
      return {"type": "function_field", "p": p}


# --- elements ---


class QuadraticPayload(BaseModel):
  model_config = ConfigDict(extra="forbid")

  a: RationalText = Fraction(0)
  b: RationalText = Fraction(0)


class CoeffsPayload(BaseModel):
  model_config = ConfigDict(extra="forbid")

  coeffs: list[RationalText]


class FractionPayload(BaseModel):
  model_config = ConfigDict(extra="forbid")

  num: str
  den: str = "1"


def _decode_mapping(carrier: Carrier, data: Mapping[str, object]) -> FieldElem:
  try:
    if "num" in data or "den" in data:
      if not isinstance(carrier, FunctionField):
        raise PayloadError(f"num/den elements need a function field, not {carrier.label()}")
      payload = FractionPayload.model_validate(data)
      names = [FUNCTION_FIELD_SYMBOL]
      num = evaluate_expression(parse_expression(payload.num, names), carrier)
      den = evaluate_expression(parse_expression(payload.den, names), carrier)
      return num / den  # type: ignore[operator]
    if "coeffs" in data:
      payload_c = CoeffsPayload.model_validate(data)
      match carrier:
        case QuadraticField() | NumberField():
          if len(payload_c.coeffs) > carrier.degree:
            raise PayloadError(
              f"{carrier.label()} takes at most {carrier.degree} coefficients, "
              f"got {len(payload_c.coeffs)}"
            )
          return NfElem(carrier, tuple(payload_c.coeffs))
        case RationalsQ():
          if len(payload_c.coeffs) != 1:
            raise PayloadError("elements of Q take exactly one coefficient")
          return QElem(payload_c.coeffs[0])
        case FunctionField():
          raise PayloadError("function-field elements use num/den")
    if not isinstance(carrier, QuadraticField):
      raise PayloadError(f"a/b elements need a quadratic field, not {carrier.label()}")
    payload_q = QuadraticPayload.model_validate(data)
    return NfElem(carrier, (payload_q.a, payload_q.b))
  except ValidationError as exc:
    raise _payload_error("element", exc) from exc


def decode_element(carrier: Carrier, raw: object) -> FieldElem:
  data = _load(raw)
  match data:
    case bool():
      raise PayloadError(f"not an element: {data!r}")
    case int():
      return parse_element(str(data), carrier)
    case str():
      return parse_element(data, carrier)
    case Mapping():
      return _decode_mapping(carrier, data)  # type: ignore[arg-type]
    case _:
      raise PayloadError(f"not an element: {data!r}")


def _split_top_level(text: str) -> list[str]:
  parts: list[str] = []
  depth = 0
  start = 0
  for index, char in enumerate(text):
    if char in "([{":
      depth += 1
    elif char in ")]}":
      depth -= 1
    elif char == "," and depth == 0:
      parts.append(text[start:index])
      start = index + 1
  parts.append(text[start:])
  return [part.strip() for part in parts if part.strip()]


def decode_elements(carrier: Carrier, raw: object) -> list[FieldElem]:
  """A JSON array of elements, a single element, or comma-separated element texts."""
  data = _load(raw)
  if isinstance(data, list):
    return [decode_element(carrier, item) for item in data]
  if isinstance(data, str):
    return [decode_element(carrier, part) for part in _split_top_level(data)]
  return [decode_element(carrier, data)]


def encode_element(elem: FieldElem) -> object:
  match elem:
    case QElem(value):
      return render_rational(value)
    case NfElem(field=QuadraticField()):
      return {"a": render_rational(elem.a), "b": render_rational(elem.b)}
    case NfElem():
      return {"coeffs": [render_rational(c) for c in elem.coeffs]}
    case FfElem():
      return {"num": elem.num.render("t"), "den": elem.den.render("t")}


def encode_elements(elems: Sequence[FieldElem]) -> list[object]:
  return [encode_element(elem) for elem in elems]
