"""Specializing divisor templates to points: h_D(x) = R_t(f_1(x), ..., f_n(x))."""

from __future__ import annotations

import re
from collections.abc import Sequence
from fractions import Fraction
from functools import lru_cache

import sympy

from gvf_toolkit.gvf import GvfValue, r_t
from gvf_toolkit.places import (
  DEFAULT_POLICY,
  FieldElem,
  PrecisionPolicy,
  ZeroElement,
  evaluate_expression,
  parse_expression,
)
from gvf_toolkit.tropical import Add, Scale, TropTerm, height_term, parse

from .exceptions import PointOnSupport
from .types import PointSpec, PointTemplate

_IDENTIFIER = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")
_RESERVED = frozenset({"sqrt", "I"})


def infer_variables(functions: Sequence[str]) -> tuple[str, ...]:
  """Identifiers used in the functions, sorted, excluding sqrt and I."""
  names: set[str] = set()
  for text in functions:
    names.update(_IDENTIFIER.findall(text))
  return tuple(sorted(names - _RESERVED))


def make_template(
  functions: Sequence[str],
  term: TropTerm | str,
  variables: Sequence[str] | None = None,
) -> PointTemplate:
  parsed = parse(term) if isinstance(term, str) else term
  names = tuple(variables) if variables is not None else infer_variables(functions)
  template = PointTemplate(tuple(functions), names, parsed)
  compiled_functions(template)
  return template


def height_template(variable: str = "y") -> PointTemplate:
  """The naive height of the coordinate `variable`."""
  return PointTemplate((variable,), (variable,), height_term())


def height_difference_template(
  f: str, g: str, variables: Sequence[str] | None = None
) -> PointTemplate:
  """Template whose value at x is height(f(x)) - height(g(x))."""
  term = Add(height_term(1), Scale(Fraction(-1), height_term(2)))
  return make_template([f, g], term, variables)


@lru_cache(maxsize=256)
def compiled_functions(template: PointTemplate) -> tuple[sympy.Expr, ...]:
  return tuple(parse_expression(text, template.variables) for text in template.functions)


def specialize(template: PointTemplate, point: PointSpec) -> list[FieldElem]:
  """(f_1(x), ..., f_n(x)), each defined and nonzero, or PointOnSupport."""
  missing = set(template.variables) - {name for name, _ in point.coordinates}
  if missing:
    raise PointOnSupport(0, f"no value for {', '.join(sorted(missing))}")
  bindings = point.bindings()
  values: list[FieldElem] = []
  for index, expr in enumerate(compiled_functions(template)):
    try:
      value = evaluate_expression(expr, point.carrier, bindings)
    except ZeroElement as exc:
      raise PointOnSupport(index, f"{template.functions[index]} is undefined ({exc})") from exc
    if value.is_zero():
      raise PointOnSupport(index, f"{template.functions[index]} vanishes")
    values.append(value)
  return values


def height_at_point(
  template: PointTemplate,
  point: PointSpec,
  policy: PrecisionPolicy = DEFAULT_POLICY,
) -> GvfValue:
  """R_t over the point's carrier at (f_1(x), ..., f_n(x))."""
  return r_t(point.carrier, template.term, specialize(template, point), policy)
