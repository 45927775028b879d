"""Parse algebraic expressions with sympy and evaluate them inside a carrier.

Expressions use `^` or `**` for powers and may divide. `sqrt(d)` (or `I` when d = -1) names the
generator of a quadratic field, `a` the generator of a general number field and `t` the variable
of a function field. Point templates bind further names to field elements.
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from fractions import Fraction

import sympy
from sympy.core.function import AppliedUndef
from sympy.parsing.sympy_parser import (
  convert_xor,
  parse_expr,
  standard_transformations,
)

from gvf_toolkit.exceptions import InputError

from .elements import FieldElem, embed_rational, generator
from .types import Carrier, FunctionField, NumberField, QuadraticField, RationalsQ

_TRANSFORMATIONS = (*standard_transformations, convert_xor)
_SQRT = sympy.Function("sqrt")
_GLOBALS: dict[str, object] = {
  "Integer": sympy.Integer,
  "Rational": sympy.Rational,
  "Float": sympy.Float,
  "Symbol": sympy.Symbol,
}

NUMBER_FIELD_SYMBOL = "a"
FUNCTION_FIELD_SYMBOL = "t"


def generator_name(carrier: Carrier) -> str | None:
  match carrier:
    case NumberField():
      return NUMBER_FIELD_SYMBOL
    case FunctionField():
      return FUNCTION_FIELD_SYMBOL
    case RationalsQ() | QuadraticField():
      return None


def parse_expression(text: str, names: Sequence[str] = ()) -> sympy.Expr:
  """Parse `text`, allowing only the given variable names plus sqrt(...) and I."""
  local: dict[str, object] = {name: sympy.Symbol(name) for name in names}
  local["sqrt"] = _SQRT
  local["I"] = sympy.I
  try:
    expr = parse_expr(
      text, local_dict=local, global_dict=dict(_GLOBALS), transformations=_TRANSFORMATIONS
    )
  except (SyntaxError, TypeError, ValueError, NameError, AttributeError) as exc:
    raise InputError(f"cannot parse expression {text!r}: {exc}") from exc
  if not isinstance(expr, sympy.Expr):
    raise InputError(f"{text!r} is not an algebraic expression")
  unknown = {str(s) for s in expr.free_symbols} - set(names)
  if unknown:
    raise InputError(f"unknown names in {text!r}: {', '.join(sorted(unknown))}")
  return expr


def _sqrt_value(carrier: Carrier, radicand: Fraction) -> FieldElem:
  if isinstance(carrier, QuadraticField):
    if radicand == carrier.d:
      return generator(carrier)
    # sqrt(d*k^2) = k*sqrt(d)
    ratio = radicand / carrier.d
    root = _rational_sqrt(ratio)
    if root is not None and root > 0:
      return generator(carrier) * embed_rational(carrier, root)
  root = _rational_sqrt(radicand)
  if root is not None:
    return embed_rational(carrier, root)
  raise InputError(f"sqrt({radicand}) is not an element of {carrier.label()}")


def _rational_sqrt(q: Fraction) -> Fraction | None:
  if q < 0:
    return None
  num, den = sympy.integer_nthroot(q.numerator, 2), sympy.integer_nthroot(q.denominator, 2)
  if num[1] and den[1]:
    return Fraction(int(num[0]), int(den[0]))
  return None


def _rational(expr: sympy.Expr) -> Fraction:
  return Fraction(int(expr.p), int(expr.q))  # type: ignore[attr-defined]


def evaluate_expression(
  expr: sympy.Expr,
  carrier: Carrier,
  bindings: Mapping[str, FieldElem] | None = None,
) -> FieldElem:
  """Evaluate a parsed expression with exact carrier arithmetic.

  Division by zero raises ZeroElement from the carrier arithmetic.
  """
  bound = dict(bindings or {})
  name = generator_name(carrier)
  if name is not None and name not in bound:
    bound[name] = generator(carrier)

  def walk(node: sympy.Expr) -> FieldElem:
    if node.is_Rational:
      return embed_rational(carrier, _rational(node))
    if node.is_Float:
      raise InputError(f"use exact rationals instead of the decimal {node}")
    if node.is_Symbol:
      key = str(node)
      if key not in bound:
        raise InputError(f"no value bound for {key}")
      return bound[key]
    if node == sympy.I:
      return _sqrt_value(carrier, Fraction(-1))
    if node.is_Add:
      terms = [walk(arg) for arg in node.args]
      total = terms[0]
      for term in terms[1:]:
        total = total + term  # type: ignore[operator]
      return total
    if node.is_Mul:
      factors = [walk(arg) for arg in node.args]
      product = factors[0]
      for factor in factors[1:]:
        product = product * factor  # type: ignore[operator]
      return product
    if node.is_Pow:
      base, exponent = node.args
      if not exponent.is_Integer:
        if exponent == sympy.Rational(1, 2) and base.is_Rational:
          return _sqrt_value(carrier, _rational(base))
        raise InputError(f"only integer powers are supported, got {node}")
      return walk(base) ** int(exponent)  # type: ignore[arg-type]
    if isinstance(node, AppliedUndef) and node.func == _SQRT:
      (radicand,) = node.args
      if not radicand.is_Rational:
        raise InputError(f"sqrt needs a rational argument, got {radicand}")
      return _sqrt_value(carrier, _rational(radicand))
    raise InputError(f"unsupported expression {node}")

  return walk(expr)


def parse_element(text: str, carrier: Carrier) -> FieldElem:
  """Parse a carrier element from text such as "12/35", "1 + sqrt(2)" or "(t^3+1)/(t+2)"."""
  name = generator_name(carrier)
  return evaluate_expression(parse_expression(text, [name] if name else []), carrier)
