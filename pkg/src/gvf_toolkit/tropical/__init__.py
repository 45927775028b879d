from __future__ import annotations

from .evaluate import (
  TropValue,
  arity,
  contains_min,
  evaluate,
  evaluate_mixed,
  evaluate_with,
  height_term,
  rename,
  render,
  sample_term,
  shift,
  tuple_height_term,
  variables,
)
from .exceptions import ArityMismatch, ConstantError, TermSyntaxError
from .parser import parse
from .types import ZERO, Add, Min, Scale, TropTerm, Var, Zero

__all__ = [
  # evaluate
  "TropValue",
  "arity",
  "contains_min",
  "evaluate",
  "evaluate_mixed",
  "evaluate_with",
  "height_term",
  "rename",
  "render",
  "sample_term",
  "shift",
  "tuple_height_term",
  "variables",
  # exceptions
  "ArityMismatch",
  "ConstantError",
  "TermSyntaxError",
  # parser
  "parse",
  # types
  "ZERO",
  "Add",
  "Min",
  "Scale",
  "TropTerm",
  "Var",
  "Zero",
]
