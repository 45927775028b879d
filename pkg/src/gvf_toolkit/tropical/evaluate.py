from __future__ import annotations

import random
from collections.abc import Callable, Mapping, Sequence
from fractions import Fraction
from typing import Protocol, Self

from gvf_toolkit.algebra import BigFloat, render_rational

from .exceptions import ArityMismatch
from .types import ZERO, Add, Min, Scale, TropTerm, Var, Zero

TropValue = Fraction | BigFloat


def arity(term: TropTerm) -> int:
  """Largest variable index in the term, 0 if it has none."""
  match term:
    case Var(index):
      return index
    case Zero():
      return 0
    case Scale(_, body):
      return arity(body)
    case Add(left, right):
      return max(arity(left), arity(right))
    case Min(args):
      return max(arity(a) for a in args)


def variables(term: TropTerm) -> set[int]:
  match term:
    case Var(index):
      return {index}
    case Zero():
      return set()
    case Scale(_, body):
      return variables(body)
    case Add(left, right):
      return variables(left) | variables(right)
    case Min(args):
      return set().union(*(variables(a) for a in args))


def contains_min(term: TropTerm) -> bool:
  match term:
    case Var() | Zero():
      return False
    case Scale(_, body):
      return contains_min(body)
    case Add(left, right):
      return contains_min(left) or contains_min(right)
    case Min():
      return True


def _min(a: TropValue, b: TropValue) -> TropValue:
  if isinstance(a, Fraction) and isinstance(b, Fraction):
    return min(a, b)
  prec = max(x.prec for x in (a, b) if isinstance(x, BigFloat))
  return BigFloat.minimum(BigFloat.coerce(a, prec), BigFloat.coerce(b, prec))


class Module(Protocol):
  """Values a term can be evaluated on: a divisible ordered group up to the min operation."""

  def __add__(self, other: Self, /) -> Self: ...

  def __mul__(self, coeff: Fraction, /) -> Self: ...


def evaluate_with[T: Module](
  term: TropTerm,
  values: Sequence[T],
  *,
  zero: T,
  minimum: Callable[[T, T], T],
) -> T:
  """Structural evaluation over any ordered ℚ-vector space given its zero and its min."""
  needed = arity(term)
  if len(values) < needed:
    raise ArityMismatch(needed, len(values))

  def walk(node: TropTerm) -> T:
    match node:
      case Var(index):
        return values[index - 1]
      case Zero():
        return zero
      case Scale(coeff, body):
        return walk(body) * coeff
      case Add(left, right):
        return walk(left) + walk(right)
      case Min(args):
        result = walk(args[0])
        for arg in args[1:]:
          result = minimum(result, walk(arg))
        return result

  return walk(term)


def evaluate_mixed(term: TropTerm, values: Sequence[TropValue]) -> TropValue:
  """Evaluate on exact rationals and/or balls; any ball input makes the result a ball."""
  return evaluate_with(term, values, zero=Fraction(0), minimum=_min)  # type: ignore[arg-type]


def evaluate(term: TropTerm, values: Sequence[Fraction]) -> Fraction:
  """Exact evaluation with min as the ordinary minimum of rationals."""
  result = evaluate_mixed(term, values)
  assert isinstance(result, Fraction)
  return result


def shift(term: TropTerm, offset: int) -> TropTerm:
  """Renumber every variable x_i as x_{i+offset}."""
  return rename(term, lambda index: index + offset)


def rename(term: TropTerm, mapping: Mapping[int, int] | Callable[[int], int]) -> TropTerm:
  lookup = mapping.__getitem__ if isinstance(mapping, Mapping) else mapping
  match term:
    case Var(index):
      return Var(lookup(index))
    case Zero():
      return term
    case Scale(coeff, body):
      return Scale(coeff, rename(body, lookup))
    case Add(left, right):
      return Add(rename(left, lookup), rename(right, lookup))
    case Min(args):
      return Min(tuple(rename(a, lookup) for a in args))


def height_term(index: int = 1) -> TropTerm:
  """-1*min(x_index, 0): the integrand of the height."""
  return Scale(Fraction(-1), Min((Var(index), ZERO)))


def tuple_height_term(count: int) -> TropTerm:
  """-1*min(x1, ..., x_count, 0): the integrand of the affine height of a tuple."""
  args: tuple[TropTerm, ...] = tuple(Var(i) for i in range(1, count + 1)) + (ZERO,)
  return Scale(Fraction(-1), Min(args))


def render(term: TropTerm) -> str:
  """Text that parses back to a structurally equal term."""
  match term:
    case Var(index):
      return f"x{index}"
    case Zero():
      return "0"
    case Scale(coeff, body):
      inner = render(body)
      if isinstance(body, (Add, Scale)):
        inner = f"({inner})"
      return f"{render_rational(coeff)}*{inner}"
    case Add(left, right):
      rhs = render(right)
      if isinstance(right, Add):
        rhs = f"({rhs})"
      return f"{render(left)} + {rhs}"
    case Min(args):
      return f"min({', '.join(render(a) for a in args)})"


def sample_term(rng: random.Random, n_vars: int, depth: int = 3) -> TropTerm:
  """Random term over x1..x_n_vars; used to fuzz the axiom checkers and the parser."""
  if depth <= 0 or rng.random() < 0.25:
    if rng.random() < 0.1:
      return ZERO
    return Var(rng.randint(1, n_vars))
  kind = rng.choice(("scale", "add", "min"))
  if kind == "scale":
    coeff = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
    return Scale(coeff, sample_term(rng, n_vars, depth - 1))
  if kind == "add":
    return Add(sample_term(rng, n_vars, depth - 1), sample_term(rng, n_vars, depth - 1))
  width = rng.randint(2, 3)
  return Min(tuple(sample_term(rng, n_vars, depth - 1) for _ in range(width)))
