from __future__ import annotations

import random
from fractions import Fraction

import pytest

from gvf_toolkit.algebra import BigFloat
from gvf_toolkit.exceptions import InputError
from gvf_toolkit.tropical import (
  ZERO,
  Add,
  ArityMismatch,
  ConstantError,
  Min,
  Scale,
  TermSyntaxError,
  Var,
  arity,
  contains_min,
  evaluate,
  evaluate_mixed,
  height_term,
  parse,
  rename,
  render,
  sample_term,
  shift,
  tuple_height_term,
  variables,
)


def test_parse_basic_terms() -> None:
  assert parse("x1") == Var(1)
  assert parse("0") == ZERO
  assert parse("-1*min(x1, 0)") == height_term()
  assert parse("1/2*x2 + x1") == Add(Scale(Fraction(1, 2), Var(2)), Var(1))
  assert parse("min(x1,x2,x3)") == Min((Var(1), Var(2), Var(3)))


def test_parse_sugar_for_max_and_subtraction() -> None:
  assert parse("x1 - x2") == Add(Var(1), Scale(Fraction(-1), Var(2)))
  assert parse("-x1") == Scale(Fraction(-1), Var(1))
  max_term = parse("max(x1, 0)")
  assert evaluate(max_term, [Fraction(3)]) == 3
  assert evaluate(max_term, [Fraction(-3)]) == 0


@pytest.mark.parametrize(
  ("text", "offset"),
  [
    ("x0", 0),
    ("min(x1)", 0),
    ("x1 +", 4),
    ("x1 * x2", 3),
    ("y1", 0),
  ],
)
def test_syntax_errors_report_byte_offsets(text: str, offset: int) -> None:
  with pytest.raises(TermSyntaxError) as info:
    parse(text)
  assert info.value.offset == offset
  assert isinstance(info.value, InputError)
  assert isinstance(info.value, ValueError)


def test_offsets_count_utf8_bytes() -> None:
  # No-break spaces are whitespace but take two bytes each.
  with pytest.raises(TermSyntaxError) as info:
    parse("x1 + y1")
  assert info.value.offset == 7
  with pytest.raises(TermSyntaxError) as info:
    parse("min(é, x1)")
  assert info.value.offset == 4


@pytest.mark.parametrize(("text", "offset"), [("x²", 0), ("x1٣", 2), ("min(x1, x١)", 8)])
def test_only_ascii_digits_are_digits(text: str, offset: int) -> None:
  with pytest.raises(TermSyntaxError) as info:
    parse(text)
  assert type(info.value) is TermSyntaxError
  assert info.value.offset == offset


@pytest.mark.parametrize("text", ["3", "x1 + 2", "min(x1, 5)", "07*x1 + 07"])
def test_bare_constants_are_rejected(text: str) -> None:
  with pytest.raises(ConstantError):
    parse(text)


def test_zero_literal_is_the_only_constant() -> None:
  assert parse("x1 + 0") == Add(Var(1), ZERO)
  assert parse("0*x1") == Scale(Fraction(0), Var(1))


def test_structural_queries() -> None:
  term = parse("min(x1, 2*x3) + x2")
  assert arity(term) == 3
  assert variables(term) == {1, 2, 3}
  assert contains_min(term)
  assert not contains_min(parse("x1 + -1*x2"))
  assert arity(ZERO) == 0
  assert shift(term, 2) == parse("min(x3, 2*x5) + x4")
  assert rename(term, {1: 2, 2: 1, 3: 3}) == parse("min(x2, 2*x3) + x1")


def test_evaluate_height_integrand() -> None:
  h = height_term()
  assert evaluate(h, [Fraction(-3)]) == 3
  assert evaluate(h, [Fraction(5, 2)]) == 0
  t = tuple_height_term(2)
  assert evaluate(t, [Fraction(1), Fraction(-2)]) == 2
  assert evaluate(t, [Fraction(1), Fraction(2)]) == 0


def test_evaluate_checks_arity() -> None:
  with pytest.raises(ArityMismatch) as info:
    evaluate(parse("x1 + x3"), [Fraction(1), Fraction(2)])
  assert (info.value.needed, info.value.given) == (3, 2)


def test_evaluate_mixed_promotes_to_balls() -> None:
  third = BigFloat.from_rational(Fraction(1, 3))
  value = evaluate_mixed(parse("min(x1, x2) + x2"), [Fraction(1), third])
  assert isinstance(value, BigFloat)
  assert (value - Fraction(2, 3)).contains_zero()


def test_tropical_linearity_over_rationals() -> None:
  # Every term is positively homogeneous: t(c*u) = c*t(u) for c >= 0.
  rng = random.Random(7)
  for _ in range(200):
    term = sample_term(rng, 3)
    u = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(3)]
    c = Fraction(rng.randint(0, 6), rng.randint(1, 3))
    assert evaluate(term, [c * x for x in u]) == c * evaluate(term, u)


def test_render_round_trips_sampled_terms() -> None:
  rng = random.Random(11)
  for _ in range(300):
    term = sample_term(rng, 4)
    assert parse(render(term)) == term
