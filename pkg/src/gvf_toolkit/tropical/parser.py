"""Recursive-descent parser for the tropical term grammar.

    expr     := term (('+' | '-') term)*
    term     := (rational '*')? atom
    atom     := var | '0' | ('min' | 'max') '(' expr (',' expr)+ ')' | '(' expr ')'
    var      := 'x' [1-9][0-9]*
    rational := '-'? digits ('/' digits)?

`max` and subtraction are sugar: max(a, b) becomes -1*min(-1*a, -1*b) and a - b becomes
a + -1*b. A leading '-' directly before an atom is read as -1*atom.
"""

from __future__ import annotations

from fractions import Fraction

from .exceptions import ConstantError, TermSyntaxError
from .types import ZERO, Add, Min, Scale, TropTerm, Var

NEG_ONE = Fraction(-1)


def _is_digit(char: str) -> bool:
  return "0" <= char <= "9"


class _Parser:
  def __init__(self, text: str) -> None:
    self._text = text
    self._pos = 0

  # --- lexing helpers ---

  def _offset(self, pos: int | None = None) -> int:
    return len(self._text[: self._pos if pos is None else pos].encode("utf-8"))

  def _fail(self, message: str, pos: int | None = None) -> TermSyntaxError:
    return TermSyntaxError(message, self._offset(pos))

  def _skip_ws(self) -> None:
    while self._pos < len(self._text) and self._text[self._pos].isspace():
      self._pos += 1

  def _peek(self) -> str:
    self._skip_ws()
    return self._text[self._pos] if self._pos < len(self._text) else ""

  def _expect(self, char: str) -> None:
    if self._peek() != char:
      found = self._peek() or "end of input"
      raise self._fail(f"expected {char!r}, found {found!r}")
    self._pos += 1

  def _digits(self) -> str:
    start = self._pos
    while self._pos < len(self._text) and _is_digit(self._text[self._pos]):
      self._pos += 1
    return self._text[start : self._pos]

  def _keyword(self, word: str) -> bool:
    self._skip_ws()
    if not self._text.startswith(word, self._pos):
      return False
    after = self._pos + len(word)
    if after < len(self._text) and (self._text[after].isalnum() or self._text[after] == "_"):
      return False
    self._pos = after
    return True

  # --- grammar ---

  def parse(self) -> TropTerm:
    term = self._expr()
    if self._peek():
      raise self._fail(f"unexpected {self._peek()!r}")
    return term

  def _expr(self) -> TropTerm:
    result = self._term()
    while (op := self._peek()) in ("+", "-"):
      self._pos += 1
      rhs = self._term()
      result = Add(result, rhs if op == "+" else Scale(NEG_ONE, rhs))
    return result

  def _rational(self) -> tuple[Fraction, int] | None:
    """Read an optionally signed rational literal, or rewind and return None."""
    self._skip_ws()
    start = self._pos
    negative = False
    if self._peek() == "-":
      negative = True
      self._pos += 1
      self._skip_ws()
    numer = self._digits()
    if not numer:
      self._pos = start
      return None
    denom = "1"
    if self._peek() == "/":
      self._pos += 1
      self._skip_ws()
      denom = self._digits()
      if not denom:
        raise self._fail("expected digits after '/'")
      if int(denom) == 0:
        raise self._fail("zero denominator", start)
    value = Fraction(int(numer), int(denom))
    return (-value if negative else value), start

  def _term(self) -> TropTerm:
    literal = self._rational()
    if literal is not None:
      value, start = literal
      if self._peek() == "*":
        self._pos += 1
        return Scale(value, self._atom())
      if value == 0:
        return ZERO
      raise ConstantError(f"numeric literal {value} must multiply a subterm", self._offset(start))
    if self._peek() == "-":
      self._pos += 1
      return Scale(NEG_ONE, self._atom())
    return self._atom()

  def _atom(self) -> TropTerm:
    char = self._peek()
    start = self._pos
    if char == "(":
      self._pos += 1
      inner = self._expr()
      self._expect(")")
      return inner
    if char == "x":
      self._pos += 1
      digits = self._digits()
      if not digits or digits[0] == "0":
        raise self._fail("variable names are x1, x2, ...", start)
      return Var(int(digits))
    if char == "0":
      self._pos += 1
      if self._pos < len(self._text) and _is_digit(self._text[self._pos]):
        raise ConstantError("only the constant 0 is allowed", self._offset(start))
      return ZERO
    if _is_digit(char):
      raise ConstantError("only the constant 0 is allowed", self._offset(start))
    for word, is_max in (("min", False), ("max", True)):
      if self._keyword(word):
        args = self._arguments(start)
        if is_max:
          return Scale(NEG_ONE, Min(tuple(Scale(NEG_ONE, a) for a in args)))
        return Min(tuple(args))
    raise self._fail(f"unexpected {char or 'end of input'!r}")

  def _arguments(self, start: int) -> list[TropTerm]:
    self._expect("(")
    args = [self._expr()]
    while self._peek() == ",":
      self._pos += 1
      args.append(self._expr())
    self._expect(")")
    if len(args) < 2:
      raise self._fail("min/max need at least two arguments", start)
    return args


def parse(text: str) -> TropTerm:
  """Parse a tropical term; raises TermSyntaxError or ConstantError with a byte offset."""
  return _Parser(text).parse()
