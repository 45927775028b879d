from __future__ import annotations

from gvf_toolkit.exceptions import InputError


class TermSyntaxError(InputError):
  """A tropical term failed to parse; `offset` is the UTF-8 byte offset of the problem."""

  def __init__(self, message: str, offset: int) -> None:
    self.offset = offset
    super().__init__(f"{message} at byte {offset}")


class ConstantError(TermSyntaxError):
  """A numeric literal appeared on its own; the only constant of the language is 0."""


class ArityMismatch(InputError):
  def __init__(self, needed: int, given: int) -> None:
    self.needed = needed
    self.given = given
    super().__init__(f"term uses {needed} variables but only {given} values were supplied")
