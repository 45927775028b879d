from __future__ import annotations

from gvf_toolkit.exceptions import InputError


class ZeroElement(InputError):
  """An operation needed a nonzero field element."""


class UnsupportedRamification(InputError):
  """A general number field prime whose minimal polynomial is not squarefree modulo p."""

  def __init__(self, p: int, detail: str) -> None:
    self.p = p
    super().__init__(f"prime {p} is not supported: {detail}")


class CarrierMismatch(InputError):
  """A place and an element (or two elements) live in different carriers."""
