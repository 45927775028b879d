from __future__ import annotations

from gvf_toolkit.exceptions import InputError, PrecisionExhausted


class NotSquarefree(InputError):
  """A polynomial's reduction modulo p has a repeated factor."""

  def __init__(self, p: int, detail: str | None = None) -> None:
    self.p = p
    message = f"reduction modulo {p} is not squarefree"
    super().__init__(f"{message}: {detail}" if detail else message)


__all__ = ["NotSquarefree", "PrecisionExhausted"]
