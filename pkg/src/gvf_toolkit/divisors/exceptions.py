from __future__ import annotations

from gvf_toolkit.exceptions import InputError


class PointOnSupport(InputError):
  """A template function is zero or undefined at the requested point."""

  def __init__(self, index: int, detail: str) -> None:
    self.index = index
    super().__init__(f"point lies on the support of function {index + 1}: {detail}")
