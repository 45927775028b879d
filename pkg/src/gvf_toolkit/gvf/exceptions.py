from __future__ import annotations

from gvf_toolkit.exceptions import InputError


class NotConjugate(InputError):
  """The second tuple is not the image of the first under the field automorphism."""

  def __init__(self, index: int, detail: str) -> None:
    self.index = index
    super().__init__(f"entry {index + 1} is not conjugate: {detail}")
