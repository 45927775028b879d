from __future__ import annotations

from gvf_toolkit.exceptions import InputError


class NoCandidateSatisfiesEquations(InputError):
  """Every enumerated candidate failed the equations, the inequation or the template supports."""

  def __init__(self, examined: int) -> None:
    self.examined = examined
    super().__init__(
      f"none of the {examined} enumerated candidates satisfies the equations; "
      "enable more candidate classes or raise the bounds"
    )
