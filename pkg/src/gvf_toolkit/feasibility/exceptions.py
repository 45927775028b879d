from __future__ import annotations

from fractions import Fraction

from gvf_toolkit.algebra import render_rational
from gvf_toolkit.exceptions import InputError


class MissingGenerator2(InputError):
  """The normalization row needs the constant 2 among the generators."""

  def __init__(self) -> None:
    super().__init__("the height-of-2 normalization needs the generator 2")


class ToleranceTooTight(InputError):
  def __init__(self, eps: Fraction, bound: Fraction) -> None:
    self.eps = eps
    self.bound = bound
    super().__init__(
      f"tolerance {render_rational(eps)} does not exceed the log-approximation perturbation bound "
      f"{float(bound):.3e}; raise eps or the log precision"
    )


class Unbounded(InputError):
  """The objective decreases without bound over the sampled atom cone."""
