from __future__ import annotations

from .codec import (
  decode_divisor,
  decode_point,
  decode_template,
  encode_divisor,
  encode_point,
  encode_template,
)
from .exceptions import PointOnSupport
from .lattice import (
  add,
  beta,
  combine,
  divisor_places,
  functional_value,
  height_divisor,
  is_effective_on_support,
  negate,
  principal,
  scale,
  wedge,
  zero_divisor,
)
from .points import (
  compiled_functions,
  height_at_point,
  height_difference_template,
  height_template,
  infer_variables,
  make_template,
  specialize,
)
from .types import (
  BetaValue,
  EffectivityVerdict,
  Evidence,
  LatticeDivisor,
  PointSpec,
  PointTemplate,
)

__all__ = [
  # codec
  "decode_divisor",
  "decode_point",
  "decode_template",
  "encode_divisor",
  "encode_point",
  "encode_template",
  # exceptions
  "PointOnSupport",
  # lattice
  "add",
  "beta",
  "combine",
  "divisor_places",
  "functional_value",
  "height_divisor",
  "is_effective_on_support",
  "negate",
  "principal",
  "scale",
  "wedge",
  "zero_divisor",
  # points
  "compiled_functions",
  "height_at_point",
  "height_difference_template",
  "height_template",
  "infer_variables",
  "make_template",
  "specialize",
  # types
  "BetaValue",
  "EffectivityVerdict",
  "Evidence",
  "LatticeDivisor",
  "PointSpec",
  "PointTemplate",
]
