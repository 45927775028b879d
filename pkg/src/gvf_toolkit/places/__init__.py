from __future__ import annotations

from .codec import (
  FieldDescriptor,
  decode_element,
  decode_elements,
  decode_field,
  encode_element,
  encode_elements,
  encode_field,
)
from .decomposition import (
  archimedean_places,
  decompose_prime,
  embedding_boxes,
  function_field_place,
  infinity_place,
  lifted_factors,
  residue_factors,
)
from .elements import FfElem, FieldElem, NfElem, QElem, embed_rational, generator, require_nonzero
from .exceptions import CarrierMismatch, UnsupportedRamification, ZeroElement
from .expressions import evaluate_expression, generator_name, parse_element, parse_expression
from .support import candidate_primes, support_places
from .types import (
  DEFAULT_POLICY,
  RATIONALS,
  Carrier,
  FunctionField,
  NumberCarrier,
  NumberField,
  Place,
  PlaceKind,
  PrecisionPolicy,
  QuadraticField,
  RationalsQ,
  Weight,
)
from .valuation import Valuation, archimedean_valuation, norm, valuation

__all__ = [
  # codec
  "FieldDescriptor",
  "decode_element",
  "decode_elements",
  "decode_field",
  "encode_element",
  "encode_elements",
  "encode_field",
  # decomposition
  "archimedean_places",
  "decompose_prime",
  "embedding_boxes",
  "function_field_place",
  "infinity_place",
  "lifted_factors",
  "residue_factors",
  # elements
  "FfElem",
  "FieldElem",
  "NfElem",
  "QElem",
  "embed_rational",
  "generator",
  "require_nonzero",
  # exceptions
  "CarrierMismatch",
  "UnsupportedRamification",
  "ZeroElement",
  # expressions
  "evaluate_expression",
  "generator_name",
  "parse_element",
  "parse_expression",
  # support
  "candidate_primes",
  "support_places",
  # types
  "DEFAULT_POLICY",
  "RATIONALS",
  "Carrier",
  "FunctionField",
  "NumberCarrier",
  "NumberField",
  "Place",
  "PlaceKind",
  "PrecisionPolicy",
  "QuadraticField",
  "RationalsQ",
  "Weight",
  # valuation
  "Valuation",
  "archimedean_valuation",
  "norm",
  "valuation",
]
