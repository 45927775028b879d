from __future__ import annotations

from .approximate import (
  PointFilter,
  approximate,
  approximate_async,
  deviation,
  evaluate_candidate,
  heights_at,
  vanishes_at,
)
from .candidates import (
  MAX_CYCLOTOMIC_DEGREE,
  candidate_pools,
  compositions,
  cyclotomic_field,
  enumerate_candidates,
  quadratic_discriminants,
  roots_of_unity,
  stern_brocot,
)
from .codec import (
  decode_search,
  decode_zeta,
  encode_evaluation,
  encode_point_record,
  encode_result,
  encode_trace_entry,
  encode_zeta,
  target_value,
)
from .exceptions import NoCandidateSatisfiesEquations
from .scan import ScanOutcome, scan
from .types import (
  CandidateClass,
  Evaluation,
  HeightTarget,
  SearchBounds,
  SearchInstance,
  SearchMode,
  SearchResult,
  SearchSettings,
  TraceEntry,
  ZetaEstimate,
  ZetaRequest,
)
from .zeta import certainly_below, running_minimum, zeta_estimate, zeta_estimate_async

__all__ = [
  # approximate
  "PointFilter",
  "approximate",
  "approximate_async",
  "deviation",
  "evaluate_candidate",
  "heights_at",
  "vanishes_at",
  # candidates
  "MAX_CYCLOTOMIC_DEGREE",
  "candidate_pools",
  "compositions",
  "cyclotomic_field",
  "enumerate_candidates",
  "quadratic_discriminants",
  "roots_of_unity",
  "stern_brocot",
  # codec
  "decode_search",
  "decode_zeta",
  "encode_evaluation",
  "encode_point_record",
  "encode_result",
  "encode_trace_entry",
  "encode_zeta",
  "target_value",
  # exceptions
  "NoCandidateSatisfiesEquations",
  # scan
  "ScanOutcome",
  "scan",
  # types
  "CandidateClass",
  "Evaluation",
  "HeightTarget",
  "SearchBounds",
  "SearchInstance",
  "SearchMode",
  "SearchResult",
  "SearchSettings",
  "TraceEntry",
  "ZetaEstimate",
  "ZetaRequest",
  # zeta
  "certainly_below",
  "running_minimum",
  "zeta_estimate",
  "zeta_estimate_async",
]
