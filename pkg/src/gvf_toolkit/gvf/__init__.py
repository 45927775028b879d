from __future__ import annotations

from .checks import (
  check_galois_invariance,
  check_linearity,
  check_positivity,
  check_product_formula,
)
from .exceptions import NotConjugate
from .integrals import (
  archimedean_total,
  compare_logs,
  evaluate_local,
  generator_height_oracle,
  height,
  integrate,
  local_terms,
  local_value,
  max_height,
  r_t,
  tuple_height,
)
from .types import (
  GvfValue,
  LocalTerm,
  LocalValue,
  LogCombination,
  PositivityStatus,
  PositivityVerdict,
  Witness,
  log_prime,
  render_local,
)

__all__ = [
  # checks
  "check_galois_invariance",
  "check_linearity",
  "check_positivity",
  "check_product_formula",
  # exceptions
  "NotConjugate",
  # integrals
  "archimedean_total",
  "compare_logs",
  "evaluate_local",
  "generator_height_oracle",
  "height",
  "integrate",
  "local_terms",
  "local_value",
  "max_height",
  "r_t",
  "tuple_height",
  # types
  "GvfValue",
  "LocalTerm",
  "LocalValue",
  "LogCombination",
  "PositivityStatus",
  "PositivityVerdict",
  "Witness",
  "log_prime",
  "render_local",
]
