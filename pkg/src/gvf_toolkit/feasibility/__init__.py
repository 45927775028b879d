from __future__ import annotations

from .atoms import atom_at, atoms_from_points, rationalize, standard_weights
from .codec import decode_instance, encode_verdict, parse_target
from .exceptions import MissingGenerator2, ToleranceTooTight, Unbounded
from .logs import DEFAULT_LOG_BITS, Approximation, LogTable, log_interval
from .simplex import LpSolution, LpStatus, solve_lp
from .solver import (
  build_constraints,
  check_certificate,
  coefficient,
  farkas_certificate,
  lipschitz,
  minimize_functional,
  realized_bound,
  solve_feasible,
  verify_certificate,
)
from .types import (
  AtomClass,
  Constraint,
  DivisorTarget,
  FarkasCertificate,
  FeasibilityInstance,
  FeasibilityStatus,
  FeasibilityVerdict,
  ValuationAtom,
)

__all__ = [
  # atoms
  "atom_at",
  "atoms_from_points",
  "rationalize",
  "standard_weights",
  # codec
  "decode_instance",
  "encode_verdict",
  "parse_target",
  # exceptions
  "MissingGenerator2",
  "ToleranceTooTight",
  "Unbounded",
  # logs
  "DEFAULT_LOG_BITS",
  "Approximation",
  "LogTable",
  "log_interval",
  # simplex
  "LpSolution",
  "LpStatus",
  "solve_lp",
  # solver
  "build_constraints",
  "check_certificate",
  "coefficient",
  "farkas_certificate",
  "lipschitz",
  "minimize_functional",
  "realized_bound",
  "solve_feasible",
  "verify_certificate",
  # types
  "AtomClass",
  "Constraint",
  "DivisorTarget",
  "FarkasCertificate",
  "FeasibilityInstance",
  "FeasibilityStatus",
  "FeasibilityVerdict",
  "ValuationAtom",
]
