from __future__ import annotations

from typing import ClassVar

EXIT_OK = 0
EXIT_VERDICT = 1
EXIT_INPUT = 2
EXIT_PRECISION = 3


class GvfError(Exception):
  """Base class for every error raised by gvf-toolkit.

  `exit_code` is what the CLI returns when the error escapes a subcommand.
  """

  exit_code: ClassVar[int] = EXIT_INPUT

  @property
  def kind(self) -> str:
    return type(self).__name__

  def to_payload(self) -> dict[str, object]:
    return {"type": self.kind, "message": str(self), "exit_code": self.exit_code}


class InputError(GvfError, ValueError):
  """Malformed or unsupported input."""


class PayloadError(InputError):
  """A JSON-shaped payload (field, element, divisor, instance) failed validation."""


class PrecisionExhausted(GvfError, ArithmeticError):
  exit_code: ClassVar[int] = EXIT_PRECISION


class VerdictFailed(GvfError):
  """A check ran to completion and its verdict was negative."""

  exit_code: ClassVar[int] = EXIT_VERDICT
