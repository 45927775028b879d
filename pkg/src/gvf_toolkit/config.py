from __future__ import annotations

import os
from pathlib import Path
from typing import Literal

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from gvf_toolkit.algebra import DEFAULT_PRECISION, MAX_PRECISION
from gvf_toolkit.feasibility import DEFAULT_LOG_BITS
from gvf_toolkit.places import PrecisionPolicy
from gvf_toolkit.search import SearchBounds, SearchMode, SearchSettings

DEFAULT_CONFIG_PATH = Path("~/.config/gvf-toolkit/config.yaml").expanduser()
PRECISION_ENV = "GVF_PRECISION"
MAX_THREADS = 8


class ThreadsConfig(BaseModel):
  model_config = ConfigDict(frozen=True)

  value: int | Literal["auto"]

  @classmethod
  def parse(cls, raw: str) -> ThreadsConfig:
    """Parse a thread budget from a string value (either 'auto' or a positive integer)."""
    trimmed = raw.strip().lower()
    if trimmed == "auto":
      return cls(value="auto")
    try:
      parsed = int(trimmed)
    except ValueError as exc:
      raise ValueError("threads must be a positive integer or 'auto'") from exc
    if parsed < 1:
      raise ValueError("threads must be a positive integer or 'auto'")
    return cls(value=parsed)

  def resolve(self) -> int:
    if self.value == "auto":
      return max(1, min(os.cpu_count() or 1, MAX_THREADS))
    return self.value


class SearchConfig(BaseModel):
  model_config = ConfigDict(extra="forbid")

  rational_bound: int = Field(default=10, ge=1)
  quadratic_d_bound: int = Field(default=5, ge=1)
  quadratic_height_bound: int = Field(default=2, ge=1)
  cyclotomic_max_order: int = Field(default=6, ge=1)
  custom_degree: int = Field(default=3, ge=2, le=3)
  custom_coeff_bound: int = Field(default=2, ge=1)
  mode: SearchMode = SearchMode.EXHAUSTIVE

  def bounds(self) -> SearchBounds:
    return SearchBounds(
      rational=self.rational_bound,
      quadratic_d=self.quadratic_d_bound,
      quadratic_height=self.quadratic_height_bound,
      cyclotomic_order=self.cyclotomic_max_order,
      custom_degree=self.custom_degree,
      custom_coeff=self.custom_coeff_bound,
    )


class FeasibilityConfig(BaseModel):
  model_config = ConfigDict(extra="forbid")

  log_precision: int = Field(default=DEFAULT_LOG_BITS, ge=32)


class AppConfig(BaseModel):
  model_config = ConfigDict(extra="forbid")

  precision: int = Field(default=DEFAULT_PRECISION, ge=64)
  max_precision: int = Field(default=MAX_PRECISION)
  hensel_precision: int = Field(default=8, ge=1)
  seed: int = 0
  threads: ThreadsConfig = Field(default_factory=lambda: ThreadsConfig(value="auto"))
  search: SearchConfig = Field(default_factory=SearchConfig)
  feasibility: FeasibilityConfig = Field(default_factory=FeasibilityConfig)

  @field_validator("threads", mode="before")
  @classmethod
  def _coerce_threads(cls, value: object) -> ThreadsConfig:
    if value is None:
      return ThreadsConfig(value="auto")
    if isinstance(value, ThreadsConfig):
      return value
    if isinstance(value, dict):
      return ThreadsConfig.model_validate(value)
    if isinstance(value, str):
      return ThreadsConfig.parse(value)
    if isinstance(value, int) and not isinstance(value, bool):
      if value < 1:
        raise ValueError("threads must be an integer greater than or equal to 1")
      return ThreadsConfig(value=value)
    raise ValueError("threads must be an integer or 'auto'")

  @model_validator(mode="after")
  def _check_ceiling(self) -> AppConfig:
    if self.max_precision < self.precision:
      raise ValueError("max_precision must be at least precision")
    return self

  def policy(self) -> PrecisionPolicy:
    return PrecisionPolicy(
      bits=self.precision, max_bits=self.max_precision, hensel=self.hensel_precision
    )

  def search_settings(self) -> SearchSettings:
    return SearchSettings(
      bounds=self.search.bounds(),
      seed=self.seed,
      threads=self.threads.resolve(),
      mode=self.search.mode,
    )

  def with_overrides(
    self, *, precision: int | None = None, seed: int | None = None, threads: int | None = None
  ) -> AppConfig:
    """Apply CLI flags on top of the file and environment values."""
    update: dict[str, object] = {}
    if precision is not None:
      update["precision"] = precision
      update["max_precision"] = max(self.max_precision, precision)
    if seed is not None:
      update["seed"] = seed
    if threads is not None:
      update["threads"] = ThreadsConfig(value=threads)
    merged = self.model_copy(update=update)
    return AppConfig.model_validate(merged.model_dump(mode="python"))


def _env_precision() -> int | None:
  raw = os.environ.get(PRECISION_ENV)
  if raw is None or not raw.strip():
    return None
  try:
    return int(raw.strip())
  except ValueError as exc:
    raise ValueError(f"{PRECISION_ENV} must be an integer number of bits, got {raw!r}") from exc


def _read_mapping(path: Path) -> dict[str, object]:
  try:
    loaded: object = yaml.safe_load(path.read_text(encoding="utf-8"))
  except OSError as exc:
    raise ValueError(f"cannot read {path}") from exc
  except yaml.YAMLError as exc:
    raise ValueError(f"cannot parse YAML in {path}") from exc
  if loaded is None:
    raise ValueError(f"{path} is empty")
  if not isinstance(loaded, dict):
    raise ValueError(f"{path} must hold a mapping of settings, got {type(loaded).__name__}")
  items: dict[object, object] = loaded  # pyright: ignore[reportUnknownVariableType]
  return {str(key): value for key, value in items.items()}


def load_config(path: Path | None = None) -> AppConfig:
  """Defaults, then the YAML file, then `GVF_PRECISION`.

  An explicit path must exist; a missing default file just means defaults.
  """
  source = (path or DEFAULT_CONFIG_PATH).expanduser()
  if source.exists():
    data = _read_mapping(source)
  elif path is not None:
    raise FileNotFoundError(f"config file not found: {source}")
  else:
    data = {}

  try:
    config = AppConfig.model_validate(data)
  except ValidationError as exc:
    raise ValueError(f"Invalid configuration in {source}: {exc}") from exc

  bits = _env_precision()
  if bits is None:
    return config
  try:
    return config.with_overrides(precision=bits)
  except ValidationError as exc:
    raise ValueError(f"Invalid {PRECISION_ENV}: {exc}") from exc
