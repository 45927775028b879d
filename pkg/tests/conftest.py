"""Fixtures shared by every test module: quiet progress output, isolated config, seeded inputs."""

from __future__ import annotations

import random

import pytest

from gvf_toolkit.places import PrecisionPolicy
from gvf_toolkit.term import ActivityLog, set_activity_log


def pytest_addoption(parser: pytest.Parser) -> None:
  parser.addoption(
    "--update-golden",
    action="store_true",
    default=False,
    help="Rewrite tests/golden/transcripts from the current CLI output",
  )


@pytest.fixture(autouse=True)
def setup_activity_log() -> None:
  """Bind a quiet ActivityLog so CLI runs print nothing to stderr."""
  log = ActivityLog(quiet=True)
  set_activity_log(log)


@pytest.fixture(autouse=True)
def isolate_config(
  monkeypatch: pytest.MonkeyPatch, tmp_path_factory: pytest.TempPathFactory
) -> None:
  """Keep the user's config file and GVF_PRECISION out of every test."""
  home = tmp_path_factory.mktemp("home")
  monkeypatch.setattr("gvf_toolkit.config.DEFAULT_CONFIG_PATH", home / "config.yaml")
  monkeypatch.delenv("GVF_PRECISION", raising=False)


@pytest.fixture
def rng() -> random.Random:
  return random.Random(20240601)


@pytest.fixture
def policy() -> PrecisionPolicy:
  return PrecisionPolicy()
