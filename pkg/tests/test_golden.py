"""Golden CLI corpus: fixed invocations whose JSON output must not drift between runs."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from string import Template

import pytest
import yaml

from gvf_toolkit.cli import run
from gvf_toolkit.exceptions import PayloadError
from gvf_toolkit.schemas import COMMAND_MODELS, dump_output, parse_output_line

GOLDEN = Path(__file__).parent / "golden"
TRANSCRIPTS = GOLDEN / "transcripts"

SUBCOMMANDS = {
  "eval",
  "height",
  "places",
  "check",
  "divisor",
  "point-height",
  "feasible",
  "minimize",
  "search",
  "zeta",
  "config",
}


@dataclass(frozen=True, slots=True)
class Invocation:
  name: str
  argv: tuple[str, ...]
  exit: int = 0
  files: dict[str, str] = field(default_factory=dict)
  expect: dict[str, object] = field(default_factory=dict)
  lengths: dict[str, int] = field(default_factory=dict)


def load_corpus() -> list[Invocation]:
  entries = yaml.safe_load((GOLDEN / "corpus.yaml").read_text(encoding="utf-8"))
  return [
    Invocation(
      name=entry["name"],
      argv=tuple(str(part) for part in entry["argv"]),
      exit=entry.get("exit", 0),
      files=entry.get("files", {}),
      expect=entry.get("expect", {}),
      lengths=entry.get("lengths", {}),
    )
    for entry in entries
  ]


CORPUS = load_corpus()


def invoke(capsys: pytest.CaptureFixture[str], inv: Invocation, workdir: Path) -> tuple[int, str]:
  for name, text in inv.files.items():
    (workdir / name).write_text(text, encoding="utf-8")
  argv = [Template(part).safe_substitute(dir=str(workdir)) for part in inv.argv]
  code = run([*argv, "--json"])
  return code, capsys.readouterr().out


def lookup(doc: object, path: str) -> object:
  node = doc
  for part in path.split("."):
    node = node[int(part)] if isinstance(node, list) else node[part]  # type: ignore[index]
  return node


def test_corpus_covers_every_subcommand() -> None:
  assert len(CORPUS) == 25
  assert len({inv.name for inv in CORPUS}) == 25
  assert {inv.argv[0] for inv in CORPUS} == SUBCOMMANDS


@pytest.mark.parametrize("inv", CORPUS, ids=[inv.name for inv in CORPUS])
def test_invocation_is_byte_identical(
  capsys: pytest.CaptureFixture[str],
  tmp_path: Path,
  request: pytest.FixtureRequest,
  inv: Invocation,
) -> None:
  code, first = invoke(capsys, inv, tmp_path)
  again, second = invoke(capsys, inv, tmp_path)
  assert (code, again) == (inv.exit, inv.exit)
  assert first == second

  summary = json.loads(first.strip().splitlines()[-1])
  for path, expected in inv.expect.items():
    assert lookup(summary, path) == expected, path
  for path, size in inv.lengths.items():
    assert len(lookup(summary, path)) == size, path  # type: ignore[arg-type]

  transcript = TRANSCRIPTS / f"{inv.name}.jsonl"
  if request.config.getoption("--update-golden"):
    TRANSCRIPTS.mkdir(parents=True, exist_ok=True)
    transcript.write_text(first, encoding="utf-8")
  elif transcript.exists():
    assert first == transcript.read_text(encoding="utf-8")


def test_recorded_transcripts_belong_to_the_corpus() -> None:
  names = {inv.name for inv in CORPUS}
  recorded = {path.stem for path in TRANSCRIPTS.glob("*.jsonl")}
  assert recorded <= names


@pytest.mark.parametrize("inv", CORPUS, ids=[inv.name for inv in CORPUS])
def test_output_round_trips_through_its_schema(
  capsys: pytest.CaptureFixture[str], tmp_path: Path, inv: Invocation
) -> None:
  _, out = invoke(capsys, inv, tmp_path)
  lines = out.strip().splitlines()
  assert lines
  for line in lines:
    assert dump_output(parse_output_line(line)) == json.loads(line)


def test_every_command_has_an_output_model() -> None:
  assert {name.split()[0] for name in COMMAND_MODELS} == SUBCOMMANDS


@pytest.mark.parametrize(
  ("line", "message"),
  [
    ("[1, 2]", "JSON object"),
    ("{not json", "not JSON"),
    ('{"command": "plot"}', "unknown command"),
    ('{"command": "config", "precision": 256}', "invalid ConfigOutput"),
    ('{"error": {"type": "X", "message": "m", "exit_code": 2, "hint": "h"}}', "ErrorOutput"),
  ],
)
def test_malformed_output_is_rejected(line: str, message: str) -> None:
  with pytest.raises(PayloadError, match=message):
    parse_output_line(line)
