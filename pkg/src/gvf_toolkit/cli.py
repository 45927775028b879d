from __future__ import annotations

import json
from collections.abc import Awaitable, Callable
from pathlib import Path

import aiofiles
from clypi import Command, arg
from pydantic import ValidationError
from typing_extensions import override

from gvf_toolkit import commands
from gvf_toolkit.commands import Report
from gvf_toolkit.config import AppConfig, load_config
from gvf_toolkit.exceptions import EXIT_INPUT, EXIT_OK, GvfError
from gvf_toolkit.places import Carrier, decode_field
from gvf_toolkit.search import SearchMode
from gvf_toolkit.term import ActivityLog, activity_log, set_activity_log

CONFIG_HELP = "Path to config.yaml (defaults to ~/.config/gvf-toolkit/config.yaml)"
FIELD_HELP = "Field descriptor: 'Q' or a JSON object (or @file)"
ARGS_HELP = "Elements: a JSON array or comma-separated texts"
JSON_HELP = "Print a structured JSON document instead of tables"
PRECISION_HELP = "Working precision in bits (overrides GVF_PRECISION and the config file)"

Builder = Callable[[AppConfig], Awaitable[Report]]


class CommandExit(Exception):
  """Carries a subcommand's exit code out of clypi's runner."""

  def __init__(self, code: int) -> None:
    super().__init__(code)
    self.code = code


async def load_text(value: str | Path) -> str:
  """Inline payload text, or a file's contents when given a Path or written as @path."""
  if isinstance(value, str) and not value.startswith("@"):
    return value
  path = value if isinstance(value, Path) else Path(value[1:])
  async with aiofiles.open(path.expanduser(), "r", encoding="utf-8") as fh:
    return await fh.read()


async def load_field(value: str) -> Carrier:
  return decode_field(await load_text(value))


def error_payload(exc: BaseException) -> dict[str, object]:
  if isinstance(exc, GvfError):
    return exc.to_payload()
  return {"type": type(exc).__name__, "message": str(exc), "exit_code": EXIT_INPUT}


async def execute(
  build: Builder,
  *,
  as_json: bool,
  config_path: Path | None,
  precision: int | None = None,
  seed: int | None = None,
  threads: int | None = None,
) -> None:
  """Resolve configuration, run one report builder and print it; raises CommandExit."""
  try:
    config = load_config(config_path.expanduser() if config_path else None)
    config = config.with_overrides(precision=precision, seed=seed, threads=threads)
    report = await build(config)
  except (GvfError, ValidationError, ValueError, OSError) as exc:
    payload = error_payload(exc)
    if as_json:
      print(json.dumps({"error": payload}, sort_keys=True, ensure_ascii=False))
    else:
      activity_log().failure(f"{payload['type']}: {payload['message']}")
    code = payload["exit_code"]
    raise CommandExit(code if isinstance(code, int) else EXIT_INPUT) from exc

  print(report.render(as_json=as_json))
  if report.exit_code != EXIT_OK:
    raise CommandExit(report.exit_code)


class Eval(Command):
  """Evaluate R_t(args) for a tropical term over a field"""

  field: str = arg(help=FIELD_HELP)
  expr: str = arg(help="Tropical term, e.g. 'min(x1,x2)'")
  args: str = arg(help=ARGS_HELP)
  json: bool = arg(False, help=JSON_HELP)
  precision: int | None = arg(None, help=PRECISION_HELP)
  config: Path | None = arg(None, help=CONFIG_HELP)

  async def build(self, config: AppConfig) -> Report:
    carrier = await load_field(self.field)
    return commands.eval_report(carrier, self.expr, self.args, config.policy())

  @override
  async def run(self) -> None:
    await execute(
      self.build, as_json=self.json, config_path=self.config, precision=self.precision
    )


class Height(Command):
  """Absolute logarithmic height of one element"""

  field: str = arg(help=FIELD_HELP)
  elem: str = arg(help="Element text or JSON")
  json: bool = arg(False, help=JSON_HELP)
  precision: int | None = arg(None, help=PRECISION_HELP)
  config: Path | None = arg(None, help=CONFIG_HELP)

  async def build(self, config: AppConfig) -> Report:
    carrier = await load_field(self.field)
    return commands.height_report(carrier, self.elem, config.policy())

  @override
  async def run(self) -> None:
    await execute(
      self.build, as_json=self.json, config_path=self.config, precision=self.precision
    )


class Places(Command):
  """List the support places of some elements with their weights and valuations"""

  field: str = arg(help=FIELD_HELP)
  args: str = arg(help=ARGS_HELP)
  json: bool = arg(False, help=JSON_HELP)
  precision: int | None = arg(None, help=PRECISION_HELP)
  config: Path | None = arg(None, help=CONFIG_HELP)

  async def build(self, config: AppConfig) -> Report:
    carrier = await load_field(self.field)
    return commands.places_report(carrier, self.args, config.policy())

  @override
  async def run(self) -> None:
    await execute(
      self.build, as_json=self.json, config_path=self.config, precision=self.precision
    )


class Product(Command):
  """Check the product formula: the integral of v(a) over all places is zero"""

  field: str = arg(help=FIELD_HELP)
  elem: str = arg(help="Nonzero element text or JSON")
  json: bool = arg(False, help=JSON_HELP)
  precision: int | None = arg(None, help=PRECISION_HELP)
  config: Path | None = arg(None, help=CONFIG_HELP)

  async def build(self, config: AppConfig) -> Report:
    carrier = await load_field(self.field)
    return commands.check_product_report(carrier, self.elem, config.policy())

  @override
  async def run(self) -> None:
    await execute(
      self.build, as_json=self.json, config_path=self.config, precision=self.precision
    )


class Linearity(Command):
  """Check additivity and homogeneity of R_t in the term"""

  field: str = arg(help=FIELD_HELP)
  expr: str = arg(help="First tropical term")
  expr2: str = arg(help="Second tropical term")
  args: str = arg(help=ARGS_HELP)
  alpha: str = arg("2", help="Rational scale factor for the homogeneity check")
  json: bool = arg(False, help=JSON_HELP)
  precision: int | None = arg(None, help=PRECISION_HELP)
  config: Path | None = arg(None, help=CONFIG_HELP)

  async def build(self, config: AppConfig) -> Report:
    carrier = await load_field(self.field)
    return commands.check_linearity_report(
      carrier, self.expr, self.expr2, self.alpha, self.args, config.policy()
    )

  @override
  async def run(self) -> None:
    await execute(
      self.build, as_json=self.json, config_path=self.config, precision=self.precision
    )


class Positivity(Command):
  """Check R_t(args) >= 0 when t is nonnegative at every support place"""

  field: str = arg(help=FIELD_HELP)
  expr: str = arg(help="Tropical term")
  args: str = arg(help=ARGS_HELP)
  json: bool = arg(False, help=JSON_HELP)
  precision: int | None = arg(None, help=PRECISION_HELP)
  config: Path | None = arg(None, help=CONFIG_HELP)

  async def build(self, config: AppConfig) -> Report:
    carrier = await load_field(self.field)
    return commands.check_positivity_report(carrier, self.expr, self.args, config.policy())

  @override
  async def run(self) -> None:
    await execute(
      self.build, as_json=self.json, config_path=self.config, precision=self.precision
    )


class Galois(Command):
  """Check R_t(args) = R_t(conjugates) for Galois-conjugate tuples"""

  field: str = arg(help=FIELD_HELP)
  expr: str = arg(help="Tropical term")
  args: str = arg(help=ARGS_HELP)
  conjugates: str = arg(help="Conjugate elements, in the same order as args")
  json: bool = arg(False, help=JSON_HELP)
  precision: int | None = arg(None, help=PRECISION_HELP)
  config: Path | None = arg(None, help=CONFIG_HELP)

  async def build(self, config: AppConfig) -> Report:
    carrier = await load_field(self.field)
    return commands.check_galois_report(
      carrier, self.expr, self.args, self.conjugates, config.policy()
    )

  @override
  async def run(self) -> None:
    await execute(
      self.build, as_json=self.json, config_path=self.config, precision=self.precision
    )


class Check(Command):
  """Verify the valued-field axioms on concrete data"""

  subcommand: Product | Linearity | Positivity | Galois


class DivisorEval(Command):
  """Value of the standard functional on a lattice divisor"""

  field: str = arg(help=FIELD_HELP)
  divisor: str = arg(help='Divisor JSON {"generators": [...], "term": "..."} (or @file)')
  json: bool = arg(False, help=JSON_HELP)
  precision: int | None = arg(None, help=PRECISION_HELP)
  config: Path | None = arg(None, help=CONFIG_HELP)

  @override
  @classmethod
  def prog(cls) -> str:
    return "eval"

  async def build(self, config: AppConfig) -> Report:
    carrier = await load_field(self.field)
    divisor = await load_text(self.divisor)
    return commands.divisor_eval_report(carrier, divisor, config.policy())

  @override
  async def run(self) -> None:
    await execute(
      self.build, as_json=self.json, config_path=self.config, precision=self.precision
    )


class Effective(Command):
  """Decide effectivity of a lattice divisor on its support places"""

  field: str = arg(help=FIELD_HELP)
  divisor: str = arg(help='Divisor JSON {"generators": [...], "term": "..."} (or @file)')
  json: bool = arg(False, help=JSON_HELP)
  precision: int | None = arg(None, help=PRECISION_HELP)
  config: Path | None = arg(None, help=CONFIG_HELP)

  async def build(self, config: AppConfig) -> Report:
    carrier = await load_field(self.field)
    divisor = await load_text(self.divisor)
    return commands.divisor_effective_report(carrier, divisor, config.policy())

  @override
  async def run(self) -> None:
    await execute(
      self.build, as_json=self.json, config_path=self.config, precision=self.precision
    )


class Wedge(Command):
  """Lattice infimum of two divisors and its functional value"""

  field: str = arg(help=FIELD_HELP)
  divisor: str = arg(help="First divisor JSON (or @file)")
  other: str = arg(help="Second divisor JSON (or @file)")
  json: bool = arg(False, help=JSON_HELP)
  precision: int | None = arg(None, help=PRECISION_HELP)
  config: Path | None = arg(None, help=CONFIG_HELP)

  async def build(self, config: AppConfig) -> Report:
    carrier = await load_field(self.field)
    first = await load_text(self.divisor)
    second = await load_text(self.other)
    return commands.divisor_wedge_report(carrier, first, second, config.policy())

  @override
  async def run(self) -> None:
    await execute(
      self.build, as_json=self.json, config_path=self.config, precision=self.precision
    )


class Divisor(Command):
  """Lattice divisors generated by tuples of field elements"""

  subcommand: DivisorEval | Effective | Wedge


class PointHeight(Command):
  """Height of a template divisor specialized at a point"""

  field: str = arg(help=FIELD_HELP)
  template: str = arg(help='Template JSON {"functions": [...], "term": "..."} (or @file)')
  point: str = arg(help='Point JSON, e.g. {"y": "3/2"}')
  json: bool = arg(False, help=JSON_HELP)
  precision: int | None = arg(None, help=PRECISION_HELP)
  config: Path | None = arg(None, help=CONFIG_HELP)

  async def build(self, config: AppConfig) -> Report:
    carrier = await load_field(self.field)
    template = await load_text(self.template)
    return commands.point_height_report(carrier, template, self.point, config.policy())

  @override
  async def run(self) -> None:
    await execute(
      self.build, as_json=self.json, config_path=self.config, precision=self.precision
    )


class Feasible(Command):
  """Decide whether a functional with the given divisor targets exists on the atom set"""

  instance: Path = arg(help="Feasibility instance (YAML or JSON)")
  json: bool = arg(False, help=JSON_HELP)
  precision: int | None = arg(None, help=PRECISION_HELP)
  config: Path | None = arg(None, help=CONFIG_HELP)

  async def build(self, config: AppConfig) -> Report:
    activity_log().solver.starting(f"Solving feasibility for {self.instance}")
    return commands.feasible_report(await load_text(self.instance), config)

  @override
  async def run(self) -> None:
    await execute(
      self.build, as_json=self.json, config_path=self.config, precision=self.precision
    )


class Minimize(Command):
  """Minimize the functional on a divisor over the feasible region"""

  instance: Path = arg(help="Feasibility instance (YAML or JSON)")
  objective: str | None = arg(None, help="Objective term (defaults to the instance's objective)")
  json: bool = arg(False, help=JSON_HELP)
  precision: int | None = arg(None, help=PRECISION_HELP)
  config: Path | None = arg(None, help=CONFIG_HELP)

  async def build(self, config: AppConfig) -> Report:
    activity_log().solver.starting(f"Minimizing over {self.instance}")
    return commands.minimize_report(await load_text(self.instance), self.objective, config)

  @override
  async def run(self) -> None:
    await execute(
      self.build, as_json=self.json, config_path=self.config, precision=self.precision
    )


class Search(Command):
  """Search algebraic points whose template heights approximate the targets"""

  instance: Path = arg(help="Search instance (YAML or JSON)")
  eps: str | None = arg(None, help="Tolerance override, e.g. 1/1000")
  bound: int | None = arg(None, help="Rational height bound override")
  mode: str | None = arg(None, help="first | exhaustive")
  seed: int | None = arg(None, help="Seed for shuffling candidates within a grade")
  threads: int | None = arg(None, help="Worker threads")
  json: bool = arg(False, help=JSON_HELP)
  precision: int | None = arg(None, help=PRECISION_HELP)
  config: Path | None = arg(None, help=CONFIG_HELP)

  async def build(self, config: AppConfig) -> Report:
    mode = SearchMode(self.mode) if self.mode is not None else None
    activity_log().search.starting(f"Searching points for {self.instance}")
    text = await load_text(self.instance)
    return await commands.search_report(text, config, eps=self.eps, bound=self.bound, mode=mode)

  @override
  async def run(self) -> None:
    await execute(
      self.build,
      as_json=self.json,
      config_path=self.config,
      precision=self.precision,
      seed=self.seed,
      threads=self.threads,
    )


class Zeta(Command):
  """Upper estimate of the essential infimum of a height over enumerated points"""

  instance: Path = arg(help="Zeta instance (YAML or JSON)")
  bound: int | None = arg(None, help="Rational height bound override")
  seed: int | None = arg(None, help="Seed for shuffling candidates within a grade")
  threads: int | None = arg(None, help="Worker threads")
  json: bool = arg(False, help=JSON_HELP)
  precision: int | None = arg(None, help=PRECISION_HELP)
  config: Path | None = arg(None, help=CONFIG_HELP)

  async def build(self, config: AppConfig) -> Report:
    activity_log().search.starting(f"Estimating the essential infimum for {self.instance}")
    return await commands.zeta_report(await load_text(self.instance), config, bound=self.bound)

  @override
  async def run(self) -> None:
    await execute(
      self.build,
      as_json=self.json,
      config_path=self.config,
      precision=self.precision,
      seed=self.seed,
      threads=self.threads,
    )


class Config(Command):
  """Print the effective configuration"""

  json: bool = arg(False, help=JSON_HELP)
  precision: int | None = arg(None, help=PRECISION_HELP)
  seed: int | None = arg(None, help="Seed override")
  threads: int | None = arg(None, help="Worker threads override")
  config: Path | None = arg(None, help=CONFIG_HELP)

  async def build(self, config: AppConfig) -> Report:
    return commands.config_report(config)

  @override
  async def run(self) -> None:
    await execute(
      self.build,
      as_json=self.json,
      config_path=self.config,
      precision=self.precision,
      seed=self.seed,
      threads=self.threads,
    )


class Cli(Command):
  """Places, heights and valued-field predicates over Q, number fields and F_p(t)."""

  subcommand: (
    Eval
    | Height
    | Places
    | Check
    | Divisor
    | PointHeight
    | Feasible
    | Minimize
    | Search
    | Zeta
    | Config
  )


def run(argv: list[str] | None = None) -> int:
  try:
    activity_log()
  except RuntimeError:
    set_activity_log(ActivityLog())
  try:
    cmd = Cli.parse(argv)
    cmd.start()
    return EXIT_OK
  except CommandExit as exc:
    return exc.code
  except KeyboardInterrupt:
    activity_log().warning("interrupted")
    return 130


__all__ = ["Cli", "CommandExit", "error_payload", "execute", "load_text", "run"]
