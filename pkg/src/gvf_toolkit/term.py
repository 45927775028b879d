from __future__ import annotations

from collections.abc import Iterable, Sequence
from contextvars import ContextVar
from io import StringIO

from rich import box
from rich.console import Console
from rich.markup import escape
from rich.table import Table

_current: ContextVar[ActivityLog | None] = ContextVar("activity_log", default=None)


def activity_log() -> ActivityLog:
  """The ActivityLog bound to this context; the CLI installs one before dispatching."""
  current = _current.get()
  if current is None:
    raise RuntimeError("no ActivityLog bound; call set_activity_log() before logging progress")
  return current


def set_activity_log(log: ActivityLog) -> None:
  _current.set(log)


class CategoryLogger:
  """Colored progress lines, optionally tagged with a `[category]` prefix."""

  def __init__(self, console: Console, tag: str | None) -> None:
    self._console = console
    self._tag = tag

  def _emit(self, style: str, message: str) -> None:
    text = escape(message)
    if self._tag:
      text = f"\\[{self._tag}] {text}"
    self._console.print(f"[{style}]{text}[/{style}]")

  def operation(self, message: str) -> None:
    self._emit("cyan", message)

  def success(self, message: str) -> None:
    """A verdict that holds, or a run that found what it was asked for."""
    self._emit("green", message)

  def warning(self, message: str) -> None:
    """Sampled evidence, skipped candidates and other results that need a second look."""
    self._emit("yellow", message)

  def important(self, message: str) -> None:
    self._emit("magenta", message)

  def failure(self, message: str) -> None:
    """Errors that end a command; the message starts with the exception type."""
    self._emit("red", message)

  def starting(self, message: str) -> None:
    self._emit("blue", message)

  def debug(self, message: str) -> None:
    self._emit("white", message)

  def trace(self, message: str) -> None:
    self._emit("grey70", message)


class ActivityLog(CategoryLogger):
  """Human-facing progress on stderr, so structured output on stdout stays clean."""

  def __init__(self, console: Console | None = None, *, quiet: bool = False) -> None:
    console = console or Console(stderr=True, quiet=quiet)
    super().__init__(console, None)
    self.places = CategoryLogger(console, "places")
    self.solver = CategoryLogger(console, "solver")
    self.search = CategoryLogger(console, "search")

  @property
  def console(self) -> Console:
    return self._console

  def prefix(self, name: str | None) -> CategoryLogger:
    return CategoryLogger(self._console, name)


def _cells(values: Iterable[object]) -> list[str]:
  return ["" if value is None else escape(str(value)) for value in values]


def _export(table: Table, width: int, title: str | None = None) -> str:
  console = Console(file=StringIO(), record=True, width=width, color_system=None)
  if title:
    console.print(f"[bold]{escape(title)}[/bold]")
  console.print(table)
  return console.export_text().rstrip()


def render_light_table(rows: Sequence[tuple[str, object]], *, title: str | None = None) -> str:
  """Key/value summary of a report: keys right-aligned, values as plain text."""
  table = Table(show_header=False, show_edge=False, box=box.MINIMAL, pad_edge=False)
  table.add_column(justify="right", style="cyan", no_wrap=True)
  table.add_column(style="white")
  for row in rows:
    table.add_row(*_cells(row))
  return _export(table, 120, title)


def render_grid(
  headers: Sequence[str], rows: Sequence[Sequence[object]], *, title: str | None = None
) -> str:
  """Render a headed table, one row per record (places, atoms, trace entries)."""
  table = Table(*headers, box=box.SIMPLE_HEAD, show_edge=False, pad_edge=False, title=title)
  for row in rows:
    table.add_row(*_cells(row))
  return _export(table, 160)
