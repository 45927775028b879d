"""Subcommand bodies.

Each builder takes decoded settings plus raw payload text and returns a Report. The CLI layer only
parses flags, picks human or JSON rendering and maps the exit code.
"""

from __future__ import annotations

import json
from collections.abc import Sequence
from dataclasses import dataclass, replace
from fractions import Fraction

from gvf_toolkit.algebra import parse_rational, render_rational
from gvf_toolkit.config import AppConfig
from gvf_toolkit.divisors import (
  EffectivityVerdict,
  decode_divisor,
  decode_point,
  decode_template,
  encode_divisor,
  encode_point,
  encode_template,
  functional_value,
  height_at_point,
  is_effective_on_support,
  wedge,
)
from gvf_toolkit.exceptions import EXIT_OK, EXIT_VERDICT
from gvf_toolkit.feasibility import (
  FeasibilityInstance,
  FeasibilityVerdict,
  decode_instance,
  encode_verdict,
  minimize_functional,
  solve_feasible,
)
from gvf_toolkit.gvf import (
  GvfValue,
  LocalTerm,
  PositivityStatus,
  archimedean_total,
  check_galois_invariance,
  check_linearity,
  check_positivity,
  check_product_formula,
  integrate,
  local_terms,
  local_value,
  render_local,
)
from gvf_toolkit.places import (
  Carrier,
  PrecisionPolicy,
  decode_element,
  decode_elements,
  encode_elements,
  encode_field,
  support_places,
)
from gvf_toolkit.search import (
  SearchMode,
  approximate_async,
  decode_search,
  decode_zeta,
  encode_result,
  encode_trace_entry,
  encode_zeta,
  zeta_estimate_async,
)
from gvf_toolkit.term import render_grid, render_light_table
from gvf_toolkit.tropical import TropTerm, height_term, parse, render

DIGITS = 30


@dataclass(frozen=True, slots=True)
class Grid:
  headers: tuple[str, ...]
  rows: tuple[tuple[object, ...], ...]


@dataclass(frozen=True, slots=True)
class Report:
  """What a subcommand prints: a key/value table or a JSON document, plus optional records.

  `records` are emitted one JSON object per line ahead of the summary document.
  """

  title: str
  payload: dict[str, object]
  rows: tuple[tuple[str, object], ...] = ()
  grid: Grid | None = None
  records: tuple[dict[str, object], ...] = ()
  exit_code: int = EXIT_OK

  def render(self, *, as_json: bool) -> str:
    if as_json:
      lines = [_dumps(record) for record in self.records]
      lines.append(_dumps(self.payload))
      return "\n".join(lines)
    parts = [render_light_table(self.rows, title=self.title)]
    if self.grid is not None and self.grid.rows:
      parts.append(render_grid(self.grid.headers, self.grid.rows))
    return "\n\n".join(parts)


def _dumps(data: dict[str, object]) -> str:
  return json.dumps(data, sort_keys=True, ensure_ascii=False, separators=(",", ":"))


def _verdict(ok: bool) -> int:
  return EXIT_OK if ok else EXIT_VERDICT


# --- values ---


def value_rows(value: GvfValue, label: str = "value") -> list[tuple[str, object]]:
  rows: list[tuple[str, object]] = [(label, value.numeric().render(DIGITS))]
  symbolic = value.symbolic()
  if symbolic is not None:
    rows.append(("exact", symbolic))
  elif not value.exact_part_vanishes():
    rows.append(("exact part", GvfValue(value.logs, value.constant, None, value.prec).render()))
  return rows


def local_grid(terms: Sequence[LocalTerm]) -> Grid:
  return Grid(
    ("place", "weight", "v(args)", "t(v)", "contribution"),
    tuple(
      (
        local.place.label(),
        local.place.weight.render(),
        ", ".join(render_local(v, 12) for v in local.values),
        render_local(local.integrand, 12),
        local.contribution.render(12),
      )
      for local in terms
    ),
  )


def _local_payload(terms: Sequence[LocalTerm]) -> list[dict[str, object]]:
  return [
    {
      "place": local.place.label(),
      "weight": local.place.weight.render(),
      "values": [render_local(v) for v in local.values],
      "integrand": render_local(local.integrand),
    }
    for local in terms
  ]


def _integral(
  command: str, carrier: Carrier, term: TropTerm, args: str, policy: PrecisionPolicy
) -> Report:
  elems = decode_elements(carrier, args)
  terms = local_terms(carrier, term, elems, policy)
  fold = archimedean_total(carrier, term, elems, [local.place for local in terms])
  value = integrate(terms, policy.bits, fold)
  payload: dict[str, object] = {
    "command": command,
    "field": encode_field(carrier),
    "term": render(term),
    "args": encode_elements(elems),
    "value": value.to_payload(DIGITS),
    "places": _local_payload(terms),
  }
  rows = [
    ("field", carrier.label()),
    ("term", render(term)),
    ("args", ", ".join(e.render() for e in elems)),
    *value_rows(value),
  ]
  return Report(f"R_t over {carrier.label()}", payload, tuple(rows), local_grid(terms))


def eval_report(carrier: Carrier, term: str, args: str, policy: PrecisionPolicy) -> Report:
  return _integral("eval", carrier, parse(term), args, policy)


def height_report(carrier: Carrier, elem: str, policy: PrecisionPolicy) -> Report:
  return _integral("height", carrier, height_term(), elem, policy)


def places_report(carrier: Carrier, args: str, policy: PrecisionPolicy) -> Report:
  elems = decode_elements(carrier, args)
  places = support_places(carrier, elems, policy)
  described: list[dict[str, object]] = []
  rows: list[tuple[object, ...]] = []
  for place in places:
    values = [render_local(local_value(place, e, policy), 12) for e in elems]
    described.append({**place.describe(), "valuations": values})
    rows.append((place.label(), place.kind.value, place.weight.render(), ", ".join(values)))
  payload: dict[str, object] = {
    "command": "places",
    "field": encode_field(carrier),
    "args": encode_elements(elems),
    "places": described,
  }
  summary = (("field", carrier.label()), ("places", len(places)))
  grid = Grid(("place", "kind", "weight", "valuations"), tuple(rows))
  return Report(f"Support places over {carrier.label()}", payload, summary, grid)


# --- checks ---


def check_product_report(carrier: Carrier, elem: str, policy: PrecisionPolicy) -> Report:
  a = decode_element(carrier, elem)
  residual = check_product_formula(carrier, a, policy)
  ok = residual.vanishes_termwise()
  payload: dict[str, object] = {
    "command": "check product",
    "field": encode_field(carrier),
    "elem": a.render(),
    "residual": residual.to_payload(DIGITS),
    "holds": ok,
  }
  rows = [("elem", a.render()), *value_rows(residual, "residual"), ("holds", ok)]
  return Report("Product formula", payload, tuple(rows), exit_code=_verdict(ok))


def check_linearity_report(
  carrier: Carrier, t1: str, t2: str, alpha: str, args: str, policy: PrecisionPolicy
) -> Report:
  first, second = parse(t1), parse(t2)
  scale = parse_rational(alpha)
  elems = decode_elements(carrier, args)
  additive, homogeneous = check_linearity(carrier, first, second, scale, elems, policy)
  ok = additive.vanishes_termwise() and homogeneous.vanishes_termwise()
  payload: dict[str, object] = {
    "command": "check linearity",
    "field": encode_field(carrier),
    "terms": [render(first), render(second)],
    "alpha": render_rational(scale),
    "additive_residual": additive.to_payload(DIGITS),
    "homogeneous_residual": homogeneous.to_payload(DIGITS),
    "holds": ok,
  }
  rows = [
    *value_rows(additive, "R_{t1+t2} - R_t1 - R_t2"),
    *value_rows(homogeneous, "R_{a*t1} - a*R_t1"),
    ("holds", ok),
  ]
  return Report("Linearity", payload, tuple(rows), exit_code=_verdict(ok))


def check_positivity_report(
  carrier: Carrier, term: str, args: str, policy: PrecisionPolicy
) -> Report:
  parsed = parse(term)
  elems = decode_elements(carrier, args)
  verdict = check_positivity(carrier, parsed, elems, policy)
  payload: dict[str, object] = {
    "command": "check positivity",
    "field": encode_field(carrier),
    "term": render(parsed),
    "status": verdict.status.value,
    "value": verdict.value.to_payload(DIGITS) if verdict.value is not None else None,
    "witnesses": [w.render() for w in verdict.witnesses],
  }
  rows: list[tuple[str, object]] = [("term", render(parsed)), ("status", verdict.status.value)]
  if verdict.value is not None:
    rows += value_rows(verdict.value)
  if verdict.status is PositivityStatus.PREMISE_FAILS:
    rows.append(("negative at", "; ".join(w.render() for w in verdict.witnesses)))
  return Report(
    "Positivity", payload, tuple(rows), local_grid(verdict.local), exit_code=_verdict(verdict.holds)
  )


def check_galois_report(
  carrier: Carrier, term: str, args: str, conjugates: str, policy: PrecisionPolicy
) -> Report:
  parsed = parse(term)
  elems = decode_elements(carrier, args)
  images = decode_elements(carrier, conjugates)
  difference = check_galois_invariance(carrier, parsed, elems, images, policy)
  ok = difference.vanishes_termwise()
  payload: dict[str, object] = {
    "command": "check galois",
    "field": encode_field(carrier),
    "term": render(parsed),
    "args": encode_elements(elems),
    "conjugates": encode_elements(images),
    "difference": difference.to_payload(DIGITS),
    "holds": ok,
  }
  rows = [("term", render(parsed)), *value_rows(difference, "difference"), ("holds", ok)]
  return Report("Galois invariance", payload, tuple(rows), exit_code=_verdict(ok))


# --- divisors ---


def divisor_eval_report(carrier: Carrier, divisor: str, policy: PrecisionPolicy) -> Report:
  d = decode_divisor(carrier, divisor)
  value = functional_value(carrier, d, policy)
  payload: dict[str, object] = {
    "command": "divisor eval",
    "field": encode_field(carrier),
    "divisor": encode_divisor(d),
    "value": value.to_payload(DIGITS),
  }
  rows = [("divisor", d.render()), *value_rows(value)]
  return Report("Standard functional", payload, tuple(rows))


def _effectivity_payload(verdict: EffectivityVerdict) -> dict[str, object]:
  return {
    "effective": verdict.effective,
    "evidence": verdict.evidence.value,
    "betas": [{"place": b.place.label(), "beta": render_local(b.value)} for b in verdict.betas],
    "witnesses": [w.render() for w in verdict.witnesses],
  }


def divisor_effective_report(carrier: Carrier, divisor: str, policy: PrecisionPolicy) -> Report:
  d = decode_divisor(carrier, divisor)
  verdict = is_effective_on_support(d, policy)
  payload: dict[str, object] = {
    "command": "divisor effective",
    "field": encode_field(carrier),
    "divisor": encode_divisor(d),
    **_effectivity_payload(verdict),
  }
  rows = (
    ("divisor", d.render()),
    ("effective", verdict.effective),
    ("evidence", verdict.evidence.value),
  )
  grid = Grid(
    ("place", "beta"), tuple((b.place.label(), render_local(b.value, 12)) for b in verdict.betas)
  )
  return Report("Effectivity", payload, rows, grid, exit_code=_verdict(verdict.effective))


def divisor_wedge_report(
  carrier: Carrier, first: str, second: str, policy: PrecisionPolicy
) -> Report:
  d = decode_divisor(carrier, first)
  e = decode_divisor(carrier, second)
  w = wedge(d, e)
  value = functional_value(carrier, w, policy)
  payload: dict[str, object] = {
    "command": "divisor wedge",
    "field": encode_field(carrier),
    "wedge": encode_divisor(w),
    "value": value.to_payload(DIGITS),
  }
  rows = [("D", d.render()), ("E", e.render()), ("D ^ E", w.render()), *value_rows(value)]
  return Report("Lattice infimum", payload, tuple(rows))


def point_height_report(
  carrier: Carrier, template: str, point: str, policy: PrecisionPolicy
) -> Report:
  parsed = decode_template(template)
  where = decode_point(carrier, point)
  value = height_at_point(parsed, where, policy)
  payload: dict[str, object] = {
    "command": "point-height",
    "field": encode_field(carrier),
    "template": encode_template(parsed),
    "point": encode_point(where),
    "value": value.to_payload(DIGITS),
  }
  rows = [("template", parsed.render()), ("point", where.render()), *value_rows(value)]
  return Report("Height at point", payload, tuple(rows))


# --- feasibility ---


def _feasibility_report(
  command: str, inst: FeasibilityInstance, verdict: FeasibilityVerdict
) -> Report:
  payload: dict[str, object] = {"command": command, **encode_verdict(inst, verdict)}
  rows: list[tuple[str, object]] = [
    ("atoms", len(inst.atoms)),
    ("constraints", len(verdict.constraints)),
    ("eps", render_rational(inst.eps)),
    ("perturbation bound", f"{float(verdict.perturbation_bound):.3e}"),
    ("verdict", verdict.describe()),
  ]
  if verdict.feasible:
    grid = Grid(
      ("atom", "weight"),
      tuple(
        (atom.render(), render_rational(w))
        for atom, w in zip(inst.atoms, verdict.weights, strict=True)
        if w != 0
      ),
    )
  elif verdict.certificate is not None:
    cert = verdict.certificate
    grid = Grid(
      ("constraint", "upper", "lower"),
      tuple(
        (c.label, render_rational(u), render_rational(lo))
        for c, u, lo in zip(verdict.constraints, cert.upper, cert.lower, strict=True)
        if u != 0 or lo != 0
      ),
    )
  else:
    grid = None
  return Report(
    "Functional feasibility", payload, tuple(rows), grid, exit_code=_verdict(verdict.feasible)
  )


def feasible_report(instance: str, config: AppConfig) -> Report:
  inst = decode_instance(
    instance, log_bits=config.feasibility.log_precision, policy=config.policy()
  )
  return _feasibility_report("feasible", inst, solve_feasible(inst))


def minimize_report(instance: str, objective: str | None, config: AppConfig) -> Report:
  inst = decode_instance(
    instance, log_bits=config.feasibility.log_precision, policy=config.policy()
  )
  verdict = minimize_functional(inst, parse(objective) if objective is not None else None)
  return _feasibility_report("minimize", inst, verdict)


# --- search ---


async def search_report(
  instance: str,
  config: AppConfig,
  *,
  eps: str | None = None,
  bound: int | None = None,
  mode: SearchMode | None = None,
) -> Report:
  inst = decode_search(instance, defaults=config.search_settings(), policy=config.policy())
  if eps is not None:
    inst = replace(inst, eps=Fraction(parse_rational(eps)))
  if bound is not None:
    inst = replace(inst, bounds=replace(inst.bounds, rational=bound))
  if mode is not None:
    inst = replace(inst, mode=mode)
  result = await approximate_async(inst)
  payload: dict[str, object] = {"command": "search", **encode_result(inst, result)}
  best = result.best
  rows = (
    ("best point", f"{best.point.render()} in {best.point.carrier.label()}"),
    ("heights", "; ".join(h.render(20) for h in best.heights)),
    ("max deviation", f"{float(best.max_deviation):.6e}"),
    ("eps hits", len(result.hits)),
    ("examined", result.examined),
    ("admissible", result.admissible),
    ("wall time", f"{result.elapsed:.2f}s"),
  )
  grid = Grid(
    ("index", "point", "field", "max deviation"),
    tuple(
      (ev.index, ev.point.render(), ev.point.carrier.label(), f"{float(ev.max_deviation):.3e}")
      for ev in result.hits
    ),
  )
  return Report("Point search", payload, rows, grid, exit_code=_verdict(bool(result.hits)))


async def zeta_report(instance: str, config: AppConfig, *, bound: int | None = None) -> Report:
  request = decode_zeta(instance, defaults=config.search_settings())
  if bound is not None:
    request = replace(request, bounds=replace(request.bounds, rational=bound))
  estimate = await zeta_estimate_async(
    request.template,
    request.exclusions,
    request.classes,
    request.bounds,
    seed=request.seed,
    threads=request.threads,
    policy=config.policy(),
  )
  payload: dict[str, object] = {"command": "zeta", **encode_zeta(estimate)}
  rows: list[tuple[str, object]] = [
    ("template", estimate.template.render()),
    ("exclusions", ", ".join(estimate.exclusions) or "none"),
    ("examined", estimate.examined),
    ("admissible", estimate.admissible),
  ]
  if estimate.estimate is not None and estimate.witness is not None:
    rows += value_rows(estimate.estimate, "upper estimate")
    rows.append(("witness", f"{estimate.witness.render()} in {estimate.witness.carrier.label()}"))
  else:
    rows.append(("upper estimate", "no admissible point"))
  grid = Grid(
    ("index", "point", "height"),
    tuple((e.index, e.point.render(), e.height.render(20)) for e in estimate.trace),
  )
  records = tuple(encode_trace_entry(entry) for entry in estimate.trace)
  return Report("Essential infimum estimate", payload, tuple(rows), grid, records)


# --- config ---


def config_report(config: AppConfig) -> Report:
  payload: dict[str, object] = {"command": "config", **config.model_dump(mode="json")}
  payload["threads"] = config.threads.resolve()
  rows = (
    ("precision", config.precision),
    ("max precision", config.max_precision),
    ("hensel precision", config.hensel_precision),
    ("seed", config.seed),
    ("threads", config.threads.resolve()),
    ("search mode", config.search.mode.value),
    ("rational bound", config.search.rational_bound),
    ("quadratic d bound", config.search.quadratic_d_bound),
    ("quadratic height bound", config.search.quadratic_height_bound),
    ("cyclotomic max order", config.search.cyclotomic_max_order),
    ("custom degree", config.search.custom_degree),
    ("custom coefficient bound", config.search.custom_coeff_bound),
    ("log precision", config.feasibility.log_precision),
  )
  return Report("Effective configuration", payload, rows)


