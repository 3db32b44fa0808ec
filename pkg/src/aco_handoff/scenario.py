"""Scenario files, ant-count sweeps and CSV emission.

A scenario is a YAML document with the top-level keys ``format_version``,
``name``, ``description`` (optional), ``call``, ``channels``, ``criteria``
(optional) and ``aco`` (optional). The bundled
``scenarios/paper-baseline.yaml`` is the commented reference example.
Unknown keys anywhere are rejected.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field, fields
from importlib import resources
from pathlib import Path
from typing import Any, Iterable, Mapping, Sequence, TextIO

import numpy as np
import yaml

from .colony import AcoParams, ConvergenceReport, run_until_convergence
from .criteria import DEFAULT_WEIGHTS, CriteriaConfig
from .errors import HandoffError, ParseError, ScenarioError, UnknownKeyError, ValidationError
from .model import (
    DEFAULT_AFFINITY,
    OTHER_CLASS,
    KNOWN_CLASSES,
    CallContext,
    ChannelProfile,
    DecisionGraph,
    TrafficType,
    build_decision_graph,
)

FORMAT_VERSION = 1
DEFAULT_ANT_COUNTS = (3, 4, 5, 6, 7, 8)
TRACE_HEADER = ("iteration", "channel_id", "tau", "probability")
SUMMARY_HEADER = ("ant_count", "winner", "converged_at_iteration", "wall_time_ms")

_TOP_KEYS = {"format_version", "name", "description", "call", "channels", "criteria", "aco"}
_CALL_KEYS = {"traffic_type", "speed", "direction", "priority", "handoff_count"}
_CHANNEL_REQUIRED = ("id", "class", "time_to_drop", "packet_loss_rate", "latency", "throughput",
                     "packet_drop_prob", "cost", "bandwidth")
_CHANNEL_OPTIONAL = {"out_of_order_rate": 0.0, "availability": 1.0, "handoff_count": None}
_CRITERIA_KEYS = {"weights", "affinity", "rho_min", "rho_max", "invert_td"}
_ACO_KEYS = {f.name for f in fields(AcoParams)}
_AFFINITY_CLASSES = set(KNOWN_CLASSES) | {OTHER_CLASS}


@dataclass(frozen=True)
class Scenario:
    name: str
    call: CallContext
    channels: tuple[ChannelProfile, ...]
    criteria: CriteriaConfig = field(default_factory=CriteriaConfig)
    aco: AcoParams = field(default_factory=AcoParams)
    description: str = ""

    def graph(self) -> DecisionGraph:
        return build_decision_graph(self.call, self.channels, self.criteria.affinity)


@dataclass
class SweepEntry:
    ant_count: int
    seed: int
    report: ConvergenceReport | None
    error: str | None = None


@dataclass
class SweepReport:
    scenario: str
    entries: list[SweepEntry]

    def summary_rows(self) -> list[tuple[int, str | None, int | None, float | None]]:
        rows = []
        for e in self.entries:
            if e.report is None:
                rows.append((e.ant_count, None, None, None))
            else:
                rows.append((e.ant_count, e.report.winner, e.report.converged_at, e.report.wall_time * 1e3))
        return rows

    @property
    def all_converged(self) -> bool:
        return all(e.report is not None and e.report.converged for e in self.entries)

    def to_dict(self, include_trace: bool = False) -> dict:
        return {
            "scenario": self.scenario,
            "entries": [
                {"ant_count": e.ant_count, "seed": e.seed, "error": e.error,
                 "report": None if e.report is None else e.report.to_dict(include_trace)}
                for e in self.entries
            ],
        }


# -- loading -----------------------------------------------------------------

def _check_keys(obj: Any, allowed: Iterable[str], where: str) -> Mapping[str, Any]:
    if not isinstance(obj, Mapping):
        raise ValidationError(where, "must be a mapping")
    allowed = set(allowed)
    for key in obj:
        if key not in allowed:
            raise UnknownKeyError(where, str(key))
    return obj


def _number(value: Any, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
        raise ValidationError(where, f"must be a finite number, got {value!r}")
    return float(value)


def _integer(value: Any, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValidationError(where, f"must be an integer, got {value!r}")
    return value


def _traffic_type(value: Any, where: str) -> TrafficType:
    try:
        return TrafficType(value)
    except ValueError:
        choices = ", ".join(t.value for t in TrafficType)
        raise ValidationError(where, f"must be one of {choices}, got {value!r}") from None


def _parse_call(raw: Any) -> CallContext:
    raw = _check_keys(raw, _CALL_KEYS, "call")
    if "traffic_type" not in raw:
        raise ValidationError("call.traffic_type", "is required")
    kwargs: dict[str, Any] = {"traffic_type": _traffic_type(raw["traffic_type"], "call.traffic_type")}
    for key in ("speed", "direction", "priority"):
        if key in raw:
            kwargs[key] = _number(raw[key], f"call.{key}")
    if "handoff_count" in raw:
        kwargs["handoff_count"] = _integer(raw["handoff_count"], "call.handoff_count")
    try:
        return CallContext(**kwargs)
    except ValidationError as exc:
        raise ValidationError(f"call.{exc.field}", exc.message) from None


def _parse_channel(raw: Any, where: str) -> ChannelProfile:
    raw = _check_keys(raw, set(_CHANNEL_REQUIRED) | set(_CHANNEL_OPTIONAL), where)
    for key in _CHANNEL_REQUIRED:
        if key not in raw:
            raise ValidationError(f"{where}.{key}", "is required")
    for key in ("id", "class"):
        if not isinstance(raw[key], str) or not raw[key]:
            raise ValidationError(f"{where}.{key}", "must be a non-empty string")
    kwargs: dict[str, Any] = {"id": raw["id"], "channel_class": raw["class"]}
    for key in _CHANNEL_REQUIRED[2:]:
        kwargs[key] = _number(raw[key], f"{where}.{key}")
    for key, default in _CHANNEL_OPTIONAL.items():
        value = raw.get(key, default)
        if key == "handoff_count":
            kwargs[key] = None if value is None else _integer(value, f"{where}.{key}")
        else:
            kwargs[key] = _number(value, f"{where}.{key}")
    try:
        return ChannelProfile(**kwargs)
    except ValidationError as exc:
        raise ValidationError(f"{where}.{exc.field}", exc.message) from None


def _parse_criteria(raw: Any) -> CriteriaConfig:
    raw = _check_keys(raw if raw is not None else {}, _CRITERIA_KEYS, "criteria")
    weights = dict(DEFAULT_WEIGHTS)
    for key, value in _check_keys(raw.get("weights", {}) or {}, DEFAULT_WEIGHTS, "criteria.weights").items():
        weights[key] = _number(value, f"criteria.weights.{key}")
    affinity = {t: dict(row) for t, row in DEFAULT_AFFINITY.items()}
    table = _check_keys(raw.get("affinity", {}) or {}, {t.value for t in TrafficType}, "criteria.affinity")
    for tname, row in table.items():
        where = f"criteria.affinity.{tname}"
        for cls, value in _check_keys(row, _AFFINITY_CLASSES, where).items():
            value = _number(value, f"{where}.{cls}")
            if not 0 < value <= 1:
                raise ValidationError(f"{where}.{cls}", "must lie in (0, 1]")
            affinity[TrafficType(tname)][cls] = value
    rho_min = _number(raw.get("rho_min", 0.02), "criteria.rho_min")
    rho_max = _number(raw.get("rho_max", 0.5), "criteria.rho_max")
    if not 0 < rho_min < rho_max < 1:
        raise ValidationError("criteria.rho_min", "need 0 < rho_min < rho_max < 1")
    invert_td = raw.get("invert_td", False)
    if not isinstance(invert_td, bool):
        raise ValidationError("criteria.invert_td", "must be true or false")
    return CriteriaConfig(weights=weights, affinity=affinity, rho_min=rho_min, rho_max=rho_max,
                          invert_td=invert_td)


def _parse_aco(raw: Any) -> AcoParams:
    raw = _check_keys(raw if raw is not None else {}, _ACO_KEYS, "aco")
    ints = {"ant_count", "max_iterations", "convergence_window", "seed"}
    kwargs = {k: (_integer(v, f"aco.{k}") if k in ints else _number(v, f"aco.{k}")) for k, v in raw.items()}
    return AcoParams(**kwargs)


def scenario_from_dict(doc: Any) -> Scenario:
    doc = _check_keys(doc, _TOP_KEYS, "<root>")
    version = doc.get("format_version", FORMAT_VERSION)
    if version != FORMAT_VERSION:
        raise ValidationError("format_version", f"unsupported version {version!r}, expected {FORMAT_VERSION}")
    name = doc.get("name")
    if not isinstance(name, str) or not name.strip():
        raise ValidationError("name", "must be a non-empty string")
    description = doc.get("description", "") or ""
    if not isinstance(description, str):
        raise ValidationError("description", "must be a string")
    if "call" not in doc:
        raise ValidationError("call", "is required")
    call = _parse_call(doc["call"])
    raw_channels = doc.get("channels")
    if not isinstance(raw_channels, list) or not raw_channels:
        raise ValidationError("channels", "must be a non-empty list")
    channels = tuple(_parse_channel(ch, f"channels[{i}]") for i, ch in enumerate(raw_channels))
    seen: set[str] = set()
    for i, ch in enumerate(channels):
        if ch.id in seen:
            raise ValidationError(f"channels[{i}].id", f"duplicate channel id {ch.id!r}")
        seen.add(ch.id)
    return Scenario(name=name, call=call, channels=channels, criteria=_parse_criteria(doc.get("criteria")),
                    aco=_parse_aco(doc.get("aco")), description=description)


def parse_scenario(text: str) -> Scenario:
    try:
        doc = yaml.safe_load(text)
    except yaml.MarkedYAMLError as exc:
        mark = exc.problem_mark or exc.context_mark
        line, col = (mark.line + 1, mark.column + 1) if mark is not None else (None, None)
        raise ParseError(str(exc.problem or exc), line, col) from None
    except yaml.YAMLError as exc:
        raise ParseError(str(exc)) from None
    return scenario_from_dict(doc)


def bundled_scenarios() -> list[str]:
    root = resources.files("aco_handoff") / "scenarios"
    return sorted(p.name[: -len(".yaml")] for p in root.iterdir() if p.name.endswith(".yaml"))


def bundled_scenario_path(name: str) -> Path:
    name = name.removeprefix("examples/")
    path = Path(str(resources.files("aco_handoff") / "scenarios" / f"{name}.yaml"))
    if not path.is_file():
        raise FileNotFoundError(f"no bundled scenario named {name!r}")
    return path


def load_scenario(source: str | Path) -> Scenario:
    """Load a scenario from a file path, a bundled scenario name or YAML text.

    A ``str`` containing a newline is parsed as YAML text. Any other string
    is tried as a file path first and then as a bundled scenario name such as
    ``"paper-baseline"`` (an ``examples/`` prefix is accepted).
    """
    if isinstance(source, str) and "\n" in source:
        return parse_scenario(source)
    path = Path(source)
    if not path.is_file() and isinstance(source, str):
        try:
            path = bundled_scenario_path(source)
        except FileNotFoundError:
            raise FileNotFoundError(f"scenario file not found: {source}") from None
    return parse_scenario(path.read_text(encoding="utf-8"))


def baseline_scenario() -> Scenario:
    return load_scenario(bundled_scenario_path("paper-baseline"))


def scenario_to_dict(scenario: Scenario) -> dict:
    call = scenario.call
    crit = scenario.criteria
    channels = []
    for ch in scenario.channels:
        row = {"id": ch.id, "class": ch.channel_class}
        row.update({k: getattr(ch, k) for k in _CHANNEL_REQUIRED[2:]})
        row.update(out_of_order_rate=ch.out_of_order_rate, availability=ch.availability)
        if ch.handoff_count is not None:
            row["handoff_count"] = ch.handoff_count
        channels.append(row)
    doc = {
        "format_version": FORMAT_VERSION,
        "name": scenario.name,
        "call": {"traffic_type": call.traffic_type.value, "speed": call.speed, "direction": call.direction,
                 "priority": call.priority, "handoff_count": call.handoff_count},
        "channels": channels,
        "criteria": {
            "weights": {k: crit.weight(k) for k in DEFAULT_WEIGHTS},
            "affinity": {t.value: dict(crit.affinity[t]) for t in TrafficType},
            "rho_min": crit.rho_min, "rho_max": crit.rho_max, "invert_td": crit.invert_td,
        },
        "aco": asdict(scenario.aco),
    }
    if scenario.description:
        doc["description"] = scenario.description
    return doc


def dump_scenario(scenario: Scenario) -> str:
    return yaml.safe_dump(scenario_to_dict(scenario), sort_keys=False)


# -- experiments -------------------------------------------------------------

def run_sweep(scenario: Scenario, ant_counts: Sequence[int] = DEFAULT_ANT_COUNTS,
              seed: int | None = None) -> SweepReport:
    """Run the colony once per ant count; entry ``i`` uses seed ``base + i``.

    Engine errors are recorded on their entry instead of aborting the sweep.
    """
    ant_counts = list(ant_counts)
    if not ant_counts:
        raise ValueError("ant_counts must not be empty")
    if any(isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 1 for n in ant_counts):
        raise ValueError(f"ant counts must be integers >= 1, got {ant_counts}")
    if any(b <= a for a, b in zip(ant_counts, ant_counts[1:])):
        raise ValueError(f"ant counts must be strictly increasing, got {ant_counts}")
    base = scenario.aco.seed if seed is None else seed
    graph = scenario.graph()
    entries = []
    for i, n in enumerate(ant_counts):
        run_seed = (base + i) % 2**64
        params = AcoParams(**{**asdict(scenario.aco), "ant_count": int(n), "seed": run_seed})
        try:
            report = run_until_convergence(graph, scenario.criteria, params)
        except HandoffError as exc:
            entries.append(SweepEntry(int(n), run_seed, None, f"{type(exc).__name__}: {exc}"))
        else:
            entries.append(SweepEntry(int(n), run_seed, report))
    return SweepReport(scenario.name, entries)


# -- emission ----------------------------------------------------------------

def format_decimal(x: float) -> str:
    """Nine significant digits, positional notation, locale independent."""
    x = float(x)
    if x == 0:
        return "0.00000000"
    exponent = int(f"{x:.8e}".split("e")[1])
    return f"{x:.{max(8 - exponent, 0)}f}"


def emit_trace_csv(report: ConvergenceReport, sink: TextIO) -> None:
    writer = csv.writer(sink, lineterminator="\n")
    writer.writerow(TRACE_HEADER)
    for row in report.trace:
        for cid, tau, p in zip(report.channel_ids, row.tau, row.probabilities):
            writer.writerow((row.iteration, cid, format_decimal(tau), format_decimal(p)))


def emit_convergence_summary(sweep: SweepReport, sink: TextIO) -> None:
    writer = csv.writer(sink, lineterminator="\n")
    writer.writerow(SUMMARY_HEADER)
    for ants, winner, at, wall in sweep.summary_rows():
        writer.writerow((ants, winner or "", "" if at is None else at, "" if wall is None else f"{wall:.3f}"))


def trace_csv_text(report: ConvergenceReport) -> str:
    buf = io.StringIO()
    emit_trace_csv(report, buf)
    return buf.getvalue()


def write_report_json(obj: ConvergenceReport | SweepReport, sink: TextIO, include_trace: bool = False) -> None:
    json.dump(obj.to_dict(include_trace), sink, indent=2)
    sink.write("\n")


# -- synthetic scenarios -----------------------------------------------------

def generate_scenario(rng: np.random.Generator, n_channels: int | None = None, name: str = "synthetic",
                      min_availability: float = 0.6) -> Scenario:
    """Random but valid scenario, criteria drawn log-uniformly over plausible ranges."""

    def log_uniform(lo: float, hi: float) -> float:
        return float(np.exp(rng.uniform(np.log(lo), np.log(hi))))

    n = int(rng.integers(2, 6)) if n_channels is None else n_channels
    call = CallContext(
        traffic_type=list(TrafficType)[int(rng.integers(2))],
        speed=float(rng.uniform(0, 30)),
        direction=float(rng.uniform(0, 360)),
        priority=float(rng.uniform(0.1, 1.0)),
        handoff_count=int(rng.integers(0, 5)),
    )
    classes = ("CDMA", "WiFi", "WiMAX", "LTE")
    channels = tuple(
        ChannelProfile(
            id=f"ch{i}",
            channel_class=classes[int(rng.integers(len(classes)))],
            time_to_drop=log_uniform(5, 300),
            packet_loss_rate=log_uniform(1e-3, 0.1),
            latency=log_uniform(5, 200),
            throughput=log_uniform(0.5, 100),
            packet_drop_prob=log_uniform(1e-3, 0.1),
            out_of_order_rate=log_uniform(1e-4, 0.05),
            cost=log_uniform(5e-3, 0.2),
            bandwidth=log_uniform(1, 100),
            availability=float(rng.uniform(min_availability, 1.0)),
        )
        for i in range(n)
    )
    return Scenario(name=name, call=call, channels=channels)


__all__ = [
    "Scenario", "SweepEntry", "SweepReport", "ScenarioError", "load_scenario", "parse_scenario",
    "dump_scenario", "scenario_from_dict", "scenario_to_dict", "baseline_scenario", "bundled_scenarios",
    "bundled_scenario_path", "run_sweep", "emit_trace_csv", "emit_convergence_summary", "trace_csv_text",
    "write_report_json", "generate_scenario", "format_decimal",
]
