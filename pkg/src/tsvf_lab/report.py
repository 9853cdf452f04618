"""Run configuration, parallel catalog execution and report rendering."""
from __future__ import annotations

import csv
import io
import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

from .scenarios import CATALOG, ScenarioResult, run_scenario, scenario_names

REPORT_VERSION = "1.0"
FORMATS = ("text", "json", "csv")


@dataclass(frozen=True)
class RunConfig:
    scenario_names: list[str] = field(default_factory=lambda: ["all"])
    trials: int = 100_000
    seed: int = 42
    format: str = "text"
    tolerance_sigma: float = 4.0
    output_path: str | None = None

    def __post_init__(self):
        if self.trials < 100:
            raise ValueError("trials must be at least 100")
        if not self.tolerance_sigma > 0:
            raise ValueError("tolerance_sigma must be positive")
        if self.format not in FORMATS:
            raise ValueError(f"format must be one of {FORMATS}")

    def resolved_names(self) -> list[str]:
        if not self.scenario_names or "all" in self.scenario_names:
            return scenario_names()
        unknown = [n for n in self.scenario_names if n not in CATALOG]
        if unknown:
            raise KeyError(f"unknown scenario(s) {', '.join(unknown)}; valid names: {', '.join(scenario_names())}")
        return list(self.scenario_names)


def worker_count() -> int | None:
    raw = os.environ.get("TSVF_LAB_THREADS")
    if not raw:
        return None
    n = int(raw)
    if n < 1:
        raise ValueError("TSVF_LAB_THREADS must be a positive integer")
    return n


def run_catalog(config: RunConfig) -> list[ScenarioResult]:
    names = config.resolved_names()
    with ThreadPoolExecutor(max_workers=worker_count()) as pool:
        futures = [pool.submit(run_scenario, n, config.trials, config.seed, config.tolerance_sigma) for n in names]
        return [f.result() for f in futures]


def _jsonable(x):
    if isinstance(x, complex):
        return {"re": x.real, "im": x.imag}
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if hasattr(x, "item"):  # numpy scalar
        return _jsonable(x.item())
    return x


def result_dict(r: ScenarioResult) -> dict:
    checks = []
    for c in r.checks:
        d = asdict(c)
        d["trials"] = r.trials
        d["seed"] = r.seed
        checks.append(d)
    return _jsonable({
        "name": r.name,
        "passed": r.passed,
        "trials": r.trials,
        "seed": r.seed,
        "anchor": r.anchor,
        "checks": checks,
        "notes": r.notes,
    })


def build_report(config: RunConfig, results: list[ScenarioResult]) -> dict:
    cfg = asdict(config)
    cfg["scenario_names"] = config.resolved_names()
    cfg.pop("output_path")
    return {"version": REPORT_VERSION, "config": cfg, "results": [result_dict(r) for r in results]}


def render_json(report: dict) -> str:
    return json.dumps(report, indent=2) + "\n"


CSV_FIELDS = ["scenario", "description", "kind", "analytic", "estimate", "tolerance", "passed", "n", "trials", "seed",
              "anchor"]


def _cell(v):
    if isinstance(v, dict) and set(v) == {"re", "im"}:
        return repr(complex(v["re"], v["im"]))
    return "" if v is None else v


def render_csv(report: dict) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    writer.writeheader()
    for r in report["results"]:
        for c in r["checks"]:
            writer.writerow({"scenario": r["name"], **{k: _cell(c.get(k)) for k in CSV_FIELDS[1:]}})
    return buf.getvalue()


def _fmt(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, dict):
        return f"{v['re']:.6f}{v['im']:+.6f}i"
    if isinstance(v, bool):
        return str(v)
    if isinstance(v, (int, float)):
        return f"{v:.6f}"
    return str(v)


def render_text(report: dict) -> str:
    lines = []
    for r in report["results"]:
        status = "PASS" if r["passed"] else "FAIL"
        lines.append(f"[{status}] {r['name']}  (trials={r['trials']}, seed={r['seed']})  -- {r['anchor']}")
        for c in r["checks"]:
            mark = "ok " if c["passed"] else "BAD"
            if c["kind"] == "record":
                lines.append(f"    {mark} {c['description']}: {_fmt(c['analytic'])}")
            else:
                lines.append(f"    {mark} {c['description']}: expected {_fmt(c['analytic'])}, "
                             f"got {_fmt(c['estimate'])} (tol {c['tolerance']:.3g})")
    n_fail = sum(not r["passed"] for r in report["results"])
    lines.append(f"{len(report['results']) - n_fail}/{len(report['results'])} scenarios passed")
    return "\n".join(lines) + "\n"


RENDERERS = {"text": render_text, "json": render_json, "csv": render_csv}


def all_passed(report: dict) -> bool:
    return all(c["passed"] for r in report["results"] for c in r["checks"])
