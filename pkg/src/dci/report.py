"""Result rendering: canonical JSON, CSV tables, and a markdown report.

``results.json`` is the canonical artifact: it embeds the full configuration,
library versions, and every result, and it round-trips losslessly through
``parse_results_json`` (floats survive via JSON's shortest-repr encoding).
The markdown table bolds the best accuracy per task row.
"""

from __future__ import annotations

import csv
import io
import json
import platform
from pathlib import Path

import numpy
import scipy

from ._version import __version__
from .harness import METHOD_ORDER, RunResult, SweepResult

RUN_CSV_FIELDS = ("task", "method", "accuracy", "best_c", "n_pivots_used",
                  "pivot_s", "dci_s", "svm_s")
TIMINGS_CSV_FIELDS = ("task", "method", "pivot_s", "dci_s", "svm_s")
SWEEP_CSV_FIELDS = ("n_pivots", "mean_accuracy", "total_seconds")


def collect_versions() -> dict:
    versions = {
        "python": platform.python_version(),
        "numpy": numpy.__version__,
        "scipy": scipy.__version__,
        "dci": __version__,
    }
    try:
        import numba
        versions["numba"] = numba.__version__
    except ImportError:
        pass
    return versions


def _result_kind(results) -> str:
    kinds = {type(r) for r in results}
    if not results:
        raise ValueError("no results to render")
    if kinds == {RunResult}:
        return "runs"
    if kinds == {SweepResult}:
        return "sweep"
    raise ValueError(f"cannot mix result kinds in one report: {sorted(k.__name__ for k in kinds)}")


def _run_to_dict(r: RunResult) -> dict:
    return {
        "task": r.task,
        "source": r.source,
        "target": r.target,
        "method": r.method,
        "accuracy": r.accuracy,
        "best_c": r.best_c,
        "n_pivots_used": r.n_pivots_used,
        "timings": dict(r.timings),
    }


def _sweep_to_dict(s: SweepResult) -> dict:
    return {
        "n_pivots": s.n_pivots,
        "task_accuracies": dict(s.task_accuracies),
        "mean_accuracy": s.mean_accuracy,
        "total_seconds": s.total_seconds,
    }


def render_json(results, config=None) -> str:
    kind = _result_kind(results)
    entries = [_run_to_dict(r) if kind == "runs" else _sweep_to_dict(r)
               for r in results]
    doc = {
        "kind": kind,
        "config": config.as_dict() if config is not None else None,
        "versions": collect_versions(),
        "results": entries,
    }
    return json.dumps(doc, indent=2) + "\n"


def parse_results_json(text: str):
    """Rebuild the result objects serialized by render_json."""
    doc = json.loads(text)
    if not isinstance(doc, dict) or "kind" not in doc or "results" not in doc:
        raise ValueError("not a results document (missing kind/results)")
    if doc["kind"] == "runs":
        return [RunResult(source=e["source"], target=e["target"], method=e["method"],
                          accuracy=e["accuracy"], best_c=e["best_c"],
                          n_pivots_used=e["n_pivots_used"], timings=e["timings"])
                for e in doc["results"]]
    if doc["kind"] == "sweep":
        return [SweepResult(n_pivots=e["n_pivots"],
                            task_accuracies=e["task_accuracies"],
                            mean_accuracy=e["mean_accuracy"],
                            total_seconds=e["total_seconds"])
                for e in doc["results"]]
    raise ValueError(f"unknown results kind {doc['kind']!r}")


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def render_csv(results) -> str:
    kind = _result_kind(results)
    if kind == "sweep":
        return render_sweep_csv(results)
    rows = [(r.task, r.method, repr(r.accuracy), repr(r.best_c), r.n_pivots_used,
             repr(r.timings.get("pivot_s", 0.0)), repr(r.timings.get("dci_s", 0.0)),
             repr(r.timings.get("svm_s", 0.0)))
            for r in results]
    return _csv_text(RUN_CSV_FIELDS, rows)


def render_timings_csv(results) -> str:
    if _result_kind(results) != "runs":
        raise ValueError("timings table applies to run results only")
    rows = [(r.task, r.method, repr(r.timings.get("pivot_s", 0.0)),
             repr(r.timings.get("dci_s", 0.0)), repr(r.timings.get("svm_s", 0.0)))
            for r in results]
    return _csv_text(TIMINGS_CSV_FIELDS, rows)


def render_sweep_csv(sweeps) -> str:
    if _result_kind(sweeps) != "sweep":
        raise ValueError("sweep table applies to sweep results only")
    rows = [(s.n_pivots, repr(s.mean_accuracy), repr(s.total_seconds))
            for s in sweeps]
    return _csv_text(SWEEP_CSV_FIELDS, rows)


def render_markdown(results, config=None) -> str:
    """Accuracy table, one row per task, best cell per row in bold."""
    if _result_kind(results) != "runs":
        raise ValueError("the markdown table applies to run results only")
    tasks: list[str] = []
    cells: dict = {}
    methods_seen = []
    for r in results:
        if r.task not in cells:
            tasks.append(r.task)
            cells[r.task] = {}
        cells[r.task][r.method] = r.accuracy
        if r.method not in methods_seen:
            methods_seen.append(r.method)
    columns = [m for m in METHOD_ORDER if m in methods_seen]
    columns += [m for m in methods_seen if m not in columns]

    lines = ["| Task | " + " | ".join(columns) + " |",
             "|" + " --- |" * (len(columns) + 1)]
    for task in tasks:
        row = cells[task]
        present = [v for v in row.values()]
        best = max(present)
        rendered = []
        for m in columns:
            if m not in row:
                rendered.append("-")
            elif row[m] == best:
                rendered.append(f"**{row[m]:.3f}**")
            else:
                rendered.append(f"{row[m]:.3f}")
        lines.append("| " + task + " | " + " | ".join(rendered) + " |")

    if config is not None:
        lines.append("")
        lines.append(f"Document standardization: "
                     f"{'on' if config.standardize_docs else 'off'} "
                     f"(fit population: {config.standardize_fit}); "
                     f"feature standardization: "
                     f"{'on' if config.standardize_features else 'off'}; "
                     f"tf: {'sublinear' if config.sublinear_tf else 'raw counts'}; "
                     f"min_support: {config.min_support}; seed: {config.seed}.")
        lines.append("Cross-lingual Lower baseline: source documents translated "
                     "term-by-term through the dictionary.")
    return "\n".join(lines) + "\n"


def write_run_reports(results, config, outdir) -> dict:
    """Write results.json / results.csv / report.md / timings.csv; returns paths."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    paths = {
        "results.json": outdir / "results.json",
        "results.csv": outdir / "results.csv",
        "report.md": outdir / "report.md",
        "timings.csv": outdir / "timings.csv",
    }
    paths["results.json"].write_text(render_json(results, config), encoding="utf-8")
    paths["results.csv"].write_text(render_csv(results), encoding="utf-8")
    paths["report.md"].write_text(render_markdown(results, config), encoding="utf-8")
    paths["timings.csv"].write_text(render_timings_csv(results), encoding="utf-8")
    return paths


def write_sweep_reports(sweeps, config, outdir) -> dict:
    """Write results.json (sweep kind) and sweep.csv; returns paths."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    paths = {
        "results.json": outdir / "results.json",
        "sweep.csv": outdir / "sweep.csv",
    }
    paths["results.json"].write_text(render_json(sweeps, config), encoding="utf-8")
    paths["sweep.csv"].write_text(render_sweep_csv(sweeps), encoding="utf-8")
    return paths
