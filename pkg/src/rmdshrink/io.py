"""CSV ingestion, scenario config parsing, and atomic report serialization."""

from __future__ import annotations

import csv
import io
import json
import math
import os
import tempfile

import numpy as np

from .depth import BoxplotSummary
from .detector import DetectionReport
from .simulate import MetricsReport, ScenarioSpec

_SCENARIO_KEYS = {
    "family",
    "p",
    "n",
    "alpha",
    "delta",
    "lambda",
    "reps",
    "seed",
    "variant",
}

_METRIC_COLUMNS = (
    "scenario",
    "family",
    "variant",
    "p",
    "n",
    "alpha",
    "delta",
    "lambda",
    "reps",
    "seed",
    "c",
    "f",
    "fscore",
    "wall_seconds",
)


def load_csv(path, has_header: bool = False) -> tuple[np.ndarray, list[str] | None]:
    """Read a rectangular numeric CSV into a matrix, plus header names if any."""
    with open(path, newline="", encoding="utf-8") as fh:
        rows = [row for row in csv.reader(fh) if row]
    if not rows:
        raise ValueError(f"{path}: empty file")
    names = None
    first_data_row = 1
    if has_header:
        names = [cell.strip() for cell in rows[0]]
        rows = rows[1:]
        first_data_row = 2
        if not rows:
            raise ValueError(f"{path}: no data rows below the header")
    width = len(rows[0])
    data = np.empty((len(rows), width))
    for i, row in enumerate(rows):
        line = first_data_row + i
        if len(row) != width:
            raise ValueError(
                f"{path}: row {line} has {len(row)} cells, expected {width}"
            )
        for j, cell in enumerate(row):
            text = cell.strip()
            if not text:
                raise ValueError(f"{path}: blank cell at row {line}, column {j + 1}")
            try:
                value = float(text)
            except ValueError:
                raise ValueError(
                    f"{path}: non-numeric cell {text!r} at row {line}, column {j + 1}"
                ) from None
            if not math.isfinite(value):
                raise ValueError(
                    f"{path}: non-finite cell {text!r} at row {line}, column {j + 1}"
                )
            data[i, j] = value
    return data, names


def atomic_write_text(path, text: str) -> None:
    """Write through a temp file and rename, so partial output never lands."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".part")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def _scenario_from_mapping(obj, index: int) -> ScenarioSpec:
    if not isinstance(obj, dict):
        raise ValueError(f"scenario {index}: expected a JSON object")
    unknown = set(obj) - _SCENARIO_KEYS
    if unknown:
        raise ValueError(f"scenario {index}: unknown keys {sorted(unknown)}")
    missing = _SCENARIO_KEYS - set(obj)
    if missing:
        raise ValueError(f"scenario {index}: missing keys {sorted(missing)}")
    return ScenarioSpec(
        family=obj["family"],
        p=int(obj["p"]),
        n=int(obj["n"]),
        alpha=float(obj["alpha"]),
        delta=float(obj["delta"]),
        lam=float(obj["lambda"]),
        reps=int(obj["reps"]),
        seed=int(obj["seed"]),
        variant=obj["variant"],
    )


def parse_scenarios(text: str) -> list[ScenarioSpec]:
    """Parse a strict JSON scenario config: one object or an array of them."""
    try:
        parsed = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"config is not valid JSON: {exc}") from None
    items = parsed if isinstance(parsed, list) else [parsed]
    if not items:
        raise ValueError("config contains no scenarios")
    return [_scenario_from_mapping(obj, i) for i, obj in enumerate(items)]


def scenario_id(spec: ScenarioSpec) -> str:
    return (
        f"{spec.family}-{spec.variant}-p{spec.p}-n{spec.n}"
        f"-a{spec.alpha:g}-d{spec.delta:g}-l{spec.lam:g}"
    )


def metrics_row(report: MetricsReport) -> dict:
    spec = report.spec
    return {
        "scenario": scenario_id(spec),
        "family": spec.family,
        "variant": spec.variant,
        "p": spec.p,
        "n": spec.n,
        "alpha": spec.alpha,
        "delta": spec.delta,
        "lambda": spec.lam,
        "reps": spec.reps,
        "seed": spec.seed,
        "c": report.c_mean,
        "f": report.f_mean,
        "fscore": report.fscore_mean,
        "wall_seconds": report.wall_seconds,
    }


def metrics_to_json(reports) -> str:
    return json.dumps([metrics_row(r) for r in reports], indent=2) + "\n"


def metrics_to_csv(reports) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=_METRIC_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for report in reports:
        writer.writerow({k: repr(v) if isinstance(v, float) else v for k, v in metrics_row(report).items()})
    return buffer.getvalue()


def metrics_rows_from_json(text: str) -> list[dict]:
    return json.loads(text)


def metrics_rows_from_csv(text: str) -> list[dict]:
    reader = csv.DictReader(io.StringIO(text))
    rows = []
    for raw in reader:
        row: dict = dict(raw)
        for key in ("p", "n", "reps", "seed"):
            row[key] = int(row[key])
        for key in ("alpha", "delta", "lambda", "c", "f", "fscore", "wall_seconds"):
            row[key] = float(row[key])
        rows.append(row)
    return rows


def detection_to_json(report: DetectionReport, column_names=None) -> str:
    payload = {
        "variant": report.variant,
        "quantile": report.quantile,
        "threshold": report.threshold,
        "n": int(report.d2.shape[0]),
        "eta_location": report.eta_location,
        "eta_scatter": report.eta_scatter,
        "columns": column_names,
        "d2": [float(v) for v in report.d2],
        "flags": [bool(v) for v in report.flags],
        "flagged_indices": [int(i) for i in np.flatnonzero(report.flags)],
    }
    return json.dumps(payload, indent=2) + "\n"


def detection_to_csv(report: DetectionReport) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(("index", "d2", "flag"))
    for i, (d2, flag) in enumerate(zip(report.d2, report.flags)):
        writer.writerow((i, repr(float(d2)), int(flag)))
    return buffer.getvalue()


def boxplot_to_json(summary: BoxplotSummary, data, flags, report: DetectionReport) -> str:
    X = np.asarray(data, dtype=float)
    payload = {
        "variant": report.variant,
        "threshold": report.threshold,
        "median_point": [float(v) for v in summary.median_point],
        "q1": [float(v) for v in summary.q1],
        "q3": [float(v) for v in summary.q3],
        "fences_lo": [float(v) for v in summary.fences_lo],
        "fences_hi": [float(v) for v in summary.fences_hi],
        "depth_order": [int(i) for i in summary.depth_order],
        "counts": {
            "inside_fences": summary.n_inside,
            "outside_fences": summary.n_outside,
            "flagged_total": summary.n_flagged,
        },
        "rows": [[float(v) for v in row] for row in X],
        "flags": [bool(v) for v in np.asarray(flags, dtype=bool)],
    }
    return json.dumps(payload, indent=2) + "\n"
