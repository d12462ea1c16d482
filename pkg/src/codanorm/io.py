"""File formats: CSV ingestion with diagnostics, JSON reports, artifacts.

Conventions shared by everything below:

* CSV files are UTF-8 with a header row and '.' decimals; lines starting
  with ``#`` are comments (the sample writer uses one to carry metadata) and
  blank lines are ignored.
* Validation failures are collected per line and raised together as a
  :class:`~codanorm.errors.DatasetValidationError`, so a bad file produces
  one diagnostic listing every offending line instead of dying on the first.
* JSON reports carry ``schema_version`` so downstream parsers can refuse
  what they do not understand.
* Grid artifacts are written as a numeric CSV payload plus a small
  ``.meta.json`` sidecar holding the axis metadata; everything emitted here
  re-parses through this same module.
"""

from __future__ import annotations

import csv
import json
import math

import numpy as np

from .errors import DatasetValidationError, DimensionMismatchError
from .grids import CoordinateDensityGrid, HistogramArtifact, TernaryDensityGrid
from .inference import RPlusSample, SimplexSample
from .laws import AlnLaw, LognormalLaw, NormalOnRPlus, NormalOnSimplex

__all__ = [
    "SCHEMA_VERSION",
    "read_rplus_csv",
    "read_simplex_csv",
    "write_samples_csv",
    "read_samples_csv",
    "dumps_report",
    "write_report",
    "read_report",
    "law_to_dict",
    "write_grid_artifact",
    "read_grid_artifact",
]

SCHEMA_VERSION = 1

#: Relative closure slack accepted at ingestion when auto-close is on.
INGEST_CLOSURE_TOL = 1e-6


def _float_repr(v):
    """Shortest round-trip decimal form, for byte-stable output."""
    return repr(float(v))


def _read_csv_lines(path):
    """Yield (line_number, row_fields) for data lines; first yield is the
    header.  Comment and blank lines are skipped but still counted."""
    out = []
    with open(path, "r", encoding="utf-8", newline="") as fh:
        for lineno, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            out.append((lineno, next(csv.reader([line]))))
    return out


def read_rplus_csv(path):
    """Read a one-column CSV of positive values.

    Returns ``(sample, column_name)``.  Raises
    :class:`DatasetValidationError` carrying line-numbered diagnostics.
    """
    lines = _read_csv_lines(path)
    if not lines:
        raise DatasetValidationError([f"{path}: file has no header row"])
    (_, header), rows = lines[0], lines[1:]
    if len(header) != 1:
        raise DatasetValidationError(
            [f"{path}: expected exactly one column, header has {len(header)}"]
        )
    column = header[0].strip()
    problems = []
    logs = []
    for lineno, fields in rows:
        if len(fields) != 1:
            problems.append(f"line {lineno}: expected 1 field, got {len(fields)}")
            continue
        try:
            v = float(fields[0])
        except ValueError:
            problems.append(f"line {lineno}: {fields[0]!r} is not a number")
            continue
        if not math.isfinite(v) or v <= 0.0:
            problems.append(f"line {lineno}: value {v!r} is not strictly positive")
            continue
        logs.append(math.log(v))
    if problems:
        raise DatasetValidationError(problems)
    if not logs:
        raise DatasetValidationError([f"{path}: no data rows"])
    return RPlusSample.from_logs(np.array(logs)), column


def read_simplex_csv(path, kappa=1.0, auto_close=True):
    """Read a multi-column CSV of compositional rows.

    Rows must be strictly positive; each row's sum is checked against
    ``kappa``.  With ``auto_close`` (the default) sums within a relative
    1e-6 are re-normalized, which tolerates published rounded tables; beyond
    that — or beyond 1e-12 with ``auto_close=False`` — the row is reported.

    Returns ``(sample, column_names)``.
    """
    kappa = float(kappa)
    if not math.isfinite(kappa) or kappa <= 0.0:
        raise DatasetValidationError([f"kappa must be strictly positive, got {kappa!r}"])
    lines = _read_csv_lines(path)
    if not lines:
        raise DatasetValidationError([f"{path}: file has no header row"])
    (_, header), rows = lines[0], lines[1:]
    if len(header) < 2:
        raise DatasetValidationError(
            [f"{path}: a compositional file needs at least 2 columns, header has {len(header)}"]
        )
    columns = [h.strip() for h in header]
    D = len(columns)
    tol = INGEST_CLOSURE_TOL if auto_close else 1e-12
    problems = []
    data = []
    for lineno, fields in rows:
        if len(fields) != D:
            problems.append(f"line {lineno}: expected {D} fields, got {len(fields)}")
            continue
        try:
            vals = [float(f) for f in fields]
        except ValueError:
            problems.append(f"line {lineno}: non-numeric field among {fields!r}")
            continue
        bad = [columns[i] for i, v in enumerate(vals) if not (math.isfinite(v) and v > 0.0)]
        if bad:
            problems.append(
                f"line {lineno}: non-positive part(s) in column(s) {', '.join(bad)}"
            )
            continue
        total = sum(vals)
        if abs(total - kappa) > tol * kappa:
            problems.append(
                f"line {lineno}: row sums to {total!r}, not kappa={kappa!r} "
                f"(relative error {abs(total - kappa) / kappa:.3g})"
            )
            continue
        data.append(vals)
    if problems:
        raise DatasetValidationError(problems)
    if not data:
        raise DatasetValidationError([f"{path}: no data rows"])
    return SimplexSample.from_rows(np.array(data), kappa), columns


# --------------------------------------------------------------------------
# sample emission
# --------------------------------------------------------------------------

def write_samples_csv(path, meta, columns, rows):
    """Write drawn samples with a metadata comment line.

    ``meta`` is recorded as JSON on the first line after a ``#``; ``rows``
    may be 1-d (one column) or 2-d.
    """
    rows = np.asarray(rows, dtype=float)
    if rows.ndim == 1:
        rows = rows[:, None]
    if rows.shape[1] != len(columns):
        raise DimensionMismatchError(
            f"{len(columns)} column names for {rows.shape[1]} columns"
        )
    meta = {"schema_version": SCHEMA_VERSION, **meta}
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("# codanorm-samples " + json.dumps(meta, sort_keys=True) + "\n")
        fh.write(",".join(columns) + "\n")
        for row in rows:
            fh.write(",".join(_float_repr(v) for v in row) + "\n")


def read_samples_csv(path):
    """Read a file written by :func:`write_samples_csv`.

    Returns ``(meta, columns, rows)``; ``meta`` is ``{}`` for a plain CSV.
    """
    meta = {}
    with open(path, "r", encoding="utf-8", newline="") as fh:
        first = fh.readline()
    if first.startswith("# codanorm-samples "):
        meta = json.loads(first[len("# codanorm-samples "):])
    lines = _read_csv_lines(path)
    if not lines:
        raise DatasetValidationError([f"{path}: file has no header row"])
    (_, header), rows = lines[0], lines[1:]
    columns = [h.strip() for h in header]
    problems = []
    data = []
    for lineno, fields in rows:
        if len(fields) != len(columns):
            problems.append(f"line {lineno}: expected {len(columns)} fields, got {len(fields)}")
            continue
        try:
            data.append([float(f) for f in fields])
        except ValueError:
            problems.append(f"line {lineno}: non-numeric field among {fields!r}")
    if problems:
        raise DatasetValidationError(problems)
    return meta, columns, np.array(data) if data else np.empty((0, len(columns)))


# --------------------------------------------------------------------------
# JSON reports
# --------------------------------------------------------------------------

def law_to_dict(law):
    """JSON-ready description of any of the four laws."""
    if isinstance(law, (NormalOnRPlus, LognormalLaw)):
        return {
            "family": "rplus_normal",
            "reference_measure": "lebesgue" if isinstance(law, LognormalLaw) else "natural",
            "mu": law.mu,
            "sigma2": law.sigma2,
        }
    if isinstance(law, (NormalOnSimplex, AlnLaw)):
        return {
            "family": "simplex_normal",
            "reference_measure": "lebesgue" if isinstance(law, AlnLaw) else "natural",
            "mu": law.mu.tolist(),
            "sigma": law.sigma.tolist(),
            "basis": law.basis.matrix.tolist(),
        }
    raise TypeError(f"not a law: {type(law).__name__}")


def dumps_report(payload) -> str:
    """Serialize a report dict with the schema version stamped in."""
    body = {"schema_version": SCHEMA_VERSION, "tool": "codanorm", **payload}
    return json.dumps(body, indent=2, sort_keys=True)


def write_report(payload, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_report(payload) + "\n")


def read_report(path):
    with open(path, "r", encoding="utf-8") as fh:
        body = json.load(fh)
    if body.get("schema_version") != SCHEMA_VERSION:
        raise DatasetValidationError(
            [f"{path}: unsupported schema_version {body.get('schema_version')!r}"]
        )
    return body


# --------------------------------------------------------------------------
# grid artifacts
# --------------------------------------------------------------------------

def _write_matrix_csv(path, matrix):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        for row in np.atleast_2d(matrix):
            fh.write(",".join(_float_repr(v) for v in row) + "\n")


def write_grid_artifact(artifact, prefix) -> list[str]:
    """Write an artifact as ``<prefix>.csv`` plus ``<prefix>.meta.json``.

    Returns the list of paths written.
    """
    csv_path = f"{prefix}.csv"
    meta_path = f"{prefix}.meta.json"
    if isinstance(artifact, HistogramArtifact):
        meta = {
            "schema_version": SCHEMA_VERSION,
            "kind": "histogram",
            "metric": artifact.metric,
            "n": int(artifact.n),
            "law": law_to_dict(artifact.law),
            "columns": [
                "bin_lo", "bin_hi", "midpoint", "count", "bin_measure",
                "empirical_density", "nrp_density", "lognormal_density",
            ],
        }
        with open(csv_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(",".join(meta["columns"]) + "\n")
            for k in range(artifact.counts.size):
                fields = [
                    artifact.edges[k], artifact.edges[k + 1], artifact.midpoints[k],
                    float(artifact.counts[k]), artifact.bin_measure[k],
                    artifact.empirical_density[k], artifact.nrp_density[k],
                    artifact.lognormal_density[k],
                ]
                fh.write(",".join(_float_repr(v) for v in fields) + "\n")
    elif isinstance(artifact, TernaryDensityGrid):
        meta = {
            "schema_version": SCHEMA_VERSION,
            "kind": "ternary_density",
            "resolution": int(artifact.resolution),
            "margin": artifact.margin,
            "law": law_to_dict(artifact.law),
            "maxima": [
                {"parts": c.parts.tolist(), "density": v} for c, v in artifact.maxima
            ],
            "axes": "matrix[i, j] is density at parts (i/r, j/r, 1 - i/r - j/r)",
        }
        _write_matrix_csv(csv_path, artifact.matrix())
    elif isinstance(artifact, CoordinateDensityGrid):
        meta = {
            "schema_version": SCHEMA_VERSION,
            "kind": "coordinate_density",
            "x_axis": artifact.x_axis.tolist(),
            "y_axis": artifact.y_axis.tolist(),
            "law": law_to_dict(artifact.law),
            "axes": "matrix[i, j] is density at (x_axis[i], y_axis[j])",
        }
        _write_matrix_csv(csv_path, artifact.values)
    else:
        raise TypeError(f"not a grid artifact: {type(artifact).__name__}")
    with open(meta_path, "w", encoding="utf-8") as fh:
        fh.write(json.dumps(meta, indent=2, sort_keys=True) + "\n")
    return [csv_path, meta_path]


def read_grid_artifact(prefix):
    """Read back ``(meta, payload)`` written by :func:`write_grid_artifact`."""
    with open(f"{prefix}.meta.json", "r", encoding="utf-8") as fh:
        meta = json.load(fh)
    if meta.get("schema_version") != SCHEMA_VERSION:
        raise DatasetValidationError(
            [f"{prefix}.meta.json: unsupported schema_version {meta.get('schema_version')!r}"]
        )
    if meta["kind"] == "histogram":
        payload = np.genfromtxt(f"{prefix}.csv", delimiter=",", skip_header=1)
    else:
        payload = np.genfromtxt(f"{prefix}.csv", delimiter=",")
    return meta, np.atleast_2d(payload)
