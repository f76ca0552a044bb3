"""Least-squares calibration of tip loss and grip slope from measurements.

CSV inputs are comma separated, UTF-8, with a header row:

* incline records: ``p_outer_Pa, mass_kg, theta_deg`` and an optional
  ``bound`` column (``lower``/``upper``) for start/stop thresholds;
* force traces: ``pressure_Pa, force_N``.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .core import GRAVITY, PayloadSpec, PressureState, RobotParams, cross_section_area
from .grasp import effective_contact_area
from .growth import TensionShare, min_growth_pressure
from .core import InclineContext

INCLINE_COLUMNS = ("p_outer_Pa", "mass_kg", "theta_deg")
TRACE_COLUMNS = ("pressure_Pa", "force_N")
MIN_TRACE_SPAN = 500.0


class CalibrationError(ValueError):
    pass


class SchemaError(CalibrationError):
    pass


@dataclass(frozen=True)
class LinearFit:
    slope: float
    intercept: float
    r_squared: float
    n_points: int

    def __call__(self, x):
        return self.slope * np.asarray(x) + self.intercept


@dataclass(frozen=True)
class InclineRecord:
    p_outer: float
    mass: float
    theta: float
    bound: str | None = None


def fit_line(points: Iterable[Sequence[float]]) -> LinearFit:
    """Ordinary least squares y = slope*x + intercept."""
    data = np.asarray(list(points), dtype=float)
    if data.ndim != 2 or data.shape[1] != 2 or len(data) < 2:
        raise CalibrationError("need at least two (x, y) points")
    x, y = data[:, 0], data[:, 1]
    dx = x - x.mean()
    sxx = float(dx @ dx)
    if sxx <= 1e-300 * max(1.0, float(np.abs(x).max()) ** 2) or np.unique(x).size < 2:
        raise CalibrationError("x values are degenerate; need at least two distinct x")
    dy = y - y.mean()
    slope = float(dx @ dy) / sxx
    intercept = float(y.mean() - slope * x.mean())
    syy = float(dy @ dy)
    if syy == 0.0:
        r2 = 1.0
    else:
        resid = y - (slope * x + intercept)
        r2 = 1.0 - float(resid @ resid) / syy
    return LinearFit(slope, intercept, min(max(r2, 0.0), 1.0), len(data))


def _incline_points(robot: RobotParams, records: Iterable, gravity: float) -> list[tuple[float, float]]:
    area = cross_section_area(robot)
    points = []
    for rec in records:
        if not isinstance(rec, InclineRecord):
            rec = InclineRecord(*rec)
        points.append((rec.mass * gravity * math.sin(rec.theta), 0.5 * rec.p_outer * area))
    return points


def fit_f_loss(records: Iterable, robot: RobotParams | None = None, gravity: float = GRAVITY) -> LinearFit:
    """Regress half the tip pressure force on the payload's axial weight.

    Records are ``(p_outer_Pa, mass_kg, theta_rad)`` or :class:`InclineRecord`.
    The intercept is the tip loss in N; the slope should come out near 1.
    """
    points = _incline_points(robot or RobotParams(), records, gravity)
    xs = {round(x, 12) for x, _ in points}
    if len(xs) < 2:
        raise CalibrationError("incline records need at least two distinct m*g*sin(theta) values")
    return fit_line(points)


def fit_f_loss_by_bound(records: Sequence[InclineRecord], robot: RobotParams | None = None,
                        gravity: float = GRAVITY) -> dict[str, LinearFit]:
    """Fit all records together and, where present, each bound on its own."""
    fits = {"all": fit_f_loss(records, robot, gravity)}
    for bound in sorted({r.bound for r in records if r.bound}):
        subset = [r for r in records if r.bound == bound]
        try:
            fits[bound] = fit_f_loss(subset, robot, gravity)
        except CalibrationError:
            pass
    return fits


def extract_k(trace: Iterable[Sequence[float]], min_span: float = MIN_TRACE_SPAN) -> LinearFit:
    """Slope of pull-out force against pressure: K in N/Pa."""
    data = np.asarray(list(trace), dtype=float)
    if data.ndim != 2 or data.shape[1] != 2 or len(data) < 2:
        raise CalibrationError("a force trace needs at least two (pressure, force) samples")
    span = float(data[:, 0].max() - data[:, 0].min())
    if span < min_span:
        raise CalibrationError(f"pressure span {span:.1f} Pa is below the {min_span:.0f} Pa minimum")
    return fit_line(data)


def synthetic_incline_records(robot: RobotParams, masses: Sequence[float], thetas: Sequence[float],
                              gravity: float = GRAVITY) -> list[InclineRecord]:
    """Noiseless growth thresholds in the half-tension convention used by :func:`fit_f_loss`."""
    out = []
    for theta in thetas:
        incline = InclineContext(theta, gravity)
        for m in masses:
            p = min_growth_pressure(robot, incline, m, TensionShare.HALF)
            out.append(InclineRecord(p, m, theta))
    return out


def synthetic_force_trace(robot: RobotParams, payload: PayloadSpec, pressures: Sequence[float],
                          p_inner: float = 0.0) -> list[tuple[float, float]]:
    """Pull-out force the grip model predicts along a draining-pressure record."""
    out = []
    for p in pressures:
        k = effective_contact_area(robot, payload, PressureState(p, p_inner)).k_effective
        out.append((p, k * (p - p_inner)))
    return out


def _read_rows(path: str | Path, required: Sequence[str]) -> list[dict[str, str]]:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise SchemaError(f"{path}: empty file, expected header {', '.join(required)}")
        header = [h.strip() for h in reader.fieldnames]
        missing = [c for c in required if c not in header]
        if missing:
            raise SchemaError(f"{path}: missing column {missing[0]!r}")
        rows = [{k.strip(): (v or "").strip() for k, v in row.items() if k is not None} for row in reader]
    if not rows:
        raise SchemaError(f"{path}: no data rows")
    return rows


def _number(row: dict[str, str], column: str, line: int) -> float:
    try:
        return float(row[column])
    except (TypeError, ValueError):
        raise SchemaError(f"line {line}: column {column!r} is not a number: {row.get(column)!r}") from None


def read_incline_csv(path: str | Path) -> list[InclineRecord]:
    rows = _read_rows(path, INCLINE_COLUMNS)
    out = []
    for line, row in enumerate(rows, start=2):
        out.append(InclineRecord(
            _number(row, "p_outer_Pa", line),
            _number(row, "mass_kg", line),
            math.radians(_number(row, "theta_deg", line)),
            row.get("bound") or None,
        ))
    return out


def read_trace_csv(path: str | Path) -> list[tuple[float, float]]:
    rows = _read_rows(path, TRACE_COLUMNS)
    return [(_number(r, "pressure_Pa", i), _number(r, "force_N", i)) for i, r in enumerate(rows, start=2)]


def write_incline_csv(path: str | Path, records: Iterable[InclineRecord]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(INCLINE_COLUMNS + ("bound",))
        for r in records:
            writer.writerow([repr(r.p_outer), repr(r.mass), repr(math.degrees(r.theta)), r.bound or ""])


def write_trace_csv(path: str | Path, trace: Iterable[Sequence[float]]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(TRACE_COLUMNS)
        for p, f in trace:
            writer.writerow([repr(float(p)), repr(float(f))])
