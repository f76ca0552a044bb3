"""One-dimensional parameter sweeps of the model curves."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, replace
from typing import Callable, Sequence

import numpy as np

from .core import InclineContext, PayloadSpec, PressureState, RobotParams
from .grasp import NeverSlips, SlipsAtZeroInnerPressure, effective_contact_area, slip_threshold_inner_pressure, wrap_angle
from .growth import min_growth_pressure, min_inner_pressure_no_servo
from .passage import min_hole_diameter
from .scenario import Scenario, SweepBase
from .simulator import SimOptions
from .stability import critical_length, critical_length_tip_payload
from .units import PAPER_UNIT, SI_UNIT, from_si

AXES = {
    "p_outer": "pressure",
    "p_inner": "pressure",
    "mass": "mass",
    "angle": "angle",
    "diameter": "length",
    "length": "length",
}


class SweepError(ValueError):
    pass


@dataclass(frozen=True)
class SweepPoint:
    robot: RobotParams
    payload: PayloadSpec
    base: SweepBase
    options: SimOptions

    def apply(self, axis: str, value: float) -> "SweepPoint":
        if axis in ("p_outer", "p_inner", "angle"):
            return replace(self, base=replace(self.base, **{axis: value}))
        if axis == "mass":
            return replace(self, payload=self.payload.with_(mass=value))
        if axis == "diameter":
            return replace(self, payload=self.payload.with_(diameter=value))
        if axis == "length":
            if self.payload.length is None:
                raise SweepError(f"a {self.payload.shape.value} payload has no length to sweep")
            return replace(self, payload=self.payload.with_(length=value))
        raise SweepError(f"unknown axis {axis!r}; choose from {', '.join(AXES)}")

    @property
    def pressure(self) -> PressureState:
        return PressureState(self.base.p_outer, self.base.p_inner)

    @property
    def incline(self) -> InclineContext:
        return InclineContext(self.base.angle, self.options.gravity)


def _growth(pt: SweepPoint) -> float:
    return min_growth_pressure(pt.robot, pt.incline, pt.payload.mass, pt.options.tension_share)


def _min_inner(pt: SweepPoint) -> float:
    return min_inner_pressure_no_servo(pt.robot, pt.base.p_outer, pt.options.no_servo_wrap_cos)


def _k(pt: SweepPoint) -> float:
    return effective_contact_area(pt.robot, pt.payload, pt.pressure, pt.options.grip_prefactor).k_effective


def _pull_out(pt: SweepPoint) -> float:
    return _k(pt) * (pt.base.p_outer - pt.base.p_inner)


def _wrap(pt: SweepPoint) -> float:
    return wrap_angle(pt.robot, pt.payload, pt.pressure)


def _slip(pt: SweepPoint) -> float:
    try:
        return slip_threshold_inner_pressure(pt.robot, pt.payload, pt.base.p_outer, pt.incline,
                                             pt.options.grip_prefactor)
    except NeverSlips:
        return pt.base.p_outer
    except SlipsAtZeroInnerPressure:
        return math.nan


def _critical(pt: SweepPoint) -> float:
    o = pt.options
    if pt.base.payload_distance is None:
        return critical_length_tip_payload(pt.robot, pt.base.p_outer, pt.payload.mass, o.gravity,
                                           o.body_mass_factor, o.derating)
    return critical_length(pt.robot, pt.base.p_outer, pt.payload.mass, pt.base.payload_distance,
                           o.gravity, o.body_mass_factor, o.derating)


def _hole(pt: SweepPoint) -> float:
    return min_hole_diameter(pt.robot, pt.payload)


# name -> (evaluator, output dimension)
MODELS: dict[str, tuple[Callable[[SweepPoint], float], str]] = {
    "growth_pressure": (_growth, "pressure"),
    "min_inner_pressure": (_min_inner, "pressure"),
    "k_effective": (_k, "stiffness"),
    "pull_out_force": (_pull_out, "force"),
    "wrap_angle": (_wrap, "angle"),
    "slip_threshold": (_slip, "pressure"),
    "critical_length": (_critical, "length"),
    "min_hole_diameter": (_hole, "length"),
}

DEFAULT_MODEL = {
    "mass": "growth_pressure",
    "angle": "growth_pressure",
    "p_outer": "critical_length",
    "p_inner": "k_effective",
    "diameter": "min_hole_diameter",
    "length": "k_effective",
}


@dataclass(frozen=True)
class SweepTable:
    axis: str
    model: str
    rows: tuple[tuple[float, float], ...]

    def to_csv(self, units: str = "si") -> str:
        table = PAPER_UNIT if units == "paper" else SI_UNIT
        x_unit = table[AXES[self.axis]]
        y_unit = table[MODELS[self.model][1]]
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow([f"{self.axis}_{x_unit}", f"{self.model}_{y_unit}"])
        for x, y in self.rows:
            writer.writerow([repr(from_si(x, x_unit)), repr(from_si(y, y_unit))])
        return buf.getvalue()


def sweep_point(scenario: Scenario) -> SweepPoint:
    return SweepPoint(scenario.robot, scenario.train.members[0], scenario.sweep, scenario.options)


def sweep(axis: str, values: Sequence[float], point: SweepPoint | Scenario, model: str | None = None) -> SweepTable:
    if axis not in AXES:
        raise SweepError(f"unknown axis {axis!r}; choose from {', '.join(AXES)}")
    model = model or DEFAULT_MODEL[axis]
    if model not in MODELS:
        raise SweepError(f"unknown model {model!r}; choose from {', '.join(MODELS)}")
    if isinstance(point, Scenario):
        point = sweep_point(point)
    evaluate = MODELS[model][0]
    rows = []
    for v in values:
        try:
            rows.append((float(v), float(evaluate(point.apply(axis, float(v))))))
        except SweepError:
            raise
        except ValueError as exc:
            raise SweepError(f"{axis}={v!r}: {exc}") from None
    return SweepTable(axis, model, tuple(rows))


def sweep_range(lo: float, hi: float, steps: int) -> list[float]:
    if steps < 2:
        raise SweepError("a sweep needs at least two steps")
    if lo == hi:
        raise SweepError("sweep range is empty: min equals max")
    return [float(v) for v in np.linspace(lo, hi, steps)]
