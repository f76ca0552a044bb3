"""Scenario files.

A scenario is a JSON object with the keys ``robot``, ``payloads``,
``course`` and ``policy``, plus optional ``options`` and ``sweep``. Every
physical number may carry a unit tag (``"9.5 cm"`` or
``{"value": 9.5, "unit": "cm"}``); bare numbers are SI. See
``scenarios/README.md`` for the full schema.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .core import RobotParams, payload_from_dict, reference_robot, robot_from_dict
from .grasp import PayloadTrain, Spacing
from .growth import TensionShare
from .passage import BendBoundary, BendSpec, HoleSpec
from .simulator import Bend, Course, Flat, Gap, GapSupport, Hole, Incline, PressurePolicy, SimOptions
from .units import parse_quantity

TOP_LEVEL_KEYS = {"robot", "payloads", "course", "policy", "options", "sweep", "name", "description"}


class ScenarioError(ValueError):
    pass


@dataclass(frozen=True)
class SweepBase:
    """Operating point the sweep axes vary around."""

    angle: float = 0.0
    p_outer: float = 2000.0
    p_inner: float = 0.0
    payload_distance: float | None = None


@dataclass(frozen=True)
class Scenario:
    robot: RobotParams
    train: PayloadTrain
    course: Course
    policy: PressurePolicy = field(default_factory=PressurePolicy)
    step: float = 0.01
    options: SimOptions = field(default_factory=SimOptions)
    sweep: SweepBase = field(default_factory=SweepBase)
    name: str = ""


def _q(raw: dict, key: str, dimension: str, default: Any = None, where: str = "") -> Any:
    if key not in raw:
        if default is None:
            raise ScenarioError(f"{where}: missing {key!r}")
        return default
    try:
        return parse_quantity(raw[key], dimension)
    except ValueError as exc:
        raise ScenarioError(f"{where}.{key}: {exc}") from None


def _segment(raw: dict, index: int):
    where = f"course[{index}]"
    if not isinstance(raw, dict) or "type" not in raw:
        raise ScenarioError(f"{where}: each segment needs a 'type'")
    kind = raw["type"]
    try:
        if kind == "flat":
            return Flat(_q(raw, "length", "length", where=where))
        if kind == "incline":
            return Incline(_q(raw, "length", "length", where=where), _q(raw, "angle", "angle", where=where))
        if kind == "bend":
            override = raw.get("tension_present")
            if override is not None and not isinstance(override, bool):
                raise ScenarioError(f"{where}.tension_present must be true, false or absent")
            return Bend(BendSpec(_q(raw, "angle", "angle", where=where), bool(override)), override)
        if kind == "hole":
            return Hole(HoleSpec(_q(raw, "diameter", "length", where=where)))
        if kind == "gap":
            return Gap(_q(raw, "length", "length", where=where), GapSupport(raw.get("support", "cantilever")))
    except ScenarioError:
        raise
    except ValueError as exc:
        raise ScenarioError(f"{where}: {exc}") from None
    raise ScenarioError(f"{where}: unknown segment type {kind!r}")


def _train(raw: list) -> PayloadTrain:
    if not isinstance(raw, list) or not raw:
        raise ScenarioError("payloads: expected a non-empty list")
    members, spacing = [], []
    for i, item in enumerate(raw):
        if not isinstance(item, dict):
            raise ScenarioError(f"payloads[{i}]: expected an object")
        item = dict(item)
        spacing.append(Spacing(item.pop("spacing", "separated")))
        try:
            members.append(payload_from_dict(item))
        except ValueError as exc:
            raise ScenarioError(f"payloads[{i}]: {exc}") from None
    return PayloadTrain(tuple(members), tuple(spacing))


def _policy(raw: dict) -> tuple[PressurePolicy, float]:
    where = "policy"
    kind = raw.get("kind", "minimal")
    step = _q(raw, "step", "length", 0.01, where)
    try:
        policy = PressurePolicy(
            kind=kind,
            headroom=float(raw.get("headroom", 0.1)),
            p_outer=_q(raw, "p_outer", "pressure", math.nan, where) if "p_outer" in raw else None,
            p_inner=_q(raw, "p_inner", "pressure", math.nan, where) if "p_inner" in raw else None,
            p_outer_max=_q(raw, "p_outer_max", "pressure", 5000.0, where),
        )
    except ValueError as exc:
        raise ScenarioError(f"{where}: {exc}") from None
    return policy, step


_OPTION_DIMENSIONS = {
    "insert_at": "length",
    "separation": "length",
    "gravity": "acceleration",
    "hole_margin": "length",
    "hole_marginal_tolerance": "length",
}
_OPTION_PLAIN = {"payload_speed_ratio", "body_mass_factor", "derating", "grip_prefactor",
                 "no_servo_wrap_cos", "alignment_ratio"}


def _options(raw: dict) -> SimOptions:
    values: dict[str, Any] = {}
    for key, value in raw.items():
        if key in _OPTION_DIMENSIONS:
            values[key] = _q(raw, key, _OPTION_DIMENSIONS[key], where="options")
        elif key in _OPTION_PLAIN:
            values[key] = None if value is None else float(value)
        elif key == "tension_share":
            values[key] = TensionShare(value)
        elif key == "bend_boundary":
            knots = [(parse_quantity(d, "length"), parse_quantity(a, "angle")) for d, a in value]
            values[key] = BendBoundary.from_list(knots)
        else:
            raise ScenarioError(f"options: unknown option {key!r}")
    try:
        return SimOptions(**values)
    except ValueError as exc:
        raise ScenarioError(f"options: {exc}") from None


def _sweep(raw: dict, course: Course, policy: PressurePolicy) -> SweepBase:
    angle = next((seg.angle for seg in course.segments if isinstance(seg, Incline)), 0.0)
    p_outer = policy.p_outer if policy.p_outer is not None else 2000.0
    p_inner = policy.p_inner if policy.p_inner is not None else 0.0
    return SweepBase(
        angle=_q(raw, "angle", "angle", angle, "sweep"),
        p_outer=_q(raw, "p_outer", "pressure", p_outer, "sweep"),
        p_inner=_q(raw, "p_inner", "pressure", p_inner, "sweep"),
        payload_distance=_q(raw, "payload_distance", "length", math.nan, "sweep") if "payload_distance" in raw else None,
    )


def scenario_from_dict(raw: Any, base_robot: RobotParams | None = None) -> Scenario:
    if not isinstance(raw, dict):
        raise ScenarioError("a scenario must be a JSON object")
    unknown = set(raw) - TOP_LEVEL_KEYS
    if unknown:
        raise ScenarioError(f"unknown top-level key(s): {', '.join(sorted(unknown))}")
    for key in ("payloads", "course"):
        if key not in raw:
            raise ScenarioError(f"missing top-level key {key!r}")
    try:
        robot = robot_from_dict(raw.get("robot", {}), base_robot or reference_robot())
    except ValueError as exc:
        raise ScenarioError(f"robot: {exc}") from None
    if not isinstance(raw["course"], list):
        raise ScenarioError("course: expected a list of segments")
    course = Course(tuple(_segment(seg, i) for i, seg in enumerate(raw["course"])))
    policy, step = _policy(raw.get("policy", {}))
    return Scenario(
        robot=robot,
        train=_train(raw["payloads"]),
        course=course,
        policy=policy,
        step=step,
        options=_options(raw.get("options", {})),
        sweep=_sweep(raw.get("sweep", {}), course, policy),
        name=str(raw.get("name", "")),
    )


def parse_scenario(text: str, source: str = "<scenario>", base_robot: RobotParams | None = None) -> Scenario:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"{source}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    try:
        return scenario_from_dict(raw, base_robot)
    except ScenarioError as exc:
        raise ScenarioError(f"{source}: {exc}") from None


def load_scenario(path: str | Path, base_robot: RobotParams | None = None) -> Scenario:
    path = Path(path)
    return parse_scenario(path.read_text(encoding="utf-8"), str(path), base_robot)
