"""Quasi-static course simulation.

The tip is advanced along a course in fixed arc-length steps. At every step
the chamber pressure must satisfy three lower bounds (growth, cantilever
collapse and holding the payloads at zero inner pressure) and the inner
pressure must sit in a window between a growth aid floor and the slip
ceiling. Bends and holes are point features checked as each payload
reaches them. The first violated constraint ends the run.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import asdict, dataclass, field
from typing import Any, Sequence, Union

from .core import GRAVITY, DiameterContext, RobotParams, effective_diameter
from .grasp import (
    NeverSlips,
    PayloadTrain,
    SlipsAtZeroInnerPressure,
    Spacing,
    holding_pressure,
    train_slip_threshold,
)
from .growth import (
    TailState,
    TensionShare,
    growth_pressure_for_load,
    min_inner_pressure_no_servo,
    regime_for_load,
    robot_velocity_limit,
)
from .passage import (
    BendBoundary,
    BendSpec,
    HoleSpec,
    HOLE_MARGIN,
    HOLE_MARGINAL_TOLERANCE,
    CYLINDER_ALIGNMENT_RATIO,
    Verdict,
    bend_pass_check,
    hole_pass_check,
)
from .stability import (
    BODY_MASS_FACTOR,
    TWO_END_DEMONSTRATED_MASS,
    TWO_END_DEMONSTRATED_SPAN,
    required_pressure,
    weight_moment,
)
from .units import fmt

_REL = 1e-12


class GapSupport(str, enum.Enum):
    CANTILEVER = "cantilever"
    TWO_END = "two_end"


@dataclass(frozen=True)
class Flat:
    length: float
    kind = "flat"

    def __post_init__(self):
        if not self.length > 0:
            raise ValueError("flat segment length must be positive")


@dataclass(frozen=True)
class Incline:
    length: float
    angle: float
    kind = "incline"

    def __post_init__(self):
        if not self.length > 0:
            raise ValueError("incline length must be positive")
        if not 0.0 <= self.angle <= math.pi / 2 + 1e-12:
            raise ValueError("incline angle must lie in [0, pi/2]")


@dataclass(frozen=True)
class Bend:
    bend: BendSpec
    # None: tension follows the simulated tail regime
    tension_override: bool | None = None
    kind = "bend"

    @property
    def length(self) -> float:
        return 0.0


@dataclass(frozen=True)
class Hole:
    hole: HoleSpec
    kind = "hole"

    @property
    def length(self) -> float:
        return 0.0


@dataclass(frozen=True)
class Gap:
    length: float
    support: GapSupport = GapSupport.CANTILEVER
    kind = "gap"

    def __post_init__(self):
        object.__setattr__(self, "support", GapSupport(self.support))
        if not self.length > 0:
            raise ValueError("gap length must be positive")


CourseSegment = Union[Flat, Incline, Bend, Hole, Gap]


@dataclass(frozen=True)
class Course:
    segments: tuple[CourseSegment, ...]

    def __post_init__(self):
        segments = tuple(self.segments)
        if not segments:
            raise ValueError("a course needs at least one segment")
        for seg in segments:
            if not isinstance(seg, (Flat, Incline, Bend, Hole, Gap)):
                raise TypeError(f"not a course segment: {seg!r}")
        object.__setattr__(self, "segments", segments)
        starts, s = [], 0.0
        for seg in segments:
            starts.append(s)
            s += seg.length
        object.__setattr__(self, "_starts", tuple(starts))
        object.__setattr__(self, "_total", s)

    @property
    def total_length(self) -> float:
        return self._total

    def start(self, index: int) -> float:
        return self._starts[index]

    def end(self, index: int) -> float:
        return self._starts[index] + self.segments[index].length

    def tip_segment(self, arc: float) -> int | None:
        """Length-bearing segment whose interval (start, end] holds ``arc``."""
        last = None
        for i, seg in enumerate(self.segments):
            if seg.length <= 0:
                continue
            last = i
            if self.start(i) < arc <= self.end(i) + 1e-12 or (arc <= 0 and self.start(i) == 0):
                return i
        return last

    def slope_at(self, arc: float) -> float:
        i = self.tip_segment(arc)
        seg = self.segments[i] if i is not None else None
        return seg.angle if isinstance(seg, Incline) else 0.0

    def features(self) -> list[int]:
        return [i for i, seg in enumerate(self.segments) if isinstance(seg, (Bend, Hole))]


class PolicyKind(str, enum.Enum):
    MINIMAL = "minimal"
    FIXED = "fixed"


@dataclass(frozen=True)
class PressurePolicy:
    """``minimal``: P_o is the binding requirement plus ``headroom`` and P_i
    the middle of its window. ``fixed``: both pressures as given (a missing
    ``p_inner`` still takes the window midpoint)."""

    kind: PolicyKind = PolicyKind.MINIMAL
    headroom: float = 0.1
    p_outer: float | None = None
    p_inner: float | None = None
    p_outer_max: float = 5000.0

    def __post_init__(self):
        object.__setattr__(self, "kind", PolicyKind(self.kind))
        if self.kind is PolicyKind.FIXED and self.p_outer is None:
            raise ValueError("a fixed policy needs p_outer")
        if self.headroom < 0:
            raise ValueError("headroom must be non-negative")


@dataclass(frozen=True)
class SimOptions:
    tension_share: TensionShare = TensionShare.FULL
    # payload advance per unit of growth; None uses the tail feed kinematics
    payload_speed_ratio: float | None = None
    insert_at: float = 0.0
    # centre gap between separated members; None means two robot diameters
    separation: float | None = None
    body_mass_factor: float = BODY_MASS_FACTOR
    derating: float = 1.0
    gravity: float = GRAVITY
    grip_prefactor: float = 1.0
    no_servo_wrap_cos: float = 0.0
    hole_margin: float = HOLE_MARGIN
    hole_marginal_tolerance: float = HOLE_MARGINAL_TOLERANCE
    alignment_ratio: float = CYLINDER_ALIGNMENT_RATIO
    bend_boundary: BendBoundary = field(default_factory=BendBoundary)

    def __post_init__(self):
        object.__setattr__(self, "tension_share", TensionShare(self.tension_share))


class Status(str, enum.Enum):
    OK = "ok"
    MARGINAL = "marginal"
    INFEASIBLE = "infeasible"
    NOT_REACHED = "not_reached"


@dataclass(frozen=True)
class SegmentVerdict:
    index: int
    kind: str
    status: Status
    reason: str = ""
    binding: str | None = None


@dataclass(frozen=True)
class StepRecord:
    grown_length: float
    segment: int | None
    payload_positions: tuple[float, ...]
    p_outer: float
    p_outer_required: float
    p_outer_growth: float
    p_outer_buckling: float
    p_outer_hold: float
    p_inner: float
    p_inner_floor: float
    p_inner_ceiling: float
    regime: str
    tail_tension: float


@dataclass(frozen=True)
class FeasibilityReport:
    status: Status
    binding_constraint: str | None
    failure_location: float | None
    segments: tuple[SegmentVerdict, ...]
    steps: tuple[StepRecord, ...]
    advisories: tuple[str, ...] = ()

    @property
    def feasible(self) -> bool:
        return self.status in (Status.OK, Status.MARGINAL)

    @property
    def min_p_outer_profile(self) -> list[tuple[float, float]]:
        return [(s.grown_length, s.p_outer_required) for s in self.steps]

    def to_dict(self) -> dict[str, Any]:
        out = asdict(self)
        out["status"] = self.status.value
        for seg in out["segments"]:
            seg["status"] = Status(seg["status"]).value
        for step in out["steps"]:
            step["payload_positions"] = list(step["payload_positions"])
        out["segments"] = list(out["segments"])
        out["steps"] = list(out["steps"])
        out["advisories"] = list(self.advisories)
        return out

    @classmethod
    def from_dict(cls, raw: dict[str, Any]) -> "FeasibilityReport":
        return cls(
            status=Status(raw["status"]),
            binding_constraint=raw["binding_constraint"],
            failure_location=raw["failure_location"],
            segments=tuple(SegmentVerdict(**{**s, "status": Status(s["status"])}) for s in raw["segments"]),
            steps=tuple(StepRecord(**{**s, "payload_positions": tuple(s["payload_positions"])})
                        for s in raw["steps"]),
            advisories=tuple(raw.get("advisories", ())),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    def to_text(self, units: str = "si") -> str:
        lines = [f"verdict: {self.status.value}"]
        if self.binding_constraint:
            where = "" if self.failure_location is None else f" at {fmt(self.failure_location, 'length', units)}"
            lines.append(f"binding constraint: {self.binding_constraint}{where}")
        lines.append("segments:")
        for seg in self.segments:
            extra = f" ({seg.reason})" if seg.reason else ""
            lines.append(f"  [{seg.index}] {seg.kind:<8} {seg.status.value}{extra}")
        if self.steps:
            peak = max(self.steps, key=lambda s: s.p_outer_required)
            lines.append(f"peak required P_o: {fmt(peak.p_outer_required, 'pressure', units)}"
                         f" at {fmt(peak.grown_length, 'length', units)}")
            last = self.steps[-1]
            lines.append(f"final P_o {fmt(last.p_outer, 'pressure', units)}, "
                         f"P_i window [{fmt(last.p_inner_floor, 'pressure', units)}, "
                         f"{fmt(last.p_inner_ceiling, 'pressure', units)}], regime {last.regime}")
        for note in self.advisories:
            lines.append(f"note: {note}")
        return "\n".join(lines)


def payload_speed_ratio(robot: RobotParams, options: SimOptions | None = None) -> float:
    """How far a gripped payload moves per unit of tip growth."""
    if options is not None and options.payload_speed_ratio is not None:
        return options.payload_speed_ratio
    if robot.servo_speed <= 0:
        return 2.0
    v_robot = robot_velocity_limit(robot)
    return min(robot.servo_speed, 2.0 * v_robot) / v_robot


def train_offsets(robot: RobotParams, train: PayloadTrain, separation: float | None = None) -> list[float]:
    """Distance of each member behind the leader, centre to centre."""
    gap = 2.0 * robot.robot_diameter if separation is None else separation
    offsets = [0.0]
    for i in range(1, len(train.members)):
        a, b = train.members[i - 1], train.members[i]
        step = 0.5 * (a.axial_length + b.axial_length)
        if train.spacing[i] is Spacing.SEPARATED:
            step += gap
        offsets.append(offsets[-1] + step)
    return offsets


def payload_positions(grown: float, ratio: float, insert_at: float, offsets: Sequence[float]) -> tuple[float, ...]:
    """Member positions from the base; the leader never passes the tip."""
    lead = min(ratio * max(grown - insert_at, 0.0), grown)
    return tuple(lead - off for off in offsets)


class _Stop(Exception):
    def __init__(self, binding: str, segment: int | None, reason: str):
        super().__init__(reason)
        self.binding = binding
        self.segment = segment
        self.reason = reason


def _step_lengths(total: float, step: float) -> list[float]:
    n = max(1, math.ceil(total / step - 1e-9))
    return [min(k * step, total) for k in range(1, n + 1)]


def simulate(robot: RobotParams, train: PayloadTrain, course: Course, step: float = 0.01,
             policy: PressurePolicy | None = None, options: SimOptions | None = None) -> FeasibilityReport:
    if not step > 0:
        raise ValueError("step must be positive")
    policy = policy or PressurePolicy()
    opts = options or SimOptions()
    g = opts.gravity
    ratio = payload_speed_ratio(robot, opts)
    offsets = train_offsets(robot, train, opts.separation)
    n_seg = len(course.segments)

    status = [Status.NOT_REACHED] * n_seg
    reasons = [""] * n_seg
    advisories: list[str] = []
    records: list[StepRecord] = []

    def mark(index: int, new: Status, reason: str = ""):
        order = [Status.NOT_REACHED, Status.OK, Status.MARGINAL, Status.INFEASIBLE]
        if order.index(new) > order.index(status[index]):
            status[index] = new
            if reason:
                reasons[index] = reason

    for i, seg in enumerate(course.segments):
        if isinstance(seg, Gap) and seg.support is GapSupport.TWO_END:
            advisories.append(
                f"segment {i}: two-end supported gap of {seg.length:.3g} m is not checked for collapse; "
                f"the demonstrated envelope is {TWO_END_DEMONSTRATED_MASS * 1e3:.0f} g over "
                f"{TWO_END_DEMONSTRATED_SPAN * 1e2:.0f} cm")

    checked: set[tuple[int, int]] = set()
    regime = regime_for_load(robot, 0.0, 0.0)

    def check_feature(member: int, index: int):
        payload = train.members[member]
        seg = course.segments[index]
        if isinstance(seg, Bend):
            tension = seg.tension_override
            if tension is None:
                tension = regime.kind is TailState.TAUT
            result = bend_pass_check(robot, payload, BendSpec(seg.bend.angle, tension), opts.bend_boundary)
            name = "bend"
        else:
            result = hole_pass_check(robot, payload, seg.hole, opts.hole_margin,
                                     opts.hole_marginal_tolerance, opts.alignment_ratio)
            name = "hole"
        checked.add((member, index))
        if result.verdict is Verdict.FAIL:
            raise _Stop(name, index, f"payload {member}: {result.reason}")
        if result.verdict is Verdict.MARGINAL or result.flags:
            why = result.reason or ", ".join(result.flags)
            if result.flags and result.reason:
                why = f"{result.reason}; {', '.join(result.flags)}"
            mark(index, Status.MARGINAL, f"payload {member}: {why}")
        else:
            mark(index, Status.OK)

    binding = None
    failure_at = None
    current = 0.0
    try:
        worst = max(effective_diameter(p, DiameterContext.CLEARANCE) for p in train.members)
        if worst > robot.tube_diameter:
            raise _Stop("fit", 0, f"payload of {worst:.4g} m does not fit the {robot.tube_diameter:.4g} m inner tube")

        for grown in _step_lengths(course.total_length, step) if course.total_length > 0 else []:
            current = grown
            tip = course.tip_segment(grown)
            positions = payload_positions(grown, ratio, opts.insert_at, offsets)
            deployed = [i for i, p in enumerate(positions) if p > 0]
            loads = [0.0] * len(positions)
            for i in deployed:
                loads[i] = train.members[i].mass * g * math.sin(course.slope_at(positions[i]))
            axial = sum(loads)

            p_growth = growth_pressure_for_load(robot, axial, opts.tension_share)

            p_buckle = 0.0
            seg = course.segments[tip] if tip is not None else None
            if isinstance(seg, Gap) and seg.support is GapSupport.CANTILEVER:
                s0 = course.start(tip)
                span = grown - s0
                moment = weight_moment(robot, span, g, opts.body_mass_factor)
                for i in deployed:
                    if s0 < positions[i] <= grown:
                        moment += train.members[i].mass * g * (positions[i] - s0)
                p_buckle = required_pressure(robot, moment, opts.derating)

            p_hold = holding_pressure(robot, train, loads, deployed, opts.grip_prefactor)
            needs = {"growth": p_growth, "buckling": p_buckle, "slip": p_hold}
            required = max(needs.values())
            worst_need = max(needs, key=needs.get)

            if policy.kind is PolicyKind.MINIMAL:
                if required > policy.p_outer_max * (1 + _REL):
                    raise _Stop(worst_need, tip, f"needs P_o {required:.1f} Pa above the "
                                                 f"{policy.p_outer_max:.0f} Pa limit")
                p_outer = min(required * (1 + policy.headroom), policy.p_outer_max)
            else:
                p_outer = policy.p_outer
                if p_outer < required * (1 - _REL):
                    raise _Stop(worst_need, tip, f"needs P_o {required:.1f} Pa, set to {p_outer:.1f} Pa")

            regime = regime_for_load(robot, p_outer, axial)

            if robot.servo_speed > 0:
                floor = 0.0
            else:
                floor = min_inner_pressure_no_servo(robot, p_outer, opts.no_servo_wrap_cos, axial)
            try:
                ceiling = train_slip_threshold(robot, train, p_outer, loads, deployed, opts.grip_prefactor)
            except NeverSlips:
                ceiling = p_outer
            except SlipsAtZeroInnerPressure as exc:
                raise _Stop("slip", tip, str(exc)) from None
            if floor > ceiling:
                raise _Stop("pressure_window", tip,
                            f"growth needs P_i >= {floor:.1f} Pa but payload slips above {ceiling:.1f} Pa")

            if policy.kind is PolicyKind.FIXED and policy.p_inner is not None:
                p_inner = policy.p_inner
                if p_inner > ceiling:
                    raise _Stop("slip", tip, f"P_i {p_inner:.1f} Pa above slip threshold {ceiling:.1f} Pa")
                if p_inner < floor:
                    raise _Stop("growth", tip, f"P_i {p_inner:.1f} Pa below growth floor {floor:.1f} Pa")
            else:
                p_inner = 0.5 * (floor + ceiling)

            records.append(StepRecord(
                grown_length=grown, segment=tip, payload_positions=positions,
                p_outer=p_outer, p_outer_required=required, p_outer_growth=p_growth,
                p_outer_buckling=p_buckle, p_outer_hold=p_hold,
                p_inner=p_inner, p_inner_floor=floor, p_inner_ceiling=ceiling,
                regime=regime.kind.value, tail_tension=regime.tail_tension,
            ))
            for i, seg in enumerate(course.segments):
                if seg.length > 0 and course.start(i) < grown:
                    mark(i, Status.OK)

            for member in deployed:
                for index in course.features():
                    if (member, index) not in checked and positions[member] >= course.start(index):
                        check_feature(member, index)

        # features still ahead of trailing payloads must be passed on delivery
        for member in range(len(train.members)):
            for index in course.features():
                if (member, index) not in checked:
                    check_feature(member, index)
    except _Stop as stop:
        binding = stop.binding
        if stop.binding in ("bend", "hole"):
            failure_at = course.start(stop.segment)
        else:
            failure_at = current
        if stop.segment is not None:
            status[stop.segment] = Status.INFEASIBLE
            reasons[stop.segment] = stop.reason

    segments = tuple(
        SegmentVerdict(i, course.segments[i].kind, status[i], reasons[i],
                       binding if status[i] is Status.INFEASIBLE else None)
        for i in range(n_seg)
    )
    if binding is not None:
        overall = Status.INFEASIBLE
    elif any(s.status is Status.MARGINAL for s in segments):
        overall = Status.MARGINAL
    else:
        overall = Status.OK
    return FeasibilityReport(overall, binding, failure_at, segments, tuple(records), tuple(advisories))

