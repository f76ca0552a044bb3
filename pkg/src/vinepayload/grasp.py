"""Everting-gripper grip model for payloads carried in the tail.

Grip per unit pressure difference is

    K = mu * (A_w + 0.5 * A_c * cos(phi))

where ``A_w`` is the wetted contact area and ``phi`` the angle at which the
membrane leaves the payload. Everything here is in SI, so ``K`` is in N/Pa.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from scipy.optimize import bisect

from .core import (
    CUBE_CONTACT_FACTOR,
    FLAT,
    InclineContext,
    PayloadSpec,
    PressureState,
    RobotParams,
    Shape,
    cross_section_area,
    effective_diameter,
)

# the printed constant with K read in N/kPa and areas in m^2, expressed in N/Pa
LITERAL_PREFACTOR = 1e-5 * 1e-3

SLIP_TOLERANCE = 1e-6


def _sphere_area(p: PayloadSpec) -> float:
    return 0.5 * math.pi * p.diameter ** 2


def _cylinder_area(p: PayloadSpec) -> float:
    return math.pi * p.diameter * p.length


def _cube_area(p: PayloadSpec) -> float:
    return 4.0 * p.diameter ** 2 * CUBE_CONTACT_FACTOR


def _cone_area(p: PayloadSpec) -> float:
    return math.pi * (p.diameter / 2.0) * p.length


# shape -> wetted-area rule; replace entries to try other contact assumptions
WETTED_AREA_RULES: dict[Shape, Callable[[PayloadSpec], float]] = {
    Shape.SPHERE: _sphere_area,
    Shape.CYLINDER: _cylinder_area,
    Shape.CUBE: _cube_area,
    Shape.CONE_BASE_FIRST: _cone_area,
    Shape.CONE_TIP_FIRST: _cone_area,
}


class Spacing(str, enum.Enum):
    TOUCHING = "touching"
    SEPARATED = "separated"


@dataclass(frozen=True)
class GripGeometry:
    wrap_angle: float
    wetted_area: float
    wrap_area_term: float

    @property
    def contact_area(self) -> float:
        return self.wetted_area + self.wrap_area_term


@dataclass(frozen=True)
class GripStrength:
    k_effective: float  # N/Pa

    def __post_init__(self):
        if self.k_effective < 0:
            raise ValueError("effective contact area cannot be negative")

    @property
    def k_per_kpa(self) -> float:
        return self.k_effective * 1e3

    def pull_out_force(self, delta_p: float) -> float:
        return self.k_effective * delta_p


@dataclass(frozen=True)
class PayloadTrain:
    """Payloads in deployment order. ``spacing[i]`` relates member ``i`` to
    the one before it; the first entry is ignored."""

    members: tuple[PayloadSpec, ...]
    spacing: tuple[Spacing, ...]

    def __post_init__(self):
        members = tuple(self.members)
        spacing = tuple(Spacing(s) for s in self.spacing)
        if not members:
            raise ValueError("a payload train needs at least one payload")
        if len(spacing) != len(members):
            raise ValueError("one spacing entry per payload is required")
        object.__setattr__(self, "members", members)
        object.__setattr__(self, "spacing", spacing)

    @classmethod
    def single(cls, payload: PayloadSpec) -> "PayloadTrain":
        return cls((payload,), (Spacing.SEPARATED,))

    @classmethod
    def of(cls, payloads: Sequence[PayloadSpec], spacing: Spacing | str = Spacing.SEPARATED) -> "PayloadTrain":
        return cls(tuple(payloads), tuple(Spacing(spacing) for _ in payloads))

    @property
    def total_mass(self) -> float:
        return sum(p.mass for p in self.members)

    def runs(self, include: Iterable[int] | None = None) -> list[list[int]]:
        """Indices grouped into touching runs, optionally limited to ``include``."""
        keep = set(range(len(self.members))) if include is None else set(include)
        groups: list[list[int]] = []
        previous = None
        for i in range(len(self.members)):
            if i not in keep:
                previous = None
                continue
            if previous is not None and self.spacing[i] is Spacing.TOUCHING and previous == i - 1:
                groups[-1].append(i)
            else:
                groups.append([i])
            previous = i
        return groups


def wrap_angle(robot: RobotParams, payload: PayloadSpec, pressure: PressureState) -> float:
    """Angle at which the membrane leaves the payload, from the radial balance.

    The arccos argument is clamped to [-1, 1]: past 1 the membrane lies flat
    behind the object (phi = 0), below -1 (P_i > P_o) it is fully open (phi = pi).
    """
    if pressure.p_outer <= 0:
        raise ValueError("wrap angle is undefined without chamber pressure")
    d = effective_diameter(payload, "grasp")
    arg = 2.0 * d ** 2 / robot.robot_diameter ** 2 * (1.0 - pressure.p_inner / pressure.p_outer)
    return math.acos(min(max(arg, -1.0), 1.0))


def wetted_area(payload: PayloadSpec) -> float:
    try:
        rule = WETTED_AREA_RULES[payload.shape]
    except KeyError:
        raise ValueError(f"no wetted-area rule for shape {payload.shape!r}") from None
    return rule(payload)


def grip_geometry(robot: RobotParams, payload: PayloadSpec, pressure: PressureState) -> GripGeometry:
    phi = wrap_angle(robot, payload, pressure)
    return GripGeometry(phi, wetted_area(payload), 0.5 * cross_section_area(robot) * math.cos(phi))


def effective_contact_area(robot: RobotParams, payload: PayloadSpec, pressure: PressureState,
                           prefactor: float = 1.0) -> GripStrength:
    geometry = grip_geometry(robot, payload, pressure)
    return GripStrength(prefactor * payload.mu_surface * geometry.contact_area)


def train_grip_strength(robot: RobotParams, train: PayloadTrain, pressure: PressureState,
                        members: Iterable[int] | None = None, prefactor: float = 1.0) -> GripStrength:
    """Grip of a payload train.

    Every member contributes its own wetted area. Each touching run gets a
    single wrap term, taken at the run's widest member since that is where
    the membrane leaves the run; separated members each get their own.
    """
    k = 0.0
    for run in train.runs(members):
        payloads = [train.members[i] for i in run]
        if len(payloads) == 1:
            k += effective_contact_area(robot, payloads[0], pressure).k_effective
            continue
        for p in payloads:
            k += p.mu_surface * wetted_area(p)
        widest = max(payloads, key=lambda p: effective_diameter(p, "grasp"))
        k += widest.mu_surface * grip_geometry(robot, widest, pressure).wrap_area_term
    return GripStrength(prefactor * k)


class SlipBoundaryError(ValueError):
    """The slip balance has no root inside [0, P_o]."""


class SlipsAtZeroInnerPressure(SlipBoundaryError):
    def __init__(self, load: float, capacity: float):
        super().__init__(f"slips even at P_i=0: load {load:.4g} N exceeds grip {capacity:.4g} N")
        self.load = load
        self.capacity = capacity


class NeverSlips(SlipBoundaryError):
    def __init__(self):
        super().__init__("never slips below P_o: no axial load on the payload")


def _solve_slip(load: float, p_outer: float, grip: Callable[[float], float],
                tol: float = SLIP_TOLERANCE) -> float:
    if p_outer <= 0:
        raise ValueError("p_outer must be positive")
    if load <= 0:
        raise NeverSlips()

    def margin(p_inner: float) -> float:
        return (p_outer - p_inner) * grip(p_inner) - load

    at_zero = margin(0.0)
    if at_zero < 0:
        raise SlipsAtZeroInnerPressure(load, at_zero + load)
    if at_zero == 0:
        return 0.0
    # margin(p_outer) = -load < 0 and the margin is strictly decreasing
    return bisect(margin, 0.0, p_outer, xtol=tol)


def slip_threshold_inner_pressure(robot: RobotParams, payload: PayloadSpec, p_outer: float,
                                  incline: InclineContext = FLAT, prefactor: float = 1.0,
                                  tol: float = SLIP_TOLERANCE) -> float:
    """Inner pressure at which a payload on a slope starts to slide.

    Raises :class:`SlipsAtZeroInnerPressure` if the grip is too weak even
    with no inner pressure, and :class:`NeverSlips` if nothing pulls the
    payload along the axis.
    """
    load = payload.mass * incline.axial_gravity

    def grip(p_inner):
        return effective_contact_area(robot, payload, PressureState(p_outer, p_inner), prefactor).k_effective

    return _solve_slip(load, p_outer, grip, tol)


def train_slip_threshold(robot: RobotParams, train: PayloadTrain, p_outer: float,
                         loads: Sequence[float], members: Iterable[int] | None = None,
                         prefactor: float = 1.0, tol: float = SLIP_TOLERANCE) -> float:
    """Slip threshold of a train carrying per-member axial loads ``loads`` (N)."""
    members = list(range(len(train.members))) if members is None else list(members)
    load = sum(loads[i] for i in members)

    def grip(p_inner):
        state = PressureState(p_outer, p_inner)
        return train_grip_strength(robot, train, state, members, prefactor).k_effective

    return _solve_slip(load, p_outer, grip, tol)


def holding_pressure(robot: RobotParams, train: PayloadTrain, loads: Sequence[float],
                     members: Iterable[int] | None = None, prefactor: float = 1.0) -> float:
    """Smallest P_o that holds the loaded members with no inner pressure.

    With P_i = 0 the wrap argument does not depend on P_o, so the grip is
    linear in P_o and this is a single division.
    """
    members = list(range(len(train.members))) if members is None else list(members)
    load = sum(loads[i] for i in members)
    if load <= 0:
        return 0.0
    k = train_grip_strength(robot, train, PressureState(1.0, 0.0), members, prefactor).k_effective
    if k <= 0:
        return math.inf
    return load / k
