"""Cantilever collapse of the pressurized body over unsupported spans.

The body is treated as a thin uniform cylinder whose wall is doubled back
on itself, so a span of length ``L`` carries membrane of length ``2L``:

    m_robot = body_mass_factor * pi * D * t * rho * L

``body_mass_factor = 2`` (the default) is that single-wall count. Setting it
to 4 reproduces the heavier accounting that counts both walls twice; both
conventions keep the moment balance and the two critical-length solutions
mutually consistent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import GRAVITY, RobotParams

BODY_MASS_FACTOR = 2.0

# two-end-supported crossing has no strength model; this is the demonstrated case
TWO_END_DEMONSTRATED_SPAN = 1.15
TWO_END_DEMONSTRATED_MASS = 0.5


@dataclass(frozen=True)
class SpanState:
    robot_length: float
    payload_distance: float = 0.0
    payload_mass: float = 0.0
    p_outer: float = 0.0

    def __post_init__(self):
        if self.robot_length < 0 or self.payload_mass < 0 or self.p_outer < 0:
            raise ValueError("span lengths, masses and pressures must be non-negative")
        if not 0.0 <= self.payload_distance <= self.robot_length:
            raise ValueError("payload_distance must lie within the span")


def _mass_per_length(robot: RobotParams, body_mass_factor: float) -> float:
    return body_mass_factor * math.pi * robot.robot_diameter * robot.membrane_thickness * robot.membrane_density


def collapse_moment(robot: RobotParams, p_outer: float, derating: float = 1.0) -> float:
    """Bending moment at which the pressurized tube wrinkles and collapses.

    ``derating`` scales the moment down for planning margins (1.0 = model value).
    """
    if p_outer < 0:
        raise ValueError("p_outer must be non-negative")
    return derating * p_outer * math.pi * robot.robot_diameter ** 3 / 8.0


def robot_mass(robot: RobotParams, length: float, body_mass_factor: float = BODY_MASS_FACTOR) -> float:
    if length < 0:
        raise ValueError("length must be non-negative")
    return _mass_per_length(robot, body_mass_factor) * length


def weight_moment(robot: RobotParams, length: float, gravity: float = GRAVITY,
                  body_mass_factor: float = BODY_MASS_FACTOR) -> float:
    """Root moment of the body's own weight for a cantilever of ``length``."""
    return robot_mass(robot, length, body_mass_factor) * gravity * length / 2.0


def payload_moment(payload_mass: float, payload_distance: float, gravity: float = GRAVITY) -> float:
    if payload_mass < 0 or payload_distance < 0:
        raise ValueError("payload mass and distance must be non-negative")
    return payload_mass * gravity * payload_distance


def critical_length(robot: RobotParams, p_outer: float, payload_mass: float = 0.0,
                    payload_distance: float = 0.0, gravity: float = GRAVITY,
                    body_mass_factor: float = BODY_MASS_FACTOR, derating: float = 1.0) -> float:
    """Longest cantilever that holds a payload at a fixed distance from the support.

    Returns 0 when the payload alone already exceeds the collapse moment.
    """
    if min(p_outer, payload_mass, payload_distance) < 0:
        raise ValueError("inputs must be non-negative")
    numerator = collapse_moment(robot, p_outer, derating) - payload_moment(payload_mass, payload_distance, gravity)
    if numerator <= 0:
        return 0.0
    return math.sqrt(numerator / (0.5 * _mass_per_length(robot, body_mass_factor) * gravity))


def critical_length_tip_payload(robot: RobotParams, p_outer: float, payload_mass: float = 0.0,
                                gravity: float = GRAVITY, body_mass_factor: float = BODY_MASS_FACTOR,
                                derating: float = 1.0) -> float:
    """Longest cantilever with the payload riding at the tip.

    Positive root of ``(w/2) L^2 + m L = M_collapse / g`` where ``w`` is the
    body mass per unit length.
    """
    if payload_mass < 0:
        raise ValueError("payload_mass must be non-negative")
    half_w = 0.5 * _mass_per_length(robot, body_mass_factor)
    c = collapse_moment(robot, p_outer, derating) / gravity
    # stable form of (-m + sqrt(m^2 + 4 a c)) / (2 a) for small a*c
    disc = math.sqrt(payload_mass ** 2 + 4.0 * half_w * c)
    if payload_mass == 0:
        return disc / (2.0 * half_w)
    return 2.0 * c / (payload_mass + disc)


def moment_margin(robot: RobotParams, span: SpanState, gravity: float = GRAVITY,
                  body_mass_factor: float = BODY_MASS_FACTOR, derating: float = 1.0) -> float:
    """Collapse moment minus the applied root moment; negative means buckled."""
    applied = (weight_moment(robot, span.robot_length, gravity, body_mass_factor)
               + payload_moment(span.payload_mass, span.payload_distance, gravity))
    return collapse_moment(robot, span.p_outer, derating) - applied


def required_pressure(robot: RobotParams, applied_moment: float, derating: float = 1.0) -> float:
    """Chamber pressure whose collapse moment equals ``applied_moment``."""
    if applied_moment <= 0:
        return 0.0
    return 8.0 * applied_moment / (derating * math.pi * robot.robot_diameter ** 3)
