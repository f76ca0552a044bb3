"""Eversion growth thresholds: tail tension, servo regimes and minimum pressures."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .core import FLAT, InclineContext, PressureState, RobotParams, cross_section_area


class TailState(str, enum.Enum):
    SLACK = "slack_tail"
    TAUT = "taut_tail"


class TensionShare(str, enum.Enum):
    # FULL: P_o*A_c = F_loss + m g sin(theta)
    # HALF: 0.5*P_o*A_c = F_loss + m g sin(theta), the convention of the incline fit
    FULL = "full"
    HALF = "half"


@dataclass(frozen=True)
class GrowthRegime:
    kind: TailState
    tail_tension: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "kind", TailState(self.kind))
        if self.tail_tension < 0:
            raise ValueError("tail tension cannot be negative")
        if self.kind is TailState.SLACK and self.tail_tension != 0:
            raise ValueError("a slack tail carries no tension")


def robot_velocity_limit(robot: RobotParams) -> float:
    """Fastest growth the chamber supply can sustain."""
    area = cross_section_area(robot)
    if area <= 0:
        raise ValueError("zero cross-section area")
    return robot.chamber_flow_max / area


def payload_load(payload_mass: float, incline: InclineContext = FLAT) -> float:
    """Axial weight component a payload adds on a slope, in N."""
    if payload_mass < 0:
        raise ValueError("payload mass must be non-negative")
    return payload_mass * incline.axial_gravity


def classify_regime(robot: RobotParams, pressure: PressureState, incline: InclineContext = FLAT,
                    payload_mass: float = 0.0) -> GrowthRegime:
    """Slack tail when the servos outrun the tail feed, otherwise taut.

    The taut-tail tension is the pressure force left over after tip loss and
    payload weight, split over the two walls, and never negative.
    """
    return regime_for_load(robot, pressure.p_outer, payload_load(payload_mass, incline))


def regime_for_load(robot: RobotParams, p_outer: float, load: float) -> GrowthRegime:
    """:func:`classify_regime` for an already summed axial payload load in N."""
    if robot.servo_speed > 2.0 * robot_velocity_limit(robot):
        return GrowthRegime(TailState.SLACK, 0.0)
    tension = 0.5 * (p_outer * cross_section_area(robot) - robot.f_loss - load)
    return GrowthRegime(TailState.TAUT, max(tension, 0.0))


def min_growth_pressure(robot: RobotParams, incline: InclineContext = FLAT, payload_mass: float = 0.0,
                        tension_share: TensionShare | str = TensionShare.FULL) -> float:
    """Chamber pressure at which a slack-tail robot starts to grow."""
    return growth_pressure_for_load(robot, payload_load(payload_mass, incline), tension_share)


def growth_pressure_for_load(robot: RobotParams, load: float,
                             tension_share: TensionShare | str = TensionShare.FULL) -> float:
    scale = 2.0 if TensionShare(tension_share) is TensionShare.HALF else 1.0
    return scale * (robot.f_loss + load) / cross_section_area(robot)


def tail_friction_area(robot: RobotParams, wrap_cos: float = 0.0) -> float:
    """Area over which the stored membrane rubs on the inner tube."""
    tube_area = math.pi * robot.tube_diameter * robot.tube_length
    return tube_area + 0.5 * cross_section_area(robot) * wrap_cos


def min_inner_pressure_no_servo(robot: RobotParams, pressure_outer: float, wrap_cos: float = 0.0,
                                payload_force: float = 0.0) -> float:
    """Lowest inner-tube pressure that lets the robot grow without servo help.

    Tail tension comes only from membrane friction on the inner tube, which
    the inner pressure relieves. The result is clamped to ``[0, pressure_outer]``.
    ``payload_force`` is an optional extra axial load in N (zero on flat ground).
    """
    if pressure_outer < 0:
        raise ValueError("pressure_outer must be non-negative")
    friction = 2.0 * robot.mu_tube * tail_friction_area(robot, wrap_cos)
    if friction <= 0:
        raise ValueError("no friction area: the tail balance has no solution for P_i")
    surplus = pressure_outer * cross_section_area(robot) - robot.f_loss - payload_force
    p_inner = pressure_outer - surplus / friction
    return min(max(p_inner, 0.0), pressure_outer)


def no_servo_balance_residual(robot: RobotParams, pressure_outer: float, p_inner: float,
                              wrap_cos: float = 0.0, payload_force: float = 0.0) -> float:
    """Pressure force minus tail friction, tip loss and payload load, in N."""
    tension = (pressure_outer - p_inner) * robot.mu_tube * tail_friction_area(robot, wrap_cos)
    return pressure_outer * cross_section_area(robot) - 2.0 * tension - robot.f_loss - payload_force
