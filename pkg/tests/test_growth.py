import math

import pytest

from vinepayload.core import InclineContext, PressureState, RobotParams
from vinepayload.growth import (
    GrowthRegime,
    TailState,
    classify_regime,
    min_growth_pressure,
    min_inner_pressure_no_servo,
    no_servo_balance_residual,
    robot_velocity_limit,
)

A_C = math.pi * 0.13 ** 2 / 4


def test_velocity_limit(robot):
    assert robot_velocity_limit(robot.with_(chamber_flow_max=0.001)) == pytest.approx(0.07534, abs=1e-5)


def test_velocity_limit_identity(robot):
    r = robot.with_(chamber_flow_max=A_C)
    assert robot_velocity_limit(r) == pytest.approx(1.0, rel=1e-15)


def test_velocity_limit_zero_flow_is_rejected_by_robot():
    # zero flow violates the positive-flow invariant at construction
    with pytest.raises(ValueError):
        RobotParams(chamber_flow_max=0.0)


def test_slack_regime(robot):
    regime = classify_regime(robot.with_(servo_speed=1.0), PressureState(2000.0))
    assert regime == GrowthRegime(TailState.SLACK, 0.0)


def test_taut_regime_tension(robot):
    regime = classify_regime(robot.with_(servo_speed=0.1), PressureState(2000.0))
    assert regime.kind is TailState.TAUT
    assert regime.tail_tension == pytest.approx(0.5 * (2000 * A_C - 3.6), rel=1e-12)
    assert regime.tail_tension == pytest.approx(11.47, abs=5e-3)


def test_taut_regime_floor(robot):
    regime = classify_regime(robot.with_(servo_speed=0.0), PressureState(100.0))
    assert regime.tail_tension == 0.0


def test_regime_rejects_tension_on_slack():
    with pytest.raises(ValueError):
        GrowthRegime(TailState.SLACK, 1.0)


def test_min_growth_pressure_vertical(robot):
    p = min_growth_pressure(robot, InclineContext(math.pi / 2), 1.5)
    assert p == pytest.approx((3.6 + 1.5 * 9.81) / A_C, rel=1e-12)
    assert p == pytest.approx(1379.9, abs=0.1)


def test_min_growth_pressure_flat(robot):
    assert min_growth_pressure(robot) == pytest.approx(271.2, abs=0.05)
    assert min_growth_pressure(robot, InclineContext(0.0), 5.0) == min_growth_pressure(robot)


def test_min_growth_pressure_zero(robot):
    assert min_growth_pressure(robot.with_(f_loss=0.0)) == 0.0


def test_half_share_doubles(robot):
    incline = InclineContext(math.radians(30))
    assert min_growth_pressure(robot, incline, 1.0, "half") == pytest.approx(2 * min_growth_pressure(robot, incline, 1.0))


def test_no_servo_balance_point(robot):
    p_o = robot.f_loss / A_C
    assert min_inner_pressure_no_servo(robot, p_o) == pytest.approx(p_o, rel=1e-12)


def test_no_servo_reference_value(robot):
    p_i = min_inner_pressure_no_servo(robot, 3650.0, wrap_cos=0.0)
    friction = 2 * 0.41 * math.pi * 0.102 * 0.5
    assert p_i == pytest.approx(3650 - (3650 * A_C - 3.6) / friction, rel=1e-12)
    assert p_i == pytest.approx(3308.6, abs=0.1)


def test_no_servo_monotone_in_tube_length(robot):
    short = min_inner_pressure_no_servo(robot.with_(tube_length=0.3), 3650.0)
    long = min_inner_pressure_no_servo(robot.with_(tube_length=0.6), 3650.0)
    assert long > short


def test_no_servo_residual(robot):
    for p_o in (400.0, 1000.0, 3650.0):
        for wrap_cos in (0.0, 0.3, 1.0):
            p_i = min_inner_pressure_no_servo(robot, p_o, wrap_cos)
            if 0 < p_i < p_o:
                assert abs(no_servo_balance_residual(robot, p_o, p_i, wrap_cos)) < 1e-9


def test_no_servo_clamps(robot):
    assert min_inner_pressure_no_servo(robot, 50.0) == 50.0
    assert min_inner_pressure_no_servo(robot.with_(tube_length=1e-4), 5000.0) == 0.0


def test_no_servo_without_friction_area(robot):
    with pytest.raises(ValueError):
        min_inner_pressure_no_servo(robot.with_(mu_tube=0.0), 2000.0)
