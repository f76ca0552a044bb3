import math

import pytest

from vinepayload.stability import (
    SpanState,
    collapse_moment,
    critical_length,
    critical_length_tip_payload,
    moment_margin,
    payload_moment,
    required_pressure,
    robot_mass,
    weight_moment,
)

# the heavier 4*pi*D*t*L*rho body-mass accounting
HEAVY = 4.0


def test_collapse_moment(robot):
    assert collapse_moment(robot, 2000.0) == pytest.approx(2000 * math.pi * 0.13 ** 3 / 8, rel=1e-14)
    assert collapse_moment(robot, 2000.0) == pytest.approx(1.7254, abs=2e-4)
    assert collapse_moment(robot, 0.0) == 0.0
    big = robot.with_(robot_diameter=0.26, tube_diameter=0.2)
    assert collapse_moment(big, 2000.0) == pytest.approx(8 * collapse_moment(robot, 2000.0))


def test_collapse_moment_negative_pressure(robot):
    with pytest.raises(ValueError):
        collapse_moment(robot, -1.0)


def test_weight_moment_heavy_convention(robot):
    assert robot_mass(robot, 1.0, body_mass_factor=HEAVY) == pytest.approx(0.07677, abs=1e-5)
    assert weight_moment(robot, 1.0, body_mass_factor=HEAVY) == pytest.approx(0.3765, abs=1e-4)


def test_weight_moment_default_convention(robot):
    expected = 2 * math.pi * 0.13 * 5.08e-5 * 925 * 1.0 * 9.81 * 0.5
    assert weight_moment(robot, 1.0) == pytest.approx(expected, rel=1e-14)
    assert weight_moment(robot, 0.0) == 0.0
    assert weight_moment(robot, 2.0) == pytest.approx(4 * weight_moment(robot, 1.0))


def test_critical_length_heavy_convention(robot):
    assert critical_length(robot, 2000.0, body_mass_factor=HEAVY) == pytest.approx(2.141, abs=1e-3)


def test_critical_length_default_convention(robot):
    expected = math.sqrt((2000 * math.pi * 0.13 ** 3 / 8) / (math.pi * 0.13 * 5.08e-5 * 925 * 9.81))
    assert critical_length(robot, 2000.0) == pytest.approx(expected, rel=1e-12)


def test_critical_length_boundary(robot):
    m_c = collapse_moment(robot, 2000.0)
    assert critical_length(robot, 2000.0, 1.0, m_c / 9.81) == 0.0
    assert critical_length(robot, 2000.0, 1.0, 10.0) == 0.0


def test_critical_length_payload_reduces(robot):
    assert critical_length(robot, 2000.0, 0.1, 0.3) < critical_length(robot, 2000.0)


def test_critical_length_negative_inputs(robot):
    with pytest.raises(ValueError):
        critical_length(robot, 2000.0, -0.1, 0.3)


def test_tip_payload_literal_formula(robot):
    m, p_o, D, t, rho, g = 0.2, 2000.0, 0.13, 5.08e-5, 925.0, 9.81
    literal = (-m + math.sqrt(m ** 2 + math.pi ** 2 * D ** 4 * t * rho * p_o / (2 * g))) / (2 * math.pi * D * t * rho)
    assert critical_length_tip_payload(robot, p_o, m) == pytest.approx(literal, rel=1e-12)
    assert critical_length_tip_payload(robot, p_o, m) == pytest.approx(0.816, abs=1e-3)


@pytest.mark.parametrize("factor", [2.0, HEAVY])
def test_tip_payload_consistency(robot, factor):
    assert critical_length_tip_payload(robot, 2000.0, 0.0, body_mass_factor=factor) == pytest.approx(
        critical_length(robot, 2000.0, body_mass_factor=factor), rel=1e-9)
    length = critical_length_tip_payload(robot, 2000.0, 0.2, body_mass_factor=factor)
    assert critical_length(robot, 2000.0, 0.2, length, body_mass_factor=factor) == pytest.approx(length, rel=1e-9)


def test_heavy_tip_value(robot):
    # the consistent tip solution under the heavier accounting
    assert critical_length_tip_payload(robot, 2000.0, 0.2, body_mass_factor=HEAVY) == pytest.approx(0.7667, abs=1e-4)


def test_moment_balance_at_tip_length(robot):
    length = critical_length_tip_payload(robot, 2000.0, 0.2)
    span = SpanState(length, length, 0.2, 2000.0)
    assert abs(moment_margin(robot, span)) / collapse_moment(robot, 2000.0) < 1e-9


def test_span_state_validation():
    with pytest.raises(ValueError):
        SpanState(1.0, 1.5)


def test_required_pressure_inverts_collapse(robot):
    assert collapse_moment(robot, required_pressure(robot, 1.3)) == pytest.approx(1.3)
    assert required_pressure(robot, 0.0) == 0.0
    assert payload_moment(0.2, 0.5) == pytest.approx(0.981)


def test_derating(robot):
    assert critical_length(robot, 2000.0, derating=0.5) == pytest.approx(critical_length(robot, 1000.0))
