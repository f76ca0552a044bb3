import math
from pathlib import Path

import numpy as np
import pytest

from vinepayload.core import GRAVITY, PayloadSpec, RobotParams, cross_section_area
from vinepayload.scenario import SweepBase, load_scenario
from vinepayload.simulator import SimOptions
from vinepayload.sweep import MODELS, SweepError, SweepPoint, sweep, sweep_range

SCENARIOS = Path(__file__).resolve().parents[1] / "scenarios"


def point(angle=0.0, p_outer=2000.0, p_inner=0.0, payload=None, **opts):
    payload = payload or PayloadSpec.sphere(0.06, mass=0.2, mu_surface=0.27)
    return SweepPoint(RobotParams(), payload, SweepBase(angle, p_outer, p_inner), SimOptions(**opts))


def test_mass_sweep_slope_at_45_degrees():
    table = sweep("mass", sweep_range(0.1, 1.5, 15), point(math.radians(45)))
    xs, ys = np.array(table.rows).T
    slope = np.polyfit(xs, ys, 1)[0]
    expected = GRAVITY * math.sin(math.radians(45)) / cross_section_area(RobotParams())
    assert expected == pytest.approx(522.6, abs=0.1)
    assert slope == pytest.approx(expected, rel=1e-9)


def test_flat_mass_sweep_is_constant():
    robot = RobotParams()
    table = sweep("mass", sweep_range(0.0, 2.0, 9), point(0.0))
    for _, y in table.rows:
        assert y == pytest.approx(robot.f_loss / cross_section_area(robot), rel=1e-12)


def test_pressure_sweep_of_critical_length_is_monotone():
    table = sweep("p_outer", sweep_range(500, 5000, 10), point())
    ys = [y for _, y in table.rows]
    assert all(b > a for a, b in zip(ys, ys[1:]))


def test_heavy_body_convention_via_options():
    table = sweep("p_outer", [2000.0], point(payload=PayloadSpec.sphere(0.06, mass=0.0), body_mass_factor=4.0))
    assert table.rows[0][1] == pytest.approx(2.141, abs=1e-3)


def test_angle_sweep_uses_scenario_payload():
    sc = load_scenario(SCENARIOS / "incline90.json")
    table = sweep("angle", [0.0, math.pi / 2], sc)
    assert table.rows[1][1] == pytest.approx(1379.9, abs=0.1)


def test_every_model_evaluates():
    pt = point(math.radians(30), p_outer=3000.0)
    for model in MODELS:
        table = sweep("mass", [0.1, 0.2], pt, model)
        assert len(table.rows) == 2


def test_csv_header_and_units():
    table = sweep("mass", [0.5, 1.0], point(math.radians(45)))
    si = table.to_csv().splitlines()
    paper = table.to_csv("paper").splitlines()
    assert si[0] == "mass_kg,growth_pressure_Pa"
    assert paper[0] == "mass_g,growth_pressure_kPa"
    assert float(paper[1].split(",")[0]) == pytest.approx(500.0)
    assert float(paper[1].split(",")[1]) * 1e3 == pytest.approx(float(si[1].split(",")[1]))


def test_errors():
    with pytest.raises(SweepError):
        sweep("colour", [1.0, 2.0], point())
    with pytest.raises(SweepError):
        sweep("mass", [1.0, 2.0], point(), "nonsense")
    with pytest.raises(SweepError):
        sweep("length", [0.1, 0.2], point())
    with pytest.raises(SweepError):
        sweep_range(1.0, 1.0, 5)
    with pytest.raises(SweepError):
        sweep_range(0.0, 1.0, 1)
    with pytest.raises(SweepError):
        sweep("diameter", [-0.02], point())
