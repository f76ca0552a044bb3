import math

import pytest

from vinepayload.core import (
    PayloadSpec,
    PressureState,
    RobotParams,
    Shape,
    cross_section_area,
    effective_diameter,
    load_reference_config,
    payload_from_dict,
    reference_materials,
    reference_robot,
    robot_from_dict,
)
from vinepayload.units import UnitError, from_si, parse_quantity, tag, to_si


def test_cross_section_area_reference():
    assert cross_section_area(RobotParams(robot_diameter=0.13)) == pytest.approx(0.0132732, abs=5e-8)


def test_cross_section_area_identity_input():
    assert cross_section_area(RobotParams(robot_diameter=2 / math.sqrt(math.pi), tube_diameter=0.1)) == pytest.approx(1.0, rel=1e-15)


def test_zero_diameter_rejected():
    with pytest.raises(ValueError):
        RobotParams(robot_diameter=0.0)


@pytest.mark.parametrize("changes", [
    {"tube_diameter": 0.2},
    {"mu_tube": 2.5},
    {"f_loss": -1.0},
    {"membrane_density": 0.0},
    {"chamber_flow_max": -1e-3},
])
def test_robot_invariants(changes):
    with pytest.raises(ValueError):
        RobotParams(**changes)


def test_effective_diameter_contexts():
    assert effective_diameter(PayloadSpec.sphere(0.06)) == 0.06
    cube = PayloadSpec.cube(0.06)
    assert effective_diameter(cube, "grasp") == 0.06
    assert effective_diameter(cube, "clearance") == pytest.approx(0.08485, abs=1e-5)
    assert effective_diameter(PayloadSpec.cone(0.06, 0.08), "clearance") == 0.06


def test_payload_validation():
    with pytest.raises(ValueError):
        PayloadSpec.sphere(0.0)
    with pytest.raises(ValueError):
        PayloadSpec.sphere(0.05, mass=-1)
    with pytest.raises(ValueError):
        PayloadSpec(Shape.CYLINDER, 0.04)
    with pytest.raises(ValueError):
        PayloadSpec.cone(0.06, 0.02)


def test_cone_axial_length():
    assert PayloadSpec.cone(0.06, 0.05).axial_length == pytest.approx(0.04)


def test_pressure_state_non_negative():
    with pytest.raises(ValueError):
        PressureState(-1.0)


@pytest.mark.parametrize("raw, expected", [
    (2000, 2000.0),
    ("2 kPa", 2000.0),
    ({"value": 13, "unit": "cm"}, 0.13),
    ("1500 g", 1.5),
    ("90 deg", math.pi / 2),
    ("0.0508 mm", 5.08e-5),
    ({"value": 1.0, "unit": "L/s"}, 1e-3),
])
def test_parse_quantity(raw, expected):
    assert parse_quantity(raw) == pytest.approx(expected, rel=1e-15)


def test_parse_quantity_dimension_mismatch():
    with pytest.raises(UnitError):
        parse_quantity("2 kPa", "length")
    with pytest.raises(UnitError):
        parse_quantity("2 furlongs")
    with pytest.raises(UnitError):
        parse_quantity(True)


@pytest.mark.parametrize("unit", ["cm", "kPa", "g", "deg", "mm", "N/kPa"])
def test_unit_round_trip(unit):
    for x in (1e-6, 0.37, 1.0, 13.0, 2900.0, 1e7):
        assert from_si(to_si(x, unit), unit) == pytest.approx(x, rel=1e-12)


def test_tag_paper_units():
    assert tag(2000.0, "pressure", "paper") == {"value": 2.0, "unit": "kPa"}


def test_reference_config_matches_defaults():
    assert reference_robot() == RobotParams()
    assert reference_materials() == {"petg": 0.27, "uhmw": 0.30}


def test_reference_config_env_override(tmp_path, monkeypatch):
    path = tmp_path / "cfg.json"
    path.write_text('{"robot": {"f_loss": "4.1 N"}}')
    monkeypatch.setenv("VINE_PAYLOAD_CONFIG", str(path))
    assert load_reference_config()["robot"]["f_loss"] == "4.1 N"
    assert reference_robot().f_loss == 4.1


def test_robot_from_dict_unknown_field():
    with pytest.raises(ValueError, match="unknown robot field"):
        robot_from_dict({"colour": 1})


def test_payload_from_dict_aliases():
    cube = payload_from_dict({"shape": "cube", "edge": "6 cm", "mass": "200 g"})
    assert cube.shape is Shape.CUBE and cube.diameter == pytest.approx(0.06) and cube.mass == pytest.approx(0.2)
    cone = payload_from_dict({"shape": "cone_tip_first", "diameter": 0.06, "slant_height": 0.08})
    assert cone.length == 0.08
