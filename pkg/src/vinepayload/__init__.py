"""Quasi-static models for carrying payloads inside a soft everting robot."""

from .core import (
    GRAVITY,
    DiameterContext,
    InclineContext,
    PayloadSpec,
    PressureState,
    RobotParams,
    Shape,
    cross_section_area,
    effective_diameter,
)
from .grasp import (
    GripStrength,
    NeverSlips,
    PayloadTrain,
    SlipsAtZeroInnerPressure,
    Spacing,
    effective_contact_area,
    slip_threshold_inner_pressure,
    train_grip_strength,
    wetted_area,
    wrap_angle,
)
from .growth import (
    GrowthRegime,
    TailState,
    TensionShare,
    classify_regime,
    min_growth_pressure,
    min_inner_pressure_no_servo,
    robot_velocity_limit,
)
from .passage import BendSpec, HoleSpec, Verdict, bend_pass_check, hole_pass_check, min_hole_diameter
from .stability import collapse_moment, critical_length, critical_length_tip_payload, weight_moment
from .simulator import Course, FeasibilityReport, PressurePolicy, SimOptions, simulate

__version__ = "0.1.0"

__all__ = [
    "bend_pass_check",
    "BendSpec",
    "classify_regime",
    "collapse_moment",
    "Course",
    "critical_length",
    "critical_length_tip_payload",
    "cross_section_area",
    "DiameterContext",
    "effective_contact_area",
    "effective_diameter",
    "FeasibilityReport",
    "GRAVITY",
    "GripStrength",
    "GrowthRegime",
    "hole_pass_check",
    "HoleSpec",
    "InclineContext",
    "min_growth_pressure",
    "min_hole_diameter",
    "min_inner_pressure_no_servo",
    "NeverSlips",
    "PayloadSpec",
    "PayloadTrain",
    "PressurePolicy",
    "PressureState",
    "robot_velocity_limit",
    "RobotParams",
    "Shape",
    "SimOptions",
    "simulate",
    "slip_threshold_inner_pressure",
    "SlipsAtZeroInnerPressure",
    "Spacing",
    "TailState",
    "TensionShare",
    "train_grip_strength",
    "Verdict",
    "weight_moment",
    "wetted_area",
    "wrap_angle",
]
