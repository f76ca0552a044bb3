"""Shared value types: robot, payload, pressures and slope context."""

from __future__ import annotations

import enum
import json
import math
import os
from dataclasses import asdict, dataclass, fields, replace
from importlib import resources
from pathlib import Path
from typing import Any

from .units import parse_quantity

GRAVITY = 9.81

# sharp cube edges grip harder than a round side band of the same size
CUBE_CONTACT_FACTOR = 1.261

CONFIG_ENV_VAR = "VINE_PAYLOAD_CONFIG"


class Shape(str, enum.Enum):
    SPHERE = "sphere"
    CYLINDER = "cylinder"
    CUBE = "cube"
    CONE_BASE_FIRST = "cone_base_first"
    CONE_TIP_FIRST = "cone_tip_first"


class DiameterContext(str, enum.Enum):
    GRASP = "grasp"
    CLEARANCE = "clearance"


@dataclass(frozen=True)
class RobotParams:
    robot_diameter: float = 0.13
    tube_diameter: float = 0.102
    tube_length: float = 0.5
    membrane_thickness: float = 5.08e-5
    membrane_density: float = 925.0
    mu_tube: float = 0.41
    f_loss: float = 3.6
    chamber_flow_max: float = 1e-3
    servo_speed: float = 0.2

    def __post_init__(self):
        positive = ("robot_diameter", "tube_diameter", "tube_length", "membrane_thickness",
                    "membrane_density", "chamber_flow_max")
        for name in positive:
            value = getattr(self, name)
            if not (value > 0 and math.isfinite(value)):
                raise ValueError(f"{name} must be positive and finite, got {value!r}")
        if self.tube_diameter >= self.robot_diameter:
            raise ValueError("tube_diameter must be smaller than robot_diameter")
        if not 0.0 <= self.mu_tube <= 2.0:
            raise ValueError(f"mu_tube must lie in [0, 2], got {self.mu_tube!r}")
        if self.f_loss < 0:
            raise ValueError(f"f_loss must be non-negative, got {self.f_loss!r}")
        if self.servo_speed < 0:
            raise ValueError(f"servo_speed must be non-negative, got {self.servo_speed!r}")

    def with_(self, **changes) -> "RobotParams":
        return replace(self, **changes)


ROBOT_DIMENSIONS = {
    "robot_diameter": "length",
    "tube_diameter": "length",
    "tube_length": "length",
    "membrane_thickness": "length",
    "membrane_density": "density",
    "mu_tube": "dimensionless",
    "f_loss": "force",
    "chamber_flow_max": "flow",
    "servo_speed": "velocity",
}


@dataclass(frozen=True)
class PayloadSpec:
    """A parametric payload.

    ``diameter`` is the sphere/cylinder diameter, the cube edge or the cone
    base diameter. ``length`` is the cylinder length or the cone slant
    height and is unused for spheres and cubes.
    """

    shape: Shape
    diameter: float
    mass: float = 0.0
    mu_surface: float = 0.27
    length: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "shape", Shape(self.shape))
        if not self.diameter > 0:
            raise ValueError(f"payload diameter must be positive, got {self.diameter!r}")
        if self.mass < 0:
            raise ValueError(f"payload mass must be non-negative, got {self.mass!r}")
        if self.mu_surface < 0:
            raise ValueError(f"mu_surface must be non-negative, got {self.mu_surface!r}")
        if self.shape in (Shape.CYLINDER, Shape.CONE_BASE_FIRST, Shape.CONE_TIP_FIRST):
            if self.length is None or self.length < 0:
                raise ValueError(f"{self.shape.value} payload needs a non-negative length")
        if self.is_cone and self.length < self.diameter / 2:
            raise ValueError("cone slant height cannot be shorter than its base radius")

    @property
    def is_cone(self) -> bool:
        return self.shape in (Shape.CONE_BASE_FIRST, Shape.CONE_TIP_FIRST)

    @classmethod
    def sphere(cls, diameter, mass=0.0, mu_surface=0.27):
        return cls(Shape.SPHERE, diameter, mass, mu_surface)

    @classmethod
    def cylinder(cls, diameter, length, mass=0.0, mu_surface=0.27):
        return cls(Shape.CYLINDER, diameter, mass, mu_surface, length)

    @classmethod
    def cube(cls, edge, mass=0.0, mu_surface=0.27):
        return cls(Shape.CUBE, edge, mass, mu_surface)

    @classmethod
    def cone(cls, base_diameter, slant_height, mass=0.0, mu_surface=0.27, tip_first=False):
        shape = Shape.CONE_TIP_FIRST if tip_first else Shape.CONE_BASE_FIRST
        return cls(shape, base_diameter, mass, mu_surface, slant_height)

    @property
    def axial_length(self) -> float:
        """Extent of the payload along the robot axis."""
        if self.shape is Shape.CYLINDER:
            return self.length
        if self.is_cone:
            return math.sqrt(self.length ** 2 - (self.diameter / 2) ** 2)
        return self.diameter

    def with_(self, **changes) -> "PayloadSpec":
        return replace(self, **changes)


@dataclass(frozen=True)
class PressureState:
    p_outer: float
    p_inner: float = 0.0

    def __post_init__(self):
        if self.p_outer < 0 or self.p_inner < 0:
            raise ValueError("pressures must be non-negative")


@dataclass(frozen=True)
class InclineContext:
    slope_angle: float = 0.0
    gravity: float = GRAVITY

    def __post_init__(self):
        if not 0.0 <= self.slope_angle <= math.pi / 2 + 1e-12:
            raise ValueError(f"slope_angle must lie in [0, pi/2], got {self.slope_angle!r}")

    @property
    def axial_gravity(self) -> float:
        """Component of gravity along the slope."""
        return self.gravity * math.sin(self.slope_angle)


FLAT = InclineContext()


def effective_diameter(payload: PayloadSpec, context: DiameterContext | str = DiameterContext.GRASP) -> float:
    """Characteristic diameter of a payload.

    For cubes the clearance diameter is the face diagonal, the grasp
    diameter the edge itself (the contact bonus is applied to the wetted
    area instead). Every other shape uses its nominal diameter.
    """
    context = DiameterContext(context)
    if payload.shape is Shape.CUBE and context is DiameterContext.CLEARANCE:
        return payload.diameter * math.sqrt(2.0)
    return payload.diameter


def cross_section_area(robot: RobotParams) -> float:
    """Tip cross-sectional area of the robot body."""
    if not robot.robot_diameter > 0:
        raise ValueError("robot_diameter must be positive")
    return math.pi * robot.robot_diameter ** 2 / 4.0


def _reference_path() -> Path | None:
    override = os.environ.get(CONFIG_ENV_VAR)
    return Path(override) if override else None


def load_reference_config(path: str | os.PathLike | None = None) -> dict[str, Any]:
    """Read the unit-tagged reference config.

    Lookup order: explicit ``path``, the ``VINE_PAYLOAD_CONFIG`` environment
    variable, then the copy bundled with the package.
    """
    path = Path(path) if path is not None else _reference_path()
    if path is None:
        text = resources.files("vinepayload").joinpath("data/reference_config.json").read_text("utf-8")
    else:
        text = Path(path).read_text("utf-8")
    return json.loads(text)


def robot_from_dict(raw: dict[str, Any], base: RobotParams | None = None) -> RobotParams:
    unknown = set(raw) - set(ROBOT_DIMENSIONS)
    if unknown:
        raise ValueError(f"unknown robot field(s): {', '.join(sorted(unknown))}")
    values = {name: parse_quantity(raw[name], ROBOT_DIMENSIONS[name]) for name in raw}
    return replace(base or RobotParams(), **values)


def reference_robot(path: str | os.PathLike | None = None) -> RobotParams:
    return robot_from_dict(load_reference_config(path).get("robot", {}))


def reference_materials(path: str | os.PathLike | None = None) -> dict[str, float]:
    raw = load_reference_config(path).get("friction", {})
    return {name: parse_quantity(value, "dimensionless") for name, value in raw.items()}


def robot_to_dict(robot: RobotParams) -> dict[str, float]:
    return {f.name: getattr(robot, f.name) for f in fields(robot)}


PAYLOAD_DIMENSIONS = {"diameter": "length", "length": "length", "mass": "mass", "mu_surface": "dimensionless"}


def payload_from_dict(raw: dict[str, Any]) -> PayloadSpec:
    raw = dict(raw)
    shape = raw.pop("shape", None)
    if shape is None:
        raise ValueError("payload is missing 'shape'")
    if "edge" in raw:
        raw["diameter"] = raw.pop("edge")
    if "slant_height" in raw:
        raw["length"] = raw.pop("slant_height")
    unknown = set(raw) - set(PAYLOAD_DIMENSIONS)
    if unknown:
        raise ValueError(f"unknown payload field(s): {', '.join(sorted(unknown))}")
    if "diameter" not in raw:
        raise ValueError("payload is missing 'diameter'")
    values = {k: parse_quantity(v, PAYLOAD_DIMENSIONS[k]) for k, v in raw.items()}
    return PayloadSpec(Shape(shape), **values)


def payload_to_dict(payload: PayloadSpec) -> dict[str, Any]:
    out = asdict(payload)
    out["shape"] = payload.shape.value
    if out["length"] is None:
        del out["length"]
    return out
