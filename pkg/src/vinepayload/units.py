"""Unit-tagged quantity parsing and display conversion.

Everything inside the package is SI (Pa, m, kg, s, rad, N). Files and the
command line may carry explicit unit tags, which are converted here and
nowhere else. A tagged value is either ``{"value": 13, "unit": "cm"}`` or a
string such as ``"13 cm"``; a bare number is taken as SI.
"""

from __future__ import annotations

import math
import re
from typing import Any

# factor to SI for each accepted tag, grouped by dimension
UNITS: dict[str, tuple[str, float]] = {
    "m": ("length", 1.0),
    "cm": ("length", 1e-2),
    "mm": ("length", 1e-3),
    "Pa": ("pressure", 1.0),
    "kPa": ("pressure", 1e3),
    "psi": ("pressure", 6894.757293168361),
    "kg": ("mass", 1.0),
    "g": ("mass", 1e-3),
    "rad": ("angle", 1.0),
    "deg": ("angle", math.pi / 180.0),
    "N": ("force", 1.0),
    "m/s": ("velocity", 1.0),
    "cm/s": ("velocity", 1e-2),
    "mm/s": ("velocity", 1e-3),
    "m^3/s": ("flow", 1.0),
    "L/s": ("flow", 1e-3),
    "L/min": ("flow", 1e-3 / 60.0),
    "kg/m^3": ("density", 1.0),
    "g/cm^3": ("density", 1e3),
    "m/s^2": ("acceleration", 1.0),
    "N*m": ("moment", 1.0),
    "N/Pa": ("stiffness", 1.0),
    "N/kPa": ("stiffness", 1e-3),
    "1": ("dimensionless", 1.0),
}

SI_UNIT = {
    "length": "m",
    "pressure": "Pa",
    "mass": "kg",
    "angle": "rad",
    "force": "N",
    "velocity": "m/s",
    "flow": "m^3/s",
    "density": "kg/m^3",
    "acceleration": "m/s^2",
    "moment": "N*m",
    "stiffness": "N/Pa",
    "dimensionless": "1",
}

# the figure-friendly display system
PAPER_UNIT = dict(SI_UNIT, length="cm", pressure="kPa", mass="g", angle="deg", stiffness="N/kPa")

_TAGGED = re.compile(r"^\s*([-+0-9.eE]+)\s*([A-Za-z/^*0-9]+)?\s*$")


class UnitError(ValueError):
    pass


def to_si(value: float, unit: str) -> float:
    try:
        return value * UNITS[unit][1]
    except KeyError:
        raise UnitError(f"unknown unit {unit!r}") from None


def from_si(value: float, unit: str) -> float:
    try:
        return value / UNITS[unit][1]
    except KeyError:
        raise UnitError(f"unknown unit {unit!r}") from None


def dimension_of(unit: str) -> str:
    try:
        return UNITS[unit][0]
    except KeyError:
        raise UnitError(f"unknown unit {unit!r}") from None


def parse_quantity(raw: Any, dimension: str | None = None) -> float:
    """Convert a bare number, ``"13 cm"`` or ``{"value": 13, "unit": "cm"}`` to SI.

    When ``dimension`` is given, a tag of another dimension is rejected.
    """
    if isinstance(raw, bool):
        raise UnitError(f"expected a quantity, got {raw!r}")
    if isinstance(raw, (int, float)):
        return float(raw)
    if isinstance(raw, dict):
        if set(raw) - {"value", "unit"} or "value" not in raw:
            raise UnitError(f"malformed quantity {raw!r}")
        value, unit = raw["value"], raw.get("unit")
        if not isinstance(value, (int, float)) or isinstance(value, bool):
            raise UnitError(f"malformed quantity {raw!r}")
    elif isinstance(raw, str):
        match = _TAGGED.match(raw)
        if not match:
            raise UnitError(f"cannot parse quantity {raw!r}")
        try:
            value = float(match.group(1))
        except ValueError:
            raise UnitError(f"cannot parse quantity {raw!r}") from None
        unit = match.group(2)
    else:
        raise UnitError(f"expected a quantity, got {raw!r}")

    if unit is None:
        return float(value)
    if dimension is not None and dimension_of(unit) != dimension:
        raise UnitError(f"{raw!r} is not a {dimension}")
    return to_si(float(value), unit)


def tag(value: float, dimension: str, system: str = "si") -> dict[str, float | str]:
    """Express an SI value as a tagged quantity in the si or paper display system."""
    units = PAPER_UNIT if system == "paper" else SI_UNIT
    unit = units[dimension]
    return {"value": from_si(value, unit), "unit": unit}


def fmt(value: float, dimension: str, system: str = "si", digits: int = 4) -> str:
    units = PAPER_UNIT if system == "paper" else SI_UNIT
    unit = units[dimension]
    shown = from_si(value, unit)
    return f"{shown:.{digits}g} {unit}" if unit != "1" else f"{shown:.{digits}g}"
