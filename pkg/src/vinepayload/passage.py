"""Can a payload get through a tight aperture or a discrete bend?

Holes use the membrane-clearance formula. Bends have no force model, so
they use an empirical table of how far a payload of a given diameter can
turn while the tail is under tension.
"""

from __future__ import annotations

import bisect
import enum
import math
from dataclasses import dataclass
from typing import Sequence

from .core import PayloadSpec, RobotParams, Shape, effective_diameter

MAX_TESTED_BEND = math.radians(135.0)

HOLE_MARGIN = 0.004
# below min_hole_diameter but still above the payload: squeezes through with wear
HOLE_MARGINAL_TOLERANCE = 5e-4
CYLINDER_ALIGNMENT_RATIO = 1.0

# (payload diameter m, first failing bend angle rad) under tail tension;
# constant beyond the end knots
DEFAULT_BEND_BOUNDARY: tuple[tuple[float, float], ...] = (
    (0.02, math.radians(150.0)),
    (0.04, math.radians(120.0)),
    (0.06, math.radians(90.0)),
)

_EPS = 1e-12


class Verdict(str, enum.Enum):
    PASS = "pass"
    MARGINAL = "marginal"
    FAIL = "fail"


@dataclass(frozen=True)
class BendSpec:
    angle: float
    tension_present: bool = False

    def __post_init__(self):
        if not 0.0 <= self.angle <= math.pi:
            raise ValueError(f"bend angle must lie in [0, pi], got {self.angle!r}")


@dataclass(frozen=True)
class HoleSpec:
    hole_diameter: float

    def __post_init__(self):
        if not self.hole_diameter > 0:
            raise ValueError("hole_diameter must be positive")


@dataclass(frozen=True)
class PassageResult:
    verdict: Verdict
    reason: str = ""
    flags: tuple[str, ...] = ()


@dataclass(frozen=True)
class BendBoundary:
    """Monotone non-increasing piecewise-linear map from diameter to the
    largest bend a tensioned tail lets through."""

    knots: tuple[tuple[float, float], ...] = DEFAULT_BEND_BOUNDARY

    def __post_init__(self):
        knots = tuple(sorted((float(d), float(a)) for d, a in self.knots))
        if not knots:
            raise ValueError("bend boundary needs at least one knot")
        for (d0, a0), (d1, a1) in zip(knots, knots[1:]):
            if d1 == d0:
                raise ValueError("duplicate diameter in bend boundary")
            if a1 > a0:
                raise ValueError("bend boundary must not increase with diameter")
        object.__setattr__(self, "knots", knots)

    def __call__(self, diameter: float) -> float:
        ds = [d for d, _ in self.knots]
        if diameter <= ds[0]:
            return self.knots[0][1]
        if diameter >= ds[-1]:
            return self.knots[-1][1]
        i = bisect.bisect_right(ds, diameter)
        (d0, a0), (d1, a1) = self.knots[i - 1], self.knots[i]
        return a0 + (a1 - a0) * (diameter - d0) / (d1 - d0)

    @classmethod
    def from_list(cls, raw: Sequence[Sequence[float]]) -> "BendBoundary":
        return cls(tuple((float(d), float(a)) for d, a in raw))


def min_hole_diameter(robot: RobotParams, payload: PayloadSpec) -> float:
    """Smallest aperture the payload fits through once wrapped in membrane."""
    d = effective_diameter(payload, "clearance")
    if d <= 0:
        raise ValueError("payload diameter must be positive")
    return d + 4.0 * robot.membrane_thickness * robot.robot_diameter / d


def hole_pass_check(robot: RobotParams, payload: PayloadSpec, hole: HoleSpec,
                    margin: float = HOLE_MARGIN, marginal_tolerance: float = HOLE_MARGINAL_TOLERANCE,
                    alignment_ratio: float = CYLINDER_ALIGNMENT_RATIO) -> PassageResult:
    """Pass when the bare clearance reaches ``margin``, marginal when the hole
    is at least the membrane-wrapped size (within ``marginal_tolerance``),
    fail otherwise.

    Short cylinders tend to settle on their side and jam, so they carry an
    ``orientation-risk`` flag.
    """
    d = effective_diameter(payload, "clearance")
    needed = min_hole_diameter(robot, payload)
    flags = ()
    if payload.shape is Shape.CYLINDER and not payload.length / payload.diameter > alignment_ratio:
        flags = ("orientation-risk",)

    clearance = hole.hole_diameter - d
    if clearance >= margin - _EPS and hole.hole_diameter >= needed - _EPS:
        return PassageResult(Verdict.PASS, flags=flags)
    if hole.hole_diameter >= needed - marginal_tolerance - _EPS and clearance > 0:
        return PassageResult(Verdict.MARGINAL, f"clearance {clearance * 1e3:.2f} mm, expect membrane wear", flags)
    return PassageResult(Verdict.FAIL, f"hole {hole.hole_diameter:.5g} m below required {needed:.5g} m", flags)


def bend_pass_check(robot: RobotParams, payload: PayloadSpec, bend: BendSpec,
                    boundary: BendBoundary | None = None) -> PassageResult:
    """Payload length plays no part; only the grasp diameter and tail tension do."""
    if bend.angle > MAX_TESTED_BEND + _EPS:
        return PassageResult(Verdict.FAIL, "untested: bend sharper than 135 deg")
    if not bend.tension_present:
        return PassageResult(Verdict.PASS)
    limit = (boundary or BendBoundary())(effective_diameter(payload, "grasp"))
    if bend.angle < limit or bend.angle == 0.0:
        return PassageResult(Verdict.PASS)
    return PassageResult(Verdict.FAIL, f"jams under tail tension beyond {math.degrees(limit):.0f} deg")
