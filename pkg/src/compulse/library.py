"""Generators for named composite pulses.

Every generator returns a :class:`~compulse.pulses.PulseSequence` whose
zero-error propagator equals the target rotation up to global phase.
Phases are given relative to an arbitrary base phase ``phi``.
"""

from dataclasses import dataclass
import enum
import math

from .pulses import Pulse, PulseSequence
from .rotor import _check_finite

__all__ = [
    "CorpseParams", "Bb1Placement", "naive", "corpse", "corpse_angles",
    "tycko90", "bb1_phase", "w1", "bb1", "composite_z",
]

PI = math.pi


@dataclass(frozen=True)
class CorpseParams:
    """Winding numbers of the three CORPSE elements."""

    n1: int = 1
    n2: int = 1
    n3: int = 0

    def __post_init__(self):
        for n in (self.n1, self.n2, self.n3):
            if int(n) != n or n < 0:
                raise ValueError(f"CORPSE winding numbers must be non-negative integers, got {n!r}")


class Bb1Placement(enum.Enum):
    BEFORE = "before"
    AFTER = "after"
    MIDDLE = "middle"


def _fmt(x):
    return f"{math.degrees(x):g}"


def naive(theta, phi=0.0):
    """The uncorrected single pulse."""
    return PulseSequence((Pulse(theta, phi),), f"naive({_fmt(theta)},{_fmt(phi)})")


def corpse_angles(theta, params=CorpseParams()):
    """Flip angles ``(theta1, theta2, theta3)`` in radians for a CORPSE ``theta`` pulse."""
    _check_finite(theta)
    k = math.asin(math.sin(theta / 2) / 2)
    return (
        2 * PI * params.n1 + theta / 2 - k,
        2 * PI * params.n2 - 2 * k,
        2 * PI * params.n3 + theta / 2 - k,
    )


def corpse(theta, phi=0.0, params=CorpseParams()):
    """CORPSE replacement for a ``theta`` pulse of phase ``phi``.

    Three pulses along ``+phi, -phi, +phi`` (the last two differ by pi in
    phase). Corrects off-resonance error to first order.

    Raises
    ------
    ValueError
        If ``params`` produce a negative flip angle for this ``theta``.
    """
    angles = corpse_angles(theta, params)
    if min(angles) < 0:
        raise ValueError(
            f"CORPSE parameters {params} give a negative flip angle for theta={_fmt(theta)} deg")
    t1, t2, t3 = angles
    label = f"corpse({_fmt(theta)},{_fmt(phi)},n={params.n1},{params.n2},{params.n3})"
    return PulseSequence((Pulse(t1, phi), Pulse(t2, phi + PI), Pulse(t3, phi)), label)


def tycko90(phi=0.0):
    """Tycko's 90 degree pulse, ``385 320(-) 25`` with the literal published angles."""
    d = math.radians
    return PulseSequence(
        (Pulse(d(385), phi), Pulse(d(320), phi + PI), Pulse(d(25), phi)),
        f"tycko90({_fmt(phi)})",
    )


def bb1_phase(theta, sign=1):
    """W1 phase ``+-arccos(-theta / 4 pi)``; ``|theta|`` must not exceed ``4 pi``."""
    _check_finite(theta)
    x = -theta / (4 * PI)
    if abs(x) > 1:
        raise ValueError(f"BB1 needs |theta| <= 720 deg, got {_fmt(theta)} deg")
    return math.copysign(1.0, sign) * math.acos(x)


def w1(theta, phi=0.0, sign=1):
    """The W1 correction block ``180_(phi1) 360_(3 phi1) 180_(phi1)``, shifted by ``phi``."""
    p1 = bb1_phase(theta, sign)
    return (Pulse(PI, phi + p1), Pulse(2 * PI, phi + 3 * p1), Pulse(PI, phi + p1))


def bb1(theta, phi=0.0, placement=Bb1Placement.MIDDLE, sign=1):
    """BB1 pulse: the naive ``theta`` pulse combined with a W1 block.

    ``placement`` puts W1 before, after, or symmetrically in the middle of
    the naive pulse. ``sign`` selects the branch of the W1 phase.
    """
    placement = Bb1Placement(placement)
    corr = w1(theta, phi, sign)
    if placement is Bb1Placement.BEFORE:
        pulses = corr + (Pulse(theta, phi),)
    elif placement is Bb1Placement.AFTER:
        pulses = (Pulse(theta, phi),) + corr
    else:
        half = Pulse(theta / 2, phi)
        pulses = (half,) + corr + (half,)
    name = {"before": "bb1-before", "after": "bb1-after", "middle": "bb1-mid"}[placement.value]
    return PulseSequence(pulses, f"{name}({_fmt(theta)},{_fmt(phi)})")


def composite_z(theta):
    """``90_y theta_x 90_-y``, a rotation by ``theta`` about +z.

    Under the ``exp(-i theta G)`` convention the product equals
    ``exp(-i theta Iz)`` exactly.
    """
    _check_finite(theta)
    return PulseSequence(
        (Pulse(PI / 2, PI / 2), Pulse(theta, 0.0), Pulse(PI / 2, -PI / 2)),
        f"composite-z({_fmt(theta)})",
    )
