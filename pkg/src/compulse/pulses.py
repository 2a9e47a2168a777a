"""Pulses, pulse sequences and the systematic error model.

A sequence is realized under one :class:`ErrorModel` shared by every pulse:
the errors are systematic, not random.

Combined errors
---------------
Only the single-error cases are standard. When both are nonzero this
module uses the generator ``theta * [(1+eps)(cos phi, sin phi, 0) + (0, 0, f)]``:
``eps`` rescales the transverse (RF) field only, and the resonance offset
``f`` is measured in units of the *nominal* nutation frequency, so that the
pulse duration is the one set by the nominal calibration. This is a model
choice.
"""

from dataclasses import dataclass
from pathlib import Path
import math

import numpy as np

from .rotor import _check_finite, _su2, compose

__all__ = [
    "Pulse", "PulseSequence", "ErrorModel", "realize", "realize_sequence",
    "SequenceFileError", "parse_sequence", "read_sequence", "format_sequence",
    "write_sequence",
]


@dataclass(frozen=True)
class Pulse:
    """A hard pulse: nominal flip angle ``theta`` and phase ``phi`` (radians)."""

    theta: float
    phi: float = 0.0

    def __post_init__(self):
        _check_finite(self.theta, self.phi)


@dataclass(frozen=True)
class PulseSequence:
    """Pulses in time order, the first element is applied first."""

    pulses: tuple
    label: str = ""

    def __post_init__(self):
        pulses = tuple(p if isinstance(p, Pulse) else Pulse(*p) for p in self.pulses)
        if not pulses:
            raise ValueError("a pulse sequence needs at least one pulse")
        object.__setattr__(self, "pulses", pulses)

    def __len__(self):
        return len(self.pulses)

    def __iter__(self):
        return iter(self.pulses)

    @property
    def total_angle(self):
        return sum(abs(p.theta) for p in self.pulses)


@dataclass(frozen=True)
class ErrorModel:
    """Systematic errors: fractional pulse-length error and off-resonance fraction."""

    epsilon: float = 0.0
    f: float = 0.0

    def __post_init__(self):
        _check_finite(self.epsilon, self.f)


NO_ERROR = ErrorModel()


def realize(p, e=NO_ERROR):
    """Actual propagator of pulse ``p`` under error ``e``.

    Rotation by ``theta * sqrt((1+eps)**2 + f**2)`` about the unit axis
    ``((1+eps) cos phi, (1+eps) sin phi, f)`` normalized. At zero error this
    is bit-identical to :func:`compulse.rotor.rot`.
    """
    scale = 1.0 + e.epsilon
    r = math.hypot(scale, e.f)
    if r == 0.0:
        # the field vanishes entirely
        return np.eye(2, dtype=complex)
    nx = scale * np.cos(p.phi) / r
    ny = scale * np.sin(p.phi) / r
    return _su2(p.theta * r, nx, ny, e.f / r)


def realize_sequence(s, e=NO_ERROR):
    """Propagator of the whole sequence, same error applied to every pulse."""
    return compose(realize(p, e) for p in s)


class SequenceFileError(ValueError):
    def __init__(self, message, lineno=None, source="<string>"):
        self.lineno = lineno
        self.source = source
        where = f"{source}:{lineno}: " if lineno is not None else f"{source}: "
        super().__init__(where + message)


def parse_sequence(text, label="", source="<string>"):
    """Parse the plain-text sequence format.

    One pulse per line as ``theta_deg phase_deg``; lines starting with ``#``
    are comments and blank lines are skipped. Angles are degrees.
    """
    pulses = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if len(fields) != 2:
            raise SequenceFileError(
                f"expected 2 fields 'theta_deg phase_deg', got {len(fields)}", lineno, source)
        try:
            theta, phase = (float(x) for x in fields)
        except ValueError:
            raise SequenceFileError(f"not a decimal number in {line!r}", lineno, source) from None
        if not (math.isfinite(theta) and math.isfinite(phase)):
            raise SequenceFileError(f"non-finite angle in {line!r}", lineno, source)
        pulses.append(Pulse(math.radians(theta), math.radians(phase)))
    if not pulses:
        raise SequenceFileError("no pulses found", None, source)
    return PulseSequence(tuple(pulses), label)


def read_sequence(path):
    path = Path(path)
    return parse_sequence(path.read_text(), label=path.stem, source=str(path))


def _deg(x, wrap=False):
    d = round(math.degrees(x), 6)
    if wrap:
        d = round(d % 360.0, 6)
        if d == 360.0:
            d = 0.0
    return f"{d + 0.0:.6f}"  # + 0.0 folds -0.0


def format_sequence(s):
    """Render ``s`` in the sequence file format; phases are wrapped to [0, 360)."""
    return "".join(f"{_deg(p.theta)} {_deg(p.phi, wrap=True)}\n" for p in s)


def write_sequence(s, path):
    Path(path).write_text(format_sequence(s))
