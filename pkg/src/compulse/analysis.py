"""Fidelity sweeps along one error axis and infidelity-order fits."""

from dataclasses import dataclass, field
import math

import numpy as np

from .pulses import ErrorModel, PulseSequence, realize_sequence
from .rotor import fidelity
from .two_qubit import CouplingErrorModel, CouplingGate

__all__ = ["AXES", "SweepSpec", "SweepResult", "OrderFit", "propagator_fn", "sweep",
           "fit_order", "measure_order", "INFIDELITY_FLOOR", "INFIDELITY_CEIL"]

AXES = ("epsilon", "offres", "coupling")

# asymptotic window for slope fits
INFIDELITY_FLOOR = 1e-13
INFIDELITY_CEIL = 0.1
MIN_FIT_POINTS = 5


@dataclass(frozen=True)
class SweepSpec:
    """Grid over one error coordinate.

    ``spacing="linear"`` is a uniform grid on ``[start, stop]``;
    ``spacing="log"`` is geometric and needs ``0 < start``.
    """

    axis: str
    start: float
    stop: float
    points: int = 41
    spacing: str = "linear"

    def __post_init__(self):
        if self.axis not in AXES:
            raise ValueError(f"axis must be one of {AXES}, got {self.axis!r}")
        if not (math.isfinite(self.start) and math.isfinite(self.stop)) or not self.start < self.stop:
            raise ValueError(f"need finite start < stop, got {self.start}, {self.stop}")
        if int(self.points) != self.points or self.points < 2:
            raise ValueError(f"need at least 2 grid points, got {self.points}")
        if self.spacing not in ("linear", "log"):
            raise ValueError(f"spacing must be 'linear' or 'log', got {self.spacing!r}")
        if self.spacing == "log" and self.start <= 0:
            raise ValueError("log spacing needs a positive start")

    def grid(self):
        if self.spacing == "log":
            return np.geomspace(self.start, self.stop, int(self.points))
        return np.linspace(self.start, self.stop, int(self.points))


@dataclass(frozen=True)
class SweepResult:
    rows: tuple
    sequence_label: str = ""
    target_label: str = ""
    axis: str = "epsilon"

    @property
    def errors(self):
        return np.array([r[0] for r in self.rows])

    @property
    def fidelities(self):
        return np.array([r[1] for r in self.rows])


@dataclass(frozen=True)
class OrderFit:
    slope: float
    r_squared: float
    range: tuple
    points: int
    intercept: float = field(default=0.0, repr=False)


def propagator_fn(gate, axis):
    """Map an error value on ``axis`` to the realized propagator of ``gate``.

    ``gate`` is a :class:`PulseSequence` (axes ``epsilon``/``offres``) or a
    :class:`CouplingGate` (axis ``coupling``).
    """
    if isinstance(gate, PulseSequence):
        if axis == "epsilon":
            return lambda x: realize_sequence(gate, ErrorModel(epsilon=float(x)))
        if axis == "offres":
            return lambda x: realize_sequence(gate, ErrorModel(f=float(x)))
        raise ValueError("axis 'coupling' applies only to two-qubit gates")
    if isinstance(gate, CouplingGate):
        if axis == "coupling":
            return lambda x: gate.realize(CouplingErrorModel(float(x)))
        raise ValueError(f"two-qubit gates are swept over 'coupling' only, not {axis!r}")
    raise TypeError(f"cannot sweep object of type {type(gate).__name__}")


def sweep(gate, target, spec, target_label=""):
    """Fidelity of ``gate`` against ``target`` at every grid point of ``spec``.

    Rows come out sorted by error value, one per grid point.
    """
    fn = propagator_fn(gate, spec.axis)
    target = np.asarray(target, dtype=complex)
    probe = fn(0.0)
    if probe.shape != target.shape:
        raise ValueError(f"target shape {target.shape} does not match gate shape {probe.shape}")
    rows = tuple(sorted((float(x), fidelity(fn(x), target)) for x in spec.grid()))
    return SweepResult(rows, getattr(gate, "label", ""), target_label, spec.axis)


def fit_order(result, fit_range):
    """Least-squares slope of ``log10(1 - F)`` against ``log10|error|``.

    Only rows with ``fit_range[0] <= |error| <= fit_range[1]`` and infidelity
    in ``[1e-13, 0.1]`` are used.

    Raises
    ------
    ValueError
        If fewer than five rows survive the filters.
    """
    lo, hi = sorted(abs(float(x)) for x in fit_range)
    x, y = [], []
    for err, fid in result.rows:
        a = abs(err)
        infid = 1.0 - fid
        if a == 0 or not lo <= a <= hi:
            continue
        if not INFIDELITY_FLOOR <= infid <= INFIDELITY_CEIL:
            continue
        x.append(math.log10(a))
        y.append(math.log10(infid))
    if len(x) < MIN_FIT_POINTS:
        raise ValueError(
            f"only {len(x)} usable points in fit range [{lo:g}, {hi:g}] "
            f"(need {MIN_FIT_POINTS} with infidelity in [{INFIDELITY_FLOOR:g}, {INFIDELITY_CEIL:g}]); "
            "widen the range or add grid points")
    order = np.lexsort((y, x))
    x = np.asarray(x)[order]
    y = np.asarray(y)[order]
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 - float(np.sum(resid ** 2)) / ss_tot if ss_tot > 0 else 1.0
    return OrderFit(float(slope), max(0.0, r2), (lo, hi), len(x), float(intercept))


def measure_order(gate, target, axis, fit_range, points=25):
    """Resample geometrically over ``fit_range`` and fit the infidelity order."""
    lo, hi = sorted(abs(float(x)) for x in fit_range)
    res = sweep(gate, target, SweepSpec(axis, lo, hi, points, "log"))
    return fit_order(res, (lo, hi))
