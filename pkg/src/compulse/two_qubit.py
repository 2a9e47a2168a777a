"""Two-spin weak-coupling evolution and coupling-robust Ising gates.

The model Hamiltonian (angular frequency units) is::

    H = 2 pi nu_I Iz + 2 pi nu_S Sz + pi J 2IzSz

valid in the weak-coupling regime ``|J| << |nu_I - nu_S|``, which is
assumed and not checked.

Robust Ising gates rest on an su(2) isomorphism. The triple
``(2IzSz, -2IzSy, Sx)`` has the same commutation table as ``(Ix, Iy, Iz)``,
so a "coupling pulse" of angle ``theta`` and phase ``phi`` is zz evolution
conjugated by an ``x`` rotation of spin S, just as a phase-shifted RF pulse
is an ``x`` pulse conjugated by a ``z`` rotation. Any single-spin composite
pulse then carries over with the coupling strength error playing the role
of the pulse-length error. Spin-S rotations used for phase setting and
refocusing are taken as error-free.
"""

from dataclasses import dataclass
import math

import numpy as np

from .library import bb1_phase
from .rotor import (
    E4, IX, IZ, IZ_SZ2, SX, SZ, _check_finite, compose, expi_half, rot,
)

__all__ = [
    "TwoSpinSystem", "CouplingErrorModel", "CouplingGate", "hamiltonian",
    "free_evolution", "controlled_z", "spin_echo_coupling", "analog_pulse",
    "bb1_analog", "coupling_pulse", "naive_ising", "bb1_ising", "ising_target",
    "single_spin_bb1",
]

IZ4 = np.kron(IZ, np.eye(2))


@dataclass(frozen=True)
class TwoSpinSystem:
    """Offsets ``nu_I``, ``nu_S`` and scalar coupling ``J``, all in Hz."""

    nu_I: float = 0.0
    nu_S: float = 0.0
    J: float = 0.0

    def __post_init__(self):
        _check_finite(self.nu_I, self.nu_S, self.J)


@dataclass(frozen=True)
class CouplingErrorModel:
    """Fractional error ``epsilon_J`` in the scalar coupling."""

    epsilon_J: float = 0.0

    def __post_init__(self):
        _check_finite(self.epsilon_J)


def hamiltonian(sys):
    """Diagonal 4x4 Hamiltonian in rad/s for the basis ``|00>, |01>, |10>, |11>``."""
    return (2 * math.pi * sys.nu_I * IZ4 + 2 * math.pi * sys.nu_S * SZ
            + math.pi * sys.J * IZ_SZ2)


def free_evolution(sys, t):
    """``exp(-i H t)``, evaluated entrywise since ``H`` is diagonal."""
    _check_finite(t)
    if t < 0:
        raise ValueError(f"evolution time must be non-negative, got {t}")
    return np.diag(np.exp(-1j * np.diag(hamiltonian(sys)).real * t))


def controlled_z():
    """Controlled-Z built from its four commuting product-operator factors.

    ``exp[-i pi/2 (E/2 - Iz - Sz + 2IzSz)]``; the E/2 factor is kept, so the
    result is ``diag(1, 1, 1, -1)`` with no residual global phase.
    """
    factors = [
        np.exp(-1j * math.pi / 4) * E4,
        np.diag(np.exp(1j * math.pi / 2 * np.diag(IZ4))),
        np.diag(np.exp(1j * math.pi / 2 * np.diag(SZ))),
        expi_half(math.pi / 2, IZ_SZ2),
    ]
    cz = compose(factors)
    expected = np.diag([1, 1, 1, -1]).astype(complex)
    residual = np.max(np.abs(cz - expected))
    assert residual <= 1e-12, f"controlled-Z algebra broken, residual {residual:g}"
    return cz


def _both_pi_x():
    r = rot(math.pi, 0.0)
    return np.kron(r, r)


def spin_echo_coupling(sys, t):
    """Refocused coupling evolution: ``t/2``, pi_x on both spins, ``t/2``, pi_x on both.

    Zeeman terms cancel, leaving ``exp(-i pi J t 2IzSz)`` for any offsets.
    """
    if t < 0:
        raise ValueError(f"evolution time must be non-negative, got {t}")
    half = free_evolution(sys, t / 2)
    flip = _both_pi_x()
    return compose([half, flip, half, flip])


def analog_pulse(theta, phase, scale, base, phase_gen):
    """``exp(-i phase P) exp(-i theta*scale B) exp(+i phase P)``.

    With ``B = Ix`` and ``P = Iz`` this is an RF pulse with a pulse-length
    error; with ``B = 2IzSz`` and ``P = Sx`` it is a coupling pulse.
    """
    q = expi_half(phase, phase_gen)
    return q @ expi_half(theta * scale, base) @ q.conj().T


def bb1_analog(theta, scale, base, phase_gen, sign=1):
    """BB1 with W1 placed after the naive element, in terms of an abstract su(2) pair."""
    p1 = bb1_phase(theta, sign)
    return compose([
        analog_pulse(theta, 0.0, scale, base, phase_gen),
        analog_pulse(math.pi, p1, scale, base, phase_gen),
        analog_pulse(2 * math.pi, 3 * p1, scale, base, phase_gen),
        analog_pulse(math.pi, p1, scale, base, phase_gen),
    ])


def coupling_pulse(theta, phase=0.0, e=CouplingErrorModel()):
    """Coupling evolution through angle ``theta`` (``theta = pi J t``), phase-shifted by ``phase``."""
    _check_finite(theta, phase)
    return analog_pulse(theta, phase, 1.0 + e.epsilon_J, IZ_SZ2, SX)


def naive_ising(theta, e=CouplingErrorModel()):
    return coupling_pulse(theta, 0.0, e)


def bb1_ising(theta, e=CouplingErrorModel(), sign=1):
    """Ising gate ``exp(-i theta 2IzSz)`` made robust to coupling strength errors."""
    _check_finite(theta)
    return bb1_analog(theta, 1.0 + e.epsilon_J, IZ_SZ2, SX, sign)


def ising_target(theta):
    return expi_half(theta, IZ_SZ2)


@dataclass(frozen=True)
class CouplingGate:
    """Handle for a two-qubit gate swept over the coupling error.

    ``kind`` is ``"naive"`` or ``"bb1"``.
    """

    kind: str
    theta: float
    label: str = ""

    def __post_init__(self):
        if self.kind not in ("naive", "bb1"):
            raise ValueError(f"unknown coupling gate kind {self.kind!r}")
        if self.kind == "bb1":
            bb1_phase(self.theta)
        if not self.label:
            name = "bb1-ising" if self.kind == "bb1" else "ising"
            object.__setattr__(self, "label", f"{name}({math.degrees(self.theta):g})")

    def realize(self, e=CouplingErrorModel()):
        if self.kind == "bb1":
            return bb1_ising(self.theta, e)
        return naive_ising(self.theta, e)

    @property
    def target(self):
        return ising_target(self.theta)


def single_spin_bb1(theta, epsilon):
    """The same BB1 construction evaluated on one spin with ``(Ix, Iz)``."""
    return bb1_analog(theta, 1.0 + epsilon, IX, IZ)
