"""Composite-pulse quantum gates and their robustness to systematic errors."""

from .rotor import compose, fidelity, phase_distance, rot, zrot
from .pulses import ErrorModel, Pulse, PulseSequence, realize, realize_sequence
from .library import Bb1Placement, CorpseParams, bb1, composite_z, corpse, naive, tycko90, w1
from .two_qubit import (
    CouplingErrorModel, CouplingGate, TwoSpinSystem, bb1_ising, controlled_z,
    coupling_pulse, free_evolution, hamiltonian, spin_echo_coupling,
)
from .analysis import OrderFit, SweepResult, SweepSpec, fit_order, measure_order, sweep

__version__ = "0.1.0"
