import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.linalg import expm

from compulse.library import Bb1Placement, bb1, composite_z, naive
from compulse.pulses import (
    ErrorModel, Pulse, PulseSequence, SequenceFileError, format_sequence, parse_sequence,
    read_sequence, realize, realize_sequence, write_sequence,
)
from compulse.rotor import IX, IY, IZ, SIGMA_X, SIGMA_Z, fidelity, phase_distance, rot, zrot

small = st.floats(-0.5, 0.5)
angle = st.floats(-2 * math.pi, 2 * math.pi)


def expm_oracle(theta, phi, eps, f):
    # scaling and squaring via scipy
    g = theta * ((1 + eps) * (math.cos(phi) * IX + math.sin(phi) * IY) + f * IZ)
    return expm(-1j * g)


def test_pulse_and_sequence_validation():
    with pytest.raises(ValueError):
        Pulse(math.nan, 0)
    with pytest.raises(ValueError):
        PulseSequence(())
    with pytest.raises(ValueError):
        ErrorModel(math.inf, 0)
    s = PulseSequence([(1.0, 2.0)])
    assert s.pulses == (Pulse(1.0, 2.0),)


def test_realize_pulse_length_error():
    eps = 0.07
    u = realize(Pulse(math.pi, 0), ErrorModel(eps, 0))
    assert np.allclose(u, expm(-1j * math.pi * (1 + eps) * IX), atol=1e-14)


@given(angle, angle)
def test_realize_error_free_is_rot(theta, phi):
    assert np.array_equal(realize(Pulse(theta, phi), ErrorModel()), rot(theta, phi))


def test_realize_pure_offresonance():
    u = realize(Pulse(math.pi, 0), ErrorModel(0, 1.0))
    n = np.array([1, 0, 1]) / math.sqrt(2)
    a = math.pi * math.sqrt(2)
    closed = math.cos(a / 2) * np.eye(2) - 2j * math.sin(a / 2) * (n[0] * IX + n[2] * IZ)
    assert np.allclose(u, closed, atol=1e-14)
    assert np.allclose(u, expm_oracle(math.pi, 0, 0, 1.0), atol=1e-13)


@given(angle, angle, small, small)
def test_realize_matches_expm(theta, phi, eps, f):
    assert np.max(np.abs(realize(Pulse(theta, phi), ErrorModel(eps, f))
                         - expm_oracle(theta, phi, eps, f))) <= 1e-12


@given(angle, angle, small)
def test_pulse_length_effective_angle(theta, phi, eps):
    u = realize(Pulse(theta, phi), ErrorModel(eps, 0))
    assert fidelity(u, rot(theta * (1 + eps), phi)) == pytest.approx(1.0, abs=1e-12)


@given(angle, angle, small, small)
def test_offresonance_mirror_symmetry(theta, phi, eps, f):
    # sigma_z conjugation reverses the full axis once f is negated: adjoint
    lhs = SIGMA_Z @ realize(Pulse(theta, phi), ErrorModel(eps, -f)) @ SIGMA_Z
    assert phase_distance(lhs, realize(Pulse(theta, phi), ErrorModel(eps, f)).conj().T) <= 1e-10
    # a pi rotation about x maps (nx, ny, -f) to (nx, -ny, f)
    lhs = SIGMA_X @ realize(Pulse(theta, phi), ErrorModel(eps, -f)) @ SIGMA_X
    assert phase_distance(lhs, realize(Pulse(theta, -phi), ErrorModel(eps, f))) <= 1e-10


def test_offresonance_sweep_even_for_x_pulses():
    p = Pulse(math.pi, 0.0)
    for f in (0.01, 0.1, 0.3):
        a = fidelity(realize(p, ErrorModel(0, f)), rot(math.pi, 0))
        b = fidelity(realize(p, ErrorModel(0, -f)), rot(math.pi, 0))
        assert a == pytest.approx(b, abs=1e-12)


def test_field_vanishes():
    assert np.allclose(realize(Pulse(1.0, 0.0), ErrorModel(-1.0, 0.0)), np.eye(2))


def test_realize_sequence_examples():
    assert np.allclose(realize_sequence(naive(0.9, 0)), rot(0.9, 0))
    assert phase_distance(realize_sequence(composite_z(math.pi / 2)), zrot(math.pi / 2)) <= 1e-12
    e = ErrorModel(0.1, 0)
    f_bb1 = fidelity(realize_sequence(bb1(math.pi, 0, Bb1Placement.MIDDLE), e), rot(math.pi, 0))
    f_naive = fidelity(realize(Pulse(math.pi * 1.1, 0)), rot(math.pi, 0))
    assert f_bb1 > f_naive


def test_parse_sequence():
    text = "# header\n\n  90 0\n180.5\t-90\n# trailing\n"
    s = parse_sequence(text, label="x")
    assert s.label == "x"
    assert [(round(math.degrees(p.theta), 9), round(math.degrees(p.phi), 9)) for p in s] == [
        (90.0, 0.0), (180.5, -90.0)]


@pytest.mark.parametrize("text,lineno", [
    ("90 0\n90\n", 2),
    ("# c\n90 x\n", 2),
    ("90 0 1\n", 1),
    ("nan 0\n", 1),
])
def test_parse_errors_report_line(text, lineno):
    with pytest.raises(SequenceFileError) as info:
        parse_sequence(text, source="f.seq")
    assert info.value.lineno == lineno
    assert f"f.seq:{lineno}:" in str(info.value)


def test_parse_empty():
    with pytest.raises(SequenceFileError):
        parse_sequence("# nothing\n")


def test_format_wraps_phase():
    s = PulseSequence([Pulse(math.pi / 2, -math.pi / 2), Pulse(0.0, 2 * math.pi)])
    assert format_sequence(s) == "90.000000 270.000000\n0.000000 0.000000\n"


def test_file_round_trip(tmp_path):
    s = bb1(1.0, 0.25, Bb1Placement.BEFORE)
    path = tmp_path / "b.seq"
    write_sequence(s, path)
    back = read_sequence(path)
    assert back.label == "b"
    e = ErrorModel(0.05, 0.02)
    assert fidelity(realize_sequence(back, e), realize_sequence(s, e)) == pytest.approx(1, abs=1e-10)
