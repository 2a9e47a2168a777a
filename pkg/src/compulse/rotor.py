"""Dense 2x2 / 4x4 propagator algebra.

Propagators are plain complex ``numpy`` arrays. Every generator used here
follows the ``exp(-i * angle * G)`` sign convention, with ``G`` a
product operator (``Ix = sigma_x / 2`` and so on, hbar dropped).
"""

import numpy as np

__all__ = [
    "E2", "E4", "SIGMA_X", "SIGMA_Y", "SIGMA_Z",
    "IX", "IY", "IZ", "SX", "SY", "SZ", "IZ_SZ2", "IZ_SY2",
    "as_unitary", "is_unitary", "rot", "zrot", "expi_half", "compose",
    "fidelity", "phase_distance",
]

E2 = np.eye(2, dtype=complex)
E4 = np.eye(4, dtype=complex)

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)

# one-spin product operators
IX = SIGMA_X / 2
IY = SIGMA_Y / 2
IZ = SIGMA_Z / 2

# two-spin product operators, spin I is the first tensor factor
SX = np.kron(E2, IX)
SY = np.kron(E2, IY)
SZ = np.kron(E2, IZ)
IZ_SZ2 = 2 * np.kron(IZ, IZ)
IZ_SY2 = 2 * np.kron(IZ, IY)

for _m in (E2, E4, SIGMA_X, SIGMA_Y, SIGMA_Z, IX, IY, IZ, SX, SY, SZ, IZ_SZ2, IZ_SY2):
    _m.setflags(write=False)
del _m

UNITARY_ATOL = 1e-12


def _check_finite(*values):
    for v in values:
        if not np.isfinite(v):
            raise ValueError(f"expected a finite real number, got {v!r}")


def as_unitary(m, atol=UNITARY_ATOL):
    """Validate ``m`` as a 2x2 or 4x4 unitary and return it as a complex array.

    Raises
    ------
    ValueError
        If ``m`` is not square of dimension 2 or 4, or if ``m m^dagger``
        deviates from the identity by more than ``atol`` in any entry.
    """
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] not in (2, 4):
        raise ValueError(f"propagators must be 2x2 or 4x4, got shape {m.shape}")
    if not is_unitary(m, atol):
        raise ValueError("matrix is not unitary within tolerance")
    return m


def is_unitary(m, atol=UNITARY_ATOL):
    m = np.asarray(m)
    return bool(np.max(np.abs(m @ m.conj().T - np.eye(len(m)))) <= atol)


def _su2(angle, nx, ny, nz):
    # cos(a/2) E - i sin(a/2) (n . sigma), n a unit vector
    c = np.cos(angle / 2)
    s = np.sin(angle / 2)
    return np.array(
        [[c - 1j * s * nz, -1j * s * nx - s * ny],
         [-1j * s * nx + s * ny, c + 1j * s * nz]],
        dtype=complex,
    )


def rot(theta, phi):
    """Resonant pulse propagator ``exp[-i theta (Ix cos(phi) + Iy sin(phi))]``.

    Parameters
    ----------
    theta : float
        Flip angle in radians. Negative values rotate about the inverted axis.
    phi : float
        Phase of the rotation axis in the xy-plane, radians.
    """
    _check_finite(theta, phi)
    return _su2(theta, np.cos(phi), np.sin(phi), 0.0)


def zrot(theta):
    """``exp(-i theta Iz)``."""
    _check_finite(theta)
    return _su2(theta, 0.0, 0.0, 1.0)


def expi_half(theta, generator):
    """``exp(-i theta G)`` for any generator with ``G @ G == E / 4``.

    All single-spin product operators, the Ising term ``2IzSz`` and its
    conjugates satisfy this, so the exponential has the closed form
    ``cos(theta/2) E - 2i sin(theta/2) G``.
    """
    _check_finite(theta)
    g = np.asarray(generator, dtype=complex)
    return np.cos(theta / 2) * np.eye(len(g)) - 2j * np.sin(theta / 2) * g


def compose(seq):
    """Compose propagators listed in time order (first element acts first).

    Returns ``U_n @ ... @ U_2 @ U_1``.
    """
    seq = list(seq)
    if not seq:
        raise ValueError("cannot compose an empty sequence")
    dim = np.shape(seq[0])
    out = np.asarray(seq[0], dtype=complex)
    for u in seq[1:]:
        if np.shape(u) != dim:
            raise ValueError(f"dimension mismatch: {np.shape(u)} vs {dim}")
        out = np.asarray(u, dtype=complex) @ out
    return out


def _pair(v, u):
    v = np.asarray(v, dtype=complex)
    u = np.asarray(u, dtype=complex)
    if v.shape != u.shape or v.ndim != 2:
        raise ValueError(f"dimension mismatch: {v.shape} vs {u.shape}")
    return v, u


def fidelity(v, u):
    """Propagator fidelity ``|Tr(V U^dagger)| / dim`` of achieved ``v`` to target ``u``.

    Insensitive to the global phase of either argument. Rounding excess
    above one is clipped.
    """
    v, u = _pair(v, u)
    f = abs(np.trace(v @ u.conj().T)) / len(u)
    return float(min(f, 1.0))


def phase_distance(v, u):
    """Largest entrywise gap between ``v`` and ``u`` after aligning global phase.

    The phase is taken from the largest-magnitude entry of ``V U^dagger``;
    the result is zero exactly when ``v`` equals ``u`` up to a global phase.
    """
    v, u = _pair(v, u)
    m = v @ u.conj().T
    k = np.argmax(np.abs(m))
    z = m.flat[k]
    phase = z / abs(z) if abs(z) > 0 else 1.0
    return float(np.max(np.abs(v / phase - u)))
