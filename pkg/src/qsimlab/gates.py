"""Unitary gates and their action on register states.

Rotations follow the plus-sign convention

    U(theta) = cos(theta/2) I + i sin(theta/2) (n . sigma)

for a unit axis ``n``, i.e. ``exp(+i theta n.sigma / 2)``.  A rotation by
``2*pi`` about any axis is ``-I``, and the Hadamard exposed here is the
half-turn about ``(x+z)/sqrt(2)``, which equals ``i`` times the textbook
matrix; the phase is global and invisible to any measurement.

Gate application walks paired amplitude strides in place and never builds
the ``2**n`` by ``2**n`` matrix of the embedded operator.
"""

from __future__ import annotations

from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .statevec import StateVector, random_state

UNITARY_TOL = 1e-10
HERMITIAN_TOL = 1e-12

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
IDENTITY_2 = np.eye(2, dtype=complex)

_PAULI = {"I": IDENTITY_2, "X": SIGMA_X, "Y": SIGMA_Y, "Z": SIGMA_Z}


def pauli(which: str) -> np.ndarray:
    """One of the matrices I, X, Y, Z by name."""
    try:
        return _PAULI[which.upper()].copy()
    except KeyError:
        raise ValueError(f"unknown Pauli label {which!r}") from None


def unit_axis(nx: float, ny: float, nz: float) -> np.ndarray:
    """Normalize a direction vector; rejects vectors too close to zero."""
    v = np.array([nx, ny, nz], dtype=float)
    n = np.linalg.norm(v)
    if n < 1e-12:
        raise ValueError("rotation axis must be non-zero")
    return v / n


def as_unitary(m, tol: float = UNITARY_TOL) -> np.ndarray:
    """Validate that ``m`` is unitary and return it as a complex array."""
    u = np.asarray(m, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {u.shape}")
    defect = np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0])))
    if defect > tol:
        raise ValueError(f"matrix is not unitary (defect {defect:.3e} > {tol:g})")
    return u


def as_observable(m, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Validate Hermiticity and return ``m`` as a complex array."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    defect = np.max(np.abs(a - a.conj().T))
    if defect > tol:
        raise ValueError(f"matrix is not Hermitian (defect {defect:.3e} > {tol:g})")
    return a


def rotation_gate(axis: Sequence[float], theta: float) -> np.ndarray:
    """Rotation by ``theta`` about ``axis`` on the Bloch sphere.

    >>> np.allclose(rotation_gate((0, 0, 1), np.pi), 1j * SIGMA_Z)
    True
    """
    n = unit_axis(*axis)
    n_dot_sigma = n[0] * SIGMA_X + n[1] * SIGMA_Y + n[2] * SIGMA_Z
    return np.cos(theta / 2.0) * IDENTITY_2 + 1j * np.sin(theta / 2.0) * n_dot_sigma


def hadamard() -> np.ndarray:
    """Half-turn about (x+z)/sqrt(2); equals i times the textbook Hadamard."""
    s = 1.0 / np.sqrt(2.0)
    return rotation_gate((s, 0.0, s), np.pi)


def evolve(h, t: float, hbar: float = 1.0) -> np.ndarray:
    """Propagator ``exp(-i h t / hbar)`` of a Hermitian generator.

    Built from the eigendecomposition of ``h`` so the result is unitary
    to machine precision for any ``t``.
    """
    if hbar <= 0:
        raise ValueError("hbar must be positive")
    hm = as_observable(h)
    w, v = np.linalg.eigh(hm)
    phases = np.exp(-1j * w * t / hbar)
    return (v * phases) @ v.conj().T


def compose(u, v) -> np.ndarray:
    """Matrix product ``u @ v`` (apply ``v`` first)."""
    a = np.asarray(u, dtype=complex)
    b = np.asarray(v, dtype=complex)
    if a.shape != b.shape or a.ndim != 2:
        raise ValueError(f"cannot compose shapes {a.shape} and {b.shape}")
    return a @ b


def _check_single_gate(gate) -> np.ndarray:
    g = np.asarray(gate, dtype=complex)
    if g.shape != (2, 2):
        raise ValueError(f"expected a 2x2 gate, got shape {g.shape}")
    return g


def apply_single(state: StateVector, gate, target: int) -> StateVector:
    """Apply a one-qubit gate to ``target``, updating ``state`` in place.

    Amplitude pairs differing only in the target bit are combined with a
    stride of ``2**(n - 1 - target)``; the update is O(2**n) time and O(1)
    extra storage per stride block.
    """
    g = _check_single_gate(gate)
    n = state.n_qubits
    if not 0 <= target < n:
        raise ValueError(f"target {target} out of range for {n} qubits")
    view = state.amplitudes.reshape((1 << target, 2, -1))
    lo = view[:, 0, :].copy()
    hi = view[:, 1, :]
    view[:, 0, :] = g[0, 0] * lo + g[0, 1] * hi
    view[:, 1, :] = g[1, 0] * lo + g[1, 1] * hi
    return state


def apply_controlled(state: StateVector, gate, control: int, target: int) -> StateVector:
    """Apply ``gate`` to ``target`` on the control=1 subspace, in place.

    Only the two of every four amplitudes whose control bit is set are
    touched.
    """
    g = _check_single_gate(gate)
    n = state.n_qubits
    for name, q in (("control", control), ("target", target)):
        if not 0 <= q < n:
            raise ValueError(f"{name} {q} out of range for {n} qubits")
    if control == target:
        raise ValueError("control and target must differ")
    grid = state.amplitudes.reshape([2] * n)
    sel: list[object] = [slice(None)] * n
    sel[control] = 1
    sub = grid[tuple(sel)]
    axis = target - (1 if target > control else 0)
    sub = np.moveaxis(sub, axis, 0)
    lo = sub[0].copy()
    hi = sub[1]
    sub[0] = g[0, 0] * lo + g[0, 1] * hi
    sub[1] = g[1, 0] * lo + g[1, 1] * hi
    return state


class GateApproxError(NamedTuple):
    """Probe-based error metric plus its spectral-norm ceiling."""

    probe_max: float
    spectral_sq: float


def default_probes(dim: int, n_random: int = 64, seed: int = 20260822) -> list[np.ndarray]:
    """Basis states plus ``n_random`` seeded Haar-random states."""
    n_qubits = dim.bit_length() - 1
    if 1 << n_qubits != dim:
        raise ValueError(f"probe dimension {dim} is not a power of two")
    probes = [np.eye(dim, dtype=complex)[i] for i in range(dim)]
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))
    probes.extend(random_state(n_qubits, rng).amplitudes for _ in range(n_random))
    return probes


def approximation_error(u, v, probes: Iterable | None = None) -> GateApproxError:
    """How far ``v`` falls short of ``u`` over a family of probe states.

    ``probe_max`` is the worst ``|<psi|(u - v)|psi>|**2`` over the probes;
    ``spectral_sq`` is the squared largest singular value of ``u - v``,
    an upper bound on the probe metric for any state whatsoever.
    """
    a = np.asarray(u, dtype=complex)
    b = np.asarray(v, dtype=complex)
    if a.shape != b.shape or a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"cannot compare shapes {a.shape} and {b.shape}")
    diff = a - b
    if probes is None:
        probes = default_probes(a.shape[0])
    worst = 0.0
    for p in probes:
        psi = p.amplitudes if isinstance(p, StateVector) else np.asarray(p, dtype=complex)
        val = abs(np.vdot(psi, diff @ psi)) ** 2
        worst = max(worst, float(val))
    top_sv = float(np.linalg.svd(diff, compute_uv=False)[0])
    return GateApproxError(probe_max=worst, spectral_sq=top_sv**2)
