"""Pure states of a qubit register as dense amplitude vectors.

A register of ``n`` qubits is a flat array of ``2**n`` complex amplitudes
indexed by computational basis label.  Index 0 is ``|00...0>`` and qubit 0
is the *most significant* bit of the basis index, so on two qubits the
amplitude of ``|01>`` sits at index 1 and that of ``|10>`` at index 2.
All operations in the package share this ordering.
"""

from __future__ import annotations

import json

import numpy as np

# Unit-norm invariant for stored states.
NORM_TOL = 1e-10
# Constructors silently renormalize within this band and reject outside it.
RENORM_BAND = 1e-6


def _as_amplitude_array(state) -> np.ndarray:
    """Amplitudes of ``state``, which may be a StateVector or any array-like."""
    if isinstance(state, StateVector):
        return state.amplitudes
    return np.asarray(state, dtype=complex)


class StateVector:
    """Normalized amplitude vector over the computational basis.

    >>> s = StateVector([1, 0])
    >>> s.n_qubits
    1
    >>> s.amplitudes[0]
    (1+0j)

    Construction renormalizes inputs whose norm is within ``RENORM_BAND``
    of 1 and raises ``ValueError`` for anything further away, so every
    live instance satisfies the unit-norm invariant to ``NORM_TOL``.
    """

    __slots__ = ("n_qubits", "amplitudes")

    def __init__(self, amplitudes, n_qubits: int | None = None):
        amps = np.array(amplitudes, dtype=complex, copy=True).reshape(-1)
        size = amps.size
        if size == 0 or (size & (size - 1)) != 0:
            raise ValueError(f"amplitude count {size} is not a power of two")
        if not np.all(np.isfinite(amps.real)) or not np.all(np.isfinite(amps.imag)):
            raise ValueError("amplitudes must be finite")
        n = size.bit_length() - 1
        if n_qubits is not None and n_qubits != n:
            raise ValueError(
                f"n_qubits={n_qubits} inconsistent with {size} amplitudes"
            )
        nrm = float(np.linalg.norm(amps))
        if abs(nrm - 1.0) > RENORM_BAND:
            raise ValueError(f"state norm {nrm!r} too far from 1 to renormalize")
        if nrm != 1.0:
            amps /= nrm
        self.n_qubits = n
        self.amplitudes = amps

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def copy(self) -> "StateVector":
        return StateVector(self.amplitudes)

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def __repr__(self) -> str:
        return f"StateVector(n_qubits={self.n_qubits}, amplitudes={self.amplitudes!r})"


def new_basis_state(n_qubits: int, index: int) -> StateVector:
    """Basis state ``|index>`` on ``n_qubits`` qubits.

    >>> new_basis_state(2, 2).amplitudes.real.tolist()
    [0.0, 0.0, 1.0, 0.0]
    """
    if n_qubits < 0:
        raise ValueError("n_qubits must be non-negative")
    dim = 1 << n_qubits
    if not 0 <= index < dim:
        raise ValueError(f"basis index {index} out of range for {n_qubits} qubits")
    amps = np.zeros(dim, dtype=complex)
    amps[index] = 1.0
    return StateVector(amps)


def from_bloch(theta: float, phi: float) -> StateVector:
    """Single-qubit state at polar angle ``theta``, azimuth ``phi``.

    The amplitudes are ``cos(theta/2)`` on ``|0>`` and
    ``exp(i*phi)*sin(theta/2)`` on ``|1>``; ``theta=0`` is ``|0>``.
    """
    a = np.cos(theta / 2.0)
    b = np.exp(1j * phi) * np.sin(theta / 2.0)
    return StateVector([a, b])


def tensor(a: StateVector, b: StateVector) -> StateVector:
    """Joint state of two registers; ``a``'s qubits become the high bits."""
    return StateVector(np.kron(a.amplitudes, b.amplitudes))


def inner(bra, ket) -> complex:
    """Inner product ``<bra|ket>``, conjugating the first argument."""
    u = _as_amplitude_array(bra)
    v = _as_amplitude_array(ket)
    if u.shape != v.shape:
        raise ValueError(f"dimension mismatch {u.shape} vs {v.shape}")
    return complex(np.vdot(u, v))


def norm(state) -> float:
    """Euclidean norm; accepts a StateVector or a raw amplitude array."""
    return float(np.linalg.norm(_as_amplitude_array(state)))


def random_state(n_qubits: int, rng: np.random.Generator) -> StateVector:
    """Haar-random pure state drawn from ``rng``."""
    dim = 1 << n_qubits
    raw = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return StateVector(raw / np.linalg.norm(raw))


def to_json(state: StateVector) -> str:
    """Serialize to the interchange form: [re, im] pairs plus qubit count."""
    payload = {
        "n_qubits": state.n_qubits,
        "amplitudes": [[float(a.real), float(a.imag)] for a in state.amplitudes],
    }
    return json.dumps(payload, indent=2)


def from_json(text: str) -> StateVector:
    payload = json.loads(text)
    amps = [complex(re, im) for re, im in payload["amplitudes"]]
    return StateVector(amps, n_qubits=payload["n_qubits"])
