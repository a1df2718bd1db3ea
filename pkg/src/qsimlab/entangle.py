"""Two-party entanglement: correlated pairs, Schmidt structure, cloning limits.

The spin axes used by the correlation experiments live in the x-z plane;
an analyzer angle ``theta`` means the direction
``(sin(theta), 0, cos(theta))``, measured from the z axis.  On the singlet
pair the two-analyzer correlation is ``-cos(theta_a - theta_b)`` no matter
how the angles are chosen, which is what the sampling helpers reproduce
shot by shot.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import measure
from .gates import SIGMA_X, SIGMA_Z
from .statevec import StateVector

SCHMIDT_TOL = 1e-9


def singlet() -> StateVector:
    """The antisymmetric pair ``(|01> - |10>)/sqrt(2)``."""
    s = 1.0 / np.sqrt(2.0)
    return StateVector([0.0, s, -s, 0.0])


def max_entangled(n_qubits: int, phases) -> StateVector:
    """Uniform-magnitude state ``2**(-n/2) sum_i exp(i phi_i) |i>``.

    The reference phase ``phi_0`` is fixed at zero; ``phases`` supplies the
    ``2**n - 1`` remaining ones in basis-index order.
    """
    if n_qubits < 1:
        raise ValueError("need at least one qubit")
    dim = 1 << n_qubits
    ph = np.asarray(phases, dtype=float)
    if ph.shape != (dim - 1,):
        raise ValueError(f"expected {dim - 1} phases, got shape {ph.shape}")
    full = np.concatenate(([0.0], ph))
    amps = np.exp(1j * full) / np.sqrt(dim)
    return StateVector(amps)


@dataclass(frozen=True)
class Bipartition:
    """A split of the register into two disjoint, exhaustive index groups."""

    side_a: tuple[int, ...]
    side_b: tuple[int, ...]

    def __post_init__(self):
        a, b = set(self.side_a), set(self.side_b)
        if not a or not b:
            raise ValueError("both sides must be non-empty")
        if a & b:
            raise ValueError(f"sides overlap: {sorted(a & b)}")
        n = len(a) + len(b)
        if a | b != set(range(n)):
            raise ValueError("sides must cover the register exactly")

    @classmethod
    def of(cls, side_a, n_qubits: int) -> "Bipartition":
        a = tuple(sorted(set(side_a)))
        b = tuple(q for q in range(n_qubits) if q not in a)
        return cls(a, b)


def schmidt_values(state: StateVector, cut: Bipartition) -> np.ndarray:
    """Singular values of the amplitude matrix reshaped along ``cut``."""
    n = state.n_qubits
    if len(cut.side_a) + len(cut.side_b) != n:
        raise ValueError(f"cut covers {len(cut.side_a) + len(cut.side_b)} qubits, state has {n}")
    grid = state.amplitudes.reshape([2] * n)
    perm = list(cut.side_a) + list(cut.side_b)
    mat = grid.transpose(perm).reshape((1 << len(cut.side_a), 1 << len(cut.side_b)))
    return np.linalg.svd(mat, compute_uv=False)


def schmidt_rank(state: StateVector, cut: Bipartition, tol: float = SCHMIDT_TOL) -> int:
    """Number of Schmidt coefficients above ``tol``; 1 means a product state."""
    return int(np.sum(schmidt_values(state, cut) > tol))


def analyzer_axis(theta: float) -> np.ndarray:
    return np.array([np.sin(theta), 0.0, np.cos(theta)])


def spin_along(theta: float) -> np.ndarray:
    """Spin component observable for an analyzer at ``theta`` in the x-z plane."""
    return np.sin(theta) * SIGMA_X + np.cos(theta) * SIGMA_Z


def epr_correlation(angle_a: float, angle_b: float) -> float:
    """Exact two-analyzer correlation on the singlet.

    Evaluated as the expectation of the joint spin observable on the
    four-amplitude pair state; equals ``-cos(angle_a - angle_b)``.
    """
    obs = np.kron(spin_along(angle_a), spin_along(angle_b))
    return measure.expectation(singlet(), obs)


@dataclass
class EprRecord:
    """Counts from a finite run of paired analyzer measurements."""

    angle_a: float
    angle_b: float
    shots: int
    counts: dict[tuple[int, int], int] = field(default_factory=dict)

    @property
    def empirical_correlation(self) -> float:
        if self.shots == 0:
            raise ValueError("no shots recorded")
        total = sum(sa * sb * c for (sa, sb), c in self.counts.items())
        return total / self.shots


def _sorted_spin_basis(theta: float):
    """Eigenvectors of the analyzer observable, column 0 for eigenvalue -1."""
    w, v = np.linalg.eigh(spin_along(theta))
    order = np.argsort(w)
    return w[order], v[:, order]


def epr_sample(
    angle_a: float, angle_b: float, shots: int, rng: np.random.Generator
) -> EprRecord:
    """Measure ``shots`` singlet pairs, observer A first, then observer B.

    Each shot collapses qubit 0 along A's axis, then measures qubit 1 of
    the collapsed state along B's axis.  Outcomes are the spin eigenvalues
    +1 or -1 for each side.
    """
    if shots < 1:
        raise ValueError("shots must be positive")
    record = EprRecord(angle_a, angle_b, shots, {(1, 1): 0, (1, -1): 0, (-1, 1): 0, (-1, -1): 0})
    base = singlet().amplitudes
    _, va = _sorted_spin_basis(angle_a)
    _, vb = _sorted_spin_basis(angle_b)
    for _ in range(shots):
        psi = base.copy()
        sa, psi = _collapse_pair_qubit(psi, va, 0, rng)
        sb, _ = _collapse_pair_qubit(psi, vb, 1, rng)
        # column index 0 is the -1 eigenvector, so the sign is 2k - 1
        record.counts[(2 * sa - 1, 2 * sb - 1)] += 1
    return record


def _collapse_pair_qubit(amps: np.ndarray, basis: np.ndarray, qubit: int, rng) -> tuple[int, np.ndarray]:
    """Project one qubit of a two-qubit amplitude vector onto an eigenvector
    drawn with Born weights; returns (eigenvector index, collapsed amplitudes)."""
    view = amps.reshape((2, 2)) if qubit == 0 else amps.reshape((2, 2)).T
    # Components along the two basis columns.
    comp = basis.conj().T @ view
    probs = np.sum(np.abs(comp) ** 2, axis=1)
    k = 0 if rng.random() < probs[0] else 1
    comp[1 - k, :] = 0.0
    comp /= np.sqrt(probs[k])
    new_view = basis @ comp
    out = new_view if qubit == 0 else new_view.T
    return k, np.ascontiguousarray(out).reshape(-1)


def delayed_choice_outcomes(angle_schedule, angle_b: float, rng: np.random.Generator):
    """One shot per entry of ``angle_schedule`` with B's analyzer fixed.

    A's angle is looked up per shot, mimicking a setting chosen after the
    pairs are in flight.  Returns a list of (angle_a, s_a, s_b) tuples.
    """
    out = []
    for theta in angle_schedule:
        rec = epr_sample(float(theta), angle_b, 1, rng)
        ((sa, sb),) = [k for k, c in rec.counts.items() if c == 1]
        out.append((float(theta), sa, sb))
    return out


def no_cloning_witness(state: StateVector) -> float:
    """Infidelity of the basis-copier on ``state``.

    The copier maps ``a|0> + b|1>`` to ``a|00> + b|11>``, which equals the
    true copy ``|psi> x |psi>`` only for basis states; the witness
    ``1 - |<psi x psi|C psi>|**2`` is zero there and 1/2 at the equator.
    """
    if state.n_qubits != 1:
        raise ValueError("witness is defined for single-qubit states")
    a, b = state.amplitudes
    cloned = np.array([a, 0.0, 0.0, b], dtype=complex)
    target = np.kron(state.amplitudes, state.amplitudes)
    overlap = np.vdot(target, cloned)
    return max(0.0, 1.0 - float(abs(overlap) ** 2))
