"""Observables, projective measurement, and mixed-state bookkeeping.

Randomness comes from counter-based Philox generators keyed by an explicit
64-bit seed, so a seed fully determines every outcome stream.  Independent
substreams for parallel or per-experiment use are split off the parent
seed rather than drawn from it sequentially.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gates import as_observable
from .statevec import StateVector

# Eigenvalues closer than this are treated as one degenerate outcome.
DEGENERACY_TOL = 1e-9

DENSITY_TRACE_TOL = 1e-10
DENSITY_EIGVAL_TOL = 1e-10


def make_rng(seed: int) -> np.random.Generator:
    """Counter-based generator; the same seed reproduces the same stream."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(int(seed))))


def spawn_rngs(seed: int, n: int) -> list[np.random.Generator]:
    """``n`` statistically independent generators split from one seed."""
    children = np.random.SeedSequence(int(seed)).spawn(n)
    return [np.random.Generator(np.random.Philox(s)) for s in children]


@dataclass
class MeasurementOutcome:
    """One projective outcome: the recorded eigenvalue, its Born probability,
    and the collapsed post-measurement state."""

    eigenvalue: float
    probability: float
    post_state: StateVector


def expectation(state: StateVector, observable) -> float:
    """Mean value ``<psi|A|psi>`` of a Hermitian ``A``.

    >>> from .gates import SIGMA_Z
    >>> from .statevec import new_basis_state
    >>> expectation(new_basis_state(1, 1), SIGMA_Z)
    -1.0
    """
    a = as_observable(observable)
    if a.shape[0] != state.dim:
        raise ValueError(f"observable dim {a.shape[0]} does not match state dim {state.dim}")
    val = np.vdot(state.amplitudes, a @ state.amplitudes)
    if abs(val.imag) > 1e-10:
        raise ValueError(f"expectation has imaginary residue {val.imag:.3e}")
    return float(val.real)


def uncertainty(state: StateVector, observable) -> float:
    """Standard deviation of ``A`` in ``state``, clamped at zero."""
    a = as_observable(observable)
    mean = expectation(state, a)
    second = expectation(state, a @ a)
    return float(np.sqrt(max(second - mean * mean, 0.0)))


def uncertainty_bound(state: StateVector, a, b) -> tuple[float, float]:
    """(product of spreads, commutator floor) for two observables.

    The first element is ``dA * dB``; the second is
    ``|<[A, B]>| / 2``, which the product can never undercut.
    """
    am = as_observable(a)
    bm = as_observable(b)
    lhs = uncertainty(state, am) * uncertainty(state, bm)
    comm = am @ bm - bm @ am
    val = np.vdot(state.amplitudes, comm @ state.amplitudes)
    return lhs, float(abs(val)) / 2.0


def _grouped_eigensystem(observable, tol: float = DEGENERACY_TOL):
    """Eigenvalues clustered within ``tol`` plus the eigenvector columns.

    Returns (values, groups, vectors) where groups[k] lists the column
    indices sharing the k-th distinct eigenvalue.
    """
    a = as_observable(observable)
    w, v = np.linalg.eigh(a)
    groups: list[list[int]] = []
    values: list[float] = []
    for i, wi in enumerate(w):
        if groups and abs(wi - w[groups[-1][0]]) <= tol:
            groups[-1].append(i)
        else:
            groups.append([i])
            values.append(float(wi))
    # Report each outcome as the mean of its cluster.
    values = [float(np.mean(w[g])) for g in groups]
    return values, groups, v


def _sample_index(probs: np.ndarray, rng: np.random.Generator) -> int:
    """Draw an index from a probability vector using one uniform variate."""
    u = rng.random()
    acc = 0.0
    for i, p in enumerate(probs):
        acc += p
        if u < acc:
            return i
    return len(probs) - 1


def measure_projective(
    state: StateVector,
    observable,
    rng: np.random.Generator,
    target: int | None = None,
) -> MeasurementOutcome:
    """Sample one projective measurement and collapse the state.

    With ``target=None`` the observable must act on the full register.
    Passing a qubit index instead treats ``observable`` as 2x2 and measures
    that qubit alone (identity elsewhere), without building the embedded
    matrix.  Degenerate eigenvalues are grouped within ``DEGENERACY_TOL``
    so the collapsed state keeps its full support inside the eigenspace.
    """
    if target is not None:
        return _measure_one_qubit(state, observable, target, rng)
    values, groups, v = _grouped_eigensystem(observable)
    if v.shape[0] != state.dim:
        raise ValueError(f"observable dim {v.shape[0]} does not match state dim {state.dim}")
    coeffs = v.conj().T @ state.amplitudes
    probs = np.array([float(np.sum(np.abs(coeffs[g]) ** 2)) for g in groups])
    k = _sample_index(probs, rng)
    picked = np.zeros_like(coeffs)
    idx = groups[k]
    picked[idx] = coeffs[idx]
    post = v @ picked
    post /= np.linalg.norm(post)
    return MeasurementOutcome(
        eigenvalue=values[k],
        probability=float(probs[k]),
        post_state=StateVector(post),
    )


def _measure_one_qubit(
    state: StateVector, observable, target: int, rng: np.random.Generator
) -> MeasurementOutcome:
    a = as_observable(observable)
    if a.shape != (2, 2):
        raise ValueError("per-qubit measurement expects a 2x2 observable")
    n = state.n_qubits
    if not 0 <= target < n:
        raise ValueError(f"target {target} out of range for {n} qubits")
    w, v = np.linalg.eigh(a)
    view = state.amplitudes.reshape((1 << target, 2, -1))
    # Rotate the target axis into the observable's eigenbasis.
    rotated = np.einsum("kj,ajb->akb", v.conj().T, view)
    probs = np.array([float(np.sum(np.abs(rotated[:, k, :]) ** 2)) for k in (0, 1)])
    if abs(w[1] - w[0]) <= DEGENERACY_TOL:
        # Fully degenerate 2x2 observable: measurement reveals nothing.
        return MeasurementOutcome(float(np.mean(w)), 1.0, state.copy())
    k = _sample_index(probs, rng)
    rotated[:, 1 - k, :] = 0.0
    rotated /= np.sqrt(probs[k])
    collapsed = np.einsum("jk,akb->ajb", v, rotated)
    return MeasurementOutcome(
        eigenvalue=float(w[k]),
        probability=float(probs[k]),
        post_state=StateVector(collapsed.reshape(-1)),
    )


# ---------------------------------------------------------------------------
# density matrices


def as_density_matrix(m, trace_tol: float = DENSITY_TRACE_TOL) -> np.ndarray:
    """Validate Hermiticity, unit trace, and positivity of ``m``."""
    rho = as_observable(m)
    tr = float(np.trace(rho).real)
    if abs(tr - 1.0) > trace_tol:
        raise ValueError(f"density matrix trace {tr!r} is not 1")
    lo = float(np.linalg.eigvalsh(rho)[0])
    if lo < -DENSITY_EIGVAL_TOL:
        raise ValueError(f"density matrix has negative eigenvalue {lo:.3e}")
    return rho


def density_from_ensemble(members) -> np.ndarray:
    """Mixture ``sum_k p_k |psi_k><psi_k|`` from (probability, state) pairs."""
    members = list(members)
    if not members:
        raise ValueError("ensemble must be non-empty")
    total = 0.0
    rho = None
    for p, psi in members:
        if p < 0:
            raise ValueError(f"ensemble probability {p!r} is negative")
        amps = psi.amplitudes if isinstance(psi, StateVector) else np.asarray(psi, complex)
        term = p * np.outer(amps, amps.conj())
        rho = term if rho is None else rho + term
        total += p
    if abs(total - 1.0) > DENSITY_TRACE_TOL:
        raise ValueError(f"ensemble probabilities sum to {total!r}, not 1")
    return as_density_matrix(rho)


def expectation_density(rho, observable) -> float:
    """``Tr(rho A)`` for Hermitian ``A``."""
    r = np.asarray(rho, dtype=complex)
    a = as_observable(observable)
    if r.shape != a.shape:
        raise ValueError(f"shape mismatch {r.shape} vs {a.shape}")
    return float(np.trace(r @ a).real)


def purity(rho) -> float:
    """``Tr(rho^2)``; 1 exactly for pure states, 1/dim at the fully mixed point."""
    r = np.asarray(rho, dtype=complex)
    return float(np.vdot(r, r).real)


def dephase(rho, lam: float) -> np.ndarray:
    """Scale every off-diagonal element by ``1 - lam``.

    ``lam=0`` is a no-op, ``lam=1`` kills all coherences.  Applying the
    channel twice composes as ``1 - (1-l1)(1-l2)``.
    """
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"dephasing strength {lam!r} outside [0, 1]")
    r = np.asarray(rho, dtype=complex)
    out = r * (1.0 - lam)
    np.fill_diagonal(out, r.diagonal())
    return out


def dephase_strength(t: float, t2: float) -> float:
    """Channel strength ``1 - exp(-t/t2)`` after time ``t`` at coherence time ``t2``."""
    if t < 0 or t2 <= 0:
        raise ValueError("need t >= 0 and t2 > 0")
    return 1.0 - float(np.exp(-t / t2))


def partial_trace(rho, keep) -> np.ndarray:
    """Reduced density matrix over the qubits in ``keep``.

    Qubit indices follow the register convention (qubit 0 is the most
    significant bit of the basis index).
    """
    r = np.asarray(rho, dtype=complex)
    dim = r.shape[0]
    n = dim.bit_length() - 1
    if r.shape != (dim, dim) or 1 << n != dim:
        raise ValueError(f"density matrix shape {r.shape} is not a qubit register")
    kept = sorted(set(int(q) for q in keep))
    if not kept:
        raise ValueError("keep must name at least one qubit")
    if kept[0] < 0 or kept[-1] >= n:
        raise ValueError(f"keep {kept} out of range for {n} qubits")
    traced = [q for q in range(n) if q not in kept]
    t = r.reshape([2] * (2 * n))
    row = list(range(n))
    col = [q if q in traced else n + q for q in range(n)]
    out_axes = kept + [n + q for q in kept]
    reduced = np.einsum(t, row + col, out_axes)
    k = len(kept)
    return reduced.reshape((1 << k, 1 << k))
