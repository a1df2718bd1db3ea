"""Acceptance gate: the eleven go/no-go checks, one per test, in order.

Each test prints its own PASS line once the asserts clear (run with
``pytest -s tests/test_acceptance.py`` to see them; a failed criterion
shows up as an ordinary pytest failure plus a FAIL line).  Everything
here runs on one core in well under five minutes, dominated by the
shot sampling in criterion 5.
"""

import contextlib
import json
import math
import time

import numpy as np
import pytest

import oracles
from qsimlab import (
    circuits,
    cli,
    entangle,
    gates,
    limits,
    measure,
    pathint,
    statevec,
)

SOLAR_MASS = 1.98892e30


@contextlib.contextmanager
def criterion(number, label):
    try:
        yield
    except BaseException:
        print(f"[{number:2d}/11] FAIL  {label}")
        raise
    print(f"[{number:2d}/11] PASS  {label}")


def _random_circuit_norm(rng):
    n = int(rng.integers(1, 11))
    state = statevec.new_basis_state(n, 0)
    for _ in range(int(rng.integers(1, 51))):
        gate = gates.rotation_gate(rng.normal(size=3), rng.uniform(-math.pi, math.pi))
        if n >= 2 and rng.random() < 0.3:
            control, target = rng.choice(n, size=2, replace=False)
            gates.apply_controlled(state, gate, int(control), int(target))
        else:
            gates.apply_single(state, gate, int(rng.integers(n)))
    return statevec.norm(state)


def test_criterion_01_norm_preservation():
    with criterion(1, "1000 random circuits keep unit norm to 1e-12"):
        rng = np.random.default_rng(20260822)
        drift = max(abs(_random_circuit_norm(rng) - 1.0) for _ in range(1000))
        assert drift < 1e-12, f"worst norm drift {drift:.3e}"


def test_criterion_02_pauli_algebra_and_rotation_group():
    with criterion(2, "Pauli products exact, rotation group law to 1e-12"):
        want = {
            ("x", "x"): oracles.ID2, ("y", "y"): oracles.ID2, ("z", "z"): oracles.ID2,
            ("x", "y"): 1j * oracles.PAULI["z"], ("y", "x"): -1j * oracles.PAULI["z"],
            ("y", "z"): 1j * oracles.PAULI["x"], ("z", "y"): -1j * oracles.PAULI["x"],
            ("z", "x"): 1j * oracles.PAULI["y"], ("x", "z"): -1j * oracles.PAULI["y"],
        }
        for (a, b), m in want.items():
            assert np.array_equal(gates.pauli(a) @ gates.pauli(b), m), (a, b)

        rng = np.random.default_rng(2)
        for _ in range(100):
            axis = rng.normal(size=3)
            a, b = rng.uniform(-2.0 * math.pi, 2.0 * math.pi, size=2)
            lhs = gates.compose(gates.rotation_gate(axis, a), gates.rotation_gate(axis, b))
            rhs = gates.rotation_gate(axis, a + b)
            assert np.max(np.abs(lhs - rhs)) < 1e-12


def test_criterion_03_strided_equals_dense_embedding():
    with criterion(3, "strided application == dense kron embedding (n <= 4)"):
        rng = np.random.default_rng(3)
        for n in range(1, 5):
            for _ in range(25):
                gate = gates.rotation_gate(rng.normal(size=3), rng.uniform(-math.pi, math.pi))
                state = statevec.random_state(n, rng)
                target = int(rng.integers(n))
                got = gates.apply_single(state.copy(), gate, target).amplitudes
                want = oracles.dense_single(gate, target, n) @ state.amplitudes
                assert np.max(np.abs(got - want)) < 1e-12
                if n >= 2:
                    control, target = (int(q) for q in rng.choice(n, size=2, replace=False))
                    got = gates.apply_controlled(state.copy(), gate, control, target).amplitudes
                    want = oracles.dense_controlled(gate, control, target, n) @ state.amplitudes
                    assert np.max(np.abs(got - want)) < 1e-12


def test_criterion_04_uncertainty_bound():
    with criterion(4, "uncertainty product beats commutator floor; Pauli case saturates"):
        rng = np.random.default_rng(4)
        for _ in range(200):
            n = int(rng.integers(1, 3))
            dim = 1 << n
            state = statevec.random_state(n, rng)
            obs = []
            for _ in range(2):
                raw = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
                obs.append(raw + raw.conj().T)
            product, floor = measure.uncertainty_bound(state, obs[0], obs[1])
            assert product >= floor - 1e-10

        zero = statevec.new_basis_state(1, 0)
        product, floor = measure.uncertainty_bound(zero, gates.pauli("x"), gates.pauli("y"))
        assert abs(product - 1.0) < 1e-12
        assert abs(floor - 1.0) < 1e-12


def test_criterion_05_epr_suite():
    with criterion(5, "EPR analytic grid, sampled correlations, no-signaling"):
        grid = np.linspace(-math.pi, math.pi, 17)
        for a in grid:
            b = 0.25
            got = entangle.epr_correlation(a, b)
            assert abs(got - (-math.cos(a - b))) < 1e-10
            assert abs(got - oracles.epr_brute_expectation(a, b)) < 1e-10

        shots = 100_000
        for i, (a, b) in enumerate([(0.0, math.pi / 3.0), (math.pi / 2.0, math.pi / 6.0), (0.3, 1.8)]):
            rec = entangle.epr_sample(a, b, shots, measure.make_rng(500 + i))
            exact = -math.cos(a - b)
            se = math.sqrt((1.0 - exact**2) / shots)
            assert abs(rec.empirical_correlation - exact) < 5.0 * se, (a, b)

        # B's marginal may not depend on A's setting
        n = 40_000
        base = entangle.epr_sample(0.0, 0.7, n, measure.make_rng(600))
        moved = entangle.epr_sample(math.pi / 2.0, 0.7, n, measure.make_rng(601))
        b_up = [r.counts[(1, 1)] + r.counts[(-1, 1)] for r in (base, moved)]
        assert abs(b_up[0] - b_up[1]) < 5.0 * math.sqrt(n / 2.0)


def test_criterion_06_path_enumeration_and_free_propagator():
    with criterion(6, "transfer matrix == path sum; free propagator within 1%"):
        rng = np.random.default_rng(6)
        for boundary in pathint.BOUNDARIES:
            for n_sites in range(2, 6):
                for n_slices in range(1, 6):
                    lat = pathint.PathLattice(
                        n_slices=n_slices,
                        n_sites=n_sites,
                        dx=float(rng.uniform(0.3, 1.0)),
                        dt=float(rng.uniform(0.4, 1.0)),
                        mass=float(rng.uniform(0.6, 1.8)),
                        hbar=float(rng.uniform(0.6, 1.8)),
                        potential=rng.normal(size=n_sites),
                        vector_potential=rng.normal(size=n_sites),
                        charge=float(rng.uniform(-1.0, 1.0)),
                        boundary=boundary,
                    )
                    source = int(rng.integers(n_sites))
                    got = pathint.propagate(lat, source, normalize=False).values
                    want = oracles.enumerate_paths(lat, source)
                    assert np.max(np.abs(got - want)) < 1e-10, (boundary, n_sites, n_slices)

        start = time.time()
        lat = pathint.PathLattice(n_slices=3, n_sites=227_001, dx=0.0025, dt=0.5)
        src = lat.n_sites // 2
        field = pathint.propagate(lat, src, normalize=False)
        x = (np.arange(lat.n_sites) - src) * lat.dx
        exact = oracles.free_particle_kernel(x, lat.n_slices * lat.dt)
        window = np.abs(x) <= 4.0
        rel = np.abs(field.values[window] - exact[window]) / np.abs(exact[window])
        elapsed = time.time() - start
        assert rel.max() < 0.01, f"free propagator off by {rel.max():.2%}"
        assert elapsed < 60.0, f"reference run took {elapsed:.1f}s"


def test_criterion_07_double_slit_and_flux_shift():
    with criterion(7, "double slit: deep interior nulls, pi flux swaps the pattern"):
        lat = pathint.PathLattice(n_slices=2, n_sites=401, dx=0.5, dt=24.0)
        source, gate_slice, slit_a, slit_b = 200, 1, 188, 212
        bright = pathint.double_slit(lat, source, gate_slice, slit_a, slit_b)
        ib = np.abs(bright.values) ** 2
        interior = slice(40, 361)
        assert ib[interior].min() < 0.01 * ib[interior].max()

        dark = pathint.double_slit(
            lat, source, gate_slice, slit_a, slit_b, relative_phase=math.pi
        )
        idk = np.abs(dark.values) ** 2

        def peaks(v):
            return [
                i for i in range(interior.start, interior.stop)
                if v[i] > v[i - 1] and v[i] > v[i + 1]
            ]
        p_bright, p_dark = peaks(ib), peaks(idk)
        fringe = float(np.mean(np.diff(p_bright)))
        for p in p_bright[1:-1]:
            shift = min(abs(q - p) for q in p_dark)
            assert abs(shift - fringe / 2.0) <= 1.0, (p, shift, fringe)
        # old maxima become nulls outright
        assert idk[200] < 1e-6 * ib[200]


def test_criterion_08_classical_limit_sweep():
    with criterion(8, "window fraction climbs as the action scale shrinks (4 steps)"):
        lat = pathint.PathLattice(n_slices=3, n_sites=2223, dx=0.018, dt=1.0)
        center = lat.n_sites // 2
        half = int(round(3.0 / lat.dx))
        fracs = pathint.classical_concentration(
            lat, center, (center - half, center + half + 1),
            [8.0, 2.0, 0.5, 0.125], packet_width=1.0,
        )
        assert len(fracs) == 4
        for a, b in zip(fracs, fracs[1:]):
            assert b >= a - 1e-3, fracs


def test_criterion_09_density_operator_suite():
    with criterion(9, "dephasing/partial trace keep trace; singlet purity 1/2; semigroup"):
        rng = np.random.default_rng(9)
        for _ in range(50):
            state = statevec.random_state(2, rng)
            rho = measure.density_from_ensemble([(1.0, state)])
            lam1, lam2 = rng.uniform(0.0, 1.0, size=2)
            once = measure.dephase(rho, lam1)
            assert abs(np.trace(once).real - 1.0) < 1e-10
            reduced = measure.partial_trace(once, keep=[0])
            assert abs(np.trace(reduced).real - 1.0) < 1e-10

            twice = measure.dephase(once, lam2)
            joined = measure.dephase(rho, 1.0 - (1.0 - lam1) * (1.0 - lam2))
            assert np.max(np.abs(twice - joined)) < 1e-12

        rho = measure.density_from_ensemble([(1.0, entangle.singlet())])
        reduced = measure.partial_trace(rho, keep=[1])
        assert abs(measure.purity(reduced) - 0.5) < 1e-12


def test_criterion_10_limits_goldens():
    with criterion(10, "closed-form golden values and the horizon density identity"):
        assert limits.schwarzschild_radius(SOLAR_MASS) == pytest.approx(
            2.954e3, rel=1e-2, abs=0.0
        )
        assert limits.hawking_temperature(SOLAR_MASS) == pytest.approx(
            6.17e-8, rel=1e-2, abs=0.0
        )
        assert limits.landauer_heat(300.0, 1.0) == pytest.approx(
            2.871e-21, rel=1e-2, abs=0.0
        )
        assert limits.channel_capacity(3000.0, 1000.0, 1.0) == pytest.approx(
            2.991e4, rel=1e-2, abs=0.0
        )
        for m in (1.0, 1e12, SOLAR_MASS):
            r = limits.schwarzschild_radius(m)
            ball = limits.collapse_density(m) * (4.0 / 3.0) * math.pi * r**3
            assert abs(ball / m - 1.0) < 1e-10


def test_criterion_11_byte_identical_reruns(tmp_path):
    with criterion(11, "same seed, same bytes: shot CSVs reproduce exactly"):
        src = tmp_path / "program.qc"
        src.write_text(
            "QUBITS 3\nH 0\nCNOT 0 1\nRY 2 0.8\nMEASURE Z all SHOTS=200 SEED=42\n"
        )
        dirs = []
        for name in ("first", "second"):
            out = tmp_path / name
            out.mkdir()
            assert cli.main(["--outdir", str(out), "circuit", "--file", str(src)]) == 0
            dirs.append(out)
        for artifact in ("circuit_shots.csv", "circuit_state.json", "circuit_manifest.json"):
            a = (dirs[0] / artifact).read_bytes()
            b = (dirs[1] / artifact).read_bytes()
            assert a == b, artifact

        row = json.loads((dirs[0] / "circuit_manifest.json").read_text())
        assert row["seed"] == 42
