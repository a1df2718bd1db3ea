"""Lattice sum-over-paths propagation in one spatial dimension.

Space is a row of ``n_sites`` points spaced ``dx`` apart and time advances
in ``n_slices`` steps of ``dt``.  Between consecutive slices every site
couples to every other site through the kernel

    K[x', x] = sqrt(m / (2 pi i hbar dt)) * exp(i S(x -> x') / hbar)

with the straight-segment action

    S = (m/2) ((x'-x)/dt)**2 dt - V(x) dt + q A(x) (x'-x)

so one propagation costs O(n_slices * n_sites**2).  Summing the kernel
against the current slice with a ``dx`` measure factor is the Riemann form
of the continuum composition law; starting from a delta spike ``1/dx`` at
the source makes a single step reproduce the kernel row exactly.

The module works in natural units: ``hbar`` and ``mass`` are lattice
parameters (both default 1) and the speed of light is 1, so the magnetic
coupling reduces to charge times vector potential times displacement.
Walls are hard by default; ``boundary="periodic"`` wraps displacements to
the minimal image instead.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

import numpy as np

BOUNDARIES = ("reflecting", "periodic")

# Above this site count the step kernel is applied in row blocks computed
# on the fly instead of being materialized; each block holds at most
# KERNEL_BLOCK_ELEMENTS entries, keeping memory bounded while the
# arithmetic stays O(n_slices * n_sites**2).
KERNEL_BLOCK_SITES = 4096
KERNEL_BLOCK_ELEMENTS = 4_000_000


@dataclass
class PathLattice:
    """Geometry, masses, and fields for one propagation experiment.

    ``potential`` and ``vector_potential`` are per-site samples; ``None``
    means identically zero.  ``charge`` scales the magnetic coupling.
    """

    n_slices: int
    n_sites: int
    dx: float
    dt: float
    mass: float = 1.0
    hbar: float = 1.0
    potential: np.ndarray | None = None
    vector_potential: np.ndarray | None = None
    charge: float = 0.0
    boundary: str = "reflecting"

    def __post_init__(self):
        if self.n_slices < 1:
            raise ValueError("n_slices must be at least 1")
        if self.n_sites < 2:
            raise ValueError("n_sites must be at least 2")
        for name in ("dx", "dt", "mass", "hbar"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.boundary not in BOUNDARIES:
            raise ValueError(f"boundary must be one of {BOUNDARIES}")
        for name in ("potential", "vector_potential"):
            arr = getattr(self, name)
            if arr is not None:
                arr = np.asarray(arr, dtype=float)
                if arr.shape != (self.n_sites,):
                    raise ValueError(f"{name} must have one sample per site")
                setattr(self, name, arr)

    def with_hbar(self, hbar: float) -> "PathLattice":
        return dataclasses.replace(self, hbar=hbar)

    def positions(self) -> np.ndarray:
        """Site coordinates with the origin at site 0."""
        return np.arange(self.n_sites) * self.dx


@dataclass
class AmplitudeField:
    """Complex amplitude per site at one time slice.

    ``norm_factor`` records the scale applied by the renormalization pass
    (1.0 when the field was left raw).
    """

    values: np.ndarray
    dx: float
    norm_factor: float = 1.0

    def probabilities(self) -> np.ndarray:
        """Probability mass per site, ``|psi|**2 dx``."""
        return np.abs(self.values) ** 2 * self.dx

    def total_probability(self) -> float:
        return float(np.sum(np.abs(self.values) ** 2) * self.dx)

    def normalized(self) -> "AmplitudeField":
        total = self.total_probability()
        if total <= 0.0:
            raise ValueError("cannot normalize a zero field")
        factor = 1.0 / np.sqrt(total)
        return AmplitudeField(self.values * factor, self.dx, self.norm_factor * factor)


def site_displacements(lattice: PathLattice) -> np.ndarray:
    """Signed displacement matrix D[j, i] = x_j - x_i under the boundary rule."""
    j = np.arange(lattice.n_sites)
    d = j[:, None] - j[None, :]
    if lattice.boundary == "periodic":
        n = lattice.n_sites
        d = (d + n // 2) % n - n // 2
    return d * lattice.dx


def action(path, lattice: PathLattice) -> float:
    """Discrete action of a site-index path with one site per slice boundary.

    The path visits ``n_slices + 1`` sites; each segment contributes
    kinetic minus potential energy times ``dt`` plus the magnetic term,
    all evaluated with the velocity of that segment and the fields at the
    departure site.
    """
    sites = np.asarray(path, dtype=int)
    if sites.ndim != 1 or sites.size < 2:
        raise ValueError("a path needs at least two entries")
    if sites.min() < 0 or sites.max() >= lattice.n_sites:
        raise ValueError("path leaves the lattice")
    disp = site_displacements(lattice)
    v_pot = lattice.potential
    a_pot = lattice.vector_potential
    total = 0.0
    for k in range(sites.size - 1):
        here, there = sites[k], sites[k + 1]
        dxk = disp[there, here]
        vel = dxk / lattice.dt
        seg = 0.5 * lattice.mass * vel * vel * lattice.dt
        if v_pot is not None:
            seg -= v_pot[here] * lattice.dt
        if a_pot is not None:
            seg += lattice.charge * a_pot[here] * dxk
        total += seg
    return float(total)


def step_kernel(lattice: PathLattice, reverse_time: bool = False) -> np.ndarray:
    """One-step transfer matrix including the per-step normalization.

    Reversed time conjugates every path weight, so the reversed kernel is
    the elementwise conjugate of the forward one.
    """
    disp = site_displacements(lattice)
    vel = disp / lattice.dt
    seg = 0.5 * lattice.mass * vel**2 * lattice.dt
    if lattice.potential is not None:
        seg = seg - lattice.potential[None, :] * lattice.dt
    if lattice.vector_potential is not None and lattice.charge != 0.0:
        seg = seg + lattice.charge * lattice.vector_potential[None, :] * disp
    amp = np.sqrt(lattice.mass / (2.0 * np.pi * lattice.hbar * lattice.dt))
    prefactor = amp * np.exp(-0.25j * np.pi)  # 1/sqrt(i)
    kernel = prefactor * np.exp(1j * seg / lattice.hbar)
    return np.conj(kernel) if reverse_time else kernel


def _free_kernel_weights(lattice: PathLattice, reverse_time: bool) -> np.ndarray:
    """Kernel values by integer displacement for field-free lattices."""
    n = lattice.n_sites
    if lattice.boundary == "periodic":
        d = (np.arange(n) + n // 2) % n - n // 2
    else:
        d = np.arange(-(n - 1), n)
    disp = d * lattice.dx
    seg = 0.5 * lattice.mass * disp**2 / lattice.dt
    amp = np.sqrt(lattice.mass / (2.0 * np.pi * lattice.hbar * lattice.dt))
    prefactor = amp * np.exp(-0.25j * np.pi)
    if reverse_time:
        return np.conj(prefactor * np.exp(1j * seg / lattice.hbar))
    return prefactor * np.exp(1j * seg / lattice.hbar)


def _apply_kernel_free(
    lattice: PathLattice, psi: np.ndarray, weights: np.ndarray
) -> np.ndarray:
    """Field-free step as a convolution over integer displacements.

    The summand depends only on j - i, so the dense slice-to-slice sum
    collapses to a (linear or circular) convolution evaluated by FFT.
    The result is the same sum as the dense kernel, just associated
    differently.
    """
    n = lattice.n_sites
    if lattice.boundary == "periodic":
        out = np.fft.ifft(np.fft.fft(weights) * np.fft.fft(psi))
    else:
        size = 1
        while size < 3 * n - 2:
            size *= 2
        conv = np.fft.ifft(np.fft.fft(weights, size) * np.fft.fft(psi, size))
        out = conv[n - 1 : 2 * n - 1]
    return out * lattice.dx


def _is_field_free(lattice: PathLattice) -> bool:
    return lattice.potential is None and (
        lattice.vector_potential is None or lattice.charge == 0.0
    )


def _apply_kernel_blocked(
    lattice: PathLattice, psi: np.ndarray, reverse_time: bool
) -> np.ndarray:
    """One kernel application without materializing the full matrix."""
    n = lattice.n_sites
    out = np.empty(n, dtype=complex)
    amp = np.sqrt(lattice.mass / (2.0 * np.pi * lattice.hbar * lattice.dt))
    prefactor = amp * np.exp(-0.25j * np.pi)
    if reverse_time:
        prefactor = np.conj(prefactor)
    sign = -1.0 if reverse_time else 1.0
    rows = max(1, KERNEL_BLOCK_ELEMENTS // n)
    i = np.arange(n)
    for start in range(0, n, rows):
        stop = min(start + rows, n)
        d = np.arange(start, stop)[:, None] - i[None, :]
        if lattice.boundary == "periodic":
            d = (d + n // 2) % n - n // 2
        disp = d * lattice.dx
        # seg is built in place to keep one float block live at a time
        seg = disp * disp
        seg *= 0.5 * lattice.mass / lattice.dt
        if lattice.potential is not None:
            seg -= lattice.potential[None, :] * lattice.dt
        if lattice.vector_potential is not None and lattice.charge != 0.0:
            seg += (lattice.charge * lattice.vector_potential)[None, :] * disp
        seg *= sign / lattice.hbar
        out[start:stop] = prefactor * (np.exp(1j * seg) @ psi)
    return out * lattice.dx


def delta_source(lattice: PathLattice, source: int) -> np.ndarray:
    """Lattice delta function at ``source`` (spike of height 1/dx)."""
    if not 0 <= source < lattice.n_sites:
        raise ValueError(f"source {source} out of range")
    init = np.zeros(lattice.n_sites, dtype=complex)
    init[source] = 1.0 / lattice.dx
    return init


def gaussian_packet(lattice: PathLattice, center: int, width: float) -> np.ndarray:
    """Unit-norm Gaussian amplitude packet of probability std ``width``."""
    if width <= 0:
        raise ValueError("width must be positive")
    x = (np.arange(lattice.n_sites) - center) * lattice.dx
    psi = np.exp(-(x**2) / (4.0 * width**2)).astype(complex)
    psi /= np.sqrt(np.sum(np.abs(psi) ** 2) * lattice.dx)
    return psi


def propagate_field(
    lattice: PathLattice,
    initial: np.ndarray,
    normalize: bool = True,
    reverse_time: bool = False,
    record: set[int] | None = None,
) -> AmplitudeField | tuple[AmplitudeField, dict[int, np.ndarray]]:
    """Advance an arbitrary initial field through every slice.

    With ``record`` given, raw (un-renormalized) snapshots after the listed
    step counts are returned alongside the final field.
    """
    psi = np.asarray(initial, dtype=complex).copy()
    if psi.shape != (lattice.n_sites,):
        raise ValueError("initial field must have one amplitude per site")
    free = _is_field_free(lattice)
    weights = _free_kernel_weights(lattice, reverse_time) if free else None
    blocked = not free and lattice.n_sites > KERNEL_BLOCK_SITES
    kernel = None
    if not free and not blocked:
        kernel = step_kernel(lattice, reverse_time=reverse_time)
    snapshots: dict[int, np.ndarray] = {}
    if record and 0 in record:
        snapshots[0] = psi.copy()
    for k in range(1, lattice.n_slices + 1):
        if free:
            psi = _apply_kernel_free(lattice, psi, weights)
        elif blocked:
            psi = _apply_kernel_blocked(lattice, psi, reverse_time)
        else:
            psi = (kernel @ psi) * lattice.dx
        if record and k in record:
            snapshots[k] = psi.copy()
    field = AmplitudeField(psi, lattice.dx)
    if normalize:
        field = field.normalized()
    if record is not None:
        return field, snapshots
    return field


def propagate(
    lattice: PathLattice,
    source: int,
    normalize: bool = True,
    reverse_time: bool = False,
) -> AmplitudeField:
    """Propagate a point source at ``source`` through all slices.

    After a single slice the raw result is exactly the kernel row for the
    source column.
    """
    out = propagate_field(
        lattice, delta_source(lattice, source), normalize=normalize, reverse_time=reverse_time
    )
    assert isinstance(out, AmplitudeField)
    return out


def compose_amplitudes(
    lattice: PathLattice,
    source: int,
    gate_slice: int,
    open_sites,
    normalize: bool = True,
) -> AmplitudeField:
    """Propagate through a perforated screen at an interior slice.

    Amplitudes at ``gate_slice`` are zeroed outside ``open_sites`` before
    the remaining slices run.  With every site open this is ``propagate``;
    with disjoint openings the results add linearly (before any
    renormalization).
    """
    if not 0 < gate_slice < lattice.n_slices:
        raise ValueError(f"gate_slice {gate_slice} must be interior to 0..{lattice.n_slices}")
    open_list = sorted(set(int(s) for s in open_sites))
    if not open_list:
        raise ValueError("open_sites must be non-empty")
    if open_list[0] < 0 or open_list[-1] >= lattice.n_sites:
        raise ValueError(f"open_sites {open_list} out of range")
    first = dataclasses.replace(lattice, n_slices=gate_slice)
    rest = dataclasses.replace(lattice, n_slices=lattice.n_slices - gate_slice)
    at_gate = propagate(first, source, normalize=False).values
    mask = np.zeros(lattice.n_sites, dtype=float)
    mask[open_list] = 1.0
    out = propagate_field(rest, at_gate * mask, normalize=False)
    assert isinstance(out, AmplitudeField)
    return out.normalized() if normalize else out


def double_slit(
    lattice: PathLattice,
    source: int,
    gate_slice: int,
    slit_a: int,
    slit_b: int,
    relative_phase: float = 0.0,
    normalize: bool = True,
) -> AmplitudeField:
    """Coherent sum of the two single-slit branches.

    ``relative_phase`` multiplies the ``slit_b`` branch by ``exp(i phase)``,
    which is how an enclosed flux line shows up on the screen.
    """
    if slit_a == slit_b:
        raise ValueError("slits must be distinct sites")
    branch_a = compose_amplitudes(lattice, source, gate_slice, [slit_a], normalize=False)
    branch_b = compose_amplitudes(lattice, source, gate_slice, [slit_b], normalize=False)
    combined = branch_a.values + np.exp(1j * relative_phase) * branch_b.values
    field = AmplitudeField(combined, lattice.dx)
    return field.normalized() if normalize else field


def ab_phase(lattice: PathLattice, loop_flux: float) -> float:
    """Phase picked up around a loop enclosing ``loop_flux``, reduced mod 2 pi.

    In lattice units (c = 1) this is charge * flux / hbar, so one flux
    quantum ``2 pi hbar / charge`` closes the circle back to zero.
    """
    if lattice.charge == 0.0:
        return 0.0
    return float(np.mod(lattice.charge * loop_flux / lattice.hbar, 2.0 * np.pi))


def classical_concentration(
    lattice: PathLattice,
    source: int,
    window: tuple[int, int],
    hbar_sequence,
    packet_width: float | None = None,
) -> list[float]:
    """Probability captured by a site window as the action scale shrinks.

    A fixed-width packet launched at ``source`` is propagated once per
    ``hbar`` value (the sequence must be positive and decreasing) and the
    fraction of final probability inside ``window = (start, stop)`` is
    reported for each.  Smaller ``hbar`` suppresses spreading, so the
    fractions climb toward the classical straight-line answer.

    Resolution warning: the sampled step kernel repeats its phase pattern
    every ``2 pi hbar dt / (m dx**2)`` sites, so once that period drops
    below ``n_sites`` a coherent clone of the packet appears inside the
    box and the window fraction collapses.  Keep the lattice fine enough
    that the period exceeds the box at the smallest ``hbar`` swept.
    """
    lo, hi = int(window[0]), int(window[1])
    if not 0 <= lo < hi <= lattice.n_sites:
        raise ValueError(f"window {window} out of range")
    hbars = [float(h) for h in hbar_sequence]
    if not hbars or any(h <= 0 for h in hbars):
        raise ValueError("hbar_sequence must be positive")
    if any(b >= a for a, b in zip(hbars, hbars[1:])):
        raise ValueError("hbar_sequence must be strictly decreasing")
    width = 3.0 * lattice.dx if packet_width is None else float(packet_width)
    packet = gaussian_packet(lattice, source, width)
    fractions = []
    for hb in hbars:
        field = propagate_field(lattice.with_hbar(hb), packet, normalize=True)
        assert isinstance(field, AmplitudeField)
        mass = field.probabilities()
        fractions.append(float(np.sum(mass[lo:hi]) / np.sum(mass)))
    return fractions


# ---------------------------------------------------------------------------
# experiment descriptors (JSON-friendly dictionaries)


def lattice_from_descriptor(desc: dict) -> PathLattice:
    """Build a PathLattice from a descriptor dictionary.

    ``potential`` may be the profile name "free" or a per-site array;
    ``vector_potential`` likewise ("none" or an array).
    """
    pot = desc.get("potential", "free")
    if isinstance(pot, str):
        if pot != "free":
            raise ValueError(f"unknown potential profile {pot!r}")
        pot = None
    vec = desc.get("vector_potential", "none")
    if isinstance(vec, str):
        if vec != "none":
            raise ValueError(f"unknown vector potential profile {vec!r}")
        vec = None
    return PathLattice(
        n_slices=int(desc["n_slices"]),
        n_sites=int(desc["n_sites"]),
        dx=float(desc["dx"]),
        dt=float(desc["dt"]),
        mass=float(desc.get("mass", 1.0)),
        hbar=float(desc.get("hbar", 1.0)),
        potential=pot,
        vector_potential=vec,
        charge=float(desc.get("charge", 0.0)),
        boundary=str(desc.get("boundary", "reflecting")),
    )


def run_descriptor(desc: dict) -> dict[int, AmplitudeField]:
    """Execute a descriptor and return normalized fields keyed by slice.

    Without slits the requested ``record_slices`` (default: final slice
    only) are captured along a plain propagation.  With a ``slits`` block
    of the form ``{"slice": k, "sites": [a, b]}`` the two-branch screen
    experiment runs instead, optionally threading ``flux`` through the
    slit pair, and only the final slice is reported.
    """
    lattice = lattice_from_descriptor(desc)
    source = int(desc["source"])
    slits = desc.get("slits")
    if slits is None:
        wanted = set(int(s) for s in desc.get("record_slices", [lattice.n_slices]))
        bad = [s for s in wanted if not 0 <= s <= lattice.n_slices]
        if bad:
            raise ValueError(f"record_slices {bad} out of range")
        _, snaps = propagate_field(
            lattice, delta_source(lattice, source), normalize=False, record=wanted
        )
        return {
            k: AmplitudeField(v, lattice.dx).normalized() for k, v in sorted(snaps.items())
        }
    sites = [int(s) for s in slits["sites"]]
    if len(sites) != 2:
        raise ValueError("slits.sites must list exactly two sites")
    phase = ab_phase(lattice, float(desc.get("flux", 0.0)))
    field = double_slit(
        lattice, source, int(slits["slice"]), sites[0], sites[1], relative_phase=phase
    )
    return {lattice.n_slices: field}
