"""Closed-form physical limits: horizons, evaporation, information bounds.

Every formula takes an optional ``constants`` argument so the whole module
can be exercised with rescaled constants (used by the dimensional checks
in the test suite) while defaulting to the pinned CODATA values below.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

CONSTANTS_VERSION = "CODATA-2018"


@dataclass(frozen=True)
class PhysicalConstants:
    G: float      # gravitational constant, m^3 kg^-1 s^-2
    c: float      # speed of light, m/s (exact)
    h: float      # Planck constant, J s (exact)
    k: float      # Boltzmann constant, J/K (exact)
    e: float      # elementary charge, C (exact)

    @property
    def hbar(self) -> float:
        return self.h / (2.0 * math.pi)

    def scaled(self, factor: float) -> "PhysicalConstants":
        """All constants multiplied by ``factor`` (dimensional sweeps)."""
        return PhysicalConstants(
            G=self.G * factor,
            c=self.c * factor,
            h=self.h * factor,
            k=self.k * factor,
            e=self.e * factor,
        )


CODATA2018 = PhysicalConstants(
    G=6.67430e-11,
    c=299792458.0,
    h=6.62607015e-34,
    k=1.380649e-23,
    e=1.602176634e-19,
)

SECONDS_PER_YEAR = 365.25 * 86400.0


def _positive(name: str, value: float) -> float:
    v = float(value)
    if v <= 0:
        raise ValueError(f"{name} must be positive, got {value!r}")
    return v


def info_bits(n_states) -> float:
    """Bits needed to single out one of ``n_states`` equally likely options."""
    w = float(n_states)
    if w < 1:
        raise ValueError(f"state count must be at least 1, got {n_states!r}")
    return math.log2(w)


@dataclass(frozen=True)
class LevelSpec:
    """One energy level: degeneracy count and energy in joules."""

    degeneracy: int
    energy: float

    def __post_init__(self):
        if self.degeneracy < 1:
            raise ValueError("degeneracy must be at least 1")


def boltzmann_occupation(levels, temperature: float, constants: PhysicalConstants = CODATA2018) -> np.ndarray:
    """Thermal occupation fractions ``g_i exp(-e_i / kT)``, normalized.

    The exponent is shifted so its largest value is zero before
    exponentiating, which keeps the evaluation finite for any energy scale.
    Shifting changes nothing: the fractions are invariant under adding a
    constant to every level.
    """
    t = _positive("temperature", temperature)
    specs = [lv if isinstance(lv, LevelSpec) else LevelSpec(*lv) for lv in levels]
    if not specs:
        raise ValueError("need at least one level")
    g = np.array([lv.degeneracy for lv in specs], dtype=float)
    e = np.array([lv.energy for lv in specs], dtype=float)
    arg = -e / (constants.k * t)
    arg -= arg.max()
    weights = g * np.exp(arg)
    return weights / weights.sum()


def landauer_heat(temperature: float, bits: float, constants: PhysicalConstants = CODATA2018) -> float:
    """Minimum heat in joules for erasing ``bits`` at ``temperature``."""
    t = _positive("temperature", temperature)
    if bits < 0:
        raise ValueError("bits must be non-negative")
    return constants.k * t * math.log(2.0) * float(bits)


def channel_capacity(bandwidth: float, signal_power: float, noise_power: float) -> float:
    """Noisy-channel limit ``B log2(1 + S/N)`` in bits per second."""
    b = _positive("bandwidth", bandwidth)
    if signal_power < 0:
        raise ValueError("signal power must be non-negative")
    n = _positive("noise power", noise_power)
    return b * math.log2(1.0 + signal_power / n)


def schwarzschild_radius(mass: float, constants: PhysicalConstants = CODATA2018) -> float:
    """Horizon radius ``2 G m / c**2`` in metres."""
    m = _positive("mass", mass)
    return 2.0 * constants.G * m / constants.c**2


def hawking_temperature(mass: float, constants: PhysicalConstants = CODATA2018) -> float:
    """Horizon temperature ``hbar c**3 / (8 pi k G m)`` in kelvin."""
    m = _positive("mass", mass)
    return constants.hbar * constants.c**3 / (8.0 * math.pi * constants.k * constants.G * m)


def evaporation_rate(mass: float, constants: PhysicalConstants = CODATA2018) -> float:
    """Mass-loss rate ``-hbar c**4 / (15360 pi G**2 m**2)`` in kg/s.

    The coefficient is 3 * 5 * 2**10.
    """
    m = _positive("mass", mass)
    return -constants.hbar * constants.c**4 / (15360.0 * math.pi * constants.G**2 * m * m)


def evaporation_lifetime(mass: float, constants: PhysicalConstants = CODATA2018) -> float:
    """Time in seconds to radiate the whole mass away at the rate above.

    Integrating ``dm/dt = -K/m**2`` from ``m`` to zero gives
    ``m**3 / (3 K) = 5120 pi G**2 m**3 / (hbar c**4)``.
    """
    m = _positive("mass", mass)
    return 5120.0 * math.pi * constants.G**2 * m**3 / (constants.hbar * constants.c**4)


def planck_length(constants: PhysicalConstants = CODATA2018) -> float:
    return math.sqrt(constants.hbar * constants.G / constants.c**3)


def bh_entropy(mass: float, constants: PhysicalConstants = CODATA2018) -> float:
    """Dimensionless horizon entropy ``S/k``: area over four Planck areas."""
    r = schwarzschild_radius(mass, constants)
    area = 4.0 * math.pi * r * r
    return area / (4.0 * planck_length(constants) ** 2)


def bh_entropy_bits(mass: float, constants: PhysicalConstants = CODATA2018) -> float:
    """Horizon entropy converted to bits (divide by ln 2)."""
    return bh_entropy(mass, constants) / math.log(2.0)


def collapse_density(mass: float, constants: PhysicalConstants = CODATA2018) -> float:
    """Mean density ``3 c**6 / (32 pi G**3 m**2)`` packing ``m`` inside its horizon.

    Identical to ``m`` over the volume of a sphere of horizon radius.
    """
    m = _positive("mass", mass)
    return 3.0 * constants.c**6 / (32.0 * math.pi * constants.G**3 * m * m)


@dataclass(frozen=True)
class FourEvent:
    """Spacetime event with coordinates in metres (time stored as ct)."""

    ct: float
    x: float
    y: float = 0.0
    z: float = 0.0


def interval_squared(event: FourEvent) -> float:
    """Invariant interval ``(ct)**2 - x**2 - y**2 - z**2``."""
    return event.ct**2 - event.x**2 - event.y**2 - event.z**2


def lorentz_boost(event: FourEvent, velocity: float, constants: PhysicalConstants = CODATA2018) -> FourEvent:
    """Boost along x into a frame moving at ``velocity`` (m/s, |v| < c)."""
    beta = velocity / constants.c
    if abs(beta) >= 1.0:
        raise ValueError(f"|velocity| must stay below c, got beta={beta!r}")
    gamma = 1.0 / math.sqrt(1.0 - beta * beta)
    return FourEvent(
        ct=gamma * (event.ct - beta * event.x),
        x=gamma * (event.x - beta * event.ct),
        y=event.y,
        z=event.z,
    )


def limits_table(
    mass: float | None = None,
    temperature: float | None = None,
    bits: float = 1.0,
    bandwidth: float | None = None,
    signal_power: float | None = None,
    noise_power: float | None = None,
    constants: PhysicalConstants = CODATA2018,
) -> dict[str, float]:
    """Labeled values for whichever inputs were supplied.

    Used by the command-line ``limits`` subcommand; keys are stable so the
    table can be serialized as JSON or printed as text.
    """
    out: dict[str, float] = {}
    if mass is not None:
        out["schwarzschild_radius_m"] = schwarzschild_radius(mass, constants)
        out["hawking_temperature_K"] = hawking_temperature(mass, constants)
        out["evaporation_rate_kg_per_s"] = evaporation_rate(mass, constants)
        out["evaporation_lifetime_s"] = evaporation_lifetime(mass, constants)
        out["evaporation_lifetime_yr"] = evaporation_lifetime(mass, constants) / SECONDS_PER_YEAR
        out["horizon_entropy_over_k"] = bh_entropy(mass, constants)
        out["horizon_entropy_bits"] = bh_entropy_bits(mass, constants)
        out["collapse_density_kg_per_m3"] = collapse_density(mass, constants)
    if temperature is not None:
        out["landauer_heat_J"] = landauer_heat(temperature, bits, constants)
    if bandwidth is not None:
        if signal_power is None or noise_power is None:
            raise ValueError("capacity needs bandwidth, signal power, and noise power")
        out["channel_capacity_bit_per_s"] = channel_capacity(bandwidth, signal_power, noise_power)
    if not out:
        raise ValueError("no inputs given; supply a mass, a temperature, or channel figures")
    return out
