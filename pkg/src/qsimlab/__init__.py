"""Desk-scale quantum simulation: amplitude vectors, lattice path sums,
and closed-form physical limits, with a reproducible batch CLI."""

from __future__ import annotations

__version__ = "0.1.0"

from . import circuits, entangle, gates, limits, measure, pathint, statevec
from .statevec import StateVector, from_bloch, inner, new_basis_state, norm, tensor

__all__ = [
    "__version__",
    "circuits",
    "entangle",
    "gates",
    "limits",
    "measure",
    "pathint",
    "statevec",
    "StateVector",
    "from_bloch",
    "inner",
    "new_basis_state",
    "norm",
    "tensor",
]
