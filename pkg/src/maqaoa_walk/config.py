"""Numerical tolerances shared by every module."""

from __future__ import annotations

from dataclasses import dataclass

MAX_QUBITS = 12


@dataclass(frozen=True)
class Tolerances:
    hermitian: float = 1e-12
    unitary: float = 1e-10
    norm: float = 1e-10
    # Taylor terms are dropped once smaller than this fraction of the partial sum.
    series_term: float = 1e-16
    spectral: float = 1e-10
    # Angles closer than this to a multiple of pi/4 print symbolically.
    pi_fraction: float = 1e-12


DEFAULT = Tolerances()
