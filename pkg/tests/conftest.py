import math
from pathlib import Path

import numpy as np
import pytest

from maqaoa_walk.maqaoa import BetaLayer, GammaLayer, Schedule
from maqaoa_walk.operators import hypercube_edges

FIXTURES = Path(__file__).parent / "fixtures"

_ACCEPTANCE_LINES: list[str] = []

PI = math.pi

# Worked two-qubit schedule for H on qubit 1, T on qubit 2, CX(1 -> 2), written out by hand.
WORKED_SCHEDULE = Schedule(
    2,
    (
        (GammaLayer(2, (PI, PI, PI / 2, PI / 2)), BetaLayer(2, {(0, 2): PI / 4, (1, 3): PI / 4})),
        (GammaLayer(2, (PI, PI, PI / 2, PI / 2)), BetaLayer.zeros(2)),
        (GammaLayer(2, (0, 7 * PI / 4, 0, 7 * PI / 4)), BetaLayer(2, {(2, 3): 3 * PI / 2})),
        (GammaLayer(2, (0, 0, PI / 2, PI / 2)), BetaLayer.zeros(2)),
    ),
)


def random_hermitian(rng: np.random.Generator, n: int, scale: float = 1.0) -> np.ndarray:
    """Hermitian 2^n x 2^n matrix with real and imaginary parts drawn from [-scale, scale]."""
    dim = 2**n
    m = rng.uniform(-scale, scale, (dim, dim)) + 1j * rng.uniform(-scale, scale, (dim, dim))
    return (m + m.conj().T) / 2


def random_schedule(rng: np.random.Generator, n: int, depth: int, density: float = 0.5) -> Schedule:
    """Random angles in [0, 2 pi) on every basis state and on a random subset of hypercube edges."""
    edges = hypercube_edges(n)
    layers = []
    for _ in range(depth):
        g = GammaLayer(n, tuple(rng.uniform(0, 2 * math.pi, 2**n)))
        chosen = [e for e in edges if rng.random() < density]
        layers.append((g, BetaLayer(n, {e: rng.uniform(0, 2 * math.pi) for e in chosen})))
    return Schedule(n, tuple(layers))


@pytest.fixture
def fixtures() -> Path:
    return FIXTURES


@pytest.fixture
def acceptance_report():
    """Record one PASS/FAIL line per acceptance criterion for the terminal summary."""

    def record(label: str, passed: bool, detail: str) -> None:
        _ACCEPTANCE_LINES.append(f"[{'PASS' if passed else 'FAIL'}] {label}: {detail}")

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
