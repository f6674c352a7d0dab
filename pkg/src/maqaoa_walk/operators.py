"""Operator vocabulary for ma-QAOA on n qubits.

Qubits are numbered from 1 and qubit 1 is the most significant bit, so the
basis state |q1 q2 ... qn> has index sum(q_i * 2**(n - i)).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, NamedTuple

import numpy as np

from .config import MAX_QUBITS
from .errors import MaqaoaError

_SINGLE = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def check_register(n: int) -> int:
    if not isinstance(n, (int, np.integer)) or not 1 <= n <= MAX_QUBITS:
        raise MaqaoaError(f"qubit count must be an integer in [1, {MAX_QUBITS}], got {n!r}")
    return int(n)


def check_qubit(q: int, n: int) -> int:
    if not isinstance(q, (int, np.integer)) or not 1 <= q <= n:
        raise MaqaoaError(f"qubit {q!r} out of range [1, {n}]")
    return int(q)


def qubit_mask(q: int, n: int) -> int:
    """Integer with only qubit q's bit set."""
    return 1 << (n - check_qubit(q, n))


def bit(z: int, q: int, n: int) -> int:
    return (z >> (n - q)) & 1


def hamming_weight(z: int, qubits: Iterable[int], n: int) -> int:
    return sum(bit(z, q, n) for q in qubits)


def is_hypercube_edge(u: int, w: int, n: int) -> bool:
    d = u ^ w
    return 0 <= u < 2**n and 0 <= w < 2**n and d != 0 and d & (d - 1) == 0


def edge_direction(u: int, w: int, n: int) -> int:
    """The qubit flipped along hypercube edge (u, w)."""
    return n - (u ^ w).bit_length() + 1


def hypercube_edges(n: int, directions: Iterable[int] | None = None) -> list[tuple[int, int]]:
    """Sorted (u, w) pairs, u < w, differing in exactly one of ``directions``."""
    n = check_register(n)
    qs = range(1, n + 1) if directions is None else [check_qubit(q, n) for q in directions]
    edges = []
    for q in qs:
        m = qubit_mask(q, n)
        edges.extend((u, u | m) for u in range(2**n) if not u & m)
    return sorted(edges)


@dataclass(frozen=True)
class PauliString:
    letters: str
    coefficient: float = 1.0

    def __post_init__(self):
        if not self.letters or any(c not in _SINGLE for c in self.letters):
            raise MaqaoaError(f"invalid Pauli letters {self.letters!r}")
        check_register(len(self.letters))
        object.__setattr__(self, "coefficient", float(self.coefficient))

    @property
    def n(self) -> int:
        return len(self.letters)

    @classmethod
    def from_qubits(cls, n: int, coefficient: float = 1.0, **letters_at: Iterable[int]) -> "PauliString":
        """Build e.g. X on qubit 1 and Z on qubit 3 as ``from_qubits(3, X=[1], Z=[3])``."""
        chars = ["I"] * check_register(n)
        for letter, qubits in letters_at.items():
            for q in qubits:
                chars[check_qubit(q, n) - 1] = letter
        return cls("".join(chars), coefficient)

    def unit(self) -> "PauliString":
        return PauliString(self.letters, 1.0)

    def __str__(self) -> str:
        return f"{self.coefficient:g}*{self.letters}"


def pauli_matrix(p: PauliString) -> np.ndarray:
    return p.coefficient * reduce(np.kron, (_SINGLE[c] for c in p.letters))


def pauli_exp(p: PauliString, theta: float) -> np.ndarray:
    """exp(-i theta P) in closed form; any coefficient is folded into theta."""
    angle = theta * p.coefficient
    unit = pauli_matrix(p.unit())
    return np.cos(angle) * np.eye(unit.shape[0]) - 1j * np.sin(angle) * unit


def _check_index(z: int, n: int) -> int:
    n = check_register(n)
    if not isinstance(z, (int, np.integer)) or not 0 <= z < 2**n:
        raise MaqaoaError(f"basis index {z!r} out of range for {n} qubits")
    return int(z)


def projector_c_term(z: int, n: int) -> np.ndarray:
    """The clause |z><z|."""
    z = _check_index(z, n)
    c = np.zeros((2**n, 2**n), dtype=complex)
    c[z, z] = 1.0
    return c


def c_term_z_expansion(z: int, n: int) -> list[PauliString]:
    """|z><z| = prod_i ((-1)^{z_i} Z_i + I_i) / 2 expanded into 2^n Z/I strings."""
    z = _check_index(z, n)
    signs = [(-1) ** bit(z, q, n) for q in range(1, n + 1)]
    terms = []
    for letters in itertools.product("IZ", repeat=n):
        coeff = 1.0 / 2**n
        for s, c in zip(signs, letters):
            if c == "Z":
                coeff *= s
        terms.append(PauliString("".join(letters), coeff))
    return terms


def maxcut_c(edges: Iterable[tuple[int, int]], n: int) -> np.ndarray:
    """C = 1/2 sum_{ij} (I - Z_i Z_j) for a simple graph on the qubits."""
    n = check_register(n)
    seen = set()
    c = np.zeros((2**n, 2**n), dtype=complex)
    for i, j in edges:
        check_qubit(i, n)
        check_qubit(j, n)
        if i == j:
            raise MaqaoaError(f"self-pair ({i}, {j}) is not a graph edge")
        key = frozenset((i, j))
        if key in seen:
            raise MaqaoaError(f"duplicate edge ({i}, {j})")
        seen.add(key)
        zz = pauli_matrix(PauliString.from_qubits(n, Z=[i, j]))
        c += 0.5 * (np.eye(2**n) - zz)
    return c


def controlled_edge_operator(flip: int, control: int, n: int) -> np.ndarray:
    """1/2 (X_flip - X_flip Z_control): edges flipping ``flip`` where ``control`` is 1."""
    n = check_register(n)
    check_qubit(flip, n)
    check_qubit(control, n)
    if flip == control:
        raise MaqaoaError(f"flip and control qubit coincide ({flip})")
    x = pauli_matrix(PauliString.from_qubits(n, X=[flip]))
    xz = pauli_matrix(PauliString.from_qubits(n, X=[flip], Z=[control]))
    return 0.5 * (x - xz)


class BSummand(NamedTuple):
    """One term of B = 1/2 (sum_v X_v - sum_v sum_{j != v} X_v Z_j)."""

    pauli: PauliString
    flip: int
    control: int | None  # None for the plain X_v terms


def b_operator_summands(n: int) -> list[BSummand]:
    n = check_register(n)
    out = [BSummand(PauliString.from_qubits(n, 0.5, X=[v]), v, None) for v in range(1, n + 1)]
    for v in range(1, n + 1):
        for j in range(1, n + 1):
            if j != v:
                out.append(BSummand(PauliString.from_qubits(n, -0.5, X=[v], Z=[j]), v, j))
    return out


def hypercube_adjacency(directions: Iterable[int], n: int) -> np.ndarray:
    n = check_register(n)
    directions = sorted(set(directions))
    if not directions:
        raise MaqaoaError("hypercube needs at least one direction")
    return sum(pauli_matrix(PauliString.from_qubits(n, X=[q])) for q in directions)
