"""Quantum causal states and the quantum epsilon-machine complexity C_q.

Each causal state ``j`` is encoded as the real unit vector with amplitude
``sqrt(T[j, r, k])`` on the basis label ``(r, k)`` (flattened to
``r * N + k``). C_q is the von Neumann entropy, in bits, of the stationary
mixture of these states. Two routes are provided: the full ``|Σ|N``
dimensional density operator, and the ``N x N`` weighted Gram matrix
``M_ij = sqrt(p_i p_j) <S_i|S_j>``, which has the same nonzero spectrum.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NotDensityOperator
from .linalg import symmetric_eigenvalues
from .machine import DEFAULT_MERGE_TOL, EpsilonMachine, merge_equivalent_states, stationary

NORM_TOL = 1e-12
DENSITY_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class QuantumCausalState:
    amplitudes: np.ndarray

    def __post_init__(self):
        a = np.array(self.amplitudes, dtype=float, copy=True).ravel()
        if a.min() < 0:
            raise ValueError("quantum causal state amplitudes must be non-negative")
        if abs(float(a @ a) - 1.0) > NORM_TOL:
            raise ValueError(f"quantum causal state has squared norm {float(a @ a)!r}")
        a.flags.writeable = False
        object.__setattr__(self, "amplitudes", a)

    def __len__(self) -> int:
        return self.amplitudes.size

    def overlap(self, other: "QuantumCausalState") -> float:
        if len(self) != len(other):
            raise DimensionMismatch(f"cannot overlap states of length {len(self)} and {len(other)}")
        return float(self.amplitudes @ other.amplitudes)


def quantum_causal_states(machine: EpsilonMachine) -> list[QuantumCausalState]:
    n = machine.num_states
    amps = np.sqrt(machine.transitions.reshape(n, -1))
    return [QuantumCausalState(row) for row in amps]


def _stack(states) -> np.ndarray:
    lengths = {len(s) for s in states}
    if len(lengths) > 1:
        raise DimensionMismatch(f"quantum causal states have differing lengths {sorted(lengths)}")
    return np.stack([s.amplitudes for s in states])


def gram(states) -> np.ndarray:
    """Overlap matrix ``G_ij = <S_i|S_j>``."""
    V = _stack(states)
    G = V @ V.T
    G = 0.5 * (G + G.T)
    np.fill_diagonal(G, 1.0)
    return G


def weighted_gram(states, weights) -> np.ndarray:
    s = np.sqrt(np.asarray(weights, dtype=float))
    return gram(states) * np.outer(s, s)


def density_operator(states, weights) -> np.ndarray:
    """Full mixed state ``rho = sum_i p_i |S_i><S_i|``."""
    V = _stack(states)
    return (V.T * np.asarray(weights, dtype=float)) @ V


def von_neumann_entropy(op) -> float:
    """Entropy ``-Tr rho log2 rho`` of a real symmetric density operator."""
    rho = np.asarray(op, dtype=float)
    tr = float(np.trace(rho))
    if abs(tr - 1.0) > DENSITY_TOL:
        raise NotDensityOperator(f"trace is {tr!r}, expected 1")
    w = symmetric_eigenvalues(rho)
    if w.size and w.min() < -DENSITY_TOL:
        raise NotDensityOperator(f"operator has negative eigenvalue {w.min()!r}")
    w = np.clip(w, 0.0, 1.0)
    nz = w[w > 0]
    h = float(-(nz * np.log2(nz)).sum())
    return 0.0 if h <= 0.0 else h


def quantum_complexity(machine: EpsilonMachine, tol: float = DEFAULT_MERGE_TOL, method: str = "gram") -> float:
    """C_q in bits, computed on the merged machine.

    ``method="gram"`` diagonalises the N x N weighted Gram matrix;
    ``method="full"`` diagonalises the |Σ|N x |Σ|N density operator.
    """
    merged = merge_equivalent_states(machine, tol)
    p = stationary(merged).weights
    states = quantum_causal_states(merged)
    if method == "gram":
        return von_neumann_entropy(weighted_gram(states, p))
    if method == "full":
        return von_neumann_entropy(density_operator(states, p))
    raise ValueError(f"unknown method {method!r}")
