"""Density-matrix simulation of one probe step against the qubit cloud.

Two-qubit operators act on ``observer ⊗ environment``; every Kronecker
product and the partial trace follow that ordering.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidDensity, OutOfRange
from .processes import CloudParams

DENSITY_TOL = 1e-10

I2 = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PROJ0 = np.diag([1, 0]).astype(complex)
PROJ1 = np.diag([0, 1]).astype(complex)
SWAP = np.array(
    [[1, 0, 0, 0],
     [0, 0, 1, 0],
     [0, 1, 0, 0],
     [0, 0, 0, 1]], dtype=complex)


def check_density(rho: np.ndarray, tol: float = DENSITY_TOL) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise InvalidDensity(f"density matrix must be square, got {rho.shape}")
    if not np.all(np.isfinite(rho)):
        raise InvalidDensity("density matrix has non-finite entries")
    if np.max(np.abs(rho - rho.conj().T)) > tol:
        raise InvalidDensity("density matrix is not Hermitian")
    if abs(np.trace(rho) - 1) > tol:
        raise InvalidDensity(f"density matrix has trace {np.trace(rho)!r}")
    if np.linalg.eigvalsh(rho).min() < -tol:
        raise InvalidDensity("density matrix is not positive semidefinite")
    return rho


def env_qubit(lam: float) -> np.ndarray:
    """Cloud qubit ``(1 - lam)|0><0| + (lam/2) I``."""
    if not 0.0 <= lam <= 1.0:
        raise OutOfRange(f"lambda must lie in [0, 1], got {lam!r}")
    return np.diag([1 - lam / 2, lam / 2]).astype(complex)


def x_rotation(kappa: float) -> np.ndarray:
    """``exp(i kappa X) = cos(kappa) I + i sin(kappa) X``."""
    return math.cos(kappa) * I2 + 1j * math.sin(kappa) * PAULI_X


def cx_kappa_unitary(kappa: float) -> np.ndarray:
    """Environment-controlled ``exp(i kappa X)`` on the observer qubit."""
    if not 0.0 <= kappa <= math.pi / 2 + 1e-15:
        raise OutOfRange(f"kappa must lie in [0, pi/2], got {kappa!r}")
    return np.kron(I2, PROJ0) + np.kron(x_rotation(kappa), PROJ1)


def pswap_channel(rho: np.ndarray, g: float) -> np.ndarray:
    """Swap the two qubits with probability ``g``."""
    rho = check_density(rho)
    if rho.shape != (4, 4):
        raise InvalidDensity(f"pSWAP acts on two qubits, got shape {rho.shape}")
    if not 0.0 <= g <= 1.0:
        raise OutOfRange(f"g must lie in [0, 1], got {g!r}")
    return g * SWAP @ rho @ SWAP.conj().T + (1 - g) * rho


def partial_trace_env(rho: np.ndarray) -> np.ndarray:
    """Reduced observer state of a two-qubit density matrix."""
    rho = check_density(rho)
    if rho.shape != (4, 4):
        raise InvalidDensity(f"expected a 4x4 density matrix, got shape {rho.shape}")
    return np.einsum("iaja->ij", rho.reshape(2, 2, 2, 2))


@dataclass(frozen=True)
class ObserverStep:
    last_outcome: int
    params: CloudParams

    def __post_init__(self):
        if self.last_outcome not in (0, 1):
            raise ValueError(f"last outcome must be 0 or 1, got {self.last_outcome!r}")


def observer_state(step: ObserverStep) -> np.ndarray:
    """Observer's reduced state just before the Z measurement."""
    k, p = step.last_outcome, step.params
    ket = np.zeros(2, dtype=complex)
    ket[k] = 1
    rho = np.kron(np.outer(ket, ket.conj()), env_qubit(p.lam))
    U = cx_kappa_unitary(p.kappa)
    rho = U @ rho @ U.conj().T
    rho = pswap_channel(rho, p.g)
    return partial_trace_env(rho)


def step_flip_probability(step: ObserverStep) -> float:
    """Probability that the next outcome differs from ``step.last_outcome``."""
    rho = observer_state(step)
    return float(rho[1 - step.last_outcome, 1 - step.last_outcome].real)


def oracle_rates(params: CloudParams) -> tuple[float, float]:
    return (
        step_flip_probability(ObserverStep(0, params)),
        step_flip_probability(ObserverStep(1, params)),
    )


def oracle_transition_matrix(params: CloudParams) -> np.ndarray:
    """Row-stochastic outcome-to-outcome matrix from the simulation."""
    rows = []
    for k in (0, 1):
        rho = observer_state(ObserverStep(k, params))
        rows.append(np.real(np.diag(rho)))
    return np.array(rows)
