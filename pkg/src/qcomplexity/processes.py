"""The perturbed coin and the thermalizing qubit cloud as epsilon-machines."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import Degenerate, OutOfRange
from .machine import Alphabet, EpsilonMachine


def _check_unit(name: str, value: float) -> float:
    value = float(value)
    if not 0.0 <= value <= 1.0:
        raise OutOfRange(f"{name} must lie in [0, 1], got {value!r}")
    return value


@dataclass(frozen=True)
class CoinParams:
    """Flip probabilities from heads (``q0``) and tails (``q1``)."""

    q0: float
    q1: float

    def __post_init__(self):
        object.__setattr__(self, "q0", _check_unit("q0", self.q0))
        object.__setattr__(self, "q1", _check_unit("q1", self.q1))

    @property
    def degenerate(self) -> bool:
        return self.q0 in (0.0, 1.0) or self.q1 in (0.0, 1.0)


@dataclass(frozen=True)
class CloudParams:
    """Thermalization ``lam``, interaction strength ``kappa`` (radians) and
    swap probability ``g``."""

    lam: float
    kappa: float
    g: float

    def __post_init__(self):
        object.__setattr__(self, "lam", _check_unit("lambda", self.lam))
        object.__setattr__(self, "g", _check_unit("g", self.g))
        kappa = float(self.kappa)
        if not 0.0 <= kappa <= math.pi / 2 + 1e-15:
            raise OutOfRange(f"kappa must lie in [0, pi/2], got {kappa!r}")
        object.__setattr__(self, "kappa", kappa)


def perturbed_coin_machine(params: CoinParams) -> EpsilonMachine:
    """Two-state unifilar machine; emitting ``r`` always moves to state ``r``."""
    q0, q1 = params.q0, params.q1
    T = np.zeros((2, 2, 2))
    T[0, 0, 0] = 1.0 - q0
    T[0, 1, 1] = q0
    T[1, 0, 0] = q1
    T[1, 1, 1] = 1.0 - q1
    return EpsilonMachine(T, Alphabet.binary(), name=f"coin(q0={q0:.17g},q1={q1:.17g})")


def coin_complexity_closed_form(params: CoinParams) -> float:
    """Binary entropy of ``q0 / (q0 + q1)``, in bits.

    Valid whenever the two coin states are distinct. On the line
    ``q0 + q1 = 1`` (which includes the fair coin) both states emit 1 with
    probability ``q0`` and share a successor, so the process is i.i.d., has a
    single causal state and complexity 0; this expression does not capture
    that collapse.
    """
    q0, q1 = params.q0, params.q1
    if q0 + q1 == 0.0:
        raise Degenerate("q0 + q1 = 0: the coin never flips")
    h = 0.0
    for x in (q0 / (q0 + q1), q1 / (q0 + q1)):
        if x > 0:
            h -= x * math.log2(x)
    return h


def cloud_rates(params: CloudParams) -> tuple[float, float]:
    """Flip probabilities ``(q0, q1)`` seen by the probing observer."""
    lam, g = params.lam, params.g
    s2 = math.sin(params.kappa) ** 2
    q0 = g * lam / 2 + (1 - g) * (lam / 2) * s2
    q1 = (1 - g) * (lam / 2) * s2 + g * (1 - lam / 2)
    return q0, q1


def cloud_machine(params: CloudParams) -> EpsilonMachine:
    q0, q1 = cloud_rates(params)
    m = perturbed_coin_machine(CoinParams(q0, q1))
    return EpsilonMachine(
        m.transitions, m.alphabet,
        name=f"cloud(lambda={params.lam:.17g},kappa={params.kappa:.17g},g={params.g:.17g})",
    )


def cnot_transition_matrix(lam: float, g: float) -> np.ndarray:
    """Row-stochastic state matrix of the cloud at maximal interaction
    (``kappa = pi/2``), written out term by term."""
    return np.array([
        [1 - lam / 2, lam / 2],
        [g * (1 - lam / 2) + (1 - g) * lam / 2, g * lam / 2 + (1 - g) * (1 - lam / 2)],
    ])


def cnot_stationary(lam: float, g: float) -> tuple[float, float]:
    """Closed-form stationary pair ``(p0, p1)`` at ``kappa = pi/2``."""
    den = 2 * (g + lam - g * lam)
    if den == 0.0:
        raise Degenerate("g + lambda - g*lambda = 0 (g = lambda = 0)")
    return (-2 * g * (lam - 1) + lam) / den, lam / den
