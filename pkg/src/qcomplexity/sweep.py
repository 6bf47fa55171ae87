"""Parameter sweeps, peak location and the oracle consistency check."""
from __future__ import annotations

import csv
import io
import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import circuit
from .errors import FlatFunction, NonUniqueStationary
from .machine import DEFAULT_MERGE_TOL, stationary, statistical_complexity
from .processes import (
    CloudParams,
    CoinParams,
    cloud_machine,
    cloud_rates,
    cnot_stationary,
    cnot_transition_matrix,
    perturbed_coin_machine,
)
from .quantum import quantum_complexity

COIN_COLUMNS = ("q", "c_mu", "c_q")
CLOUD_COLUMNS = ("lambda", "kappa", "g", "q0", "q1", "p0", "p1", "c_mu", "c_q")
PEAK_GRID_STEP = 0.01
FLAT_LEVEL = 1e-12
INV_PHI = (math.sqrt(5) - 1) / 2

DEFAULT_ORACLE_LAMBDAS = tuple(i / 10 for i in range(11))
DEFAULT_ORACLE_KAPPAS = tuple(i * math.pi / 8 for i in range(5))
DEFAULT_ORACLE_GS = (0.0, 0.25, 0.5, 0.75, 1.0)


@dataclass(frozen=True)
class SweepSpec:
    mode: str
    x_min: float = 0.0
    x_max: float = 1.0
    steps: int = 101
    kappas: tuple[float, ...] = (math.pi / 2,)
    gs: tuple[float, ...] = (0.25, 0.5, 0.75)
    merge_tol: float = DEFAULT_MERGE_TOL

    def __post_init__(self):
        if self.mode not in ("coin", "cloud"):
            raise ValueError(f"mode must be 'coin' or 'cloud', got {self.mode!r}")
        if self.steps < 2:
            raise ValueError("steps must be at least 2")
        if not 0.0 <= self.x_min <= self.x_max <= 1.0:
            raise ValueError(f"range [{self.x_min}, {self.x_max}] must lie within [0, 1]")
        if self.merge_tol < 0:
            raise ValueError("merge tolerance must be non-negative")
        if self.mode == "cloud":
            if not self.kappas or not self.gs:
                raise ValueError("cloud sweep needs at least one kappa and one g")
            for k in self.kappas:
                if not 0.0 <= k <= math.pi / 2:
                    raise ValueError(f"kappa {k!r} outside [0, pi/2]")
            for g in self.gs:
                if not 0.0 <= g <= 1.0:
                    raise ValueError(f"g {g!r} outside [0, 1]")

    def grid(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.steps)


def _complexities(machine, merge_tol):
    try:
        return statistical_complexity(machine, merge_tol), quantum_complexity(machine, merge_tol)
    except NonUniqueStationary:
        return math.nan, math.nan


def coin_sweep(spec: SweepSpec) -> list[dict]:
    """Symmetric coin ``q0 = q1 = q`` over the grid.

    ``q = 0`` (a frozen coin) has no unique stationary distribution and is
    reported with ``nan`` complexities.
    """
    rows = []
    for q in spec.grid():
        c_mu, c_q = _complexities(perturbed_coin_machine(CoinParams(q, q)), spec.merge_tol)
        rows.append({"q": float(q), "c_mu": c_mu, "c_q": c_q})
    return rows


def cloud_row(params: CloudParams, merge_tol: float = DEFAULT_MERGE_TOL) -> dict:
    q0, q1 = cloud_rates(params)
    machine = cloud_machine(params)
    try:
        p0, p1 = stationary(machine).weights
    except NonUniqueStationary:
        p0 = p1 = math.nan
    c_mu, c_q = _complexities(machine, merge_tol)
    return {
        "lambda": params.lam, "kappa": params.kappa, "g": params.g,
        "q0": q0, "q1": q1, "p0": float(p0), "p1": float(p1),
        "c_mu": c_mu, "c_q": c_q,
    }


def cloud_sweep(spec: SweepSpec) -> list[dict]:
    """Rows over the (lambda, kappa, g) grid in lexicographic order."""
    return [
        cloud_row(CloudParams(float(lam), kappa, g), spec.merge_tol)
        for lam, kappa, g in itertools.product(spec.grid(), spec.kappas, spec.gs)
    ]


def format_value(x) -> str:
    return f"{x:.12g}"


def write_csv(rows: list[dict], columns, stream=None) -> str:
    """Write rows as LF-terminated CSV with 12 significant digits.

    Returns the text; also writes it to ``stream`` if given.
    """
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_value(row[c]) for c in columns])
    text = buf.getvalue()
    if stream is not None:
        stream.write(text)
    return text


@dataclass(frozen=True)
class Peak:
    lam: float
    c_q: float
    refined: bool


def _cq_or_nan(lam, kappa, g, merge_tol):
    try:
        return quantum_complexity(cloud_machine(CloudParams(lam, kappa, g)), merge_tol)
    except NonUniqueStationary:
        return math.nan


def golden_section_max(f, a: float, b: float, tol: float, max_iter: int = 200):
    """Maximise a unimodal ``f`` on ``[a, b]`` until the bracket is ``<= tol``."""
    x1 = b - INV_PHI * (b - a)
    x2 = a + INV_PHI * (b - a)
    f1, f2 = f(x1), f(x2)
    for _ in range(max_iter):
        if b - a <= tol:
            break
        if f1 >= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - INV_PHI * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + INV_PHI * (b - a)
            f2 = f(x2)
    return (x1, f1) if f1 >= f2 else (x2, f2)


def find_peak(g: float, kappa: float, tol: float = 1e-6, merge_tol: float = DEFAULT_MERGE_TOL) -> Peak:
    """Thermalization value maximising C_q for fixed ``(kappa, g)``.

    Scans lambda on a 0.01 grid, then refines around the best grid point by
    golden-section search. If the refined value falls below the grid
    maximum (the curve is not unimodal there) the grid point is returned.
    """
    CloudParams(0.0, kappa, g)  # range validation
    n = int(round(1 / PEAK_GRID_STEP))
    lams = np.linspace(0.0, 1.0, n + 1)
    vals = np.array([_cq_or_nan(float(x), kappa, g, merge_tol) for x in lams])
    if np.all(np.isnan(vals)) or np.nanmax(vals) <= FLAT_LEVEL:
        raise FlatFunction(f"C_q vanishes on the whole lambda grid for kappa={kappa!r}, g={g!r}")
    i = int(np.nanargmax(vals))
    lo, hi = lams[max(i - 1, 0)], lams[min(i + 1, n)]

    def f(x):
        v = _cq_or_nan(x, kappa, g, merge_tol)
        return -math.inf if math.isnan(v) else v

    x, fx = golden_section_max(f, float(lo), float(hi), tol)
    if fx < vals[i] - FLAT_LEVEL:
        return Peak(float(lams[i]), float(vals[i]), refined=False)
    return Peak(float(x), float(fx), refined=True)


@dataclass(frozen=True)
class OracleReport:
    points: int
    max_deviation: float
    cnot_points: int
    cnot_max_deviation: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.max_deviation <= self.tol and self.cnot_max_deviation <= self.tol

    def lines(self) -> list[str]:
        out = [
            f"grid points: {self.points}",
            f"max |oracle - rate formula|: {self.max_deviation:.3e}",
        ]
        if self.cnot_points:
            out += [
                f"kappa=pi/2 points: {self.cnot_points}",
                f"max |oracle - kappa=pi/2 closed forms|: {self.cnot_max_deviation:.3e}",
            ]
        out += [f"tolerance: {self.tol:.3e}", "PASS" if self.passed else "FAIL"]
        return out


def oracle_check(
    lambdas=DEFAULT_ORACLE_LAMBDAS,
    kappas=DEFAULT_ORACLE_KAPPAS,
    gs=DEFAULT_ORACLE_GS,
    tol: float = 1e-10,
    perturb_q0: float = 0.0,
) -> OracleReport:
    """Compare simulated flip probabilities against the closed-form rates.

    Grid points whose kappa is exactly ``math.pi / 2`` are additionally
    checked against the maximal-interaction transition matrix and, where
    defined, its closed-form stationary pair. ``perturb_q0`` shifts the
    formula's q0 and exists only to exercise the comparator.
    """
    worst = 0.0
    cnot_worst = 0.0
    points = cnot_points = 0
    for lam, kappa, g in itertools.product(lambdas, kappas, gs):
        params = CloudParams(lam, kappa, g)
        q0, q1 = cloud_rates(params)
        q0 += perturb_q0
        for k, q in ((0, q0), (1, q1)):
            flip = circuit.step_flip_probability(circuit.ObserverStep(k, params))
            worst = max(worst, abs(flip - q))
            points += 1
        if kappa == math.pi / 2:
            cnot_points += 1
            sim = circuit.oracle_transition_matrix(params)
            cnot_worst = max(cnot_worst, float(np.max(np.abs(sim - cnot_transition_matrix(lam, g)))))
            if g + lam - g * lam > 0:
                p = stationary(cloud_machine(params)).weights
                cnot_worst = max(cnot_worst, float(np.max(np.abs(p - cnot_stationary(lam, g)))))
    return OracleReport(points, worst, cnot_points, cnot_worst, tol)
