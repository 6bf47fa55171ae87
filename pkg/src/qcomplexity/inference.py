"""Finite-order reconstruction of epsilon-machines from observed symbols.

Causal states are recovered as classes of length-``L`` histories whose
next-symbol and successor-history distributions agree within a tolerance.
Only Markov order ``L`` structure is found; longer-range state splitting is
not attempted.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from .errors import InsufficientData, TooShort
from .machine import (
    Alphabet,
    EpsilonMachine,
    SymbolSequence,
    equivalence_classes,
    quotient,
    statistical_complexity,
)
from .quantum import quantum_complexity

History = tuple[int, ...]


@dataclass(frozen=True, eq=False)
class EmpiricalModel:
    order: int
    alphabet: Alphabet
    counts: dict[tuple[History, int], int]
    totals: dict[History, int]

    @property
    def histories(self) -> list[History]:
        return sorted(self.totals)

    def conditional(self, history: History) -> np.ndarray:
        """Maximum-likelihood next-symbol distribution after ``history``."""
        n = self.totals[history]
        return np.array([self.counts.get((history, s), 0) / n for s in range(len(self.alphabet))])

    def default_merge_tol(self) -> float:
        """Three binomial standard errors of the noisiest conditional estimate."""
        worst = 0.0
        for h in self.totals:
            p = self.conditional(h)
            worst = max(worst, float(np.max(p * (1 - p))) / self.totals[h])
        return 3.0 * float(np.sqrt(worst))


def estimate_conditionals(seq: SymbolSequence, order: int = 1) -> EmpiricalModel:
    if order < 1:
        raise ValueError("order must be at least 1")
    s = seq.symbols.tolist()
    if len(s) <= order:
        raise TooShort(f"sequence of length {len(s)} is too short for order {order}")
    counts: Counter = Counter()
    for t in range(order, len(s)):
        counts[(tuple(s[t - order:t]), s[t])] += 1
    totals: Counter = Counter()
    for (h, _), c in counts.items():
        totals[h] += c
    return EmpiricalModel(order, seq.alphabet, dict(counts), dict(totals))


@dataclass(frozen=True, eq=False)
class Reconstruction:
    machine: EpsilonMachine
    state_of: dict[History, int]
    """Causal-state function: history -> state index."""

    def __iter__(self):
        return iter((self.machine, self.state_of))


def reconstruct_machine(model: EmpiricalModel, merge_tol: float | None = None, min_count: int = 100) -> Reconstruction:
    """Quotient the history-level machine by next-step equivalence.

    ``merge_tol=None`` uses :meth:`EmpiricalModel.default_merge_tol`.
    Histories never observed are left out.
    """
    histories = model.histories
    for h in histories:
        if model.totals[h] < min_count:
            raise InsufficientData(
                f"history {h} seen {model.totals[h]} times, fewer than min_count={min_count}"
            )
    index = {h: i for i, h in enumerate(histories)}
    nsym = len(model.alphabet)
    T = np.zeros((len(histories), nsym, len(histories)))
    for (h, s), c in model.counts.items():
        succ = h[1:] + (s,)
        # a history seen only at the very end of the sequence has no row
        if succ in index:
            T[index[h], s, index[succ]] = c
    mass = T.sum(axis=(1, 2))
    if np.any(mass == 0):
        h = histories[int(np.argmin(mass))]
        raise InsufficientData(f"history {h} has no continuation into an observed history")
    T /= mass[:, None, None]
    full = EpsilonMachine(T, model.alphabet, name=f"reconstructed(order={model.order})")
    tol = model.default_merge_tol() if merge_tol is None else merge_tol
    labels = equivalence_classes(full, tol)
    weights = [model.totals[h] for h in histories]
    machine = quotient(full, labels, weights) if labels.max() + 1 < len(histories) else full
    return Reconstruction(machine, {h: int(labels[index[h]]) for h in histories})


def empirical_complexities(
    seq: SymbolSequence, order: int = 1, merge_tol: float | None = None, min_count: int = 100
) -> tuple[float, float]:
    """Plug-in ``(C_mu, C_q)`` estimates from an observed sequence."""
    machine, _ = reconstruct_machine(estimate_conditionals(seq, order), merge_tol, min_count)
    # states were already merged at merge_tol; no further merging
    return statistical_complexity(machine, 0.0), quantum_complexity(machine, 0.0)
