"""Classical epsilon-machines: representation, state merging, stationary
distributions, statistical complexity and trajectory sampling.

A machine over ``N`` causal states and alphabet ``Σ`` is stored as a dense
tensor ``T[j, r, k] = P(next state k, emit r | current state j)``.
"""
from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass, field
from itertools import accumulate
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse.csgraph import connected_components

from .errors import InvalidMachine, InvalidStart, NonUniqueStationary

ROW_TOL = 1e-12
STATIONARY_RESIDUAL = 1e-10
DEFAULT_MERGE_TOL = 1e-9
RNG_ALGORITHM = "numpy.random.PCG64"


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float, copy=True)
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class Alphabet:
    symbols: tuple[str, ...]

    def __post_init__(self):
        symbols = tuple(str(s) for s in self.symbols)
        if not symbols:
            raise ValueError("alphabet must contain at least one symbol")
        if len(set(symbols)) != len(symbols):
            raise ValueError(f"duplicate symbols in alphabet {symbols!r}")
        object.__setattr__(self, "symbols", symbols)

    @classmethod
    def binary(cls) -> "Alphabet":
        return cls(("0", "1"))

    @classmethod
    def of_size(cls, n: int) -> "Alphabet":
        return cls(tuple(str(i) for i in range(n)))

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def index(self, symbol: str) -> int:
        try:
            return self.symbols.index(symbol)
        except ValueError:
            raise ValueError(f"symbol {symbol!r} not in alphabet {self.symbols!r}") from None


@dataclass(frozen=True, eq=False)
class EpsilonMachine:
    """Immutable edge-labelled Markov chain over causal states.

    Parameters
    ----------
    transitions : array_like, shape (N, |Σ|, N)
        ``transitions[j, r, k]`` is the probability that state ``j`` emits
        symbol ``r`` and moves to state ``k``.
    alphabet : Alphabet, optional
        Defaults to ``0, 1, ..., |Σ|-1``.
    name : str
        Free-form identifier carried into sampled sequences.
    """

    transitions: np.ndarray
    alphabet: Alphabet | None = None
    name: str = ""

    def __post_init__(self):
        T = np.asarray(self.transitions, dtype=float)
        if T.ndim != 3 or T.shape[0] < 1 or T.shape[0] != T.shape[2] or T.shape[1] < 1:
            raise InvalidMachine(f"transition tensor must have shape (N, |Σ|, N), got {T.shape}")
        if not np.all(np.isfinite(T)):
            raise InvalidMachine("transition tensor has non-finite entries")
        if T.min() < 0.0 or T.max() > 1.0 + ROW_TOL:
            raise InvalidMachine("transition probabilities must lie in [0, 1]")
        rows = T.sum(axis=(1, 2))
        bad = np.abs(rows - 1.0) > ROW_TOL
        if bad.any():
            j = int(np.argmax(bad))
            raise InvalidMachine(f"outgoing probabilities of state {j} sum to {rows[j]!r}, not 1")
        alphabet = self.alphabet if self.alphabet is not None else Alphabet.of_size(T.shape[1])
        if len(alphabet) != T.shape[1]:
            raise InvalidMachine(f"alphabet has {len(alphabet)} symbols but tensor has {T.shape[1]}")
        object.__setattr__(self, "transitions", _frozen(T))
        object.__setattr__(self, "alphabet", alphabet)

    @property
    def num_states(self) -> int:
        return self.transitions.shape[0]

    @property
    def num_symbols(self) -> int:
        return self.transitions.shape[1]

    @property
    def state_matrix(self) -> np.ndarray:
        """Row-stochastic state-to-state matrix, symbols marginalised out."""
        return self.transitions.sum(axis=1)

    @property
    def is_unifilar(self) -> bool:
        return bool(np.all((self.transitions > 0).sum(axis=2) <= 1))

    def __repr__(self) -> str:
        label = f" {self.name!r}" if self.name else ""
        return f"<EpsilonMachine{label} states={self.num_states} alphabet={self.alphabet.symbols}>"

    def to_text(self) -> str:
        """Debug listing: one ``j r k probability`` line per nonzero entry."""
        lines = [
            f"# states {self.num_states}",
            "# alphabet " + " ".join(self.alphabet.symbols),
        ]
        for j, r, k in zip(*np.nonzero(self.transitions)):
            lines.append(f"{j} {r} {k} {self.transitions[j, r, k]:.17g}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str, name: str = "") -> "EpsilonMachine":
        num_states = None
        alphabet = None
        records = []
        for raw in text.splitlines():
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                key, _, rest = line[1:].strip().partition(" ")
                if key == "states":
                    num_states = int(rest)
                elif key == "alphabet":
                    alphabet = Alphabet(tuple(rest.split()))
                continue
            j, r, k, prob = line.split()
            records.append((int(j), int(r), int(k), float(prob)))
        if num_states is None:
            num_states = 1 + max(max(j, k) for j, _, k, _ in records)
        if alphabet is None:
            alphabet = Alphabet.of_size(1 + max(r for _, r, _, _ in records))
        T = np.zeros((num_states, len(alphabet), num_states))
        for j, r, k, prob in records:
            T[j, r, k] = prob
        return cls(T, alphabet, name)


@dataclass(frozen=True, eq=False)
class StationaryDistribution:
    weights: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        if w.ndim != 1 or w.size < 1:
            raise ValueError("stationary weights must be a non-empty vector")
        if not np.all(np.isfinite(w)) or w.min() < 0.0:
            raise ValueError("stationary weights must be finite and non-negative")
        if abs(w.sum() - 1.0) > ROW_TOL:
            raise ValueError(f"stationary weights sum to {w.sum()!r}, not 1")
        object.__setattr__(self, "weights", _frozen(w))

    def __len__(self) -> int:
        return self.weights.size

    def __getitem__(self, i):
        return self.weights[i]

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.weights, dtype=dtype)


@dataclass(frozen=True, eq=False)
class SymbolSequence:
    """Sampled or observed symbols, stored as alphabet indices."""

    symbols: np.ndarray
    alphabet: Alphabet = field(default_factory=Alphabet.binary)
    seed: int | None = None
    source: str = ""
    rng: str = ""

    def __post_init__(self):
        s = np.asarray(self.symbols, dtype=np.int64).ravel()
        if s.size and (s.min() < 0 or s.max() >= len(self.alphabet)):
            raise ValueError("sequence contains indices outside the alphabet")
        s = s.copy()
        s.flags.writeable = False
        object.__setattr__(self, "symbols", s)

    def __len__(self) -> int:
        return self.symbols.size

    def __str__(self) -> str:
        syms = self.alphabet.symbols
        return "".join(syms[i] for i in self.symbols)

    @classmethod
    def from_text(cls, text: str, alphabet: Alphabet | None = None, source: str = "") -> "SymbolSequence":
        """Parse a single line of symbol characters (trailing newline allowed)."""
        line = text.rstrip("\r\n")
        if "\n" in line:
            raise ValueError("expected a single line of symbols")
        if alphabet is None:
            alphabet = Alphabet(tuple(sorted(set(line)))) if line else Alphabet.binary()
        lookup = {s: i for i, s in enumerate(alphabet.symbols)}
        try:
            idx = [lookup[c] for c in line]
        except KeyError as exc:
            raise ValueError(f"symbol {exc.args[0]!r} not in alphabet {alphabet.symbols!r}") from None
        return cls(np.array(idx, dtype=np.int64), alphabet, source=source)


def _as_weights(dist) -> np.ndarray:
    if isinstance(dist, StationaryDistribution):
        return dist.weights
    return StationaryDistribution(dist).weights


def closed_classes(P: np.ndarray) -> list[np.ndarray]:
    """Closed communicating classes of a row-stochastic matrix."""
    n, labels = connected_components(P > 0, directed=True, connection="strong")
    leaves = np.ones(n, dtype=bool)
    src, dst = np.nonzero(P > 0)
    leaves[labels[src][labels[src] != labels[dst]]] = False
    return [np.flatnonzero(labels == c) for c in range(n) if leaves[c]]


def stationary(machine: EpsilonMachine) -> StationaryDistribution:
    """Unique stationary distribution of the marginal state chain.

    Solved directly on the single closed class; transient states get
    exactly zero weight.
    """
    P = machine.state_matrix
    classes = closed_classes(P)
    if len(classes) != 1:
        raise NonUniqueStationary(
            f"state chain has {len(classes)} closed classes; stationary distribution is not unique"
        )
    cls = classes[0]
    sub = P[np.ix_(cls, cls)]
    m = cls.size
    A = np.vstack([sub.T - np.eye(m), np.ones((1, m))])
    b = np.zeros(m + 1)
    b[-1] = 1.0
    x, *_ = np.linalg.lstsq(A, b, rcond=None)
    x = np.clip(x, 0.0, None)
    x /= x.sum()
    p = np.zeros(machine.num_states)
    p[cls] = x
    residual = np.max(np.abs(p @ P - p))
    if residual > STATIONARY_RESIDUAL:
        raise NonUniqueStationary(f"stationary solve residual {residual:.3g} exceeds tolerance")
    return StationaryDistribution(p)


def stationary_power(machine: EpsilonMachine, tol: float = 1e-13, max_iter: int = 10**6) -> StationaryDistribution:
    """Power-iteration cross-check for :func:`stationary`.

    Iterates the lazy chain ``(I + P) / 2``, which shares the stationary
    distribution and is aperiodic.
    """
    P = 0.5 * (np.eye(machine.num_states) + machine.state_matrix)
    p = np.full(machine.num_states, 1.0 / machine.num_states)
    for _ in range(max_iter):
        nxt = p @ P
        if np.max(np.abs(nxt - p)) < tol:
            p = nxt
            break
        p = nxt
    else:
        raise NonUniqueStationary("power iteration did not converge")
    return StationaryDistribution(p / p.sum())


def shannon_entropy(dist) -> float:
    """Entropy in bits with ``0 log 0 = 0``."""
    p = _as_weights(dist)
    nz = p[p > 0]
    h = float(-(nz * np.log2(nz)).sum())
    return 0.0 if h <= 0.0 else min(h, float(np.log2(p.size)))


def equivalence_classes(machine: EpsilonMachine, tol: float = DEFAULT_MERGE_TOL) -> np.ndarray:
    """Coarsest partition of states with matching next-step behaviour.

    Partition refinement from the single-block partition: a block splits
    whenever two members' distributions over (symbol, successor block)
    differ by more than ``tol`` in total variation. Returns one block label
    per state, labels numbered by first occurrence.
    """
    if tol < 0:
        raise ValueError("merge tolerance must be non-negative")
    T = machine.transitions
    n = machine.num_states
    labels = np.zeros(n, dtype=np.int64)
    while True:
        nblocks = int(labels.max()) + 1
        sig = np.stack([T[:, :, labels == b].sum(axis=2) for b in range(nblocks)], axis=2)
        new = np.empty(n, dtype=np.int64)
        reps: list[int] = []
        for j in range(n):
            for lab, rep in enumerate(reps):
                if labels[rep] == labels[j] and 0.5 * np.abs(sig[j] - sig[rep]).sum() <= tol:
                    new[j] = lab
                    break
            else:
                new[j] = len(reps)
                reps.append(j)
        if len(reps) == nblocks:
            return new
        labels = new


def quotient(machine: EpsilonMachine, labels: Sequence[int], weights: Iterable[float] | None = None) -> EpsilonMachine:
    """Collapse states sharing a label; rows within a block are averaged
    (uniformly, or with the given per-state weights)."""
    labels = np.asarray(labels, dtype=np.int64)
    nb = int(labels.max()) + 1
    w = np.ones(machine.num_states) if weights is None else np.asarray(list(weights), dtype=float)
    T = machine.transitions
    Q = np.zeros((nb, machine.num_symbols, nb))
    for b in range(nb):
        members = labels == b
        wb = w[members]
        wb = np.ones_like(wb) if wb.sum() <= 0 else wb
        rows = np.stack([T[members][:, :, labels == c].sum(axis=2) for c in range(nb)], axis=2)
        Q[b] = np.tensordot(wb / wb.sum(), rows, axes=1)
    Q /= Q.sum(axis=(1, 2), keepdims=True)
    return EpsilonMachine(Q, machine.alphabet, machine.name)


def merge_equivalent_states(machine: EpsilonMachine, tol: float = DEFAULT_MERGE_TOL, weights=None) -> EpsilonMachine:
    labels = equivalence_classes(machine, tol)
    if labels.max() + 1 == machine.num_states:
        return machine
    return quotient(machine, labels, weights)


def statistical_complexity(machine: EpsilonMachine, tol: float = DEFAULT_MERGE_TOL) -> float:
    """C_mu in bits: entropy of the stationary distribution of the minimal machine."""
    return shannon_entropy(stationary(merge_equivalent_states(machine, tol)))


def sample(machine: EpsilonMachine, length: int, seed: int, start: int | str = 0) -> SymbolSequence:
    """Draw a trajectory of ``length`` symbols.

    ``start`` is a state index or ``"stationary"`` to draw the initial state
    from the stationary distribution. Deterministic for a given seed.
    """
    if length < 0:
        raise ValueError("length must be non-negative")
    n, nsym = machine.num_states, machine.num_symbols
    rng = np.random.default_rng(seed)
    if isinstance(start, str):
        if start != "stationary":
            raise InvalidStart(f"unknown start {start!r}")
        state = int(rng.choice(n, p=stationary(machine).weights))
    else:
        state = int(start)
        if not 0 <= state < n:
            raise InvalidStart(f"start state {start} out of range for {n} states")

    # flattened edge index e = r * n + k
    flat = machine.transitions.reshape(n, nsym * n)
    cum = [list(accumulate(row.tolist())) for row in flat]
    last = [max(i for i, v in enumerate(row) if v > 0) for row in flat.tolist()]
    out = np.empty(length, dtype=np.int64)
    for t, u in enumerate(rng.random(length).tolist()):
        c = cum[state]
        e = min(bisect_right(c, u * c[-1]), last[state])
        out[t] = e // n
        state = e % n
    return SymbolSequence(out, machine.alphabet, seed=seed, source=machine.name, rng=RNG_ALGORITHM)
