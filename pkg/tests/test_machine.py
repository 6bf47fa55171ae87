import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcomplexity import (
    Alphabet,
    CoinParams,
    EpsilonMachine,
    InvalidMachine,
    InvalidStart,
    NonUniqueStationary,
    StationaryDistribution,
    SymbolSequence,
    coin_complexity_closed_form,
    merge_equivalent_states,
    perturbed_coin_machine,
    sample,
    shannon_entropy,
    stationary,
    stationary_power,
    statistical_complexity,
)
from qcomplexity.machine import closed_classes

from conftest import random_machine

H2_075 = 0.8112781244591328639  # mpmath, 40 digits


def coin(q0, q1):
    return perturbed_coin_machine(CoinParams(q0, q1))


def test_alphabet_rejects_duplicates():
    with pytest.raises(ValueError):
        Alphabet(("a", "a"))
    with pytest.raises(ValueError):
        Alphabet(())
    assert Alphabet(("x", "y")).index("y") == 1


@pytest.mark.parametrize(
    "T",
    [
        np.full((2, 2, 2), 0.3),
        -np.ones((1, 1, 1)),
        np.ones((2, 1, 3)),
        np.array([[[np.nan]]]),
    ],
)
def test_invalid_machine(T):
    with pytest.raises(InvalidMachine):
        EpsilonMachine(T)


def test_machine_is_immutable():
    m = coin(0.2, 0.6)
    with pytest.raises(ValueError):
        m.transitions[0, 0, 0] = 0.5


def test_coin_unifilar_and_rows():
    m = coin(0.2, 0.6)
    assert m.is_unifilar
    np.testing.assert_allclose(m.transitions.sum(axis=(1, 2)), 1.0, atol=1e-12)


def test_stationary_coin_matches_power_iteration():
    m = coin(0.2, 0.6)
    p = stationary(m).weights
    np.testing.assert_allclose(p, [0.75, 0.25], atol=1e-12)
    np.testing.assert_allclose(stationary_power(m).weights, p, atol=1e-11)


@pytest.mark.parametrize("q", [0.01, 0.1, 0.37, 0.5, 0.93])
def test_stationary_symmetric_coin(q):
    np.testing.assert_allclose(stationary(coin(q, q)).weights, [0.5, 0.5], atol=1e-12)


def test_stationary_absorbing_state():
    p = stationary(coin(0.0, 0.3)).weights
    assert p[0] == 1.0 and p[1] == 0.0


def test_stationary_rejects_two_closed_classes():
    with pytest.raises(NonUniqueStationary):
        stationary(coin(0.0, 0.0))
    with pytest.raises(NonUniqueStationary):
        statistical_complexity(coin(0.0, 0.0))


def test_stationary_periodic_chain():
    m = coin(1.0, 1.0)
    np.testing.assert_allclose(stationary(m).weights, [0.5, 0.5], atol=1e-12)
    np.testing.assert_allclose(stationary_power(m).weights, [0.5, 0.5], atol=1e-11)


def test_closed_classes_with_transient_state():
    P = np.array([[0.5, 0.5, 0], [0, 0, 1], [0, 1, 0]])
    classes = closed_classes(P)
    assert [c.tolist() for c in classes] == [[1, 2]]


def test_stationary_residual_random(machines_1000):
    for m in machines_1000[:200]:
        p = stationary(m).weights
        assert np.max(np.abs(p @ m.state_matrix - p)) <= 1e-10
        np.testing.assert_allclose(stationary_power(m).weights, p, atol=1e-9)


@pytest.mark.parametrize(
    "p, expected",
    [((0.5, 0.5), 1.0), ((1.0, 0.0), 0.0), ((0.75, 0.25), H2_075), ((0.25,) * 4, 2.0)],
)
def test_shannon_entropy(p, expected):
    assert shannon_entropy(StationaryDistribution(np.array(p))) == pytest.approx(expected, abs=1e-14)


def test_shannon_entropy_rejects_bad_distribution():
    with pytest.raises(ValueError):
        shannon_entropy([0.5, 0.6])


def test_merge_fair_coin_to_single_state():
    merged = merge_equivalent_states(coin(0.5, 0.5), 1e-9)
    assert merged.num_states == 1
    np.testing.assert_allclose(merged.transitions, [[[0.5], [0.5]]])


def test_merge_leaves_distinct_coin():
    m = coin(0.2, 0.6)
    assert merge_equivalent_states(m, 1e-9) is m


def test_merge_needs_successor_refinement():
    # states 0 and 1 emit identically but lead to distinguishable successors
    T = np.zeros((4, 2, 4))
    T[0, 0, 2] = 1.0
    T[1, 0, 3] = 1.0
    T[2, 0, 0] = T[2, 1, 1] = 0.5
    T[3, 0, 0] = 1.0
    m = EpsilonMachine(T)
    assert merge_equivalent_states(m, 0.0).num_states == 4


def test_merge_duplicated_states():
    # 3-state machine whose states 1 and 2 are copies
    T = np.zeros((3, 2, 3))
    T[0, 0, 0] = 0.7
    T[0, 1, 1] = 0.3
    T[1, 0, 0] = 0.4
    T[1, 1, 2] = 0.6
    T[2, 0, 0] = 0.4
    T[2, 1, 1] = 0.6
    merged = merge_equivalent_states(EpsilonMachine(T), 1e-9)
    assert merged.num_states == 2
    assert statistical_complexity(EpsilonMachine(T)) == pytest.approx(
        coin_complexity_closed_form(CoinParams(0.3, 0.4)), abs=1e-12)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_merge_idempotent_and_monotone(seed):
    rng = np.random.default_rng(seed)
    m = random_machine(rng)
    # duplicate one state so there is something to merge
    T = m.transitions
    n = m.num_states
    big = np.zeros((n + 1, T.shape[1], n + 1))
    big[:n, :, :n] = T
    big[n, :, :n] = T[0]
    m2 = EpsilonMachine(big)
    once = merge_equivalent_states(m2, 1e-9)
    twice = merge_equivalent_states(once, 1e-9)
    assert once.num_states <= n
    assert twice.num_states == once.num_states
    np.testing.assert_allclose(twice.transitions, once.transitions, atol=1e-12)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_statistical_complexity_bounds(seed):
    m = random_machine(np.random.default_rng(seed))
    c = statistical_complexity(m)
    assert 0.0 <= c <= math.log2(m.num_states) + 1e-12


def test_statistical_complexity_examples():
    assert statistical_complexity(coin(0.3, 0.3)) == pytest.approx(1.0, abs=1e-12)
    assert statistical_complexity(coin(0.5, 0.5)) == 0.0
    assert statistical_complexity(coin(0.2, 0.6)) == pytest.approx(H2_075, abs=1e-12)


@settings(max_examples=200, deadline=None)
@given(st.floats(0.001, 0.999), st.floats(0.001, 0.999))
def test_coin_complexity_matches_closed_form(q0, q1):
    if abs(q0 + q1 - 1.0) <= 1e-9:
        # i.i.d. line, see test_coin_iid_line_collapses
        return
    closed = coin_complexity_closed_form(CoinParams(q0, q1))
    assert statistical_complexity(coin(q0, q1)) == pytest.approx(closed, abs=1e-9)


@pytest.mark.parametrize("q0", [0.001, 0.2, 0.5, 0.7, 0.999])
def test_coin_iid_line_collapses(q0):
    m = coin(q0, 1.0 - q0)
    assert merge_equivalent_states(m).num_states == 1
    assert statistical_complexity(m) == 0.0


def test_sample_absorbing():
    seq = sample(coin(0.0, 0.5), 10, seed=1, start=0)
    assert str(seq) == "0000000000"


def test_sample_alternator():
    assert str(sample(coin(1.0, 1.0), 6, seed=99, start=0)) == "101010"


def test_sample_deterministic_and_metadata():
    m = coin(0.2, 0.6)
    a = sample(m, 1000, seed=7, start="stationary")
    b = sample(m, 1000, seed=7, start="stationary")
    assert np.array_equal(a.symbols, b.symbols)
    assert a.seed == 7 and a.rng and a.source == m.name
    assert not np.array_equal(a.symbols, sample(m, 1000, seed=8, start="stationary").symbols)


@pytest.mark.parametrize("start", [-1, 2, "nowhere"])
def test_sample_invalid_start(start):
    with pytest.raises(InvalidStart):
        sample(coin(0.2, 0.6), 5, seed=0, start=start)


def test_sample_flip_frequency():
    n = 10**6
    seq = sample(coin(0.2, 0.6), n, seed=2024, start=0).symbols
    prev, nxt = seq[:-1], seq[1:]
    n0 = int(np.sum(prev == 0))
    flips = int(np.sum((prev == 0) & (nxt == 1)))
    assert abs(flips / n0 - 0.2) <= 3 * math.sqrt(0.2 * 0.8 / n0)


def test_text_roundtrip():
    m = coin(0.2, 0.6)
    text = m.to_text()
    records = [ln for ln in text.splitlines() if not ln.startswith("#")]
    assert records == [
        "0 0 0 0.80000000000000004",
        "0 1 1 0.20000000000000001",
        "1 0 0 0.59999999999999998",
        "1 1 1 0.40000000000000002",
    ]
    back = EpsilonMachine.from_text(text)
    assert np.array_equal(back.transitions, m.transitions)
    assert back.alphabet == m.alphabet


def test_sequence_from_text():
    seq = SymbolSequence.from_text("0110\n")
    assert seq.symbols.tolist() == [0, 1, 1, 0]
    with pytest.raises(ValueError):
        SymbolSequence.from_text("012", alphabet=Alphabet.binary())
