"""Tests for the exact level-chain oracle.

The independent ground truth used here is a brute-force Markov chain
over the full bitstring space (2^n states) built directly from per-bit
flip probabilities — a completely separate code path from the
level-space kernel under test.
"""

import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ea_lab.core import DomainError, MutationParams, gap_function, needle, onemax
from ea_lab.oracle import (
    ROW_SUM_TOL,
    binomial_start,
    build_level_chain,
    exact_drift,
    exact_expected_hitting_time,
    exact_success_probability,
    expected_hitting_times,
    expected_hitting_times_to,
    fitness_level_data,
    jump_tail,
    mutation_drift,
    point_start,
)


def harmonic(k):
    return sum(1.0 / i for i in range(1, k + 1))


# ---------------------------------------------------------------------------
# Kernel structure


@given(n=st.integers(1, 40), chi=st.floats(0.1, 3.0))
@settings(max_examples=40, deadline=None)
def test_rows_are_distributions(n, chi):
    if chi >= n:
        return
    chain = build_level_chain(onemax(n), "OnePlusOneEA", MutationParams(n, chi))
    for mat in (chain.mutation_kernel, chain.P):
        assert np.all(mat >= 0)
        assert np.all(np.abs(mat.sum(axis=1) - 1.0) <= ROW_SUM_TOL)


def test_absorbing_rows_are_identity():
    chain = build_level_chain(onemax(8), "OnePlusOneEA")
    assert list(np.flatnonzero(chain.absorbing)) == [0]
    assert chain.P[0, 0] == 1.0 and chain.P[0, 1:].sum() == 0.0


def test_elitist_rejection_folds_into_self_loop():
    chain = build_level_chain(onemax(6), "OnePlusOneEA")
    table = chain.value_table
    for z in range(1, 7):
        worse = table < table[z]
        assert np.all(chain.P[z, worse] == 0)
        rejected = chain.mutation_kernel[z, worse].sum()
        assert chain.P[z, z] == pytest.approx(
            chain.mutation_kernel[z, z] + rejected, abs=1e-14
        )


def test_rls_kernel_moves_by_one_level():
    chain = build_level_chain(onemax(5), "RLS")
    k = chain.mutation_kernel
    for z in range(6):
        for z2 in range(6):
            if abs(z - z2) > 1:
                assert k[z, z2] == 0.0


def test_unknown_kind_rejected():
    with pytest.raises(DomainError):
        build_level_chain(onemax(4), "SimulatedAnnealing")


# ---------------------------------------------------------------------------
# Cross-check against a brute-force bit-space chain


def _bit_space_expected_time(spec, p):
    """Expected generations of the elitist single-individual algorithm,
    from a uniform start, computed on the full 2^n state space."""
    n = spec.n
    table = spec.value_table
    states = list(itertools.product((0, 1), repeat=n))
    size = len(states)
    P = np.zeros((size, size))
    opt = table.max()
    for i, x in enumerate(states):
        zx = n - sum(x)
        if table[zx] == opt:
            P[i, i] = 1.0
            continue
        for j, y in enumerate(states):
            d = sum(a != b for a, b in zip(x, y))
            prob = p**d * (1 - p) ** (n - d)
            if table[n - sum(y)] >= table[zx]:
                P[i, j] += prob
            else:
                P[i, i] += prob
    transient = [i for i, x in enumerate(states) if table[n - sum(x)] != opt]
    Q = P[np.ix_(transient, transient)]
    t = np.linalg.solve(np.eye(len(transient)) - Q, np.ones(len(transient)))
    times = np.zeros(size)
    times[transient] = t
    return times.mean()  # uniform start over all bitstrings


@pytest.mark.parametrize("make", [onemax, needle, lambda n: gap_function(n, 2, 1)])
def test_level_chain_matches_bit_space_chain(make):
    n = 6
    spec = make(n)
    chain = build_level_chain(spec, "OnePlusOneEA", MutationParams(n, 1.0))
    level_value = exact_expected_hitting_time(chain, binomial_start(n))
    brute = _bit_space_expected_time(spec, 1.0 / n)
    assert level_value == pytest.approx(brute, rel=1e-10)


def test_rls_onemax_closed_form():
    # From z zeros, RLS waits n/i at each level i: E[T] = n * H_z.
    n = 15
    chain = build_level_chain(onemax(n), "RLS")
    times = expected_hitting_times(chain)
    for z in range(n + 1):
        assert times[z] == pytest.approx(n * harmonic(z), abs=1e-9)


# ---------------------------------------------------------------------------
# Derived quantities


def test_point_and_binomial_starts():
    u = point_start(8, 3)
    assert u[3] == 1.0 and u.sum() == 1.0
    b = binomial_start(8)
    assert b.sum() == pytest.approx(1.0, abs=1e-12)
    assert b[4] == max(b)


def test_start_must_be_distribution():
    chain = build_level_chain(onemax(5), "RLS")
    with pytest.raises(DomainError):
        exact_expected_hitting_time(chain, np.ones(6))


def test_success_probability_monotone_and_limits():
    chain = build_level_chain(onemax(8), "OnePlusOneEA")
    start = binomial_start(8)
    probs = [exact_success_probability(chain, start, t) for t in (0, 5, 20, 100, 500)]
    assert probs == sorted(probs)
    assert probs[0] == pytest.approx(start[0])
    assert probs[-1] > 0.99


def test_exact_drift_positive_on_onemax():
    chain = build_level_chain(onemax(10), "OnePlusOneEA")
    drift = exact_drift(chain, lambda z: float(z))
    assert np.isnan(drift[0])
    assert np.all(drift[1:] > 0)
    # Elitist selection can only reduce the zeros-count on this function,
    # so the selected drift dominates the raw mutation drift.
    raw = mutation_drift(chain, lambda z: float(z))
    assert np.all(drift[1:] >= raw[1:] - 1e-12)


def test_exact_drift_validates_distance():
    chain = build_level_chain(onemax(5), "OnePlusOneEA")
    with pytest.raises(DomainError):
        exact_drift(chain, lambda z: 1.0)  # nonzero on the absorbing level


def test_jump_tail_decreases():
    chain = build_level_chain(needle(12), "OnePlusOneEA")
    tails = [jump_tail(chain, 6, j) for j in range(5)]
    assert tails[0] == pytest.approx(1.0)
    assert all(a >= b for a, b in zip(tails, tails[1:]))


def test_hitting_time_to_subset():
    # Time for RLS on OneMax from z=5 to reach z <= 3 is n/5 + n/4.
    n = 10
    chain = build_level_chain(onemax(n), "RLS")
    target = np.arange(n + 1) <= 3
    times = expected_hitting_times_to(chain, target)
    assert times[5] == pytest.approx(n / 5 + n / 4)
    assert times[3] == 0.0


def test_hitting_time_to_subset_validates():
    chain = build_level_chain(onemax(5), "RLS")
    with pytest.raises(DomainError):
        expected_hitting_times_to(chain, np.zeros(6, dtype=bool))
    # Excluding the absorbing optimum from the target set is meaningless.
    bad = np.zeros(6, dtype=bool)
    bad[5] = True
    with pytest.raises(DomainError):
        expected_hitting_times_to(chain, bad)


# ---------------------------------------------------------------------------
# Fitness-level data


def test_fitness_level_data_on_onemax():
    n = 7
    chain = build_level_chain(onemax(n), "OnePlusOneEA")
    data = fitness_level_data(chain)
    assert len(data.levels) == n + 1
    assert data.levels[-1] == (0,)  # optimum on top
    assert np.all(data.s_min == data.s_max)  # one state per level here
    assert np.all(data.s_min > 0)


def test_fitness_level_data_groups_equal_values():
    chain = build_level_chain(needle(6), "OnePlusOneEA")
    data = fitness_level_data(chain)
    assert len(data.levels) == 2
    assert set(data.levels[0]) == set(range(1, 7))
    assert np.all(data.s_min <= data.s_max)
