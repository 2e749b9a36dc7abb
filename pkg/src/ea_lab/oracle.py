"""Exact analysis of single-individual elitist algorithms on unitation
functions.

The zeros-count of the current search point is a sufficient statistic
for RLS and the (1+1) EA on a unitation function, so their dynamics form
an absorbing Markov chain on the n+1 zeros-count levels.  Expected
hitting times, success probabilities and exact drift values computed
here are the ground truth that both the closed-form bounds and the
Monte Carlo estimates are checked against.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve

from .core import (
    DomainError,
    MutationParams,
    UnitationSpec,
    flip_count_pmf_table,
)

ROW_SUM_TOL = 1e-12


@dataclass(frozen=True)
class LevelChain:
    """Absorbing Markov chain over zeros-count levels.

    ``mutation_kernel`` is the raw proposal kernel (before selection);
    ``P`` applies elitist acceptance: proposals with strictly worse
    fitness are folded into the self-loop, ties are accepted.  Rows of
    both matrices sum to 1 within ``ROW_SUM_TOL``.  Absorbing states are
    the zeros-counts of maximum fitness and have identity rows.
    """

    n: int
    kind: str  # "RLS" or "OnePlusOneEA"
    value_table: np.ndarray
    mutation_kernel: np.ndarray
    P: np.ndarray
    absorbing: np.ndarray  # boolean mask over levels


def _mutation_kernel(n: int, p: float) -> np.ndarray:
    """Raw standard-bit-mutation kernel over zeros-counts.

    From a point with z zeros, flipping d0 of the z zero-bits and d1 of
    the n-z one-bits moves to z - d0 + d1 zeros; the two flip counts are
    independent binomials.
    """
    kernel = np.zeros((n + 1, n + 1))
    for z in range(n + 1):
        pmf_zero = flip_count_pmf_table(z, p)
        pmf_one = flip_count_pmf_table(n - z, p)
        row = kernel[z]
        for d0 in range(z + 1):
            lo = z - d0
            row[lo : lo + (n - z) + 1] += pmf_zero[d0] * pmf_one
        # Fold the tiny summation residual into the self-loop.
        row[z] += 1.0 - row.sum()
    return kernel


def _rls_kernel(n: int) -> np.ndarray:
    """Single uniformly chosen bit flip per step."""
    kernel = np.zeros((n + 1, n + 1))
    for z in range(n + 1):
        if z > 0:
            kernel[z, z - 1] = z / n
        if z < n:
            kernel[z, z + 1] = (n - z) / n
    return kernel


def build_level_chain(spec: UnitationSpec, kind: str, mutation: MutationParams | None = None) -> LevelChain:
    """Exact level chain for RLS or the (1+1) EA on ``spec``.

    Selection accepts offspring of fitness greater than or equal to the
    parent fitness (the (1+1) EA tie rule); rejected mass goes to the
    self-loop.
    """
    n = spec.n
    table = spec.value_table
    if kind == "RLS":
        kernel = _rls_kernel(n)
    elif kind == "OnePlusOneEA":
        if mutation is None:
            mutation = MutationParams(n=n, chi=1.0)
        if mutation.n != n:
            raise DomainError("mutation parameters sized for a different n")
        kernel = _mutation_kernel(n, mutation.rate)
    else:
        raise DomainError(f"unsupported algorithm kind for oracle: {kind}")

    absorbing = table == table.max()
    P = np.zeros_like(kernel)
    for z in range(n + 1):
        if absorbing[z]:
            P[z, z] = 1.0
            continue
        accept = table >= table[z]
        P[z, accept] = kernel[z, accept]
        P[z, z] += kernel[z, ~accept].sum()
    assert np.all(np.abs(P.sum(axis=1) - 1.0) < 1e-9)
    P.setflags(write=False)
    kernel.setflags(write=False)
    return LevelChain(
        n=n, kind=kind, value_table=table, mutation_kernel=kernel, P=P, absorbing=absorbing
    )


# ---------------------------------------------------------------------------
# Start distributions


def point_start(n: int, z: int) -> np.ndarray:
    """Start distribution concentrated on zeros-count ``z``."""
    if not 0 <= z <= n:
        raise DomainError("start level out of range")
    u = np.zeros(n + 1)
    u[z] = 1.0
    return u


def binomial_start(n: int) -> np.ndarray:
    """Zeros-count distribution of a uniform random bitstring."""
    return flip_count_pmf_table(n, 0.5)


# ---------------------------------------------------------------------------
# Exact quantities


def expected_hitting_times(chain: LevelChain) -> np.ndarray:
    """Expected generations to absorption from each level (0 on absorbing)."""
    return expected_hitting_times_to(chain, chain.absorbing)


def expected_hitting_times_to(chain: LevelChain, target: np.ndarray) -> np.ndarray:
    """Expected generations to first reach any level in ``target``
    (a boolean mask), 0 on target levels themselves.

    Used for block-local questions such as the time to jump a gap,
    where the target set is not the global optimum.
    """
    target = np.asarray(target, dtype=bool)
    if target.shape != (chain.n + 1,):
        raise DomainError("target mask must cover levels 0..n")
    if not target.any():
        raise DomainError("target set must be non-empty")
    if np.any(chain.absorbing & ~target):
        raise DomainError("an absorbing level outside the target is never left")
    idx = np.flatnonzero(~target)
    Q = chain.P[np.ix_(idx, idx)]
    t = solve(np.eye(idx.size) - Q, np.ones(idx.size))
    out = np.zeros(chain.n + 1)
    out[idx] = t
    return out


def exact_expected_hitting_time(chain: LevelChain, start: np.ndarray) -> float:
    """Start-weighted expected number of generations to absorption.

    Add 1 for the initial evaluation when converting to the evaluation
    count of a single-individual algorithm.
    """
    start = np.asarray(start, dtype=float)
    if start.shape != (chain.n + 1,) or start.min() < 0 or abs(start.sum() - 1.0) > 1e-9:
        raise DomainError("start must be a distribution over levels 0..n")
    return float(np.dot(start, expected_hitting_times(chain)))


def exact_success_probability(chain: LevelChain, start: np.ndarray, t: int) -> float:
    """Probability that the optimum has been reached within ``t`` generations."""
    if t < 0:
        raise DomainError("t must be non-negative")
    v = np.asarray(start, dtype=float).copy()
    for _ in range(t):
        remaining = float(v[~chain.absorbing].sum())
        if remaining < 1e-300:
            break
        v = v @ chain.P
    return float(v[chain.absorbing].sum())


def exact_drift(chain: LevelChain, distance) -> np.ndarray:
    """Per-level expected one-step decrease of ``distance``.

    ``distance`` maps a zeros-count to a non-negative real and must be 0
    exactly on the absorbing levels.  Absorbing entries of the result
    are NaN.
    """
    d = np.array([float(distance(z)) for z in range(chain.n + 1)])
    if np.any(d[chain.absorbing] != 0.0) or np.any(d[~chain.absorbing] <= 0.0):
        raise DomainError("distance must vanish exactly on absorbing levels")
    drift = np.full(chain.n + 1, np.nan)
    for z in np.flatnonzero(~chain.absorbing):
        drift[z] = float(np.dot(chain.P[z], d[z] - d))
    return drift


def mutation_drift(chain: LevelChain, distance) -> np.ndarray:
    """Like :func:`exact_drift` but on the raw mutation kernel (no selection)."""
    d = np.array([float(distance(z)) for z in range(chain.n + 1)])
    drift = np.empty(chain.n + 1)
    for z in range(chain.n + 1):
        drift[z] = float(np.dot(chain.mutation_kernel[z], d[z] - d))
    return drift


def jump_tail(chain: LevelChain, z: int, j: int) -> float:
    """P(|level change| >= j) under the accepted transition kernel at ``z``."""
    if j < 0:
        raise DomainError("j must be non-negative")
    row = chain.P[z]
    levels = np.arange(chain.n + 1)
    return float(row[np.abs(levels - z) >= j].sum())


# ---------------------------------------------------------------------------
# Fitness-level data for the AFL theorems


@dataclass(frozen=True)
class FitnessLevelData:
    """Exact per-level quantities for an f-based partition by fitness value.

    Levels are ordered by increasing fitness, the top level holding the
    optima.  ``s_min``/``s_max`` are the exact minimum/maximum over the
    states of each non-top level of the probability of moving to a level
    of strictly better fitness; they serve as the lower-bound and
    upper-bound instantiations of the fitness-level theorems.
    """

    levels: tuple[tuple[int, ...], ...]
    s_min: np.ndarray
    s_max: np.ndarray


def fitness_level_data(chain: LevelChain) -> FitnessLevelData:
    values = chain.value_table
    distinct = np.unique(values)  # ascending
    levels = tuple(
        tuple(int(z) for z in np.flatnonzero(values == v)) for v in distinct
    )
    s_min = np.empty(len(levels) - 1)
    s_max = np.empty(len(levels) - 1)
    for i, level in enumerate(levels[:-1]):
        better = values > distinct[i]
        probs = [float(chain.P[z, better].sum()) for z in level]
        s_min[i] = min(probs)
        s_max[i] = max(probs)
    return FitnessLevelData(levels=levels, s_min=s_min, s_max=s_max)
