"""Instrumented, budgeted runners for the four search heuristics: RLS,
(1+1) EA, (mu+lambda) EA and (mu,lambda) EA.

Runtime is counted in fitness evaluations including the initial
population, so the initial evaluation can already hit the optimum.  On
unitation functions the runners simulate on the zeros-count level
directly (the sufficient statistic), which is distribution-equivalent to
bit-level simulation and much faster; arbitrary objectives fall back to
bit-level simulation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .core import (
    Bitstring,
    DomainError,
    FitnessFunction,
    MutationParams,
    UnitationSpec,
)

_BATCH = 256


class AlgorithmKind(Enum):
    RLS = "RLS"
    ONE_PLUS_ONE_EA = "OnePlusOneEA"
    MU_PLUS_LAMBDA_EA = "MuPlusLambdaEA"
    MU_COMMA_LAMBDA_EA = "MuCommaLambdaEA"


class TieBreak(Enum):
    PREFER_OFFSPRING = "PreferOffspring"
    UNIFORM_RANDOM = "UniformRandom"


@dataclass(frozen=True)
class AlgorithmConfig:
    kind: AlgorithmKind
    mutation: MutationParams
    mu: int = 1
    lam: int = 1
    tie_break: TieBreak = TieBreak.PREFER_OFFSPRING

    def __post_init__(self) -> None:
        if self.mu < 1 or self.lam < 1:
            raise DomainError("mu and lambda must be positive")
        if self.kind in (AlgorithmKind.RLS, AlgorithmKind.ONE_PLUS_ONE_EA):
            if self.mu != 1 or self.lam != 1:
                raise DomainError(f"{self.kind.value} forces mu = lambda = 1")
        if self.kind is AlgorithmKind.MU_COMMA_LAMBDA_EA:
            if self.lam < self.mu:
                raise DomainError("(mu,lambda) EA requires lambda >= mu")
            if not 0 < self.mutation.chi < self.mutation.n / 2:
                raise DomainError("(mu,lambda) EA requires chi in (0, n/2)")

    @property
    def initial_population(self) -> int:
        # The comma strategy's state is the lambda offspring.
        return self.lam if self.kind is AlgorithmKind.MU_COMMA_LAMBDA_EA else self.mu


@dataclass(frozen=True)
class Budget:
    max_evaluations: int = 10_000_000

    def __post_init__(self) -> None:
        if self.max_evaluations < 1:
            raise DomainError("budget must be positive")


@dataclass
class RunTrace:
    """One algorithm run: evaluation counter, best-so-far fitness history
    as (evaluation_index, fitness) pairs, and the 1-based evaluation
    index at which an optimum (or the requested target fitness) was
    first evaluated.  ``hit_time`` is absent iff the run was censored by
    the budget."""

    evaluations: int
    best_fitness_history: list[tuple[int, float]]
    hit_time: int | None
    censored: bool
    level_transitions: np.ndarray | None = field(default=None, repr=False)

    @property
    def best_fitness(self) -> float:
        return self.best_fitness_history[-1][1]


# ---------------------------------------------------------------------------
# Single-individual runners, level fast path (unitation functions)


def _run_single_level(
    spec: UnitationSpec,
    kind: AlgorithmKind,
    mutation: MutationParams,
    budget: Budget,
    rng: np.random.Generator,
    start_zeros: int | None,
    target_fitness: float | None,
    record_transitions: bool,
) -> RunTrace:
    n = spec.n
    table = spec.value_table
    target = spec.optimum_value if target_fitness is None else target_fitness
    max_evals = budget.max_evaluations

    z = int(rng.binomial(n, 0.5)) if start_zeros is None else int(start_zeros)
    if not 0 <= z <= n:
        raise DomainError("forced start zeros-count out of range")
    evals = 1
    best = float(table[z])
    history = [(1, best)]
    hit = 1 if best >= target else None
    trans = np.zeros((n + 1, n + 1), dtype=np.int64) if record_transitions else None

    is_rls = kind is AlgorithmKind.RLS
    p = mutation.rate
    while hit is None and evals < max_evals:
        # Draw a batch of offspring proposals for the current level; the
        # remainder of a batch is discarded whenever the level changes.
        if is_rls:
            us = rng.random(_BATCH)
        else:
            d0s = rng.binomial(z, p, _BATCH)
            d1s = rng.binomial(n - z, p, _BATCH)
        for i in range(_BATCH):
            if evals >= max_evals:
                break
            if is_rls:
                z_new = z - 1 if us[i] < z / n else z + 1
            else:
                z_new = z - int(d0s[i]) + int(d1s[i])
            evals += 1
            fy = float(table[z_new])
            accepted = fy >= table[z]
            if trans is not None:
                trans[z, z_new if accepted else z] += 1
            if fy > best:
                best = fy
                history.append((evals, fy))
            if fy >= target:
                hit = evals
                break
            if accepted and z_new != z:
                z = z_new
                if not is_rls:
                    break  # flip-count draws were conditioned on the old level
        else:
            continue
        if hit is not None or evals >= max_evals:
            break

    return RunTrace(
        evaluations=evals,
        best_fitness_history=history,
        hit_time=hit,
        censored=hit is None,
        level_transitions=trans,
    )


# ---------------------------------------------------------------------------
# Single-individual runners, bit-level path (generic objectives)


def _run_single_bits(
    f: FitnessFunction,
    kind: AlgorithmKind,
    mutation: MutationParams,
    budget: Budget,
    rng: np.random.Generator,
    start_zeros: int | None,
    target_fitness: float | None,
) -> RunTrace:
    n = f.n
    target = f.optimum_value if target_fitness is None else target_fitness
    max_evals = budget.max_evaluations
    p = mutation.rate
    is_rls = kind is AlgorithmKind.RLS

    if start_zeros is None:
        x = rng.integers(0, 2, size=n, dtype=np.uint8)
    else:
        x = np.ones(n, dtype=np.uint8)
        x[rng.choice(n, size=int(start_zeros), replace=False)] = 0
    fx = float(f.fn(x))
    evals = 1
    best = fx
    history = [(1, best)]
    hit = 1 if best >= target else None

    while hit is None and evals < max_evals:
        if is_rls:
            positions = rng.integers(0, n, _BATCH)
        else:
            masks = rng.random((_BATCH, n)) < p
        for i in range(_BATCH):
            if evals >= max_evals:
                break
            if is_rls:
                y = x.copy()
                y[positions[i]] ^= 1
            else:
                y = x ^ masks[i].astype(np.uint8)
            fy = float(f.fn(y))
            evals += 1
            if fy > best:
                best = fy
                history.append((evals, fy))
            if fy >= fx:
                x, fx = y, fy
            if fy >= target:
                hit = evals
                break
        if hit is not None:
            break

    return RunTrace(evals, history, hit, hit is None)


# ---------------------------------------------------------------------------
# Population runners (unitation fast path + generic fallback)


def comma_selection_order(fitness: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Sort indices by fitness, descending, ties broken uniformly at
    random with a fresh permutation (the comma strategy's exchangeable
    sort)."""
    perm = rng.permutation(fitness.size)
    return perm[np.argsort(-fitness[perm], kind="stable")]


def _run_population_level(
    spec: UnitationSpec,
    cfg: AlgorithmConfig,
    budget: Budget,
    rng: np.random.Generator,
    start_zeros: int | None,
    target_fitness: float | None,
    record_transitions: bool,
) -> RunTrace:
    n = spec.n
    table = spec.value_table
    target = spec.optimum_value if target_fitness is None else target_fitness
    max_evals = budget.max_evaluations
    p = cfg.mutation.rate
    mu, lam = cfg.mu, cfg.lam
    comma = cfg.kind is AlgorithmKind.MU_COMMA_LAMBDA_EA
    pop_size = cfg.initial_population
    if max_evals < pop_size:
        raise DomainError("budget smaller than the initial population")

    if start_zeros is None:
        pop_z = rng.binomial(n, 0.5, size=pop_size)
    else:
        pop_z = np.full(pop_size, int(start_zeros))
    fit = table[pop_z]
    evals = pop_size
    best = float(fit.max())
    history = [(int(np.argmax(fit >= best)) + 1, best)]
    hit = int(np.argmax(fit >= target)) + 1 if fit.max() >= target else None
    trans = np.zeros((n + 1, n + 1), dtype=np.int64) if record_transitions else None
    best_z = int(pop_z[np.argmax(fit)])

    while hit is None and evals + lam <= max_evals:
        if comma:
            order = comma_selection_order(fit, rng)
            elite = pop_z[order[:mu]]
            parents = elite[rng.integers(0, mu, size=lam)]
        else:
            parents = pop_z[rng.integers(0, mu, size=lam)]
        d0 = rng.binomial(parents, p)
        d1 = rng.binomial(n - parents, p)
        off = parents - d0 + d1
        off_fit = table[off]
        gen_best = float(off_fit.max())
        if gen_best >= target:
            hit = evals + int(np.argmax(off_fit >= target)) + 1
        if gen_best > best:
            history.append((evals + int(np.argmax(off_fit >= gen_best)) + 1, gen_best))
            best = gen_best
        evals += lam

        if comma:
            pop_z, fit = off, off_fit
        else:
            combined = np.concatenate([off, pop_z])  # offspring first on ties
            cfit = table[combined]
            if cfg.tie_break is TieBreak.UNIFORM_RANDOM:
                order = comma_selection_order(cfit, rng)
            else:
                order = np.argsort(-cfit, kind="stable")
            keep = order[:mu]
            pop_z, fit = combined[keep], cfit[keep]

        if trans is not None:
            new_best_z = int(pop_z[np.argmax(fit)])
            trans[best_z, new_best_z] += 1
            best_z = new_best_z

    return RunTrace(
        evaluations=evals,
        best_fitness_history=history,
        hit_time=hit,
        censored=hit is None,
        level_transitions=trans,
    )


def _run_population_bits(
    f: FitnessFunction,
    cfg: AlgorithmConfig,
    budget: Budget,
    rng: np.random.Generator,
    start_zeros: int | None,
    target_fitness: float | None,
) -> RunTrace:
    n = f.n
    target = f.optimum_value if target_fitness is None else target_fitness
    max_evals = budget.max_evaluations
    p = cfg.mutation.rate
    mu, lam = cfg.mu, cfg.lam
    comma = cfg.kind is AlgorithmKind.MU_COMMA_LAMBDA_EA
    pop_size = cfg.initial_population
    if max_evals < pop_size:
        raise DomainError("budget smaller than the initial population")

    if start_zeros is None:
        pop = rng.integers(0, 2, size=(pop_size, n), dtype=np.uint8)
    else:
        pop = np.ones((pop_size, n), dtype=np.uint8)
        for row in pop:
            row[rng.choice(n, size=int(start_zeros), replace=False)] = 0
    fit = np.array([float(f.fn(row)) for row in pop])
    evals = pop_size
    best = float(fit.max())
    history = [(int(np.argmax(fit >= best)) + 1, best)]
    hit = int(np.argmax(fit >= target)) + 1 if best >= target else None

    while hit is None and evals + lam <= max_evals:
        if comma:
            order = comma_selection_order(fit, rng)
            parent_rows = pop[order[:mu]][rng.integers(0, mu, size=lam)]
        else:
            parent_rows = pop[rng.integers(0, mu, size=lam)]
        masks = (rng.random((lam, n)) < p).astype(np.uint8)
        off = parent_rows ^ masks
        off_fit = np.array([float(f.fn(row)) for row in off])
        gen_best = float(off_fit.max())
        if gen_best >= target:
            hit = evals + int(np.argmax(off_fit >= target)) + 1
        if gen_best > best:
            history.append((evals + int(np.argmax(off_fit >= gen_best)) + 1, gen_best))
            best = gen_best
        evals += lam

        if comma:
            pop, fit = off, off_fit
        else:
            combined = np.concatenate([off, pop])
            cfit = np.concatenate([off_fit, fit])
            if cfg.tie_break is TieBreak.UNIFORM_RANDOM:
                order = comma_selection_order(cfit, rng)
            else:
                order = np.argsort(-cfit, kind="stable")
            keep = order[:mu]
            pop, fit = combined[keep], cfit[keep]

    return RunTrace(evals, history, hit, hit is None)


# ---------------------------------------------------------------------------
# Public entry points


def run_algorithm(
    f: UnitationSpec | FitnessFunction,
    cfg: AlgorithmConfig,
    budget: Budget,
    rng: np.random.Generator,
    start_zeros: int | None = None,
    target_fitness: float | None = None,
    record_transitions: bool = False,
) -> RunTrace:
    """Execute one run of the configured algorithm and return its trace.

    ``start_zeros`` forces the initial zeros-count (block-local
    experiments); ``target_fitness`` redefines success as reaching the
    given fitness instead of the optimum.
    """
    single = cfg.kind in (AlgorithmKind.RLS, AlgorithmKind.ONE_PLUS_ONE_EA)
    if isinstance(f, UnitationSpec):
        if cfg.mutation.n != f.n:
            raise DomainError("mutation parameters sized for a different n")
        if single:
            return _run_single_level(
                f, cfg.kind, cfg.mutation, budget, rng, start_zeros,
                target_fitness, record_transitions,
            )
        return _run_population_level(
            f, cfg, budget, rng, start_zeros, target_fitness, record_transitions
        )
    if record_transitions:
        raise DomainError("level transitions are recorded for unitation functions only")
    if cfg.mutation.n != f.n:
        raise DomainError("mutation parameters sized for a different n")
    if single:
        return _run_single_bits(
            f, cfg.kind, cfg.mutation, budget, rng, start_zeros, target_fitness
        )
    return _run_population_bits(f, cfg, budget, rng, start_zeros, target_fitness)


def _checked(cfg: AlgorithmConfig, kind: AlgorithmKind) -> AlgorithmConfig:
    if cfg.kind is not kind:
        raise DomainError(f"config kind {cfg.kind.value} does not match runner")
    return cfg


def run_rls(f, cfg, budget, rng, **kw) -> RunTrace:
    return run_algorithm(f, _checked(cfg, AlgorithmKind.RLS), budget, rng, **kw)


def run_one_plus_one_ea(f, cfg, budget, rng, **kw) -> RunTrace:
    return run_algorithm(f, _checked(cfg, AlgorithmKind.ONE_PLUS_ONE_EA), budget, rng, **kw)


def run_mu_plus_lambda_ea(f, cfg, budget, rng, **kw) -> RunTrace:
    return run_algorithm(f, _checked(cfg, AlgorithmKind.MU_PLUS_LAMBDA_EA), budget, rng, **kw)


def run_mu_comma_lambda_ea(f, cfg, budget, rng, **kw) -> RunTrace:
    return run_algorithm(f, _checked(cfg, AlgorithmKind.MU_COMMA_LAMBDA_EA), budget, rng, **kw)


def rls_config(n: int) -> AlgorithmConfig:
    return AlgorithmConfig(AlgorithmKind.RLS, MutationParams(n=n, chi=1.0))


def one_plus_one_config(n: int, chi: float = 1.0) -> AlgorithmConfig:
    return AlgorithmConfig(AlgorithmKind.ONE_PLUS_ONE_EA, MutationParams(n=n, chi=chi))
