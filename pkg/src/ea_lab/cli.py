"""Command-line front end: run experiments, sweep the problem size, or
evaluate theorem bounds from a JSON configuration.

Exit status is 0 when every checked bound is respected, 2 when a bound
check fails or a theorem's hypotheses do not hold, and 1 on usage or
configuration errors.  All output files are written atomically
(temporary file + rename) so a crashed invocation never leaves a
truncated artifact behind.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import os
import sys
import tempfile
from importlib import resources
from typing import Any

import jsonschema
import numpy as np

from . import bounds as bnd
from . import core, empirics, oracle
from .algorithms import AlgorithmConfig, AlgorithmKind, Budget, TieBreak
from .bounds import BoundReport, Direction
from .core import FitnessFunction, MutationParams, UnitationSpec

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_BOUND_FAILURE = 2

# Oracle computation is cubic in n; above this size it must be requested
# explicitly in the configuration.
_ORACLE_AUTO_LIMIT = 512


class ConfigError(ValueError):
    """The configuration file is malformed or inconsistent."""


# ---------------------------------------------------------------------------
# Configuration loading


def _schema() -> dict:
    text = resources.files("ea_lab").joinpath("config_schema.json").read_text()
    return json.loads(text)


def load_config(path: str) -> dict:
    """Parse and schema-validate a configuration file.

    Error messages are anchored: JSON syntax errors carry line/column,
    schema violations carry the JSON pointer of the offending element.
    """
    try:
        with open(path) as fh:
            raw = fh.read()
    except OSError as exc:
        raise ConfigError(f"{path}: {exc.strerror or exc}") from exc
    try:
        cfg = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    validator = jsonschema.Draft202012Validator(_schema())
    errors = sorted(validator.iter_errors(cfg), key=lambda e: list(e.absolute_path))
    if errors:
        first = errors[0]
        pointer = "/" + "/".join(str(p) for p in first.absolute_path)
        raise ConfigError(f"{path}: at {pointer or '/'}: {first.message}")
    return cfg


def build_function(fn_cfg: dict, n_override: int | None = None):
    """Instantiate the objective named by the ``function`` section."""
    family = fn_cfg["family"]
    if family == "linear":
        if n_override is not None:
            raise ConfigError("the linear family has no size parameter to sweep")
        if "weights" not in fn_cfg:
            raise ConfigError("function family 'linear' requires 'weights'")
        return core.linear_function(fn_cfg["weights"])

    n = n_override if n_override is not None else fn_cfg.get("n")
    if n is None:
        raise ConfigError(f"function family '{family}' requires 'n'")
    if family == "onemax":
        return core.onemax(n)
    if family == "needle":
        return core.needle(n)
    if family in ("gap", "plateau"):
        if "m" not in fn_cfg or "k" not in fn_cfg:
            raise ConfigError(f"function family '{family}' requires 'm' and 'k'")
        maker = core.gap_function if family == "gap" else core.plateau_function
        try:
            return maker(n, fn_cfg["m"], fn_cfg["k"])
        except core.SpecError as exc:
            raise ConfigError(str(exc)) from exc
    # blocks
    if n_override is not None:
        raise ConfigError("the blocks family cannot be swept over n")
    if "blocks" not in fn_cfg:
        raise ConfigError("function family 'blocks' requires 'blocks'")
    try:
        return UnitationSpec.from_dict({"n": n, "blocks": fn_cfg["blocks"]})
    except core.SpecError as exc:
        raise ConfigError(str(exc)) from exc


def build_algorithm(alg_cfg: dict, n: int) -> AlgorithmConfig:
    try:
        return AlgorithmConfig(
            kind=AlgorithmKind(alg_cfg["kind"]),
            mutation=MutationParams(n=n, chi=float(alg_cfg.get("chi", 1.0))),
            mu=int(alg_cfg.get("mu", 1)),
            lam=int(alg_cfg.get("lambda", 1)),
            tie_break=TieBreak(alg_cfg.get("tie_break", "PreferOffspring")),
        )
    except core.DomainError as exc:
        raise ConfigError(str(exc)) from exc


def build_start(cfg: dict, n: int) -> empirics.StartPolicy:
    start = cfg.get("start", {"policy": "UniformRandom"})
    if start["policy"] == "UniformRandom":
        return empirics.StartPolicy.uniform()
    if "zeros" not in start:
        raise ConfigError("start policy FixedZeros requires 'zeros'")
    z = int(start["zeros"])
    if not 0 <= z <= n:
        raise ConfigError(f"start zeros-count {z} outside 0..{n}")
    return empirics.StartPolicy.fixed(z)


def build_experiment(cfg: dict, n_override: int | None = None) -> empirics.Experiment:
    function = build_function(cfg["function"], n_override)
    algorithm = build_algorithm(cfg["algorithm"], function.n)
    return empirics.Experiment(
        function=function,
        algorithm=algorithm,
        runs=int(cfg["runs"]),
        master_seed=int(cfg["master_seed"]),
        budget=Budget(int(cfg.get("budget", 10_000_000))),
        start=build_start(cfg, function.n),
        target_fitness=cfg.get("target_fitness"),
    )


# ---------------------------------------------------------------------------
# Oracle helpers


def _oracle_applicable(exp: empirics.Experiment) -> bool:
    return isinstance(exp.function, UnitationSpec) and exp.algorithm.kind in (
        AlgorithmKind.RLS,
        AlgorithmKind.ONE_PLUS_ONE_EA,
    )


def _oracle_start(exp: empirics.Experiment) -> np.ndarray:
    n = exp.function.n
    if exp.start.fixed_zeros is None:
        return oracle.binomial_start(n)
    return oracle.point_start(n, exp.start.fixed_zeros)


def compute_oracle(exp: empirics.Experiment) -> dict | None:
    """Exact expected runtime (in evaluations) when the level chain applies."""
    if not _oracle_applicable(exp):
        return None
    chain = oracle.build_level_chain(
        exp.function, exp.algorithm.kind.value, exp.algorithm.mutation
    )
    start = _oracle_start(exp)
    gens = oracle.exact_expected_hitting_time(chain, start)
    return {
        "kind": chain.kind,
        "expected_generations": gens,
        "expected_evaluations": gens + 1.0,
    }


# ---------------------------------------------------------------------------
# Bound registry


@dataclasses.dataclass(frozen=True)
class BoundContext:
    """Everything a bound evaluator may draw on besides its own params."""

    n: int
    function_cfg: dict
    algorithm: AlgorithmConfig
    experiment: empirics.Experiment


def _mk(ctx: BoundContext, params: dict, key: str, default=None):
    value = params.get(key, ctx.function_cfg.get(key, default))
    if value is None:
        raise ConfigError(f"bound parameter '{key}' missing")
    return value


def _upper_in_evaluations(report: BoundReport, extra: int) -> BoundReport:
    # Closed-form upper bounds count generations; the empirical clock also
    # counts the initial evaluation(s), so shift before comparing.
    if report.hypotheses_ok and report.direction is Direction.UPPER_ON_E:
        report.bound_value = report.bound_value + extra
        report.detail["initial_evaluations_added"] = extra
    return report


def _simple(theorem_id: str, direction: Direction, value: float, **detail) -> BoundReport:
    return BoundReport(theorem_id, True, direction, bound_value=value, detail=detail)


def _eval_markov(ctx, params):
    e = float(params["expectation"])
    t = float(params["t"])
    return _simple("markov", Direction.TAIL_UPPER, bnd.markov_bound(e, t),
                   expectation=e, t=t)


def _eval_chernoff_upper(ctx, params):
    e, d = float(params["expectation"]), float(params["delta"])
    return _simple("chernoff_upper", Direction.TAIL_UPPER, bnd.chernoff_upper(e, d),
                   expectation=e, delta=d)


def _eval_chernoff_lower(ctx, params):
    e, d = float(params["expectation"]), float(params["delta"])
    return _simple("chernoff_lower", Direction.TAIL_UPPER, bnd.chernoff_lower(e, d),
                   expectation=e, delta=d)


def _eval_onemax_afl_upper(ctx, params):
    rep = _simple("onemax_afl_upper", Direction.UPPER_ON_E, bnd.onemax_afl_upper(ctx.n))
    return _upper_in_evaluations(rep, ctx.algorithm.initial_population)


def _eval_linear_block_upper(ctx, params):
    m, k = int(_mk(ctx, params, "m")), int(_mk(ctx, params, "k"))
    rep = _simple("linear_block_upper", Direction.UPPER_ON_E,
                  bnd.linear_block_upper(ctx.n, m, k), m=m, k=k)
    return _upper_in_evaluations(rep, ctx.algorithm.initial_population)


def _eval_linear_block_lower(ctx, params):
    m, k = int(_mk(ctx, params, "m")), int(_mk(ctx, params, "k"))
    return _simple("linear_block_lower", Direction.LOWER_ON_E,
                   bnd.linear_block_lower(ctx.n, m, k), m=m, k=k)


def _gap_reports(ctx, params):
    m, k = int(_mk(ctx, params, "m")), int(_mk(ctx, params, "k"))
    return bnd.gap_block_bounds(ctx.n, m, k), m, k


def _eval_gap_inner_lower(ctx, params):
    gb, m, k = _gap_reports(ctx, params)
    return _simple("gap_inner_lower", Direction.LOWER_ON_E, gb.inner_lower, m=m, k=k)


def _eval_gap_inner_upper(ctx, params):
    gb, m, k = _gap_reports(ctx, params)
    rep = _simple("gap_inner_upper", Direction.UPPER_ON_E, gb.inner_upper, m=m, k=k)
    return _upper_in_evaluations(rep, ctx.algorithm.initial_population)


def _eval_gap_outer_lower(ctx, params):
    gb, m, k = _gap_reports(ctx, params)
    return _simple("gap_outer_lower", Direction.LOWER_ON_E, gb.outer_lower, m=m, k=k)


def _eval_gap_outer_upper(ctx, params):
    gb, m, k = _gap_reports(ctx, params)
    rep = _simple("gap_outer_upper", Direction.UPPER_ON_E, gb.outer_upper, m=m, k=k)
    return _upper_in_evaluations(rep, ctx.algorithm.initial_population)


def _eval_plateau_lower(ctx, params):
    m, k = int(_mk(ctx, params, "m")), int(_mk(ctx, params, "k"))
    lower, _ = bnd.plateau_bounds(ctx.n, m, k)
    return _simple("plateau_lower", Direction.LOWER_ON_E, lower, m=m, k=k)


def _eval_plateau_upper(ctx, params):
    m, k = int(_mk(ctx, params, "m")), int(_mk(ctx, params, "k"))
    _, upper = bnd.plateau_bounds(ctx.n, m, k)
    rep = _simple("plateau_upper", Direction.UPPER_ON_E, upper, m=m, k=k)
    return _upper_in_evaluations(rep, ctx.algorithm.initial_population)


def _afl_exact_levels(ctx):
    exp = ctx.experiment
    if not _oracle_applicable(exp):
        raise ConfigError("exact fitness-level bounds need RLS or the (1+1) EA "
                          "on a unitation function")
    chain = oracle.build_level_chain(
        exp.function, exp.algorithm.kind.value, exp.algorithm.mutation
    )
    data = oracle.fitness_level_data(chain)
    start = _oracle_start(exp)
    # Initial-level mass over the non-top fitness levels.
    u = np.array([sum(start[z] for z in level) for level in data.levels[:-1]])
    return data, u


def _eval_afl_exact_upper(ctx, params):
    data, _ = _afl_exact_levels(ctx)
    rep = bnd.afl_upper(bnd.LevelData(s=data.s_min))
    rep.theorem_id = "afl_exact_upper"
    return _upper_in_evaluations(rep, ctx.algorithm.initial_population)


def _eval_afl_exact_lower(ctx, params):
    data, u = _afl_exact_levels(ctx)
    if ctx.algorithm.kind is AlgorithmKind.ONE_PLUS_ONE_EA:
        chi = bnd.afl_chi_certificate(ctx.n, ctx.algorithm.mutation.chi)
    else:
        chi = 1.0  # RLS moves by single levels only
    rep = bnd.afl_lower(bnd.LevelData(s=data.s_max, u=u, chi_afl=chi))
    rep.theorem_id = "afl_exact_lower"
    rep.detail["chi_afl"] = chi
    return rep


def _eval_multiplicative_drift_onemax(ctx, params):
    # Distance |x|_0, drift at least |x|_0 / (e n) for the (1+1) EA.
    spec = bnd.MultiplicativeDrift(
        delta=1.0 / (math.e * ctx.n), c_min=1.0, c_max=float(ctx.n)
    )
    rep = bnd.multiplicative_drift_bound(spec)
    rep.theorem_id = "multiplicative_drift_onemax"
    return _upper_in_evaluations(rep, ctx.algorithm.initial_population)


def _eval_variable_drift_onemax(ctx, params):
    n = ctx.n
    spec = bnd.VariableDrift(
        h=lambda x: x / (math.e * n), x_min=1.0, x_max=float(n), X0=float(n)
    )
    rep = bnd.variable_drift_bound(spec, bnd.VariableDriftMode.UPPER_ON_E)
    rep.theorem_id = "variable_drift_onemax"
    return _upper_in_evaluations(rep, ctx.algorithm.initial_population)


def _eval_level_based_onemax(ctx, params):
    delta = float(params.get("delta", 0.1))
    mu = ctx.algorithm.mu if ctx.algorithm.kind is AlgorithmKind.MU_COMMA_LAMBDA_EA else None
    p = bnd.onemax_level_params(
        ctx.n, ctx.algorithm.mutation.chi, delta, ctx.algorithm.lam, mu=mu
    )
    rep = bnd.level_based_bound(p)
    rep.theorem_id = "level_based_onemax"
    return _upper_in_evaluations(rep, ctx.algorithm.initial_population)


def _eval_mucommalambda_runtime(ctx, params):
    delta = float(params.get("delta", 0.1))
    const = float(params.get("linear_term_constant", 0.0))
    rep = bnd.mucommalambda_runtime_bound(
        ctx.n, ctx.algorithm.mutation.chi, delta, ctx.algorithm.lam, const
    )
    return _upper_in_evaluations(rep, ctx.algorithm.initial_population)


def _eval_linear_runtime_upper(ctx, params):
    fn = ctx.experiment.function
    if isinstance(fn, FitnessFunction) and fn.name == "linear":
        w = fn.fn.w
        w_max, w_min = float(w.max()), float(w.min())
    else:
        w_max = float(_mk(ctx, params, "w_max", 1.0))
        w_min = float(_mk(ctx, params, "w_min", 1.0))
    n = ctx.n
    value = math.e * n * (math.log(n) + math.log(w_max / w_min) + 1.0)
    rep = _simple("linear_runtime_upper", Direction.UPPER_ON_E, value,
                  w_max=w_max, w_min=w_min)
    return _upper_in_evaluations(rep, ctx.algorithm.initial_population)


BOUND_REGISTRY = {
    "markov": _eval_markov,
    "chernoff_upper": _eval_chernoff_upper,
    "chernoff_lower": _eval_chernoff_lower,
    "onemax_afl_upper": _eval_onemax_afl_upper,
    "linear_block_upper": _eval_linear_block_upper,
    "linear_block_lower": _eval_linear_block_lower,
    "gap_inner_lower": _eval_gap_inner_lower,
    "gap_inner_upper": _eval_gap_inner_upper,
    "gap_outer_lower": _eval_gap_outer_lower,
    "gap_outer_upper": _eval_gap_outer_upper,
    "plateau_lower": _eval_plateau_lower,
    "plateau_upper": _eval_plateau_upper,
    "afl_exact_upper": _eval_afl_exact_upper,
    "afl_exact_lower": _eval_afl_exact_lower,
    "multiplicative_drift_onemax": _eval_multiplicative_drift_onemax,
    "variable_drift_onemax": _eval_variable_drift_onemax,
    "level_based_onemax": _eval_level_based_onemax,
    "mucommalambda_runtime": _eval_mucommalambda_runtime,
    "linear_runtime_upper": _eval_linear_runtime_upper,
}


def evaluate_bounds(cfg: dict, exp: empirics.Experiment) -> list[BoundReport]:
    ctx = BoundContext(
        n=exp.function.n,
        function_cfg=cfg["function"],
        algorithm=exp.algorithm,
        experiment=exp,
    )
    reports = []
    for entry in cfg.get("bounds", []):
        bound_id = entry["id"]
        if bound_id not in BOUND_REGISTRY:
            known = ", ".join(sorted(BOUND_REGISTRY))
            raise ConfigError(f"unknown bound id '{bound_id}' (known: {known})")
        try:
            reports.append(BOUND_REGISTRY[bound_id](ctx, entry.get("params", {})))
        except (core.DomainError, KeyError) as exc:
            reports.append(BoundReport(
                bound_id, False, Direction.UPPER_ON_E,
                detail={"reason": f"not applicable: {exc}"},
            ))
    return reports


# ---------------------------------------------------------------------------
# Output


def _jsonable(obj: Any) -> Any:
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, Direction):
        return obj.value
    if isinstance(obj, float) and (math.isinf(obj) or math.isnan(obj)):
        return repr(obj)
    return obj


def write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix="~")
    try:
        with os.fdopen(fd, "w", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_json_atomic(path: str, obj: Any) -> None:
    write_atomic(path, json.dumps(_jsonable(obj), indent=2, sort_keys=True) + "\n")


def summary_dict(summary: empirics.RuntimeSummary) -> dict:
    return {
        "runs": summary.runs,
        "successes": summary.successes,
        "censored": summary.censored,
        "mean": summary.mean,
        "stderr": summary.stderr,
        "mean_ci": list(summary.mean_ci) if summary.mean_ci else None,
        "median": summary.median,
        "quantiles": {str(q): v for q, v in summary.quantiles.items()},
        "budget": summary.budget,
        "curve": {"t": summary.curve_t, "p": summary.curve_p},
    }


def report_dict(rep: BoundReport) -> dict:
    return {
        "theorem_id": rep.theorem_id,
        "hypotheses_ok": rep.hypotheses_ok,
        "direction": rep.direction.value,
        "bound_value": rep.bound_value,
        "log_value": rep.log_value,
        "detail": rep.detail,
        "warnings": rep.warnings,
    }


def row_dict(row: empirics.ComparisonRow) -> dict:
    return dataclasses.asdict(row)


def _fmt(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "NO"
    if isinstance(v, float):
        return f"{v:.6g}"
    return str(v)


def print_comparison(rows: list[empirics.ComparisonRow], out=None) -> None:
    out = out if out is not None else sys.stdout
    header = ("quantity", "empirical", "oracle", "bound", "direction", "ok")
    table = [header] + [
        (r.quantity, _fmt(r.empirical), _fmt(r.oracle), _fmt(r.bound),
         r.direction, _fmt(r.satisfied))
        for r in rows
    ]
    widths = [max(len(row[i]) for row in table) for i in range(len(header))]
    for row in table:
        print("  ".join(cell.ljust(w) for cell, w in zip(row, widths)), file=out)


def _verdict(rows: list[empirics.ComparisonRow]) -> int:
    failed = [r for r in rows if r.satisfied is False]
    return EXIT_BOUND_FAILURE if failed else EXIT_OK


def comparison_csv(rows: list[empirics.ComparisonRow]) -> str:
    lines = ["quantity,empirical,oracle,bound,direction,satisfied"]
    for r in rows:
        sat = "" if r.satisfied is None else str(int(r.satisfied))
        lines.append(
            f"{r.quantity},{_csv_num(r.empirical)},{_csv_num(r.oracle)},"
            f"{_csv_num(r.bound)},{r.direction},{sat}"
        )
    return "\n".join(lines) + "\n"


def _csv_num(v) -> str:
    return "" if v is None else repr(float(v))


# ---------------------------------------------------------------------------
# Commands


def _resolve_workers(threads: int) -> int:
    if threads < 0:
        raise ConfigError("--threads must be non-negative")
    if threads > 0:
        return threads
    env = os.environ.get("EA_LAB_THREADS", "")
    if env.strip():
        try:
            value = int(env)
        except ValueError as exc:
            raise ConfigError(f"EA_LAB_THREADS={env!r} is not an integer") from exc
        if value >= 1:
            return value
        raise ConfigError("EA_LAB_THREADS must be >= 1")
    return os.cpu_count() or 1


def _prepare(args) -> tuple[dict, int]:
    cfg = load_config(args.config)
    if args.seed is not None:
        cfg["master_seed"] = args.seed
    workers = _resolve_workers(args.threads)
    os.makedirs(args.out, exist_ok=True)
    return cfg, workers


def cmd_run(args) -> int:
    cfg, workers = _prepare(args)
    exp = build_experiment(cfg)
    batch = empirics.run_batch(exp, workers=workers)

    want_oracle = cfg.get(
        "oracle", _oracle_applicable(exp) and exp.function.n <= _ORACLE_AUTO_LIMIT
    )
    oracle_info = compute_oracle(exp) if want_oracle else None
    oracle_value = oracle_info["expected_evaluations"] if oracle_info else None

    reports = evaluate_bounds(cfg, exp)
    rows = empirics.compare(batch.summary, reports, oracle_value)

    summary = {
        "schema_version": cfg["schema_version"],
        "config": cfg,
        "runtime": summary_dict(batch.summary),
        "oracle": oracle_info,
        "bounds": [report_dict(r) for r in reports],
        "comparison": [row_dict(r) for r in rows],
    }
    write_json_atomic(os.path.join(args.out, "summary.json"), summary)
    lines = [empirics.SAMPLE_HEADER] + [r.to_line() for r in batch.records]
    write_atomic(os.path.join(args.out, "samples.csv"), "\n".join(lines) + "\n")
    write_atomic(os.path.join(args.out, "comparison.csv"), comparison_csv(rows))

    if not args.quiet:
        print_comparison(rows)
        print(f"results written to {args.out}")
    return _verdict(rows)


def cmd_sweep(args) -> int:
    cfg, workers = _prepare(args)
    if "sweep" not in cfg:
        raise ConfigError("sweep command needs a 'sweep' section")
    values = cfg["sweep"]["values"]
    if not values:
        raise ConfigError("sweep values must be non-empty")

    bound_ids = [entry["id"] for entry in cfg.get("bounds", [])]
    curve_header = ["n", "empirical_mean", "stderr", "oracle"] + [
        f"bound_{bid}" for bid in bound_ids
    ]
    curve_lines = [",".join(curve_header)]
    points = []
    all_rows: list[empirics.ComparisonRow] = []

    for n in values:
        exp = build_experiment(cfg, n_override=int(n))
        batch = empirics.run_batch(exp, workers=workers)
        want_oracle = cfg.get(
            "oracle", _oracle_applicable(exp) and exp.function.n <= _ORACLE_AUTO_LIMIT
        )
        oracle_info = compute_oracle(exp) if want_oracle else None
        oracle_value = oracle_info["expected_evaluations"] if oracle_info else None
        reports = evaluate_bounds(cfg, exp)
        rows = empirics.compare(batch.summary, reports, oracle_value)
        all_rows.extend(rows)

        cells = [str(n), _csv_num(batch.summary.mean), _csv_num(batch.summary.stderr),
                 _csv_num(oracle_value)]
        cells += [_csv_num(rep.bound_value) for rep in reports]
        curve_lines.append(",".join(cells))
        points.append({
            "n": int(n),
            "runtime": summary_dict(batch.summary),
            "oracle": oracle_info,
            "bounds": [report_dict(r) for r in reports],
            "comparison": [row_dict(r) for r in rows],
        })
        if not args.quiet:
            mean = _fmt(batch.summary.mean)
            print(f"n={n}: mean={mean} oracle={_fmt(oracle_value)}")

    write_atomic(os.path.join(args.out, "curve.csv"), "\n".join(curve_lines) + "\n")
    write_json_atomic(
        os.path.join(args.out, "sweep.json"),
        {"schema_version": cfg["schema_version"], "config": cfg, "points": points},
    )
    if not args.quiet:
        print(f"results written to {args.out}")
    return _verdict(all_rows)


def cmd_bounds(args) -> int:
    cfg, _ = _prepare(args)
    # Build the experiment without running it: bound evaluators may need
    # the oracle chain, which only depends on the configuration.
    exp = build_experiment(cfg)
    reports = evaluate_bounds(cfg, exp)
    write_json_atomic(
        os.path.join(args.out, "bounds.json"),
        {
            "schema_version": cfg["schema_version"],
            "config": cfg,
            "bounds": [report_dict(r) for r in reports],
        },
    )
    if not args.quiet:
        for rep in reports:
            status = "ok" if rep.hypotheses_ok else "HYPOTHESES FAILED"
            print(f"{rep.theorem_id}: {status} bound={_fmt(rep.bound_value)} "
                  f"({rep.direction.value})")
        print(f"results written to {args.out}")
    failed = any(not r.hypotheses_ok for r in reports)
    return EXIT_BOUND_FAILURE if failed else EXIT_OK


# ---------------------------------------------------------------------------
# Entry point


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ea-lab",
        description="Runtime experiments and theorem bounds for stochastic "
        "search heuristics on pseudo-Boolean functions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, fn, help_text in (
        ("run", cmd_run, "run a batch of simulations and check bounds"),
        ("sweep", cmd_sweep, "repeat an experiment across problem sizes"),
        ("bounds", cmd_bounds, "evaluate theorem bounds without simulating"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", required=True, help="JSON configuration file")
        p.add_argument("--out", default="ea-lab-out", help="output directory")
        p.add_argument(
            "--threads", type=int, default=0,
            help="worker processes (0 = EA_LAB_THREADS or CPU count)",
        )
        p.add_argument(
            "--seed", type=int, default=None,
            help="override the configured master seed",
        )
        p.add_argument("--quiet", action="store_true", help="suppress the table")
        p.set_defaults(fn=fn)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (core.SpecError, core.DomainError, core.DimensionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
