"""Batch front end: JSON configs in, CSV + JSON reports out, exit codes for CI.

Exit codes: 0 pass (or probe/derivation ok), 2 refinement-stability failure,
3 hypothesis-validation failure (including a non-mean-zero kernel), 4 config
or usage error.  All quadrature is deterministic, so identical configs give
bit-identical reports.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from dataclasses import asdict, dataclass, field, fields
from typing import Optional

import numpy as np

from .corpus import CORPUS_CATALOG, check_gradient_fd, field_from_spec, poincare_sobolev_check
from .geometry import Ball, DyadicTruncationGrid, QuadratureBudget
from .harness import (
    ExperimentBudget,
    GridSpec,
    HypothesisValidationError,
    RatioReport,
    run_pointwise_experiment,
    run_sobolev_experiment,
)
from .hypotheses import (
    EXPERIMENT_IDS,
    POINTWISE_IDS,
    SOBOLEV_IDS,
    HypothesisSet,
    derive_exponents,
    validate_hypotheses,
)
from .kernels import kernel_from_spec
from .weights import (
    check_doubling,
    estimate_lower_ahlfors,
    estimate_muckenhoupt_constant,
    export_mass_table_csv,
    mass_table_for_family,
    standard_ball_family,
    weight_from_spec,
)

EXIT_PASS = 0
EXIT_UNSTABLE = 2
EXIT_HYPOTHESIS = 3
EXIT_CONFIG = 4

_FLOAT_FMT = "%.17g"


class ConfigError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; the contract here reserves 2 for
    # stability failures, so usage problems are routed to ConfigError
    def error(self, message):
        raise ConfigError(message)


_HYP_FIELDS = ("n", "rho", "delta", "s", "q", "a", "b", "p_frak", "q_frak",
               "a_frak", "b_frak", "d", "beta")


@dataclass
class ExperimentConfig:
    """Flat JSON schema: experiment id + exponents + catalog specs + budgets."""

    experiment: str
    n: int = 2
    rho: float = 1.5
    delta: float = 1.0
    s: float = 1.2
    q: float = 4.0 / 3.0
    a: Optional[float] = None
    b: Optional[float] = None
    p_frak: Optional[float] = None
    q_frak: Optional[float] = None
    a_frak: Optional[float] = None
    b_frak: Optional[float] = None
    d: Optional[float] = None
    beta: Optional[float] = None
    kernel: str = "cosine"
    weight: str = "const:1"
    corpus: list = field(default_factory=lambda: ["bump", "offbump", "dipole"])
    grid: dict = field(default_factory=dict)
    budget: dict = field(default_factory=dict)
    levels: int = 2
    no_gate: bool = False
    output: Optional[str] = None
    format: str = "both"

    @classmethod
    def from_dict(cls, raw: dict) -> "ExperimentConfig":
        if not isinstance(raw, dict):
            raise ConfigError("config must be a JSON object")
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(raw) - known)
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
        if "experiment" not in raw:
            raise ConfigError("config needs an 'experiment' key")
        try:
            cfg = cls(**raw)
        except TypeError as err:
            raise ConfigError(str(err)) from err
        if cfg.experiment not in EXPERIMENT_IDS:
            raise ConfigError(f"unknown experiment '{cfg.experiment}'; known: {EXPERIMENT_IDS}")
        if cfg.format not in ("csv", "json", "both"):
            raise ConfigError(f"format must be csv, json, or both, got '{cfg.format}'")
        return cfg

    def to_dict(self) -> dict:
        return asdict(self)

    def hypothesis_set(self) -> HypothesisSet:
        kwargs = {name: getattr(self, name) for name in _HYP_FIELDS}
        try:
            return HypothesisSet(weight=self.weight, kernel=self.kernel, **kwargs)
        except ValueError as err:
            raise ConfigError(str(err)) from err

    def grid_spec(self) -> GridSpec:
        try:
            return GridSpec(**self.grid)
        except TypeError as err:
            raise ConfigError(f"bad grid block: {err}") from err

    def experiment_budget(self) -> ExperimentBudget:
        raw = dict(self.budget)
        tg = raw.pop("tgrid", None)
        fam = raw.pop("family", None)
        try:
            quad = QuadratureBudget(**raw) if raw else QuadratureBudget()
            tgrid = (DyadicTruncationGrid(**tg) if tg
                     else DyadicTruncationGrid(-6, 4, 4))
            family = standard_ball_family(self.n, **(fam or {}))
            return ExperimentBudget(quad, tgrid, family, self.levels)
        except (TypeError, ValueError) as err:
            raise ConfigError(f"bad budget block: {err}") from err


def load_config(path: str) -> ExperimentConfig:
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except OSError as err:
        raise ConfigError(f"cannot read config '{path}': {err}") from err
    except json.JSONDecodeError as err:
        raise ConfigError(f"config '{path}' is not valid JSON: {err}") from err
    return ExperimentConfig.from_dict(raw)


# ---------------------------------------------------------------------------
# report serialization


def write_point_csv(report: RatioReport, path: str) -> None:
    n = report.hypotheses.n
    header = (["experiment", "function", "level"]
              + [f"x{i + 1}" for i in range(n)]
              + ["lhs", "rhs", "ratio", "excluded"])
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for rec in report.records:
            row = [report.experiment, rec.function, rec.level]
            row += [_FLOAT_FMT % v for v in rec.x]
            row += [_FLOAT_FMT % rec.lhs, _FLOAT_FMT % rec.rhs,
                    _FLOAT_FMT % rec.ratio, int(rec.excluded)]
            writer.writerow(row)


def write_json_summary(report: RatioReport, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(report.summary_dict(), fh, indent=2, sort_keys=True)
        fh.write("\n")


def _emit_report(report: RatioReport, output: Optional[str], fmt: str) -> None:
    base = output or f"{report.experiment}_report"
    if fmt in ("csv", "both"):
        write_point_csv(report, base + ".csv")
        print(f"wrote {base}.csv ({len(report.records)} rows)")
    if fmt in ("json", "both"):
        write_json_summary(report, base + ".json")
        print(f"wrote {base}.json")


def _print_verdict(report: RatioReport) -> int:
    ladder = ", ".join(f"{v:.6g}" for v in report.ladder)
    print(f"experiment {report.experiment}: ladder [{ladder}], "
          f"max ratio {report.max_ratio:.6g}, median {report.median_ratio:.6g}, "
          f"excluded {report.excluded_count}")
    if report.passed is None:
        print("no-gate run: diagnostics only, no verdict")
        return EXIT_PASS
    if report.passed:
        print("PASS: ladder stable within 10% at the two finest levels")
        return EXIT_PASS
    print("FAIL: ladder not stable within 10% at the two finest levels")
    return EXIT_UNSTABLE


# ---------------------------------------------------------------------------
# subcommands


def _add_hypothesis_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, default=2, help="ambient dimension (2 or 3)")
    p.add_argument("--rho", type=float, default=1.5)
    p.add_argument("--delta", type=float, default=1.0)
    p.add_argument("--s", type=float, default=None,
                   help="Poincare exponent (alpha = s*delta)")
    p.add_argument("--alpha", type=float, default=None,
                   help="shortcut: sets s = alpha/delta")
    p.add_argument("--q", type=float, default=4.0 / 3.0)
    p.add_argument("--a", type=float, default=None)
    p.add_argument("--b", type=float, default=None)
    p.add_argument("--p-frak", type=float, default=None, dest="p_frak")
    p.add_argument("--q-frak", type=float, default=None, dest="q_frak")
    p.add_argument("--a-frak", type=float, default=None, dest="a_frak")
    p.add_argument("--b-frak", type=float, default=None, dest="b_frak")
    p.add_argument("--d", type=float, default=None)
    p.add_argument("--beta", type=float, default=None)


def _hypotheses_from_args(args) -> HypothesisSet:
    if args.alpha is not None and args.s is not None:
        raise ConfigError("give either --s or --alpha, not both")
    s = args.s
    if args.alpha is not None:
        s = args.alpha / args.delta
    if s is None:
        s = 1.2
    try:
        return HypothesisSet(n=args.n, rho=args.rho, delta=args.delta, s=s,
                             q=args.q, a=args.a, b=args.b,
                             p_frak=args.p_frak, q_frak=args.q_frak,
                             a_frak=args.a_frak, b_frak=args.b_frak,
                             d=args.d, beta=args.beta)
    except ValueError as err:
        raise ConfigError(str(err)) from err


def cmd_derive(args) -> int:
    h = _hypotheses_from_args(args)
    print(f"hypotheses: n={h.n} rho={h.rho:g} delta={h.delta:g} s={h.s:g} "
          f"alpha={h.alpha:.12g} q={h.q:.12g} d={h.d:.12g}")
    try:
        ex = derive_exponents(h)
    except ZeroDivisionError as err:
        print(f"derivation hit a boundary: {err}")
        return EXIT_HYPOTHESIS
    for name, val in ex.as_dict().items():
        print(f"  {name:10s} = {val:.12g}")
    report = validate_hypotheses(h, args.theorem)
    print(f"constraints for '{args.theorem}':")
    for line in report.lines():
        print(line)
    return EXIT_PASS if report.passed else EXIT_HYPOTHESIS


def cmd_validate(args) -> int:
    if args.config:
        cfg = load_config(args.config)
        h = cfg.hypothesis_set()
        theorem = args.theorem or cfg.experiment
    else:
        h = _hypotheses_from_args(args)
        theorem = args.theorem
        if theorem is None:
            raise ConfigError("--theorem is required without --config")
    try:
        report = validate_hypotheses(h, theorem)
    except ValueError as err:
        raise ConfigError(str(err)) from err
    print(f"constraints for '{theorem}':")
    for line in report.lines():
        print(line)
    if report.passed:
        print("hypotheses satisfied")
        return EXIT_PASS
    names = ", ".join(c.name for c in report.failures())
    print(f"hypotheses violated: {names}")
    return EXIT_HYPOTHESIS


def _run_experiment(args, family: tuple, runner) -> int:
    cfg = load_config(args.config)
    if cfg.experiment not in family:
        raise ConfigError(f"experiment '{cfg.experiment}' is not in {family}; "
                          "use the other subcommand")
    h = cfg.hypothesis_set()
    try:
        kernel = kernel_from_spec(cfg.kernel, h.n)
        weight = weight_from_spec(cfg.weight, h.n)
        corpus = [field_from_spec(spec, h.n) for spec in cfg.corpus]
    except (ValueError, KeyError) as err:
        raise ConfigError(str(err)) from err
    no_gate = cfg.no_gate or args.no_gate
    try:
        report = runner(cfg, h, kernel, weight, corpus, no_gate)
    except HypothesisValidationError as err:
        print(str(err))
        return EXIT_HYPOTHESIS
    _emit_report(report, args.output or cfg.output, args.format or cfg.format)
    return _print_verdict(report)


def cmd_pointwise(args) -> int:
    def runner(cfg, h, kernel, weight, corpus, no_gate):
        return run_pointwise_experiment(cfg.experiment, h, kernel, weight, corpus,
                                        grid_spec=cfg.grid_spec(),
                                        budget=cfg.experiment_budget(),
                                        no_gate=no_gate)
    return _run_experiment(args, POINTWISE_IDS, runner)


def cmd_sobolev(args) -> int:
    def runner(cfg, h, kernel, weight, corpus, no_gate):
        return run_sobolev_experiment(cfg.experiment, h, kernel, weight, corpus,
                                      budget=cfg.experiment_budget(),
                                      no_gate=no_gate)
    return _run_experiment(args, SOBOLEV_IDS, runner)


def cmd_weights_probe(args) -> int:
    try:
        weight = weight_from_spec(args.weight, args.n)
    except ValueError as err:
        raise ConfigError(str(err)) from err
    if args.levels < 2:
        raise ConfigError("weights-probe needs at least 2 refinement levels")
    family = standard_ball_family(args.n)
    quad = QuadratureBudget()
    print(f"weight {weight.label}, delta={args.delta:g}, n={args.n}")
    estimates = []
    for level in range(args.levels):
        fam, q = family, quad
        for _ in range(level):
            fam = fam.refined()
        q = quad.refined(level) if level else quad
        est = estimate_muckenhoupt_constant(weight, args.delta, fam, q)
        estimates.append(est.value)
        drift = ("" if level == 0 else
                 f"  (rel change {abs(est.value / estimates[-2] - 1.0):.3%})")
        print(f"  level {level}: [w]_A_delta >= {est.value:.8g} over {est.family_size} balls{drift}")
    a_const = estimates[-1]
    samples = [(ball, 2.0) for i, ball in enumerate(family.balls()) if i % 7 == 0]
    violations = [rec for rec in check_doubling(weight, args.delta, a_const, samples, quad)
                  if rec["violated"]]
    print(f"  doubling: {len(violations)} violation(s) over {len(samples)} sample balls, lam=2")
    d_exp = args.d if args.d is not None else float(args.n)
    table = mass_table_for_family(weight, family, quad)
    low = estimate_lower_ahlfors(weight, d_exp, family, quad, table=table)
    print(f"  lower Ahlfors constant for d={d_exp:g}: {low:.8g}")
    if args.output:
        export_mass_table_csv(table, args.output)
        print(f"  wrote mass table to {args.output}")
    return EXIT_PASS


def cmd_corpus_check(args) -> int:
    names = args.names or list(CORPUS_CATALOG)
    try:
        fields_list = [field_from_spec(name, args.n) for name in names]
    except ValueError as err:
        raise ConfigError(str(err)) from err
    quad = QuadratureBudget()
    worst = 0.0
    ok = True
    for f in fields_list:
        err = check_gradient_fd(f)
        worst = max(worst, err)
        status = "ok" if err < args.tol else "FAIL"
        print(f"  [{status}] {f.label}: max relative FD gradient error {err:.3e}")
        if err >= args.tol:
            ok = False
        ball = Ball(f.center, 0.5 * f.support_radius)
        lhs, rhs = poincare_sobolev_check(f, ball, q=2.0, s_exp=1.2, budget=quad)
        print(f"         oscillation bound ratio lhs/rhs = {lhs / rhs:.4f} "
              f"(q=2, s=1.2, half-support ball)")
    print(f"worst FD error {worst:.3e} over {len(fields_list)} fields (tolerance {args.tol:g})")
    return EXIT_PASS if ok else EXIT_UNSTABLE


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="roughriesz",
                     description="Refinement-stability checks for pointwise and "
                                 "Sobolev bounds on rough singular integrals.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("derive", parents=[], help="print derived exponents and constraint slacks")
    _add_hypothesis_flags(p)
    p.add_argument("--theorem", default="thm1", choices=EXPERIMENT_IDS)
    p.set_defaults(fn=cmd_derive)

    p = sub.add_parser("validate", help="check one inequality's hypotheses")
    _add_hypothesis_flags(p)
    p.add_argument("--theorem", default=None, choices=EXPERIMENT_IDS)
    p.add_argument("--config", default=None, help="read hypotheses from a config file")
    p.set_defaults(fn=cmd_validate)

    p = sub.add_parser("pointwise", help="run a pointwise-inequality experiment from a config")
    p.add_argument("--config", required=True)
    p.add_argument("--output", default=None, help="report base path (overrides config)")
    p.add_argument("--format", default=None, choices=("csv", "json", "both"))
    p.add_argument("--no-gate", action="store_true", dest="no_gate")
    p.set_defaults(fn=cmd_pointwise)

    p = sub.add_parser("sobolev", help="run a norm-inequality experiment from a config")
    p.add_argument("--config", required=True)
    p.add_argument("--output", default=None)
    p.add_argument("--format", default=None, choices=("csv", "json", "both"))
    p.add_argument("--no-gate", action="store_true", dest="no_gate")
    p.set_defaults(fn=cmd_sobolev)

    p = sub.add_parser("weights-probe", help="standalone weight estimators")
    p.add_argument("--weight", required=True, help="weight spec, e.g. power:0.4")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--delta", type=float, default=2.0)
    p.add_argument("--d", type=float, default=None)
    p.add_argument("--levels", type=int, default=2)
    p.add_argument("--output", default=None, help="write the ball-mass table CSV here")
    p.set_defaults(fn=cmd_weights_probe)

    p = sub.add_parser("corpus-check", help="finite-difference and oscillation invariants")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--names", nargs="*", default=None)
    p.add_argument("--tol", type=float, default=5e-4)
    p.set_defaults(fn=cmd_corpus_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.fn(args)
    except ConfigError as err:
        print(f"config error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as err:
        print(f"io error: {err}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
