"""Experiment engine: evaluates both sides of each inequality over a corpus
of fields and an evaluation grid, at a ladder of refinement levels.

The inequalities carry existential constants, so the falsifiable statement
tested here is refinement stability: the empirical max ratio lhs/rhs must
settle (within 10 percent between the two finest levels) instead of growing
with quadrature, truncation-grid, and ball-family refinement.  Every
supremum (truncation radii, maximal-function balls, Morrey balls) is a
finite discrete sup, hence a certified lower bound of the true one; reports
say so in their metadata.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .corpus import SmoothField, gradient_magnitude_field, scaled_field
from .geometry import (
    Ball,
    DyadicTruncationGrid,
    QuadratureBudget,
    breakpoints_between,
    ceil_pow2,
    panel_nodes,
    sphere_rule,
)
from .hypotheses import (
    POINTWISE_IDS,
    SOBOLEV_IDS,
    DerivedExponents,
    HypothesisSet,
    ValidationReport,
    ahlfors_exponent,
    derive_exponents,
    interpolation_index,
    validate_hypotheses,
)
from .kernels import KernelOnSphere, lorentz_weak_norm, lrho_norm, require_mean_zero
from .norms import weighted_lp_norm, weighted_morrey_norm
from .operators import (
    maximal_truncated_batch,
    precompute_ball_averages,
    riesz_potential_batch,
    weighted_maximal_batch,
    weighted_riesz_batch,
)
from .weights import (
    BallFamily,
    Weight,
    analytic_mass_fn,
    build_mass_table,
    estimate_muckenhoupt_constant,
    mass_table_for_family,
    standard_ball_family,
)

RHS_EXCLUSION_REL = 1e-12
STABILITY_REL = 0.10
WORKERS_ENV = "ROUGHRIESZ_WORKERS"

_KERNEL_IDS = frozenset({"thm1", "cor1a", "cor1b", "frac_subrep", "hoang_a1",
                         "cor2a", "cor2b", "cor2c"})
_SUP_NOTE = ("suprema over truncation radii and ball families are finite "
             "discrete maxima: certified lower bounds of the true suprema")


class HypothesisValidationError(ValueError):
    """Raised when an experiment is gated off; carries the constraint report."""

    def __init__(self, message: str, report: Optional[ValidationReport] = None):
        super().__init__(message)
        self.report = report


@dataclass(frozen=True)
class GridSpec:
    """Evaluation lattice inside each support plus a far-field ring."""

    per_axis: Optional[int] = None
    interior_fraction: float = 0.95
    exterior_scale: float = 1.5
    exterior_points: int = 8
    extra_points: Optional[tuple] = None

    def axis_count(self, n: int) -> int:
        return self.per_axis if self.per_axis is not None else (10 if n == 2 else 5)


def build_grid(f: SmoothField, spec: GridSpec) -> np.ndarray:
    """Lattice over the inscribed cube of the support, plus exterior points."""
    n = f.dimension
    m = spec.axis_count(n)
    half = spec.interior_fraction * f.support_radius / math.sqrt(n)
    axes = [np.linspace(c - half, c + half, m) for c in f.center]
    mesh = np.meshgrid(*axes, indexing="ij")
    pts = np.stack([a.ravel() for a in mesh], axis=-1)
    if spec.exterior_points > 0:
        k = spec.exterior_points
        if n == 2:
            ang = 2.0 * np.pi * np.arange(k) / k
            ring = np.stack([np.cos(ang), np.sin(ang)], axis=-1)
        else:
            corners = np.array([[i, j, l] for i in (-1, 1) for j in (-1, 1) for l in (-1, 1)],
                               dtype=float) / math.sqrt(3.0)
            ring = corners[np.arange(k) % 8]
        pts = np.vstack([pts, f.center[None, :] + spec.exterior_scale * f.support_radius * ring])
    if spec.extra_points is not None:
        pts = np.vstack([pts, np.atleast_2d(np.asarray(spec.extra_points, dtype=float))])
    return pts


@dataclass(frozen=True)
class PointRecord:
    function: str
    level: int
    x: np.ndarray
    lhs: float
    rhs: float
    ratio: float
    excluded: bool


@dataclass(eq=False)
class RatioReport:
    experiment: str
    hypotheses: HypothesisSet
    derived: Optional[DerivedExponents]
    records: list
    ladder: list
    max_ratio: float
    median_ratio: float
    excluded_count: int
    passed: Optional[bool]
    metadata: dict = field(default_factory=dict)

    def summary_dict(self) -> dict:
        return {
            "experiment": self.experiment,
            "hypotheses": self.hypotheses.as_dict(),
            "derived_exponents": self.derived.as_dict() if self.derived else None,
            "ladder": list(self.ladder),
            "max_ratio": self.max_ratio,
            "median_ratio": self.median_ratio,
            "excluded": self.excluded_count,
            "pass": self.passed,
            "metadata": {k: v for k, v in self.metadata.items()
                         if isinstance(v, (str, int, float, bool, list, dict, type(None)))},
        }


@dataclass(frozen=True)
class ExperimentBudget:
    """Quadrature + truncation grid + ball family, refined together per level."""

    quad: QuadratureBudget
    tgrid: DyadicTruncationGrid
    family: BallFamily
    levels: int = 2

    def __post_init__(self):
        if self.levels < 2:
            raise ValueError("refinement ladders need at least two levels")

    def at_level(self, level: int):
        quad = self.quad.refined(level) if level else self.quad
        tgrid, family = self.tgrid, self.family
        for _ in range(level):
            tgrid = tgrid.refined()
            family = family.refined()
        return quad, tgrid, family


def default_experiment_budget(n: int, levels: int = 2,
                              quad: Optional[QuadratureBudget] = None,
                              tgrid: Optional[DyadicTruncationGrid] = None,
                              family: Optional[BallFamily] = None) -> ExperimentBudget:
    return ExperimentBudget(
        quad=quad or QuadratureBudget(),
        tgrid=tgrid or DyadicTruncationGrid(-6, 4, 4),
        family=family or standard_ball_family(n),
        levels=levels,
    )


def _map_over(fn: Callable, items: Sequence):
    workers = int(os.environ.get(WORKERS_ENV, "1") or "1")
    if workers > 1 and len(items) > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, items))
    return [fn(item) for item in items]


def _corpus_scale(f: SmoothField) -> float:
    """max(sup |f|, sup |grad f|) from a fixed deterministic polar probe."""
    n = f.dimension
    ang = sphere_rule(n, 16 if n == 2 else 8).nodes
    radii = np.linspace(0.0, 0.95 * f.support_radius, 13)
    pts = (f.center[None, None, :] + radii[:, None, None] * ang[None, :, :]).reshape(-1, n)
    scale = float(np.abs(f(pts)).max())
    if f.gradient is not None:
        scale = max(scale, float(f.gradient_norm(pts).max()))
    return scale


def refinement_study(run_level: Callable[[int], float], levels: int,
                     rel_tol: float = STABILITY_REL) -> tuple[list, bool]:
    """Ladder of per-level maxima plus the two-finest-levels stability verdict."""
    if levels < 2:
        raise ValueError("a refinement study needs at least two levels")
    ladder = [float(run_level(level)) for level in range(levels)]
    return ladder, ladder_is_stable(ladder, rel_tol)


def ladder_is_stable(ladder: Sequence[float], rel_tol: float = STABILITY_REL) -> bool:
    vals = [float(v) for v in ladder]
    if len(vals) < 2 or not all(math.isfinite(v) for v in vals):
        return False
    a, b = vals[-2], vals[-1]
    if a <= 1e-12 and b <= 1e-12:
        return True
    return abs(b - a) <= rel_tol * max(a, 1e-300)


@dataclass(eq=False)
class _LevelContext:
    h: HypothesisSet
    derived: Optional[DerivedExponents]
    quad: QuadratureBudget
    tgrid: DyadicTruncationGrid
    family: BallFamily
    shared: dict


def _gate(exp_id: str, h: HypothesisSet, kernel: Optional[KernelOnSphere],
          quad: QuadratureBudget, no_gate: bool) -> tuple[ValidationReport, bool]:
    report = validate_hypotheses(h, exp_id)
    if not report.passed and not no_gate:
        lines = "\n".join(report.lines())
        raise HypothesisValidationError(
            f"hypothesis validation failed for '{exp_id}':\n{lines}", report)
    if kernel is not None and exp_id in _KERNEL_IDS:
        try:
            require_mean_zero(kernel, quad.rule_for(h.n))
        except ValueError as err:
            raise HypothesisValidationError(
                f"kernel check failed for '{exp_id}': {err}", report) from err
    return report, report.passed


# ---------------------------------------------------------------------------
# pointwise experiments


def _pw_thm1(h, kernel, weight, f, xs, ctx):
    alpha = h.alpha
    lhs, _ = maximal_truncated_batch(kernel, f, xs, ctx.tgrid, ctx.quad)
    grad_alpha = gradient_magnitude_field(f, alpha)
    potential = weighted_riesz_batch(weight, alpha, grad_alpha, xs, ctx.quad)
    rhs = (ctx.shared["kernel_lrho"] * ctx.shared["a_const"] ** (1.0 / alpha)
           * np.maximum(potential, 0.0) ** (1.0 / alpha))
    return lhs, rhs


def _pw_thm2(h, kernel, weight, f, xs, ctx):
    lhs = np.abs(weighted_riesz_batch(weight, h.alpha, f, xs, ctx.quad))
    averages = precompute_ball_averages(weight, f, ctx.family, ctx.quad,
                                        table=ctx.shared["table"])
    maximal = weighted_maximal_batch(xs, averages)
    norm = weighted_lp_norm(f, h.q, weight, ctx.quad)
    theta = ctx.derived.theta
    return lhs, maximal ** (1.0 - theta) * norm ** theta


def _pw_thm3(h, kernel, weight, f, xs, ctx):
    lhs = np.abs(weighted_riesz_batch(weight, h.alpha, f, xs, ctx.quad))
    averages = precompute_ball_averages(weight, f, ctx.family, ctx.quad,
                                        table=ctx.shared["table"])
    maximal = weighted_maximal_batch(xs, averages)
    norm = weighted_morrey_norm(f, h.a, h.b, weight, ctx.family, ctx.quad,
                                table=ctx.shared["table"])
    vartheta = ctx.derived.vartheta
    return lhs, maximal ** (1.0 - vartheta) * norm ** vartheta


def _pw_cor1a(h, kernel, weight, f, xs, ctx):
    alpha = h.alpha
    lhs, _ = maximal_truncated_batch(kernel, f, xs, ctx.tgrid, ctx.quad)
    averages = precompute_ball_averages(weight, gradient_magnitude_field(f, alpha),
                                        ctx.family, ctx.quad, table=ctx.shared["table"])
    maximal = weighted_maximal_batch(xs, averages)
    norm = weighted_lp_norm(gradient_magnitude_field(f), alpha * h.q, weight, ctx.quad)
    theta = ctx.derived.theta
    return lhs, maximal ** ((1.0 - theta) / alpha) * norm ** theta


def _pw_cor1b(h, kernel, weight, f, xs, ctx):
    alpha = h.alpha
    lhs, _ = maximal_truncated_batch(kernel, f, xs, ctx.tgrid, ctx.quad)
    averages = precompute_ball_averages(weight, gradient_magnitude_field(f, alpha),
                                        ctx.family, ctx.quad, table=ctx.shared["table"])
    maximal = weighted_maximal_batch(xs, averages)
    norm = weighted_morrey_norm(gradient_magnitude_field(f), alpha * h.p_frak,
                                alpha * h.q_frak, weight, ctx.family, ctx.quad,
                                table=ctx.shared["table"])
    vt = interpolation_index(alpha, h.d, h.n, h.delta, h.q_frak)
    return lhs, maximal ** ((1.0 - vt) / alpha) * norm ** vt


def _pw_subrep(h, kernel, weight, f, xs, ctx):
    lhs = np.abs(f(xs))
    rhs = riesz_potential_batch(gradient_magnitude_field(f), 1.0, xs, ctx.quad)
    return lhs, rhs


def _pw_frac_subrep(h, kernel, weight, f, xs, ctx):
    lhs, _ = maximal_truncated_batch(kernel, f, xs, ctx.tgrid, ctx.quad, alpha=h.alpha)
    rhs = (ctx.shared["kernel_lorentz"]
           * riesz_potential_batch(gradient_magnitude_field(f), h.alpha, xs, ctx.quad))
    return lhs, rhs


def _pw_hoang_a1(h, kernel, weight, f, xs, ctx):
    lhs, _ = maximal_truncated_batch(kernel, f, xs, ctx.tgrid, ctx.quad)
    potential = weighted_riesz_batch(weight, 1.0, gradient_magnitude_field(f), xs, ctx.quad)
    rhs = ctx.shared["kernel_lorentz"] * ctx.shared["a_const"] * np.maximum(potential, 0.0)
    return lhs, rhs


_POINTWISE_EVALUATORS = {
    "thm1": _pw_thm1,
    "thm2": _pw_thm2,
    "thm3": _pw_thm3,
    "cor1a": _pw_cor1a,
    "cor1b": _pw_cor1b,
    "subrep": _pw_subrep,
    "frac_subrep": _pw_frac_subrep,
    "hoang_a1": _pw_hoang_a1,
}

_NEEDS_A_CONST = frozenset({"thm1", "hoang_a1"})
_NEEDS_MASS_TABLE = frozenset({"thm2", "thm3", "cor1a", "cor1b"})


def _level_shared(exp_id: str, h: HypothesisSet, kernel, weight, family, quad) -> dict:
    shared = {}
    rule = quad.rule_for(h.n)
    if exp_id == "thm1":
        shared["kernel_lrho"] = lrho_norm(kernel, h.rho, rule)
    if exp_id in ("frac_subrep", "hoang_a1"):
        shared["kernel_lorentz"] = lorentz_weak_norm(kernel, h.n, rule)
    if exp_id in _NEEDS_A_CONST:
        shared["a_const"] = estimate_muckenhoupt_constant(weight, h.delta, family, quad).value
    if exp_id in _NEEDS_MASS_TABLE:
        shared["table"] = mass_table_for_family(weight, family, quad)
    return shared


def run_pointwise_experiment(exp_id: str, h: HypothesisSet, kernel: Optional[KernelOnSphere],
                             weight: Weight, corpus: Sequence[SmoothField],
                             grid_spec: Optional[GridSpec] = None,
                             budget: Optional[ExperimentBudget] = None,
                             no_gate: bool = False) -> RatioReport:
    """Evaluate lhs and rhs of a pointwise inequality over corpus x grid x levels."""
    if exp_id not in POINTWISE_IDS:
        raise ValueError(f"'{exp_id}' is not a pointwise experiment id: {POINTWISE_IDS}")
    if not corpus:
        raise ValueError("empty corpus")
    budget = budget or default_experiment_budget(h.n)
    grid_spec = grid_spec or GridSpec()
    validation, gated = _gate(exp_id, h, kernel, budget.quad, no_gate)
    try:
        derived = derive_exponents(h)
    except ZeroDivisionError:
        derived = None
    evaluator = _POINTWISE_EVALUATORS[exp_id]
    scales = {f.label: _corpus_scale(f) for f in corpus}
    records: list[PointRecord] = []
    ladder: list[float] = []
    a_history: list[float] = []
    for level in range(budget.levels):
        quad, tgrid, family = budget.at_level(level)
        shared = _level_shared(exp_id, h, kernel, weight, family, quad)
        if "a_const" in shared:
            a_history.append(shared["a_const"])
        ctx = _LevelContext(h, derived, quad, tgrid, family, shared)

        def one(f):
            xs = build_grid(f, grid_spec)
            lhs, rhs = evaluator(h, kernel, weight, f, xs, ctx)
            return xs, np.asarray(lhs, dtype=float), np.asarray(rhs, dtype=float)

        level_max = 0.0
        included = 0
        for f, (xs, lhs, rhs) in zip(corpus, _map_over(one, corpus)):
            floor = RHS_EXCLUSION_REL * scales[f.label]
            for i in range(xs.shape[0]):
                excl = bool(rhs[i] <= floor)
                ratio = float("nan") if excl else float(lhs[i] / rhs[i])
                records.append(PointRecord(f.label, level, xs[i].copy(),
                                           float(lhs[i]), float(rhs[i]), ratio, excl))
                if not excl:
                    included += 1
                    level_max = max(level_max, ratio)
        if included == 0:
            raise ValueError(f"all evaluation points excluded at level {level} "
                             f"(rhs below {RHS_EXCLUSION_REL} of the corpus scale)")
        ladder.append(level_max)
    return _assemble_report(exp_id, h, derived, records, ladder, gated, validation, {
        "a_const_ladder": a_history or None,
        "kernel": kernel.label if kernel is not None else None,
        "weight": weight.label,
    })


def _assemble_report(exp_id, h, derived, records, ladder, gated, validation, extra) -> RatioReport:
    final = [r.ratio for r in records if r.level == max(r.level for r in records) and not r.excluded]
    excluded_count = sum(1 for r in records if r.excluded)
    passed: Optional[bool] = ladder_is_stable(ladder) if gated else None
    metadata = {
        "note": _SUP_NOTE,
        "gated": gated,
        "validation": validation.lines(),
        **{k: v for k, v in extra.items() if v is not None},
    }
    return RatioReport(
        experiment=exp_id,
        hypotheses=h,
        derived=derived,
        records=records,
        ladder=ladder,
        max_ratio=max(final) if final else 0.0,
        median_ratio=float(np.median(final)) if final else 0.0,
        excluded_count=excluded_count,
        passed=passed,
        metadata=metadata,
    )


# ---------------------------------------------------------------------------
# Sobolev (norm-level) experiments


def _outer_tgrid(tgrid: DyadicTruncationGrid, r_out: float) -> DyadicTruncationGrid:
    # the outer integral sees thousands of points; halve the t-resolution and
    # let refinement levels restore it.  The window shifts by the octave of
    # the far-field radius (an exact integer: r_out is a power of two), so a
    # dilated function sees the exactly dilated truncation ladder and the
    # homogeneity check is free of window-clipping bias.
    shift = int(round(math.log2(r_out / 4.0)))
    return DyadicTruncationGrid(tgrid.k_min + shift, tgrid.k_max + shift,
                                max(2, tgrid.subdivisions_per_octave // 2))


def _sobolev_layout(weight: Weight, f: SmoothField, quad: QuadratureBudget,
                    extra_radii=None):
    """Polar nodes about the support center out to a dyadic far-field radius.

    Returns points, full quadrature weights (including the weight function),
    the (radii, angles) shape, and panel positions of extra_radii so partial
    integrals over concentric balls are exact prefix sums.
    """
    n = f.dimension
    r_out = ceil_pow2(4.0 * f.support_radius)
    rule = sphere_rule(n, max(8, quad.sphere_resolution // 4))
    bp = breakpoints_between(r_out * 2.0 ** -8, r_out, quad.panels_per_octave,
                             extra=extra_radii)
    r, wr = panel_nodes(bp, quad.radial_nodes)
    pts = (f.center[None, None, :] + r[:, None, None] * rule.nodes[None, :, :])
    wfull = (wr * r ** (n - 1.0))[:, None] * rule.weights[None, :] * weight.evaluate(pts)
    positions = None
    if extra_radii is not None:
        positions = np.searchsorted(r, np.asarray(extra_radii, dtype=float), side="right")
    return pts.reshape(-1, n), wfull, (r.size, rule.size), r_out, positions


def _tstar_lebesgue_norm(kernel, f, weight, p_exp, quad, tgrid) -> tuple[float, float]:
    pts, wfull, _, r_out, _ = _sobolev_layout(weight, f, quad)
    tgrid_out = _outer_tgrid(tgrid, r_out)
    tstar, _ = maximal_truncated_batch(kernel, f, pts, tgrid_out, quad)
    return float(np.dot(wfull.ravel(), tstar ** p_exp) ** (1.0 / p_exp)), r_out


def _tstar_morrey_concentric(kernel, f, weight, p_exp, q_exp, quad, tgrid) -> tuple[float, float]:
    """Morrey norm of the maximal operator image over concentric balls only."""
    r_top = ceil_pow2(4.0 * f.support_radius)
    k_hi = int(round(math.log2(r_top)))
    ball_radii = np.exp2(np.arange((k_hi - 7) * 2, k_hi * 2 + 1) / 2.0)
    pts, wfull, shape, r_out, pos = _sobolev_layout(weight, f, quad, extra_radii=ball_radii)
    tgrid_out = _outer_tgrid(tgrid, r_out)
    tstar, _ = maximal_truncated_batch(kernel, f, pts, tgrid_out, quad)
    contrib = (wfull * (tstar ** p_exp).reshape(shape)).sum(axis=1)
    prefix = np.concatenate([[0.0], np.cumsum(contrib)])[pos]
    mass_fn = analytic_mass_fn(weight, f.center)
    if mass_fn is not None:
        masses = mass_fn(ball_radii)
    else:
        table = build_mass_table(weight, f.center[None, :], ball_radii, quad)
        masses = table.masses[0]
    terms = masses ** (p_exp / q_exp - 1.0) * prefix
    return float(terms.max() ** (1.0 / p_exp)), r_out


def run_sobolev_experiment(exp_id: str, h: HypothesisSet, kernel: KernelOnSphere,
                           weight: Weight, corpus: Sequence[SmoothField],
                           budget: Optional[ExperimentBudget] = None,
                           no_gate: bool = False) -> RatioReport:
    """Norm-level inequalities: one lhs/rhs pair per (function, level)."""
    if exp_id not in SOBOLEV_IDS:
        raise ValueError(f"'{exp_id}' is not a Sobolev experiment id: {SOBOLEV_IDS}")
    if not corpus:
        raise ValueError("empty corpus")
    budget = budget or default_experiment_budget(h.n)
    validation, gated = _gate(exp_id, h, kernel, budget.quad, no_gate)
    derived = derive_exponents(h)
    alpha = h.alpha
    vt = interpolation_index(alpha, ahlfors_exponent(h.n, h.delta, h.q_frak),
                             h.n, h.delta, h.q_frak)
    records: list[PointRecord] = []
    ladder: list[float] = []
    outer_radius = None
    for level in range(budget.levels):
        quad, tgrid, family = budget.at_level(level)
        table = (mass_table_for_family(weight, family, quad)
                 if exp_id in ("cor2b", "cor2c") else None)

        def one(f):
            grad = gradient_magnitude_field(f)
            if exp_id == "cor2a":
                lhs, r_out = _tstar_lebesgue_norm(kernel, f, weight, derived.r, quad, tgrid)
                rhs = weighted_lp_norm(grad, alpha * h.q, weight, quad)
            elif exp_id == "cor2b":
                lhs, r_out = _tstar_lebesgue_norm(kernel, f, weight, derived.s, quad, tgrid)
                leb = weighted_lp_norm(grad, alpha * h.q_frak, weight, quad)
                mor = weighted_morrey_norm(grad, alpha * h.p_frak, alpha * h.q_frak,
                                           weight, family, quad, table=table)
                rhs = leb ** (1.0 - vt) * mor ** vt
            else:
                lhs, r_out = _tstar_morrey_concentric(kernel, f, weight,
                                                      h.a_frak, h.b_frak, quad, tgrid)
                mor1 = weighted_morrey_norm(grad, (1.0 - vt) * h.a_frak,
                                            (1.0 - vt) * h.b_frak, weight, family,
                                            quad, table=table)
                mor2 = weighted_morrey_norm(grad, alpha * h.p_frak, alpha * h.q_frak,
                                            weight, family, quad, table=table)
                rhs = mor1 ** (1.0 - vt) * mor2 ** vt
            return lhs, rhs, r_out

        level_max = 0.0
        for f, (lhs, rhs, r_out) in zip(corpus, _map_over(one, corpus)):
            outer_radius = r_out
            floor = RHS_EXCLUSION_REL * _corpus_scale(f)
            excl = bool(rhs <= floor)
            ratio = float("nan") if excl else float(lhs / rhs)
            records.append(PointRecord(f.label, level, f.center.copy(),
                                       float(lhs), float(rhs), ratio, excl))
            if not excl:
                level_max = max(level_max, ratio)
        ladder.append(level_max)
    extra = {
        "kernel": kernel.label,
        "weight": weight.label,
        "outer_radius": outer_radius,
        "morrey_lhs_family": "concentric balls about the support center" if exp_id == "cor2c" else None,
    }
    return _assemble_report(exp_id, h, derived, records, ladder, gated, validation, extra)


def dilation_check(h: HypothesisSet, kernel: KernelOnSphere, weight: Weight,
                   f: SmoothField, lams: Sequence[float] = (0.5, 2.0),
                   budget: Optional[ExperimentBudget] = None) -> dict:
    """Homogeneity of the Sobolev bound under f -> f(lam x), unweighted case.

    With delta = 1 and d = n both sides scale as lam^(1 - n/(alpha q)); the
    check reports the measured factors and their relative deviations.
    """
    budget = budget or default_experiment_budget(h.n)
    quad, tgrid, _ = budget.at_level(0)
    expected_exp = 1.0 - h.n / (h.alpha * h.q)

    def sides(g):
        lhs, _ = _tstar_lebesgue_norm(kernel, g, weight, derive_exponents(h).r, quad, tgrid)
        rhs = weighted_lp_norm(gradient_magnitude_field(g), h.alpha * h.q, weight, quad)
        return lhs, rhs

    lhs0, rhs0 = sides(f)
    results = []
    for lam in lams:
        lhs1, rhs1 = sides(scaled_field(f, lam))
        expected = lam ** expected_exp
        results.append({
            "lam": lam,
            "expected_factor": expected,
            "lhs_factor": lhs1 / lhs0,
            "rhs_factor": rhs1 / rhs0,
            "lhs_deviation": abs(lhs1 / lhs0 / expected - 1.0),
            "rhs_deviation": abs(rhs1 / rhs0 / expected - 1.0),
        })
    return {"expected_exponent": expected_exp, "results": results}
