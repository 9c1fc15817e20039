import numpy as np
import pytest

from roughriesz.corpus import bump_field, dipole_field
from roughriesz.geometry import DyadicTruncationGrid, QuadratureBudget
from roughriesz.harness import (
    ExperimentBudget,
    GridSpec,
    HypothesisValidationError,
    RatioReport,
    build_grid,
    default_experiment_budget,
    dilation_check,
    ladder_is_stable,
    refinement_study,
    run_pointwise_experiment,
    run_sobolev_experiment,
)
from roughriesz.hypotheses import HypothesisSet
from roughriesz.kernels import cosine_kernel
from roughriesz.weights import const_weight, standard_ball_family

FAST_QUAD = QuadratureBudget(sphere_resolution=16, radial_nodes=4,
                             mass_radii_per_octave=8, smooth_panels=4,
                             floor_octaves=18)
FAST_FAMILY = standard_ball_family(2, half_width=2.0, per_axis=3,
                                   octave_min=-3, octave_max=2, radii_per_octave=1)


def fast_budget(levels: int = 2) -> ExperimentBudget:
    return ExperimentBudget(quad=FAST_QUAD, tgrid=DyadicTruncationGrid(-4, 3, 2),
                            family=FAST_FAMILY, levels=levels)


SMALL_GRID = GridSpec(per_axis=3, exterior_points=4)


def test_build_grid_counts_and_placement():
    f = bump_field((0.0, 0.0), 1.0)
    pts = build_grid(f, GridSpec(per_axis=4, exterior_points=8, exterior_scale=1.5))
    assert pts.shape == (16 + 8, 2)
    radii = np.linalg.norm(pts - f.center, axis=1)
    # interior lattice sits inside the inscribed cube, exterior on a ring
    assert np.all(radii[:16] <= f.support_radius + 1e-12)
    np.testing.assert_allclose(radii[16:], 1.5 * f.support_radius, rtol=1e-12)


def test_build_grid_defaults_and_extras():
    f2 = bump_field((0.0, 0.0), 1.0)
    assert build_grid(f2, GridSpec(exterior_points=0)).shape == (100, 2)
    f3 = bump_field((0.0, 0.0, 0.0), 1.0)
    assert build_grid(f3, GridSpec(exterior_points=0)).shape == (125, 3)
    extra = np.array([[0.0, 0.0], [0.11, 0.07]])
    pts = build_grid(f2, GridSpec(per_axis=3, exterior_points=0, extra_points=extra))
    np.testing.assert_array_equal(pts[-2:], extra)


def test_ladder_stability_rules():
    assert ladder_is_stable([1.0, 1.05])
    assert not ladder_is_stable([1.0, 1.2])
    assert ladder_is_stable([3.0, 1.0, 1.05])   # only the two finest levels count
    assert ladder_is_stable([5e-13, 8e-13])     # both below the degeneracy floor
    assert not ladder_is_stable([1.0])
    assert not ladder_is_stable([1.0, float("nan")])
    assert ladder_is_stable([1.0, 1.19], rel_tol=0.2)


def test_refinement_study_drives_levels():
    calls = []

    def run_level(level):
        calls.append(level)
        return 2.0 + 0.001 * level

    ladder, stable = refinement_study(run_level, 3)
    assert calls == [0, 1, 2]
    assert len(ladder) == 3 and stable
    with pytest.raises(ValueError):
        refinement_study(run_level, 1)


def test_experiment_budget_validation_and_levels():
    with pytest.raises(ValueError):
        fast_budget(levels=1)
    b = fast_budget(levels=3)
    quad1, tgrid1, family1 = b.at_level(1)
    assert quad1.sphere_resolution == 2 * b.quad.sphere_resolution
    assert tgrid1.subdivisions_per_octave == 2 * b.tgrid.subdivisions_per_octave
    assert family1.radii.size > b.family.radii.size
    quad0, tgrid0, family0 = b.at_level(0)
    assert quad0.sphere_resolution == b.quad.sphere_resolution
    assert tgrid0 is b.tgrid and family0 is b.family


def test_gate_rejects_bad_exponents_before_evaluation():
    h = HypothesisSet(q=4.0)
    with pytest.raises(HypothesisValidationError) as exc:
        run_pointwise_experiment("thm2", h, None, const_weight(1.0),
                                 [bump_field((0.0, 0.0), 1.0)],
                                 grid_spec=SMALL_GRID, budget=fast_budget())
    assert "violated by 0.7" in str(exc.value)
    assert not exc.value.report.passed


def test_no_gate_runs_but_reports_none_verdict():
    h = HypothesisSet(q=4.0)
    rep = run_pointwise_experiment("thm2", h, None, const_weight(1.0),
                                   [bump_field((0.0, 0.0), 1.0)],
                                   grid_spec=SMALL_GRID, budget=fast_budget(),
                                   no_gate=True)
    assert rep.passed is None
    assert rep.summary_dict()["pass"] is None
    assert rep.metadata["gated"] is False


def test_zero_field_is_fully_excluded_and_raises():
    h = HypothesisSet()
    silent = bump_field((0.0, 0.0), 1.0, 0.0)
    with pytest.raises(ValueError, match="excluded"):
        run_pointwise_experiment("thm2", h, None, const_weight(1.0), [silent],
                                 grid_spec=SMALL_GRID, budget=fast_budget())


def test_thm2_report_shape_and_stability():
    h = HypothesisSet()
    f = bump_field((0.0, 0.0), 1.0)
    rep = run_pointwise_experiment("thm2", h, None, const_weight(1.0), [f],
                                   grid_spec=SMALL_GRID, budget=fast_budget())
    assert isinstance(rep, RatioReport)
    n_pts = 9 + 4
    assert len(rep.records) == n_pts * 2          # two levels
    assert rep.passed is True
    assert len(rep.ladder) == 2
    # constant weight: maximal averages and potentials are nearly exact, so
    # the two levels nearly coincide
    assert abs(rep.ladder[1] - rep.ladder[0]) <= 1e-3 * rep.ladder[0]
    assert 0.0 < rep.max_ratio < 10.0
    s = rep.summary_dict()
    for key in ("experiment", "hypotheses", "derived_exponents", "ladder",
                "max_ratio", "median_ratio", "excluded", "pass", "metadata"):
        assert key in s, key
    assert s["experiment"] == "thm2"
    assert s["derived_exponents"]["theta"] == pytest.approx(0.8, abs=1e-13)


def test_thm3_collapses_to_thm2_at_equal_morrey_exponents():
    """a = b = q routes the Morrey factor through the covering-ball reroute,
    so per-point lhs and rhs match the Lebesgue experiment bit for bit."""
    h = HypothesisSet()
    f = bump_field((0.3, 0.1), 0.8)
    kw = dict(grid_spec=SMALL_GRID, budget=fast_budget())
    rep2 = run_pointwise_experiment("thm2", h, None, const_weight(1.0), [f], **kw)
    rep3 = run_pointwise_experiment("thm3", h, None, const_weight(1.0), [f], **kw)
    assert len(rep2.records) == len(rep3.records)
    for r2, r3 in zip(rep2.records, rep3.records):
        np.testing.assert_array_equal(r2.x, r3.x)
        assert abs(r2.lhs - r3.lhs) <= 1e-9 * max(abs(r2.lhs), 1.0)
        assert abs(r2.rhs - r3.rhs) <= 1e-9 * max(abs(r2.rhs), 1.0)


def test_grid_enlargement_keeps_shared_points_bitwise():
    """Adding interior probe points must not move existing ratios.

    The radial ladder is anchored to the octave of the farthest point, so
    same-octave enlargements reuse the identical panel table.
    """
    h = HypothesisSet()
    f = bump_field((0.0, 0.0), 1.0)
    base = GridSpec(per_axis=3, exterior_points=4)
    extra = np.array([[0.21, 0.13], [-0.35, 0.18]])
    bigger = GridSpec(per_axis=3, exterior_points=4, extra_points=extra)
    rep_a = run_pointwise_experiment("thm2", h, None, const_weight(1.0), [f],
                                     grid_spec=base, budget=fast_budget())
    rep_b = run_pointwise_experiment("thm2", h, None, const_weight(1.0), [f],
                                     grid_spec=bigger, budget=fast_budget())
    shared = len([r for r in rep_a.records if r.level == 0])
    a0 = [r for r in rep_a.records if r.level == 0]
    b0 = [r for r in rep_b.records if r.level == 0][:shared]
    for ra, rb in zip(a0, b0):
        np.testing.assert_array_equal(ra.x, rb.x)
        assert ra.lhs == rb.lhs
        assert ra.rhs == rb.rhs


def test_thm1_radial_kill_center_is_benign():
    # at the bump center the rough integral vanishes by symmetry; the record
    # stays included (rhs is healthy there) with ratio ~ 0
    h = HypothesisSet()
    f = bump_field((0.0, 0.0), 1.0)
    spec = GridSpec(per_axis=3, exterior_points=0,
                    extra_points=np.array([[0.0, 0.0]]))
    rep = run_pointwise_experiment("thm1", h, cosine_kernel(2), const_weight(1.0),
                                   [f], grid_spec=spec, budget=fast_budget())
    center_recs = [r for r in rep.records if np.all(r.x == 0.0)]
    assert center_recs and not any(r.excluded for r in center_recs)
    assert all(r.ratio < 1e-6 for r in center_recs)
    assert rep.excluded_count == 0


def test_subrepresentation_ratio_stays_below_one_on_small_grid():
    h = HypothesisSet()
    f = bump_field((0.0, 0.0), 1.0)
    spec = GridSpec(per_axis=3, exterior_points=0, interior_fraction=0.8)
    rep = run_pointwise_experiment("subrep", h, None, const_weight(1.0), [f],
                                   grid_spec=spec, budget=fast_budget())
    assert rep.max_ratio <= 1.05
    assert rep.passed is True


def test_sobolev_cor2a_single_record_per_field_level():
    h = HypothesisSet()
    f = bump_field((0.0, 0.0), 1.0)
    rep = run_sobolev_experiment("cor2a", h, cosine_kernel(2), const_weight(1.0),
                                 [f], budget=fast_budget())
    assert len(rep.records) == 2      # one field, two levels
    assert rep.summary_dict()["derived_exponents"]["r"] == pytest.approx(8.0, abs=1e-12)
    assert all(np.isfinite(r.lhs) and np.isfinite(r.rhs) for r in rep.records)
    assert rep.passed is True
    assert "outer_radius" in rep.metadata


def test_sobolev_rejects_pointwise_id():
    h = HypothesisSet()
    with pytest.raises(ValueError, match="not a Sobolev experiment id"):
        run_sobolev_experiment("thm1", h, cosine_kernel(2), const_weight(1.0),
                               [bump_field((0.0, 0.0), 1.0)], budget=fast_budget())
    with pytest.raises(ValueError, match="not a pointwise experiment id"):
        run_pointwise_experiment("cor2a", h, cosine_kernel(2), const_weight(1.0),
                                 [bump_field((0.0, 0.0), 1.0)], budget=fast_budget())


def test_dilation_scaling_is_exact_on_dyadic_factors():
    """f -> f(lam x) with lam a power of two reuses the identical ladder
    shifted by whole octaves, so measured scaling factors match the predicted
    exponent to rounding."""
    h = HypothesisSet()
    out = dilation_check(h, cosine_kernel(2), const_weight(1.0),
                         dipole_field((0.0, 0.0)), lams=(0.5, 2.0),
                         budget=fast_budget())
    assert out["expected_exponent"] == pytest.approx(1.0 - 2.0 / 1.6, abs=1e-12)
    assert len(out["results"]) == 2
    for rec in out["results"]:
        assert rec["lhs_deviation"] < 0.01
        assert rec["rhs_deviation"] < 0.01
