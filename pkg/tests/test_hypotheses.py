import numpy as np
import pytest

from roughriesz.hypotheses import (
    EXPERIMENT_IDS,
    POINTWISE_IDS,
    SOBOLEV_IDS,
    HypothesisSet,
    ahlfors_exponent,
    derive_exponents,
    interpolation_index,
    sobolev_exponent,
    validate_hypotheses,
)


def test_default_set_and_alpha_product():
    h = HypothesisSet()
    assert (h.n, h.rho, h.delta, h.s, h.q) == (2, 1.5, 1.0, 1.2, 4.0 / 3.0)
    assert h.alpha == pytest.approx(1.2, abs=1e-15)
    # unset exponents collapse onto q, d onto n
    assert h.a == h.b == h.p_frak == h.q_frak == h.beta == h.q
    assert h.d == 2.0


def test_dimension_and_positivity_validation():
    with pytest.raises(ValueError):
        HypothesisSet(n=4)
    with pytest.raises(ValueError):
        HypothesisSet(rho=-1.0)
    with pytest.raises(ValueError):
        HypothesisSet(q=float("inf"))


def test_rho_bar_hand_value():
    d = derive_exponents(HypothesisSet())
    # rho n / (rho n + rho - n) at rho = 3/2, n = 2
    assert d.rho_bar == pytest.approx(1.2, abs=1e-15)
    assert d.rho_conj == pytest.approx(3.0, abs=1e-14)


def test_theta_and_r_hand_values():
    d = derive_exponents(HypothesisSet())
    # theta = alpha / (d - n delta (1 - 1/q)) = 1.2 / 1.5
    assert d.theta == pytest.approx(0.8, abs=1e-13)
    # r = alpha q (n/q) / (n/q - alpha) = 1.6 * 1.5 / 0.3
    assert d.r == pytest.approx(8.0, abs=1e-12)
    assert d.s == pytest.approx(8.0, abs=1e-12)   # q_frak defaults to q
    assert d.vartheta == pytest.approx(0.8, abs=1e-13)


def test_ahlfors_exponent_scaling_neutral_form():
    # d(delta, beta) = n (1/beta + delta (1 - 1/beta)); delta = 1 gives n
    assert ahlfors_exponent(2, 1.0, 4.0 / 3.0) == pytest.approx(2.0, abs=1e-15)
    assert ahlfors_exponent(2, 1.25, 2.0) == pytest.approx(2.0 * (0.5 + 1.25 * 0.5), abs=1e-15)
    with pytest.raises(ZeroDivisionError):
        ahlfors_exponent(2, 1.0, 0.0)


def test_d_of_beta_consistency():
    # s = 1.1 keeps alpha = 1.375 clear of the Sobolev gap n/q = 1.5
    h = HypothesisSet(delta=1.25, s=1.1, beta=2.0, d=ahlfors_exponent(2, 1.25, 2.0))
    d = derive_exponents(h)
    assert abs(d.d_of_beta - h.d) < 1e-12


def test_a_frak_identification_matches_sobolev_exponent():
    h = HypothesisSet()
    d = derive_exponents(h)
    # identification a_frak = b_frak = alpha q_frak (n/q_frak) / (n/q_frak - alpha)
    assert h.a_frak == pytest.approx(d.s, abs=1e-12)
    assert h.b_frak == pytest.approx(h.a_frak, abs=1e-15)
    # explicit values survive
    h2 = HypothesisSet(a_frak=5.0, b_frak=9.0)
    assert (h2.a_frak, h2.b_frak) == (5.0, 9.0)


def test_boundary_parameters_raise_zero_division():
    with pytest.raises(ZeroDivisionError):
        derive_exponents(HypothesisSet(rho=1.0))
    with pytest.raises(ZeroDivisionError):
        derive_exponents(HypothesisSet(n=2, rho=2.0 / 3.0))
    # Sobolev gap: n/q == alpha at q = n / alpha
    with pytest.raises(ZeroDivisionError):
        sobolev_exponent(1.2, 2, 1.0, 2.0 / 1.2)
    with pytest.raises(ZeroDivisionError):
        interpolation_index(1.2, 1.5, 2, 1.0, 4.0)   # d - n delta (1 - 1/q) = 0


def test_default_set_passes_thm1_and_thm2():
    h = HypothesisSet()
    for theorem in ("thm1", "thm2", "cor1a", "cor2a"):
        report = validate_hypotheses(h, theorem)
        assert report.passed, (theorem, report.lines())


def test_lebesgue_window_rejects_q_4():
    h = HypothesisSet(q=4.0)
    report = validate_hypotheses(h, "thm2")
    assert not report.passed
    bad = {c.name: c for c in report.failures()}
    name = "window d - n delta (1 - 1/q) > alpha"
    assert name in bad
    assert bad[name].slack == pytest.approx(-0.7, abs=1e-13)
    assert "violated by 0.7" in bad[name].detail
    # the violation is detectable before any operator evaluation
    joined = "\n".join(report.lines())
    assert "FAIL" in joined


def test_alpha_boundary_fails_strictly():
    h = HypothesisSet(s=1.0, delta=1.0)   # alpha = 1 exactly
    report = validate_hypotheses(h, "thm1")
    assert not report.passed
    assert any(c.name == "alpha > 1" and c.slack == 0.0 for c in report.failures())


def test_rho_bar_le_s_equality_allowed():
    # defaults sit exactly at s = rho_bar = 1.2; nonstrict must accept
    report = validate_hypotheses(HypothesisSet(), "thm1")
    checks = {c.name: c for c in report.checks}
    assert checks["rho_bar <= s"].satisfied
    assert abs(checks["rho_bar <= s"].slack) < 1e-12


def test_hoang_a1_requires_unit_delta_and_alpha():
    ok = HypothesisSet(delta=1.0, s=1.0)
    rep = validate_hypotheses(ok, "hoang_a1")
    assert rep.passed
    rep2 = validate_hypotheses(HypothesisSet(delta=1.25, s=1.0), "hoang_a1")
    assert not rep2.passed


def test_thm3_orders_morrey_exponents():
    h = HypothesisSet(a=1.2, b=4.0 / 3.0)
    assert validate_hypotheses(h, "thm3").passed
    h_bad = HypothesisSet(a=1.5, b=4.0 / 3.0)
    rep = validate_hypotheses(h_bad, "thm3")
    assert any(c.name == "a <= b" for c in rep.failures())


def test_unknown_id_raises():
    with pytest.raises(ValueError, match="unknown inequality id"):
        validate_hypotheses(HypothesisSet(), "thm9")


def test_experiment_id_partition():
    assert set(POINTWISE_IDS) & set(SOBOLEV_IDS) == set()
    assert set(EXPERIMENT_IDS) == set(POINTWISE_IDS) | set(SOBOLEV_IDS)
    assert "thm1" in POINTWISE_IDS and "cor2c" in SOBOLEV_IDS


def test_interpolation_indices_live_in_unit_interval_when_valid():
    """theta, vartheta in (0, 1) on every sampled hypothesis set that validates.

    The windows force denominators above alpha, so the indices are proper
    interpolation weights; sampled over a box of parameter values.
    """
    rng = np.random.default_rng(11)
    seen = 0
    for _ in range(400):
        delta = float(rng.uniform(1.0, 1.5))
        s = float(rng.uniform(0.8, 1.9 / delta))
        q = float(rng.uniform(1.05, 3.5))
        d = float(rng.uniform(1.2, 3.0))
        try:
            h = HypothesisSet(n=2, rho=float(rng.uniform(1.05, 1.9)),
                              delta=delta, s=s, q=q, d=d)
        except ValueError:
            continue
        try:
            der = derive_exponents(h)
        except ZeroDivisionError:
            continue
        if validate_hypotheses(h, "thm2").passed:
            seen += 1
            assert 0.0 < der.theta < 1.0
        if validate_hypotheses(h, "cor2a").passed:
            assert der.r > h.alpha * h.q
    assert seen > 20   # the sampler actually exercises the window


def test_sobolev_exponent_exceeds_source_integrability():
    # r = alpha q gap / (gap - alpha) > alpha q whenever 0 < alpha < gap
    for q in (4.0 / 3.0, 1.5, 2.0):
        for alpha in (1.05, 1.2, 1.3):
            gap = 2.0 / q
            if gap <= alpha:
                continue
            r = sobolev_exponent(alpha, 2, 1.0, q)
            assert r > alpha * q


def test_as_dict_round_trip():
    h = HypothesisSet(delta=1.25, s=1.1)
    d = h.as_dict()
    assert d["alpha"] == pytest.approx(1.375)
    rebuilt = HypothesisSet(**{k: v for k, v in d.items() if k != "alpha"})
    assert rebuilt == h
