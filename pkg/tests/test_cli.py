import json

import pytest

from roughriesz.cli import (
    EXIT_CONFIG,
    EXIT_HYPOTHESIS,
    EXIT_PASS,
    ConfigError,
    ExperimentConfig,
    load_config,
    main,
)

FAST_OVERRIDES = {
    "grid": {"per_axis": 3, "exterior_points": 4},
    "budget": {
        "sphere_resolution": 16, "radial_nodes": 4,
        "mass_radii_per_octave": 8, "smooth_panels": 4, "floor_octaves": 18,
        "tgrid": {"k_min": -4, "k_max": 3, "subdivisions_per_octave": 2},
        "family": {"half_width": 2.0, "per_axis": 3, "octave_min": -3,
                   "octave_max": 2, "radii_per_octave": 1},
    },
    "corpus": ["bump"],
    "levels": 2,
}


def write_config(tmp_path, name="cfg.json", **overrides):
    raw = {"experiment": "thm2", **FAST_OVERRIDES, **overrides}
    path = tmp_path / name
    path.write_text(json.dumps(raw))
    return path, raw


def test_derive_prints_exponents_and_passes(capsys):
    assert main(["derive", "--n", "2", "--rho", "1.5"]) == EXIT_PASS
    out = capsys.readouterr().out
    assert "rho_bar" in out
    assert "1.2" in out
    assert "theta" in out


def test_derive_boundary_alpha_fails_validation(capsys):
    # s = 1, delta = 1 puts alpha on the open boundary: derived table still
    # prints, but validation must flag it
    code = main(["derive", "--theorem", "thm1", "--n", "2", "--s", "1.0",
                 "--delta", "1.0"])
    assert code == EXIT_HYPOTHESIS
    out = capsys.readouterr().out
    assert "alpha > 1" in out


def test_derive_alpha_flag_is_shortcut_for_s():
    # alpha/delta = 1.1 needs rho_bar <= 1.1, hence the larger rho
    assert main(["derive", "--alpha", "1.375", "--delta", "1.25",
                 "--rho", "1.75"]) == EXIT_PASS
    # mutually exclusive flags are a usage error, remapped to the config exit
    assert main(["derive", "--alpha", "1.3", "--s", "1.2"]) == EXIT_CONFIG


def test_validate_reports_violated_window(capsys):
    code = main(["validate", "--theorem", "thm2", "--q", "4"])
    assert code == EXIT_HYPOTHESIS
    out = capsys.readouterr().out
    assert "hypotheses violated" in out
    assert "violated by 0.7" in out


def test_validate_passes_defaults(capsys):
    assert main(["validate", "--theorem", "thm2"]) == EXIT_PASS


def test_pointwise_run_writes_csv_and_json(tmp_path, capsys):
    cfg, _ = write_config(tmp_path, output=str(tmp_path / "out"))
    code = main(["pointwise", "--config", str(cfg)])
    assert code == EXIT_PASS
    out = capsys.readouterr().out
    assert "PASS" in out
    csv_text = (tmp_path / "out.csv").read_text()
    lines = csv_text.strip().splitlines()
    assert lines[0] == "experiment,function,level,x1,x2,lhs,rhs,ratio,excluded"
    n_pts = 3 * 3 + 4
    assert len(lines) == 1 + n_pts * 2
    summary = json.loads((tmp_path / "out.json").read_text())
    for key in ("experiment", "hypotheses", "derived_exponents", "ladder",
                "max_ratio", "pass"):
        assert key in summary
    assert summary["experiment"] == "thm2"
    assert summary["pass"] is True


def test_pointwise_reruns_are_bit_identical(tmp_path):
    cfg, _ = write_config(tmp_path, output=str(tmp_path / "a"))
    assert main(["pointwise", "--config", str(cfg)]) == EXIT_PASS
    first_csv = (tmp_path / "a.csv").read_bytes()
    first_json = (tmp_path / "a.json").read_bytes()
    cfg2, _ = write_config(tmp_path, name="cfg2.json", output=str(tmp_path / "b"))
    assert main(["pointwise", "--config", str(cfg2)]) == EXIT_PASS
    assert (tmp_path / "b.csv").read_bytes() == first_csv
    assert (tmp_path / "b.json").read_bytes() == first_json


def test_pointwise_rejects_bad_exponents_with_exit_3(tmp_path, capsys):
    cfg, _ = write_config(tmp_path, q=4.0, output=str(tmp_path / "out"))
    assert main(["pointwise", "--config", str(cfg)]) == EXIT_HYPOTHESIS
    out = capsys.readouterr().out
    assert "violated" in out
    assert not (tmp_path / "out.csv").exists()


def test_config_errors_exit_4(tmp_path):
    missing = tmp_path / "nope.json"
    assert main(["pointwise", "--config", str(missing)]) == EXIT_CONFIG

    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["pointwise", "--config", str(bad)]) == EXIT_CONFIG

    unknown = tmp_path / "unknown.json"
    unknown.write_text(json.dumps({"experiment": "thm2", "bogus_key": 1}))
    assert main(["pointwise", "--config", str(unknown)]) == EXIT_CONFIG

    wrong_family = tmp_path / "fam.json"
    wrong_family.write_text(json.dumps({"experiment": "cor2a"}))
    assert main(["pointwise", "--config", str(wrong_family)]) == EXIT_CONFIG


def test_unknown_experiment_id_is_config_error(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"experiment": "thm7"}))
    assert main(["pointwise", "--config", str(cfg)]) == EXIT_CONFIG


def test_experiment_config_round_trip(tmp_path):
    cfg, raw = write_config(tmp_path, weight="power:0.4", levels=3)
    loaded = load_config(str(cfg))
    rebuilt = ExperimentConfig.from_dict(loaded.to_dict())
    assert rebuilt == loaded
    assert loaded.weight == "power:0.4"
    assert loaded.levels == 3
    with pytest.raises(ConfigError):
        ExperimentConfig.from_dict({})
    with pytest.raises(ConfigError):
        ExperimentConfig.from_dict({"experiment": "thm2", "format": "xml"})


def test_weights_probe_smoke(tmp_path, capsys):
    code = main(["weights-probe", "--weight", "power:1", "--n", "2",
                 "--delta", "2.0", "--levels", "2",
                 "--output", str(tmp_path / "masses.csv")])
    assert code == EXIT_PASS
    out = capsys.readouterr().out
    assert "A_delta" in out or "a_delta" in out.lower()
    assert (tmp_path / "masses.csv").exists()


def test_corpus_check_smoke(capsys):
    assert main(["corpus-check", "--n", "2", "--names", "bump", "dipole"]) == EXIT_PASS
    out = capsys.readouterr().out
    assert "bump" in out


def test_usage_error_exits_4():
    assert main(["pointwise"]) == EXIT_CONFIG            # missing --config
    assert main(["derive", "--rho", "oops"]) == EXIT_CONFIG
