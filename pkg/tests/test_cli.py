"""CLI tests driven through click's isolated runner."""

import json

import pytest
from click.testing import CliRunner

from darbouxkit.cli import main


@pytest.fixture
def runner():
    return CliRunner()


def invoke(runner, args, env=None):
    return runner.invoke(main, args, env=env, catch_exceptions=False)


class TestVerifyPullback:
    def test_inline_model_json(self, runner, tmp_path):
        out = tmp_path / "r.json"
        result = invoke(
            runner,
            ["verify-pullback", "--model", '{"kind": "cigar", "n": 2}',
             "--points", "12", "--out", str(out)],
        )
        assert result.exit_code == 0, result.output
        rep = json.loads(out.read_text())
        assert set(rep) == {"model", "n", "max_residual", "points_checked", "pass"}
        assert rep["pass"] is True

    def test_model_file_and_shorthand(self, runner, tmp_path):
        desc = tmp_path / "model.json"
        desc.write_text(json.dumps({"kind": "soliton", "n": 2}))
        r1 = invoke(runner, ["verify-pullback", "--model", str(desc), "--points", "6"])
        assert r1.exit_code == 0 and '"soliton-n2"' in r1.output
        r2 = invoke(runner, ["verify-pullback", "--model", "cigar:3", "--points", "6"])
        assert r2.exit_code == 0 and '"cigar-n3"' in r2.output

    def test_fd_method(self, runner):
        result = invoke(
            runner,
            ["verify-pullback", "--model", "cigar:1", "--points", "5",
             "--method", "fd", "--tolerance", "1e-5"],
        )
        assert result.exit_code == 0

    def test_failing_tolerance_sets_exit_code(self, runner):
        result = invoke(
            runner,
            ["verify-pullback", "--model", "cigar:1", "--points", "5",
             "--tolerance", "1e-30"],
        )
        assert result.exit_code != 0

    def test_bad_model_is_click_error(self, runner):
        result = runner.invoke(main, ["verify-pullback", "--model", "wat"])
        assert result.exit_code != 0


class TestSolitonProfileCommand:
    def test_csv_written(self, runner, tmp_path):
        out = tmp_path / "prof.csv"
        result = invoke(
            runner,
            ["soliton-profile", "--n", "2", "--t-min", "-3", "--t-max", "3",
             "--count", "7", "--out", str(out)],
        )
        assert result.exit_code == 0
        lines = out.read_text().strip().splitlines()
        assert lines[0] == "t,u_prime,u_second,ode_residual"
        assert len(lines) == 8


class TestGeodesicCommand:
    def test_csv_columns(self, runner, tmp_path):
        out = tmp_path / "geo.csv"
        result = invoke(
            runner,
            ["geodesic", "--model", "cigar:2", "--start", "0.5,0.5",
             "--vel", "1,0", "--length", "2", "--out", str(out)],
        )
        assert result.exit_code == 0
        header = out.read_text().splitlines()[0]
        assert header == "tau,re_z1,im_z1,re_z2,im_z2,energy_drift"

    def test_complex_parsing_with_i_suffix(self, runner, tmp_path):
        out = tmp_path / "geo.csv"
        result = invoke(
            runner,
            ["geodesic", "--model", "cigar:1", "--start", "0.1+0.2i",
             "--vel", "1i", "--length", "1", "--out", str(out)],
        )
        assert result.exit_code == 0

    def test_dimension_mismatch_is_clean_error(self, runner):
        result = invoke(
            runner,
            ["geodesic", "--model", "cigar:2", "--start", "1.5",
             "--vel", "1", "--length", "1"],
        )
        assert result.exit_code != 0
        assert "--start has 1 coordinates" in result.output
        assert "Traceback" not in result.output


class TestSuiteErrorPaths:
    def test_missing_config_file_is_clean_error(self, runner):
        result = invoke(runner, ["suite", "--config", "/nonexistent.json"])
        assert result.exit_code != 0
        assert "Error" in result.output
        assert "Traceback" not in result.output


class TestCurvatureCommand:
    def test_tensor_json(self, runner, tmp_path):
        out = tmp_path / "curv.json"
        result = invoke(
            runner,
            ["curvature", "--model", "cigar:1", "--point", "1", "--out", str(out)],
        )
        assert result.exit_code == 0
        data = json.loads(out.read_text())
        assert data["tensor_re"][0][0][0][0] == pytest.approx(0.125, rel=1e-12)
        assert data["symmetry_residual"] <= 1e-12
        assert data["sectional_first_axis"] == pytest.approx(0.5, rel=1e-12)


class TestCirizaCommand:
    def test_spec_parsing_and_pass(self, runner, tmp_path):
        out = tmp_path / "cir.json"
        result = invoke(
            runner,
            ["ciriza", "--n", "3", "--spec", "sigma=1,1,2,alpha=1,i,1",
             "--samples", "8", "--out", str(out)],
        )
        assert result.exit_code == 0, result.output
        data = json.loads(out.read_text())
        assert data["pass"] is True
        assert data["expected_rank"] == 2

    def test_phases_padded_with_ones(self, runner):
        result = invoke(
            runner, ["ciriza", "--n", "2", "--spec", "sigma=1,1,alpha=i", "--samples", "4"]
        )
        assert result.exit_code == 0
        assert '"(1+0j)"' in result.output

    def test_soliton_kind(self, runner):
        result = invoke(
            runner,
            ["ciriza", "--n", "2", "--spec", "sigma=1,0,alpha=1",
             "--kind", "soliton", "--samples", "4"],
        )
        assert result.exit_code == 0


class TestDefectCommand:
    def test_counterexample_at_point(self, runner):
        result = invoke(
            runner,
            ["defect", "--f1", "1", "--f2", "0,1", "--points", "6", "--at", "1"],
        )
        assert result.exit_code == 0
        data = json.loads(result.output)
        assert data["at"]["direct"] == pytest.approx(-0.1, rel=1e-9)
        assert data["at"]["viaA"] == pytest.approx(-0.1, rel=1e-9)
        assert data["pass"] is True

    def test_degenerate_pair_errors_cleanly(self, runner):
        result = runner.invoke(main, ["defect", "--f1", "0", "--f2", "0", "--points", "2"])
        assert result.exit_code != 0


class TestSuiteCommand:
    def test_subset_run_all_pass(self, runner, tmp_path):
        out = tmp_path / "suite.json"
        result = invoke(
            runner,
            ["suite", "--points", "10", "--claims", "profile-ode,profile-closed-form",
             "--out", str(out)],
        )
        assert result.exit_code == 0, result.output
        assert "ALL PASS" in result.output
        assert result.output.count("PASS ") >= 2
        data = json.loads(out.read_text())
        assert {r["claim"] for r in data["reports"]} == {"profile-ode", "profile-closed-form"}

    def test_config_file_with_overrides(self, runner, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"points": 10, "claims": ["profile-ode"]}))
        result = invoke(runner, ["suite", "--config", str(cfg), "--seed", "77"])
        assert result.exit_code == 0
        assert "profile-ode" in result.output

    def test_failure_exit_code(self, runner, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(
            json.dumps({"points": 10, "claims": ["profile-ode"],
                        "tolerances": {"profile-ode": 1e-30}})
        )
        result = invoke(runner, ["suite", "--config", str(cfg)])
        assert result.exit_code != 0
        assert "FAILURES PRESENT" in result.output

    def test_invalid_config_is_click_error(self, runner, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"tolerances": {"profile-ode": 0.0}}))
        result = runner.invoke(main, ["suite", "--config", str(cfg)])
        assert result.exit_code != 0
        assert "config error" in result.output


class TestOutdirEnv:
    def test_relative_out_goes_to_env_dir(self, runner, tmp_path):
        result = runner.invoke(
            main,
            ["verify-pullback", "--model", "cigar:1", "--points", "4",
             "--out", "rep.json"],
            env={"DARBOUXKIT_OUTDIR": str(tmp_path)},
            catch_exceptions=False,
        )
        assert result.exit_code == 0
        assert (tmp_path / "rep.json").exists()
