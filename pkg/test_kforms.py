import json
import math

import pytest

import config
import kforms
import starprod
from verification import SuiteRunner, run_suite


def run_cli(capsys, *argv):
    code = kforms.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestEval:
    def test_commutator(self, capsys):
        code, out, _ = run_cli(capsys, "eval", "x1*x0 - x0*x1")
        assert code == kforms.EXIT_OK
        assert out.strip() == "(i/κ)·x1"

    def test_fixed_kappa(self, capsys):
        code, out, _ = run_cli(capsys, "eval", "x1*x0 - x0*x1", "--kappa", "1")
        assert code == kforms.EXIT_OK
        assert out.strip() == "i·x1"

    @pytest.mark.parametrize("expression,text", [("star(star(e2))", "e2"), ("d(d(x1*x0))", "0")])
    def test_examples(self, capsys, expression, text):
        assert run_cli(capsys, "eval", expression)[1].strip() == text

    def test_parse_error_is_usage(self, capsys):
        code, _, err = run_cli(capsys, "eval", "x0 +")
        assert code == kforms.EXIT_USAGE
        assert err.startswith("[error]")
        assert "line 1, column 5" in err

    def test_type_error_is_usage(self, capsys):
        assert run_cli(capsys, "eval", "int(e0)")[0] == kforms.EXIT_USAGE

    def test_backend_mismatch_is_usage(self, capsys):
        code, _, err = run_cli(capsys, "eval", "int(vol)")
        assert code == kforms.EXIT_USAGE
        assert "backend" in err

    def test_bad_kappa(self, capsys):
        code, _, err = run_cli(capsys, "eval", "x0", "--kappa", "abc")
        assert code == kforms.EXIT_USAGE
        assert "--kappa" in err

    def test_wave_backend_with_modes(self, capsys, tmp_path):
        path = tmp_path / "modes.json"
        path.write_text(json.dumps([{"re": 3.0, "im": 0.0, "k": [0, 0, 0, 0]}]))
        code, out, _ = run_cli(capsys, "eval", "int(phi * vol)", "--backend", "wave", "--modes", str(path))
        assert code == kforms.EXIT_OK
        assert out.strip() == "3"

    def test_unknown_subcommand(self):
        with pytest.raises(SystemExit) as info:
            kforms.main(["frobnicate"])
        assert info.value.code == 2


class TestDispersion:
    def test_massless(self, capsys):
        code, out, _ = run_cli(capsys, "dispersion", "--k", "0.1,0,0", "--mass", "0", "--kappa", "1")
        assert code == kforms.EXIT_OK
        result = json.loads(out)
        assert result["k0"] == pytest.approx(-math.log(0.9), rel=1e-12)
        assert result["residual"] <= 1e-12
        assert result["k"][1:] == [0.1, 0.0, 0.0]

    def test_beyond_kappa_fails(self, capsys):
        code, _, err = run_cli(capsys, "dispersion", "--k", "2,0,0", "--kappa", "1")
        assert code == kforms.EXIT_FAILURE
        assert "dispersion bracket failed" in err

    def test_bad_vector(self):
        with pytest.raises(SystemExit) as info:
            kforms.main(["dispersion", "--k", "0.1,0"])
        assert info.value.code == 2


class TestNoether:
    def test_on_shell_mode_file(self, capsys, tmp_path):
        k0 = -math.log(1 - 0.2)
        path = tmp_path / "modes.json"
        path.write_text(json.dumps([{"re": 1.0, "im": 0.5, "k": [k0, 0.2, 0.0, 0.0]}]))
        code, out, _ = run_cli(capsys, "noether", "--modes", str(path), "--mass", "0", "--kappa", "1")
        assert code == kforms.EXIT_OK
        result = json.loads(out)
        assert result["valid"] and result["on_shell"]
        assert result["modes"] == 1
        assert result["conservation"]["cases"] == 5
        assert len(result["em_tensor_zero_mode"]) == 5

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = run_cli(capsys, "noether", "--modes", str(tmp_path / "absent.json"))
        assert code == kforms.EXIT_FAILURE
        assert "cannot read mode file" in err

    def test_malformed_file(self, capsys, tmp_path):
        path = tmp_path / "modes.json"
        path.write_text(json.dumps({"re": 1.0}))
        assert run_cli(capsys, "noether", "--modes", str(path))[0] == kforms.EXIT_FAILURE


class TestVerify:
    def test_suites_listing(self, capsys):
        code, out, _ = run_cli(capsys, "suites")
        assert code == kforms.EXIT_OK
        assert out.split() == config.SUITES + ["all"]

    def test_hodge_suite(self, capsys, tmp_path):
        out_path = tmp_path / "report.json"
        code, out, _ = run_cli(capsys, "verify", "hodge", "--seed", "7", "--out", str(out_path))
        assert code == kforms.EXIT_OK
        assert out == ""
        report = json.loads(out_path.read_text())
        assert report["schema"] == config.REPORT_SCHEMA
        assert report["valid"] and report["cases"] > 0
        assert report["config"]["seed"] == 7
        assert "elapsed_seconds" not in report
        assert {entry["identity"] for entry in report["identities"]} >= {"hodge_involutive", "hodge_linearity"}

    def test_report_is_reproducible(self):
        first = kforms.to_json(run_suite("hodge", seed=11))
        second = kforms.to_json(run_suite("hodge", seed=11))
        assert first == second

    def test_timing_is_opt_in(self):
        assert "elapsed_seconds" in run_suite("hopf", seed=1, timing=True)

    def test_unknown_suite(self):
        with pytest.raises(ValueError, match="unknown suite"):
            run_suite("geometry")

    def test_tolerance_override(self):
        runner = SuiteRunner(seed=3, tol=1e-6)
        assert set(runner.tolerances.values()) == {1e-6}

    def test_suite_streams_differ(self):
        runner = SuiteRunner(seed=5)
        assert runner.rng("calculus").integers(2 ** 32) != runner.rng("hodge").integers(2 ** 32)

    def test_hopf_suite(self):
        report = run_suite("hopf", seed=2024)
        assert report["valid"], report["failures"]

    def test_small_calculus_suite(self):
        summary = SuiteRunner(seed=9, calculus_samples=4).run("calculus")
        assert summary["valid"], summary["failures"]
        assert "d_dagger" in {entry["identity"] for entry in summary["identities"]}

    def test_aborted_check_keeps_other_identities(self, monkeypatch):
        def too_small(*args, **kwargs):
            raise ValueError("domain too small")

        monkeypatch.setattr(starprod, "verify_positivity", too_small)
        summary = SuiteRunner(seed=1, grid_points=128).run("starprod")
        identities = {entry["identity"]: entry for entry in summary["identities"]}
        assert not identities["star_positivity"]["valid"]
        assert identities["star_positivity"]["cases"] == 1
        assert {"twisted_cyclicity_p1", "twist_exponent", "trace_involution", "domain_guard"} <= set(identities)
        assert "star_domain" not in identities

    @pytest.mark.slow
    def test_integral_suite(self):
        report = run_suite("integral", seed=2024)
        assert report["valid"], report["failures"]

    @pytest.mark.slow
    def test_fieldtheory_suite(self):
        report = run_suite("fieldtheory", seed=2024)
        assert report["valid"], report["failures"]

    @pytest.mark.slow
    def test_starprod_suite(self):
        report = run_suite("starprod", seed=2024)
        assert report["valid"], report["failures"]
