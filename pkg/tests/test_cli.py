"""Command line contract: exit codes, serialization, determinism."""

import json

import numpy as np
import pytest

from bergman.cli import main
from bergman.toeplitz import OperatorMatrix


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestInner:
    def test_monomial_example(self, capsys):
        code, out, _ = run(capsys, "inner", "-d", "2", "-l", "3", "--f", "z1*z2",
                           "--g", "z1*z2")
        assert code == 0
        assert float(out) == pytest.approx(1 / 12, rel=1e-15)

    def test_malformed_polynomial(self, capsys):
        code, _, err = run(capsys, "inner", "-d", "2", "-l", "3", "--f", "z1*",
                           "--g", "z1")
        assert code == 2 and "error" in err

    def test_nonholomorphic_rejected(self, capsys):
        code, _, err = run(capsys, "inner", "-d", "1", "-l", "2", "--f", "conj(z1)",
                           "--g", "z1")
        assert code == 2 and "holomorphic" in err

    def test_invalid_lambda(self, capsys):
        code, _, err = run(capsys, "inner", "-d", "1", "-l", "0", "--f", "z1",
                           "--g", "z1")
        assert code == 2 and "positive" in err

    def test_missing_lambda(self, capsys):
        code, _, err = run(capsys, "inner", "-d", "1", "--f", "z1", "--g", "z1")
        assert code == 2


class TestToeplitz:
    def test_poly_json_output(self, capsys, tmp_path):
        out_file = tmp_path / "mat.json"
        code, out, _ = run(capsys, "toeplitz", "-d", "2", "-l", "1", "-M", "3",
                           "--symbol", "conj(z1)*z1", "--out", str(out_file))
        assert code == 0
        mat = OperatorMatrix.from_json(out_file.read_text())
        from bergman.multiindex import degree

        for i, m in enumerate(mat.basis):
            assert mat.entries[i, i].real == pytest.approx((1 + m[0]) / (1 + degree(m)))
        assert "spectrum:" in out and "converged=" in out

    def test_one_minus_abs2_spectrum(self, capsys, tmp_path):
        out_file = tmp_path / "mat.json"
        code, out, _ = run(capsys, "toeplitz", "-d", "2", "-l", "1", "-M", "3",
                           "--symbol", "1 - abs2(z)", "--out", str(out_file))
        assert code == 0
        line = [l for l in out.splitlines() if l.startswith("spectrum:")][0]
        assert "min=-1.0" in line
        assert "max=-0.25" in line

    def test_csv_format(self, capsys, tmp_path):
        out_file = tmp_path / "mat.csv"
        code, _, _ = run(capsys, "toeplitz", "-d", "1", "-l", "2", "-M", "2",
                         "--symbol", "abs2(z)", "--format", "csv",
                         "--out", str(out_file))
        assert code == 0
        entries = OperatorMatrix.entries_from_csv(out_file.read_text())
        assert entries[0, 0] == pytest.approx(0.5)

    def test_hs_l2_requires_lambda_above_half_d(self, capsys):
        code, _, err = run(capsys, "toeplitz", "-d", "2", "-l", "0.9",
                           "--method", "hs-l2", "--radial", "power:2")
        assert code == 2 and "d/2" in err

    def test_hs_zero_convention_warns(self, capsys, tmp_path):
        out_file = tmp_path / "mat.json"
        code, out, err = run(capsys, "toeplitz", "-d", "2", "-l", "2",
                             "--method", "hs-l1", "--radial", "power:3",
                             "-M", "3", "--out", str(out_file))
        assert code == 0
        assert "c_lambda = 0" in err
        mat = OperatorMatrix.from_json(out_file.read_text())
        assert np.all(mat.entries == 0)

    def test_sobolev_method(self, capsys, tmp_path):
        out_file = tmp_path / "mat.json"
        code, _, _ = run(capsys, "toeplitz", "-d", "2", "-l", "0.7", "-M", "2",
                         "--method", "sobolev", "--symbol", "abs2(z)",
                         "--out", str(out_file))
        assert code == 0
        mat = OperatorMatrix.from_json(out_file.read_text())
        assert mat.entries[0, 0].real == pytest.approx(2 / 0.7, rel=1e-10)

    def test_missing_symbol(self, capsys):
        code, _, err = run(capsys, "toeplitz", "-d", "1", "-l", "2")
        assert code == 2 and "--symbol" in err


class TestBerezin:
    def test_constant_column(self, capsys):
        code, out, _ = run(capsys, "berezin", "-d", "1", "-l", "1.7",
                           "--radial", "tpoly:1", "--grid", "5")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "r,value_re,value_im"
        from bergman.spaces import c_lambda_value

        for line in lines[1:]:
            _, re, im = line.split(",")
            assert float(re) == pytest.approx(c_lambda_value(1, 1.7), rel=1e-8)
            assert float(im) == 0.0

    def test_zero_convention_warns(self, capsys):
        code, out, err = run(capsys, "berezin", "-d", "2", "-l", "2",
                             "--radial", "power:3", "--grid", "4")
        assert code == 0 and "c_lambda = 0" in err
        for line in out.strip().splitlines()[1:]:
            assert float(line.split(",")[1]) == 0.0

    def test_inadmissible_class_exits_2(self, capsys):
        code, _, err = run(capsys, "berezin", "-d", "2", "-l", "1.5",
                           "--radial", "gauss:1.0")
        assert code == 2 and "lambda > d" in err

    def test_unknown_profile(self, capsys):
        code, _, err = run(capsys, "berezin", "-d", "1", "-l", "2",
                           "--radial", "nope:1")
        assert code == 2


class TestVerify:
    def test_norm_growth_filter(self, capsys):
        code, out, err = run(capsys, "verify", "--only", "norm-growth",
                             "--lambda", "1", "--d", "2", "--kmax", "10")
        assert code == 0
        reports = [json.loads(line) for line in out.strip().splitlines()]
        assert reports
        for r in reports:
            assert r["identity_id"] == "norm-growth"
            assert r["pass"] is True
            assert r["rhs"][0] == pytest.approx(11.0)

    def test_laplace_filter(self, capsys):
        code, out, _ = run(capsys, "verify", "--only", "laplace",
                           "--lambda", "1.3", "--d", "2", "--trials", "1")
        assert code == 0
        reports = [json.loads(line) for line in out.strip().splitlines()]
        assert len(reports) == 1
        assert reports[0]["pass"] is True

    def test_exit_nonzero_propagates(self, capsys, monkeypatch):
        # force a failing report to confirm the exit-code contract
        import bergman.cli as cli_mod
        from bergman.verify import VerificationReport

        monkeypatch.setattr(
            cli_mod, "run_suite",
            lambda cfg: [VerificationReport("stub", {}, 1.0, 2.0, 1.0, 0.5, 1e-12, False)],
        )
        code, out, _ = run(capsys, "verify", "--only", "stub")
        assert code == 1

    def test_deterministic_output_files(self, capsys, tmp_path):
        a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
        run(capsys, "verify", "--only", "kernel-series", "--d", "1",
            "--trials", "1", "--out", str(a))
        run(capsys, "verify", "--only", "kernel-series", "--d", "1",
            "--trials", "1", "--out", str(b))
        assert a.read_bytes() == b.read_bytes()


class TestNorm:
    def test_shell_formula_report(self, capsys):
        code, out, _ = run(capsys, "norm", "-d", "1", "-l", "0.5", "-M", "12")
        assert code == 0
        r = json.loads(out)
        assert r["identity_id"] == "mult-norm"
        assert r["rhs"][0] == pytest.approx(2.0)

    def test_invalid_lambda(self, capsys):
        code, _, _ = run(capsys, "norm", "-d", "1", "-l", "-3")
        assert code == 2


class TestReport:
    def test_writes_figures_and_data(self, capsys, tmp_path):
        out_dir = tmp_path / "rep"
        code, _, err = run(capsys, "report", "-d", "1", "--trials", "1",
                           "--kmax", "6", "-M", "12", "--out-dir", str(out_dir))
        assert code == 0
        for name in ("verify.jsonl", "verify_summary.csv", "verify_summary.png",
                     "berezin_radial.csv", "berezin_radial.png",
                     "hs_convergence.csv", "hs_convergence.png",
                     "norm_growth.csv", "norm_growth.png"):
            path = out_dir / name
            assert path.exists() and path.stat().st_size > 0
        # delimited data is well formed
        rows = (out_dir / "norm_growth.csv").read_text().strip().splitlines()
        assert rows[0] == "k,eigenvalue_on_constant"
        assert len(rows) == 7
        for line in (out_dir / "verify.jsonl").read_text().strip().splitlines():
            json.loads(line)
