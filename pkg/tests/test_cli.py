"""Command-line surface: exit codes, artifacts, config round-trip, caching."""

import subprocess
import sys
from pathlib import Path

import pytest

from lemnizeros.cli import RunConfig, parse_rational_complex, parse_run_config_text

PKG_ROOT = Path(__file__).resolve().parent.parent


def run_cli(*args, cwd=None):
    return subprocess.run(
        [sys.executable, "-m", "lemnizeros", *args],
        capture_output=True,
        text=True,
        cwd=cwd or PKG_ROOT,
        env={"PYTHONPATH": str(PKG_ROOT / "src"), "PATH": "/usr/bin:/bin"},
    )


class TestParsing:
    @pytest.mark.parametrize(
        "text,re_q,im_q",
        [
            ("4/3", "4/3", "0"),
            ("1/3+2/3i", "1/3", "2/3"),
            ("-1+0.5i", "-1", "1/2"),
            ("2i", "0", "2"),
            ("-i", "0", "-1"),
            ("1-2/7j", "1", "-2/7"),
            ("1.4", "7/5", "0"),
        ],
    )
    def test_rational_complex(self, text, re_q, im_q):
        from fractions import Fraction

        assert parse_rational_complex(text) == (Fraction(re_q), Fraction(im_q))

    def test_rejects_garbage(self):
        with pytest.raises(ValueError):
            parse_rational_complex("three")

    def test_config_text_round_trip(self):
        cfg = RunConfig(command="verify", n_range=(2, 9), precision_bits=128, workers=2)
        back = parse_run_config_text(cfg.to_text())
        assert back == cfg

    def test_hash_ignores_out(self):
        a = RunConfig(command="roots", n=5, out="/tmp/a")
        b = RunConfig(command="roots", n=5, out="/tmp/b")
        assert a.content_hash() == b.content_hash()
        assert a.content_hash() != RunConfig(command="roots", n=6).content_hash()


class TestCommands:
    def test_coeffs_stdout(self):
        res = run_cli("coeffs", "--n", "2")
        assert res.returncode == 0
        assert res.stdout.splitlines()[2] == "2,1,-6,5"

    def test_coeffs_rejects_zero(self):
        res = run_cli("coeffs", "--n", "0")
        assert res.returncode == 2

    def test_roots_degree_one(self):
        res = run_cli("roots", "--n", "1")
        assert res.returncode == 0
        row = res.stdout.splitlines()[1].split(",")
        assert row[:2] == ["1", "0"]
        assert abs(float(row[2]) - 2) < 1e-15

    def test_roots_degree_two_conjugate_pair(self):
        res = run_cli("roots", "--n", "2")
        rows = [line.split(",") for line in res.stdout.splitlines()[1:]]
        assert len(rows) == 2
        assert abs(float(rows[0][2]) - 1.4) < 1e-12
        assert abs(float(rows[0][3]) + 0.6110100926607787) < 1e-12
        assert abs(float(rows[1][3]) - 0.6110100926607787) < 1e-12

    def test_roots_precision_exhausted_exit_code(self):
        res = run_cli("roots", "--n", "24", "--precision-bits", "64", "--max-bits", "64")
        assert res.returncode == 4
        assert "precision exhausted" in res.stderr

    def test_trace_four_thirds(self):
        res = run_cli("trace", "--z", "4/3", "--steps", "128")
        assert res.returncode == 0
        assert "0.86602540378" in res.stderr + res.stdout

    def test_trace_path_error_exit_code(self):
        res = run_cli("trace", "--z", "1/3+1/1000000000000i", "--path-tol", "1e-6")
        assert res.returncode == 5

    def test_trace_rejects_z_equal_one(self):
        res = run_cli("trace", "--z", "1")
        assert res.returncode == 2

    def test_verify_small_range(self, tmp_path):
        res = run_cli("verify", "--n-range", "2..6", "--out", str(tmp_path))
        assert res.returncode == 0
        assert res.stdout.count("PASS") == 5
        sub = next(tmp_path.glob("verify-*"))
        assert (sub / "lemmas.csv").exists()
        assert (sub / "verify.txt").exists()
        assert (sub / "runconfig.txt").exists()

    def test_report_and_figures(self, tmp_path):
        res = run_cli(
            "report", "--n-list", "4,8", "--theta-grid", "128", "--out", str(tmp_path)
        )
        assert res.returncode == 0
        sub = next(tmp_path.glob("report-*"))
        assert (sub / "roots_report.csv").exists()
        assert (sub / "summary.csv").exists()

        res = run_cli(
            "figure", "--kind", "zeros", "--n-list", "5", "--theta-grid", "64",
            "--out", str(tmp_path),
        )
        assert res.returncode == 0
        sub = next(tmp_path.glob("figure-*"))
        assert (sub / "figure_zeros.svg").exists()
        assert (sub / "figure_zeros.csv").exists()

        res = run_cli(
            "figure", "--kind", "level", "--z", "1", "--res", "16", "--out", str(tmp_path)
        )
        assert res.returncode == 0
        assert any((d / "level_field.csv").exists() for d in tmp_path.glob("figure-*"))

    def test_cache_reuse(self, tmp_path):
        first = run_cli("coeffs", "--n", "3", "--out", str(tmp_path))
        again = run_cli("coeffs", "--n", "3", "--out", str(tmp_path))
        assert first.returncode == again.returncode == 0
        assert "cached" in again.stdout

    def test_config_file_equivalent_to_flags(self, tmp_path):
        out_a = tmp_path / "a"
        out_b = tmp_path / "b"
        conf = tmp_path / "run.conf"
        conf.write_text(
            f"command = verify\nn_range = 2,4\nworkers = 1\nout = {out_a}\n",
            encoding="utf-8",
        )
        res_a = run_cli("--config", str(conf), "verify")
        res_b = run_cli("verify", "--n-range", "2..4", "--workers", "1", "--out", str(out_b))
        assert res_a.returncode == res_b.returncode == 0
        csv_a = next(out_a.glob("verify-*/lemmas.csv")).read_bytes()
        csv_b = next(out_b.glob("verify-*/lemmas.csv")).read_bytes()
        assert csv_a == csv_b

    def test_determinism_small(self, tmp_path):
        outs = []
        for sub in ("r1", "r2"):
            out = tmp_path / sub
            res = run_cli("verify", "--n-range", "2..6", "--workers", "1", "--out", str(out))
            assert res.returncode == 0
            outs.append(next(out.glob("verify-*/lemmas.csv")).read_bytes())
        assert outs[0] == outs[1]

    def test_usage_without_command(self):
        res = run_cli()
        assert res.returncode == 2
