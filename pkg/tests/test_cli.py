import json

import pytest

from sketchkrr import read_csv
from sketchkrr.cli import main

CONFIG_TEXT = """\
kernel = sobolev1
fstar = abs_shift
design = uniform_grid
sigma = 1.0
n_grid = 8,16
sketches = exact,gaussian
m_rule = cuberoot
lambda_rule = two_delta_sq
trials = 2
seed = 4
"""


class TestCriticalRadius:
    ARGS = [
        "critical-radius", "--kernel", "sobolev1", "--n", "64",
        "--sigma", "1", "--design", "uniform-grid",
    ]

    def test_text_output(self, capsys):
        assert main(self.ARGS) == 0
        out = capsys.readouterr().out
        assert "delta_n_sq=" in out and "d_n=" in out

    def test_deterministic(self, capsys):
        main(self.ARGS)
        first = capsys.readouterr().out
        main(self.ARGS)
        assert capsys.readouterr().out == first

    def test_json_matches_library(self, capsys):
        import numpy as np

        from sketchkrr import DesignPoints, KernelSpec, build_kernel_matrix, complexity_profile

        assert main(self.ARGS + ["--format", "json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        K = build_kernel_matrix(
            KernelSpec.sobolev1(), DesignPoints(np.arange(1, 65) / 64)
        )
        profile = complexity_profile(K.eigenvalues, 64, 1.0)
        assert payload["delta_n_sq"] == pytest.approx(profile.delta_n_sq, rel=1e-12)
        assert payload["d_n"] == profile.d_n


class TestFit:
    def test_smoke_ros(self, capsys):
        code = main(
            [
                "fit", "--kernel", "gaussian", "--bandwidth", "0.25", "--n", "128",
                "--sketch", "ros", "--m-rule", "loggauss", "--seed", "7",
            ]
        )
        assert code == 0
        out = capsys.readouterr().out.strip().splitlines()
        assert len(out) == 1
        assert "error=" in out[0]

    def test_json(self, capsys):
        assert main(
            ["fit", "--kernel", "sobolev1", "--n", "32", "--sketch", "exact", "--format", "json"]
        ) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["n"] == 32 and payload["sketch"] == "exact"

    def test_missing_bandwidth_is_usage_error(self, capsys):
        assert main(["fit", "--kernel", "gaussian", "--n", "16"]) == 2

    def test_fixed_rules(self, capsys):
        code = main(
            [
                "fit", "--kernel", "sobolev1", "--n", "32", "--sketch", "subsample",
                "--m-rule", "fixed", "--m-fixed", "6",
                "--lambda-rule", "fixed", "--lambda", "0.05",
                "--format", "json",
            ]
        )
        assert code == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["m"] == 6 and payload["lambda_n"] == 0.05


class TestUsageErrors:
    def test_unknown_flag(self, capsys):
        assert main(["critical-radius", "--kernel", "sobolev1", "--n", "8", "--frob"]) == 2

    def test_unknown_subcommand(self, capsys):
        assert main(["transmogrify"]) == 2

    def test_missing_required(self, capsys):
        assert main(["critical-radius", "--kernel", "sobolev1"]) == 2


class TestBench:
    def test_runs_and_is_byte_identical(self, tmp_path, capsys):
        cfg = tmp_path / "bench.cfg"
        cfg.write_text(CONFIG_TEXT)
        out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
        assert main(["bench", "--config", str(cfg), "--out", str(out1)]) == 0
        assert main(["bench", "--config", str(cfg), "--out", str(out2)]) == 0
        assert out1.read_bytes() == out2.read_bytes()
        assert len(read_csv(out1)) == 2 * 2 * 2

    def test_missing_config_is_runtime_error(self, tmp_path, capsys):
        assert main(["bench", "--config", str(tmp_path / "nope.cfg"), "--out", str(tmp_path / "o.csv")]) == 1
        assert "error" in capsys.readouterr().err


class TestCheckSketchAndDemo:
    def test_check_sketch_text(self, capsys):
        code = main(
            [
                "check-sketch", "--kernel", "sobolev1", "--n", "64", "--sketch", "gaussian",
                "--m", "24", "--seed", "3",
            ]
        )
        assert code == 0
        out = capsys.readouterr().out
        assert "lhs_isometry=" in out and "passed=" in out

    def test_check_sketch_json(self, capsys):
        assert main(
            [
                "check-sketch", "--kernel", "sobolev1", "--n", "64", "--sketch", "ros",
                "--m", "32", "--format", "json",
            ]
        ) == 0
        payload = json.loads(capsys.readouterr().out)
        assert set(payload) >= {"lhs_isometry", "lhs_tail", "delta_n", "c_threshold", "passed"}

    def test_demo(self, capsys):
        assert main(["demo-nystrom-failure", "--n", "64", "--m", "4", "--k", "6", "--seed", "1"]) == 0
        assert "missed_second_block=" in capsys.readouterr().out
