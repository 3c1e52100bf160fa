import json
import subprocess
import sys

import numpy as np

import spinscreen as ss
from spinscreen import exports


def run_cli(*args, env=None):
    cmd = [sys.executable, "-m", "spinscreen", *args]
    return subprocess.run(cmd, capture_output=True, text=True, env=env)


REF_ARGS = ("--two-a", "60", "--two-b", "90", "--two-c", "120", "--two-d", "110")
SMALL = ("--two-a", "6", "--two-b", "8", "--two-c", "10", "--two-d", "8")


def test_help():
    cp = run_cli("--help")
    assert cp.returncode == 0
    assert "compute" in cp.stdout and "verify" in cp.stdout


def test_compute_screen_csv(tmp_path):
    cp = run_cli("compute", *REF_ARGS, "--method", "eigensolve",
                 "--output", "screen", "--format", "csv",
                 "--outdir", str(tmp_path))
    assert cp.returncode == 0, cp.stderr
    assert "61x61" in cp.stdout
    files = list(tmp_path.glob("*_screen.csv"))
    assert len(files) == 1
    lines = files[0].read_text().splitlines()
    data = [l for l in lines if l and not l.startswith("#")
            and not l.startswith("two_x")]
    assert len(data) == 61 * 61
    assert any(l.startswith("# method=eigensolve") for l in lines)


def test_compute_method_agreement(tmp_path):
    paths = {}
    for method in ("oracle", "recur2d"):
        cp = run_cli("compute", *SMALL, "--method", method,
                     "--output", "screen", "--outdir", str(tmp_path))
        assert cp.returncode == 0, cp.stderr
        paths[method] = next(tmp_path.glob("*_%s_screen.csv" % method))
    a = exports.read_screen(paths["oracle"])
    b = exports.read_screen(paths["recur2d"])
    assert np.max(np.abs(a.values - b.values)) <= 1e-8


def test_compute_curves(tmp_path):
    cp = run_cli("compute", *REF_ARGS, "--output",
                 "caustics,ridges,cos-theta3,potentials",
                 "--outdir", str(tmp_path))
    assert cp.returncode == 0, cp.stderr
    caustics = json.loads(next(tmp_path.glob("*_caustics.json")).read_text())
    assert caustics["metadata"]["coordinates"] == "shifted"
    assert len(caustics["caustic_lower"]) == 61
    ridges = json.loads(next(tmp_path.glob("*_ridges.json")).read_text())
    assert "ridge_y_of_x" in ridges and "ridge_x_of_y" in ridges
    cos_csv = next(tmp_path.glob("*_cos_theta3.csv")).read_text()
    assert "two_x,two_y,cos_theta3" in cos_csv
    pots = json.loads(next(tmp_path.glob("*_potentials.json")).read_text())
    assert "w_plus_geometric" in pots and "w_minus_arithmetic" in pots


def test_compute_cos_theta3_json(tmp_path):
    cp = run_cli("compute", *SMALL, "--output", "cos-theta3",
                 "--format", "json", "--outdir", str(tmp_path))
    assert cp.returncode == 0, cp.stderr
    payload = json.loads(next(tmp_path.glob("*_cos_theta3.json")).read_text())
    assert "cos_theta3" in payload
    side = ss.screen_ranges(6, 8, 10, 8).side
    assert len(payload["cos_theta3"]) == side


def test_compute_pr_compare(tmp_path):
    cp = run_cli("compute", *SMALL, "--output", "pr-compare",
                 "--outdir", str(tmp_path))
    assert cp.returncode == 0, cp.stderr
    text = next(tmp_path.glob("*_pr_compare.csv")).read_text()
    assert "pr_estimate" in text


def test_compute_invalid_output(tmp_path):
    cp = run_cli("compute", *SMALL, "--output", "nonsense",
                 "--outdir", str(tmp_path))
    assert cp.returncode == 2


def test_compute_invalid_params(tmp_path):
    cp = run_cli("compute", "--two-a", "2", "--two-b", "2", "--two-c", "10",
                 "--two-d", "2", "--outdir", str(tmp_path))
    assert cp.returncode == 2


def test_compute_oracle_cap(tmp_path):
    cp = run_cli("compute", "--two-a", "600", "--two-b", "900",
                 "--two-c", "1200", "--two-d", "1100", "--method", "oracle",
                 "--outdir", str(tmp_path))
    assert cp.returncode == 2
    assert "kappa2" in cp.stderr


def test_compute_deterministic(tmp_path):
    out1 = tmp_path / "run1"
    out2 = tmp_path / "run2"
    for out in (out1, out2):
        cp = run_cli("compute", *SMALL, "--output", "screen,caustics",
                     "--outdir", str(out))
        assert cp.returncode == 0, cp.stderr
    for f1 in sorted(out1.iterdir()):
        f2 = out2 / f1.name
        assert f1.read_bytes() == f2.read_bytes()


def test_env_outdir(tmp_path):
    import os
    env = dict(os.environ, SPINSCREEN_OUTDIR=str(tmp_path / "envdir"))
    cp = run_cli("compute", *SMALL, env=env)
    assert cp.returncode == 0, cp.stderr
    assert list((tmp_path / "envdir").glob("*_screen.csv"))


def test_screen_roundtrip_csv(tmp_path):
    p = ss.screen_ranges(6, 8, 10, 8)
    screen = ss.screen_by_eigensolve(p)
    path = tmp_path / "screen.csv"
    exports.write_screen_csv(screen, path)
    back = exports.read_screen(path)
    assert back.params == p
    assert np.array_equal(back.values, screen.values)
    assert back.method == "eigensolve"


def test_screen_roundtrip_json(tmp_path):
    p = ss.screen_ranges(6, 8, 10, 8)
    screen = ss.screen_by_eigensolve(p)
    path = tmp_path / "screen.json"
    exports.write_screen_json(screen, path)
    back = exports.read_screen(path)
    assert np.array_equal(back.values, screen.values)


def test_verify_single_check(tmp_path):
    report = tmp_path / "report.json"
    cp = run_cli("verify", *REF_ARGS, "--check", "regge-invariance",
                 "--report", str(report))
    assert cp.returncode == 0, cp.stderr
    payload = json.loads(report.read_text())
    assert payload["passed"] is True
    assert len(payload["checks"]) == 1
    assert payload["checks"][0]["name"] == "regge-invariance"


def test_verify_unknown_check():
    cp = run_cli("verify", *REF_ARGS, "--check", "no-such-check")
    assert cp.returncode == 2


def test_verify_corrupted_golden(tmp_path):
    from importlib import resources
    payload = json.loads(resources.files("spinscreen")
                         .joinpath("data/golden_reference.json").read_text())
    payload["points"][0]["u"] = "0.5"
    bad = tmp_path / "golden.json"
    bad.write_text(json.dumps(payload))
    cp = run_cli("verify", *REF_ARGS, "--check", "golden", "--golden", str(bad))
    assert cp.returncode == 1
    assert "golden" in cp.stdout and "FAIL" in cp.stdout


def test_ninej_check_default():
    cp = run_cli("ninej-check", "--count", "20", "--two-j-max", "8")
    assert cp.returncode == 0, cp.stderr
    assert "ninej-residual" in cp.stdout


def test_ninej_check_reduce():
    cp = run_cli("ninej-check", "--count", "10", "--two-h", "0", "--reduce",
                 "--two-a", "8", "--two-b", "10", "--two-c", "12",
                 "--two-d", "10")
    assert cp.returncode == 0, cp.stderr
    assert "ninej-reduction" in cp.stdout


def test_ninej_check_empty_filter():
    cp = run_cli("ninej-check", "--count", "5", "--two-j-max", "0",
                 "--two-h", "4")
    assert cp.returncode == 2
    assert "no admissible stencils" in cp.stderr
