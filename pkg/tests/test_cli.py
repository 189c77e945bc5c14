import json
import subprocess
import sys

import pytest

from gmorse.cli import run
from gmorse.export import dumps

BENCH = ["--preset", "hermitian", "--v1", "1", "--v2", "2", "--alpha", "1", "--mass", "0.5", "--hbar", "1"]


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_spectrum_benchmark(capsys):
    code, out, _ = call(capsys, "spectrum", *BENCH)
    assert code == 0
    levels = json.loads(out)
    assert len(levels) == 1
    assert levels[0]["E"][0] == pytest.approx(-0.25, abs=1e-12)
    assert set(levels[0]) == {"n", "E", "s", "real"}
    assert levels[0]["real"] is True


def test_spectrum_csv(capsys):
    code, out, _ = call(capsys, "spectrum", "--preset", "non_pt_complex", "--A", "2", "--B", "1",
                        "--C", "2", "--alpha", "1", "--mass", "0.5", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "n,re_E,im_E,re_s,im_s,real"
    assert len(lines) == 3


def test_classify(capsys):
    assert call(capsys, "classify", "--preset", "pt_imaginary_alpha", "--v1", "1", "--v2", "2", "--a", "1") \
        == (0, "PTSymmetric\n", "")
    code, out, _ = call(capsys, "classify", *BENCH, "--format", "json")
    assert json.loads(out) == {"class": "Hermitian"}
    code, out, _ = call(capsys, "classify", "--v1", "3,4", "--v2", "10,5", "--alpha", "1")
    assert out.strip() == "NonPTNonHermitian"


def test_validate_vacuous(capsys):
    code, out, _ = call(capsys, "validate", "--preset", "hermitian", "--v1", "1", "--v2", "0", "--alpha", "1")
    assert code == 0
    rep = json.loads(out)
    assert rep["matches"] == [] and rep["pass"] is True


def test_validate_benchmark(capsys):
    code, out, _ = call(capsys, "validate", *BENCH)
    assert code == 0
    rep = json.loads(out)
    assert rep["pass"] and rep["matches"][0]["delta"] < 1e-6
    assert rep["grid"] == {"x_min": -5.0, "x_max": 25.0, "n_points": 4000, "stencil_order": 4}


def test_validate_pt_uses_residual_only(capsys):
    code, out, _ = call(capsys, "validate", "--preset", "pt_imaginary_alpha", "--v1", "1", "--v2", "2",
                        "--a", "1", "--mass", "0.5")
    rep = json.loads(out)
    assert code == 0
    assert rep["matches"] == [] and rep["residuals"][0]["residual"] < 1e-5


def test_validate_failure_exit_code(capsys):
    # a grid far too coarse for 1e-12 agreement
    code, out, _ = call(capsys, "validate", *BENCH, "--grid=-5:25:100", "--tol", "1e-12")
    assert code == 3
    assert json.loads(out)["pass"] is False


def test_wavefunction_table(capsys, tmp_path):
    out_path = tmp_path / "psi.csv"
    code, out, _ = call(capsys, "wavefunction", *BENCH, "--n", "0", "--grid=-5:25:301", "--out", str(out_path))
    assert code == 0 and out == ""
    lines = out_path.read_text().splitlines()
    assert lines[0] == "x,re_psi,im_psi"
    assert len(lines) == 302


def test_wavefunction_json(capsys):
    code, out, _ = call(capsys, "wavefunction", *BENCH, "--n", "0", "--grid=0:1:3", "--format", "json")
    doc = json.loads(out)
    assert doc["normalized"] is True and len(doc["psi"]) == 3


def test_coherent_csv(capsys):
    code, out, _ = call(capsys, "coherent", *BENCH, "--au", "0.8,0", "--av", "0,0.8",
                        "--smax", "2", "--steps", "11")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "s,t,x_mean,re_au,im_au,re_av,im_av"
    assert len(lines) == 12


def test_coherent_singular_is_input_error(capsys):
    code, _, err = call(capsys, "coherent", *BENCH, "--au", "1,0", "--av", "0,0",
                        "--smax", "0.78539816339744828", "--steps", "101")
    assert code == 2 and "origin" in err


@pytest.mark.parametrize("argv", [
    ["spectrum"],
    ["spectrum", "--preset", "hermitian", "--v1", "1"],
    ["spectrum", "--preset", "nope"],
    ["spectrum", "--v1", "0", "--v2", "1", "--alpha", "1"],
    ["spectrum", "--params", "/nonexistent.json"],
    ["wavefunction", *BENCH, "--n", "0", "--grid", "bad"],
    ["coherent", "--preset", "pt_imaginary_alpha", "--v1", "1", "--v2", "2", "--a", "1",
     "--au", "1", "--av", "0", "--smax", "1", "--steps", "5"],
    ["validate", *BENCH, "--format", "csv"],
    ["bogus"],
])
def test_invalid_input_exit_2(capsys, argv):
    code, _, err = call(capsys, *argv)
    assert code == 2
    assert err


def test_params_file(capsys, tmp_path):
    path = tmp_path / "p.json"
    path.write_text(json.dumps({"v1": [1, 0], "v2": [2, 0], "alpha": [1, 0], "mass": 0.5, "hbar": 1}))
    code, out, _ = call(capsys, "spectrum", "--params", str(path))
    assert code == 0 and len(json.loads(out)) == 1
    code, _, _ = call(capsys, "spectrum", "--params", str(path), "--preset", "hermitian")
    assert code == 2


def test_numeric_error_exit_4(capsys, monkeypatch):
    from gmorse import oracle

    def boom(*a, **k):
        raise oracle.SolverError("did not converge")

    monkeypatch.setattr(oracle, "eig_low", boom)
    code, _, err = call(capsys, "validate", *BENCH)
    assert code == 4 and "did not converge" in err


def test_deterministic_output(capsys):
    outs = {call(capsys, "validate", *BENCH)[1] for _ in range(2)}
    assert len(outs) == 1
    text = outs.pop()
    # keys sorted at top level
    keys = list(json.loads(text))
    assert keys == sorted(keys)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "gmorse.cli", "classify", *BENCH],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "Hermitian\n"


def test_dumps_format():
    assert dumps({"b": 0.1, "a": [1, 2.0, True, None]}) == '{"a": [1, 2.0, true, null], "b": 0.10000000000000001}'
    assert dumps(1 - 2j) == "[1.0, -2.0]"
    assert json.loads(dumps({"x": 1 / 3}))["x"] == 1 / 3
    with pytest.raises(ValueError):
        dumps(float("nan"))
