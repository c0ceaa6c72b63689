import json
import math

import pytest

from qutritsynth.bench import (
    LOG10_3,
    BenchRecord,
    FitResult,
    covering_constant,
    fit,
    lower_bound,
    lower_bound_line,
    records_from_csv,
    records_to_csv,
    run_bench,
    sample_angles,
    synthesize,
)
from qutritsynth.cli import main
from qutritsynth.linalg3 import H, S, R, mat_product



def line_records():
    out = []
    for e in (1e-1, 1e-2, 1e-3, 1e-4):
        y = 3 + 10 * math.log10(1 / e)
        out += [BenchRecord(t, e, "householder", 1, round(y), 0.0, 1.0) for t in (0.1, 0.2)]
    return out


def test_exact_line_fit():
    r = fit(line_records())
    assert r.slope_log10 == pytest.approx(10, abs=1e-9)
    assert r.intercept == pytest.approx(3, abs=1e-9)
    assert r.stderr_slope == pytest.approx(0, abs=1e-9)
    assert r.slope_log3 == pytest.approx(10 * LOG10_3)


def test_slope_conversion():
    # N = k log10(1/e) = k log10(3) log3(1/e)
    r = FitResult(8.621, 2.193, 0, 0, 5)
    assert r.slope_log3 == pytest.approx(8.621 * math.log10(3))
    assert r.to_json()["slope_log3"] == r.slope_log3


def test_lower_bound_constants():
    s2, c2 = lower_bound_line(2)
    assert s2 == pytest.approx(9.97, abs=0.05) and c2 == pytest.approx(-5.65, abs=0.05)
    s3, c3 = lower_bound_line(3)
    assert s3 == pytest.approx(10.27, abs=0.05) and c3 == pytest.approx(-2.16, abs=0.05)


def test_lower_bound_eps_one():
    for d in (2, 3, 4, 5):
        A = covering_constant(d)
        assert lower_bound(d, 1.0) == pytest.approx(math.log(A) / math.log(d * (d - 1)))
    with pytest.raises(ValueError):
        lower_bound(6, 0.1)


def test_csv_roundtrip_lossless():
    recs = [BenchRecord(math.pi / 7 * k, 10.0 ** -k, "exhaustive", k, 2 * k, 1 / (k + 3), math.e * k) for k in range(6)]
    text = records_to_csv(recs, seed=11)
    assert text.startswith("# seed=11\n")
    assert records_from_csv(text) == recs


def test_sample_angles():
    a = sample_angles(50, 4)
    assert a == sample_angles(50, 4)
    assert a != sample_angles(50, 5)
    assert all(-math.pi / 2 < x < math.pi / 2 for x in a)


def _strip_time(recs):
    return [(r.theta, r.eps, r.algorithm, r.f, r.n_r, r.distance) for r in recs]


def test_bench_deterministic_across_workers():
    angles = sample_angles(4, 9)
    a = run_bench(angles, [0.1, 0.02], "householder", workers=1)
    b = run_bench(angles, [0.1, 0.02], "householder", workers=2)
    assert _strip_time(a) == _strip_time(b)
    for r in a:
        assert r.distance <= r.eps


def test_synthesize_word_matches():
    out = synthesize(0.5, 0.05, "exhaustive")
    assert out.distance <= 0.05
    assert out.word.matrix() == out.matrix.scale(out.word.phase)
    t3 = synthesize(0.0, 0.05, "householder", gate="t3")
    assert t3.distance <= 0.05
    with pytest.raises(ValueError):
        synthesize(0.5, 0.05, "annealing")


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_cli_synth_then_verify(capsys):
    for algo, theta, eps in (("householder", 0.8, 1e-2), ("exhaustive", -0.3, 0.05)):
        code, out = run(capsys, "synth", "--theta", str(theta), "--eps", str(eps), "--algorithm", algo, "--json")
        assert code == 0
        data = json.loads(out.out)
        assert data["distance"] <= eps
        code, out = run(capsys, "verify", "--word", data["expanded"], "--theta", str(theta), "--eps", str(eps), "--json")
        assert code == 0
        assert json.loads(out.out)["distance"] <= eps


def test_cli_verify_fails_beyond_eps(capsys):
    code, out = run(capsys, "verify", "--word", "R", "--theta", "1.0", "--eps", "0.01")
    assert code == 1
    assert out.out.startswith("distance=")


def test_cli_decompose(tmp_path, capsys):
    M = mat_product([H, S, R, H, S])
    p = tmp_path / "m.json"
    p.write_text(json.dumps({"matrix": M.to_json()}))
    code, out = run(capsys, "decompose", "--in", str(p), "--json")
    assert code == 0
    data = json.loads(out.out)
    assert data["n_r"] == 1 and data["sde"] == 2
    code, _ = run(capsys, "decompose", "--in", str(p))
    assert code == 0


def test_cli_decompose_non_unitary(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text(json.dumps({"f": 0, "rows": [[[1, 0], [1, 0], [0, 0]], [[0, 0], [1, 0], [0, 0]], [[0, 0], [0, 0], [1, 0]]]}))
    code, out = run(capsys, "decompose", "--in", str(p))
    assert code == 1 and "error" in out.err


def test_cli_normeq(capsys):
    code, out = run(capsys, "normeq", "7")
    assert code == 0 and len(out.out.split()) == 12
    code, out = run(capsys, "normeq", "2")
    assert code == 1 and out.out == ""


def test_cli_lower_bound(capsys):
    code, out = run(capsys, "lower-bound", "--d", "3", "--json")
    assert code == 0
    d = json.loads(out.out)
    assert d["slope_log10"] == pytest.approx(10.27, abs=0.05)
    code, _ = run(capsys, "lower-bound", "--d", "7")
    assert code == 1


def test_cli_bench_csv(tmp_path, capsys):
    p = tmp_path / "b.csv"
    code, _ = run(capsys, "bench", "--angles", "3", "--eps", "0.3", "0.1", "--seed", "5", "-o", str(p), "--fit-runtime")
    assert code == 0
    text = p.read_text()
    assert text.startswith("# seed=5")
    assert "# slope_log10=" in text and "# runtime_exponent=" in text
    recs = records_from_csv(text)
    assert len(recs) == 6 and all(r.distance <= r.eps for r in recs)


def test_cli_bench_json(capsys):
    code, out = run(capsys, "bench", "--angles", "2", "--eps", "0.5", "0.25", "--algorithm", "exhaustive", "--out", "json")
    assert code == 0
    d = json.loads(out.out)
    assert len(d["records"]) == 4 and "slope_log3" in d["fit"]


def test_cli_backend_flag(capsys):
    from qutritsynth import _backend

    before = _backend.BACKEND
    try:
        code, out = run(capsys, "--backend", "python", "synth", "--theta", "0.2", "--eps", "0.1")
    finally:
        _backend.use(before)
    assert code == 0 and out.out.startswith("f=")
