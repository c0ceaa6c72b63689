"""Acceptance suite: each test prints one PASS/FAIL line and then asserts.

Run with ``pytest tests/test_acceptance.py -v``; the lines appear inline.
"""

import math
import random
from concurrent.futures import ProcessPoolExecutor

import pytest

from qutritsynth.bench import _task, bench, fit, lower_bound_line, synthesize, BenchRecord
from qutritsynth.lattice import CapRegion4D, SearchRegion2D, enum_2d_doubled, enum_cap4_doubled
from qutritsynth.linalg3 import is_unitary, phase_equal
from qutritsynth.normeq import all_norm_solutions, solve_norm
from qutritsynth.synthesis import decompose, monomial_table, normal_form_matrix

from . import oracles
from .test_synthesis import all_monomials, is_monomial

EPS_HOUSEHOLDER = [10.0**-k for k in range(1, 7)]
EPS_EXHAUSTIVE = [1.0, 0.5, 0.25, 0.1, 0.05, 1e-2]


@pytest.fixture
def report(capsys):
    def emit(n, title, ok, detail):
        with capsys.disabled():
            print(f"\n[criterion {n}] {'PASS' if ok else 'FAIL'}: {title} ({detail})")

    return emit


def test_c1_householder_fit(report):
    recs, fit_ = bench(50, EPS_HOUSEHOLDER, "householder", seed=1, contraction=0.35)
    ok_s = 9.77 <= fit_.slope_log10 <= 11.77
    ok_i = 1.2 <= fit_.intercept <= 5.2
    report(
        1,
        "Householder fit",
        ok_s and ok_i,
        f"slope {fit_.slope_log10:.3f} +- {fit_.stderr_slope:.3f} in [9.77, 11.77], "
        f"intercept {fit_.intercept:.3f} in [1.2, 5.2], {len(recs)} calls",
    )
    assert all(r.distance <= r.eps for r in recs)
    assert ok_s and ok_i


def test_c2_exhaustive_fit(report):
    recs, fit_ = bench(50, EPS_EXHAUSTIVE, "exhaustive", seed=2)
    ok = 7.62 <= fit_.slope_log10 <= 9.62
    report(
        2,
        "exhaustive fit",
        ok,
        f"slope {fit_.slope_log10:.3f} +- {fit_.stderr_slope:.3f} in [7.62, 9.62], "
        f"intercept {fit_.intercept:.3f}, {len(recs)} calls",
    )
    assert all(r.distance <= r.eps for r in recs)
    assert ok


def test_c3_lower_bound(report):
    s2, c2 = lower_bound_line(2)
    s3, c3 = lower_bound_line(3)
    ok = abs(s2 - 9.97) <= 0.05 and abs(c2 + 5.65) <= 0.05 and abs(s3 - 10.27) <= 0.05 and abs(c3 + 2.16) <= 0.05
    report(3, "lower-bound constants", ok, f"d=2: {s2:.4f}/{c2:.4f}, d=3: {s3:.4f}/{c3:.4f}")
    assert ok


def test_c4_exact_roundtrip(report):
    rng = random.Random(4)
    bad = 0
    for _ in range(200):
        params = [
            (rng.randrange(3), rng.randrange(3), rng.randrange(3), rng.randrange(2), rng.randrange(3))
            for _ in range(rng.randint(0, 8))
        ]
        V = normal_form_matrix(params)
        w = decompose(V)
        if phase_equal(w.matrix(), V) is None or w.n_r > sum(p[3] for p in params):
            bad += 1
    report(4, "exact-synthesis roundtrip", bad == 0, f"{200 - bad}/200 phase-equal with N_R <= input")
    assert bad == 0


def test_c5_norm_equation(report):
    limit = 10**4
    table = oracles.norm_table_brute(limit)
    mismatch = solv = 0
    for N in range(limit + 1):
        if all_norm_solutions(N) != table[N]:
            mismatch += 1
        if (solve_norm(N) is not None) != oracles.splits_as_norm(N):
            solv += 1
        if bool(table[N]) != oracles.splits_as_norm(N):
            solv += 1
    ok = mismatch == 0 and solv == 0
    report(5, "norm-equation oracle", ok, f"N <= 1e4: {mismatch} solution-set mismatches, {solv} solvability mismatches")
    assert ok


def test_c6_lattice_enumeration(report):
    rng = random.Random(6)
    bad2 = bad4 = 0
    for _ in range(200):
        r2 = rng.uniform(0.5, 50)
        reg = SearchRegion2D(rng.uniform(-math.pi, math.pi), rng.uniform(-r2, r2), r2)
        bad2 += set(enum_2d_doubled(reg)) != oracles.brute_2d(reg)
    for _ in range(50):
        r2 = rng.uniform(0.5, 15)
        a = rng.uniform(-math.pi, math.pi)
        s = 1 / math.sqrt(2)
        reg = CapRegion4D((math.cos(a) * s, math.sin(a) * s, -s, 0.0), r2 * rng.uniform(0.3, 1.0), r2)
        bad4 += set(enum_cap4_doubled(reg)) != oracles.brute_4d(reg)
    ok = bad2 == 0 and bad4 == 0
    report(6, "lattice-enumeration oracle", ok, f"2D {200 - bad2}/200, 4D {50 - bad4}/50 exact set equality")
    assert ok


def _soundness_tasks():
    rng = random.Random(7)
    tasks = []
    for k in range(500):
        theta = rng.uniform(-math.pi, math.pi)
        if k % 2 == 0:
            tasks.append((theta, 10 ** rng.uniform(-4, -1), "householder", 0.35, False, "rz"))
        else:
            tasks.append((theta, 10 ** rng.uniform(-2, 0), "exhaustive", 0.35, False, "rz"))
    return tasks


def _key(r: BenchRecord):
    return (r.theta, r.eps, r.algorithm, r.f, r.n_r, r.distance)


def test_c7_soundness(report):
    tasks = _soundness_tasks()
    first, unitary, within, hh_total, hh_bad = [], 0, 0, 0, []
    for th, eps, algo, c, best, gate in tasks:
        out = synthesize(th, eps, algo, c, best, gate)
        V = out.matrix
        unitary += is_unitary(V) and out.word.matrix() == V.scale(out.word.phase)
        within += out.distance <= eps
        if algo == "householder":
            hh_total += 1
            if out.word.n_r > 2 * out.f:
                hh_bad.append((out.f, out.word.n_r))
        first.append((th, eps, algo, out.f, out.word.n_r, out.distance))
    second = [_key(_task(t)) for t in tasks]
    with ProcessPoolExecutor(max_workers=8) as pool:
        parallel = [_key(r) for r in pool.map(_task, tasks, chunksize=4)]
    deterministic = first == second == parallel
    ok = unitary == 500 and within == 500 and not hh_bad and deterministic
    examples = ", ".join(f"f={f} N_R={n}" for f, n in hh_bad[:3])
    report(
        7,
        "soundness suite",
        ok,
        f"unitary {unitary}/500, distance <= eps {within}/500, "
        f"Householder N_R <= 2f {hh_total - len(hh_bad)}/{hh_total} (e.g. {examples}), "
        f"deterministic across runs and 1 vs 8 workers: {deterministic}",
    )
    assert unitary == 500 and within == 500 and deterministic
    assert not hh_bad, f"{len(hh_bad)} Householder results exceed N_R <= 2f"


def test_c8_monomial_table(report):
    table = monomial_table()
    members = table.all_matrices()
    ok = len(table) == 216 and len(set(members)) == 1296
    ok = ok and all(is_monomial(M) for M in members) and set(members) == all_monomials()
    report(8, "monomial table", ok, f"{len(table)} classes, {len(set(members))} elements, all monomial, all monomials reached")
    assert ok
