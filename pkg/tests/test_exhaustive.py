import math
import random

import pytest
from hypothesis import given, strategies as st

from qutritsynth.exhaustive import (
    CandidateTriplet,
    complete_unitary,
    diagonal_angles,
    entry_candidates,
    enumerate_candidates,
    exhaustive_search,
    horn_check,
    search_at,
    synth_exhaustive,
)
from qutritsynth.lattice import eta
from qutritsynth.linalg3 import H, IDENTITY, frobenius_distance, is_unitary, rz_target
from qutritsynth.ring import OMEGA, ONE, EisensteinInt, norm

from . import oracles

W = OMEGA


def T(x1, y2, z3, f):
    def e(v):
        return v if isinstance(v, EisensteinInt) else EisensteinInt(v, 0)

    return CandidateTriplet(e(x1), e(y2), e(z3), f)


def test_identity_candidate():
    ts = list(enumerate_candidates(0.0, 0, (0.1, 0.1, 0.1)))
    assert T(1, 1, 1, 0) in ts


def test_candidates_satisfy_region_constraint():
    theta, f, eps = 0.0, 1, 0.8
    targets = oracles.diagonal_targets(theta)
    for t in enumerate_candidates(theta, f, (eps, eps, eps)):
        for x, tgt in zip(t.entries, targets):
            assert oracles.column_error(x, f, tgt) <= eps * eps + 1e-12
            assert norm(x) <= 3**f


def test_candidate_count_matches_box_scan():
    theta, f, eps = 0.7, 4, 0.3
    counts = [oracles.box_region_count(al, f, eps) for al in diagonal_angles(theta)]
    assert [len(entry_candidates(al, f, eps)) for al in diagonal_angles(theta)] == counts
    n = sum(1 for _ in enumerate_candidates(theta, f, (eps, eps, eps)))
    assert n == counts[0] * counts[1] * counts[2]


def test_candidate_order_lexicographic():
    ts = list(enumerate_candidates(0.4, 3, (0.9, 0.9, 0.9)))
    keys = [tuple((x.a, x.b) for x in t.entries) for t in ts]
    assert keys == sorted(keys)


def test_horn_examples():
    assert horn_check(T(1, 1, 1, 0))
    assert horn_check(T(1, W, W, 1))
    assert horn_check(T(0, 0, 0, 1)) is True
    assert not horn_check(T(2, 0, 0, 0))


def test_horn_true_but_no_completion():
    t = T(1, 1, 3, 2)
    assert horn_check(t)
    assert complete_unitary(t) is None
    assert not oracles.has_completion(t.x1, t.y2, t.z3, 2)


def test_completion_examples():
    assert complete_unitary(T(1, 1, 1, 0)) == IDENTITY
    V = complete_unitary(T(1, W, W, 1))
    assert V is not None and is_unitary(V)
    assert [V.rows[i][i] for i in range(3)] == [ONE, W, W]
    assert H.rows[1][1] == W


@pytest.mark.parametrize("f", [0, 1, 2])
def test_completion_matches_brute_force(f):
    rng = random.Random(f)
    tested = 0
    for _ in range(6):
        theta = rng.uniform(-math.pi, math.pi)
        for t in enumerate_candidates(theta, f, (1.2, 1.2, 1.2)):
            if not horn_check(t):
                continue
            V = complete_unitary(t)
            assert (V is not None) == oracles.has_completion(t.x1, t.y2, t.z3, f)
            if V is not None:
                assert is_unitary(V) and V.fexp <= f
                tested += 1
    assert tested > 0


def test_horn_necessary_on_completions():
    # every diagonal of a genuine unitary passes the check
    for f in (1, 2):
        vecs = oracles.unit_vectors(f)
        rng = random.Random(5)
        for c1 in rng.sample(vecs, 40):
            for c2 in vecs:
                if oracles._hdot(c1, c2):
                    continue
                for c3 in oracles.third_columns(c1, c2, f)[:1]:
                    assert horn_check(T(c1[0], c2[1], c3[2], f))
                break


@given(st.floats(-1.5, 1.5), st.sampled_from([0.5, 0.3, 0.2]))
def test_horn_guard_exact_agree(theta, eps):
    from qutritsynth.exhaustive import _sum_sqrt_le

    for t in list(enumerate_candidates(theta, 2, (eps, eps, eps)))[:50]:
        n = [norm(x) for x in t.entries]
        M = 9
        exact = all(n_i <= M for n_i in n) and all(
            _sum_sqrt_le(n[i], n[j], n[k], M) for i, j, k in ((0, 1, 2), (0, 2, 1), (1, 2, 0))
        )
        assert horn_check(t) == exact


def test_synth_examples():
    r = exhaustive_search(0.0, 0.1)
    assert r.f == 0 and r.matrix == IDENTITY
    r = exhaustive_search(0.7, 0.25)
    assert r.distance <= 0.25 and is_unitary(r.matrix)
    V = synth_exhaustive(math.pi / 5, 1e-2)
    assert frobenius_distance(V, rz_target(math.pi / 5)) <= 1e-2


def test_f_minimality_against_brute_force():
    rng = random.Random(31)
    cases = [(rng.uniform(-math.pi / 2, math.pi / 2), rng.choice([0.1, 0.3, 0.5, 0.7, 1.0])) for _ in range(20)]
    for theta, eps in cases:
        res = exhaustive_search(theta, eps)
        want = oracles.min_f(theta, eps, 3)
        if want is None:
            assert res.f > 3
        else:
            assert res.f == want, (theta, eps)


def test_total_budget_finds_superset_of_symmetric():
    for theta in (0.3, -1.1, 0.9):
        for f in range(0, 7):
            sym = search_at(theta, f, 0.5, split="symmetric")
            tot = search_at(theta, f, 0.5)
            if sym is not None:
                assert tot is not None


def test_budget_consistency_on_result():
    theta, eps = 0.45, 0.1
    r = exhaustive_search(theta, eps)
    targets = oracles.diagonal_targets(theta)
    errs = [oracles.column_error(r.matrix.rows[i][i], r.matrix.fexp, targets[i]) for i in range(3)]
    assert sum(errs) <= eps * eps + 1e-12
    assert math.sqrt(max(sum(errs), 0)) == pytest.approx(r.distance, abs=1e-9)


def test_deterministic():
    a = exhaustive_search(1.234, 0.05)
    b = exhaustive_search(1.234, 0.05)
    assert a.matrix == b.matrix and a.triplet == b.triplet


def test_bad_split():
    with pytest.raises(ValueError):
        search_at(0.1, 1, 0.5, split="uneven")
    with pytest.raises(ValueError):
        exhaustive_search(0.1, 0.0)


def test_eta_threshold():
    assert eta(0.2) == pytest.approx(0.98)
