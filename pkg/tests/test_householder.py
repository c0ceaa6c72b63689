import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from qutritsynth.householder import (
    HouseholderTarget,
    candidate_vectors,
    householder_search,
    reflection_error,
    search_at,
    synth_householder,
)
from qutritsynth.linalg3 import X01, RingVector3, frobenius_distance, householder, is_unitary, rz_target
from qutritsynth.ring import norm
from qutritsynth.synthesis import decompose


def direct_error(u, v):
    u = np.asarray(u, dtype=complex)
    Ru = np.eye(3) - 2 * np.outer(u, u.conj())
    Rv = householder(v).to_complex()
    return float(np.linalg.norm(Ru - Rv))


def test_target_fields():
    t = HouseholderTarget(0.8, 1e-3)
    assert sum(x * x for x in t.u) == pytest.approx(1.0)
    assert t.u[3] == 0.0
    assert t.eps_prime == pytest.approx(1e-3 / (2 * math.sqrt(2) * 0.35))
    with pytest.raises(ValueError):
        HouseholderTarget(0.1, 0.1, c=0.0)
    with pytest.raises(ValueError):
        HouseholderTarget(0.1, 0.1, c=1.5)


def test_rz_is_x01_times_reflection():
    for theta in (0.0, 0.7, -2.1):
        u = HouseholderTarget(theta, 0.1).vector
        Ru = np.eye(3) - 2 * np.outer(u, u.conj())
        assert np.allclose(X01.to_complex() @ Ru, rz_target(theta))


def test_reflection_error_examples():
    v = RingVector3((1, 0, 0), 0)
    assert reflection_error([1, 0, 0], v) == pytest.approx(0.0, abs=1e-12)
    assert reflection_error([0, 1, 0], v) == pytest.approx(math.sqrt(8))
    # parallel up to a phase
    assert reflection_error([1j, 0, 0], v) == pytest.approx(0.0, abs=1e-12)


def test_reflection_error_matches_direct():
    rng = np.random.default_rng(4)
    vecs = [RingVector3((1, 1, 1), 1), RingVector3((1, 0, 0), 0), RingVector3((2, 1, 2), 2)]
    vecs = [v for v in vecs if v.is_unit()]
    assert vecs
    for _ in range(50):
        z = rng.normal(size=3) + 1j * rng.normal(size=3)
        u = z / np.linalg.norm(z)
        for v in vecs:
            assert reflection_error(u, v) == pytest.approx(direct_error(u, v), abs=1e-10)


def test_trivial_tolerance():
    r = householder_search(0.0, 2 * math.sqrt(2), c=1.0)
    assert r.f == 0
    assert r.distance <= 2 * math.sqrt(2)


def test_theta_zero_needs_r():
    r = householder_search(0.0, 0.3)
    assert r.distance <= 0.3
    assert decompose(r.matrix).n_r > 0


def test_result_shape():
    for theta, eps in ((0.4, 0.1), (-1.3, 1e-2), (1.1, 1e-3)):
        r = householder_search(theta, eps)
        assert r.vector.is_unit()
        assert r.matrix == X01 @ householder(r.vector)
        assert is_unitary(r.matrix)
        assert frobenius_distance(r.matrix, rz_target(theta)) == pytest.approx(r.distance)
        assert r.distance <= eps
        assert synth_householder(theta, eps) == r.matrix


@pytest.mark.parametrize("theta,f,eps", [(0.3, 6, 0.2), (-0.9, 9, 0.05), (1.4, 12, 0.02)])
def test_candidates_unit_and_bounded(theta, f, eps):
    t = HouseholderTarget(theta, eps)
    ep = t.eps_prime
    n = 0
    for v in candidate_vectors(t, f):
        n += 1
        assert v.norm_sq_numerator() == 3**f
        assert norm(v.entries[2]) <= 3**f * ep * ep * (1 - ep * ep / 4) * 1.01
    assert n > 0


@pytest.mark.parametrize("theta,f,eps", [(0.3, 6, 0.2), (-0.9, 9, 0.05), (0.2, 11, 0.03)])
def test_upper_bound_chain(theta, f, eps):
    t = HouseholderTarget(theta, eps)
    u = t.vector
    for v in candidate_vectors(t, f):
        d = float(np.linalg.norm(u - v.to_complex()))
        delta = math.sqrt(max(0.0, 1 - d * d / 4))
        assert delta <= 1
        assert reflection_error(u, v) <= 2 * math.sqrt(2) * d * delta + 1e-9


def test_rejection_with_contraction():
    # with c < 1 some candidates inside the vector cap exceed eps; none may be returned
    rejected = 0
    for theta in np.linspace(-1.5, 1.5, 7):
        t = HouseholderTarget(float(theta), 0.05, c=0.35)
        rz = rz_target(float(theta))
        for f in range(0, 12):
            for v in candidate_vectors(t, f):
                if frobenius_distance(X01 @ householder(v), rz) > 0.05:
                    rejected += 1
            r = search_at(t, f, best=True)
            if r is not None:
                assert r.distance <= 0.05
    assert rejected > 0


def test_best_at_f_not_worse():
    for theta in (0.25, -0.8):
        a = householder_search(theta, 1e-2)
        b = householder_search(theta, 1e-2, best_at_f=True)
        assert a.f == b.f and b.distance <= a.distance


def test_smallest_f_first():
    theta, eps = 0.6, 0.05
    r = householder_search(theta, eps)
    t = HouseholderTarget(theta, eps)
    for f in range(r.f):
        assert search_at(t, f) is None


@given(st.floats(-math.pi / 2, math.pi / 2), st.sampled_from([0.3, 0.1, 0.03]))
def test_distance_property(theta, eps):
    r = householder_search(theta, eps)
    assert r.distance <= eps and is_unitary(r.matrix)


def test_r_count_at_most_2f():
    # expected to fail: the reflection returned here needs 2f + 1 R gates
    r = householder_search(1.1, 1e-4)
    w = decompose(r.matrix)
    assert w.n_r <= 2 * r.f, f"f={r.f} N_R={w.n_r}"
