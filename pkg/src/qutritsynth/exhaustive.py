"""Exhaustive search for the lowest-denominator unitary close to ``R^Z(theta)``.

For each denominator exponent ``f`` (ascending) the diagonal entries
``x1, y2, z3`` are drawn from three half-plane/disk lattice regions, one per
diagonal target ``exp(-i theta/2), exp(i theta/2), 1``.  Only the diagonal
enters the Frobenius distance of a unitary to a diagonal target, so a
triplet is accepted by its summed column error alone.  Surviving triplets
are completed to an exact unitary using the cofactor identity
``cof(N)_ij = u chi^f conj(N_ij)`` (``u`` a unit), which fixes the squared
modulus of every off-diagonal entry up to a quadratic root.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product
from typing import Iterator, Optional, Sequence

from . import _backend
from .errors import NotDivisible
from .lattice import SearchRegion2D, enum_2d_doubled
from .linalg3 import RingMatrix3, frobenius_distance, is_unitary, rz_target
from .normeq import norm_solutions_tuple
from .ring import (
    CHI,
    UNIT_VALUES,
    UNITS,
    EisensteinInt,
    chi_divide,
    chi_divisible,
    exact_div,
    from_doubled,
    gamma,
    gamma_divide,
    norm,
)

# the compiled triplet kernel holds numerators of size 3^f in 128-bit products
COMPILED_MAX_F = 36
HORN_GUARD = 1e-9


@dataclass(frozen=True)
class CandidateTriplet:
    """Diagonal numerators of ``N / chi^f``; ``errors`` are the column errors ``2 - 2 Re(conj(t_i) V_ii)``."""

    x1: EisensteinInt
    y2: EisensteinInt
    z3: EisensteinInt
    f: int
    errors: tuple[float, float, float] = field(default=(0.0, 0.0, 0.0), compare=False)

    @property
    def entries(self) -> tuple[EisensteinInt, EisensteinInt, EisensteinInt]:
        return self.x1, self.y2, self.z3

    @property
    def total_error(self) -> float:
        e1, e2, e3 = self.errors
        return e1 + e2 + e3


@dataclass(frozen=True)
class ExhaustiveResult:
    matrix: RingMatrix3
    f: int
    distance: float
    triplet: CandidateTriplet
    hits_tried: int


def diagonal_angles(theta: float) -> tuple[float, float, float]:
    """Target directions of the three diagonal entries of ``R^Z(theta)``."""
    return -theta / 2, theta / 2, 0.0


def _chi_power(f: int) -> EisensteinInt:
    x = EisensteinInt(1, 0)
    for _ in range(f):
        x = x * CHI
    return x


def entry_candidates(alpha: float, f: int, eps: float) -> list[tuple[EisensteinInt, float]]:
    """Numerators ``x`` with ``x / chi^f`` in the region of angle ``alpha``, with their column errors.

    Lattice points ``x'`` of the region are mapped to ``x = x' / gamma(f)``;
    points not divisible by ``gamma(f)`` are dropped.  Sorted by ``(a, b)``.
    """
    region = SearchRegion2D.for_denominator(alpha, f, eps)
    r2 = float(region.r2)
    c, s = region.cos_a, region.sin_a
    out = []
    for P, Q in enum_2d_doubled(region):
        try:
            x = gamma_divide(from_doubled(P, Q), f)
        except NotDivisible:
            continue
        err = 2.0 - (P * c + _backend.pure.S3 * Q * s) / r2
        out.append((x, err))
    out.sort(key=lambda t: (t[0].a, t[0].b))
    return out


def enumerate_candidates(
    theta: float, f: int, budgets: Sequence[float], total: Optional[float] = None
) -> Iterator[CandidateTriplet]:
    """Cartesian product of the three entry regions, lexicographic in ``(x1, y2, z3)``.

    ``budgets`` are the per-column errors ``(eps1, eps2, eps3)``.  With
    ``total`` set, triplets whose summed squared column error exceeds
    ``total**2`` are skipped.
    """
    lists = [entry_candidates(al, f, e) for al, e in zip(diagonal_angles(theta), budgets)]
    limit = None if total is None else total * total
    for (x1, e1), (y2, e2), (z3, e3) in product(*lists):
        if limit is not None and e1 + e2 + e3 > limit:
            continue
        yield CandidateTriplet(x1, y2, z3, f, (e1, e2, e3))


# -- Horn / Thompson test --------------------------------------------------


def _sqrt_le_shifted(U: int, D: int, V: int) -> bool:
    """Exact ``sqrt(U) <= D + sqrt(V)`` for integers ``U, V >= 0``."""
    if D >= 0:
        L = U - D * D - V
        return L <= 0 or L * L <= 4 * D * D * V
    L = V - U - D * D
    return L >= 0 and 4 * D * D * U <= L * L


def _sum_sqrt_le(ni: int, nj: int, nk: int, M: int) -> bool:
    """Exact ``sqrt(ni) + sqrt(nj) <= sqrt(M) + sqrt(nk)``."""
    # square both (non-negative) sides, leaving 2 sqrt(ni nj) <= D + 2 sqrt(M nk)
    D = M + nk - ni - nj
    return _sqrt_le_shifted(4 * ni * nj, D, 4 * M * nk)


def horn_check(t: CandidateTriplet) -> bool:
    """Can ``(x1, y2, z3) / chi^f`` be the diagonal of a 3x3 unitary?

    For moduli ``d_i`` of a unitary diagonal the complete condition is
    ``d_i <= 1`` and ``d_i + d_j - d_k <= 1`` for each choice of ``k``.  In
    numerator units the bound is ``sqrt(3)^f``.  Evaluated in floating point
    and decided exactly by squaring when within a relative guard band.
    """
    n = [norm(x) for x in t.entries]
    M = 3**t.f
    if any(v > M for v in n):
        return False
    s = math.sqrt(M)
    r = [math.sqrt(v) for v in n]
    for k in range(3):
        i, j = [m for m in range(3) if m != k]
        lhs = r[i] + r[j] - r[k]
        if abs(lhs - s) > HORN_GUARD * s:
            if lhs > s:
                return False
        elif not _sum_sqrt_le(n[i], n[j], n[k], M):
            return False
    return True


# -- completion ------------------------------------------------------------


def _unit_times_conj(u: EisensteinInt, chif: EisensteinInt, x: EisensteinInt) -> EisensteinInt:
    return u * chif * x.conj()


def _cofactor_roots(t: CandidateTriplet, ui: int) -> list[int]:
    """Values of ``|x2|^2`` allowed by the three diagonal cofactor identities for unit ``ui``."""
    x1, y2, z3 = t.entries
    M = 3**t.f
    X, Y, Z = (_row(x, 0.0, t.f, _chi_power(t.f)) for x in t.entries)
    p = x1 * y2
    hits: list = []
    _backend.pure.cofactor_test(hits, 0, 0, 0, ui, X, Y, Z, M, M - X[2], M - Y[2], p.a, p.b)
    return [h[4] for h in hits]


def _divide_by_chi_power(x: EisensteinInt, f: int) -> Optional[EisensteinInt]:
    for _ in range(f):
        if not chi_divisible(x):
            return None
        x = chi_divide(x)
    return x


def _quotient(x: EisensteinInt, y: EisensteinInt) -> Optional[EisensteinInt]:
    try:
        return exact_div(x, y)
    except NotDivisible:
        return None


def _complete_with(t: CandidateTriplet, ui: int, a: int) -> Iterator[RingMatrix3]:
    """All unitaries with diagonal ``t``, determinant phase index ``ui`` and ``|x2|^2 = a``."""
    x1, y2, z3 = t.entries
    f = t.f
    M = 3**f
    u = UNIT_VALUES[ui]
    m1, m2, m3 = M - norm(x1), M - norm(y2), M - norm(z3)
    b, c, d = m1 - a, m1 + m2 - m3 - a, m3 - m1 + a
    P = x1 * y2 - u * _chi_power(f) * z3.conj()
    sign = -1 if f % 2 else 1
    for x2t in norm_solutions_tuple(a):
        x2 = EisensteinInt(*x2t)
        if x2:
            y1 = _quotient(P, x2)
            y1s = [] if y1 is None or norm(y1) != c else [y1]
        elif P:
            continue
        else:
            y1s = [EisensteinInt(*s) for s in norm_solutions_tuple(c)]
        for y1 in y1s:
            T = -(x1.conj() * y1 + x2.conj() * y2)
            for x3t in norm_solutions_tuple(b):
                x3 = EisensteinInt(*x3t)
                if x3:
                    y3 = _quotient(T, x3.conj())
                    y3s = [] if y3 is None or norm(y3) != d else [y3]
                elif T:
                    continue
                else:
                    y3s = [EisensteinInt(*s) for s in norm_solutions_tuple(d)]
                for y3 in y3s:
                    cross = (x2 * y3 - x3 * y2, x3 * y1 - x1 * y3, x1 * y2 - x2 * y1)
                    col3 = []
                    for cc in cross:
                        z = _divide_by_chi_power(cc.conj(), f)
                        if z is None:
                            break
                        col3.append(u * z * sign)
                    if len(col3) < 3 or col3[2] != z3:
                        continue
                    V = RingMatrix3(
                        [[x1, y1, col3[0]], [x2, y2, col3[1]], [x3, y3, col3[2]]], f
                    )
                    if is_unitary(V):
                        yield V


def complete_unitary(t: CandidateTriplet) -> Optional[RingMatrix3]:
    """First unitary with diagonal ``t`` (units in canonical order, ``|x2|^2`` ascending), or ``None``."""
    for ui in range(6):
        for a in sorted(set(_cofactor_roots(t, ui))):
            for V in _complete_with(t, ui, a):
                return V
    return None


# -- search ----------------------------------------------------------------


def _row(x: EisensteinInt, err: float, f: int, chif: EisensteinInt) -> tuple:
    w = tuple(c for u in UNIT_VALUES for c in _unit_times_conj(u, chif, x))
    xp = x * gamma(f)
    return (x.a, x.b, norm(x), err, w, 2 * xp.a - xp.b, xp.b)


def _pack(cands, f, chif, prune):
    """Kernel rows for candidate entries, sorted by error; returns ``(rows, order)``."""
    rows = []
    for idx, (x, err) in enumerate(cands):
        if prune and chi_divisible(x):
            continue
        rows.append((err, idx, _row(x, err, f, chif)))
    rows.sort(key=lambda r: (r[0], r[1]))
    return [r[2] for r in rows], [r[1] for r in rows]


def _triplet_kernel(f: int):
    return _backend.kernels if f <= COMPILED_MAX_F else _backend.pure


def search_at(theta: float, f: int, eps: float, split: str = "total") -> Optional[ExhaustiveResult]:
    """Best unitary at denominator exponent ``f`` within ``eps``, or ``None``.

    ``split="total"`` gives every column the full budget and filters on the
    summed squared column error; ``split="symmetric"`` uses ``eps/sqrt(3)``
    per column.
    """
    if split == "total":
        budgets = (eps, eps, eps)
    elif split == "symmetric":
        budgets = (eps / math.sqrt(3.0),) * 3
    else:
        raise ValueError(f"unknown budget split {split!r}")
    target = rz_target(theta)
    cands = [entry_candidates(al, f, e) for al, e in zip(diagonal_angles(theta), budgets)]
    if not all(cands):
        return None
    chif = _chi_power(f)
    # numerators of a unitary with sde f >= 1 are never divisible by chi, and
    # smaller sde values were already searched
    prune = f >= 1
    packed = [_pack(c, f, chif, prune) for c in cands]
    (xs, xo), (ys, yo), (zs, zo) = packed
    eps2 = eps * eps if split == "total" else 3.0
    hits = _triplet_kernel(f).triplet_hits(xs, ys, zs, 3**f, 3 ** (f // 2), eps2)
    if not hits:
        return None
    keyed = []
    for i, j, k, ui, a in hits:
        x1, e1 = cands[0][xo[i]]
        y2, e2 = cands[1][yo[j]]
        z3, e3 = cands[2][zo[k]]
        t = CandidateTriplet(x1, y2, z3, f, (e1, e2, e3))
        key = (max(e1, e2, e3), x1.a, x1.b, y2.a, y2.b, z3.a, z3.b, ui, a)
        keyed.append((key, t, ui, a))
    keyed.sort(key=lambda r: r[0])
    for n, (_, t, ui, a) in enumerate(keyed, 1):
        if not horn_check(t):
            continue
        for V in _complete_with(t, ui, a):
            dist = frobenius_distance(V, target)
            if dist <= eps:
                return ExhaustiveResult(V, f, dist, t, n)
    return None


def exhaustive_search(
    theta: float, eps: float, max_f: int = 80, split: str = "total"
) -> ExhaustiveResult:
    """Ascending-``f`` search; the first denominator exponent with a solution wins."""
    if not eps > 0:
        raise ValueError("eps must be positive")
    for f in range(max_f + 1):
        res = search_at(theta, f, eps, split)
        if res is not None:
            return res
    raise ArithmeticError(f"no unitary within {eps} up to f={max_f}")


def synth_exhaustive(theta: float, eps: float, **kw) -> RingMatrix3:
    """Unitary over the Eisenstein ring within ``eps`` of ``R^Z(theta)`` with minimal denominator."""
    return exhaustive_search(theta, eps, **kw).matrix


__all__ = [
    "CandidateTriplet",
    "ExhaustiveResult",
    "enumerate_candidates",
    "horn_check",
    "complete_unitary",
    "search_at",
    "exhaustive_search",
    "synth_exhaustive",
]
