"""Approximate ``R^Z(theta)`` by ``X01 * R_v`` for a unit Eisenstein vector ``v``.

``R^Z(theta) = X01 * R_u`` exactly for ``u = (exp(i theta/2), -1, 0)/sqrt(2)``,
and ``||R_u - R_v||_F^2 = 8 (1 - |u^dagger v|^2)``, so it suffices to find a
unit vector ``v = (v1, v2, v3) / chi^f`` with ``Re(u^dagger v)`` close to 1.
The pair ``(v1, v2)`` is a lattice point of a 4D spherical cap and ``v3``
solves the remaining norm equation.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import NotDivisible
from .lattice import CapRegion4D, enum_cap4_doubled
from .linalg3 import X01, RingMatrix3, RingVector3, frobenius_distance, householder, rz_target
from .normeq import representable_sieve, solve_norm
from .ring import EisensteinInt, chi_divisible, from_doubled, gamma_divide, norm

DEFAULT_CONTRACTION = 0.35
SIEVE_LIMIT = 1 << 22


@dataclass(frozen=True)
class HouseholderTarget:
    theta: float
    eps: float
    c: float = DEFAULT_CONTRACTION
    u: tuple[float, float, float, float] = field(init=False)
    eps_prime: float = field(init=False)

    def __post_init__(self):
        if not 0 < self.c <= 1:
            raise ValueError("contraction factor must lie in (0, 1]")
        if not self.eps > 0:
            raise ValueError("eps must be positive")
        s = 1.0 / math.sqrt(2.0)
        h = self.theta / 2
        object.__setattr__(self, "u", (math.cos(h) * s, math.sin(h) * s, -s, 0.0))
        object.__setattr__(self, "eps_prime", self.eps / (2.0 * math.sqrt(2.0) * self.c))

    @property
    def vector(self) -> np.ndarray:
        """The complex reflection vector ``u``."""
        return np.array([cmath.exp(0.5j * self.theta), -1.0, 0.0]) / math.sqrt(2.0)

    def region(self, f: int) -> CapRegion4D:
        return CapRegion4D.householder(self.theta, f, self.eps_prime)


@dataclass(frozen=True)
class HouseholderResult:
    matrix: RingMatrix3
    vector: RingVector3
    f: int
    distance: float
    candidates: int


def reflection_error(u, v: RingVector3) -> float:
    """``||R_u - R_v||_F`` from ``8 (1 - |u^dagger v|^2)``; both vectors must be unit."""
    u = np.asarray(u, dtype=complex)
    ip = np.vdot(u, v.to_complex())
    return math.sqrt(max(0.0, 8.0 * (1.0 - abs(ip) ** 2)))


def _third_entry(n3: int) -> Optional[EisensteinInt]:
    if n3 < 0:
        return None
    if n3 <= SIEVE_LIMIT and not representable_sieve(n3)[n3]:
        return None
    return solve_norm(n3)


def candidate_vectors(target: HouseholderTarget, f: int):
    """Unit vectors ``v / chi^f`` with ``(v1, v2)`` in the cap, in enumeration order.

    For ``f >= 1`` pairs with both entries divisible by chi are skipped: their
    vector has a smaller denominator and was produced at a lower ``f``.
    """
    M = 3**f
    for P1, Q1, P2, Q2 in enum_cap4_doubled(target.region(f)):
        try:
            v1 = gamma_divide(from_doubled(P1, Q1), f)
            v2 = gamma_divide(from_doubled(P2, Q2), f)
        except NotDivisible:
            continue
        if f >= 1 and chi_divisible(v1) and chi_divisible(v2):
            continue
        v3 = _third_entry(M - norm(v1) - norm(v2))
        if v3 is None:
            continue
        yield RingVector3((v1, v2, v3), f)


def search_at(target: HouseholderTarget, f: int, best: bool = False) -> Optional[HouseholderResult]:
    """First (or, with ``best``, closest) accepted reflection at exponent ``f``."""
    rz = rz_target(target.theta)
    u = target.vector
    found = None
    n = 0
    for v in candidate_vectors(target, f):
        n += 1
        # cheap closed-form screen; the exact matrix check below decides
        if reflection_error(u, v) > target.eps * (1 + 1e-9) + 1e-12:
            continue
        V = X01 @ householder(v)
        dist = frobenius_distance(V, rz)
        if dist > target.eps:
            continue
        if not best:
            return HouseholderResult(V, v, f, dist, n)
        if found is None or dist < found.distance:
            found = HouseholderResult(V, v, f, dist, n)
    if found is not None:
        return HouseholderResult(found.matrix, found.vector, f, found.distance, n)
    return None


def householder_search(
    theta: float,
    eps: float,
    c: float = DEFAULT_CONTRACTION,
    best_at_f: bool = False,
    max_f: int = 120,
) -> HouseholderResult:
    target = HouseholderTarget(theta, eps, c)
    for f in range(max_f + 1):
        res = search_at(target, f, best_at_f)
        if res is not None:
            return res
    raise ArithmeticError(f"no reflection within {eps} up to f={max_f}")


def synth_householder(
    theta: float, eps: float, c: float = DEFAULT_CONTRACTION, best_at_f: bool = False
) -> RingMatrix3:
    """``X01 * R_v`` within ``eps`` of ``R^Z(theta)``, smallest ``f`` first."""
    return householder_search(theta, eps, c, best_at_f).matrix


__all__ = [
    "HouseholderTarget",
    "HouseholderResult",
    "reflection_error",
    "candidate_vectors",
    "householder_search",
    "synth_householder",
]
