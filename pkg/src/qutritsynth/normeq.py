"""Solve ``|x|^2 = N`` over the Eisenstein integers.

The primary solver walks the half-integer parametrization ``p = a - b/2``,
``q = b/2`` for which the norm equation reads ``p^2 + 3 q^2 = N``.  All loops
run over the doubled coordinates ``P = 2p`` and ``Q = 2q`` so everything stays
integral: ``P^2 + 3 Q^2 = 4N`` with ``P + Q`` even.
"""

from __future__ import annotations

from functools import lru_cache
from math import isqrt
from typing import Optional

import numpy as np

from . import _backend
from .ring import UNIT_VALUES, EisensteinInt, norm


def solve_norm(N: int, method: str = "enumerate") -> Optional[EisensteinInt]:
    """One ``x`` with ``norm(x) == N`` or ``None``.

    ``method="enumerate"`` is deterministic: the smallest ``q >= 0`` wins and
    the positive ``p`` branch is tried first.  ``method="factor"`` uses trial
    division and composes prime solutions; it is faster for large ``N`` with
    small prime factors but returns a different representative.
    """
    if N < 0:
        return None
    if N == 0:
        return EisensteinInt(0, 0)
    if method == "factor":
        return _solve_by_factoring(N)
    if method != "enumerate":
        raise ValueError(f"unknown method {method!r}")
    hit = _backend.for_bound(4 * N).solve_norm_doubled(N)
    if hit is None:
        return None
    P, Q = hit
    return EisensteinInt((P + Q) // 2, Q)


def all_norm_solutions(N: int) -> list[EisensteinInt]:
    """Every ``x`` with ``norm(x) == N``, sorted by ``(a, b)``."""
    if N < 0:
        return []
    if N == 0:
        return [EisensteinInt(0, 0)]
    return [EisensteinInt(a, b) for a, b in _all_solutions_tuple(N)]


@lru_cache(maxsize=1 << 16)
def _all_solutions_tuple(N: int) -> tuple[tuple[int, int], ...]:
    out = []
    four_n = 4 * N
    qmax = isqrt(four_n // 3)
    for Q in range(-qmax, qmax + 1):
        rest = four_n - 3 * Q * Q
        P = isqrt(rest)
        if P * P != rest:
            continue
        for PP in {P, -P}:
            if (PP + Q) % 2 == 0:
                out.append(((PP + Q) // 2, Q))
    out.sort()
    return tuple(out)


def norm_solutions_tuple(N: int) -> tuple[tuple[int, int], ...]:
    """Cached ``(a, b)`` pairs for ``N``; the hot-path form of :func:`all_norm_solutions`."""
    if N == 0:
        return ((0, 0),)
    if N < 0:
        return ()
    return _all_solutions_tuple(N)


def norm_table(n_max: int) -> dict[int, list[EisensteinInt]]:
    """Map every ``0 <= N <= n_max`` to its full sorted solution list."""
    table: dict[int, list[EisensteinInt]] = {n: [] for n in range(n_max + 1)}
    four = 4 * n_max
    qmax = isqrt(four // 3)
    for Q in range(-qmax, qmax + 1):
        rest = four - 3 * Q * Q
        pmax = isqrt(rest)
        start = -pmax
        if (start + Q) % 2:
            start += 1
        for P in range(start, pmax + 1, 2):
            a = (P + Q) // 2
            table[(P * P + 3 * Q * Q) // 4].append(EisensteinInt(a, Q))
    for sols in table.values():
        sols.sort()
    return table


@lru_cache(maxsize=8)
def _sieve_cached(n_max: int) -> np.ndarray:
    rep = np.zeros(n_max + 1, dtype=np.uint8)
    bmax = isqrt(4 * n_max // 3) + 1
    for b in range(-bmax, bmax + 1):
        # a^2 - ab + b^2 <= n  <=>  (2a - b)^2 <= 4n - 3b^2
        rest = 4 * n_max - 3 * b * b
        if rest < 0:
            continue
        r = isqrt(rest)
        lo = (b - r + 1) // 2
        hi = (b + r) // 2
        a = np.arange(lo, hi + 1, dtype=np.int64)
        vals = a * a - a * b + b * b
        rep[vals[vals <= n_max]] = 1
    return rep


def representable_sieve(n_max: int) -> np.ndarray:
    """``uint8`` array with ``sieve[n] == 1`` iff ``n`` is a norm, for ``n <= n_max``."""
    # round up so that growing requests reuse the cache
    size = 1 << max(10, (max(n_max, 1)).bit_length())
    return _sieve_cached(size)


def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_norm_by_primes(N: int) -> bool:
    """Solvability via prime splitting: every prime ``= 2 (mod 3)`` must occur to an even power."""
    if N < 0:
        return False
    if N == 0:
        return True
    return all(e % 2 == 0 for p, e in _factorize(N).items() if p % 3 == 2)


def _solve_by_factoring(N: int) -> Optional[EisensteinInt]:
    x = EisensteinInt(1, 0)
    for p, e in sorted(_factorize(N).items()):
        if p % 3 == 2:
            if e % 2:
                return None
            x = x * (p ** (e // 2))
        elif p == 3:
            for _ in range(e):
                x = x * EisensteinInt(1, -1)
        else:
            pi = solve_norm(p)
            for _ in range(e):
                x = x * pi
    return x


def canonical_associate(x: EisensteinInt) -> EisensteinInt:
    """Smallest ``(a, b)`` among the six unit multiples of ``x``."""
    return min(x * u for u in UNIT_VALUES)


__all__ = [
    "solve_norm",
    "all_norm_solutions",
    "norm_table",
    "representable_sieve",
    "is_norm_by_primes",
    "canonical_associate",
    "norm",
]
