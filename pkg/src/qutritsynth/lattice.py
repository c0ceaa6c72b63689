"""Eisenstein lattice points in half-plane/disk and hyperplane/ball regions.

Points are reported as half-integer pairs ``(p, q)`` (``Fraction``) through the
public iterators, and as doubled integer coordinates ``(2p, 2q)`` through the
``*_doubled`` helpers that the search algorithms use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Union

from . import _backend

Real = Union[int, float]

GUARD = 1e-9
GUARD_REL = 1e-12


def eta(eps: float) -> float:
    """``1 - eps^2 / 2``: the real-part threshold equivalent to a column error ``eps``."""
    return 1.0 - eps * eps / 2.0


def _bound4(r2: Real, r2_sq: Real | None) -> Real:
    if r2_sq is not None:
        return 4 * r2_sq
    if isinstance(r2, int):
        return 4 * r2 * r2
    return 4.0 * r2 * r2


def _guard(r2: float) -> float:
    return GUARD + GUARD_REL * abs(r2)


@dataclass(frozen=True)
class SearchRegion2D:
    """``p cos(alpha) + sqrt(3) q sin(alpha) >= r1`` and ``p^2 + 3 q^2 <= r2^2``.

    ``r2_sq`` may be given as an exact integer to make the disk test exact.
    """

    alpha: float
    r1: float
    r2: Real
    r2_sq: Real | None = None
    cos_a: float = field(init=False, repr=False)
    sin_a: float = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "cos_a", math.cos(self.alpha))
        object.__setattr__(self, "sin_a", math.sin(self.alpha))

    @classmethod
    def for_denominator(cls, alpha: float, f: int, eps: float) -> SearchRegion2D:
        """Region for an entry with denominator ``chi**f`` and column error ``eps``."""
        k = (f + 1) // 2
        r2 = 3**k
        return cls(alpha, r2 * eta(eps), r2, r2_sq=r2 * r2)

    @property
    def bound4(self) -> Real:
        return _bound4(self.r2, self.r2_sq)

    def contains_doubled(self, P: int, Q: int) -> bool:
        return _backend.pure.contains_2d(P, Q, self.cos_a, self.sin_a, self.r1, self.bound4)

    def contains(self, p, q) -> bool:
        return self.contains_doubled(int(2 * p), int(2 * q))


@dataclass(frozen=True)
class CapRegion4D:
    """``u . y >= r1`` and ``|y|^2 <= r2^2`` for ``y = (p1, sqrt3 q1, p2, sqrt3 q2)``."""

    u: tuple[float, float, float, float]
    r1: float
    r2: Real
    r2_sq: Real | None = None

    def __post_init__(self):
        u = tuple(float(x) for x in self.u)
        if len(u) != 4:
            raise ValueError("u must have four components")
        object.__setattr__(self, "u", u)

    @classmethod
    def householder(cls, theta: float, f: int, eps: float) -> CapRegion4D:
        """Region for approximating ``(e^{i theta/2}, -1, 0)/sqrt(2)`` at denominator ``chi**f``."""
        k = (f + 1) // 2
        r2 = 3**k
        s = 1.0 / math.sqrt(2.0)
        u = (math.cos(theta / 2) * s, math.sin(theta / 2) * s, -s, 0.0)
        return cls(u, r2 * eta(eps), r2, r2_sq=r2 * r2)

    @property
    def bound4(self) -> Real:
        return _bound4(self.r2, self.r2_sq)

    def contains_doubled(self, P1: int, Q1: int, P2: int, Q2: int) -> bool:
        return _backend.pure.contains_4d(P1, Q1, P2, Q2, *self.u, self.r1, self.bound4)


def enum_2d_doubled(region: SearchRegion2D) -> list[tuple[int, int]]:
    """All ``(2p, 2q)`` in the region, ``q`` ascending then ``p`` ascending."""
    b4 = region.bound4
    k = _backend.for_bound(b4)
    return k.enum_2d(region.cos_a, region.sin_a, region.r1, float(region.r2), b4, _guard(region.r2))


def enum_2d(region: SearchRegion2D) -> Iterator[tuple[Fraction, Fraction]]:
    """Lattice points ``(p, q)`` with ``p + q`` integral inside ``region``."""
    for P, Q in enum_2d_doubled(region):
        yield Fraction(P, 2), Fraction(Q, 2)


def enum_cap4_doubled(region: CapRegion4D) -> list[tuple[int, int, int, int]]:
    """All ``(2p1, 2q1, 2p2, 2q2)`` in the cap, ordered by ``(p2, q1, p1, q2)`` for ``u4 == 0``."""
    b4 = region.bound4
    k = _backend.for_bound(b4)
    u0, u1, u2, u3 = region.u
    g = _guard(region.r2)
    if u3 == 0.0:
        return k.enum_cap4(u0, u1, u2, u3, region.r1, float(region.r2), b4, g)
    return _backend.pure.enum_box4(u0, u1, u2, u3, region.r1, float(region.r2), b4, g)


def enum_cap4(region: CapRegion4D) -> Iterator[tuple[Fraction, Fraction, Fraction, Fraction]]:
    for P1, Q1, P2, Q2 in enum_cap4_doubled(region):
        yield Fraction(P1, 2), Fraction(Q1, 2), Fraction(P2, 2), Fraction(Q2, 2)


def cap4_volume(r1: float, r2: float) -> float:
    """Volume of the 4-ball cap ``{y : y4 >= r1, |y| <= r2}``."""
    if r1 >= r2:
        return 0.0
    if r1 <= -r2:
        return math.pi**2 * r2**4 / 2.0
    # half-angle of the cap, from the chord rather than acos for thin caps
    phi = math.atan2(math.sqrt((r2 - r1) * (r2 + r1)), r1)
    if phi < 1e-2:
        # the closed form cancels to O(phi^5); use its series instead
        g = 6.4 * phi**5 - 3.0476190476190474 * phi**7
    else:
        g = 12 * phi - 8 * math.sin(2 * phi) + math.sin(4 * phi)
    return math.pi * r2**4 / 24.0 * g


# covolume of the doubled-free lattice (p, sqrt3 q): sqrt(3)/2 in 2D, 3/4 in 4D
FUNDAMENTAL_AREA_2D = math.sqrt(3.0) / 2.0
FUNDAMENTAL_VOLUME_4D = 0.75
