"""Exact arithmetic in the Eisenstein integers and their localization at chi.

An Eisenstein integer ``a + b*w`` (``w = exp(2 pi i / 3)``) is stored as the
integer pair ``(a, b)``.  Elements of the localized ring carry an additional
denominator exponent ``f`` and represent ``num / chi**f`` with
``chi = 1 + 2w = sqrt(-3)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .errors import NotDivisible, RingOverflow

INT128_LIMIT = 1 << 127
SQRT3 = math.sqrt(3.0)
OMEGA_COMPLEX = complex(-0.5, SQRT3 / 2)


class EisensteinInt:
    """Immutable element ``a + b*w`` of Z[w]."""

    __slots__ = ("a", "b")

    def __init__(self, a: int = 0, b: int = 0):
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    def __setattr__(self, name, value):
        raise AttributeError("EisensteinInt is immutable")

    # w^2 = -1 - w
    def __add__(self, other: EisensteinInt) -> EisensteinInt:
        return EisensteinInt(self.a + other.a, self.b + other.b)

    def __sub__(self, other: EisensteinInt) -> EisensteinInt:
        return EisensteinInt(self.a - other.a, self.b - other.b)

    def __neg__(self) -> EisensteinInt:
        return EisensteinInt(-self.a, -self.b)

    def __mul__(self, other) -> EisensteinInt:
        if isinstance(other, int):
            return EisensteinInt(self.a * other, self.b * other)
        a, b, c, d = self.a, self.b, other.a, other.b
        bd = b * d
        return EisensteinInt(a * c - bd, a * d + b * c - bd)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, EisensteinInt):
            return self.a == other.a and self.b == other.b
        if isinstance(other, int):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.a, self.b))

    def __bool__(self) -> bool:
        return bool(self.a or self.b)

    def __iter__(self) -> Iterator[int]:
        yield self.a
        yield self.b

    def __lt__(self, other: EisensteinInt) -> bool:
        return (self.a, self.b) < (other.a, other.b)

    def __repr__(self) -> str:
        return f"EisensteinInt({self.a}, {self.b})"

    def __str__(self) -> str:
        return format_eisenstein(self)

    def conj(self) -> EisensteinInt:
        # conj(w) = w^2 = -1 - w
        return EisensteinInt(self.a - self.b, -self.b)

    def norm(self) -> int:
        return norm(self)

    def __complex__(self) -> complex:
        return complex(self.a - 0.5 * self.b, SQRT3 / 2 * self.b)

    def to_json(self) -> list[int]:
        return [self.a, self.b]

    @classmethod
    def from_json(cls, data) -> EisensteinInt:
        a, b = data
        return cls(int(a), int(b))


ZERO = EisensteinInt(0, 0)
ONE = EisensteinInt(1, 0)
OMEGA = EisensteinInt(0, 1)
CHI = EisensteinInt(1, 2)


def norm(x: EisensteinInt) -> int:
    """Field norm ``|x|^2 = a^2 - ab + b^2``."""
    a, b = x.a, x.b
    return a * a - a * b + b * b


def format_eisenstein(x: EisensteinInt) -> str:
    """Render as the ``a+bω`` token used by the CLI."""
    sign = "+" if x.b >= 0 else "-"
    return f"{x.a}{sign}{abs(x.b)}ω"


def exact_div(x: EisensteinInt, y: EisensteinInt) -> EisensteinInt:
    """Return ``x / y`` in Z[w] or raise :class:`NotDivisible`."""
    n = norm(y)
    if n == 0:
        raise ZeroDivisionError("division by zero Eisenstein integer")
    p = x * y.conj()
    qa, ra = divmod(p.a, n)
    qb, rb = divmod(p.b, n)
    if ra or rb:
        raise NotDivisible(f"{x} is not divisible by {y}")
    return EisensteinInt(qa, qb)


def divides(y: EisensteinInt, x: EisensteinInt) -> bool:
    n = norm(y)
    p = x * y.conj()
    return p.a % n == 0 and p.b % n == 0


def chi_divisible(x: EisensteinInt) -> bool:
    # a + b w = a + b (mod chi), since w = 1 (mod chi)
    return (x.a + x.b) % 3 == 0


def chi_divide(x: EisensteinInt) -> EisensteinInt:
    """Divide by ``chi = 1 + 2w`` exactly."""
    # x * conj(chi) = x * (-1 - 2w); chi * conj(chi) = 3
    a, b = x.a, x.b
    if (a + b) % 3:
        raise NotDivisible(f"{x} is not divisible by chi")
    return EisensteinInt((2 * b - a) // 3, (b - 2 * a) // 3)


def chi_multiply(x: EisensteinInt) -> EisensteinInt:
    return x * CHI


def chi_valuation(x: EisensteinInt) -> int:
    """Largest ``k`` with ``chi**k | x``; zero is reported as 0."""
    if not x:
        return 0
    k = 0
    while chi_divisible(x):
        x = chi_divide(x)
        k += 1
    return k


def gamma(f: int) -> EisensteinInt:
    """``(-1)**ceil(f/2) * chi**(f mod 2)``, the factor with ``chi**-f = gamma(f) / 3**ceil(f/2)``."""
    sign = -1 if ((f + 1) // 2) % 2 else 1
    return CHI * sign if f % 2 else EisensteinInt(sign, 0)


def gamma_divide(x: EisensteinInt, f: int) -> EisensteinInt:
    """Divide by ``gamma(f)``; raises :class:`NotDivisible` for odd ``f`` when chi does not divide ``x``."""
    sign = -1 if ((f + 1) // 2) % 2 else 1
    if f % 2:
        x = chi_divide(x)
    return -x if sign < 0 else x


def to_half_integer(x: EisensteinInt) -> tuple[Fraction, Fraction]:
    """Map ``a + b w`` to ``(p, q) = (a - b/2, b/2)``; the planar image is ``(p, sqrt(3) q)``."""
    q = Fraction(x.b, 2)
    return Fraction(x.a) - q, q


def from_half_integer(p, q) -> EisensteinInt:
    p, q = Fraction(p), Fraction(q)
    a, b = p + q, 2 * q
    if a.denominator != 1 or b.denominator != 1:
        raise ValueError(f"({p}, {q}) is not an Eisenstein lattice point")
    return EisensteinInt(int(a), int(b))


def from_doubled(P: int, Q: int) -> EisensteinInt:
    """Inverse of the doubled half-integer coordinates ``(2p, 2q)``."""
    # a = p + q = (P + Q) / 2, b = 2q = Q
    s = P + Q
    if s & 1:
        raise ValueError(f"({P}, {Q}) has odd coordinate sum")
    return EisensteinInt(s // 2, Q)


@dataclass(frozen=True, order=False)
class Unit:
    """A unit ``sign * w**omega_power`` of Z[w]."""

    sign: int = 1
    omega_power: int = 0

    def __post_init__(self):
        if self.sign not in (1, -1) or self.omega_power not in (0, 1, 2):
            raise ValueError(f"invalid unit ({self.sign}, {self.omega_power})")

    @property
    def sort_key(self) -> tuple[int, int]:
        return (0 if self.sign == 1 else 1, self.omega_power)

    def __lt__(self, other: Unit) -> bool:
        return self.sort_key < other.sort_key

    @property
    def value(self) -> EisensteinInt:
        return _UNIT_VALUES[self.sort_key]

    def __mul__(self, other: Unit) -> Unit:
        return Unit(self.sign * other.sign, (self.omega_power + other.omega_power) % 3)

    def inverse(self) -> Unit:
        return Unit(self.sign, (-self.omega_power) % 3)

    def __complex__(self) -> complex:
        return self.sign * OMEGA_COMPLEX**self.omega_power

    def __str__(self) -> str:
        s = "" if self.sign == 1 else "-"
        return f"{s}ω^{self.omega_power}"

    def to_json(self) -> list[int]:
        return [self.sign, self.omega_power]

    @classmethod
    def from_value(cls, x: EisensteinInt) -> Unit:
        for u in UNITS:
            if u.value == x:
                return u
        raise ValueError(f"{x} is not a unit")


_W = [ONE, OMEGA, EisensteinInt(-1, -1)]
_UNIT_VALUES = {(s, k): (_W[k] if s == 0 else -_W[k]) for s in (0, 1) for k in range(3)}

# canonical order: (+1, w^0) < (+1, w^1) < ... < (-1, w^2)
UNITS: tuple[Unit, ...] = tuple(Unit(s, k) for s in (1, -1) for k in range(3))
UNIT_VALUES: tuple[EisensteinInt, ...] = tuple(u.value for u in UNITS)


def units() -> tuple[Unit, ...]:
    return UNITS


def check_int128(*values: int) -> None:
    for v in values:
        if not -INT128_LIMIT <= v < INT128_LIMIT:
            raise RingOverflow(f"component {v} exceeds the 128-bit range")


class RingElement:
    """Element ``num / chi**fexp`` of the localized ring, kept in reduced form."""

    __slots__ = ("num", "fexp")

    def __init__(self, num: EisensteinInt, fexp: int = 0):
        if fexp < 0:
            raise ValueError("fexp must be non-negative")
        if not num:
            fexp = 0
        while fexp > 0 and chi_divisible(num):
            num = chi_divide(num)
            fexp -= 1
        check_int128(num.a, num.b)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "fexp", fexp)

    def __setattr__(self, name, value):
        raise AttributeError("RingElement is immutable")

    def _lift(self, f: int) -> EisensteinInt:
        n = self.num
        for _ in range(f - self.fexp):
            n = n * CHI
        return n

    def __add__(self, other: RingElement) -> RingElement:
        f = max(self.fexp, other.fexp)
        return RingElement(self._lift(f) + other._lift(f), f)

    def __sub__(self, other: RingElement) -> RingElement:
        f = max(self.fexp, other.fexp)
        return RingElement(self._lift(f) - other._lift(f), f)

    def __neg__(self) -> RingElement:
        return RingElement(-self.num, self.fexp)

    def __mul__(self, other: RingElement) -> RingElement:
        return RingElement(self.num * other.num, self.fexp + other.fexp)

    def conj(self) -> RingElement:
        # conj(chi) = -chi
        n = self.num.conj()
        return RingElement(-n if self.fexp % 2 else n, self.fexp)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.fexp == other.fexp and self.num == other.num

    def __hash__(self) -> int:
        return hash((self.num, self.fexp))

    def __complex__(self) -> complex:
        return complex(self.num) / complex(0.0, SQRT3) ** self.fexp

    def __repr__(self) -> str:
        return f"RingElement({self.num!r}, {self.fexp})"

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "f": self.fexp}

    @classmethod
    def from_json(cls, data: dict) -> RingElement:
        return cls(EisensteinInt.from_json(data["num"]), int(data["f"]))


def sde(z: RingElement) -> int:
    """Smallest ``f >= 0`` with ``z * chi**f`` in Z[w]."""
    return z.fexp
