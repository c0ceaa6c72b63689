"""Exact 3-vectors and 3x3 matrices over the localized Eisenstein ring."""

from __future__ import annotations

import cmath
import math
from functools import cached_property
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import InvariantBreach, NotUnit
from .ring import (
    CHI,
    UNITS,
    ZERO,
    EisensteinInt,
    RingElement,
    Unit,
    check_int128,
    chi_divide,
    chi_divisible,
    norm,
)

Rows = tuple[tuple[EisensteinInt, EisensteinInt, EisensteinInt], ...]


def _as_eis(x) -> EisensteinInt:
    if isinstance(x, EisensteinInt):
        return x
    if isinstance(x, int):
        return EisensteinInt(x, 0)
    a, b = x
    return EisensteinInt(int(a), int(b))


def _chi_power_complex(f: int) -> complex:
    return complex(0.0, math.sqrt(3.0)) ** f


class RingVector3:
    """Column vector ``(v1, v2, v3) / chi**fexp`` with Eisenstein numerators."""

    __slots__ = ("entries", "fexp")

    def __init__(self, entries: Iterable, fexp: int = 0):
        ent = tuple(_as_eis(e) for e in entries)
        if len(ent) != 3:
            raise ValueError("RingVector3 needs exactly three entries")
        object.__setattr__(self, "entries", ent)
        object.__setattr__(self, "fexp", fexp)

    def __setattr__(self, name, value):
        raise AttributeError("RingVector3 is immutable")

    def norm_sq_numerator(self) -> int:
        return sum(norm(e) for e in self.entries)

    def is_unit(self) -> bool:
        return self.norm_sq_numerator() == 3**self.fexp

    def to_complex(self) -> np.ndarray:
        return np.array([complex(e) for e in self.entries]) / _chi_power_complex(self.fexp)

    def __eq__(self, other) -> bool:
        return isinstance(other, RingVector3) and (self.entries, self.fexp) == (other.entries, other.fexp)

    def __hash__(self) -> int:
        return hash((self.entries, self.fexp))

    def __repr__(self) -> str:
        return f"RingVector3({[e.to_json() for e in self.entries]}, f={self.fexp})"


class RingMatrix3:
    """3x3 matrix ``N / chi**fexp`` over Z[w], reduced so that chi does not divide every entry.

    Equality is structural on the reduced form.
    """

    __slots__ = ("rows", "fexp", "__dict__")

    def __init__(self, rows: Sequence[Sequence], fexp: int = 0):
        r = tuple(tuple(_as_eis(x) for x in row) for row in rows)
        if len(r) != 3 or any(len(row) != 3 for row in r):
            raise ValueError("RingMatrix3 needs 3x3 entries")
        if fexp < 0:
            raise ValueError("fexp must be non-negative")
        flat = [x for row in r for x in row]
        while fexp > 0 and all(chi_divisible(x) for x in flat):
            flat = [chi_divide(x) for x in flat]
            fexp -= 1
        if not any(flat):
            fexp = 0
        for x in flat:
            check_int128(x.a, x.b)
        object.__setattr__(self, "rows", (tuple(flat[0:3]), tuple(flat[3:6]), tuple(flat[6:9])))
        object.__setattr__(self, "fexp", fexp)

    def __setattr__(self, name, value):
        if name in type(self).__slots__[:2]:
            raise AttributeError("RingMatrix3 is immutable")
        object.__setattr__(self, name, value)

    # -- structural -------------------------------------------------------
    def __eq__(self, other) -> bool:
        if not isinstance(other, RingMatrix3):
            return NotImplemented
        return self.fexp == other.fexp and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.rows, self.fexp))

    def __repr__(self) -> str:
        rows = [[x.to_json() for x in row] for row in self.rows]
        return f"RingMatrix3({rows}, f={self.fexp})"

    def __getitem__(self, ij: tuple[int, int]) -> RingElement:
        i, j = ij
        return RingElement(self.rows[i][j], self.fexp)

    def column(self, j: int) -> RingVector3:
        return RingVector3((self.rows[0][j], self.rows[1][j], self.rows[2][j]), self.fexp)

    # -- algebra ----------------------------------------------------------
    def __matmul__(self, other: RingMatrix3) -> RingMatrix3:
        return matmul(self, other)

    def scale(self, u: Unit | EisensteinInt) -> RingMatrix3:
        v = u.value if isinstance(u, Unit) else u
        return RingMatrix3([[x * v for x in row] for row in self.rows], self.fexp)

    def __neg__(self) -> RingMatrix3:
        return RingMatrix3([[-x for x in row] for row in self.rows], self.fexp)

    def adjoint(self) -> RingMatrix3:
        # conj(chi)**f = (-1)**f chi**f
        s = -1 if self.fexp % 2 else 1
        return RingMatrix3(
            [[self.rows[j][i].conj() * s for j in range(3)] for i in range(3)], self.fexp
        )

    dagger = adjoint

    def det(self) -> RingElement:
        (a, b, c), (d, e, f), (g, h, i) = self.rows
        num = a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
        return RingElement(num, 3 * self.fexp)

    def to_complex(self) -> np.ndarray:
        scale = _chi_power_complex(self.fexp)
        return np.array([[complex(x) for x in row] for row in self.rows]) / scale

    # -- serialization ----------------------------------------------------
    def to_json(self) -> dict:
        return {"f": self.fexp, "rows": [[x.to_json() for x in row] for row in self.rows]}

    @classmethod
    def from_json(cls, data: dict) -> RingMatrix3:
        return cls([[EisensteinInt.from_json(x) for x in row] for row in data["rows"]], int(data["f"]))

    @cached_property
    def entry_sdes(self) -> tuple[int, ...]:
        out = []
        for row in self.rows:
            for x in row:
                k = 0
                while k < self.fexp and chi_divisible(x) and x:
                    x = chi_divide(x)
                    k += 1
                out.append(self.fexp - k if x else -1)
        return tuple(out)


def matmul(A: RingMatrix3, B: RingMatrix3) -> RingMatrix3:
    """Exact product; denominator exponents add and the result is reduced."""
    a, b = A.rows, B.rows
    rows = []
    for i in range(3):
        ai0, ai1, ai2 = a[i]
        rows.append(
            [ai0 * b[0][j] + ai1 * b[1][j] + ai2 * b[2][j] for j in range(3)]
        )
    return RingMatrix3(rows, A.fexp + B.fexp)


def mat_product(mats: Iterable[RingMatrix3]) -> RingMatrix3:
    out = IDENTITY
    for m in mats:
        out = matmul(out, m)
    return out


def is_unitary(V: RingMatrix3) -> bool:
    """``V^dagger V == I`` checked exactly as ``N^dagger N == 3**f I`` on numerators."""
    n = V.rows
    target = 3**V.fexp
    for i in range(3):
        for j in range(i, 3):
            s = ZERO
            for k in range(3):
                s = s + n[k][i].conj() * n[k][j]
            want = target if i == j else 0
            if s.a != want or s.b != 0:
                return False
    return True


def phase_equal(A: RingMatrix3, B: RingMatrix3) -> Optional[Unit]:
    """Unit ``u`` with ``A == u * B`` exactly, or ``None``."""
    if A.fexp != B.fexp:
        return None
    for u in UNITS:
        v = u.value
        if all(x == y * v for ra, rb in zip(A.rows, B.rows) for x, y in zip(ra, rb)):
            return u
    return None


def householder(v: RingVector3) -> RingMatrix3:
    """Exact reflection ``I - 2 v v^dagger`` for a unit Eisenstein vector."""
    total = v.norm_sq_numerator()
    f = v.fexp
    if total != 3**f:
        raise NotUnit(f"|v|^2 numerator {total} != 3^{f}")
    # v v^dagger = v_i conj(v_j) / 3^f and 3^f = (-1)^f chi^(2f)
    s = -1 if f % 2 else 1
    p = 3**f
    e = v.entries
    rows = [
        [(EisensteinInt(p, 0) if i == j else ZERO) - e[i] * e[j].conj() * 2 for j in range(3)]
        for i in range(3)
    ]
    rows = [[x * s for x in row] for row in rows]
    return RingMatrix3(rows, 2 * f)


def frobenius_distance(V: RingMatrix3 | np.ndarray, target: np.ndarray) -> float:
    """Float evaluation of ``||target - V||_F``."""
    m = V.to_complex() if isinstance(V, RingMatrix3) else np.asarray(V, dtype=complex)
    return float(np.linalg.norm(np.asarray(target, dtype=complex) - m))


def rz_target(theta: float) -> np.ndarray:
    """``Diag(exp(-i theta/2), exp(i theta/2), 1)``."""
    return np.diag([cmath.exp(-0.5j * theta), cmath.exp(0.5j * theta), 1.0 + 0.0j])


def common_sde(V: RingMatrix3) -> int:
    """Shared sde of the nonzero entries; raises if they disagree."""
    s = {x for x in V.entry_sdes if x >= 0}
    if len(s) > 1:
        raise InvariantBreach(f"entries of {V!r} have different sde values {sorted(s)}")
    return s.pop() if s else 0


# -- generators -------------------------------------------------------------

_W = EisensteinInt(0, 1)
_W2 = EisensteinInt(-1, -1)
_1 = EisensteinInt(1, 0)
_0 = ZERO


def _omega_pow(k: int) -> EisensteinInt:
    return (_1, _W, _W2)[k % 3]


def diag(a, b, c) -> RingMatrix3:
    return RingMatrix3([[a, 0, 0], [0, b, 0], [0, 0, c]])


def D(a: int, b: int, c: int) -> RingMatrix3:
    """``diag(w**a, w**b, w**c)``."""
    return diag(_omega_pow(a), _omega_pow(b), _omega_pow(c))


def permutation(perm: Sequence[int]) -> RingMatrix3:
    """Matrix sending basis vector ``e_j`` to ``e_perm[j]``."""
    rows = [[0] * 3 for _ in range(3)]
    for j, i in enumerate(perm):
        rows[i][j] = 1
    return RingMatrix3(rows)


IDENTITY = diag(1, 1, 1)
H = RingMatrix3([[_1, _1, _1], [_1, _W, _W2], [_1, _W2, _W]], 1)
S = D(0, 1, 0)
R = diag(1, 1, -1)
# X e_j = e_{j+1}
X = permutation([1, 2, 0])
X01 = permutation([1, 0, 2])
X12 = permutation([0, 2, 1])
H_DAG = H.adjoint()


def X_power(k: int) -> RingMatrix3:
    return (IDENTITY, X, X @ X)[k % 3]


GENERATORS = {
    "H": H,
    "S": S,
    "R": R,
    "X": X,
    "X01": X01,
    "X12": X12,
}
