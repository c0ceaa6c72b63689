"""Exact decomposition of unitaries over the Eisenstein ring into Clifford+R words.

Every such unitary with sde ``f`` is a product of ``f`` syllables
``H D(a0, a1, a2) R^e X^d`` and a monomial matrix.  :func:`decompose`
peels syllables off from the left: it looks for ``G = H D R^e X^d`` with
``sde(G U) = sde(U) - 1`` and records ``G^-1``.  The remaining monomial is
read from a table built by breadth-first search.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Iterable, Optional, Sequence

from .errors import InvariantBreach, NoReduction
from .linalg3 import (
    H,
    H_DAG,
    IDENTITY,
    R,
    S,
    X01,
    X12,
    D,
    RingMatrix3,
    X_power,
    common_sde,
    is_unitary,
    matmul,
    phase_equal,
)
from .ring import UNIT_VALUES, UNITS, EisensteinInt, Unit, chi_valuation

# -- tokens ------------------------------------------------------------------

_FIXED_TOKENS = {
    "H": H,
    "Hdg": H_DAG,
    "S": S,
    "R": R,
    "X": X_power(1),
    "X2": X_power(2),
    "X01": X01,
    "X12": X12,
}


def _parse_d(tok: str) -> Optional[tuple[int, int, int]]:
    if tok.startswith("D(") and tok.endswith(")"):
        a, b, c = (int(x) for x in tok[2:-1].split(","))
        return a % 3, b % 3, c % 3
    return None


def d_token(a: int, b: int, c: int) -> str:
    return f"D({a % 3},{b % 3},{c % 3})"


def token_matrix(tok: str) -> RingMatrix3:
    """Exact matrix of a syllable token (``H``, ``Hdg``, ``S``, ``R``, ``X``, ``X2``, ``X01``, ``X12``, ``D(a,b,c)``)."""
    m = _FIXED_TOKENS.get(tok)
    if m is not None:
        return m
    d = _parse_d(tok)
    if d is None:
        raise ValueError(f"unknown token {tok!r}")
    return D(*d)


def word_matrix(tokens: Iterable[str]) -> RingMatrix3:
    """Exact product of the tokens, left to right."""
    out = IDENTITY
    for t in tokens:
        out = matmul(out, token_matrix(t))
    return out


def parse_word(text: str) -> list[str]:
    """Split a whitespace-separated token string; ``H†`` is accepted for ``Hdg``."""
    return ["Hdg" if t in ("H†", "Hdag") else t for t in text.split()]


# -- canonical forms up to a unit --------------------------------------------


def canonical_up_to_unit(M: RingMatrix3) -> tuple[RingMatrix3, Unit]:
    """``(u M, u)`` with the unit ``u`` that makes ``u M`` smallest row-wise."""
    best = None
    for u in UNITS:
        v = u.value
        rows = tuple(tuple(x * v for x in row) for row in M.rows)
        key = tuple((x.a, x.b) for row in rows for x in row)
        if best is None or key < best[0]:
            best = (key, rows, u)
    return RingMatrix3(best[1], M.fexp), best[2]


def _key(M: RingMatrix3):
    return canonical_up_to_unit(M)[0]


# -- GateWord ------------------------------------------------------------------


@dataclass(frozen=True)
class GateWord:
    """Token sequence whose exact product equals ``phase * V`` for the source ``V``.

    ``syllables`` holds the sde-reducing syllables as token lists (one list
    per syllable, normal-form parameters in ``params``) followed by the
    monomial residue in ``residue``.
    """

    syllables: tuple[tuple[str, ...], ...]
    params: tuple[tuple[int, int, int, int, int], ...]
    residue: tuple[str, ...]
    phase: Unit
    sde: int

    @property
    def tokens(self) -> list[str]:
        return [t for s in self.syllables for t in s] + list(self.residue)

    @property
    def n_r(self) -> int:
        return sum(1 for t in self.tokens if t == "R")

    def matrix(self) -> RingMatrix3:
        return word_matrix(self.tokens)

    def expand(self) -> str:
        return expand(self)

    def to_text(self) -> str:
        return " ".join(self.tokens)

    def to_json(self) -> dict:
        return {
            "syllables": [list(s) for s in self.syllables],
            "params": [list(p) for p in self.params],
            "residue": list(self.residue),
            "phase": self.phase.to_json(),
            "n_r": self.n_r,
            "sde": self.sde,
        }

    @classmethod
    def from_json(cls, data: dict) -> GateWord:
        sign, k = data["phase"]
        return cls(
            tuple(tuple(s) for s in data["syllables"]),
            tuple(tuple(p) for p in data["params"]),
            tuple(data["residue"]),
            Unit(sign, k),
            int(data["sde"]),
        )

    def dumps(self) -> str:
        return json.dumps(self.to_json())


# -- monomial table ------------------------------------------------------------


@dataclass
class MonomialTable:
    """Every sde-0 unitary up to a unit phase, with an R-minimal token word.

    ``entries`` maps the canonical matrix to ``(tokens, phase)`` where the
    exact product of ``tokens`` equals ``phase`` times the canonical matrix.
    """

    entries: dict[RingMatrix3, tuple[tuple[str, ...], Unit]] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, M: RingMatrix3) -> bool:
        return _key(M) in self.entries

    def lookup(self, M: RingMatrix3) -> tuple[tuple[str, ...], Unit]:
        """``(tokens, phase)`` with ``word_matrix(tokens) == phase * M``."""
        canon, w = canonical_up_to_unit(M)
        try:
            tokens, ph = self.entries[canon]
        except KeyError:
            raise InvariantBreach(f"{M!r} is not in the monomial table") from None
        # product = ph * canon = ph * w * M
        return tokens, ph * w

    def all_matrices(self) -> list[RingMatrix3]:
        """The full group: every entry times each of the six units."""
        return [m.scale(u) for m in self.entries for u in UNITS]


# generator words for the table search: (tokens, R cost)
MONOMIAL_GENERATORS: tuple[tuple[tuple[str, ...], int], ...] = (
    (("S",), 0),
    (("X",), 0),
    (("X01",), 0),
    (("X12",), 0),
    (("R",), 1),
    (("X", "R", "X2"), 1),
    (("X2", "R", "X"), 1),
)


def build_monomial_table() -> MonomialTable:
    """0-1 breadth-first closure of the generators over sde-0 matrices.

    Right-appending a generator costs its R count; a matrix keeps the first
    word reaching it at the lowest cost, so ties follow generator order.
    """
    gens = [(toks, cost, word_matrix(toks)) for toks, cost in MONOMIAL_GENERATORS]
    start = _key(IDENTITY)
    best: dict[RingMatrix3, tuple[int, tuple[str, ...]]] = {start: (0, ())}
    done: set = set()
    dq: deque = deque([start])
    while dq:
        cur = dq.popleft()
        if cur in done:
            continue
        done.add(cur)
        cost, word = best[cur]
        for toks, c, g in gens:
            nxt = matmul(cur, g)
            if nxt.fexp != 0:
                continue
            k = _key(nxt)
            nc = cost + c
            if k not in best or nc < best[k][0]:
                best[k] = (nc, word + toks)
                if c == 0:
                    dq.appendleft(k)
                else:
                    dq.append(k)
    table = MonomialTable()
    for k in sorted(best, key=lambda m: tuple((x.a, x.b) for row in m.rows for x in row)):
        word = best[k][1]
        ph = phase_equal(word_matrix(word), k)
        if ph is None:
            raise InvariantBreach("monomial table word does not match its matrix")
        table.entries[k] = (word, ph)
    return table


@lru_cache(maxsize=1)
def monomial_table() -> MonomialTable:
    return build_monomial_table()


# -- sde and decomposition -----------------------------------------------------


def sde_matrix(V: RingMatrix3) -> int:
    """Common sde of the entries of ``V``; raises :class:`InvariantBreach` if they differ."""
    s = common_sde(V)
    if s != V.fexp:
        raise InvariantBreach(f"entry sde {s} disagrees with matrix sde {V.fexp}")
    return s


@lru_cache(maxsize=1)
def _syllables() -> tuple:
    """All 162 left factors ``H D R^e X^d`` in search order, with their inverse tokens."""
    out = []
    for e in (0, 1):
        for a0, a1, a2, d in product(range(3), repeat=4):
            G = matmul(matmul(matmul(H, D(a0, a1, a2)), R if e else IDENTITY), X_power(d))
            inv: list[str] = []
            if d:
                inv.append("X2" if d == 1 else "X")
            if e:
                inv.append("R")
            if a0 or a1 or a2:
                inv.append(d_token(-a0, -a1, -a2))
            inv.append("Hdg")
            out.append(((a0, a1, a2, e, d), G, tuple(inv)))
    return tuple(out)


def _corner_sde(G: RingMatrix3, U: RingMatrix3) -> int:
    """sde of ``(G U)[0][0]`` without forming the product, ``-1`` for a zero entry."""
    g, u = G.rows, U.rows
    x = g[0][0] * u[0][0] + g[0][1] * u[1][0] + g[0][2] * u[2][0]
    f = G.fexp + U.fexp
    if not x:
        return -1
    return f - min(chi_valuation(x), f)


def decompose(V: RingMatrix3, table: Optional[MonomialTable] = None) -> GateWord:
    """Normal-form word for a unitary ``V`` over the Eisenstein ring.

    Each step applies the first syllable (``e = 0`` before ``e = 1``, then
    ``(a0, a1, a2, d)`` lexicographic) whose product has top-left sde
    ``s - 1``; the full matrix sde is re-checked after every step.
    """
    if not is_unitary(V):
        raise ValueError("decompose needs a unitary matrix")
    table = table or monomial_table()
    U = V
    s = sde_matrix(U)
    syllables: list[tuple[str, ...]] = []
    params: list[tuple[int, int, int, int, int]] = []
    while s > 0:
        for p, G, inv in _syllables():
            c = _corner_sde(G, U)
            if c >= 0 and c != s - 1:
                continue
            nxt = matmul(G, U)
            if sde_matrix(nxt) != s - 1:
                if c < 0:
                    continue
                raise InvariantBreach("top-left entry and matrix sde disagree after a syllable")
            U, s = nxt, s - 1
            syllables.append(inv)
            params.append(p)
            break
        else:
            raise NoReduction(f"no syllable lowers sde {s}")
    residue, ph = table.lookup(U)
    word = GateWord(tuple(syllables), tuple(params), tuple(residue), ph, V.fexp)
    return word


def normal_form_matrix(params: Sequence[tuple[int, int, int, int, int]]) -> RingMatrix3:
    """``prod_i H D(a0, a1, a2) R^e X^d`` for parameters ``(a0, a1, a2, e, d)``."""
    out = IDENTITY
    for a0, a1, a2, e, d in params:
        out = matmul(out, H)
        out = matmul(out, D(a0, a1, a2))
        if e:
            out = matmul(out, R)
        out = matmul(out, X_power(d))
    return out


# -- expansion to {H, S, R} ------------------------------------------------------

CLIFFORD_WORD_MAX = 12


@lru_cache(maxsize=1)
def clifford_words() -> dict[str, tuple[tuple[str, ...], Unit]]:
    """Shortest ``{H, S}`` word for each Clifford token, with ``product == phase * token``.

    Breadth-first over words of length at most ``CLIFFORD_WORD_MAX``; ``H`` is
    tried before ``S`` at every position.
    """
    targets = ["H", "Hdg", "S", "X", "X2", "X01", "X12"]
    targets += [d_token(a, b, c) for a, b, c in product(range(3), repeat=3)]
    want = {}
    for t in targets:
        want.setdefault(_key(token_matrix(t)), []).append(t)
    found: dict[str, tuple[tuple[str, ...], Unit]] = {}
    seen = {_key(IDENTITY): ()}
    frontier = [(IDENTITY, ())]
    for t in want.get(_key(IDENTITY), []):
        found[t] = ((), phase_equal(IDENTITY, token_matrix(t)))
    for _ in range(CLIFFORD_WORD_MAX):
        nxt_frontier = []
        for M, word in frontier:
            for g in ("H", "S"):
                N = matmul(M, _FIXED_TOKENS[g])
                k = _key(N)
                if k in seen:
                    continue
                w = word + (g,)
                seen[k] = w
                nxt_frontier.append((N, w))
                for t in want.get(k, []):
                    found[t] = (w, phase_equal(N, token_matrix(t)))
        frontier = nxt_frontier
        if len(found) == len(targets):
            break
    missing = [t for t in targets if t not in found]
    if missing:
        raise InvariantBreach(f"no H/S word of length <= {CLIFFORD_WORD_MAX} for {missing}")
    return found


def expand_tokens(tokens: Iterable[str]) -> tuple[list[str], Unit]:
    """``{H, S, R}`` tokens whose product is ``phase`` times the product of ``tokens``."""
    table = clifford_words()
    out: list[str] = []
    ph = Unit()
    for t in tokens:
        if t in ("H", "S", "R"):
            out.append(t)
            continue
        key = t if t in table else d_token(*_parse_d(t)) if _parse_d(t) else t
        try:
            w, u = table[key]
        except KeyError:
            raise ValueError(f"cannot expand token {t!r}") from None
        out.extend(w)
        ph = ph * u
    return _cancel_powers(out), ph


# exact identities: H^4 = I and S^3 = I
_ORDER = {"H": 4, "S": 3}


def _cancel_powers(tokens: list[str]) -> list[str]:
    """Drop runs of ``H`` of length 4 and of ``S`` of length 3, repeatedly."""
    stack: list[list] = []  # [token, run length]
    for t in tokens:
        if stack and stack[-1][0] == t:
            stack[-1][1] += 1
        else:
            stack.append([t, 1])
        n = _ORDER.get(t)
        if n and stack[-1][1] == n:
            stack.pop()
    return [t for t, k in stack for _ in range(k)]


def expand(word: GateWord) -> str:
    """Whitespace-separated ``{H, S, R}`` string equal to the word's matrix up to a unit."""
    return " ".join(expand_tokens(word.tokens)[0])


def unit_of(x: EisensteinInt) -> Unit:
    return UNITS[UNIT_VALUES.index(x)]


__all__ = [
    "GateWord",
    "MonomialTable",
    "build_monomial_table",
    "monomial_table",
    "decompose",
    "expand",
    "expand_tokens",
    "sde_matrix",
    "token_matrix",
    "word_matrix",
    "parse_word",
    "normal_form_matrix",
    "clifford_words",
    "canonical_up_to_unit",
]
