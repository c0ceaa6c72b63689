"""Benchmark harness: synthesis records, least-squares fits and the covering lower bound."""

from __future__ import annotations

import csv
import io
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields
from typing import Iterable, Optional, Sequence

import numpy as np
from scipy import stats

from .exhaustive import exhaustive_search
from .householder import DEFAULT_CONTRACTION, householder_search
from .linalg3 import RingMatrix3, X_power, frobenius_distance, matmul, rz_target
from .synthesis import GateWord, decompose

ALGORITHMS = ("exhaustive", "householder")
LOG10_3 = math.log10(3.0)
T3_THETA = -4.0 * math.pi / 9.0


@dataclass(frozen=True)
class SynthOutcome:
    matrix: RingMatrix3
    word: GateWord
    f: int
    distance: float
    wall_time: float  # milliseconds


def synthesize(
    theta: float,
    eps: float,
    algorithm: str = "householder",
    contraction: float = DEFAULT_CONTRACTION,
    best_at_f: bool = False,
    gate: str = "rz",
) -> SynthOutcome:
    """Approximate ``R^Z(theta)`` (or the T3 gate) and decompose the result into a word.

    ``f`` is the search exponent: the matrix sde for the exhaustive search and
    the vector denominator exponent for the Householder search.
    """
    t0 = time.perf_counter()
    if algorithm == "exhaustive":
        res = exhaustive_search(theta, eps)
        V, f = res.matrix, res.f
    elif algorithm == "householder":
        res = householder_search(theta, eps, contraction, best_at_f)
        V, f = res.matrix, res.f
    else:
        raise ValueError(f"unknown algorithm {algorithm!r}")
    target = rz_target(theta)
    if gate == "t3":
        # X R^Z(-4pi/9) X^dagger = Diag(1, e^{2 pi i/9}, e^{-2 pi i/9})
        X, Xd = X_power(1), X_power(2)
        V = matmul(matmul(X, V), Xd)
        target = X.to_complex() @ target @ Xd.to_complex()
    elif gate != "rz":
        raise ValueError(f"unknown gate {gate!r}")
    word = decompose(V)
    ms = (time.perf_counter() - t0) * 1e3
    return SynthOutcome(V, word, f, frobenius_distance(V, target), ms)


# -- records -----------------------------------------------------------------


@dataclass(frozen=True)
class BenchRecord:
    theta: float
    eps: float
    algorithm: str
    f: int
    n_r: int
    distance: float
    wall_time: float

    def __post_init__(self):
        if self.n_r < 0:
            raise ValueError("negative R count")


@dataclass(frozen=True)
class FitResult:
    """``N_R = intercept + slope_log10 * log10(1/eps)``."""

    slope_log10: float
    intercept: float
    stderr_slope: float
    stderr_intercept: float
    n_points: int

    @property
    def slope_log3(self) -> float:
        # log10(x) = log10(3) * log3(x)
        return self.slope_log10 * LOG10_3

    def to_json(self) -> dict:
        d = asdict(self)
        d["slope_log3"] = self.slope_log3
        return d


def _task(args) -> BenchRecord:
    theta, eps, algorithm, contraction, best_at_f, gate = args
    out = synthesize(theta, eps, algorithm, contraction, best_at_f, gate)
    return BenchRecord(theta, eps, algorithm, out.f, out.word.n_r, out.distance, out.wall_time)


def sample_angles(n: int, seed: int) -> list[float]:
    """``n`` angles uniform in ``(-pi/2, pi/2)`` from a seeded generator."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < n:
        x = float(rng.uniform(-math.pi / 2, math.pi / 2))
        if abs(x) < math.pi / 2:
            out.append(x)
    return out


def run_bench(
    angles: Sequence[float],
    eps_list: Sequence[float],
    algorithm: str = "householder",
    contraction: float = DEFAULT_CONTRACTION,
    best_at_f: bool = False,
    workers: int = 1,
    gate: str = "rz",
) -> list[BenchRecord]:
    """One record per ``(eps, theta)`` pair, in input order whatever the worker count."""
    tasks = [(th, e, algorithm, contraction, best_at_f, gate) for e in eps_list for th in angles]
    if workers <= 1:
        return [_task(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_task, tasks, chunksize=1))


def bench(
    n_angles: int,
    eps_list: Sequence[float],
    algorithm: str = "householder",
    seed: int = 0,
    contraction: float = DEFAULT_CONTRACTION,
    best_at_f: bool = False,
    workers: int = 1,
    gate: str = "rz",
) -> tuple[list[BenchRecord], FitResult]:
    angles = [T3_THETA] if gate == "t3" else sample_angles(n_angles, seed)
    recs = run_bench(angles, eps_list, algorithm, contraction, best_at_f, workers, gate)
    return recs, fit(recs)


# -- fits ----------------------------------------------------------------------


def _linfit(x: Sequence[float], y: Sequence[float]) -> FitResult:
    if len(x) < 2:
        raise ValueError("a fit needs at least two distinct eps values")
    if len(x) == 2:
        slope = (y[1] - y[0]) / (x[1] - x[0])
        return FitResult(slope, y[0] - slope * x[0], 0.0, 0.0, 2)
    r = stats.linregress(x, y)
    return FitResult(float(r.slope), float(r.intercept), float(r.stderr), float(r.intercept_stderr), len(x))


def mean_by_eps(records: Iterable[BenchRecord], key: str = "n_r") -> dict[float, float]:
    groups: dict[float, list[float]] = {}
    for r in records:
        groups.setdefault(r.eps, []).append(float(getattr(r, key)))
    return {e: float(np.mean(v)) for e, v in sorted(groups.items(), reverse=True)}


def fit(records: Iterable[BenchRecord]) -> FitResult:
    """Least squares of the per-eps mean ``N_R`` against ``log10(1/eps)``."""
    means = mean_by_eps(records)
    xs = [math.log10(1.0 / e) for e in means]
    return _linfit(xs, list(means.values()))


def fit_runtime(records: Iterable[BenchRecord]) -> FitResult:
    """Fit ``log10(mean wall time)`` against ``log10(1/eps)``; the slope is the runtime exponent."""
    means = mean_by_eps(records, "wall_time")
    xs = [math.log10(1.0 / e) for e in means]
    ys = [math.log10(max(t, 1e-6)) for t in means.values()]
    return _linfit(xs, ys)


# -- lower bound -----------------------------------------------------------------


def _barnes_g(d: int) -> int:
    """``G(d + 1) = prod_{k=1}^{d-1} k!``."""
    return math.prod(math.factorial(k) for k in range(1, d))


def covering_constant(d: int) -> float:
    if d < 2:
        raise ValueError("dimension must be at least 2")
    if d > 5:
        raise ValueError("dimensions above 5 are not supported")
    num = math.sqrt(2 ** (d - 1) * d) * (d * (d - 1) - 1) * math.gamma((d * d - 1) / 2)
    den = d**4 * math.pi ** (1.5 * (d - 1)) * _barnes_g(d)
    return float(num / den)


def lower_bound(d: int, eps: float) -> float:
    """Covering lower bound on the gate count for an ``eps``-approximation in ``SU(d)``."""
    A = covering_constant(d)
    return (math.log(A) + (d * d - 1) * math.log(1.0 / eps)) / math.log(d * (d - 1))


def lower_bound_line(d: int) -> tuple[float, float]:
    """``(slope, intercept)`` of the bound as a line in ``log10(1/eps)``."""
    c0 = lower_bound(d, 1.0)
    return lower_bound(d, 0.1) - c0, c0


# -- CSV -------------------------------------------------------------------------

_FIELDS = [f.name for f in fields(BenchRecord)]


def _fmt(x) -> str:
    if isinstance(x, float):
        return f"{x:.17g}"
    return str(x)


def records_to_csv(records: Iterable[BenchRecord], seed: Optional[int] = None, extra: dict | None = None) -> str:
    buf = io.StringIO()
    buf.write(f"# seed={seed}\n")
    for k, v in (extra or {}).items():
        buf.write(f"# {k}={v}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(_FIELDS)
    for r in records:
        w.writerow([_fmt(getattr(r, k)) for k in _FIELDS])
    return buf.getvalue()


def records_from_csv(text: str) -> list[BenchRecord]:
    lines = [ln for ln in text.splitlines() if ln and not ln.startswith("#")]
    out = []
    for row in csv.DictReader(lines):
        out.append(
            BenchRecord(
                float(row["theta"]),
                float(row["eps"]),
                row["algorithm"],
                int(row["f"]),
                int(row["n_r"]),
                float(row["distance"]),
                float(row["wall_time"]),
            )
        )
    return out


__all__ = [
    "BenchRecord",
    "FitResult",
    "SynthOutcome",
    "synthesize",
    "sample_angles",
    "run_bench",
    "bench",
    "fit",
    "fit_runtime",
    "lower_bound",
    "lower_bound_line",
    "covering_constant",
    "records_to_csv",
    "records_from_csv",
]
