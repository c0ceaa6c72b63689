"""Time the compiled kernels against the pure-Python fallback on identical inputs.

    python benchmarks/bench_kernels.py [--repeat 3]
"""

from __future__ import annotations

import argparse
import math
import time

from qutritsynth import _backend
from qutritsynth import _kernels_py as pure
from qutritsynth.exhaustive import _chi_power, _pack, diagonal_angles, entry_candidates
from qutritsynth.lattice import CapRegion4D, SearchRegion2D, _guard


def _cases():
    reg2 = SearchRegion2D.for_denominator(0.37, 14, 0.02)
    yield "enum_2d f=14", lambda k: k.enum_2d(
        reg2.cos_a, reg2.sin_a, reg2.r1, float(reg2.r2), reg2.bound4, _guard(reg2.r2)
    )

    cap = CapRegion4D.householder(1.1, 17, 1e-3)
    yield "enum_cap4 f=17", lambda k: k.enum_cap4(
        *cap.u, cap.r1, float(cap.r2), cap.bound4, _guard(cap.r2)
    )

    yield "solve_norm x2000", lambda k: [k.solve_norm_doubled(n) for n in range(100000, 102000)]

    theta, f, eps = 0.9, 14, 0.05
    rows = []
    for alpha in diagonal_angles(theta):
        cands = entry_candidates(alpha, f, eps)
        rows.append(_pack(cands, f, _chi_power(f), True)[0])
    yield "triplet_hits f=14", lambda k: k.triplet_hits(
        rows[0], rows[1], rows[2], 3**f, 3 ** (f // 2), eps * eps
    )


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if _backend.compiled is None:
        raise SystemExit("compiled extension not built; run pip install -e . first")
    print(f"{'kernel':<22}{'python ms':>12}{'compiled ms':>14}{'speedup':>10}")
    for name, fn in _cases():
        times = {}
        for label, mod in (("python", pure), ("compiled", _backend.compiled)):
            best = math.inf
            for _ in range(args.repeat):
                t0 = time.perf_counter()
                out = fn(mod)
                best = min(best, time.perf_counter() - t0)
            times[label] = (best * 1e3, out)
        (tp, op), (tc, oc) = times["python"], times["compiled"]
        same = "" if op == oc else "  MISMATCH"
        print(f"{name:<22}{tp:>12.2f}{tc:>14.2f}{tp / max(tc, 1e-9):>10.1f}x{same}")


if __name__ == "__main__":
    main()
