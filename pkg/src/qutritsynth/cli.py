"""Command-line front end.

Exit codes: 0 on success, 1 when no solution exists or none was found, 2 on an
internal invariant breach.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Optional, Sequence

from . import _backend
from .bench import (
    ALGORITHMS,
    bench,
    fit_runtime,
    lower_bound,
    lower_bound_line,
    records_to_csv,
    synthesize,
)
from .errors import InvariantBreach
from .householder import DEFAULT_CONTRACTION
from .linalg3 import RingMatrix3, frobenius_distance, rz_target
from .normeq import all_norm_solutions
from .ring import UNITS
from .synthesis import decompose, expand, parse_word, word_matrix

EXIT_OK, EXIT_UNSOLVABLE, EXIT_BREACH = 0, 1, 2


def _cmd_synth(args) -> int:
    out = synthesize(args.theta, args.eps, args.algorithm, args.contraction, args.best_at_f)
    text = expand(out.word)
    if args.json:
        print(
            json.dumps(
                {
                    "theta": args.theta,
                    "eps": args.eps,
                    "algorithm": args.algorithm,
                    "f": out.f,
                    "n_r": out.word.n_r,
                    "distance": out.distance,
                    "matrix": out.matrix.to_json(),
                    "word": out.word.to_json(),
                    "expanded": text,
                }
            )
        )
    else:
        print(f"f={out.f} n_r={out.word.n_r} distance={out.distance:.17g}")
        print(text)
    return EXIT_OK


def _read_json(path: str) -> dict:
    if path == "-":
        return json.load(sys.stdin)
    with open(path) as fh:
        return json.load(fh)


def _cmd_decompose(args) -> int:
    data = _read_json(args.infile)
    V = RingMatrix3.from_json(data.get("matrix", data))
    word = decompose(V)
    if args.json:
        d = word.to_json()
        d["expanded"] = expand(word)
        print(json.dumps(d))
    else:
        print(f"n_r={word.n_r} phase={word.phase}")
        print(expand(word))
    return EXIT_OK


def _cmd_verify(args) -> int:
    W = word_matrix(parse_word(args.word))
    target = rz_target(args.theta)
    # the word may differ from the approximation by a unit phase
    dists = [(frobenius_distance(W.scale(u.inverse()), target), u) for u in UNITS]
    dist, unit = min(dists, key=lambda t: (t[0], t[1].sort_key))
    if args.json:
        print(json.dumps({"distance": dist, "phase": unit.to_json(), "sde": W.fexp}))
    else:
        print(f"distance={dist:.17g} phase={unit} sde={W.fexp}")
    if args.eps is not None and dist > args.eps:
        return EXIT_UNSOLVABLE
    return EXIT_OK


def _cmd_normeq(args) -> int:
    sols = all_norm_solutions(args.n)
    if not sols:
        return EXIT_UNSOLVABLE
    if args.json:
        print(json.dumps({"n": args.n, "solutions": [x.to_json() for x in sols]}))
    else:
        for x in sols:
            print(x)
    return EXIT_OK


def _cmd_bench(args) -> int:
    eps_list = args.eps or [10.0**-k for k in range(1, 4)]
    recs, fit = bench(
        args.angles,
        eps_list,
        args.algorithm,
        args.seed,
        args.contraction,
        args.best_at_f,
        args.workers,
        args.gate,
    )
    extra = {
        "slope_log10": f"{fit.slope_log10:.17g}",
        "intercept": f"{fit.intercept:.17g}",
        "slope_log3": f"{fit.slope_log3:.17g}",
    }
    rt = fit_runtime(recs) if args.fit_runtime and len(set(eps_list)) > 1 else None
    if rt is not None:
        extra["runtime_exponent"] = f"{rt.slope_log10:.17g}"
    if args.out == "json":
        payload = {
            "seed": args.seed,
            "records": [r.__dict__ for r in recs],
            "fit": fit.to_json(),
        }
        if rt is not None:
            payload["runtime_fit"] = rt.to_json()
        text = json.dumps(payload, indent=1)
    else:
        text = records_to_csv(recs, args.seed, extra)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    return EXIT_OK


def _cmd_lower_bound(args) -> int:
    slope, icpt = lower_bound_line(args.d)
    val = lower_bound(args.d, args.eps) if args.eps is not None else None
    if args.json:
        print(json.dumps({"d": args.d, "slope_log10": slope, "intercept": icpt, "value": val}))
    else:
        print(f"N >= {slope:.4f} log10(1/eps) {'-' if icpt < 0 else '+'} {abs(icpt):.4f}")
        if val is not None:
            print(f"eps={args.eps:g}: {val:.6f}")
    return EXIT_OK


def _positive(x: str) -> float:
    v = float(x)
    if not v > 0 or not math.isfinite(v):
        raise argparse.ArgumentTypeError("must be a positive number")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qutritsynth", description=__doc__.splitlines()[0])
    p.add_argument("--backend", choices=("auto", "compiled", "python"), default="auto")
    sub = p.add_subparsers(dest="cmd", required=True)

    def algo(sp):
        sp.add_argument("--algorithm", choices=ALGORITHMS, default="householder")
        sp.add_argument("--contraction", type=_positive, default=DEFAULT_CONTRACTION)
        sp.add_argument("--best-at-f", action="store_true")

    s = sub.add_parser("synth", help="approximate R^Z(theta) and print its gate word")
    s.add_argument("--theta", type=float, required=True)
    s.add_argument("--eps", type=_positive, required=True)
    algo(s)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=_cmd_synth)

    s = sub.add_parser("decompose", help="decompose an exact unitary given as JSON")
    s.add_argument("--in", dest="infile", required=True, help="matrix JSON file, or - for stdin")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=_cmd_decompose)

    s = sub.add_parser("verify", help="multiply a token word and report its distance to R^Z(theta)")
    s.add_argument("--word", required=True)
    s.add_argument("--theta", type=float, required=True)
    s.add_argument("--eps", type=_positive, default=None, help="exit 1 if the distance exceeds eps")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=_cmd_verify)

    s = sub.add_parser("normeq", help="solve a^2 - ab + b^2 = n")
    s.add_argument("n", type=int)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=_cmd_normeq)

    s = sub.add_parser("bench", help="R-count benchmark over random angles")
    s.add_argument("--angles", type=int, default=10)
    s.add_argument("--eps", type=_positive, nargs="+")
    algo(s)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--out", choices=("csv", "json"), default="csv")
    s.add_argument("--output", "-o", default=None)
    s.add_argument("--fit-runtime", action="store_true")
    s.add_argument("--gate", choices=("rz", "t3"), default="rz", help="t3 is experimental")
    s.set_defaults(func=_cmd_bench)

    s = sub.add_parser("lower-bound", help="covering lower bound on the gate count")
    s.add_argument("--d", type=int, default=3)
    s.add_argument("--eps", type=_positive, default=None)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=_cmd_lower_bound)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.backend != "auto":
        _backend.use(args.backend)
    try:
        return args.func(args)
    except InvariantBreach as exc:
        print(f"invariant breach: {exc}", file=sys.stderr)
        return EXIT_BREACH
    except (ArithmeticError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNSOLVABLE


if __name__ == "__main__":
    sys.exit(main())
