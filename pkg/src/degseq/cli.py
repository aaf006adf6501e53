"""Command-line surface for reproduction runs and CI.

Subcommands: exact (census polynomial + PMF), limit-law (Gaussian/Poisson
parameters), sample (configuration-model Monte Carlo to CSV), asymptote
(saddle data, Laplace estimate, contour coefficient), verify (acceptance
battery).  Exit status: 0 success, 1 check failure, 2 usage or domain error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

from .asymptotics import (
    asymptotic_log_gf,
    contour_extract,
    limit_law,
    saddle_data,
)
from .errors import DegseqError
from .exact import (
    GraphClassParams,
    census_to_json,
    class_is_empty,
    graph_gf,
    joint_pmf,
)
from .sampler import run_experiment, sidecar_metadata, write_samples_csv
from .series import MODELS
from . import verify as verify_mod


def _positive_float(text: str) -> float:
    value = float(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _even_int(text: str) -> int:
    value = int(text)
    if value < 0 or value % 2:
        raise argparse.ArgumentTypeError("must be a nonnegative even integer")
    return value


def _nonneg_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return value


def _q_int(text: str) -> int:
    value = int(text)
    if value < 2:
        raise argparse.ArgumentTypeError("q must be >= 2")
    return value


def _default_seed() -> int:
    env = os.environ.get("DEGSEQ_SEED")
    return int(env) if env else 0


def _write_json(obj, path):
    text = json.dumps(obj, indent=2) + "\n"
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _resolve_n2(args) -> int:
    if args.n2 is not None:
        return args.n2
    return int(math.floor(args.alpha * args.n1 / 2))


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="degseq",
        description=(
            "Component-count distributions of random graphs with all degrees "
            "1 or 2: exact, asymptotic, and Monte Carlo pipelines."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_exact = sub.add_parser("exact", help="exact census polynomial and PMF")
    p_exact.add_argument("--n1", type=_nonneg_int, required=True)
    p_exact.add_argument("--n2", type=_nonneg_int, required=True)
    p_exact.add_argument("--q", type=_q_int, default=2)
    p_exact.add_argument("--model", choices=MODELS, default="simple")
    p_exact.add_argument("--out", help="output JSON path (default stdout)")

    p_law = sub.add_parser("limit-law", help="Gaussian/Poisson limit parameters")
    p_law.add_argument("--alpha", type=_positive_float, required=True)
    p_law.add_argument("--q", type=_q_int, default=2)
    p_law.add_argument("--model", choices=MODELS, default="simple")
    p_law.add_argument("--out", help="output JSON path (default stdout)")

    p_sample = sub.add_parser("sample", help="Monte Carlo censuses to CSV")
    p_sample.add_argument("--n1", type=_even_int, required=True)
    group = p_sample.add_mutually_exclusive_group(required=True)
    group.add_argument("--n2", type=_nonneg_int)
    group.add_argument("--alpha", type=_positive_float)
    p_sample.add_argument("--q", type=_q_int, default=2)
    p_sample.add_argument("--model", choices=MODELS, default="simple")
    p_sample.add_argument("--N", type=int, default=1000, dest="n_reps")
    p_sample.add_argument("--seed", type=int, default=None)
    p_sample.add_argument(
        "--workers", type=int, default=None, help="default: available parallelism"
    )
    p_sample.add_argument("--out", required=True, help="CSV path; a .meta.json sidecar is written next to it")

    p_asym = sub.add_parser("asymptote", help="saddle data and Laplace estimate")
    p_asym.add_argument("--n1", type=_even_int, required=True)
    group = p_asym.add_mutually_exclusive_group(required=True)
    group.add_argument("--n2", type=_nonneg_int)
    group.add_argument("--alpha", type=_positive_float)
    p_asym.add_argument("--q", type=_q_int, default=2)
    p_asym.add_argument("--model", choices=MODELS, default="simple")
    p_asym.add_argument("--u", help="comma-separated weights u_2..u_q (default all 1)")
    p_asym.add_argument("--u1", type=_positive_float, default=1.0, help="loop weight (multigraph)")
    p_asym.add_argument("--points", type=int, default=1024, help="contour quadrature points")
    p_asym.add_argument("--out", help="output JSON path (default stdout)")

    p_verify = sub.add_parser("verify", help="run the acceptance battery")
    p_verify.add_argument("--quick", action="store_true", help="numeric subset (< 1 min)")
    p_verify.add_argument("--only", help="comma-separated check numbers")
    p_verify.add_argument("--json", dest="json_path", help="write detailed results JSON")

    return parser


def _cmd_exact(args) -> int:
    if args.n1 % 2:
        print("empty class: n1 odd", file=sys.stderr)
        return 2
    params = GraphClassParams(args.n1, args.n2, q=args.q, model=args.model)
    gf = graph_gf(params)
    if gf.is_empty:
        print("empty class: no graphs with n1=%d, n2=%d" % (args.n1, args.n2), file=sys.stderr)
        return 2
    pmf = joint_pmf(params)
    payload = {
        "params": {"n1": args.n1, "n2": args.n2, "q": args.q, "model": args.model},
        **census_to_json(gf),
        "pmf": [
            {"counts": list(k), "num": p.numerator, "den": p.denominator}
            for k, p in pmf.items()
        ],
    }
    _write_json(payload, args.out)
    return 0


def _cmd_limit_law(args) -> int:
    law = limit_law(args.alpha, args.q, args.model)
    _write_json(law.to_json(), args.out)
    return 0


def _cmd_sample(args) -> int:
    n2 = _resolve_n2(args)
    if class_is_empty(args.n1, n2, args.model):
        print("empty class: no graphs with n1=%d, n2=%d (%s)" % (args.n1, n2, args.model), file=sys.stderr)
        return 2
    if args.n_reps < 1:
        print("N must be >= 1", file=sys.stderr)
        return 2
    params = GraphClassParams(args.n1, n2, q=args.q, model=args.model)
    seed = args.seed if args.seed is not None else _default_seed()
    workers = args.workers if args.workers is not None else (os.cpu_count() or 1)
    result = run_experiment(params, args.n_reps, seed=seed, workers=workers)
    write_samples_csv(result, args.out)
    with open(args.out + ".meta.json", "w") as fh:
        json.dump(sidecar_metadata(result), fh, indent=2)
        fh.write("\n")
    return 0


def _cmd_asymptote(args) -> int:
    n2 = _resolve_n2(args)
    params = GraphClassParams(args.n1, n2, q=args.q, model=args.model)
    u = [1.0] * args.q
    u[0] = args.u1
    if args.u:
        tail = [float(x) for x in args.u.split(",")]
        if len(tail) > args.q - 1:
            print("--u lists at most q-1 weights (sizes 2..q)", file=sys.stderr)
            return 2
        u[1 : 1 + len(tail)] = tail
    sd = saddle_data(params.alpha, u, args.model)
    payload = {
        "params": {"n1": args.n1, "n2": n2, "q": args.q, "model": args.model},
        "u": u,
        "zeta": sd.zeta,
        "phi_second": sd.phi2,
        "a_zero": sd.a0,
        "path_at_zeta": sd.path_at_zeta,
        "log_gf_estimate": asymptotic_log_gf(params, u),
        "coefficient_estimate": contour_extract(params, u, points=args.points),
    }
    _write_json(payload, args.out)
    return 0


def _cmd_verify(args) -> int:
    if args.only:
        numbers = [int(x) for x in args.only.split(",")]
    elif args.quick:
        numbers = list(verify_mod.QUICK_CHECKS)
    else:
        numbers = None
    results = verify_mod.run_checks(numbers, emit=print)
    if args.json_path:
        with open(args.json_path, "w") as fh:
            json.dump([r.to_json() for r in results], fh, indent=2)
            fh.write("\n")
    return 0 if all(r.passed for r in results) else 1


_COMMANDS = {
    "exact": _cmd_exact,
    "limit-law": _cmd_limit_law,
    "sample": _cmd_sample,
    "asymptote": _cmd_asymptote,
    "verify": _cmd_verify,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return _COMMANDS[args.command](args)
    except (DegseqError, ValueError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
