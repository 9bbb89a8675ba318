"""Command-line front end.

Exit codes: 0 success, 1 verification-check failure, 2 usage or argument
error, 3 numerical accuracy or divergence error.  All outputs are
deterministic functions of the flags (no timestamps, sorted JSON keys),
so identical invocations produce byte-identical files.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys

from . import bounds, ensembles, pointstats, verify
from .airy_spectrum import SpectrumMethod, airy_eigs
from .errors import InvalidArgumentError, KpzEdgeError
from .fredholm import fredholm_certificate
from .painleve import (classify_region, f1_analytic, f2_analytic,
                       mu_integral, solve_uas)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_NUMERIC = 3

GAMMA_CAP = 1.0 - 1e-10


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json_dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _resolve_seed(args) -> int:
    if getattr(args, "seed", None) is not None:
        return args.seed
    env = os.environ.get("KPZE_SEED")
    if env is not None:
        try:
            seed = int(env)
        except ValueError:
            raise InvalidArgumentError(f"KPZE_SEED must be an integer, got {env!r}")
        if seed < 0:
            raise InvalidArgumentError("KPZE_SEED must be nonnegative")
        return seed
    return 0


def _cmd_spectrum(args) -> int:
    table = airy_eigs(args.kmax, SpectrumMethod.AIRY_ZERO)
    approx = airy_eigs(args.kmax, SpectrumMethod.MT59_APPROX)
    rows = [(k, repr(table[k]), repr(approx[k]), repr(abs(table[k] - approx[k])))
            for k in range(1, args.kmax + 1)]
    _emit(args, _csv_text(("k", "lambda_exact", "lambda_mt59", "abs_diff"), rows))
    return EXIT_OK


def _cmd_painleve(args) -> int:
    if (args.gamma is None) == (args.v is None):
        raise InvalidArgumentError("provide exactly one of --gamma or --v")
    if args.v is not None:
        v = args.v
        gamma = -math.expm1(-v)
    else:
        gamma = args.gamma
        if not 0.0 <= gamma <= GAMMA_CAP:
            raise InvalidArgumentError(
                f"gamma must lie in [0, {GAMMA_CAP}] (the pure Hastings-McLeod "
                f"solution is excluded), got {gamma!r}")
        v = -math.log1p(-gamma)
    sol = solve_uas(gamma, args.xmin, args.tol)
    if args.format == "csv":
        rows = [(repr(float(x)), repr(float(u)), repr(float(up)),
                 classify_region(x, gamma).value if x < 0 else "decaying")
                for x, u, up in zip(sol.grid, sol.u, sol.u_prime)]
        _emit(args, _csv_text(("x", "u", "u_prime", "region"), rows))
    else:
        summary = {
            "gamma": gamma,
            "v": v,
            "s": args.s,
            "mu": mu_integral(args.s, -math.expm1(-2.0 * v), args.tol),
            "F1": f1_analytic(args.s, v, args.tol),
            "F2": f2_analytic(args.s, v, args.tol),
            "residual": sol.residual,
        }
        _emit(args, _json_dump(summary))
    return EXIT_OK


def _cmd_fredholm(args) -> int:
    cert = fredholm_certificate(args.s, args.gamma, args.order)
    out = {"s": args.s, "gamma": args.gamma, "order": args.order,
           "value": cert.value_doubled}
    if args.convergence_report:
        out["certificate"] = {"value_at_order": cert.value,
                              "value_at_doubled_order": cert.value_doubled,
                              "doubling_change": cert.doubling_change}
    _emit(args, _json_dump(out))
    return EXIT_OK


def _cmd_sample(args) -> int:
    seed = _resolve_seed(args)
    if args.sampler == "tridiag":
        if args.n is None:
            raise InvalidArgumentError("--n is required for the tridiag sampler")
        sample = ensembles.sample_tridiag_edge(args.n, args.k, args.replicates,
                                               seed, workers=args.threads)
    else:
        sample = ensembles.sample_sao_eigs(beta=1.0, L=args.L, h=args.h,
                                           k=args.k, replicates=args.replicates,
                                           seed=seed, workers=args.threads)
    if args.format == "binary":
        with open(args.out, "wb") as fh:
            ensembles.write_sample(fh, sample)
    else:
        rows = [(r,) + tuple(repr(p) for p in cfg.points)
                for r, cfg in enumerate(sample.configs)]
        header = ("replicate",) + tuple(f"a{j}" for j in range(1, sample.k + 1))
        _emit(args, _csv_text(header, rows))
    return EXIT_OK


def _cmd_stats(args) -> int:
    with open(args.infile, "rb") as fh:
        sample = ensembles.read_sample(fh)
    if args.op == "cgf":
        est = pointstats.empirical_cgf(sample, args.s, args.v)
    elif args.op == "thinned-max":
        gamma = args.gamma if args.gamma is not None else -math.expm1(-args.v)
        est = pointstats.thinned_max_cdf(sample, args.s, gamma,
                                         seed=_resolve_seed(args))
    elif args.op == "laplace":
        est = pointstats.laplace_functional(sample, args.s, args.T)
    elif args.op == "tail":
        est = pointstats.tail_prob_max(sample, args.s)
    else:  # mean-count: quadrature reference, not a Monte Carlo estimate
        _emit(args, _json_dump({"op": args.op, "s": args.s,
                                "value": pointstats.mean_count(abs(args.s))}))
        return EXIT_OK
    _emit(args, _json_dump({"op": args.op, "estimate": est.value,
                            "std_error": est.std_error,
                            "replicates": est.replicates,
                            "low_power": est.low_power}))
    return EXIT_OK


def _load_constants(path) -> bounds.BoundConstants:
    if path is None:
        return bounds.BoundConstants()
    with open(path) as fh:
        raw = json.load(fh)
    return bounds.BoundConstants(**raw)


def _cmd_bounds(args) -> int:
    consts = _load_constants(args.constants_file)
    rows = []
    for s in args.s_grid:
        for t in args.T_grid:
            rep = bounds.kpz_tail_bounds(s, t, args.eps, args.delta, consts)
            rows.append((repr(s), repr(t), repr(rep.lower), repr(rep.upper),
                         rep.dominant_lower, rep.dominant_upper,
                         rep.regime.value))
    _emit(args, _csv_text(("s", "T", "lower", "upper", "dominant_lower",
                           "dominant_upper", "regime"), rows))
    return EXIT_OK


def _cmd_verify(args) -> int:
    seed = _resolve_seed(args)
    report = verify.run_verify(args.suite, seed, replicates=args.replicates,
                               workers=args.threads)
    _emit(args, _json_dump(report.as_dict()))
    return EXIT_OK if report.all_passed else EXIT_CHECK_FAILED


def _float_list(text: str) -> list:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated floats, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kpzedge",
                                description="Edge point process and "
                                            "lower-tail numerics harness")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spectrum", help="deterministic operator eigenvalues")
    sp.add_argument("--kmax", type=int, default=50)
    sp.add_argument("--out")
    sp.set_defaults(fn=_cmd_spectrum)

    pl = sub.add_parser("painleve", help="Ablowitz-Segur solution and CDFs")
    pl.add_argument("--gamma", type=float)
    pl.add_argument("--v", type=float)
    pl.add_argument("--s", type=float, default=0.0)
    pl.add_argument("--delta", type=float, default=0.1)
    pl.add_argument("--xmin", type=float, default=-10.0)
    pl.add_argument("--tol", type=float, default=1e-6)
    pl.add_argument("--format", choices=("csv", "json"), default="json")
    pl.add_argument("--out")
    pl.set_defaults(fn=_cmd_painleve)

    fr = sub.add_parser("fredholm", help="Nystrom determinant with certificate")
    fr.add_argument("--s", type=float, required=True)
    fr.add_argument("--gamma", type=float, required=True)
    fr.add_argument("--order", type=int, default=80)
    fr.add_argument("--convergence-report", action="store_true")
    fr.add_argument("--out")
    fr.set_defaults(fn=_cmd_fredholm)

    sa = sub.add_parser("sample", help="Monte Carlo edge samplers")
    sa.add_argument("--sampler", choices=("tridiag", "sao"), required=True)
    sa.add_argument("--n", type=int)
    sa.add_argument("--k", type=int, required=True)
    sa.add_argument("--L", type=float, default=20.0)
    sa.add_argument("--h", type=float, default=0.02)
    sa.add_argument("--replicates", type=int, required=True)
    sa.add_argument("--seed", type=int)
    sa.add_argument("--threads", type=int, default=1)
    sa.add_argument("--format", choices=("binary", "csv"), default="binary")
    sa.add_argument("--out", required=True)
    sa.set_defaults(fn=_cmd_sample)

    st = sub.add_parser("stats", help="estimators over a stored sample")
    st.add_argument("--in", dest="infile", required=True)
    st.add_argument("--op", choices=("cgf", "thinned-max", "laplace", "tail",
                                     "mean-count"), required=True)
    st.add_argument("--s", type=float, required=True)
    st.add_argument("--v", type=float, default=1.0)
    st.add_argument("--T", type=float, default=1.0)
    st.add_argument("--gamma", type=float)
    st.add_argument("--seed", type=int)
    st.add_argument("--out")
    st.set_defaults(fn=_cmd_stats)

    bo = sub.add_parser("bounds", help="tail-bound crossover tables")
    bo.add_argument("--s-grid", type=_float_list, required=True)
    bo.add_argument("--T-grid", type=_float_list, required=True)
    bo.add_argument("--eps", type=float, default=0.1)
    bo.add_argument("--delta", type=float, default=0.1)
    bo.add_argument("--constants-file")
    bo.add_argument("--out")
    bo.set_defaults(fn=_cmd_bounds)

    ve = sub.add_parser("verify", help="run the self-check suite")
    ve.add_argument("--suite", choices=("fast", "full"), default="fast")
    ve.add_argument("--seed", type=int)
    ve.add_argument("--replicates", type=int, default=2000)
    ve.add_argument("--threads", type=int, default=1)
    ve.add_argument("--out")
    ve.set_defaults(fn=_cmd_verify)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except InvalidArgumentError as exc:
        print(f"kpzedge: argument error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except KpzEdgeError as exc:
        print(f"kpzedge: numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"kpzedge: i/o error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
