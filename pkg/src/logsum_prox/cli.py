"""Command line front end.

Subcommands: ``prox``, ``zstar``, ``irl1 {simulate,predict,failures}``,
``sweep``, ``matprox``.  Each one is a thin wrapper over the library; the
printed numbers equal direct library calls exactly.

Output formats: ``text`` (6 significant digits), ``csv`` and ``json``
(17 significant digits / shortest round-trip form).  Exit codes: 0 success,
2 usage or input-file error, 3 regime/domain error, 4 convergence failure.

``LOGSUM_PROX_THREADS`` caps internal parallelism; ``sweep`` evaluates its
grid in ordered chunks across that many threads, with output independent of
the thread count.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import matrix_io
from .errors import (
    ConvergenceError,
    DomainError,
    MatrixFormatError,
    PreconditionError,
    RegimeError,
)
from .irl1 import (
    failure_intervals,
    irl1_predict_limit,
    irl1_simulate,
    limit_matches_prox,
)
from .matrix import prox_matrix
from .scalar import ProxParams, Regime, prox_scalar, z_star
from .vector import prox_vector

__all__ = ["main", "build_parser"]


def _fmt17(v: float) -> str:
    return format(float(v), ".17g")


def _fmt6(v: float) -> str:
    return format(float(v), ".6g")


def _positive_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a real number") from None
    if not (math.isfinite(v) and v > 0):
        raise argparse.ArgumentTypeError(f"must be a positive finite real, got {text!r}")
    return v


def _float_list(text: str) -> list[float]:
    try:
        return [float(tok) for tok in text.split(",") if tok != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"{text!r} is not a comma-separated list of reals"
        ) from None


def _sweep_spec(text: str) -> tuple[float, float, int]:
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected a:b:n, got {text!r}")
    try:
        a, b, n = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a:b:n with reals a,b and int n, got {text!r}") from None
    if n < 2:
        raise argparse.ArgumentTypeError("sweep needs at least 2 points")
    return a, b, n


def _thread_cap() -> int:
    raw = os.environ.get("LOGSUM_PROX_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        return 1
    return max(1, n)


def _emit(args, text_lines) -> None:
    out = "\n".join(text_lines) + "\n"
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def _emit_json(args, payload) -> None:
    _emit(args, [json.dumps(payload, indent=2, sort_keys=True)])


def _params(args) -> ProxParams:
    return ProxParams(args.lam, args.eps)


def _add_common(sub, fmt_choices=("text", "csv", "json")) -> None:
    sub.add_argument("--lambda", dest="lam", type=_positive_float, required=True,
                     help="prox index, must be > 0")
    sub.add_argument("--eps", dest="eps", type=_positive_float, required=True,
                     help="penalty scale, must be > 0")
    sub.add_argument("--format", choices=fmt_choices, default=fmt_choices[0],
                     help="output format")
    sub.add_argument("--output", default=None, help="write output to this file instead of stdout")


def cmd_prox(args) -> int:
    params = _params(args)
    res = prox_vector(params, np.asarray(args.z, dtype=float))
    zs = None
    if params.regime() is Regime.NONCONVEX:
        zs = z_star(params).z_star
    if args.format == "json":
        _emit_json(args, {
            "inputs": {"lambda": params.lam, "eps": params.eps, "z": list(args.z)},
            "values": [float(v) for v in res.canonical],
            "regime": params.regime().value,
            "z_star": zs,
            "ambiguous_indices": list(res.ambiguous_indices),
            "objective": res.objective_value,
        })
    elif args.format == "csv":
        lines = ["index,z,value,ambiguous"]
        for i, (zi, vi) in enumerate(zip(args.z, res.canonical)):
            amb = "true" if i in res.ambiguous_indices else "false"
            lines.append(f"{i},{_fmt17(zi)},{_fmt17(vi)},{amb}")
        _emit(args, lines)
    else:
        lines = [f"regime: {params.regime().value}"]
        if zs is not None:
            lines.append(f"z_star: {_fmt6(zs)}")
        for i, (zi, vi) in enumerate(zip(args.z, res.canonical)):
            mark = "  (ambiguous: 0 and sgn(z)*r2(z_star) tie)" if i in res.ambiguous_indices else ""
            lines.append(f"prox({_fmt6(zi)}) = {_fmt6(vi)}{mark}")
        lines.append(f"objective: {_fmt6(res.objective_value)}")
        _emit(args, lines)
    return 0


def cmd_zstar(args) -> int:
    params = _params(args)
    if params.regime() is Regime.CONVEX:
        sys.stderr.write("convex regime: no jump point\n")
        return 3
    res = z_star(params, tol=args.tol, max_iter=args.max_iter)
    if args.format == "json":
        _emit_json(args, {
            "inputs": {"lambda": params.lam, "eps": params.eps},
            "z_star": res.z_star,
            "bracket": [res.bracket[0], res.bracket[1]],
            "iterations": res.iterations,
            "residual": res.residual,
        })
    elif args.format == "csv":
        _emit(args, [
            "z_star,bracket_low,bracket_high,iterations,residual",
            f"{_fmt17(res.z_star)},{_fmt17(res.bracket[0])},{_fmt17(res.bracket[1])},"
            f"{res.iterations},{_fmt17(res.residual)}",
        ])
    else:
        _emit(args, [
            f"z_star: {_fmt6(res.z_star)}",
            f"bracket: [{_fmt6(res.bracket[0])}, {_fmt6(res.bracket[1])}]",
            f"iterations: {res.iterations}",
            f"residual: {_fmt6(res.residual)}",
        ])
    return 0


def cmd_irl1_simulate(args) -> int:
    params = _params(args)
    trace = irl1_simulate(params, args.z, args.x0, stop_tol=args.tol, max_iters=args.max_iters)
    if args.format == "json":
        _emit_json(args, {
            "inputs": {"lambda": params.lam, "eps": params.eps, "z": args.z, "x0": args.x0},
            "stop_reason": trace.stop_reason.value,
            "iterations": len(trace.iterates) - 1,
            "limit_estimate": trace.limit_estimate,
            "iterates": list(trace.iterates),
        })
    elif args.format == "csv":
        lines = ["iter,x"]
        lines += [f"{k},{_fmt17(x)}" for k, x in enumerate(trace.iterates)]
        _emit(args, lines)
    else:
        _emit(args, [
            f"iterations: {len(trace.iterates) - 1}",
            f"stop_reason: {trace.stop_reason.value}",
            f"limit_estimate: {_fmt6(trace.limit_estimate)}",
        ])
    return 0


def cmd_irl1_predict(args) -> int:
    params = _params(args)
    pred = irl1_predict_limit(params, args.z, args.x0)
    if args.format == "json":
        _emit_json(args, {
            "limit": pred.limit,
            "classification": pred.classification.value,
            "lemma": pred.justification,
        })
    elif args.format == "csv":
        _emit(args, ["limit,classification,lemma",
                     f"{_fmt17(pred.limit)},{pred.classification.value},{pred.justification}"])
    else:
        _emit(args, [
            f"limit: {_fmt6(pred.limit)}",
            f"classification: {pred.classification.value}",
            f"lemma: {pred.justification}",
        ])
    return 0


def cmd_irl1_failures(args) -> int:
    params = _params(args)
    report = failure_intervals(params, args.x0)
    sweep_rows = []
    if args.sweep is not None:
        a, b, n = args.sweep
        for z in np.linspace(a, b, n):
            z = float(z)
            limit = irl1_predict_limit(params, z, args.x0).limit
            true = prox_scalar(params, z).canonical
            agree = limit_matches_prox(params, z, limit)
            sweep_rows.append((z, limit, true, agree))
    if args.format == "json":
        _emit_json(args, {
            "x0": report.x0,
            "z_star": report.z_star,
            "case": report.case.value,
            "intervals": [
                {"lower": iv.lower, "upper": iv.upper,
                 "lower_closed": iv.lower_closed, "upper_closed": iv.upper_closed}
                for iv in report.intervals
            ],
            "sweep": [
                {"z": z, "irl1_limit": lim, "true_prox": tp, "agree": ag}
                for z, lim, tp, ag in sweep_rows
            ],
        })
    elif args.format == "csv":
        if sweep_rows:
            lines = ["z,irl1_limit,true_prox,agree"]
            lines += [
                f"{_fmt17(z)},{_fmt17(lim)},{_fmt17(tp)},{'true' if ag else 'false'}"
                for z, lim, tp, ag in sweep_rows
            ]
        else:
            lines = ["lower,upper,lower_closed,upper_closed"]
            lines += [
                f"{_fmt17(iv.lower)},{_fmt17(iv.upper)},{iv.lower_closed},{iv.upper_closed}"
                for iv in report.intervals
            ]
        _emit(args, lines)
    else:
        lines = [f"case: {report.case.value}"]
        if report.z_star is not None:
            lines.append(f"z_star: {_fmt6(report.z_star)}")
        if report.intervals:
            lines.append("failure intervals:")
            lines += [f"  {iv}" for iv in report.intervals]
        else:
            lines.append("failure intervals: none (iteration is exact for every z)")
        for z, lim, tp, ag in sweep_rows:
            lines.append(
                f"z={_fmt6(z)} irl1={_fmt6(lim)} prox={_fmt6(tp)} agree={'yes' if ag else 'no'}"
            )
        _emit(args, lines)
    return 0


def _sweep_rows(params: ProxParams, zs_grid: np.ndarray) -> list[tuple[float, float]]:
    rows = []
    for z in zs_grid:
        res = prox_scalar(params, float(z))
        for v in res.values:  # both branches at the jump point
            rows.append((float(z), float(v)))
    return rows


def cmd_sweep(args) -> int:
    params = _params(args)
    grid = np.linspace(args.start, args.stop, args.points)
    threads = _thread_cap()
    if threads > 1:
        chunks = np.array_split(grid, threads * 4)
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda c: _sweep_rows(params, c), chunks))
        rows = [r for part in parts for r in part]
    else:
        rows = _sweep_rows(params, grid)
    if args.format == "json":
        _emit_json(args, {
            "inputs": {"lambda": params.lam, "eps": params.eps,
                       "from": args.start, "to": args.stop, "points": args.points},
            "rows": [[z, v] for z, v in rows],
        })
    elif args.format == "text":
        _emit(args, [f"{_fmt6(z)} {_fmt6(v)}" for z, v in rows])
    else:
        lines = ["z,value"]
        lines += [f"{_fmt17(z)},{_fmt17(v)}" for z, v in rows]
        _emit(args, lines)
    return 0


def cmd_matprox(args) -> int:
    params = _params(args)
    z = matrix_io.read_matrix(args.infile, args.matfmt)
    res = prox_matrix(params, z)
    matrix_io.write_matrix(args.outfile, res.x_star, args.matfmt)
    rank_in = int(np.linalg.matrix_rank(z))
    rank_out = int(np.count_nonzero(res.d))
    _emit(args, [
        f"wrote x_star ({z.shape[0]}x{z.shape[1]}) to {args.outfile}",
        "d: " + ",".join(_fmt6(v) for v in res.d),
        "ambiguous_indices: " + (",".join(str(i) for i in res.ambiguous_indices) or "none"),
        f"objective_value: {_fmt6(res.objective_value)}",
        f"rank: {rank_in} -> {rank_out}",
    ])
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="logsum-prox",
        description="Exact proximity operator of the log-sum penalty, its jump point, "
                    "the reweighted-l1 iteration, and the singular-value matrix prox.",
    )
    parser.add_argument("--seed", type=int, default=None,
                        help="seed for randomized demos (reserved; current commands are deterministic)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("prox", help="componentwise prox of a scalar or vector input")
    _add_common(p)
    p.add_argument("--z", type=_float_list, required=True,
                   help="input point(s), comma separated")
    p.set_defaults(func=cmd_prox)

    p = sub.add_parser("zstar", help="locate the jump point by bisection")
    _add_common(p)
    p.add_argument("--tol", type=_positive_float, default=None,
                   help="bracket-width tolerance (default 1e-13 of the bracket)")
    p.add_argument("--max-iter", type=int, default=200)
    p.set_defaults(func=cmd_zstar)

    p = sub.add_parser("irl1", help="reweighted-l1 iteration tools")
    isub = p.add_subparsers(dest="irl1_command", required=True)

    ps = isub.add_parser("simulate", help="run the iteration and emit the trace")
    _add_common(ps, fmt_choices=("csv", "text", "json"))
    ps.add_argument("--z", type=float, required=True)
    ps.add_argument("--x0", type=float, required=True)
    ps.add_argument("--tol", type=_positive_float, default=1e-12, help="stop tolerance")
    ps.add_argument("--max-iters", type=int, default=10**6)
    ps.set_defaults(func=cmd_irl1_simulate)

    pp = isub.add_parser("predict", help="analytic limit of the iteration")
    _add_common(pp)
    pp.add_argument("--z", type=float, required=True)
    pp.add_argument("--x0", type=float, required=True)
    pp.set_defaults(func=cmd_irl1_predict)

    pf = isub.add_parser("failures", help="inputs where the iteration misses the true prox")
    _add_common(pf)
    pf.add_argument("--x0", type=float, required=True)
    pf.add_argument("--sweep", type=_sweep_spec, default=None, metavar="a:b:n",
                    help="also tabulate z,irl1_limit,true_prox,agree over n points in [a,b]")
    pf.set_defaults(func=cmd_irl1_failures)

    p = sub.add_parser("sweep", help="tabulate the prox over a z grid (plot data)")
    _add_common(p, fmt_choices=("csv", "text", "json"))
    p.add_argument("--from", dest="start", type=float, required=True)
    p.add_argument("--to", dest="stop", type=float, required=True)
    p.add_argument("--points", type=int, required=True)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("matprox", help="matrix prox via singular values")
    p.add_argument("--lambda", dest="lam", type=_positive_float, required=True)
    p.add_argument("--eps", dest="eps", type=_positive_float, required=True)
    p.add_argument("--in", dest="infile", required=True, help="input matrix file")
    p.add_argument("--out", dest="outfile", required=True, help="output matrix file")
    p.add_argument("--format", dest="matfmt", choices=("csv", "bin"), default="csv",
                   help="matrix file format for --in and --out")
    p.add_argument("--output", default=None, help="write the text summary to this file")
    p.set_defaults(func=cmd_matprox)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 0 for --help, 2 for usage errors
        return 0 if exc.code in (0, None) else 2
    try:
        return args.func(args)
    except MatrixFormatError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except (RegimeError, DomainError, PreconditionError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 3
    except ConvergenceError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 4
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
