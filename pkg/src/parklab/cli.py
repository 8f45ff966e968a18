"""Command-line interface.

Exit codes: 0 success; 2 usage error; 3 domain error; 4 enumeration budget
exceeded; 5 a self-check failed (normalization, bound sandwich, oracle match).
Set PARKLAB_THREADS to cap the worker count of ``simulate``.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import List, Optional, Sequence

from . import asymptotics, oracle, tv
from .closed_forms import mean_last_pref, pf_probability_formula, poisson_factor, q_vector
from .errors import BudgetExceededError, ParameterError, SelfCheckError
from .montecarlo import RngSpec, simulate
from .protocol import ModelParams
from .tables import Table, emit

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_BUDGET = 4
EXIT_SELFCHECK = 5


def parse_p(text: str):
    """'0.7' -> float, '1/3' -> Fraction."""
    try:
        if "/" in text:
            return Fraction(text)
        return float(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"invalid probability {text!r}") from None


def _int_list(text: str) -> List[int]:
    try:
        return [int(t) for t in text.split(",") if t]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _fraction_str(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _p_meta(p):
    return _fraction_str(p) if isinstance(p, Fraction) else p


def resolve_params(args, p=None) -> ModelParams:
    """Build ModelParams from --m or --c (exactly one) and --n."""
    m, c = getattr(args, "m", None), getattr(args, "c", None)
    if (m is None) == (c is None):
        raise ParameterError("give exactly one of --m or --c")
    if m is None:
        m = asymptotics.cars_for(c, args.n)
    return ModelParams(m, args.n, args.p if p is None else p)


def cmd_simulate(args) -> Table:
    params = ModelParams(args.m, args.n, args.p)
    tally = simulate(params, args.samples, RngSpec(args.seed, args.stream), args.workers)
    hist = tally.histogram()
    est = tally.pf_estimate()
    q = q_vector(params.with_p(float(params.p)))
    rows = [
        {"j": j, "count": int(hist.counts[j - 1]), "freq": float(hist.normalized[j - 1]),
         "q_formula": float(q[j - 1]),
         "abs_diff": abs(float(hist.normalized[j - 1]) - float(q[j - 1]))}
        for j in range(1, params.n + 1)
    ]
    meta = {
        "command": "simulate", "m": params.m, "n": params.n, "p": float(params.p),
        "seed": args.seed, "stream": args.stream, "samples": args.samples,
        "successes": tally.successes,
        "pf_estimate": est.value, "pf_std_error": est.std_error,
        "pf_formula": float(pf_probability_formula(params.with_p(0.5))),
        "tv_to_formula": tv.tv_distance(hist.normalized, q) if tally.successes else None,
    }
    return Table(["j", "count", "freq", "q_formula", "abs_diff"], rows, meta)


def cmd_exact(args) -> Table:
    p = args.p if isinstance(args.p, Fraction) else Fraction(str(args.p))
    params = ModelParams(args.m, args.n, p)
    q = oracle.exact_q_distribution(params)
    pf = oracle.exact_pf_probability(params)
    mean = oracle.exact_mean(params)
    if q != q_vector(params) or pf != pf_probability_formula(params) or mean != mean_last_pref(params):
        raise SelfCheckError("enumeration disagrees with the closed forms")
    lists = params.n**params.m
    weighted = pf * lists  # sum of success probabilities over all lists
    rows = [{"j": j, "q_exact": _fraction_str(qj), "q": float(qj)} for j, qj in enumerate(q, 1)]
    meta = {
        "command": "exact", "m": params.m, "n": params.n, "p": _fraction_str(p),
        "pf_probability": _fraction_str(pf), "pf_weighted_count": int(weighted) if weighted.denominator == 1 else _fraction_str(weighted),
        "lists": lists, "mean_exact": _fraction_str(mean), "mean": float(mean),
    }
    return Table(["j", "q_exact", "q"], rows, meta)


def cmd_dist(args) -> Table:
    params = resolve_params(args)
    q = q_vector(params)
    cols = ["j", "q"] + (["q_exact"] if params.exact else [])
    rows = []
    for j, qj in enumerate(q, 1):
        row = {"j": j, "q": float(qj)}
        if params.exact:
            row["q_exact"] = _fraction_str(qj)
        rows.append(row)
    meta = {"command": "dist", "m": params.m, "n": params.n, "p": _p_meta(params.p)}
    return Table(cols, rows, meta)


def cmd_mean(args) -> Table:
    params = resolve_params(args)
    mean = mean_last_pref(params)
    pf = poisson_factor(params.m, params.n, exact=params.exact)
    row = {"m": params.m, "n": params.n, "p": _p_meta(params.p), "mean": float(mean),
           "poisson_factor": float(pf)}
    meta = {"command": "mean", "m": params.m, "n": params.n, "p": _p_meta(params.p),
            "mean": float(mean), "poisson_factor": float(pf)}
    if params.exact:
        meta["mean_exact"] = _fraction_str(mean)
    return Table(list(row), [row], meta)


def cmd_tv(args) -> Table:
    params = resolve_params(args, p=float(args.p))
    c = args.c if args.c is not None else (params.m / params.n if params.m < params.n else None)
    rep = tv.tv_report(params, c)
    row = {"m": rep.m, "n": rep.n, "p": rep.p, "tv": rep.tv, "upper": rep.upper,
           "lower": rep.lower, "lower_half": rep.lower_half, "prop_c_cap": rep.prop_c_cap,
           "sandwich_ok": rep.sandwich_ok}
    meta = {"command": "tv", "m": rep.m, "n": rep.n, "p": rep.p}
    if not rep.sandwich_ok:
        raise SelfCheckError(f"bound sandwich violated: {rep}")
    return Table(list(row), [row], meta)


def cmd_asymptotics(args) -> Table:
    kinds = ["mean", "cf", "ld"] if args.kind == "all" else [args.kind]
    rows = []
    for kind in kinds:
        if kind == "mean":
            reps = asymptotics.mean_expansion_report(args.c, float(args.p), args.ns)
        elif kind == "cf":
            reps = asymptotics.cf_ratio_report(args.c, args.ns)
        else:
            reps = asymptotics.ld_report(args.c, args.ns)
        for r in reps:
            rows.append({"kind": kind, "n": r.n, "approx": r.approx, "exact": r.exact,
                         "abs_err": r.abs_err, "scaled_err": r.scaled_err,
                         "rel_err": asymptotics.relative_error(r)})
    meta = {"command": "asymptotics", "c": args.c, "p": float(args.p)}
    return Table(["kind", "n", "approx", "exact", "abs_err", "scaled_err", "rel_err"], rows, meta)


def cmd_sweep_c(args) -> Table:
    sweep = tv.sweep_c(args.n, float(args.p), args.c_start, args.c_stop, args.c_step)
    rows = [{"c": r.c, "m": r.m, "tv": r.tv, "upper_bound": r.upper_bound,
             "prop_c_cap": r.prop_c_cap} for r in sweep]
    meta = {"command": "sweep-c", "n": args.n, "p": float(args.p), "c_start": args.c_start,
            "c_stop": args.c_stop, "c_step": args.c_step}
    table = Table(["c", "m", "tv", "upper_bound", "prop_c_cap"], rows, meta)
    bad = [r for r in sweep if r.tv > min(r.upper_bound, r.prop_c_cap) + tv.BOUND_TOL]
    if bad:
        raise SelfCheckError(f"{len(bad)} sweep rows exceed their upper bounds")
    return table


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="parklab", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp, p_default="0.5", need_m=True, allow_c=False):
        if allow_c:
            sp.add_argument("--m", type=int)
            sp.add_argument("--c", type=float, help="use m = floor(c n) instead of --m")
        elif need_m:
            sp.add_argument("--m", type=int, required=True)
        sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--p", type=parse_p, default=parse_p(p_default))
        sp.add_argument("--format", choices=["csv", "json"], default="csv")
        sp.add_argument("--output", "-o", help="output path (default: stdout)")

    sp = sub.add_parser("simulate", help="Monte Carlo histogram of the last preference")
    common(sp)
    sp.add_argument("--samples", type=int, default=100_000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--stream", type=int, default=0)
    sp.add_argument("--workers", type=int, default=None)
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("exact", help="exhaustive enumeration in rational arithmetic")
    common(sp)
    sp.set_defaults(func=cmd_exact)

    for name, func, hlp in (("dist", cmd_dist, "closed-form Q_{m,n,p}"),
                            ("mean", cmd_mean, "closed-form conditional mean"),
                            ("tv", cmd_tv, "TV distance to uniform with its bounds")):
        sp = sub.add_parser(name, help=hlp)
        common(sp, allow_c=True)
        sp.set_defaults(func=func)

    sp = sub.add_parser("asymptotics", help="expansions vs exact values over an n list")
    sp.add_argument("--c", type=float, default=0.5)
    sp.add_argument("--p", type=parse_p, default=1.0)
    sp.add_argument("--ns", type=_int_list, default=[100, 200, 400, 800])
    sp.add_argument("--kind", choices=["mean", "cf", "ld", "all"], default="all")
    sp.add_argument("--format", choices=["csv", "json"], default="csv")
    sp.add_argument("--output", "-o")
    sp.set_defaults(func=cmd_asymptotics)

    sp = sub.add_parser("sweep-c", help="TV to uniform as a function of c")
    sp.add_argument("--n", type=int, default=100)
    sp.add_argument("--p", type=parse_p, default=1.0)
    sp.add_argument("--c-start", type=float, default=0.1)
    sp.add_argument("--c-stop", type=float, default=0.99)
    sp.add_argument("--c-step", type=float, default=0.01)
    sp.add_argument("--format", choices=["csv", "json"], default="csv")
    sp.add_argument("--output", "-o")
    sp.set_defaults(func=cmd_sweep_c)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        table = args.func(args)
    except BudgetExceededError as e:
        print(f"parklab: budget exceeded: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except SelfCheckError as e:
        print(f"parklab: self-check failed: {e}", file=sys.stderr)
        return EXIT_SELFCHECK
    except ParameterError as e:
        print(f"parklab: invalid input: {e}", file=sys.stderr)
        return EXIT_DOMAIN
    text = emit(table, args.format)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
