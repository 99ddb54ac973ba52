"""Command-line front end.

Five subcommands — ``check``, ``certify``, ``counterexample``,
``extremal``, ``gorny`` — each emit a canonical JSON report on stdout
(or ``--output``), with optional PNG/TSV rendering via ``--figures``.

Exit codes: 0 success, 1 usage or input error, 2 hypothesis or
verification failure, 3 numeric range or search-budget error.  On any
nonzero exit nothing is written except a one-line JSON diagnostic on
stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any

from . import reports
from .certify import certify_membership, check_hypotheses, require_hypotheses
from .counterexample import (
    construct_counterexample,
    gevrey_oracle,
    nlogn_oracle,
    power_oracle,
    verify_counterexample,
)
from .errors import (
    CarlemanError,
    HypothesisFailure,
    LogRangeError,
    SearchBudgetExceeded,
    VerificationFailure,
)
from .extremal import (
    build_extremal,
    check_midpoint_lower,
    check_upper_bound,
    log_tail_bound,
)
from .gorny import CORPUS, verify_gorny_empirical
from .logdomain import close_rel
from .quasianalytic import propagation_plan
from .sequences import (
    FamilySpec,
    build_sequence,
    check_condition_A,
    check_log_convex,
    fit_analytic_constant,
    quasianalytic_diagnostic,
    ratios,
)

_SAMPLING_NOTE = (
    "sup norms are dense-grid samples: lower bounds on the true sup, so the "
    "left side is understated and the right side conservative"
)


class UsageError(CarlemanError):
    """Bad flags or malformed input documents (exit 1)."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)


def _seq_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--family",
        choices=("gevrey", "nlogn"),
        help="built-in weight family (alternative to --sequence)",
    )
    p.add_argument("--s", type=float, default=1.0, help="Gevrey exponent")
    p.add_argument(
        "--sequence", type=Path, help="sequence spec JSON (kind/s/logs)"
    )


def _out_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--output", type=Path, help="report path (default: stdout)")
    p.add_argument(
        "--figures", type=Path, help="directory for PNG + TSV rendering"
    )


def build_parser() -> _Parser:
    p = _Parser(prog="carleman", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(
        dest="subcommand", metavar="SUBCOMMAND", required=True,
        parser_class=_Parser,
    )

    c = sub.add_parser("check", help="weight-sequence condition report")
    _seq_flags(c)
    c.add_argument("--n-max", type=int, default=200)
    c.add_argument("--m0", type=float, default=1.0)
    c.add_argument(
        "--interval", nargs=2, type=float, default=(0.0, 1.0),
        metavar=("A", "B"), help="interval for the propagation plan",
    )
    _out_flags(c)

    c = sub.add_parser("certify", help="sparse-order membership certificate")
    _seq_flags(c)
    c.add_argument("--orders", help="comma-separated sparse orders, e.g. 2,4,8")
    c.add_argument("--bounds", type=Path, help="bounds JSON ([order, log_F] pairs)")
    c.add_argument("--length", type=float, default=1.0)
    c.add_argument("--m0", type=float, default=1.0)
    c.add_argument("--c", type=float, help="analytic constant (default: fitted)")
    c.add_argument("--n-max", type=int, help="weight range (default: max order)")
    c.add_argument(
        "--recheck", type=Path,
        help="re-derive a prior certify report and compare",
    )
    _out_flags(c)

    c = sub.add_parser("counterexample", help="staircase construction")
    c.add_argument(
        "--family", choices=("power-n", "gevrey", "nlogn"), default="power-n",
        help="oracle family (power-n means M_n = n^n)",
    )
    c.add_argument("--s", type=float, default=1.0, help="Gevrey exponent")
    c.add_argument("--i0", type=int, default=2)
    c.add_argument("--rounds", type=int, default=1)
    c.add_argument("--witness-log2-bound", type=float, default=64.0)
    c.add_argument("--budget", type=int, default=10**6)
    c.add_argument(
        "--verify", type=Path,
        help="re-verify a prior counterexample report",
    )
    _out_flags(c)

    c = sub.add_parser("extremal", help="extremal series evaluation table")
    _seq_flags(c)
    c.add_argument(
        "--counterexample", type=Path,
        help="build the series on a counterexample report's sequence prefix",
    )
    c.add_argument("--k-trunc", type=int, help="series truncation")
    c.add_argument("--n-max", type=int, help="highest evaluated order")
    c.add_argument("--center", type=float, default=0.5)
    c.add_argument("--half-width", type=float, default=0.5)
    c.add_argument("--grid", type=int, default=4096)
    _out_flags(c)

    c = sub.add_parser("gorny", help="intermediate-derivative bound checks")
    c.add_argument("--fn", default="all", choices=("all", *sorted(CORPUS)))
    c.add_argument("--m", type=int, default=4)
    c.add_argument("--k", type=int, help="single order (default: all 1..m-1)")
    c.add_argument(
        "--interval", nargs=2, type=float, default=(0.0, 1.0),
        metavar=("A", "B"),
    )
    c.add_argument("--grid", type=int, default=10_000)
    _out_flags(c)

    return p


# ------------------------------------------------------------- handlers

def _resolve_family(args: argparse.Namespace) -> FamilySpec:
    if args.sequence is not None:
        return reports.load_sequence_spec(args.sequence)
    if args.family is None:
        raise UsageError("provide --family or --sequence")
    if args.family == "gevrey":
        return FamilySpec(kind="gevrey", s=args.s)
    return FamilySpec(kind="nlogn")


def _parse_orders(text: str | None) -> tuple[int, ...] | None:
    if text is None:
        return None
    try:
        orders = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise UsageError(f"--orders must be comma-separated ints, got {text!r}")
    return orders


def _make_oracle(family: str, s: float, budget: int):
    if family == "power-n":
        return power_oracle(1.0, index_budget=budget)
    if family == "gevrey":
        return gevrey_oracle(s, index_budget=budget)
    if family == "nlogn":
        return nlogn_oracle(index_budget=budget)
    raise UsageError(f"unknown oracle family {family!r}")


def _cmd_check(args: argparse.Namespace) -> dict[str, Any]:
    spec = _resolve_family(args)
    seq = build_sequence(spec, args.n_max)
    conv = check_log_convex(seq)
    cond_a = check_condition_A(seq, args.m0)
    require_hypotheses([conv, cond_a])
    qa = quasianalytic_diagnostic(seq)
    c_fit = fit_analytic_constant(seq)
    a, b = args.interval
    plan = propagation_plan(a, b, c_fit)
    return {
        "subcommand": "check",
        "family": reports.family_doc(spec),
        "n_max": args.n_max,
        "m0": args.m0,
        "conditions": [reports.condition_doc(r) for r in (conv, cond_a)],
        "carleman": {
            "partial_sum": qa.partial_sum,
            "quasianalytic": qa.quasianalytic,
        },
        "analytic_fit": {
            "c": c_fit,
            "vanishing_radius": plan.radius,
            "interval": [a, b],
            "propagation_steps": plan.steps,
        },
        "logs": list(seq.logs),
        "ratios": ratios(seq),
    }


def _certify_doc(
    spec: FamilySpec,
    n_max: int,
    m0: float,
    c: float | None,
    bounds,
) -> dict[str, Any]:
    seq = build_sequence(spec, n_max)
    c_used = fit_analytic_constant(seq) if c is None else c
    hyps = check_hypotheses(seq, bounds, m0, c_used)
    require_hypotheses(hyps)
    cert = certify_membership(seq, bounds, m0, c_used)
    return {
        "subcommand": "certify",
        "family": reports.family_doc(spec),
        "n_max": n_max,
        "m0": m0,
        "c": c_used,
        "length": bounds.length,
        "bounds": reports.bounds_pairs_doc(bounds),
        "hypotheses": [reports.condition_doc(r) for r in hyps],
        "certificate": reports.certificate_doc(cert),
        "weight_logs": list(seq.logs[cert.ell_min : cert.ell_max + 1]),
    }


def _cmd_certify(args: argparse.Namespace) -> dict[str, Any]:
    if args.recheck is not None:
        prior = reports.load_report(args.recheck)
        spec = reports.family_from_doc(prior["family"])
        pairs = [(int(d), float(v)) for d, v in prior["bounds"]]
        orders = tuple(int(d) for d in prior["certificate"]["orders"])
        bounds = reports.sparse_bounds_from_pairs(
            pairs, orders, float(prior["length"])
        )
        doc = _certify_doc(
            spec, int(prior["n_max"]), float(prior["m0"]), float(prior["c"]),
            bounds,
        )
        old = reports.certificate_from_doc(prior["certificate"])
        new = reports.certificate_from_doc(doc["certificate"])
        gaps = [abs(a - b) for a, b in zip(old.envelope, new.envelope)]
        agrees = (
            old.orders == new.orders
            and close_rel(old.log_k, new.log_k)
            and close_rel(old.log_c1, new.log_c1)
            and len(old.envelope) == len(new.envelope)
            and all(close_rel(a, b) for a, b in zip(old.envelope, new.envelope))
        )
        if not agrees:
            raise VerificationFailure(
                f"recheck disagrees with {args.recheck}: "
                f"max envelope gap {max(gaps, default=0.0):.6g}"
            )
        doc["recheck"] = {
            "source_matches": True,
            "max_envelope_gap": max(gaps, default=0.0),
        }
        return doc

    if args.bounds is None:
        raise UsageError("certify requires --bounds (or --recheck)")
    spec = _resolve_family(args)
    pairs = reports.load_bounds(args.bounds)
    orders = _parse_orders(args.orders)
    bounds = reports.sparse_bounds_from_pairs(pairs, orders, args.length)
    n_max = args.n_max
    if n_max is None:
        n_max = max(bounds.gaps.orders)
    return _certify_doc(spec, n_max, args.m0, args.c, bounds)


def _cmd_counterexample(args: argparse.Namespace) -> dict[str, Any]:
    if args.verify is not None:
        prior = reports.load_report(args.verify)
        cert = reports.counterexample_from_doc(prior)
        s_val = prior.get("s")
        oracle = _make_oracle(
            str(prior["family"]),
            1.0 if s_val is None else float(s_val),
            args.budget,
        )
        ver = verify_counterexample(cert, oracle)
        doc = reports.counterexample_doc(cert)
        doc.update(
            subcommand="counterexample",
            mode="verify",
            family=prior["family"],
            s=prior.get("s"),
            verification=[reports.condition_doc(r) for r in ver],
        )
        _require_verified(ver)
        return doc

    oracle = _make_oracle(args.family, args.s, args.budget)
    cert = construct_counterexample(
        oracle, args.i0, args.rounds, args.witness_log2_bound
    )
    ver = verify_counterexample(cert, oracle)
    _require_verified(ver)
    doc = reports.counterexample_doc(cert)
    prefix = min(cert.d[0] + 2, 64)
    doc.update(
        subcommand="counterexample",
        mode="construct",
        family=args.family,
        s=args.s if args.family == "gevrey" else None,
        verification=[reports.condition_doc(r) for r in ver],
        log_m_prefix=cert.log_m_prefix(min(prefix, cert.d[-1])),
    )
    return doc


def _require_verified(ver) -> None:
    for r in ver:
        if not r.holds:
            raise VerificationFailure(
                f"counterexample invariant '{r.label}' failed at "
                f"{r.first_violation} (margin {r.margin:.6g})"
            )


def _cmd_extremal(args: argparse.Namespace) -> dict[str, Any]:
    if args.counterexample is not None:
        prior = reports.load_report(args.counterexample)
        cert = reports.counterexample_from_doc(prior)
        k_trunc = args.k_trunc
        if k_trunc is None:
            k_trunc = min(64, cert.d[-1])
        seq = cert.sequence_prefix(k_trunc)
        source: dict[str, Any] = {"counterexample": {"d": list(cert.d), "i0": cert.i0}}
    else:
        spec = _resolve_family(args)
        k_trunc = 20 if args.k_trunc is None else args.k_trunc
        seq = build_sequence(spec, k_trunc)
        source = {"family": reports.family_doc(spec)}

    series = build_extremal(seq, args.center, args.half_width, k_trunc)
    n_eval = args.n_max
    if n_eval is None:
        n_eval = min(20, series.k_trunc)
    if not (0 <= n_eval <= series.k_trunc):
        raise UsageError(
            f"--n-max must lie in 0..{series.k_trunc}, got {n_eval}"
        )

    table = []
    failed: list[tuple[int, str]] = []
    for n in range(n_eval + 1):
        mw = check_midpoint_lower(series, n)
        ub = check_upper_bound(series, n, grid_size=args.grid)
        table.append(
            {
                "n": n,
                "log_midpoint": mw.log_value,
                "log_lower": mw.log_lower,
                "sign": mw.sign,
                "log_sup": ub.log_measured,
                "log_upper": ub.log_bound,
                "log_tail": log_tail_bound(series, n),
                "midpoint_ok": mw.holds,
                "upper_ok": ub.holds,
            }
        )
        if not mw.holds:
            failed.append((n, "midpoint lower bound"))
        if not ub.holds:
            failed.append((n, "upper bound"))
    if failed:
        n, which = failed[0]
        raise VerificationFailure(f"{which} failed at order {n}")

    doc: dict[str, Any] = {
        "subcommand": "extremal",
        "center": args.center,
        "half_width": args.half_width,
        "k_trunc": series.k_trunc,
        "grid": args.grid,
        "table": table,
    }
    doc.update(source)
    return doc


def _cmd_gorny(args: argparse.Namespace) -> dict[str, Any]:
    if args.m < 2:
        raise UsageError(f"--m must be >= 2, got {args.m}")
    ks = range(1, args.m) if args.k is None else (args.k,)
    fns = sorted(CORPUS) if args.fn == "all" else (args.fn,)
    a, b = args.interval
    rows = []
    failed = None
    for fn_id in fns:
        for k in ks:
            chk = verify_gorny_empirical(fn_id, (a, b), args.m, k, args.grid)
            rows.append(
                {
                    "fn": chk.fn_id,
                    "interval": [a, b],
                    "m": chk.m,
                    "k": chk.k,
                    "lhs": chk.lhs,
                    "rhs": chk.rhs,
                    "holds": chk.holds,
                }
            )
            if failed is None and not chk.holds:
                failed = chk
    if failed is not None:
        raise VerificationFailure(
            f"bound violated for {failed.fn_id} on [{a}, {b}] "
            f"with m={failed.m}, k={failed.k}"
        )
    return {
        "subcommand": "gorny",
        "m": args.m,
        "interval": [a, b],
        "grid": args.grid,
        "note": _SAMPLING_NOTE,
        "rows": rows,
    }


_HANDLERS = {
    "check": _cmd_check,
    "certify": _cmd_certify,
    "counterexample": _cmd_counterexample,
    "extremal": _cmd_extremal,
    "gorny": _cmd_gorny,
}


def _emit(doc: dict[str, Any], args: argparse.Namespace) -> None:
    text = reports.report_text(doc)
    if args.output is not None:
        args.output.write_text(text)
    else:
        sys.stdout.write(text)
    if args.figures is not None:
        from . import plots

        plots.render_figures(doc, args.figures)


def _diag(kind: str, detail: str, **extra: Any) -> None:
    record = {"error": kind, "detail": detail}
    record.update(extra)
    print(json.dumps(record, sort_keys=True), file=sys.stderr)


def main(argv: list[str] | None = None) -> int:
    try:
        parser = build_parser()
        args = parser.parse_args(argv)
        doc = _HANDLERS[args.subcommand](args)
        _emit(doc, args)
        return 0
    except UsageError as e:
        _diag("usage", str(e))
        return 1
    except HypothesisFailure as e:
        _diag("hypothesis-failure", e.detail, condition=e.condition)
        return 2
    except VerificationFailure as e:
        _diag("verification-failure", str(e))
        return 2
    except SearchBudgetExceeded as e:
        _diag("budget", str(e), step=e.step)
        return 3
    except LogRangeError as e:
        _diag("range", str(e))
        return 3
    except (ValueError, OSError) as e:
        _diag("usage", str(e))
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
