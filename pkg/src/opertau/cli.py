"""Command-line interface: deterministic JSON reports for every subcommand.

Exit codes: 0 success, 2 usage or parse error, 3 precondition violation,
4 internal invariant breach.  Every report carries the truncation order,
depth, window and degree actually used.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import jsonio
from .errors import InvariantViolation, OpertauError, ParseError
from .grass import hirota_residual, tau_schur
from .hecke import TensorWindow, verify_relations
from .kdv import conserved_density, lax_rhs
from .krichever import (
    bc_relation,
    krichever_point,
    main_theorem_check,
    n_reduction_holds,
)
from .oper import miura_transform
from .parser import parse_operator, print_operator
from .psido import configure_tail_depth, nth_root
from .series import configure_pole_floor
from .toda import toda_tau


def _add_common(p, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--order", type=int, default=d(12), help="series truncation order")
    p.add_argument("--depth", type=int, default=d(-8), help="operator tail floor")
    p.add_argument(
        "--window", type=str, default=d("-8,8"),
        help="Grassmannian window as lo,hi (use --window=-8,8)",
    )
    p.add_argument("--degree", type=int, default=d(8), help="weighted tau degree")
    if suppress:
        p.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                       help="machine-readable output")
    else:
        p.add_argument("--json", action="store_true", help="machine-readable output")


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="opertau",
        description="exact computations with microdifferential operators, "
        "KdV flows, tau functions and Hecke structures",
    )
    _add_common(p, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _add_common(common, suppress=True)
    sub = p.add_subparsers(dest="command", required=True, parser_class=(
        lambda **kw: argparse.ArgumentParser(parents=[common], **kw)
    ))

    s = sub.add_parser("root", help="Schur n-th root of a monic operator")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("expression")

    s = sub.add_parser("miura", help="Miura transform of chi data")
    s.add_argument("file", help="JSON MiuraOper")

    s = sub.add_parser("kdv-flow", help="Lax right-hand side of a flow")
    s.add_argument("--n", type=int, default=2)
    s.add_argument("--r", type=int, required=True)
    s.add_argument("file", nargs="?", help="JSON ScalarOper; default d^n + t")

    s = sub.add_parser("kdv-conserved", help="conserved density res L^{s/n}")
    s.add_argument("--n", type=int, default=2)
    s.add_argument("--s", type=int, required=True, dest="s_index")
    s.add_argument("file", nargs="?", help="JSON ScalarOper; default d^n + t")

    s = sub.add_parser("tau", help="Pluecker-Schur tau of a frame")
    s.add_argument("--frame", required=True, help="JSON frame file")

    s = sub.add_parser("hirota-check", help="KP Hirota residual of a tau")
    s.add_argument("--tau", required=True, help="JSON TimesSeries file")

    s = sub.add_parser("toda-tau", help="two-sided Toda tau from pairs")
    s.add_argument("--pairs", required=True, help="JSON [[a,p,q], ...] file")
    s.add_argument("--cutoff", type=int, default=6)

    s = sub.add_parser("hecke-verify", help="verify affine Hecke relations")
    s.add_argument("--n", type=int, default=2)
    s.add_argument("--N", type=int, default=3, dest="factors")
    s.add_argument("--zrange", type=int, default=2)

    s = sub.add_parser("bc-curve", help="Burchnall-Chaundy relation of a pair")
    s.add_argument("--p", required=True, help="file with operator expression")
    s.add_argument("--q", required=True, help="file with operator expression")
    s.add_argument("--bound", type=int, default=8)

    s = sub.add_parser("krichever", help="Grassmannian point of an oper")
    s.add_argument("--oper", required=True, help="JSON ScalarOper file")

    s = sub.add_parser("main-check", help="Miura/flag/Grassmannian round trip")
    s.add_argument("--miura", required=True, help="JSON MiuraOper file")

    return p


def _emit(args, report: dict) -> None:
    report.setdefault("order", args.order)
    report.setdefault("depth", args.depth)
    report.setdefault("window", args.window)
    report.setdefault("degree", args.degree)
    if args.json:
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        for k in sorted(report):
            print(f"{k}: {report[k]}")


def _load(path: str) -> dict:
    with open(path) as fh:
        return json.load(fh)


def _window(args) -> tuple[int, int]:
    lo, hi = (int(x) for x in args.window.split(","))
    return lo, hi


def _default_oper(n: int, order: int):
    from .oper import ScalarOper
    from .series import TruncSeries, tpoly

    qs = [TruncSeries.zero(order) for _ in range(n - 1)]
    qs.append(tpoly({1: -1}, order))  # L = d^n + t
    return ScalarOper(n, tuple(qs))


def _run(args) -> int:
    if args.command == "root":
        A = parse_operator(args.expression, order=args.order)
        R = nth_root(A, args.n)
        back = R
        for _ in range(args.n - 1):
            from .psido import compose

            back = compose(back, R)
        _emit(
            args,
            {
                "root": jsonio.psido_to_json(R),
                "text": print_operator(R),
                "recomposition_matches": back.agrees(A),
            },
        )
        return 0
    if args.command == "miura":
        M = jsonio.miura_from_json(_load(args.file))
        S = miura_transform(M)
        _emit(args, {"scalar_oper": jsonio.scalar_oper_to_json(S)})
        return 0
    if args.command == "kdv-flow":
        S = (
            jsonio.scalar_oper_from_json(_load(args.file))
            if args.file
            else _default_oper(args.n, args.order)
        )
        rhs = lax_rhs(S, args.r)
        _emit(
            args,
            {
                "stationary": rhs.operator.is_zero,
                "delta_q": [jsonio.series_to_json(s) for s in rhs.delta_q],
            },
        )
        return 0
    if args.command == "kdv-conserved":
        S = (
            jsonio.scalar_oper_from_json(_load(args.file))
            if args.file
            else _default_oper(args.n, args.order)
        )
        rho = conserved_density(S, args.s_index)
        _emit(args, {"density": jsonio.series_to_json(rho)})
        return 0
    if args.command == "tau":
        W = jsonio.frame_from_json(_load(args.frame))
        tau = tau_schur(W, args.degree)
        _emit(args, {"tau": jsonio.times_to_json(tau), "virtdim": W.virtdim})
        return 0
    if args.command == "hirota-check":
        tau = jsonio.times_from_json(_load(args.tau))
        bound = tau.bound if tau.bound is not None else args.degree + 4
        residual = hirota_residual(tau, bound - 4)
        _emit(
            args,
            {
                "residual": jsonio.times_to_json(residual),
                "is_zero": residual.is_zero,
                "checked_degree": bound - 4,
            },
        )
        return 0
    if args.command == "toda-tau":
        pairs = [
            (Fraction(a), Fraction(p), Fraction(q))
            for (a, p, q) in _load(args.pairs)
        ]
        tau = toda_tau(pairs, args.degree, cutoff=args.cutoff)
        _emit(args, {"tau": jsonio.times_to_json(tau), "cutoff": args.cutoff})
        return 0
    if args.command == "hecke-verify":
        win = TensorWindow(args.n, args.factors, (-args.zrange, args.zrange))
        results = verify_relations(win)
        report = {name: ok for name, ok in results}
        ok = all(report.values())
        if args.json:
            _emit(args, {"relations": report, "all_hold": ok})
        else:
            for name, good in results:
                print(f"{'PASS' if good else 'FAIL'}  {name}")
            print(f"all_hold: {ok}")
        return 0 if ok else 4
    if args.command == "bc-curve":
        with open(args.p) as fh:
            P = parse_operator(fh.read(), order=args.order)
        with open(args.q) as fh:
            Q = parse_operator(fh.read(), order=args.order)
        rel = bc_relation(P, Q, args.bound)
        if rel is None:
            _emit(args, {"relation": None})
        else:
            _emit(
                args,
                {
                    "relation": [
                        {"x": a, "y": b, "coef": jsonio.fraction_to_json(c)}
                        for (a, b), c in rel.coeffs
                    ],
                    "text": repr(rel),
                },
            )
        return 0
    if args.command == "krichever":
        S = jsonio.scalar_oper_from_json(_load(args.oper))
        window = _window(args)
        W = krichever_point(S, window)
        _emit(
            args,
            {
                "frame": jsonio.frame_to_json(W),
                "virtdim": W.virtdim,
                "n_reduced": n_reduction_holds(W, S.n),
            },
        )
        return 0
    if args.command == "main-check":
        M = jsonio.miura_from_json(_load(args.miura))
        window = _window(args)
        report = main_theorem_check(M, window, args.degree)
        _emit(
            args,
            {
                "frames_match": report.frames_match,
                "hirota_zero": report.hirota_zero,
                "reduction_constant": report.reduction_constant,
                "annihilators_transported": report.annihilators_transported,
                "all_passed": report.all_passed,
            },
        )
        return 0 if report.all_passed else 4
    raise InvariantViolation(f"unhandled command {args.command}")


def run(argv: list[str]) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    try:
        with configure_pole_floor(min(-16, args.depth * 2)):
            with configure_tail_depth(args.depth):
                return _run(args)
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return 2
    except InvariantViolation as e:
        print(f"internal invariant breach: {e}", file=sys.stderr)
        return 4
    except OpertauError as e:
        print(f"precondition violated: {e.__class__.__name__}: {e}", file=sys.stderr)
        return 3
    except FileNotFoundError as e:
        print(f"cannot read input: {e}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
