"""Command-line entry point: ``sosrank {analyze,verify,ballmap,fixtures,render}``.

Exit codes: 0 pass, 1 violation found, 2 usage or parse error, 3 incomplete
(budget exhausted).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import ballmaps, verify
from .combinatorics import macaulay_function
from .errors import BudgetExceeded, ParseError
from .formats import format_fraction, format_terms, form_to_json, parse_form
from .hermitian import (
    DEFAULT_AMBIGUOUS_CAP,
    PatternSystem,
    min_rank_witness,
    multiply_by_s,
    rank,
    signature_pair,
    sos_window_verdict,
    squared_norm_feasible,
)
from .ideal import beta_1_d, hilbert
from .newton import build_graph, connected_components, export_edge_list, pi_degree, render_diagram

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_INCOMPLETE = 0, 1, 2, 3
REPORT_SCHEMA = "sosrank.cli/1"


def _read_input(source: str) -> str:
    if source == "-":
        return sys.stdin.read()
    if os.path.isfile(source):
        with open(source, encoding="utf-8") as fh:
            return fh.read()
    return source


def _emit(obj: dict, text: str, as_json: bool) -> None:
    if as_json:
        print(json.dumps(obj, indent=2, sort_keys=True))
    else:
        print(text)


def analyze(text: str, n: int | None, *, with_min_rank: bool, cap: int) -> dict:
    q = parse_form(text, n)
    pattern = q.pattern()
    I_f, I_g, I_fg = pattern.ideals()
    d = q.degree + 1
    p = multiply_by_s(q)
    P, N = signature_pair(q)
    system = PatternSystem.of(pattern)
    comps = connected_components(build_graph(q))
    nodes = system.forced
    beta = {"alpha": beta_1_d(I_f) if P else 0, "beta": beta_1_d(I_g) if N else 0, "gamma": beta_1_d(I_fg)}
    h = {"f": hilbert(I_f, d) if P else 0, "g": hilbert(I_g, d) if N else 0, "fg": hilbert(I_fg, d)}
    betti = q.n * (P + N) - 2 * beta["gamma"] + beta["alpha"] + beta["beta"]
    sq_nonneg = all(v > 0 for v in p.coefficients.values())
    out = {
        "schema": REPORT_SCHEMA,
        "command": "analyze",
        "q": form_to_json(q),
        "n": q.n,
        "degree": q.degree,
        "d": d,
        "signature": [P, N],
        "hilbert": h,
        "betti": beta,
        "nodes": nodes,
        "rank_floor": macaulay_function(q.n, q.degree, P + N) - h["g"],
        "pi_degree": pi_degree(p),
        "components": len(comps),
        "connected": len(comps) == 1,
        "betti_rank_bound": betti,
        "sq": form_to_json(p),
        "rho_sq": rank(p),
        "sq_nonnegative": sq_nonneg,
        "containment": system.containment,
        "pattern_feasible": squared_norm_feasible(pattern) is not None,
    }
    if sq_nonneg:
        out["sos_verdict_for_q"] = sos_window_verdict(q.n, rank(p)).label
    if with_min_rank:
        rho, witness = min_rank_witness(pattern, cap=cap)
        out["min_rank"] = rho
        if rho is not None:
            out["min_rank_witness"] = form_to_json(witness)
            out["sos_verdict"] = sos_window_verdict(q.n, rho).label
    return out


def render_analysis(obj: dict) -> str:
    P, N = obj["signature"]
    h, b = obj["hilbert"], obj["betti"]
    d = obj["d"]
    lines = [
        f"n = {obj['n']}, degree of q = {obj['degree']} (d = {d})",
        f"signature (P, N) = ({P}, {N})",
        f"H_f({d}) = {h['f']}, H_g({d}) = {h['g']}, H_f+g({d}) = {h['fg']}",
        f"beta_1,{d}: alpha = {b['alpha']}, beta = {b['beta']}, gamma = {b['gamma']}",
        f"#(sq) = {obj['nodes']}",
        f"M(P+N) - H_g({d}) = {obj['rank_floor']}",
        f"pi(sq) = {obj['pi_degree']}",
        f"Gamma(q) connected: {'yes' if obj['connected'] else 'no'} ({obj['components']} components)",
        f"betti rank bound = {obj['betti_rank_bound']}",
        f"rho(sq) = {obj['rho_sq']}",
        f"sq coefficientwise nonnegative: {'yes' if obj['sq_nonnegative'] else 'no'}",
        f"(I_g)_{d} inside (I_f)_{d}: {'yes' if obj['containment'] else 'no'}",
        f"sign pattern squared-norm feasible: {'yes' if obj['pattern_feasible'] else 'no'}",
    ]
    if "sos_verdict_for_q" in obj:
        lines.append(f"SOS windows for rho(sq): {obj['sos_verdict_for_q']}")
    if "min_rank" in obj:
        lines.append(f"min_rank = {obj['min_rank'] if obj['min_rank'] is not None else 'infeasible'}")
        if "sos_verdict" in obj:
            lines.append(f"SOS windows for min_rank: {obj['sos_verdict']}")
    return "\n".join(lines)


def _cmd_analyze(args) -> int:
    try:
        obj = analyze(_read_input(args.polynomial), args.n, with_min_rank=args.min_rank, cap=args.cap)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_INCOMPLETE
    text = render_analysis(obj)
    if args.diagram or args.edges:
        from .formats import form_from_json

        q = form_from_json(obj["q"])
        if args.diagram:
            if q.n == 3:
                obj["diagram"] = render_diagram(q.pattern())
                text += "\n\n" + obj["diagram"]
            else:
                text += "\n\n(diagram rendering needs three variables)"
        if args.edges:
            obj["edges"] = export_edge_list(build_graph(q))
            text += "\n\n" + obj["edges"]
    _emit(obj, text, args.json)
    return EXIT_OK


def _cmd_verify(args) -> int:
    try:
        config = verify.SweepConfig(
            args.degree, mode=args.mode, samples=args.samples, workers=args.workers,
            seed=args.seed, ambiguous_cap=args.cap,
        )
    except verify.ConfigError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_USAGE
    reports = list(verify.sweep_squared_norm(config))
    if args.lp:
        reports.append(verify.sweep_lp_theorem(config))
    return _finish_reports(reports, args)


def _cmd_fixtures(args) -> int:
    return _finish_reports([verify.fixture_cases()], args)


def _finish_reports(reports, args) -> int:
    obj = {
        "schema": REPORT_SCHEMA,
        "reports": [r.to_dict() for r in reports],
        "digests": [r.digest() for r in reports],
    }
    _emit(obj, render_reports(obj), args.json)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(obj, fh, indent=2, sort_keys=True)
    return _exit_code(r["status"] for r in obj["reports"])


def _exit_code(statuses) -> int:
    statuses = list(statuses)
    if verify.FAIL in statuses:
        return EXIT_VIOLATION
    if verify.INCOMPLETE in statuses:
        return EXIT_INCOMPLETE
    return EXIT_OK


def render_reports(obj: dict) -> str:
    blocks = []
    for rep, digest in zip(obj["reports"], obj["digests"]):
        blocks.append(verify.render_report(rep) + f"\ndigest {digest}")
    return "\n\n".join(blocks)


def _cmd_render(args) -> int:
    try:
        obj = json.loads(_read_input(args.report))
        if obj.get("schema") != REPORT_SCHEMA or "reports" not in obj:
            raise ValueError("not a sweep report")
        for rep in obj["reports"]:
            verify.VerificationReport.from_dict(rep)
    except (ValueError, KeyError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(render_reports(obj))
    return _exit_code(r["status"] for r in obj["reports"])


def ballmap_report(n: int, d: int, budget: int) -> dict:
    res = ballmaps.proper_map_search(n, d, budget=budget)
    obj = {
        "schema": REPORT_SCHEMA,
        "command": "ballmap",
        "n": n,
        "d": d,
        "resolved": res.resolved,
        "k_min": res.k_min,
        "certified_lower_bound": res.lower_bound,
        "supports_examined": res.supports_examined,
        "solves": res.solves,
    }
    if res.witness is not None:
        k = res.k_min
        flip = ballmaps.homogenize_flip(res.witness.coefficients, n)
        obj.update(
            witness=[
                {"exponents": list(a), "num": c.numerator, "den": c.denominator}
                for a, c in res.witness.coefficients.items()
            ],
            witness_text=format_terms(res.witness.coefficients),
            components=ballmaps.map_components(res.witness),
            degree_bound=ballmaps.degree_bound_check(n, d, k),
            degree_bound_sharp=(n == 2 and d == 2 * k - 3),
            p=form_to_json(flip.p),
            rho_p=flip.rho,
            homogeneous_rank_bound=format_fraction(ballmaps.homogeneous_rank_bound(n, d)),
            homogeneous_rank_bound_holds=flip.rho >= ballmaps.homogeneous_rank_bound(n, d),
            top_coefficient=format_fraction(flip.top_coefficient),
        )
    return obj


def render_ballmap(obj: dict) -> str:
    n, d = obj["n"], obj["d"]
    if not obj["resolved"]:
        return (f"n = {n}, d = {d}: unresolved within budget; every support of size "
                f"< {obj['certified_lower_bound']} ruled out")
    lines = [
        f"n = {n}, d = {d}: k_min = {obj['k_min']} "
        f"(all {obj['supports_examined']} smaller or earlier supports examined, {obj['solves']} solved)",
        "witness:",
        obj["witness_text"],
        "map components: " + ", ".join(obj["components"]),
        f"degree bound holds: {'yes' if obj['degree_bound'] else 'no'}"
        + (" (sharp)" if obj["degree_bound_sharp"] else ""),
        f"rho(p) = {obj['rho_p']} >= {obj['homogeneous_rank_bound']}: "
        f"{'yes' if obj['homogeneous_rank_bound_holds'] else 'no'}",
        f"coefficient of x{n + 1}^{d} in p: {obj['top_coefficient']}",
    ]
    return "\n".join(lines)


def _cmd_ballmap(args) -> int:
    if args.n < 2 or args.d < 1:
        print("need --n >= 2 and --d >= 1", file=sys.stderr)
        return EXIT_USAGE
    obj = ballmap_report(args.n, args.d, args.budget)
    _emit(obj, render_ballmap(obj), args.json)
    if not obj["resolved"]:
        return EXIT_INCOMPLETE
    ok = obj["degree_bound"] and obj["homogeneous_rank_bound_holds"]
    return EXIT_OK if ok else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="machine-readable output")
    common.add_argument("--workers", type=int, default=argparse.SUPPRESS, help="worker processes for sweeps")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed for random sweeps")

    parser = argparse.ArgumentParser(prog="sosrank", parents=[common],
                                     description="Ranks of squared norms of diagonal Hermitian forms.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="analyse one polynomial q")
    p.add_argument("polynomial", help="file path, '-' for stdin, or inline text such as 'x1^2 - x1 x2 + x2^2'")
    p.add_argument("--n", type=int, default=None, help="number of variables (default: largest index used)")
    p.add_argument("--min-rank", action="store_true", help="also compute the minimum rank over magnitudes")
    p.add_argument("--diagram", action="store_true", help="ASCII Newton diagram (three variables)")
    p.add_argument("--edges", action="store_true", help="edge list of the Newton graph")
    p.add_argument("--cap", type=int, default=DEFAULT_AMBIGUOUS_CAP, help="ambiguous-set cap")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("verify", parents=[common], help="sweep sign patterns for n = 3")
    p.add_argument("--degree", type=int, required=True, help="degree d-1 of q")
    p.add_argument("--mode", choices=("exhaustive", "random"), default="exhaustive")
    p.add_argument("--samples", type=int, default=0)
    p.add_argument("--lp", action="store_true", help="also sweep the rank bound for arbitrary magnitudes")
    p.add_argument("--cap", type=int, default=DEFAULT_AMBIGUOUS_CAP, help="ambiguous-set cap")
    p.add_argument("--out", help="also write the JSON report to this file")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("ballmap", parents=[common], help="minimal proper monomial map search")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--budget", type=int, default=2_000_000, help="maximum supports examined")
    p.set_defaults(func=_cmd_ballmap)

    p = sub.add_parser("fixtures", parents=[common], help="recompute the five cubic case configurations")
    p.add_argument("--out", help="also write the JSON report to this file")
    p.set_defaults(func=_cmd_fixtures)

    p = sub.add_parser("render", parents=[common], help="re-render a saved JSON sweep report")
    p.add_argument("report", help="path to a report written with --out, or '-'")
    p.set_defaults(func=_cmd_render)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for name, default in (("json", False), ("workers", 1), ("seed", 0)):
        if not hasattr(args, name):
            setattr(args, name, default)
    if args.workers < 1:
        parser.error("--workers must be at least 1")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
