"""Command-line front end.

Exit codes: ``analyze`` returns 0 / 1 / 2 for strongly stable / not strongly
stable / undetermined; the other commands return 0 on success and 1 on a
failed check. Usage errors and bad input exit with 3.
"""

from __future__ import annotations

import argparse
import re
import sys
from pathlib import Path

from . import fixtures
from .classify import NOTE_COUNTEREXAMPLE, Status, classify
from .energy import energy_accuracy, expand_energy, leading_data
from .polynomial import (
    ButcherTableau,
    StabilityPolynomial,
    compose_steps,
    format_rational,
    linear_order,
    load_tableau,
    tableau_stability_coefficients,
)
from .presets import UnknownPresetError, preset, preset_polynomial
from .report import (
    CSV_FIELDS,
    analyze,
    compare_row,
    csv_row,
    parse_alpha,
    render_text,
    sig6,
    to_csv,
    to_json,
)
from . import verify as vf

EXIT_ERROR = 3
_EXIT_BY_STATUS = {Status.STRONGLY_STABLE: 0, Status.NOT_STRONGLY_STABLE: 1, Status.UNDETERMINED: 2}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _common(suppress: bool) -> argparse.ArgumentParser:
    # subcommands re-declare the global flags with SUPPRESS so they may follow
    # the subcommand without clobbering values given before it
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--format", choices=["text", "json", "csv"],
                   default=argparse.SUPPRESS if suppress else "text")
    p.add_argument("--quiet", action="store_true",
                   default=argparse.SUPPRESS if suppress else False)
    return p


def _method_args(p: argparse.ArgumentParser, tableau: bool = True):
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--preset", help="named method, e.g. taylor(4), ssprk(10,4), pair4(3)")
    src.add_argument("--alpha", help='stability polynomial coefficients, e.g. "1, 1, 1/2"')
    if tableau:
        src.add_argument("--tableau", type=Path, help="tableau file (JSON)")
    p.add_argument("--which", choices=["main", "embedded"], default="main",
                   help="weights to use for tableaux and pair presets")
    p.add_argument("--steps", type=int, default=1, help="compose m steps into one map")


def resolve_method(args) -> tuple[StabilityPolynomial, dict]:
    """The (possibly composed) polynomial and a descriptor; the descriptor's
    ``order`` is the linear order of a single step."""
    if args.steps < 1:
        raise UsageError("--steps must be >= 1")
    tableau_path = getattr(args, "tableau", None)
    if args.preset:
        obj = preset(args.preset)
        if isinstance(obj, ButcherTableau):
            r = preset_polynomial(args.preset, args.which)
        else:
            r = obj
        method = {"source": "preset", "name": r.label()}
    elif args.alpha is not None:
        r = StabilityPolynomial.from_coefficients(parse_alpha(args.alpha))
        method = {"source": "alpha", "name": r.label()}
    else:
        t = load_tableau(tableau_path)
        r = tableau_stability_coefficients(t, args.which)
        method = {"source": "tableau", "name": r.label(), "path": str(tableau_path),
                  "which": args.which}
    method["order"] = linear_order(r)
    if args.steps > 1:
        r = compose_steps(r, args.steps)
        method["name"] = r.label()
    method["steps"] = args.steps
    return r, method


def _emit(args, text: str):
    if not args.quiet:
        print(text)


def cmd_analyze(args) -> int:
    r, method = resolve_method(args)
    rep, verdict = analyze(r, method, order=method["order"])
    if args.format == "json":
        _emit(args, to_json(rep.to_dict()))
    elif args.format == "csv":
        _emit(args, to_csv([csv_row(rep)], CSV_FIELDS).rstrip("\n"))
    else:
        _emit(args, render_text(rep))
    return _EXIT_BY_STATUS[verdict.status]


_ORDERS = re.compile(r"(\d+)(?:\.\.(\d+))?")


def _parse_orders(text: str) -> list[int]:
    out = []
    for part in text.split(","):
        m = _ORDERS.fullmatch(part.strip())
        if not m:
            raise UsageError(f"bad order range {part!r}; use e.g. 1..12 or 3,7,11")
        lo = int(m.group(1))
        hi = int(m.group(2) or lo)
        out.extend(range(lo, hi + 1))
    return out


def _row_polynomial(name: str) -> tuple[StabilityPolynomial, int]:
    base, _, power = name.partition("^")
    r = preset(base)
    return (compose_steps(r, int(power)) if power else r), linear_order(r)


def _tableau_file(directory: Path, pair: str) -> Path | None:
    # pair looks like "pair5(4)"
    m = re.fullmatch(r"pair(\d+)\((\d+)\)", pair)
    stems = [pair]
    if m:
        stems += [f"pair{m.group(1)}_{m.group(2)}", f"pair{m.group(1)}-{m.group(2)}"]
    for stem in stems:
        path = directory / f"{stem}.json"
        if path.exists():
            return path
    return None


def table_results(selector: str, orders: list[int] | None = None,
                  tableau_dir: Path | None = None) -> list[dict]:
    """Compute every row of a table and compare it with the reference values."""
    if selector not in fixtures.TABLES:
        raise UsageError(f"unknown table {selector!r}; choose from {', '.join(fixtures.TABLES)}")
    rows = list(fixtures.TABLES[selector])
    if selector == "linear" and orders is not None:
        by_p = {int(row.method[7:-1]): row for row in rows}
        missing = [p for p in orders if p not in by_p]
        if missing:
            raise UsageError(f"no reference rows for orders {missing} (available 1..12)")
        rows = [by_p[p] for p in orders]

    results = []
    for row in rows:
        r, order = _row_polynomial(row.method)
        rep, _ = analyze(r, {"name": row.method}, order=order)
        results.append({"row": row, "report": rep, "mismatches": compare_row(rep, row)})

    if selector == "pairs":
        for row in fixtures.EXTERNAL_PAIRS:
            pair, _, which = row.method.partition(".")
            path = _tableau_file(tableau_dir, pair) if tableau_dir else None
            if path is None:
                results.append({"row": row, "report": None, "mismatches": [],
                                "status": "tableau unavailable"})
                continue
            t = load_tableau(path)
            r = tableau_stability_coefficients(t, which)
            rep, _ = analyze(r, {"name": row.method, "path": str(path)})
            bad = compare_row(rep, row)
            if row.stages is not None and t.stages != row.stages:
                bad.append(f"stages: got {t.stages}, expected {row.stages}")
            if row.order is not None and rep.p != row.order:
                bad.append(f"linear order: got {rep.p}, expected {row.order}")
            results.append({"row": row, "report": rep, "mismatches": bad})
    return results


def cmd_tables(args) -> int:
    orders = _parse_orders(args.orders) if args.orders else None
    results = table_results(args.selector, orders, args.tableau_dir)
    failed = any(res["mismatches"] for res in results)

    if args.format == "json":
        payload = []
        for res in results:
            entry = {"method": res["row"].method}
            if res["report"] is None:
                entry["status"] = res.get("status")
            else:
                entry["report"] = res["report"].to_dict()
                if args.check:
                    entry["mismatches"] = res["mismatches"]
            if res["row"].erratum:
                entry["erratum"] = res["row"].erratum
            payload.append(entry)
        _emit(args, to_json(payload))
    elif args.format == "csv":
        out = []
        for res in results:
            if res["report"] is None:
                out.append({"method": res["row"].method, "notes": res.get("status")})
            else:
                row = csv_row(res["report"])
                if args.check:
                    row["check"] = "; ".join(res["mismatches"]) or "ok"
                out.append(row)
        fields = CSV_FIELDS + (["check"] if args.check else [])
        _emit(args, to_csv(out, fields).rstrip("\n"))
    else:
        lines = [f"{'method':<20} {'k*':>3} {'beta_k*':>22} {'SS':>4}  eig(Gamma*)"]
        for res in results:
            rep = res["report"]
            name = res["row"].method
            if rep is None:
                lines.append(f"{name:<20} {res.get('status')}")
                continue
            lines.append(f"{name:<20} {rep.k_star:>3} {format_rational(rep.beta_star):>22} "
                         f"{rep.mark:>4}  {'  '.join(sig6(x) for x in rep.eigenvalues)}")
            if res["row"].erratum:
                lines.append(f"{'':<20} note: reference {res['row'].erratum}")
            if args.check:
                for msg in res["mismatches"]:
                    lines.append(f"{'':<20} MISMATCH {msg}")
        if args.check:
            lines.append("check: FAIL" if failed else "check: pass")
        _emit(args, "\n".join(lines))
    return 1 if (args.check and failed) else 0


def build_system(args) -> vf.SemiNegativeSystem:
    if args.system == "rk4-counterexample":
        return vf.counterexample_rk4()
    if args.system == "upwind":
        return vf.make_upwind_advection(args.dim or 32)
    return vf.make_random_semi_negative(args.dim or 8, args.seed, args.dissipation)


def verify_expectation(verdict, sys: vf.SemiNegativeSystem, report: vf.SweepReport):
    """What the exact verdict predicts for this sweep, and whether the sweep agrees."""
    if sys.label == "rk4-counterexample" and NOTE_COUNTEREXAMPLE in verdict.notes:
        return "norm > 1 somewhere on the grid", bool(report.violations())
    if verdict.status is Status.STRONGLY_STABLE:
        ok = report.max_stable_tau is not None and report.max_stable_tau > 0
        return "stable for all small grid steps", ok
    if verdict.status is Status.NOT_STRONGLY_STABLE and sys.is_conserving():
        return "norm > 1 somewhere on the grid", bool(report.violations())
    return "none (verdict makes no prediction for this system)", True


def cmd_verify(args) -> int:
    r, method = resolve_method(args)
    sys_ = build_system(args)
    verdict = classify(r)
    rep = vf.stability_sweep(r, sys_, args.tau_min, args.tau_max, args.points)
    expectation, ok = verify_expectation(verdict, sys_, rep)
    payload = {
        "method": method,
        "system": sys_.label,
        "verdict": verdict.status.value,
        "expectation": expectation,
        "consistent": ok,
        **rep.to_dict(),
        "max_norm": rep.max_norm,
        "violations": rep.violations(),
    }
    if args.format == "json":
        _emit(args, to_json(payload))
    elif args.format == "csv":
        rows = [{"tau": t, "h_norm": v, "excess": v - 1} for t, v in zip(rep.tau_grid, rep.h_norms)]
        _emit(args, to_csv(rows, ["tau", "h_norm", "excess"]).rstrip("\n"))
    else:
        lines = [f"method        {method['name']}", f"system        {sys_.label}",
                 f"verdict       {verdict.status.value}",
                 f"{'tau':>12} {'|R|_H - 1':>14}"]
        lines += [f"{t:12.4e} {v - 1:14.4e}" for t, v in zip(rep.tau_grid, rep.h_norms)]
        lines.append(f"max stable tau {rep.max_stable_tau}")
        if rep.violations():
            lines.append(f"norm > 1 + 1e-9 at {len(rep.violations())} grid points, "
                         f"first at tau = {rep.violations()[0]:.4e}")
        lines.append(f"expectation   {expectation}")
        lines.append(f"consistent    {'yes' if ok else 'NO'}")
        _emit(args, "\n".join(lines))
    return 0 if ok else 1


def _parse_taus(text: str) -> list[float]:
    """Comma list (``0.2,0.1,0.05,0.025``) or geometric ``START:RATIO:COUNT``."""
    try:
        if ":" in text:
            start, ratio, count = text.split(":")
            return [float(start) * float(ratio) ** k for k in range(int(count))]
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"bad --taus {text!r}") from exc


def cmd_decay(args) -> int:
    if args.dissipation:
        raise UsageError("decay measurements need a conserving system; drop --dissipation")
    r, method = resolve_method(args)
    taus = _parse_taus(args.taus)
    fit = vf.energy_decay_order(r, args.seed, taus, n=args.dim, final_time=args.final_time)
    expected = energy_accuracy(leading_data(expand_energy(r)))
    ok = abs(fit.slope - expected) <= args.tolerance
    payload = {
        "method": method,
        "taus": list(fit.taus),
        "deficits": list(fit.deficits),
        "slope": fit.slope,
        "expected": expected,
        "energy_grows": fit.energy_grows,
        "pass": ok,
    }
    if args.format == "json":
        _emit(args, to_json(payload))
    elif args.format == "csv":
        rows = [{"tau": t, "deficit": d} for t, d in zip(fit.taus, fit.deficits)]
        _emit(args, to_csv(rows, ["tau", "deficit"]).rstrip("\n"))
    else:
        lines = [f"method    {method['name']}", f"{'tau':>12} {'|u0|^2 - |uN|^2':>18}"]
        lines += [f"{t:12.4e} {d:18.6e}" for t, d in zip(fit.taus, fit.deficits)]
        lines.append(f"slope     {fit.slope:.3f} (expected {expected} +/- {args.tolerance})")
        lines.append(f"energy    {'grows (deficit negative)' if fit.energy_grows else 'decays'}")
        lines.append(f"result    {'pass' if ok else 'FAIL'}")
        _emit(args, "\n".join(lines))
    return 0 if ok else 1


def cmd_counterexample(args) -> int:
    r, method = resolve_method(args)
    candidates = [vf.counterexample_rk4()]
    candidates += [vf.make_random_semi_negative(n, seed, 0.0)
                   for n in (3, 4, 6, 8) for seed in range(args.seeds)]
    found = vf.search_counterexample(r, candidates, args.tau_min, args.tau_max, args.points)
    payload = {"method": method, "searched": len(candidates), "found": found is not None}
    if found:
        sys_, rep = found
        payload.update(system=sys_.label, L=sys_.L.tolist(), H=sys_.H.tolist(),
                       first_violation_tau=rep.violations()[0], max_norm=rep.max_norm)
    if args.format == "json":
        _emit(args, to_json(payload))
    elif args.format == "csv":
        _emit(args, to_csv([payload], ["searched", "found", "system", "first_violation_tau",
                                       "max_norm"]).rstrip("\n"))
    else:
        if found:
            sys_, rep = found
            text = (f"{method['name']}: |R(tau L)|_H > 1 on {sys_.label}\n"
                    f"first violating tau {rep.violations()[0]:.4e}, "
                    f"max |R|_H - 1 = {rep.max_norm - 1:.4e}")
        else:
            text = (f"{method['name']}: no norm growth found on {len(candidates)} systems "
                    f"over tau in [{args.tau_min:g}, {args.tau_max:g}]")
        _emit(args, text)
    return 0 if found else 1


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rkenergy", parents=[_common(False)],
                     description="Strong stability of explicit Runge-Kutta methods "
                                 "for semi-negative linear systems.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    common = _common(True)

    p = sub.add_parser("analyze", parents=[common], help="energy equality and verdict")
    _method_args(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("tables", parents=[common], help="reproduce the reference tables")
    p.add_argument("selector", choices=list(fixtures.TABLES))
    p.add_argument("--orders", help="Taylor orders for the linear table, e.g. 1..12")
    p.add_argument("--check", action="store_true", help="compare with reference values")
    p.add_argument("--tableau-dir", type=Path,
                   help="directory with pairX(Y).json tableaux for the larger pairs")
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("verify", parents=[common], help="norm sweep on a concrete system")
    _method_args(p)
    p.add_argument("--system", choices=["random", "upwind", "rk4-counterexample"],
                   default="random")
    p.add_argument("--dim", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dissipation", type=float, default=0.0)
    p.add_argument("--tau-min", type=float, default=1e-4)
    p.add_argument("--tau-max", type=float, default=1e-1)
    p.add_argument("--points", type=int, default=40)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("decay", parents=[common], help="energy-accuracy slope")
    _method_args(p, tableau=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dim", type=int, default=8)
    p.add_argument("--taus", default="0.2:0.5:5", help="START:RATIO:COUNT or a comma list")
    p.add_argument("--final-time", type=float, default=1.0)
    p.add_argument("--tolerance", type=float, default=0.3)
    p.add_argument("--dissipation", type=float, default=0.0)
    p.set_defaults(func=cmd_decay)

    p = sub.add_parser("counterexample", parents=[common],
                       help="search systems on which one step grows the H-norm")
    _method_args(p)
    p.add_argument("--seeds", type=int, default=5, help="random systems per dimension")
    p.add_argument("--tau-min", type=float, default=1e-4)
    p.add_argument("--tau-max", type=float, default=1e-1)
    p.add_argument("--points", type=int, default=40)
    p.set_defaults(func=cmd_counterexample)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, UnknownPresetError, ValueError, OSError) as exc:
        print(f"rkenergy {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
