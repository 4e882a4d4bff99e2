"""Command-line interface: ``stardisc <subcommand> [options]``.

Exit codes: 0 success, 1 internal error (including a failed audit),
2 usage or validation error, 3 regime or capacity refusal.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from typing import List, Optional

from . import bounds, covers, discrepancy, montecarlo
from .core import PointSet
from .errors import CapacityError, InputError, TrivialRegimeError
from .io import dumps_pointset, read_pointset, write_brackets, write_pointset

SCHEMA = "stardisc/1"
EXIT_OK, EXIT_INTERNAL, EXIT_USAGE, EXIT_REFUSED = 0, 1, 2, 3

DEFAULT_Q_LIST = "0.01,0.5,0.9,0.99,0.999"
DEFAULT_S_LIST = "10,100"


def _float_list(text: str) -> List[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers: {exc}") from None


def _int_list(text: str) -> List[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers: {exc}") from None


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return value


def _probability(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from None
    if not 0.0 < value < 1.0:
        raise argparse.ArgumentTypeError(f"q must lie in the open interval (0, 1), got {text}")
    return value


def _delta(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from None
    if not 0.0 < value <= 1.0:
        raise argparse.ArgumentTypeError(f"delta must lie in (0, 1], got {text}")
    return value


def _positive_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from None
    if not value > 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return value


def _parallelism(text: str):
    return "auto" if text == "auto" else _positive_int(text)


def _emit_json(payload: dict, out):
    payload = {"schema": SCHEMA, **payload}
    json.dump(payload, out, indent=2, sort_keys=False)
    out.write("\n")


def _rows(out, rows):
    """Aligned two-column text."""
    width = max(len(k) for k, _ in rows)
    for k, v in rows:
        out.write(f"{k.ljust(width)}  {v}\n")


def cmd_bound(args, out):
    fn = bounds.corollary_bound if args.uniform else bounds.theorem_bound
    value = fn(args.q, args.s, args.n)
    coef = value / (args.s / args.n) ** 0.5
    threshold = bounds.regime_threshold(args.q, args.s)
    regime = "trivial" if args.n < threshold else "nontrivial"
    payload = {
        "inputs": {"q": args.q, "s": args.s, "N": args.n},
        "form": "corollary" if args.uniform else "theorem",
        "bound": value,
        "coefficient": coef,
        "regime": regime,
        "regime_threshold": threshold,
        "vacuous": value >= 1.0,
    }
    if args.format == "json":
        _emit_json(payload, out)
    else:
        _rows(out, [
            ("form", payload["form"]),
            ("bound", f"{value:.4f}"),
            ("coefficient", f"{bounds.round_half_up(coef):.2f}"),
            ("regime", f"{regime} (threshold N >= {threshold:.2f})"),
        ])
    return EXIT_OK


def cmd_table(args, out):
    raw = bounds.coefficient_table(args.q_list, args.s_list)
    if args.format == "json":
        _emit_json({
            "q": args.q_list,
            "s": args.s_list,
            "coefficients": raw,
            "display": [[bounds.round_half_up(v) for v in row] for row in raw],
        }, out)
    elif args.format == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["s", "q", "coefficient"])
        for s, row in zip(args.s_list, raw):
            for q, v in zip(args.q_list, row):
                writer.writerow([s, repr(q), repr(v)])
    else:
        head = ["q"] + [f"{q:g}" for q in args.q_list]
        body = [[f"c(q,{s})"] + [f"{bounds.round_half_up(v):.2f}" for v in row]
                for s, row in zip(args.s_list, raw)]
        widths = [max(len(r[i]) for r in [head] + body) for i in range(len(head))]
        for r in [head] + body:
            out.write("  ".join(c.rjust(w) for c, w in zip(r, widths)) + "\n")
    return EXIT_OK


def cmd_inverse(args, out):
    payload = {
        "inputs": {"s": args.s, "eps": args.eps, "q": args.q},
        "existence_N": bounds.inverse_discrepancy_existence(args.s, args.eps),
    }
    if args.q is not None:
        payload["theorem_N"] = bounds.inverse_discrepancy_theorem(args.q, args.s, args.eps)
    if args.format == "json":
        _emit_json(payload, out)
    else:
        rows = [("existence N (c_abs=10)", str(payload["existence_N"]))]
        if "theorem_N" in payload:
            rows.append((f"N with probability >= {args.q}", str(payload["theorem_N"])))
        _rows(out, rows)
    return EXIT_OK


def cmd_disc(args, out):
    P = read_pointset(args.input)
    result = discrepancy.star_discrepancy(P, method=args.method, delta=args.delta,
                                          budget=args.budget)
    payload = {"inputs": {"file": str(args.input), "s": P.dim, "N": P.n}, **result.to_dict()}
    if args.format == "json":
        _emit_json(payload, out)
    else:
        rows = [("method", result.method), ("value", repr(result.value))]
        if result.delta is not None:
            rows.append(("bracket", f"[{result.value!r}, {result.upper!r}]"))
        rows.append(("witness", " ".join(repr(c) for c in result.witness.coords)))
        _rows(out, rows)
    return EXIT_OK


def cmd_cover(args, out):
    target = open(args.output, "w", encoding="utf-8", newline="\n") if args.output else out
    try:
        if args.bracket:
            cover = covers.equidistant_bracketing_cover(args.s, args.delta, budget=args.budget)
            lower, upper = cover.corners()
            target.write(f"# {args.delta}-bracketing cover, M={cover.resolution} cells per axis\n")
            write_brackets(lower, upper, target)
        else:
            cover = covers.equidistant_cover(args.s, args.delta, budget=args.budget)
            P = PointSet(cover.members)
            target.write(dumps_pointset(
                P, comment=f"{args.delta}-cover, M={cover.resolution} cells per axis"))
    finally:
        if args.output:
            target.close()
    return EXIT_OK


def cmd_chain(args, out):
    if len(args.x) != args.s:
        raise InputError(f"--x has {len(args.x)} coordinates, expected --s {args.s}")
    decomposition = covers.build_chain(args.x, args.k, budget=args.budget)
    pieces = decomposition.pieces()
    payload = {
        "inputs": {"s": args.s, "K": args.k, "x": list(args.x)},
        "chain": [list(p.coords) for p in decomposition.chain],
        "measures": [d.measure for d in pieces],
        "measure_bounds": [2.0**-k for k in range(args.k + 1)],
    }
    if args.format == "json":
        _emit_json(payload, out)
    else:
        for k, p in enumerate(decomposition.chain):
            line = f"p_{k:<3d} " + " ".join(f"{c:.6g}" for c in p.coords)
            if k <= args.k:
                line += f"   measure(piece {k}) = {pieces[k].measure:.6g} <= {2.0**-k:g}"
            out.write(line + "\n")
    return EXIT_OK


def cmd_audit(args, out):
    report = bounds.audit_proof(args.q, args.s, args.n)
    if args.format == "json":
        _emit_json({k: v for k, v in report.to_dict().items() if k != "schema"}, out)
    else:
        k = report.constants
        out.write(f"q={k.q} s={k.s} N={k.N} L={k.L:.6g} K={k.K}\n")
        width = max(len(c.name) for c in report.checks)
        for c in report.checks:
            mark = "PASS" if c.passed else "FAIL"
            out.write(f"{mark}  {c.name.ljust(width)}  lhs={c.lhs:.10g}  rhs={c.rhs:.10g}\n")
        out.write(f"overall: {'PASS' if report.overall else 'FAIL'}\n")
    return EXIT_OK if report.overall else EXIT_INTERNAL


def cmd_generate(args, out):
    P = montecarlo.generate_uniform(args.s, args.n, args.seed, args.trial)
    comment = f"seed={args.seed} trial={args.trial} generator={montecarlo.GENERATOR}"
    if args.output:
        write_pointset(P, args.output, comment=comment)
    else:
        out.write(dumps_pointset(P, comment=comment))
    return EXIT_OK


def cmd_verify(args, out):
    cfg = montecarlo.ExperimentConfig(
        s=args.s, N=args.n, q=args.q, trials=args.trials, seed=args.seed,
        method=args.method, delta=args.delta, parallelism=args.parallelism,
        ci_level=args.ci_level, budget=args.budget,
    )
    report = montecarlo.run_experiment(cfg)
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["trial_index", "D", "upper", "pass"])
            for r in report.trial_results:
                writer.writerow([r.trial, repr(r.value), repr(r.upper), int(r.passed)])
    if args.format == "json":
        _emit_json({k: v for k, v in report.to_dict().items() if k != "schema"}, out)
    else:
        summ = report.summary
        _rows(out, [
            ("threshold", f"{report.threshold:.6g}" + ("  (cover surrogate)" if report.surrogate else "")),
            ("passed", f"{report.pass_count}/{cfg.trials}"),
            ("empirical probability", f"{report.empirical_probability:.4f}"),
            (f"{cfg.ci_level:g} interval", f"[{report.ci_low:.4f}, {report.ci_high:.4f}]"),
            ("scaled D* min/med/max", f"{summ['min']:.4f} / {summ['median']:.4f} / {summ['max']:.4f}"),
            ("scaled D* mean", f"{summ['mean']:.4f}"),
        ])
    if report.violates_theorem:
        sys.stderr.write("error: empirical pass rate is confidently below q\n")
        return EXIT_INTERNAL
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stardisc",
        description="Star discrepancy of random point sets: bounds, covers, audits, experiments.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, formats=("text", "json")):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        p.add_argument("--format", choices=formats, default="text")
        return p

    def budget_flag(p):
        p.add_argument("--budget", type=_positive_int, default=None,
                       help="work budget in elementary steps (default: $STARDISC_BUDGET or 1e9)")

    p = add("bound", cmd_bound, "discrepancy bound holding with probability >= q")
    p.add_argument("--q", type=_probability, required=True)
    p.add_argument("--s", type=_positive_int, required=True)
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--uniform", action="store_true", help="dimension-uniform form")

    p = add("table", cmd_table, "coefficient table c(q, s)", formats=("text", "json", "csv"))
    p.add_argument("--q-list", type=_float_list, default=_float_list(DEFAULT_Q_LIST))
    p.add_argument("--s-list", type=_int_list, default=_int_list(DEFAULT_S_LIST))

    p = add("inverse", cmd_inverse, "number of points needed for discrepancy eps")
    p.add_argument("--s", type=_positive_int, required=True)
    p.add_argument("--eps", type=_positive_float, required=True)
    p.add_argument("--q", type=_probability, default=None)

    p = add("disc", cmd_disc, "star discrepancy of a point-set file")
    p.add_argument("--input", required=True)
    p.add_argument("--method", choices=("exact", "cover"), default="exact")
    p.add_argument("--delta", type=_delta, default=None)
    budget_flag(p)

    p = add("cover", cmd_cover, "write an equidistant delta-cover or bracketing cover")
    p.add_argument("--s", type=_positive_int, required=True)
    p.add_argument("--delta", type=_delta, required=True)
    p.add_argument("--bracket", action="store_true")
    p.add_argument("--output", default=None)
    budget_flag(p)

    p = add("chain", cmd_chain, "dyadic chain decomposition of a point")
    p.add_argument("--s", type=_positive_int, required=True)
    p.add_argument("--k", type=_positive_int, required=True)
    p.add_argument("--x", type=_float_list, required=True)
    budget_flag(p)

    p = add("audit", cmd_audit, "re-check every inequality of the constant chain")
    p.add_argument("--q", type=_probability, required=True)
    p.add_argument("--s", type=_positive_int, required=True)
    p.add_argument("--n", type=_positive_int, required=True)

    p = add("generate", cmd_generate, "write a seeded uniform random point set")
    p.add_argument("--s", type=_positive_int, required=True)
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--trial", type=int, default=0)
    p.add_argument("--output", default=None)

    p = add("verify", cmd_verify, "Monte Carlo check of the probability bound")
    p.add_argument("--s", type=_positive_int, required=True)
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--q", type=_probability, required=True)
    p.add_argument("--trials", type=_positive_int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--method", choices=("exact", "cover"), default="exact")
    p.add_argument("--delta", type=_delta, default=None)
    p.add_argument("--parallelism", type=_parallelism, default=1)
    p.add_argument("--ci-level", type=_probability, default=0.99)
    p.add_argument("--csv", default=None, help="write per-trial results to this CSV file")
    budget_flag(p)
    return parser


def main(argv: Optional[List[str]] = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except TrivialRegimeError as exc:
        sys.stderr.write(f"error: {exc}\nthreshold: {exc.threshold!r}\n")
        return EXIT_REFUSED
    except CapacityError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_REFUSED
    except (InputError, FileNotFoundError, IsADirectoryError, PermissionError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except Exception as exc:  # noqa: BLE001
        sys.stderr.write(f"internal error: {type(exc).__name__}: {exc}\n")
        return EXIT_INTERNAL


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
