"""Command-line front end: ``martnuc <command> [flags]``.

Exit codes: 0 success, 1 domain error, 2 regression failure, 64 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

import numpy as np

from .errors import MartnucError
from .habit import habit_solutions, solve_volume_fractions
from .lattice import PRESETS, EnergyDensity, LatticeParams, check_assumptions, load_params, variants
from .maxdirs import classify_sphere
from .nucleation import corner_report
from .regression import verify_paper
from .specimen import Parallelepiped, classify_specimen
from .symmetry import build_symmetry_table
from .twinning import tabulated_pairs, twin

EXIT_OK, EXIT_DOMAIN, EXIT_REGRESSION, EXIT_USAGE = 0, 1, 2, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _variant(text: str) -> int:
    try:
        s = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"variant must be an integer, got {text!r}")
    if not 1 <= s <= 6:
        raise argparse.ArgumentTypeError("variant must lie in 1..6")
    return s


def _pair(text: str) -> tuple[int, int]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("pair must look like s,l")
    s, l = (_variant(p.strip()) for p in parts)
    if s == l:
        raise argparse.ArgumentTypeError("pair needs two different variants")
    return s, l


def _kappa(text: str) -> int:
    if text.strip() not in ("1", "+1", "-1"):
        raise argparse.ArgumentTypeError("kappa must be +1 or -1")
    return int(text)


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value <= 0:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return value


def _edges(text: str) -> np.ndarray:
    try:
        rows = [[float(x) for x in part.split(",")] for part in text.split(";")]
        arr = np.array(rows, dtype=float)
    except ValueError:
        raise argparse.ArgumentTypeError("edges must look like x,y,z;x,y,z;x,y,z")
    if arr.shape != (3, 3):
        raise argparse.ArgumentTypeError("edges need three vectors of three components")
    return arr


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("lattice parameters")
    g.add_argument("--preset", choices=sorted(PRESETS), default=None)
    g.add_argument("--alpha", type=float)
    g.add_argument("--beta", type=float)
    g.add_argument("--gamma", type=float)
    g.add_argument("--params-file", metavar="PATH")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", metavar="PATH")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="martnuc", description="Martensite twins, habit planes and corner nucleation.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("variants", parents=[common], help="variant stretch matrices and parameter checks")
    sub.add_parser("table1", parents=[common], help="cubic-symmetry conjugation table")

    p = sub.add_parser("twins", parents=[common], help="twin elements")
    p.add_argument("--pair", type=_pair)
    p.add_argument("--twin-type", choices=("I", "II"))

    p = sub.add_parser("habits", parents=[common], help="habit-plane solutions")
    p.add_argument("--pair", type=_pair, required=True)
    p.add_argument("--twin-type", choices=("I", "II"), default="II")
    p.add_argument("--branch", choices=("small", "large"))
    p.add_argument("--kappa", type=_kappa)

    p = sub.add_parser("classify-sphere", parents=[common], help="label sphere directions")
    p.add_argument("--variant", type=_variant, required=True)
    p.add_argument("--set", dest="sets", choices=("both", "M", "UM"), default="both")
    p.add_argument("--samples", type=_positive_int, default=10_000)
    p.add_argument("--seed", type=int, default=None)

    p = sub.add_parser("admissible", parents=[common], help="specimen admissibility")
    p.add_argument("--variant", type=_variant, required=True)
    p.add_argument("--edges", type=_edges, default=None, help="three edge vectors x,y,z;x,y,z;x,y,z")

    p = sub.add_parser("corners", parents=[common], help="nucleating corners")
    p.add_argument("--variant", type=_variant, required=True)
    p.add_argument("--depth", type=float, default=1.0)
    p.add_argument("--samples", type=_positive_int, default=1_000_000)
    p.add_argument("--seed", type=int, default=0)

    sub.add_parser("verify-paper", parents=[common], help="regression against reference values")
    return parser


def resolve_params(args) -> LatticeParams:
    explicit = [args.alpha, args.beta, args.gamma]
    chosen = sum([args.preset is not None, any(v is not None for v in explicit),
                  args.params_file is not None])
    if chosen > 1:
        raise UsageError("use only one of --preset, --alpha/--beta/--gamma, --params-file")
    if any(v is not None for v in explicit):
        if any(v is None for v in explicit):
            raise UsageError("--alpha, --beta and --gamma must be given together")
        try:
            return LatticeParams(*explicit)
        except ValueError as exc:
            raise UsageError(str(exc))
    if args.params_file is not None:
        try:
            return load_params(args.params_file)
        except (OSError, ValueError) as exc:
            raise UsageError(f"cannot read {args.params_file}: {exc}")
    return PRESETS[args.preset or "cualni-seiner"]


def _rows_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    if rows:
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: json.dumps(v) if isinstance(v, (list, dict)) else v
                             for k, v in row.items()})
    return buf.getvalue()


def _emit(payload, args, rows: list[dict] | None = None) -> None:
    if args.format == "csv":
        text = _rows_csv(rows if rows is not None else [payload])
    else:
        text = json.dumps(payload, indent=2) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_variants(args, params) -> int:
    vs = variants(params)
    rep = check_assumptions(params)
    payload = {
        "params": {"alpha": params.alpha, "beta": params.beta, "gamma": params.gamma},
        "variants": {str(s): vs[s].tolist() for s in range(1, 7)},
        "det": vs.det,
        "assumptions": {"A1": rep.a1, "A2": rep.a2, "A3": rep.a3, "A4": rep.a4,
                        "norm_check": rep.norm_check, "cof_norm": rep.cof_norm,
                        "a_minus_b": rep.a_minus_b, "boundary": list(rep.boundary)},
    }
    rows = [{"variant": s, "matrix": vs[s].tolist()} for s in range(1, 7)]
    _emit(payload, args, rows)
    return EXIT_OK


def cmd_table1(args, params) -> int:
    table = build_symmetry_table(variants(params))
    payload = {"table": table.entries.tolist(), "matches_reference": table.matches_fixture()}
    rows = [{"variant": s + 1, **{("1" if q == 0 else f"Q{q}"): int(table.entries[s, q])
                                  for q in range(24)}} for s in range(6)]
    _emit(payload, args, rows)
    return EXIT_OK


def cmd_twins(args, params) -> int:
    pairs = [args.pair] if args.pair else tabulated_pairs()
    kinds = [args.twin_type] if args.twin_type else ["I", "II"]
    records = [twin(params, s, l, k).to_json() for s, l in pairs for k in kinds]
    _emit({"twins": records}, args, records)
    return EXIT_OK


def cmd_habits(args, params) -> int:
    s, l = args.pair
    tw = twin(params, s, l, args.twin_type)
    inv = solve_volume_fractions(tw)
    branches = [args.branch] if args.branch else ["small", "large"]
    kappas = [args.kappa] if args.kappa else [1, -1]
    records = [habit_solutions(tw, b, k, inv).to_json(tw) for b in branches for k in kappas]
    payload = {"lambda_star": inv.lambda_star, "delta": inv.delta, "eta": inv.eta_ref,
               "habits": records}
    _emit(payload, args, records)
    return EXIT_OK


def cmd_classify_sphere(args, params) -> int:
    cloud = classify_sphere(args.variant, params, args.samples, args.seed, args.sets)
    summary = {"variant": args.variant, "set": args.sets, "samples": cloud.count,
               "seed": args.seed, "fractions": cloud.fractions()}
    if args.out:
        cloud.write_csv(args.out)
        summary["out"] = args.out
        sys.stdout.write(json.dumps(summary, indent=2) + "\n")
    elif args.format == "csv":
        buf = io.StringIO()
        buf.write("x,y,z,label\n")
        for p, lab in zip(cloud.points, cloud.labels):
            buf.write(f"{p[0]!r},{p[1]!r},{p[2]!r},{lab}\n")
        sys.stdout.write(buf.getvalue())
    else:
        sys.stdout.write(json.dumps(summary, indent=2) + "\n")
    return EXIT_OK


def cmd_admissible(args, params) -> int:
    box = (Parallelepiped.axis_aligned() if args.edges is None
           else Parallelepiped(np.zeros(3), args.edges))
    report = classify_specimen(args.variant, box, params).to_json()
    _emit(report, args, report["edges"])
    return EXIT_OK


def cmd_corners(args, params) -> int:
    try:
        density = EnergyDensity(args.depth)
    except ValueError as exc:
        raise UsageError(str(exc))
    report = corner_report(args.variant, params, density, args.samples, args.seed)
    _emit(report, args, report["candidates"])
    return EXIT_OK


def cmd_verify_paper(args, params) -> int:
    results = verify_paper(params)
    rows = [r.to_json() for r in results]
    if args.format == "json":
        _emit({"results": rows, "passed": sum(r.passed for r in results), "total": len(results)},
              args)
    else:
        _emit(None, args, rows)
    for r in results:
        mark = "PASS" if r.passed else "FAIL"
        sys.stderr.write(f"{mark}  {r.name}: expected {r.expected}, computed {r.computed}"
                         f"{'  (' + r.note + ')' if r.note else ''}\n")
    return EXIT_OK if all(r.passed for r in results) else EXIT_REGRESSION


COMMANDS = {
    "variants": cmd_variants,
    "table1": cmd_table1,
    "twins": cmd_twins,
    "habits": cmd_habits,
    "classify-sphere": cmd_classify_sphere,
    "admissible": cmd_admissible,
    "corners": cmd_corners,
    "verify-paper": cmd_verify_paper,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        params = resolve_params(args)
        return COMMANDS[args.command](args, params)
    except UsageError as exc:
        sys.stderr.write(f"martnuc: usage error: {exc}\n")
        return EXIT_USAGE
    except MartnucError as exc:
        sys.stderr.write(f"{exc.code}: {exc}\n")
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
