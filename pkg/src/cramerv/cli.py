"""Command-line interface: ``cramerv {compute,simulate,maximize,scan-phi}``.

Exit codes: 0 success, 1 usage error, 2 input or validation error,
3 enumeration budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .bounds import BudgetExceeded, certify_max, default_budget, sup_phi_square_scan
from .measures import (
    DegenerateDimensionError,
    ModelError,
    compute_all,
    model_from_name,
    modified_v_from_chi_square,
    v_from_chi_square,
)
from .simulation import GENERATORS, SimulationConfig, run_simulation
from .svg import render_histogram_svg
from .tables import TableError, parse_table

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def _nonnegative(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {v}")
    return v


def _seed(text: str) -> int:
    v = _nonnegative(text)
    if v >= 2**64:
        raise argparse.ArgumentTypeError("seed must fit in 64 bits")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cramerv", description="Chi-square based association statistics "
                "for contingency tables under an explicit expectation model.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("compute", help="statistics for one CSV table")
    c.add_argument("--input", default="-", help="CSV file, or - for stdin")
    c.add_argument("--model", required=True, choices=["independence", "uniform", "both"])
    c.add_argument("--format", default="text", choices=["text", "json"])

    s = sub.add_parser("simulate", help="Monte Carlo summaries of V and modified V")
    s.add_argument("--rows", type=_positive, required=True)
    s.add_argument("--cols", type=_positive, required=True)
    s.add_argument("--n", type=_positive, required=True)
    s.add_argument("--reps", type=_positive, required=True)
    s.add_argument("--seed", type=_seed, required=True)
    s.add_argument("--generator", required=True, choices=list(GENERATORS))
    s.add_argument("--model", required=True, choices=["independence", "uniform"])
    s.add_argument("--out", type=Path, help="report JSON path")
    s.add_argument("--samples", type=Path, help="per-draw CSV path")
    s.add_argument("--hist-csv", type=Path, help="histogram CSV of V")
    s.add_argument("--hist-svg", type=Path, help="histogram SVG of V")
    s.add_argument("--bins", type=_positive, default=20)

    m = sub.add_parser("maximize", help="certify the maximum chi-square exhaustively")
    m.add_argument("--rows", type=_positive, required=True)
    m.add_argument("--cols", type=_positive, required=True)
    m.add_argument("--n", type=_positive, required=True)
    m.add_argument("--model", required=True, choices=["independence", "uniform"])
    m.add_argument("--budget", type=_nonnegative)

    f = sub.add_parser("scan-phi", help="largest phi squared on a probability grid")
    f.add_argument("--rows", type=_positive, required=True)
    f.add_argument("--cols", type=_positive, required=True)
    f.add_argument("--grid", type=_positive, required=True)
    f.add_argument("--budget", type=_nonnegative)
    return p


def _budget(args) -> int:
    if args.budget is not None:
        return args.budget
    try:
        return default_budget()
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _f4(x) -> str:
    return "undefined" if x is None else f"{x:.4f}"


def _cmd_compute(args, out) -> int:
    try:
        if args.input == "-":
            text = sys.stdin.read()
        else:
            text = Path(args.input).read_text(encoding="utf-8")
    except OSError as exc:
        raise TableError(f"cannot read {args.input}: {exc.strerror}") from None
    table = parse_table(text)
    names = ["independence", "uniform"] if args.model == "both" else [args.model]
    results = [compute_all(table, model_from_name(name)) for name in names]

    if args.format == "json":
        if len(results) == 1:
            out.write(results[0].to_json() + "\n")
        else:
            out.write(json.dumps({r.model: r.to_dict() for r in results}) + "\n")
        return EXIT_OK

    out.write(f"table: {table.rows}x{table.cols}, n={table.total}\n")
    out.write(f"{'':<12}" + "".join(f"{r.model:>14}" for r in results) + "\n")
    for field in ("chi_square", "phi_square", "v", "modified_v"):
        out.write(f"{field:<12}" + "".join(f"{getattr(r, field):>14.4f}" for r in results) + "\n")
    return EXIT_OK


def _cmd_simulate(args, out) -> int:
    try:
        cfg = SimulationConfig(rows=args.rows, cols=args.cols, n=args.n, reps=args.reps,
                               seed=args.seed, generator=GENERATORS[args.generator],
                               model=model_from_name(args.model), bins=args.bins)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if min(cfg.rows, cfg.cols) < 2:
        raise UsageError("simulate needs at least 2 rows and 2 columns (V is undefined otherwise)")
    report = run_simulation(cfg)

    files = []
    if args.out:
        files.append((args.out, report.to_json()))
    if args.samples:
        files.append((args.samples, report.samples_csv()))
    if args.hist_csv:
        files.append((args.hist_csv, report.v_histogram.to_csv()))
    if args.hist_svg:
        title = f"Cramer's V, {cfg.rows}x{cfg.cols}, n={cfg.n}, {cfg.model.tag} model"
        files.append((args.hist_svg, render_histogram_svg(report.v_histogram.bins, title=title)))
    for path, content in files:
        try:
            path.write_text(content, encoding="utf-8")
        except OSError as exc:
            raise TableError(f"cannot write {path}: {exc.strerror}") from None

    c = report.config
    out.write(f"{c.rows}x{c.cols} tables, n={c.n}, reps={c.reps}, seed={c.seed}, "
              f"generator={args.generator}, model={c.model.tag}\n")
    out.write(report.summary_text())
    out.write(f"note: {report.note}\n")
    return EXIT_OK


def _cmd_maximize(args, out) -> int:
    model = model_from_name(args.model)
    cert = certify_max(args.rows, args.cols, args.n, model, budget=_budget(args))
    r, c, n = cert.rows, cert.cols, cert.n
    try:
        v = float(v_from_chi_square(cert.max_chi_square, n, r, c))
    except DegenerateDimensionError:
        v = None
    try:
        mv = float(modified_v_from_chi_square(cert.max_chi_square, n, r, c))
    except DegenerateDimensionError:
        mv = None

    out.write(f"{r}x{c} tables, n={n}, model={cert.model}\n")
    out.write(f"tables examined: {cert.tables_examined}\n")
    out.write(f"max chi_square: {_f4(cert.max_chi_square)}\n")
    out.write(f"max V: {_f4(v)}\n")
    out.write(f"max modified V: {_f4(mv)}\n")
    out.write("argmax:\n")
    for row in cert.argmax_table.tolist():
        out.write("  " + ",".join(str(x) for x in row) + "\n")
    out.write(f"claim {cert.claim_label} = {_f4(cert.theoretical_claim)}\n")
    out.write(f"verdict: {cert.verdict} {cert.claim_label}\n")
    return EXIT_OK


def _cmd_scan_phi(args, out) -> int:
    if args.rows < 2 or args.cols < 2:
        raise UsageError("scan-phi needs at least 2 rows and 2 columns")
    if args.grid < 2:
        raise UsageError("--grid must be >= 2")
    scan = sup_phi_square_scan(args.rows, args.cols, args.grid, budget=_budget(args))
    out.write(f"{scan.rows}x{scan.cols} probability grid 1/{scan.grid}\n")
    out.write(f"tables examined: {scan.tables_examined}\n")
    out.write(f"sup phi_square: {_f4(scan.sup_phi_square)}\n")
    out.write(f"ceiling min(r,c)-1: {scan.ceiling_min_dim}\n")
    out.write(f"ceiling rc-1: {scan.ceiling_cells}\n")
    out.write("argmax:\n")
    for row in scan.argmax.probs.tolist():
        out.write("  " + ",".join(_f4(x) for x in row) + "\n")
    return EXIT_OK


COMMANDS = {
    "compute": _cmd_compute,
    "simulate": _cmd_simulate,
    "maximize": _cmd_maximize,
    "scan-phi": _cmd_scan_phi,
}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"cramerv {args.command}: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"cramerv {args.command}: budget exceeded: enumeration needs "
              f"{exc.required} tables, budget is {exc.budget}", file=sys.stderr)
        return EXIT_BUDGET
    except (TableError, ModelError, DegenerateDimensionError) as exc:
        print(f"cramerv {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
