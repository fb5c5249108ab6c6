"""Command line front end: ``knotrep <subcommand> KNOT [options]``.

Negative parameters clash with option parsing; write ``p=-3,5,7`` or put ``--``
before the knot.
"""

from __future__ import annotations

import argparse
import re
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

from knotrep.angles import CentralCase
from knotrep.errors import InconsistentEnumeration, KnotrepError, RankAmbiguous
from knotrep.knot import PretzelKnot
from knotrep.report import (
    CLASS_COLUMNS,
    FORMATS,
    TABLE_COLUMNS,
    TANGENT_COLUMNS,
    audit,
    class_rows,
    dumps,
    invariants_dict,
    load_reference_tables,
    presentation_dict,
    render_markdown,
    render_rows,
    report_to_dict,
    sample_to_dict,
    table_rows,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INCONSISTENT = 3

SUBCOMMANDS = ("invariants", "enumerate", "table", "tangent", "report", "audit")

_NEGATIVE_KNOT = re.compile(r"^-\d+(,-?\d+)+$")


@dataclass(frozen=True)
class Command:
    subcommand: str
    knot: PretzelKnot
    format: str = "json"
    seed: int = 0
    attempts: int = 1000
    case: Optional[CentralCase] = None
    include_endpoints: bool = False


def _knot_arg(text: str) -> PretzelKnot:
    try:
        return PretzelKnot.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _case_arg(text: str) -> CentralCase:
    try:
        return CentralCase.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("knot", type=_knot_arg, help="pretzel parameters, e.g. 3,5,7 or p=-3,5,7")
    common.add_argument("--format", choices=FORMATS, default="json")
    common.add_argument("--seed", type=int, default=0, help="seed for the numeric closure solver")
    common.add_argument("--attempts", type=int, default=1000, help="random restarts for the closure solver")

    parser = argparse.ArgumentParser(
        prog="knotrep",
        description="Trace-zero SU(2) representations of pretzel knots.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)
    sub.add_parser("invariants", parents=[common], help="determinant, signature, Klassen count")
    sub.add_parser("enumerate", parents=[common], help="all conjugacy classes")
    table = sub.add_parser("table", parents=[common], help="candidate angle table of a central case")
    table.add_argument("--case", type=_case_arg, required=True, help="+1 or -1")
    table.add_argument("--all", dest="include_endpoints", action="store_true",
                       help="include tuples with an angle 0 or pi")
    sub.add_parser("tangent", parents=[common], help="dim H^1 at every class")
    sub.add_parser("report", parents=[common], help="enumeration, tangent spaces and audit")
    sub.add_parser("audit", parents=[common], help="compare with the embedded reference tables")
    return parser


def _protect_negative_knot(argv: Sequence[str]) -> list[str]:
    # "-3,5,7" would otherwise be read as an option
    return ["p=" + a if _NEGATIVE_KNOT.match(a) else a for a in argv]


def parse_command(argv: Optional[Sequence[str]] = None) -> Command:
    argv = sys.argv[1:] if argv is None else argv
    ns = build_parser().parse_args(_protect_negative_knot(argv))
    if ns.attempts < 1:
        build_parser().error("--attempts must be positive")
    return Command(
        subcommand=ns.subcommand,
        knot=ns.knot,
        format=ns.format,
        seed=ns.seed,
        attempts=ns.attempts,
        case=getattr(ns, "case", None),
        include_endpoints=getattr(ns, "include_endpoints", False),
    )


# ---------------------------------------------------------------------------


def _enumeration(cmd: Command) -> tuple[dict, list]:
    from knotrep.reps import enumerate_all, explore_numeric

    tables = load_reference_tables()
    report = enumerate_all(cmd.knot, reference_tables=tables)
    data = report_to_dict(report)
    if not report.complete:
        samples = explore_numeric(cmd.knot, attempts=cmd.attempts, seed=cmd.seed)
        data["numeric_samples"] = [sample_to_dict(s) for s in samples]
    return data, report.all_classes


def _tangent(cmd: Command, classes) -> list[dict]:
    from knotrep.tangent import tangent_rows

    return tangent_rows(classes, cmd.knot)


def _summary_markdown(data: dict) -> str:
    counts = data["counts"]
    lines = [f"# P({','.join(str(x) for x in data['knot'])})", ""]
    for key in ("abelian", "binary_dihedral", "non_binary_dihedral", "mirror_pairs", "total"):
        lines.append(f"- {key}: {counts[key]}")
    lines.append(f"- complete: {'yes' if data['complete'] else 'no'}")
    return "\n".join(lines) + "\n"


def _enumerate_text(cmd: Command, data: dict, classes) -> str:
    if cmd.format == "json":
        return dumps(data)
    rows = class_rows(classes)
    if cmd.format == "csv":
        return render_rows(rows, CLASS_COLUMNS, "csv")
    return _summary_markdown(data) + "\n" + render_markdown(rows, CLASS_COLUMNS)


def run(cmd: Command, out=None) -> int:
    out = out or sys.stdout
    k = cmd.knot
    if cmd.subcommand == "invariants":
        inv = invariants_dict(k)
        if cmd.format == "json":
            text = dumps(inv)
        else:
            cols = tuple(c for c in inv if c != "seifert_symmetrized")
            text = render_rows([dict(inv, knot=str(k))], cols, cmd.format)
    elif cmd.subcommand == "enumerate":
        data, classes = _enumeration(cmd)
        text = _enumerate_text(cmd, data, classes)
    elif cmd.subcommand == "table":
        rows = table_rows(k, cmd.case, include_endpoints=cmd.include_endpoints)
        text = render_rows(rows, TABLE_COLUMNS, cmd.format)
    elif cmd.subcommand == "tangent":
        data, classes = _enumeration(cmd)
        text = render_rows(_tangent(cmd, classes), TANGENT_COLUMNS, cmd.format)
    elif cmd.subcommand == "report":
        data, classes = _enumeration(cmd)
        tangent = _tangent(cmd, classes)
        if cmd.format == "json":
            data["invariants"] = invariants_dict(k)
            data["presentations"] = presentation_dict(k)
            data["tangent"] = tangent
            if k.n == 3:
                data["audit"] = audit(k, attempts=cmd.attempts, seed=cmd.seed).to_dict()
            text = dumps(data)
        else:
            rows = class_rows(classes)
            for r, t in zip(rows, tangent):
                r.update({c: t[c] for c in ("z1_dim", "b1_dim", "h1_dim", "min_nonzero_sv")})
            cols = CLASS_COLUMNS + ("z1_dim", "b1_dim", "h1_dim", "min_nonzero_sv")
            if cmd.format == "csv":
                text = render_rows(rows, cols, "csv")
            else:
                text = _summary_markdown(data) + "\n" + render_markdown(rows, cols)
    elif cmd.subcommand == "audit":
        summary = audit(k, attempts=cmd.attempts, seed=cmd.seed)
        if cmd.format == "json":
            text = dumps(summary.to_dict())
        else:
            cols = ("case", "angles", "printed_verdict", "planar_verdict", "gram_verdict",
                    "gram_det", "closure_solutions", "disagreement")
            rows = [dict(r, angles=" ".join(r["angles"])) for r in summary.rows]
            text = render_rows(rows, cols, cmd.format)
    else:  # pragma: no cover - argparse restricts the choices
        raise ValueError(cmd.subcommand)
    out.write(text)
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        cmd = parse_command(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return run(cmd)
    except (RankAmbiguous, InconsistentEnumeration, ArithmeticError) as exc:
        print(f"knotrep: internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except KnotrepError as exc:
        print(f"knotrep: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
