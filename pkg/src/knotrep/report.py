"""Serialization, candidate tables and the audit against the embedded reference tables."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Optional, Sequence

from knotrep.angles import CentralCase, RationalAngle
from knotrep.errors import KnotrepError, NotAKnot, UnsupportedShape
from knotrep.knot import (
    GroupKind,
    PretzelKnot,
    bridge_number_estimate,
    component_count,
    determinant,
    emit_presentation,
    klassen_bd_count,
    lin_invariant,
    signature,
    symmetrized_seifert,
)
from knotrep.quat import ImVector, planar_triangle_check, triangle_realizability
from knotrep.reps import (
    CaseTag,
    NumericSample,
    RepClass,
    RepSpaceReport,
    central_candidates,
    solve_closure_numeric,
)

FORMATS = ("json", "csv", "markdown")

TABLE_COLUMNS = (
    "a12",
    "a23",
    "a31",
    "abs_a23_minus_a31",
    "a23_plus_a31",
    "triangle_inequality",
    "gram_verdict",
    "gram_det",
)

TANGENT_COLUMNS = ("class_id", "label", "z1_dim", "b1_dim", "h1_dim", "min_nonzero_sv")

CLASS_COLUMNS = (
    "class_id",
    "kind",
    "case",
    "angles",
    "mirror_pair_id",
    "mirror",
    "beta",
    "orbit_type",
    "points",
)


@lru_cache(maxsize=None)
def _reference_text() -> str:
    return resources.files("knotrep.data").joinpath("reference_tables.json").read_text()


def load_reference_tables() -> dict:
    """The published candidate tables for P(+-3, +-5, +-7), as stored in the package data."""
    return json.loads(_reference_text())


def reference_applies(k: PretzelKnot, tables: dict) -> bool:
    # the edge congruences only see |p_i| and parity, so signs do not matter
    return list(abs(x) for x in k.p) == list(tables["knot_abs"])


def _yes_no(flag: bool) -> str:
    return "yes" if flag else "no"


def table_rows(k: PretzelKnot, case: CentralCase, include_endpoints: bool = False) -> list[dict]:
    """Candidate tuples of a central case with both feasibility tests, one dict per row."""
    rows = []
    for row in central_candidates(k, case, interior_only=not include_endpoints):
        rows.append({
            "a12": str(row.angles[0]),
            "a23": str(row.angles[1]),
            "a31": str(row.angles[2]),
            "abs_a23_minus_a31": str(row.lo),
            "a23_plus_a31": str(row.hi),
            "triangle_inequality": _yes_no(row.planar_ok),
            "gram_verdict": str(row.verdict),
            "gram_det": row.gram_det,
        })
    return rows


def audit_rows(k: PretzelKnot, tables: Optional[dict] = None, attempts: int = 64, seed: int = 0) -> list[dict]:
    """Compare every reference row with the planar test, the Gram test and the closure solver.

    ``disagreement`` is set when the printed verdict differs from the planar inequality
    or from the Gram verdict. ``solver_agrees`` records whether the closure solver finds
    a triangle exactly when the Gram test says one exists.
    """
    if tables is None:
        tables = load_reference_tables()
    if not reference_applies(k, tables):
        return []
    out = []
    for case_text in ("+1", "-1"):
        for ref in tables["tables"][case_text]:
            a12, a23, a31 = (RationalAngle.parse(a) for a in ref["angles"])
            lo, hi, ok = planar_triangle_check(a12, a23, a31)
            real = triangle_realizability(a12, a23, a31)
            solutions = solve_closure_numeric((a12, a23, a31), attempts=attempts, seed=seed)
            printed = ref["verdict"]
            gram_yes = real.verdict.feasible
            out.append({
                "case": case_text,
                "angles": [str(a12), str(a23), str(a31)],
                "printed_lo": ref["lo"],
                "printed_hi": ref["hi"],
                "computed_lo": str(lo),
                "computed_hi": str(hi),
                "bounds_match": Fraction(ref["lo"]) == lo and Fraction(ref["hi"]) == hi,
                "printed_verdict": printed,
                "planar_verdict": _yes_no(ok),
                "gram_verdict": str(real.verdict),
                "gram_det": real.gram_det,
                "closure_solutions": len(solutions),
                "solver_agrees": (len(solutions) > 0) == gram_yes,
                "disagreement": printed != _yes_no(ok) or printed != _yes_no(gram_yes),
            })
    return out


@dataclass(frozen=True)
class AuditSummary:
    rows: tuple
    printed_count: int
    computed_count: int

    @property
    def disagreements(self) -> list[dict]:
        return [r for r in self.rows if r["disagreement"]]

    @property
    def planar_agreement(self) -> int:
        return sum(r["printed_verdict"] == r["planar_verdict"] for r in self.rows)

    def to_dict(self) -> dict:
        return {
            "rows": list(self.rows),
            "planar_agreement": self.planar_agreement,
            "row_count": len(self.rows),
            "disagreements": self.disagreements,
            "published_non_bd_classes": self.printed_count,
            "computed_non_bd_classes": self.computed_count,
        }


def audit(k: PretzelKnot, attempts: int = 64, seed: int = 0) -> AuditSummary:
    from knotrep.reps import enumerate_all

    tables = load_reference_tables()
    rows = audit_rows(k, tables, attempts=attempts, seed=seed)
    computed = len(enumerate_all(k).non_bd_classes) if k.n == 3 else -1
    printed = tables["published_non_bd_classes"] if rows else -1
    return AuditSummary(tuple(rows), printed, computed)


# ---------------------------------------------------------------------------
# invariants


def invariants_dict(k: PretzelKnot) -> dict:
    signed, absolute = determinant(k)
    out = {
        "knot": list(k.p),
        "determinant": absolute,
        "signed_determinant": signed,
        "components": component_count(k),
        "signature": None,
        "lin_invariant": None,
        "seifert_symmetrized": None,
        "klassen_bd_count": None,
        "bridge_number": None,
        "two_bridge_pathology": k.has_unit_entry,
    }
    try:
        out["signature"] = signature(k)
        out["lin_invariant"] = lin_invariant(k)
        out["seifert_symmetrized"] = [list(r) for r in symmetrized_seifert(k)]
    except UnsupportedShape:
        pass
    try:
        out["klassen_bd_count"] = klassen_bd_count(k)
    except NotAKnot:
        pass
    out["bridge_number"] = str(bridge_number_estimate(k))
    return out


def presentation_dict(k: PretzelKnot) -> dict:
    return {
        which.value: emit_presentation(k, which).to_lists()
        for which in (GroupKind.KNOT_GROUP, GroupKind.QUOTIENT_GROUP)
    }


# ---------------------------------------------------------------------------
# JSON round trip


def _angle_list(angles) -> list[str]:
    return [str(a) for a in angles]


def _parse_angles(items) -> tuple[RationalAngle, ...]:
    return tuple(RationalAngle.parse(a) for a in items)


def _point_list(points: Sequence[ImVector]) -> list[list[float]]:
    return [[z.x, z.y, z.z] for z in points]


def class_to_dict(c: RepClass) -> dict:
    return {
        "case": c.case.value,
        "angles": _angle_list(c.angles),
        "points": _point_list(c.points),
        "abelian": c.abelian,
        "binary_dihedral": c.binary_dihedral,
        "mirror_pair_id": c.mirror_pair_id,
        "mirror": c.mirror,
        "beta": None if c.beta is None else str(c.beta),
        "chain": None if c.chain is None else _angle_list(c.chain),
        "orbit_type": c.orbit_type.value,
    }


def class_from_dict(d: dict) -> RepClass:
    return RepClass(
        case=CaseTag(d["case"]),
        angles=_parse_angles(d["angles"]),
        points=tuple(ImVector.of(p) for p in d["points"]),
        abelian=bool(d["abelian"]),
        binary_dihedral=bool(d["binary_dihedral"]),
        mirror_pair_id=d["mirror_pair_id"],
        mirror=int(d["mirror"]),
        beta=None if d["beta"] is None else RationalAngle.parse(d["beta"]),
        chain=None if d["chain"] is None else _parse_angles(d["chain"]),
    )


def sample_to_dict(s: NumericSample) -> dict:
    return {
        "case": s.case.value,
        "angles": _angle_list(s.angles),
        "points": _point_list(s.points),
        "dimension": s.dimension,
    }


def report_to_dict(report: RepSpaceReport) -> dict:
    return {
        "knot": list(report.knot.p),
        "complete": report.complete,
        "counts": report.counts,
        "abelian_classes": [class_to_dict(c) for c in report.abelian_classes],
        "binary_dihedral_classes": [class_to_dict(c) for c in report.binary_dihedral_classes],
        "non_bd_classes": [class_to_dict(c) for c in report.non_bd_classes],
        "reference_discrepancies": report.reference_discrepancies,
    }


def report_from_dict(d: dict) -> RepSpaceReport:
    return RepSpaceReport(
        knot=PretzelKnot(tuple(d["knot"])),
        abelian_classes=[class_from_dict(c) for c in d["abelian_classes"]],
        binary_dihedral_classes=[class_from_dict(c) for c in d["binary_dihedral_classes"]],
        non_bd_classes=[class_from_dict(c) for c in d["non_bd_classes"]],
        reference_discrepancies=list(d.get("reference_discrepancies", [])),
        complete=bool(d["complete"]),
    )


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def report_from_json(text: str) -> RepSpaceReport:
    return report_from_dict(json.loads(text))


# ---------------------------------------------------------------------------
# flat tables


def class_rows(classes: Sequence[RepClass]) -> list[dict]:
    rows = []
    for idx, c in enumerate(classes):
        if c.abelian:
            kind = "abelian"
        elif c.binary_dihedral:
            kind = "binary_dihedral"
        else:
            kind = "non_binary_dihedral"
        rows.append({
            "class_id": idx,
            "kind": kind,
            "case": c.case.value,
            "angles": " ".join(_angle_list(c.angles)),
            "mirror_pair_id": "" if c.mirror_pair_id is None else c.mirror_pair_id,
            "mirror": c.mirror,
            "beta": "" if c.beta is None else str(c.beta),
            "orbit_type": c.orbit_type.value,
            "points": " ".join(f"{z.x!r}:{z.y!r}:{z.z!r}" for z in c.points),
        })
    return rows


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def render_csv(rows: Sequence[dict], columns: Sequence[str]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for r in rows:
        writer.writerow([_cell(r[c]) for c in columns])
    return buf.getvalue()


def render_markdown(rows: Sequence[dict], columns: Sequence[str]) -> str:
    lines = ["| " + " | ".join(columns) + " |", "|" + "---|" * len(columns)]
    for r in rows:
        lines.append("| " + " | ".join(_cell(r[c]) for c in columns) + " |")
    return "\n".join(lines) + "\n"


def render_rows(rows: Sequence[dict], columns: Sequence[str], fmt: str) -> str:
    if fmt == "json":
        return dumps(list(rows))
    if fmt == "csv":
        return render_csv(rows, columns)
    if fmt == "markdown":
        return render_markdown(rows, columns)
    raise KnotrepError(f"unknown format {fmt!r}")

