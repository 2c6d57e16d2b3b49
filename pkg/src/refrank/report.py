"""Report serialization: aligned text table, CSV and stable JSON."""
from __future__ import annotations

import csv
import dataclasses
import io
import json
from typing import Any, Optional

from .pipeline import ReviewerReport
from .rank import RankedCandidate
from .scholar import ScholarProfile

TABLE_COLUMNS = ("Author's (Rank by Score)", "Total Score", "Verified Email Domain", "Homepage Link", "Email")
CSV_COLUMNS = (
    "section", "rank", "name", "frequency", "score", "verified_email_domain", "homepage_url", "email",
    "email_domain_verified", "scholar_id", "full_name", "affiliation", "h_index", "i10_index",
    "citations", "conflict", "reason",
)


def candidate_to_dict(c: RankedCandidate) -> dict[str, Any]:
    d = dataclasses.asdict(c)
    if c.profile is not None:
        d["profile"]["coauthors"] = list(c.profile.coauthors)
    return d


def candidate_from_dict(d: dict[str, Any]) -> RankedCandidate:
    d = dict(d)
    p = d.get("profile")
    if p is not None:
        p = dict(p)
        p["coauthors"] = tuple(p.get("coauthors", ()))
        d["profile"] = ScholarProfile(**p)
    return RankedCandidate(**d)


def report_to_dict(report: ReviewerReport) -> dict[str, Any]:
    return {
        "rows": [candidate_to_dict(c) for c in report.rows],
        "discarded": [candidate_to_dict(c) for c in report.discarded],
        "unresolved": [{"name": n, "reason": r} for n, r in report.unresolved],
        "frequencies": [{"name": n, "count": k} for n, k in report.frequencies],
        "provenance": report.provenance,
    }


def report_from_dict(d: dict[str, Any]) -> ReviewerReport:
    return ReviewerReport(
        rows=[candidate_from_dict(c) for c in d["rows"]],
        discarded=[candidate_from_dict(c) for c in d.get("discarded", [])],
        unresolved=[(u["name"], u["reason"]) for u in d.get("unresolved", [])],
        frequencies=[(f["name"], f["count"]) for f in d.get("frequencies", [])],
        provenance=d.get("provenance", {}),
    )


def load_report(path) -> ReviewerReport:
    with open(path, encoding="utf-8") as fh:
        return report_from_dict(json.load(fh))


def _cell(value: Optional[str]) -> str:
    return value or ""


def _table_row(c: RankedCandidate) -> tuple[str, ...]:
    p = c.profile
    return (
        c.name,
        f"{c.score:.2f}",
        _cell(p.verified_email_domain if p else None),
        _cell(p.homepage_url if p else None),
        _cell(c.email),
    )


def emit_table(report: ReviewerReport) -> str:
    rows = [TABLE_COLUMNS] + [_table_row(c) for c in report.rows]
    widths = [max(len(r[i]) for r in rows) for i in range(len(TABLE_COLUMNS))]

    def line(r):
        return " | ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip() + "\n"

    out = [line(rows[0]), "-+-".join("-" * w for w in widths) + "\n"]
    out += [line(r) for r in rows[1:]]
    return "".join(out)


def _csv_record(section: str, c: RankedCandidate) -> dict[str, Any]:
    p = c.profile
    return {
        "section": section,
        "rank": c.rank,
        "name": c.name,
        "frequency": c.frequency,
        "score": f"{c.score:.2f}",
        "verified_email_domain": p.verified_email_domain if p else "",
        "homepage_url": p.homepage_url if p else "",
        "email": c.email or "",
        "email_domain_verified": "" if c.email_domain_verified is None else str(c.email_domain_verified).lower(),
        "scholar_id": p.id if p else "",
        "full_name": p.full_name if p else "",
        "affiliation": p.affiliation if p else "",
        "h_index": p.h_index if p else "",
        "i10_index": p.i10_index if p else "",
        "citations": p.citations if p else "",
        "conflict": c.conflict or "",
        "reason": c.unresolved_reason or c.email_reason or "",
    }


def emit_csv(report: ReviewerReport) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for c in report.rows:
        writer.writerow(_csv_record("rows", c))
    for c in report.discarded:
        writer.writerow(_csv_record("discarded", c))
    for name, reason in report.unresolved:
        writer.writerow({"section": "unresolved", "name": name, "reason": reason})
    return buf.getvalue()


def emit_json(report: ReviewerReport) -> str:
    return json.dumps(report_to_dict(report), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def emit(report: ReviewerReport, fmt: str = "table") -> bytes:
    if fmt == "table":
        text = emit_table(report)
    elif fmt == "csv":
        text = emit_csv(report)
    elif fmt == "json":
        text = emit_json(report)
    else:
        raise ValueError(f"unknown output format {fmt!r}")
    return text.encode("utf-8")
