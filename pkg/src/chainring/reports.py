"""Report envelopes with deterministic JSON and CSV renderings.

Identical inputs produce byte-identical JSON: keys are sorted, all numbers
are integers, and wall-clock data (timestamps, durations) is only attached
when explicitly requested via the stamp flag, so golden-file comparisons
stay stable.
"""

from __future__ import annotations

import csv
import io
import json
from datetime import datetime, timezone
from typing import Optional

from .oracle import CensusReport, SweepReport

SCHEMA_VERSION = "1"


def envelope(command: str, ring: Optional[dict], payload: dict, stamp: bool = False) -> dict:
    out = {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "ring": ring,
        "payload": payload,
    }
    if stamp:
        out["generated_at"] = datetime.now(timezone.utc).isoformat()
    return out


def to_json(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def census_payload(report: CensusReport) -> dict:
    out = {
        "kind": "census",
        "cap": report.cap,
        "ideal_count": report.ideal_count,
        "checks_run": list(report.checks_run),
        "violations": report.violations,
        "passed": report.passed,
    }
    if report.signature_counts is not None:
        out["signature_counts"] = report.signature_counts
        out["distinct_signatures"] = report.distinct_signatures
        out["types_with_trivial_merged"] = report.types_with_trivial_merged
    if report.elapsed_ms is not None:
        out["elapsed_ms"] = report.elapsed_ms
    return out


def sweep_payload(report: SweepReport) -> dict:
    entries = []
    for e in report.entries:
        row = {
            "case": e.case,
            "oracle": e.oracle,
            "certificate_ok": e.certificate_ok,
            "closed_form": e.closed_form,
            "branch": e.branch,
            "match": e.match,
        }
        if e.candidates is not None:
            row["candidates"] = [list(c) for c in e.candidates]
        entries.append(row)
    out = {
        "kind": "sweep",
        "table": report.prop_id,
        "grid": report.grid,
        "total": report.total,
        "matched": report.matched,
        "mismatched": report.mismatched,
        "ambiguous": report.ambiguous,
        "all_match": report.all_match,
        "entries": entries,
    }
    if report.elapsed_ms is not None:
        out["elapsed_ms"] = report.elapsed_ms
    return out


_SWEEP_CASE_KEYS = ("a", "a1", "a2", "b", "t", "tau", "t1", "t2", "t3", "h", "h1", "h2", "h3")


def sweep_csv(report: SweepReport) -> str:
    keys = sorted({k for e in report.entries for k in e.case})
    header = keys + ["oracle", "certificate_ok", "closed_form", "branch", "match"]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for e in report.entries:
        row = [e.case.get(k, "") for k in keys]
        row += [
            e.oracle,
            int(e.certificate_ok),
            "" if e.closed_form is None else e.closed_form,
            e.branch or "",
            "" if e.match is None else int(e.match),
        ]
        writer.writerow(row)
    return buf.getvalue()


def census_csv(report: CensusReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["key", "value"])
    writer.writerow(["ideal_count", report.ideal_count])
    writer.writerow(["passed", int(report.passed)])
    writer.writerow(["violation_count", len(report.violations)])
    if report.signature_counts is not None:
        for sig, count in report.signature_counts.items():
            writer.writerow([f"signature[{sig or 'empty'}]", count])
    return buf.getvalue()


def analysis_csv(payload: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["key", "value"])
    for code in payload["codes"]:
        for key in sorted(code):
            writer.writerow([key, json.dumps(code[key]) if isinstance(code[key], (list, dict)) else code[key]])
    return buf.getvalue()
