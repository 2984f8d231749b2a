"""JSON / CSV / plain-table rendering of verification results.

Big integers are written as decimal strings: permanents pass 2^63 quickly and
JSON numbers are not big-integer safe in most consumers.
"""

from __future__ import annotations

import csv
import io
import json
from typing import Any, Iterable, Sequence

from .lab import ClosureCertificate, IdentityCheck, VerificationReport

REPORT_COLUMNS = ("instance_id", "n", "per_A", "per_AhadA", "gap", "holds", "method", "provenance")


def report_to_dict(r: VerificationReport, timing: bool = False) -> dict[str, Any]:
    d: dict[str, Any] = {
        "instance_id": r.instance_id,
        "n": r.n,
        "per_A": str(r.per_A),
        "per_AhadA": str(r.per_AhadA),
        "gap": str(r.gap),
        "holds": r.holds,
        "method": r.method,
        "provenance": r.provenance,
    }
    if timing:
        d["elapsed"] = round(r.elapsed, 6)
    return d


def report_from_dict(d: dict[str, Any]) -> VerificationReport:
    r = VerificationReport(d["instance_id"], int(d["n"]), int(d["per_A"]), int(d["per_AhadA"]),
                           d.get("method", "ryser"), d.get("provenance", ""), float(d.get("elapsed", 0.0)))
    if str(r.gap) != str(d["gap"]) or r.holds != d["holds"]:
        raise ValueError("inconsistent report: gap/holds do not match the permanents")
    return r


def identity_to_dict(c: IdentityCheck) -> dict[str, Any]:
    return {
        "identity": c.name,
        "relation": c.relation,
        "holds": c.holds,
        "sides": [[str(x), str(y)] for x, y in c.sides],
        "values": {k: str(v) for k, v in c.values.items()},
    }


def certificate_to_dict(cert: ClosureCertificate) -> dict[str, Any]:
    steps = []
    for rec in cert.steps:
        steps.append({
            "op": rec.op,
            "vertices": rec.vertices,
            "hypotheses": [report_to_dict(h) for h in rec.hypotheses],
            "conclusion": report_to_dict(rec.conclusion) if rec.conclusion else None,
            **({"checks": rec.extra} if rec.extra else {}),
        })
    return {
        "holds": cert.holds,
        "failure": cert.failure,
        "final": report_to_dict(cert.final) if cert.final else None,
        "steps": steps,
    }


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def rows_to_csv(rows: Sequence[dict[str, Any]], columns: Sequence[str] | None = None) -> str:
    if not rows:
        return ""
    columns = list(columns or rows[0].keys())
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=columns, extrasaction="ignore", lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: _flat(r.get(k)) for k in columns})
    return buf.getvalue()


def rows_to_table(rows: Sequence[dict[str, Any]], columns: Sequence[str] | None = None) -> str:
    if not rows:
        return ""
    columns = list(columns or rows[0].keys())
    cells = [[_flat(r.get(c)) for c in columns] for r in rows]
    widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(columns)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(columns, widths))]
    lines.append("  ".join("-" * w for w in widths))
    lines += ["  ".join(x.rjust(w) for x, w in zip(row, widths)) for row in cells]
    return "\n".join(lines) + "\n"


def _flat(v: Any) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (dict, list)):
        return json.dumps(v, sort_keys=True)
    return str(v)


def render(rows: Sequence[dict[str, Any]], fmt: str, envelope: dict[str, Any] | None = None,
           columns: Iterable[str] | None = None) -> str:
    """Render ``rows`` as json (wrapped in ``envelope`` under "rows"), csv or table."""
    cols = list(columns) if columns is not None else None
    if fmt == "json":
        body = dict(envelope or {})
        body["rows"] = list(rows)
        return dumps(body)
    if fmt == "csv":
        return rows_to_csv(rows, cols)
    if fmt == "table":
        return rows_to_table(rows, cols)
    raise ValueError(f"unknown format {fmt!r}")
