"""Demo reports: a small schema with table and JSON renderings.

JSON output is deterministic for fixed inputs and seed: keys are sorted
and the elapsed wall time is carried on the dataclass for the table view
but deliberately kept out of the JSON payload. Each report cites, from a
fixed registry, the mathematical claim the scenario demonstrates, and any
positive verdict embeds its certificate data.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

SCHEMA_VERSION = 1

CLAIMS = {
    "kb-axioms": (
        "the normal-form product on pairs (n, m) satisfies the group axioms, "
        "matches the affine-action oracle, and squares land in the centralizer of y"
    ),
    "kb-pattern": (
        "intervals around powers of x and right <x>-cosets by powers of y form a "
        "verified depth-2 inconsistency pattern, so the ordered group has burden "
        "at least 2"
    ),
    "kb-cover-fails": (
        "the interval from the identity to x cannot be covered by finitely many "
        "right cosets of a central subgroup: the elements y^b witness infinitely "
        "many distinct cosets"
    ),
    "presburger-iso": (
        "the coordinate map is an isomorphism onto a copy of the group definable "
        "over (Z, <, +) whose operation only needs a parity case split"
    ),
    "plaut-hull": (
        "in the well-order-compared group of increasing PL bijections of Q, the "
        "convex hull of a cyclic subgroup contains g but not g*g, so the hull of "
        "a subgroup need not be a subgroup"
    ),
    "free-chain": (
        "in a free group the generator-power families D_i violate the normal-"
        "closure chain condition at every depth: the pinned-product pattern "
        "verifies at depth n+1 and the quotient elements miss the conjugate-"
        "closure products"
    ),
    "index-pairs": (
        "the subgroup pair (<x>, <y>) has both indices over the intersection "
        "infinite, while (G, C(y)) has indices (2, 1)"
    ),
}


@dataclass(frozen=True)
class Report:
    scenario: str
    claim: str
    inputs: dict[str, Any]
    ok: bool
    verdict: str
    witness_table: list[dict[str, str]] = field(default_factory=list)
    certificates: dict[str, Any] = field(default_factory=dict)
    elapsed_s: float = field(default=0.0, compare=False)


def report_to_jsonable(report: Report) -> dict[str, Any]:
    # elapsed time is excluded so equal inputs give byte-identical JSON
    return {
        "schema-version": SCHEMA_VERSION,
        "scenario": report.scenario,
        "claim": report.claim,
        "inputs": report.inputs,
        "ok": report.ok,
        "verdict": report.verdict,
        "witness-table": report.witness_table,
        "certificates": report.certificates,
    }


def report_from_jsonable(data: dict[str, Any]) -> Report:
    if data.get("schema-version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema version {data.get('schema-version')!r}")
    return Report(
        scenario=data["scenario"],
        claim=data["claim"],
        inputs=data["inputs"],
        ok=data["ok"],
        verdict=data["verdict"],
        witness_table=data["witness-table"],
        certificates=data["certificates"],
    )


def render_json(report: Report) -> str:
    return json.dumps(report_to_jsonable(report), sort_keys=True, indent=2)


def render_table(report: Report) -> str:
    lines = [
        f"scenario: {report.scenario}    [{'ok' if report.ok else 'FAILED'}]"
        f"    ({report.elapsed_s:.3f}s)",
        f"claim:    {report.claim}",
        "inputs:   " + ", ".join(f"{k}={v}" for k, v in sorted(report.inputs.items())),
        f"verdict:  {report.verdict}",
    ]
    if report.witness_table:
        headers = list(report.witness_table[0].keys())
        widths = {
            h: max(len(h), *(len(str(row.get(h, ""))) for row in report.witness_table))
            for h in headers
        }
        lines.append("  " + "  ".join(h.ljust(widths[h]) for h in headers))
        for row in report.witness_table:
            lines.append(
                "  " + "  ".join(str(row.get(h, "")).ljust(widths[h]) for h in headers)
            )
    else:
        lines.append("  (no witnesses)")
    if report.certificates:
        lines.append("certificates: " + json.dumps(report.certificates, sort_keys=True))
    return "\n".join(lines)


def emit(report: Report, format: str = "table") -> str:
    """Deterministic rendering; the JSON form round-trips through the schema."""
    if format == "json":
        return render_json(report)
    if format == "table":
        return render_table(report)
    raise ValueError(f"unknown format {format!r}")
