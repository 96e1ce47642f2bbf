"""Text and JSON renderings of filtration reports."""

from __future__ import annotations

import json
from importlib import resources
from typing import List, Optional

from .filtration import Check, FiltrationReport
from .ideal import Ideal


def schema() -> dict:
    """The published JSON schema for command reports."""
    text = resources.files("nilfilt").joinpath("report_schema.json").read_text(encoding="utf-8")
    return json.loads(text)


def _gens(I: Ideal) -> List[str]:
    return I.generator_strings()


def check_json(c: Check) -> dict:
    out = c.to_json()
    out["informational"] = c.informational
    return out


def report_json(command: str, rep: FiltrationReport, elapsed_ms: float, extra: Optional[dict] = None) -> dict:
    ring = rep.model.ring
    fp = rep.fingerprint
    out = {
        "command": command,
        "ring": {"field": ring.field.name, "vars": list(ring.vars), "order": ring.order.name},
        "inputs": {"I": _gens(rep.model.I), "J": _gens(rep.model.J)},
        "m": rep.m,
        "chains": {
            "bf": [_gens(K) for K in rep.bf],
            "x": [_gens(K) for K in rep.xs],
            "y": [_gens(K) for K in rep.ys],
        },
        "ranks": {"B": rep.rankB, "A": rep.rankA, "M": rep.rankM},
        "checks": [check_json(c) for c in rep.checks],
        "fingerprint": fp.to_json(rep.label) if fp else None,
        "notes": list(rep.notes),
        "pass": rep.passed,
        "elapsed_ms": round(elapsed_ms, 3),
    }
    if rep.table:
        out["table"] = rep.table
    if extra:
        out.update(extra)
    return out


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False)


def _verdict(c: Check) -> str:
    if c.passed:
        return "PASS"
    return "info" if c.informational else "FAIL"


def report_text(command: str, rep: FiltrationReport, elapsed_ms: float) -> str:
    ring = rep.model.ring
    lines = [
        f"{command}: ring {ring.field.name}[{','.join(ring.vars)}] order {ring.order.name}",
        f"I = {rep.model.I}",
        f"J = {rep.model.J}",
        f"m = {rep.m}",
        "",
        f"{'l':>3}  {'I^l + J':<32} {'J_l = J:(J:I^l)':<32} {'I_l = J:I^(m+1-l)'}",
    ]
    for l in range(rep.m + 2):
        lines.append(f"{l:>3}  {str(rep.bf[l]):<32} {str(rep.ys[l]):<32} {rep.xs[l]}")
    lines += [
        "",
        f"rank B = {rep.rankB}",
        f"rank A = {rep.rankA}",
        f"rank M = {rep.rankM}",
    ]
    if rep.table:
        lines += ["", "table rows:"]
        for row in rep.table:
            mark = "ok " if row["pass"] else "BAD"
            lines.append(f"  [{mark}] {row['row']:<14} {row['name']:<5} computed {row['computed']}  expected {row['expected']}")
    lines += ["", "checks:"]
    for c in rep.checks:
        detail = f"  ({c.detail})" if c.detail else ""
        lines.append(f"  [{_verdict(c)}] {c.name}{detail}")
    if rep.fingerprint:
        fp = rep.fingerprint
        lines += ["", f"fingerprint: {rep.label}  m={fp.m} rankA={list(fp.rankA)} rankM={list(fp.rankM)}"]
    for note in rep.notes:
        lines.append(f"note: {note}")
    lines.append(f"{'PASS' if rep.passed else 'FAIL'}  ({elapsed_ms:.0f} ms)")
    return "\n".join(lines)
