"""Deterministic JSON/text rendering of computation results."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .intlat import FiniteAbelianGroup
from .rootsys import RootSystem, Weight

SCHEMA_VERSION = "1.0"

STATUS_OK = "ok"
STATUS_INPUT_ERROR = "input-error"
STATUS_INVARIANT = "invariant-violation"

EXIT_CODES = {STATUS_OK: 0, STATUS_INPUT_ERROR: 1, STATUS_INVARIANT: 2}


def rat(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def weight_expr(w: Weight) -> str:
    """``"1/2 α1 + 0 α2 + 1/2 α3"``."""
    parts = []
    for i, a in enumerate(w, start=1):
        s = rat(a)
        if parts:
            parts.append(f"- {s[1:]} α{i}" if s.startswith("-") else f"+ {s} α{i}")
        else:
            parts.append(f"{s} α{i}")
    return " ".join(parts)


def weight_json(w: Weight, rs: RootSystem | None = None, fundamental: bool = False) -> dict:
    out = {"alpha": [rat(a) for a in w], "expr": weight_expr(w)}
    if fundamental and rs is not None:
        out["omega"] = [rat(c) for c in rs.coroot_pairings(w)]
    return out


def group_json(g: FiniteAbelianGroup | None):
    if g is None:
        return None
    return {"invariant_factors": list(g.invariant_factors), "order": g.order, "name": str(g)}


@dataclass
class ReportDocument:
    request: dict
    payload: Any = None
    status: str = STATUS_OK
    error: str | None = None
    schema_version: str = SCHEMA_VERSION
    text_lines: list[str] = field(default_factory=list)
    fmt: str = "text"
    out: str | None = None

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]

    def to_dict(self) -> dict:
        d = {
            "schema_version": self.schema_version,
            "request": self.request,
            "status": self.status,
            "payload": self.payload,
        }
        if self.error is not None:
            d["error"] = self.error
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"

    def to_text(self) -> str:
        head = f"status: {self.status}"
        lines = [head]
        if self.error:
            lines.append(f"error: {self.error}")
        lines.extend(self.text_lines)
        return "\n".join(lines) + "\n"
