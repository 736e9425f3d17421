"""File formats: the line-oriented algebra format, JSON twins, poset files,
and law-report serialization.

The text format (``.lalg``) is UTF-8, line oriented and diff friendly::

    # comment
    name: diamond
    elements: 1 p q 0
    unit: 1
    row 1: 1 p q 0
    row p: 1 1 0 0
    row q: 1 0 1 0
    row 0: 1 1 1 1

Column order inside a row is the ``elements`` order; one ``row`` line per
element.  The JSON alternative mirrors the document field for field (plus an
optional ``metadata`` object) and is chosen by the ``.json`` extension.
Parse errors report exact one-based line and column positions.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path
from typing import TYPE_CHECKING, Sequence

from .constructions import PosetSpec
from .core import FiniteLAlgebra, validate
from .errors import ParseError

if TYPE_CHECKING:  # pragma: no cover
    from .laws import LawReport

REPORT_SCHEMA = 1


@dataclass(frozen=True)
class AlgebraDocument:
    """An algebra as written in a file: labels only, no indices."""

    name: str
    elements: tuple[str, ...]
    unit: str
    table: tuple[tuple[str, ...], ...]
    metadata: dict | None = None

    def to_algebra(self, validated: bool = True) -> FiniteLAlgebra:
        index = {lab: i for i, lab in enumerate(self.elements)}
        table = [[index[v] for v in row] for row in self.table]
        if validated:
            return validate(table, index[self.unit], labels=self.elements, name=self.name)
        return FiniteLAlgebra(
            name=self.name,
            labels=self.elements,
            unit=index[self.unit],
            table=tuple(tuple(r) for r in table),
        )


def algebra_to_document(alg: FiniteLAlgebra, metadata: dict | None = None) -> AlgebraDocument:
    return AlgebraDocument(
        name=alg.name,
        elements=alg.labels,
        unit=alg.label(alg.unit),
        table=tuple(tuple(alg.label(v) for v in row) for row in alg.table),
        metadata=metadata,
    )


_TOKEN = re.compile(r"\S+")


def _tokens(content: str) -> list[tuple[str, int]]:
    """(token, one-based column) pairs of a line with comments stripped."""
    hash_pos = content.find("#")
    if hash_pos >= 0:
        content = content[:hash_pos]
    return [(m.group(), m.start() + 1) for m in _TOKEN.finditer(content)]


def parse_algebra_text(text: str) -> AlgebraDocument:
    """Parse the line format; raises :class:`ParseError` with exact positions."""
    name: str | None = None
    elements: tuple[str, ...] | None = None
    unit: str | None = None
    rows: dict[str, tuple[str, ...]] = {}
    last_line = 0

    for lineno, raw in enumerate(text.splitlines(), start=1):
        last_line = lineno
        toks = _tokens(raw)
        if not toks:
            continue
        head, col = toks[0]
        if head == "name:":
            if name is not None:
                raise ParseError(lineno, col, "duplicate name line")
            if len(toks) != 2:
                raise ParseError(lineno, col, "name takes exactly one label")
            name = toks[1][0]
        elif head == "elements:":
            if elements is not None:
                raise ParseError(lineno, col, "duplicate elements line")
            if len(toks) < 2:
                raise ParseError(lineno, col, "elements line lists no labels")
            seen: dict[str, int] = {}
            for tok, tcol in toks[1:]:
                if tok in seen:
                    raise ParseError(lineno, tcol, f"duplicate element label {tok!r}")
                seen[tok] = tcol
            elements = tuple(t for t, _ in toks[1:])
        elif head == "unit:":
            if unit is not None:
                raise ParseError(lineno, col, "duplicate unit line")
            if len(toks) != 2:
                raise ParseError(lineno, col, "unit takes exactly one label")
            unit = toks[1][0]
        elif head == "row":
            if elements is None:
                raise ParseError(lineno, col, "row before the elements line")
            if len(toks) < 2 or not toks[1][0].endswith(":"):
                raise ParseError(lineno, col, "row syntax is: row <label>: <entries>")
            label, lcol = toks[1][0][:-1], toks[1][1]
            if label not in elements:
                raise ParseError(lineno, lcol, f"row for unknown element {label!r}")
            if label in rows:
                raise ParseError(lineno, lcol, f"duplicate row for {label!r}")
            entries = toks[2:]
            if len(entries) != len(elements):
                where = entries[len(elements)][1] if len(entries) > len(elements) else (
                    entries[-1][1] if entries else lcol
                )
                raise ParseError(
                    lineno,
                    where,
                    f"table not square: row {label!r} has {len(entries)} entries, "
                    f"expected {len(elements)}",
                )
            for tok, tcol in entries:
                if tok not in elements:
                    raise ParseError(lineno, tcol, f"unknown element label {tok!r}")
            rows[label] = tuple(t for t, _ in entries)
        else:
            raise ParseError(lineno, col, f"unknown directive {head!r}")

    if elements is None:
        raise ParseError(last_line + 1, 1, "missing elements line")
    if unit is None:
        raise ParseError(last_line + 1, 1, "missing unit line")
    if unit not in elements:
        raise ParseError(last_line + 1, 1, f"unit {unit!r} is not an element")
    missing = [e for e in elements if e not in rows]
    if missing:
        raise ParseError(last_line + 1, 1, f"missing row for {missing[0]!r}")
    return AlgebraDocument(
        name=name if name is not None else "X",
        elements=elements,
        unit=unit,
        table=tuple(rows[e] for e in elements),
        metadata=None,
    )


def serialize_algebra_text(doc: AlgebraDocument) -> str:
    lines = [
        f"name: {doc.name}",
        f"elements: {' '.join(doc.elements)}",
        f"unit: {doc.unit}",
    ]
    for label, row in zip(doc.elements, doc.table):
        lines.append(f"row {label}: {' '.join(row)}")
    return "\n".join(lines) + "\n"


def _json_position(exc: json.JSONDecodeError) -> tuple[int, int]:
    return exc.lineno, exc.colno


def parse_algebra_json(text: str) -> AlgebraDocument:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        line, col = _json_position(exc)
        raise ParseError(line, col, exc.msg) from None
    if not isinstance(data, dict):
        raise ParseError(1, 1, "top level must be an object")
    for key in ("elements", "unit", "table"):
        if key not in data:
            raise ParseError(1, 1, f"missing key {key!r}")
    elements = data["elements"]
    table = data["table"]
    if not isinstance(elements, list) or not all(isinstance(e, str) for e in elements):
        raise ParseError(1, 1, "elements must be a list of strings")
    if len(set(elements)) != len(elements):
        raise ParseError(1, 1, "duplicate element label")
    if not isinstance(table, list) or len(table) != len(elements):
        raise ParseError(1, 1, "table not square: one row per element required")
    for row in table:
        if not isinstance(row, list) or len(row) != len(elements):
            raise ParseError(1, 1, "table not square")
        for v in row:
            if v not in elements:
                raise ParseError(1, 1, f"unknown element label {v!r}")
    if data["unit"] not in elements:
        raise ParseError(1, 1, f"unit {data['unit']!r} is not an element")
    metadata = data.get("metadata")
    if metadata is not None and not isinstance(metadata, dict):
        raise ParseError(1, 1, "metadata must be an object")
    return AlgebraDocument(
        name=str(data.get("name", "X")),
        elements=tuple(elements),
        unit=data["unit"],
        table=tuple(tuple(row) for row in table),
        metadata=metadata,
    )


def serialize_algebra_json(doc: AlgebraDocument) -> str:
    payload: dict = {
        "name": doc.name,
        "elements": list(doc.elements),
        "unit": doc.unit,
        "table": [list(row) for row in doc.table],
    }
    if doc.metadata is not None:
        payload["metadata"] = doc.metadata
    return json.dumps(payload, indent=2) + "\n"


def parse_algebra(text: str, suffix: str = ".lalg") -> AlgebraDocument:
    """Dispatch on the file extension; ``.json`` means JSON, anything else text."""
    if suffix == ".json":
        return parse_algebra_json(text)
    return parse_algebra_text(text)


def load_algebra(path: str | Path, validated: bool = True) -> FiniteLAlgebra:
    p = Path(path)
    doc = parse_algebra(p.read_text(encoding="utf-8"), p.suffix)
    if doc.name == "X":
        doc = AlgebraDocument(p.stem, doc.elements, doc.unit, doc.table, doc.metadata)
    return doc.to_algebra(validated=validated)


def save_algebra(alg: FiniteLAlgebra, path: str | Path) -> None:
    p = Path(path)
    doc = algebra_to_document(alg)
    if p.suffix == ".json":
        p.write_text(serialize_algebra_json(doc), encoding="utf-8")
    else:
        p.write_text(serialize_algebra_text(doc), encoding="utf-8")


def parse_poset_text(text: str) -> PosetSpec:
    """Poset files: an ``elements:`` line, a ``top:`` line, ``cover a < b`` lines."""
    elements: tuple[str, ...] | None = None
    top: str | None = None
    covers: list[tuple[str, str]] = []
    last_line = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        last_line = lineno
        toks = _tokens(raw)
        if not toks:
            continue
        head, col = toks[0]
        if head == "elements:":
            if elements is not None:
                raise ParseError(lineno, col, "duplicate elements line")
            if len(toks) < 2:
                raise ParseError(lineno, col, "elements line lists no labels")
            elements = tuple(t for t, _ in toks[1:])
        elif head == "top:":
            if len(toks) != 2:
                raise ParseError(lineno, col, "top takes exactly one label")
            top = toks[1][0]
        elif head == "cover":
            if len(toks) != 4 or toks[2][0] != "<":
                raise ParseError(lineno, col, "cover syntax is: cover <low> < <high>")
            covers.append((toks[1][0], toks[3][0]))
        else:
            raise ParseError(lineno, col, f"unknown directive {head!r}")
    if elements is None:
        raise ParseError(last_line + 1, 1, "missing elements line")
    if top is None:
        raise ParseError(last_line + 1, 1, "missing top line")
    return PosetSpec(elements=elements, covers=tuple(covers), top=top)


def _report_payload(report: "LawReport", include_timing: bool) -> dict:
    stats: dict = {"instances": report.instances}
    if include_timing:
        stats["time_s"] = round(report.time_s, 6)
    payload: dict = {
        "law": report.law,
        "corpus": report.corpus,
        "verdict": report.verdict,
        "stats": stats,
    }
    if report.detail is not None:
        payload["detail"] = report.detail
    if report.witness is not None:
        payload["witness"] = report.witness
    return payload


def serialize_report(
    reports: Sequence["LawReport"],
    format: str = "text",
    include_timing: bool = True,
) -> str:
    """Stable-order report rendering; JSON is schema-versioned.

    Timing sits in its own ``stats.time_s`` field (JSON) or a trailing
    parenthetical (text) so deterministic comparisons can drop it.
    """
    if format == "json":
        payload = {
            "schema": REPORT_SCHEMA,
            "reports": [_report_payload(r, include_timing) for r in reports],
        }
        return json.dumps(payload, separators=(",", ":"))
    if format != "text":
        raise ValueError(f"unknown report format {format!r}")
    lines = []
    for r in reports:
        mark = "PASS" if r.verdict == "pass" else "FAIL"
        suffix = f" ({r.instances} instances"
        if include_timing:
            suffix += f", {r.time_s * 1000:.1f}ms"
        suffix += ")"
        detail = f" -- {r.detail}" if r.detail else ""
        lines.append(f"{mark} {r.law} :: {r.corpus}{suffix}{detail}")
        if r.witness is not None:
            compact = {k: v for k, v in r.witness.items() if k != "algebra_document"}
            lines.append(f"     witness: {json.dumps(compact, separators=(',', ':'))}")
    return "\n".join(lines) + ("\n" if lines else "")
