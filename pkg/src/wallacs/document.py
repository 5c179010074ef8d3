"""JSON wire format for invariant systems.

A document looks like::

    {
      "name": "hp2",
      "n": 4,
      "betti": 1,
      "intersection_form": [
        [1]
      ],
      "chi": [1]
    }

Integers outside the signed 64-bit range are written as decimal strings;
both spellings are accepted on input.
"""
from __future__ import annotations

import json
from typing import Any, Optional

from .wall import WallInvariants

__all__ = ["DocumentError", "dumps", "encode_int", "from_document", "loads", "parse", "to_document"]

INT64_MIN, INT64_MAX = -(2**63), 2**63 - 1


class DocumentError(ValueError):
    """Malformed document; the message carries the position or field path."""


def encode_int(v: int) -> int | str:
    return v if INT64_MIN <= v <= INT64_MAX else str(v)


def _int(value: Any, where: str) -> int:
    if isinstance(value, bool):
        raise DocumentError(f"{where}: expected integer, got boolean")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        try:
            return int(value, 10)
        except ValueError:
            pass
    raise DocumentError(f"{where}: expected integer, got {value!r}")


def from_document(doc: Any) -> WallInvariants:
    if not isinstance(doc, dict):
        raise DocumentError("$: expected a JSON object")
    for key in ("n", "betti", "intersection_form"):
        if key not in doc:
            raise DocumentError(f"$.{key}: missing field")
    unknown = set(doc) - {"name", "n", "betti", "intersection_form", "chi"}
    if unknown:
        raise DocumentError(f"$: unknown field(s) {sorted(unknown)}")
    name = doc.get("name")
    if name is not None and not isinstance(name, str):
        raise DocumentError("$.name: expected string")
    n = _int(doc["n"], "$.n")
    k = _int(doc["betti"], "$.betti")
    rows = doc["intersection_form"]
    if not isinstance(rows, list) or len(rows) != k:
        raise DocumentError(f"$.intersection_form: expected {k} rows")
    gram = []
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != k:
            raise DocumentError(f"$.intersection_form[{i}]: expected {k} entries")
        gram.append(tuple(_int(a, f"$.intersection_form[{i}][{j}]") for j, a in enumerate(row)))
    chi: Optional[tuple[int, ...]] = None
    if doc.get("chi") is not None:
        if not isinstance(doc["chi"], list):
            raise DocumentError("$.chi: expected list or null")
        chi = tuple(_int(c, f"$.chi[{i}]") for i, c in enumerate(doc["chi"]))
    return WallInvariants(n=n, k=k, gram=tuple(gram), chi=chi, name=name)


def parse(text: str) -> WallInvariants:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return from_document(doc)


loads = parse


def to_document(w: WallInvariants) -> dict:
    return {
        "name": w.name or "",
        "n": encode_int(w.n),
        "betti": encode_int(w.k),
        "intersection_form": [[encode_int(a) for a in row] for row in w.gram],
        "chi": None if w.chi is None else [encode_int(c) for c in w.chi],
    }


def dumps(w: WallInvariants) -> str:
    """Canonical pretty form: one matrix row per line."""
    d = to_document(w)
    compact = lambda v: json.dumps(v, separators=(", ", ": "))  # noqa: E731
    lines = [
        "{",
        f'  "name": {json.dumps(d["name"])},',
        f'  "n": {compact(d["n"])},',
        f'  "betti": {compact(d["betti"])},',
    ]
    if d["intersection_form"]:
        body = ",\n".join(f"    {compact(row)}" for row in d["intersection_form"])
        lines.append(f'  "intersection_form": [\n{body}\n  ],')
    else:
        lines.append('  "intersection_form": [],')
    lines.append(f'  "chi": {compact(d["chi"])}')
    lines.append("}")
    return "\n".join(lines) + "\n"
