"""Text and JSON encodings. Big integers always travel as decimal strings."""

from __future__ import annotations

import json
import math
from fractions import Fraction

from .exactmat import IntMatrix
from .seqlab import PeriodReport
from .smith import SmithForm


class ParseError(ValueError):
    pass


def parse_matrix_text(text: str) -> IntMatrix:
    """Parse ``"rows cols"`` followed by one line of integers per row, or the JSON form."""
    if text.lstrip().startswith("{"):
        try:
            return matrix_from_json(json.loads(text))
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad matrix JSON: {exc}") from exc
    lines = [(no, ln) for no, ln in enumerate(text.splitlines(), 1) if ln.strip()]
    if not lines:
        raise ParseError("line 1: empty matrix file")
    no, header = lines[0]
    try:
        rows, cols = (int(x) for x in header.split())
    except ValueError:
        raise ParseError(f"line {no}: expected 'rows cols', got {header!r}") from None
    if rows < 1 or cols < 1:
        raise ParseError(f"line {no}: dimensions must be positive")
    body = lines[1:]
    if len(body) != rows:
        raise ParseError(f"line {no}: header promises {rows} rows, found {len(body)}")
    entries = []
    for no, ln in body:
        parts = ln.split()
        if len(parts) != cols:
            raise ParseError(f"line {no}: expected {cols} integers, found {len(parts)}")
        try:
            entries.extend(int(x) for x in parts)
        except ValueError:
            raise ParseError(f"line {no}: non-integer entry in {ln.strip()!r}") from None
    return IntMatrix(rows, cols, tuple(entries))


def format_matrix_text(m: IntMatrix) -> str:
    return f"{m.rows} {m.cols}\n{m}\n"


def matrix_to_json(m: IntMatrix) -> dict:
    return {"rows": m.rows, "cols": m.cols,
            "entries": [[str(x) for x in m.row(i)] for i in range(m.rows)]}


def matrix_from_json(obj: dict) -> IntMatrix:
    m = IntMatrix.from_rows([[int(x) for x in row] for row in obj["entries"]])
    if (m.rows, m.cols) != (int(obj["rows"]), int(obj["cols"])):
        raise ValueError("declared shape does not match entries")
    return m


def encode_value(x):
    """JSON-safe form of a sample: ints and fractions as strings, INFINITY as "inf"."""
    if isinstance(x, (tuple, list)):
        return [encode_value(y) for y in x]
    if isinstance(x, float) and math.isinf(x):
        return "inf"
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, int):
        return str(x)
    raise TypeError(f"cannot encode {type(x).__name__}")


def decode_value(s: str):
    if s == "inf":
        return math.inf
    q = Fraction(s)
    return q.numerator if q.denominator == 1 else q


def smith_to_json(s: SmithForm) -> dict:
    out = {"diag": [str(d) for d in s.diag], "rank": s.rank}
    if s.u is not None:
        out["u"] = matrix_to_json(s.u)
        out["v"] = matrix_to_json(s.v)
    return out


def smith_from_json(obj: dict) -> SmithForm:
    u = matrix_from_json(obj["u"]) if "u" in obj else None
    v = matrix_from_json(obj["v"]) if "v" in obj else None
    return SmithForm(tuple(int(d) for d in obj["diag"]), int(obj["rank"]), u, v)


def report_to_json(r: PeriodReport) -> dict:
    return {"n0": r.n0, "T": r.T, "block": encode_value(list(r.block)),
            "confirmed_window": r.confirmed_window, "status": r.status.value}


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"
