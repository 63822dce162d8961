"""PFORM-JSON v1: the file format for periodic forms.

A document is a JSON object {"format": "pform/1", "d": ..., "m": ...,
"Q": [[...]], "t": [[...]], "meta": {...}} with every rational written as
the string "p/q" (the "/q" omitted when the denominator is 1).  Parsing and
printing round-trip exactly.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .linalg import PQF, SymForm, TangentVector
from .periodic import PeriodicForm

__all__ = [
    "PFormError",
    "format_rational",
    "parse_rational",
    "to_document",
    "from_document",
    "dumps",
    "loads",
    "tangent_to_document",
]

FORMAT_TAG = "pform/1"


class PFormError(ValueError):
    """Malformed document: bad JSON shape, rationals, symmetry, or not PD."""


def format_rational(v: Fraction) -> str:
    v = Fraction(v)
    if v.denominator == 1:
        return str(v.numerator)
    return f"{v.numerator}/{v.denominator}"


def parse_rational(s: Any) -> Fraction:
    if isinstance(s, int):
        return Fraction(s)
    if not isinstance(s, str):
        raise PFormError(f"rational must be a string, got {type(s).__name__}")
    try:
        return Fraction(s.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise PFormError(f"bad rational {s!r}") from exc


def to_document(x: PeriodicForm, meta: dict | None = None) -> dict:
    doc = {
        "format": FORMAT_TAG,
        "d": x.d,
        "m": x.m,
        "Q": [
            [format_rational(x.q.form.entry(i, j)) for j in range(x.d)]
            for i in range(x.d)
        ],
        "t": [[format_rational(v) for v in col] for col in x.tcols],
    }
    if meta:
        doc["meta"] = meta
    return doc


def from_document(doc: Any) -> PeriodicForm:
    if not isinstance(doc, dict):
        raise PFormError("document must be a JSON object")
    if doc.get("format") != FORMAT_TAG:
        raise PFormError(f"unsupported format tag: {doc.get('format')!r}")
    try:
        d = int(doc["d"])
        m = int(doc["m"])
        q_rows = doc["Q"]
        t_rows = doc.get("t", [])
    except (KeyError, TypeError, ValueError) as exc:
        raise PFormError(f"missing or malformed field: {exc}") from exc
    if d < 1 or m < 1:
        raise PFormError("d and m must be positive")
    if len(q_rows) != d or any(len(r) != d for r in q_rows):
        raise PFormError("Q must be a d x d array")
    if len(t_rows) != m - 1 or any(len(r) != d for r in t_rows):
        raise PFormError("t must hold m-1 arrays of length d")
    rows = [[parse_rational(v) for v in r] for r in q_rows]
    try:
        sym = SymForm.from_rows(rows)
    except ValueError as exc:
        raise PFormError(str(exc)) from exc
    try:
        q = PQF(sym)
    except ValueError as exc:
        raise PFormError("Q is not positive definite") from exc
    cols = [[parse_rational(v) for v in r] for r in t_rows]
    return PeriodicForm.make(q, cols)


def dumps(x: PeriodicForm, meta: dict | None = None) -> str:
    return json.dumps(to_document(x, meta), indent=2)


def loads(text: str) -> PeriodicForm:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PFormError(f"invalid JSON: {exc}") from exc
    return from_document(doc)


def tangent_to_document(n: TangentVector) -> dict:
    """Tangent vectors (directions, separators) in the same rational encoding."""
    d = n.d
    return {
        "Q": [
            [format_rational(n.qpart.entry(i, j)) for j in range(d)]
            for i in range(d)
        ],
        "t": [[format_rational(v) for v in col] for col in n.tcols],
    }
