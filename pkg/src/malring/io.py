"""Reading and writing complexes.

Text format: a header line ``m <int>`` followed by one facet per line as
space-separated vertex labels; ``#`` starts a comment.  JSON format:
``{"schema": 1, "m": ..., "facets": [...], "name": ..., "metadata": {...}}``
with no other keys allowed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .complex import ComplexError, SimplicialComplex, build_complex

SCHEMA = 1
_JSON_KEYS = {"schema", "m", "facets", "name", "metadata"}


class ParseError(ValueError):
    pass


@dataclass
class ComplexFile:
    complex: SimplicialComplex
    name: str | None = None
    metadata: dict = field(default_factory=dict)


def parse_text(text: str) -> ComplexFile:
    m = None
    facets = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if m is None:
            if len(tokens) != 2 or tokens[0] != "m":
                raise ParseError(f"line {lineno}: expected header 'm <int>'")
            m = _int(tokens[1], lineno)
            continue
        facets.append([_int(t, lineno) for t in tokens])
    if m is None:
        raise ParseError("missing header 'm <int>'")
    return ComplexFile(_build(m, facets))


def _int(token: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"line {lineno}: {token!r} is not an integer") from None


def _build(m, facets) -> SimplicialComplex:
    try:
        return build_complex(m, facets)
    except ComplexError as exc:
        raise ParseError(str(exc)) from exc


def parse_json(text: str) -> ComplexFile:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object")
    unknown = set(doc) - _JSON_KEYS
    if unknown:
        raise ParseError(f"unknown fields {sorted(unknown)}")
    if doc.get("schema") != SCHEMA:
        raise ParseError(f"unsupported schema {doc.get('schema')!r}")
    m, facets = doc.get("m"), doc.get("facets")
    if not isinstance(m, int) or isinstance(m, bool) or not isinstance(facets, list):
        raise ParseError("'m' must be an integer and 'facets' a list")
    if not all(isinstance(f, list) for f in facets):
        raise ParseError("every facet must be a list")
    name = doc.get("name")
    metadata = doc.get("metadata") or {}
    if name is not None and not isinstance(name, str):
        raise ParseError("'name' must be a string")
    if not isinstance(metadata, dict):
        raise ParseError("'metadata' must be an object")
    return ComplexFile(_build(m, facets), name, metadata)


def parse(text: str, fmt: str | None = None) -> ComplexFile:
    """Parse either format; ``fmt`` is ``"text"``, ``"json"`` or ``None`` to sniff."""
    if fmt is None:
        fmt = "json" if text.lstrip().startswith("{") else "text"
    return parse_json(text) if fmt == "json" else parse_text(text)


def read(path: str | Path) -> ComplexFile:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    except UnicodeDecodeError as exc:
        raise ParseError(f"{path} is not text") from exc
    return parse(text, "json" if path.suffix == ".json" else None)


def write_text(K: SimplicialComplex) -> str:
    """Canonical text form (names and metadata only survive in JSON)."""
    return K.to_text()


def write_json(K: SimplicialComplex, name: str | None = None, metadata: dict | None = None) -> str:
    doc = {
        "schema": SCHEMA,
        "name": name,
        "m": K.m,
        "facets": [list(f) for f in K.facets if f],
        "metadata": metadata or {},
    }
    return json.dumps(doc, sort_keys=True) + "\n"


def write(cf: ComplexFile, fmt: str = "text") -> str:
    if fmt == "json":
        return write_json(cf.complex, cf.name, cf.metadata)
    return write_text(cf.complex)
