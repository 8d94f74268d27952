"""Bundled semigroup fixtures and the semigroup file format."""
from __future__ import annotations

import json
from itertools import permutations
from pathlib import Path
from typing import Dict, List, Optional

from qsglab.core.semigroup import FiniteSemigroup, MalformedTable


class SemigroupFileError(ValueError):
    """The file is not valid JSON or does not follow the semigroup schema."""


def _cyclic(n: int) -> List[List[int]]:
    return [[(i + j) % n for j in range(n)] for i in range(n)]


def _s3() -> List[List[int]]:
    perms = list(permutations(range(3)))
    index = {p: i for i, p in enumerate(perms)}
    # (s*t)(x) = s(t(x))
    return [[index[tuple(s[t[x]] for x in range(3))] for t in perms] for s in perms]


CORPUS: Dict[str, List[List[int]]] = {
    "g2": _cyclic(2),
    "g3": _cyclic(3),
    "g4": _cyclic(4),
    "klein": [[i ^ j for j in range(4)] for i in range(4)],
    "s3": _s3(),
    "m2": [[0, 0], [0, 1]],
    "n2": [[0, 0], [0, 0]],
    "n3": [[0] * 3 for _ in range(3)],
    "rz2": [[0, 1], [0, 1]],
    "lz2": [[0, 0], [1, 1]],
    "m1": [[0]],
}

GROUPS = ("g2", "g3", "g4", "klein", "s3")


def names() -> List[str]:
    return list(CORPUS)


def document(name: str) -> dict:
    if name not in CORPUS:
        raise KeyError(f"unknown corpus entry {name!r}; choose from {', '.join(CORPUS)}")
    table = CORPUS[name]
    return {"order": len(table), "table": [list(r) for r in table]}


def dumps_document(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def load(name: str) -> FiniteSemigroup:
    return FiniteSemigroup(CORPUS[name])


def emit(name: str, directory: Optional[Path] = None) -> str:
    """Return the fixture as JSON text, also writing ``<directory>/<name>.json`` if given."""
    text = dumps_document(document(name))
    if directory is not None:
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        (directory / f"{name}.json").write_text(text, encoding="utf-8")
    return text


def parse_document(doc) -> dict:
    """Validate the ``{"order", "table", "names"?}`` schema; returns the normalised document."""
    if not isinstance(doc, dict):
        raise SemigroupFileError("top level must be a JSON object")
    extra = set(doc) - {"order", "table", "names"}
    if extra:
        raise SemigroupFileError(f"unexpected keys: {', '.join(sorted(extra))}")
    order, table = doc.get("order"), doc.get("table")
    if isinstance(order, bool) or not isinstance(order, int) or order < 1:
        raise SemigroupFileError("'order' must be a positive integer")
    if not isinstance(table, list) or len(table) != order:
        raise SemigroupFileError(f"'table' must be a list of {order} rows")
    for i, row in enumerate(table):
        if not isinstance(row, list) or len(row) != order:
            raise SemigroupFileError(f"row {i} must have {order} entries")
        for v in row:
            if isinstance(v, bool) or not isinstance(v, int) or not 0 <= v < order:
                raise SemigroupFileError(f"row {i} has entry {v!r} outside [0, {order})")
    labels = doc.get("names")
    if labels is not None:
        if not isinstance(labels, list) or len(labels) != order or not all(isinstance(s, str) for s in labels):
            raise SemigroupFileError(f"'names' must be a list of {order} strings")
    return {"order": order, "table": table, "names": labels}


def read_file(path) -> dict:
    try:
        raw = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise SemigroupFileError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise SemigroupFileError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc
    try:
        return parse_document(doc)
    except MalformedTable as exc:
        raise SemigroupFileError(str(exc)) from exc
