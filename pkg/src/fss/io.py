"""JSON input documents.

Every scalar is written as a string: ``"a/b"`` over the rationals and a
decimal residue over GF(p), so files round-trip bit-exactly.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field as dc_field
from pathlib import Path
from typing import Any

from .errors import ParseError
from .field import FieldSpec
from .linalg import Matrix


@dataclass
class InputDocument:
    field: FieldSpec
    names: list[str]
    faithful: list[Matrix | None]
    module: list[Matrix]
    metadata: dict = dc_field(default_factory=dict)

    @property
    def has_faithful(self) -> bool:
        return all(f is not None for f in self.faithful)

    def to_json(self) -> dict:
        gens = []
        for name, f, m in zip(self.names, self.faithful, self.module):
            g: dict[str, Any] = {"name": name}
            if f is not None:
                g["faithful"] = f.to_strings()
            g["module"] = m.to_strings()
            gens.append(g)
        out: dict[str, Any] = {"field": self.field.to_json(), "generators": gens}
        if self.metadata:
            out["metadata"] = self.metadata
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=False) + "\n"

    def digest(self) -> str:
        return hashlib.sha256(canonical_json(self.to_json()).encode()).hexdigest()


def canonical_json(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _matrix(field: FieldSpec, obj: Any, where: str) -> Matrix:
    if not isinstance(obj, list) or not obj or not all(isinstance(r, list) for r in obj):
        raise ParseError(f"{where}: expected a non-empty list of rows")
    width = len(obj[0])
    if width == 0 or any(len(r) != width for r in obj):
        raise ParseError(f"{where}: rows must be non-empty and of equal length")
    if any(not isinstance(v, str) for row in obj for v in row):
        raise ParseError(f"{where}: scalars must be JSON strings")
    try:
        data = [[field.parse(v) for v in row] for row in obj]
    except (ParseError, ValueError, TypeError) as exc:
        raise ParseError(f"{where}: {exc}") from exc
    return Matrix._trusted(field, data)


def parse_document(obj: Any, *, require_faithful: bool = True) -> InputDocument:
    """Validate a decoded JSON object against the input schema."""
    if not isinstance(obj, dict):
        raise ParseError("input must be a JSON object")
    unknown = set(obj) - {"field", "generators", "metadata"}
    if unknown:
        raise ParseError(f"unknown top-level keys: {sorted(unknown)}")
    if "field" not in obj or "generators" not in obj:
        raise ParseError("input needs 'field' and 'generators'")
    field = FieldSpec.from_json(obj["field"])
    gens = obj["generators"]
    if not isinstance(gens, list) or not gens:
        raise ParseError("'generators' must be a non-empty list")
    names, faithful, module = [], [], []
    for k, g in enumerate(gens):
        if not isinstance(g, dict):
            raise ParseError(f"generator {k}: expected an object")
        name = g.get("name")
        if not isinstance(name, str) or not name:
            raise ParseError(f"generator {k}: missing name")
        if "module" not in g:
            raise ParseError(f"generator {name}: missing module matrix")
        if "faithful" not in g and require_faithful:
            raise ParseError(f"generator {name}: missing faithful matrix")
        names.append(name)
        module.append(_matrix(field, g["module"], f"generator {name} module"))
        faithful.append(_matrix(field, g["faithful"], f"generator {name} faithful") if "faithful" in g else None)
    if len(set(names)) != len(names):
        raise ParseError("generator names must be distinct")
    for label, mats in (("module", module), ("faithful", [f for f in faithful if f is not None])):
        shapes = {m.shape for m in mats}
        if len(shapes) > 1 or any(r != c for r, c in shapes):
            raise ParseError(f"{label} matrices must be square and share one size")
    if any(f is None for f in faithful) and any(f is not None for f in faithful):
        raise ParseError("either every generator or none carries a faithful matrix")
    meta = obj.get("metadata", {})
    if not isinstance(meta, dict):
        raise ParseError("'metadata' must be an object")
    return InputDocument(field, names, faithful, module, meta)


def loads_document(text: str, *, require_faithful: bool = True) -> InputDocument:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    return parse_document(obj, require_faithful=require_faithful)


def read_document(path: str | Path, *, require_faithful: bool = True) -> InputDocument:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    return loads_document(text, require_faithful=require_faithful)


def write_document(doc: InputDocument, path: str | Path) -> None:
    Path(path).write_text(doc.dumps())


def read_json(path: str | Path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON: {exc}") from exc
