"""Bit-exact parsing, canonical serialization, and fingerprinting of catalog files.

Catalogs are interchange artifacts, so the reader is deliberately unforgiving:
duplicate JSON keys, unknown fields, missing fields, and ill-typed values are
all hard errors carrying a JSON path. The writer emits one canonical byte form
(UTF-8, LF, two-space indent, fixed key order, sorted arrays) so that equal
catalog values always serialize to identical bytes and the SHA-256 fingerprint
of those bytes can bind assessments to the exact catalog they rated.
"""

from __future__ import annotations

import hashlib
import json
from typing import Any

from .catalog import (
    CATALOG_VERSION,
    Catalog,
    Control,
    ControlGroup,
    Requirement,
    StandardRef,
    ValidationIssue,
    error_issues,
    validate,
)


class DocumentSyntaxError(ValueError):
    """Input is not well-formed UTF-8 JSON."""

    def __init__(self, message: str, byte_offset: int) -> None:
        super().__init__(f"{message} (byte {byte_offset})")
        self.byte_offset = byte_offset


class DocumentSchemaError(ValueError):
    """Well-formed JSON that does not match the document schema."""

    def __init__(self, path: str, message: str) -> None:
        super().__init__(f"{path}: {message}")
        self.path = path


class InvalidCatalogError(ValueError):
    """A catalog with validation errors was passed where a valid one is required."""

    def __init__(self, issues: list[ValidationIssue]) -> None:
        lines = "; ".join(f"{i.location}: {i.message}" for i in issues[:5])
        more = "" if len(issues) <= 5 else f" (+{len(issues) - 5} more)"
        super().__init__(f"catalog has validation errors: {lines}{more}")
        self.issues = issues


class _Pairs:
    """Raw key-value pairs of one JSON object, kept until the path is known."""

    __slots__ = ("pairs",)

    def __init__(self, pairs: list[tuple[str, Any]]) -> None:
        self.pairs = pairs


def _materialize(node: Any, path: str) -> Any:
    # Duplicate keys are detected here rather than in the hook so the error
    # can name the exact path of the offending object.
    if isinstance(node, _Pairs):
        out: dict[str, Any] = {}
        for key, value in node.pairs:
            if key in out:
                raise DocumentSchemaError(path, f"duplicate key {key!r}")
            out[key] = _materialize(value, f"{path}.{key}")
        return out
    if isinstance(node, list):
        return [_materialize(item, f"{path}[{i}]") for i, item in enumerate(node)]
    return node


def loads_strict(doc: bytes | str) -> Any:
    """Decode a JSON document, rejecting invalid UTF-8 and duplicate keys.

    Syntax problems raise DocumentSyntaxError with a byte offset; duplicate
    keys raise DocumentSchemaError with the path of the enclosing object.
    """
    if isinstance(doc, bytes):
        try:
            text = doc.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise DocumentSyntaxError("invalid UTF-8", exc.start) from None
    else:
        text = doc
    try:
        tree = json.loads(text, object_pairs_hook=_Pairs)
    except json.JSONDecodeError as exc:
        offset = len(text[: exc.pos].encode("utf-8"))
        raise DocumentSyntaxError(exc.msg, offset) from None
    return _materialize(tree, "$")


def _require_object(value: Any, path: str) -> dict[str, Any]:
    if not isinstance(value, dict):
        raise DocumentSchemaError(path, f"expected an object, got {type(value).__name__}")
    return value


def _require_keys(obj: dict[str, Any], required: tuple[str, ...], path: str) -> None:
    for key in required:
        if key not in obj:
            raise DocumentSchemaError(f"{path}.{key}", "missing required field")
    for key in obj:
        if key not in required:
            raise DocumentSchemaError(f"{path}.{key}", "unknown field")


def _string(obj: dict[str, Any], key: str, path: str) -> str:
    value = obj[key]
    if not isinstance(value, str):
        raise DocumentSchemaError(f"{path}.{key}", f"expected a string, got {type(value).__name__}")
    return value


def _integer(obj: dict[str, Any], key: str, path: str) -> int:
    value = obj[key]
    # bool is an int subclass; true/false must not pass as numbers.
    if isinstance(value, bool) or not isinstance(value, int):
        raise DocumentSchemaError(f"{path}.{key}", f"expected an integer, got {type(value).__name__}")
    return value


def _array(obj: dict[str, Any], key: str, path: str) -> list[Any]:
    value = obj[key]
    if not isinstance(value, list):
        raise DocumentSchemaError(f"{path}.{key}", f"expected an array, got {type(value).__name__}")
    return value


def _string_array(obj: dict[str, Any], key: str, path: str) -> list[str]:
    items = _array(obj, key, path)
    for i, item in enumerate(items):
        if not isinstance(item, str):
            raise DocumentSchemaError(
                f"{path}.{key}[{i}]", f"expected a string, got {type(item).__name__}"
            )
    return items


def parse_catalog(doc: bytes | str) -> Catalog:
    """Parse a catalog document into a Catalog value.

    Schema strictness only; run catalog.validate on the result for the
    semantic checks (references, partitions, prefixes).
    """
    root = _require_object(loads_strict(doc), "$")
    _require_keys(
        root, ("catalog_version", "name", "standards", "requirements", "controls", "groups"), "$"
    )

    version = _string(root, "catalog_version", "$")
    if version != CATALOG_VERSION:
        raise DocumentSchemaError(
            "$.catalog_version", f"unsupported version {version!r} (expected {CATALOG_VERSION!r})"
        )
    name = _string(root, "name", "$")

    standards = []
    for i, raw in enumerate(_array(root, "standards", "$")):
        path = f"$.standards[{i}]"
        entry = _require_object(raw, path)
        _require_keys(entry, ("id", "label", "id_prefix"), path)
        standards.append(
            StandardRef(
                id=_string(entry, "id", path),
                label=_string(entry, "label", path),
                id_prefix=_string(entry, "id_prefix", path),
            )
        )

    requirements = []
    for i, raw in enumerate(_array(root, "requirements", "$")):
        path = f"$.requirements[{i}]"
        entry = _require_object(raw, path)
        _require_keys(entry, ("id", "name", "description", "depends_on"), path)
        requirements.append(
            Requirement(
                id=_string(entry, "id", path),
                name=_string(entry, "name", path),
                description=_string(entry, "description", path),
                depends_on=tuple(_string_array(entry, "depends_on", path)),
            )
        )

    controls = []
    for i, raw in enumerate(_array(root, "controls", "$")):
        path = f"$.controls[{i}]"
        entry = _require_object(raw, path)
        _require_keys(entry, ("id", "standard", "title"), path)
        controls.append(
            Control(
                id=_string(entry, "id", path),
                standard=_string(entry, "standard", path),
                title=_string(entry, "title", path),
            )
        )

    groups = []
    for i, raw in enumerate(_array(root, "groups", "$")):
        path = f"$.groups[{i}]"
        entry = _require_object(raw, path)
        _require_keys(entry, ("requirement", "group_id", "controls", "assessment_guidance"), path)
        groups.append(
            ControlGroup(
                requirement=_string(entry, "requirement", path),
                group_id=_integer(entry, "group_id", path),
                controls=tuple(_string_array(entry, "controls", path)),
                assessment_guidance=_string(entry, "assessment_guidance", path),
            )
        )

    return Catalog(
        name=name,
        standards=tuple(standards),
        requirements=tuple(requirements),
        controls=tuple(controls),
        groups=tuple(groups),
        catalog_version=version,
    )


def catalog_to_doc(catalog: Catalog) -> dict[str, Any]:
    """The catalog as a plain dict in canonical key and array order."""
    return {
        "catalog_version": catalog.catalog_version,
        "name": catalog.name,
        "standards": [
            {"id": s.id, "label": s.label, "id_prefix": s.id_prefix} for s in catalog.standards
        ],
        "requirements": [
            {
                "id": r.id,
                "name": r.name,
                "description": r.description,
                "depends_on": list(r.depends_on),
            }
            for r in catalog.requirements
        ],
        "controls": [
            {"id": c.id, "standard": c.standard, "title": c.title} for c in catalog.controls
        ],
        "groups": [
            {
                "requirement": g.requirement,
                "group_id": g.group_id,
                "controls": list(g.controls),
                "assessment_guidance": g.assessment_guidance,
            }
            for g in catalog.groups
        ],
    }


def canonical_json_bytes(doc: Any) -> bytes:
    """Canonical rendering of an already canonically ordered document."""
    return (json.dumps(doc, ensure_ascii=False, indent=2) + "\n").encode("utf-8")


def serialize_catalog(catalog: Catalog) -> bytes:
    """Canonical bytes of a catalog; refuses catalogs with validation errors."""
    errors = error_issues(validate(catalog))
    if errors:
        raise InvalidCatalogError(errors)
    return canonical_json_bytes(catalog_to_doc(catalog))


def fingerprint(catalog: Catalog) -> str:
    """SHA-256 hex digest of the canonical serialization."""
    return hashlib.sha256(serialize_catalog(catalog)).hexdigest()
