"""Domain model for requirements-and-controls catalogs.

A catalog maps security requirements to control groups, where each group
collects similar controls drawn from one or more security standards. Catalog
values are immutable and canonically ordered on construction, so value
equality and downstream serialization do not depend on input order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

CATALOG_VERSION = "1"

CONTROL_ID_PATTERN = re.compile(r"^[A-Za-z0-9._-]+$")


class Severity(str, Enum):
    ERROR = "error"
    WARNING = "warning"


#: Machine codes validate() may emit. The set is fixed; consumers can match on it.
ISSUE_CODES = frozenset(
    {
        "unsupported_catalog_version",
        "empty_identifier",
        "empty_standard_prefix",
        "duplicate_standard_id",
        "duplicate_requirement_id",
        "duplicate_control_id",
        "duplicate_group_id",
        "dangling_standard_ref",
        "dangling_requirement_ref",
        "dangling_dependency_ref",
        "dangling_control_ref",
        "self_dependency",
        "invalid_control_id",
        "control_prefix_mismatch",
        "nonpositive_group_id",
        "empty_group",
        "duplicate_control_in_group",
        "duplicate_control_in_requirement",
        "requirement_without_groups",
        "standard_without_controls",
    }
)


class UnknownRequirementError(KeyError):
    """A requirement id that is not present in the catalog."""


@dataclass(frozen=True)
class ValidationIssue:
    severity: Severity
    code: str
    location: str
    message: str


@dataclass(frozen=True)
class StandardRef:
    """A security standard (or standard family) controls are drawn from."""

    id: str
    label: str
    id_prefix: str


@dataclass(frozen=True)
class Requirement:
    """A named security need that controls are mapped against."""

    id: str
    name: str
    description: str = ""
    depends_on: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "depends_on", tuple(self.depends_on))


@dataclass(frozen=True)
class Control:
    """A single measure from a standard; only the identifier and a short
    paraphrase title are stored, never the licensed standard text."""

    id: str
    standard: str
    title: str = ""


@dataclass(frozen=True)
class ControlGroup:
    """A set of similar controls under one requirement; the unit of
    assessment and effort estimation. Member ids are kept sorted."""

    requirement: str
    group_id: int
    controls: tuple[str, ...]
    assessment_guidance: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "controls", tuple(sorted(self.controls)))


@dataclass(frozen=True)
class Catalog:
    """An immutable catalog; entity lists are canonically sorted on construction
    (standards, requirements, controls by id; groups by requirement then group id)."""

    name: str
    standards: tuple[StandardRef, ...]
    requirements: tuple[Requirement, ...]
    controls: tuple[Control, ...]
    groups: tuple[ControlGroup, ...]
    catalog_version: str = CATALOG_VERSION

    def __post_init__(self) -> None:
        object.__setattr__(self, "standards", tuple(sorted(self.standards, key=lambda s: s.id)))
        object.__setattr__(self, "requirements", tuple(sorted(self.requirements, key=lambda r: r.id)))
        object.__setattr__(self, "controls", tuple(sorted(self.controls, key=lambda c: c.id)))
        object.__setattr__(
            self, "groups", tuple(sorted(self.groups, key=lambda g: (g.requirement, g.group_id)))
        )

    def requirement_ids(self) -> tuple[str, ...]:
        return tuple(r.id for r in self.requirements)


def groups_of(catalog: Catalog, requirement_id: str) -> list[ControlGroup]:
    """Control groups of one requirement, ascending by group id.

    Raises UnknownRequirementError if the requirement does not exist.
    """
    if not any(r.id == requirement_id for r in catalog.requirements):
        raise UnknownRequirementError(requirement_id)
    return [g for g in catalog.groups if g.requirement == requirement_id]


def validate(catalog: Catalog) -> list[ValidationIssue]:
    """Check every structural invariant of a catalog.

    Returns an empty list iff the catalog is sound. Issues are never raised;
    the list is deterministically ordered by (location, code, message).
    Referential problems are errors; empty requirements and unused standards
    are warnings.
    """
    issues: list[ValidationIssue] = []

    def error(code: str, location: str, message: str) -> None:
        issues.append(ValidationIssue(Severity.ERROR, code, location, message))

    def warning(code: str, location: str, message: str) -> None:
        issues.append(ValidationIssue(Severity.WARNING, code, location, message))

    if catalog.catalog_version != CATALOG_VERSION:
        error(
            "unsupported_catalog_version",
            "$",
            f"catalog_version {catalog.catalog_version!r} is not supported (expected {CATALOG_VERSION!r})",
        )

    standards_by_id: dict[str, StandardRef] = {}
    for std in catalog.standards:
        loc = f"standards[{std.id}]"
        if not std.id:
            error("empty_identifier", loc, "standard id must be nonempty")
        elif std.id in standards_by_id:
            error("duplicate_standard_id", loc, f"standard id {std.id!r} declared more than once")
        else:
            standards_by_id[std.id] = std
        if not std.id_prefix:
            error("empty_standard_prefix", loc, f"standard {std.id!r} has an empty id_prefix")

    requirement_ids: set[str] = set()
    seen_requirements: set[str] = set()
    for req in catalog.requirements:
        loc = f"requirements[{req.id}]"
        if not req.id:
            error("empty_identifier", loc, "requirement id must be nonempty")
        elif req.id in seen_requirements:
            error("duplicate_requirement_id", loc, f"requirement id {req.id!r} declared more than once")
        seen_requirements.add(req.id)
        requirement_ids.add(req.id)

    for req in catalog.requirements:
        loc = f"requirements[{req.id}]"
        for dep in req.depends_on:
            if dep == req.id:
                error("self_dependency", loc, f"requirement {req.id!r} depends on itself")
            elif dep not in requirement_ids:
                error("dangling_dependency_ref", loc, f"requirement {req.id!r} depends on unknown requirement {dep!r}")

    control_ids: set[str] = set()
    for ctl in catalog.controls:
        loc = f"controls[{ctl.id}]"
        if not ctl.id:
            error("empty_identifier", loc, "control id must be nonempty")
        elif not CONTROL_ID_PATTERN.match(ctl.id):
            error("invalid_control_id", loc, f"control id {ctl.id!r} contains characters outside A-Z a-z 0-9 . _ -")
        if ctl.id in control_ids:
            error("duplicate_control_id", loc, f"control id {ctl.id!r} declared more than once")
        control_ids.add(ctl.id)
        std = standards_by_id.get(ctl.standard)
        if std is None:
            error("dangling_standard_ref", loc, f"control {ctl.id!r} references unknown standard {ctl.standard!r}")
        elif std.id_prefix and not ctl.id.startswith(std.id_prefix + "-"):
            error(
                "control_prefix_mismatch",
                loc,
                f"control id {ctl.id!r} must start with {std.id_prefix + '-'!r} (prefix of standard {std.id!r})",
            )

    group_keys: set[tuple[str, int]] = set()
    # requirement id -> control id -> sorted group ids the control appears in
    membership: dict[str, dict[str, list[int]]] = {}
    for grp in catalog.groups:
        loc = f"groups[{grp.requirement}/{grp.group_id}]"
        if grp.requirement not in requirement_ids:
            error("dangling_requirement_ref", loc, f"group references unknown requirement {grp.requirement!r}")
        if grp.group_id < 1:
            error("nonpositive_group_id", loc, f"group_id must be a positive integer, got {grp.group_id}")
        key = (grp.requirement, grp.group_id)
        if key in group_keys:
            error("duplicate_group_id", loc, f"group id {grp.group_id} declared twice under requirement {grp.requirement!r}")
        group_keys.add(key)
        if not grp.controls:
            error("empty_group", loc, "control group lists no controls")
        seen_in_group: set[str] = set()
        for cid in grp.controls:
            if cid in seen_in_group:
                continue  # flagged once below
            seen_in_group.add(cid)
            if cid not in control_ids:
                error("dangling_control_ref", loc, f"group references missing control {cid!r}")
            membership.setdefault(grp.requirement, {}).setdefault(cid, []).append(grp.group_id)
        for cid in sorted(set(c for c in grp.controls if grp.controls.count(c) > 1)):
            error("duplicate_control_in_group", loc, f"control {cid!r} listed more than once in this group")

    # Partition rule: within one requirement a control may belong to one group only.
    for req_id in sorted(membership):
        for cid, gids in sorted(membership[req_id].items()):
            if len(gids) > 1:
                error(
                    "duplicate_control_in_requirement",
                    f"requirements[{req_id}]",
                    f"control {cid!r} appears in groups {', '.join(str(g) for g in gids)} of requirement {req_id!r}",
                )

    requirements_with_groups = {g.requirement for g in catalog.groups}
    for req in catalog.requirements:
        if req.id not in requirements_with_groups:
            warning("requirement_without_groups", f"requirements[{req.id}]", f"requirement {req.id!r} has no control groups")

    standards_in_use = {c.standard for c in catalog.controls}
    for std in catalog.standards:
        if std.id not in standards_in_use:
            warning("standard_without_controls", f"standards[{std.id}]", f"standard {std.id!r} has no controls")

    issues.sort(key=lambda i: (i.location, i.code, i.message))
    return issues


def has_errors(issues: Iterable[ValidationIssue]) -> bool:
    return any(i.severity is Severity.ERROR for i in issues)


def error_issues(issues: Sequence[ValidationIssue]) -> list[ValidationIssue]:
    return [i for i in issues if i.severity is Severity.ERROR]
