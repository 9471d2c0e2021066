"""Effort estimation, applicability scoring, residual gap analysis, and screening.

Relative implementation effort of a control group is the ratio of its control
count to the largest control count among the groups of the same requirement.
Every value is kept as an exact rational (fractions.Fraction); floats never
enter the computation and rounding happens once, at display time, as fixed
two-decimal round-half-away-from-zero.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Iterable, Mapping

from .catalog import Catalog, ControlGroup
from .catalog_io import (
    DocumentSchemaError,
    canonical_json_bytes,
    fingerprint,
    loads_strict,
)

ASSESSMENT_VERSION = "1"

_FINGERPRINT_RE = re.compile(r"^[0-9a-f]{64}$")
_GROUP_ID_RE = re.compile(r"^(0|[1-9][0-9]*)$")

#: Topics a candidate platform must document to pass screening.
REQUIRED_TOPICS = frozenset({"authentication", "encryption", "user_management"})

#: Search keywords counted toward the screening keyword criterion.
SEARCH_KEYWORDS = frozenset({"remote access", "IoT", "Industry 4.0"})


class EffortDomainError(ValueError):
    """ct/ct_max outside the defined domain."""


class GroupScopeError(ValueError):
    """count_max applied to an empty or mixed-requirement group list."""


class FingerprintMismatchError(ValueError):
    """Assessment bound to a different catalog than the one supplied."""

    def __init__(self, expected: str, actual: str) -> None:
        super().__init__(f"assessment is bound to catalog {actual!r}, not {expected!r}")
        self.expected = expected
        self.actual = actual


class UnknownGroupKeyError(KeyError):
    """A rating references a (requirement, group_id) absent from the catalog."""

    def __init__(self, requirement: str, group_id: int) -> None:
        super().__init__(f"{requirement}/{group_id}")
        self.requirement = requirement
        self.group_id = group_id


class Rating(str, Enum):
    """Applicability of a control group: full earns 1 point, partial 0.5, none 0."""

    FULL = "full"
    PARTIAL = "partial"
    NONE = "none"

    @property
    def weight(self) -> Fraction:
        return _WEIGHTS[self]


_WEIGHTS = {
    Rating.FULL: Fraction(1),
    Rating.PARTIAL: Fraction(1, 2),
    Rating.NONE: Fraction(0),
}


@dataclass(frozen=True)
class Assessment:
    """Ratings of one subject against one exact catalog version.

    Ratings map (requirement id, group_id) to a Rating; groups without an
    entry count as NONE. The fingerprint pins the catalog revision so stale
    ratings cannot silently apply to an edited catalog.
    """

    subject: str
    catalog_name: str
    catalog_fingerprint: str
    ratings: dict[tuple[str, int], Rating] = field(default_factory=dict)

    def __post_init__(self) -> None:
        ordered = dict(sorted(self.ratings.items(), key=lambda kv: (kv[0][0], kv[0][1])))
        object.__setattr__(self, "ratings", ordered)


@dataclass(frozen=True)
class EffortRow:
    requirement: str
    group_id: int
    ct: int
    ct_max: int
    ie: Fraction


@dataclass(frozen=True)
class RequirementScore:
    requirement: str
    points: Fraction
    max_points: int


@dataclass(frozen=True)
class GroupResidual:
    requirement: str
    group_id: int
    rating: Rating
    ie: Fraction
    residual: Fraction


@dataclass(frozen=True)
class ResidualReport:
    groups: tuple[GroupResidual, ...]
    by_requirement: tuple[tuple[str, Fraction], ...]
    total: Fraction


@dataclass(frozen=True)
class ImportanceRow:
    requirement: str
    total: int
    by_standard: tuple[tuple[str, int], ...]
    rank: int


@dataclass(frozen=True)
class ImportanceReport:
    rows: tuple[ImportanceRow, ...]
    dependencies: tuple[tuple[str, str], ...]


@dataclass(frozen=True)
class ScreeningProfile:
    """Evidence gathered about one candidate platform."""

    certifications: int
    industry40_references: int
    documented_topics: frozenset[str]
    matched_keywords: frozenset[str]

    def __post_init__(self) -> None:
        if self.certifications < 0 or self.industry40_references < 0:
            raise ValueError("screening counts must be nonnegative")
        object.__setattr__(self, "documented_topics", frozenset(self.documented_topics))
        object.__setattr__(self, "matched_keywords", frozenset(self.matched_keywords))
        unknown_topics = self.documented_topics - REQUIRED_TOPICS
        if unknown_topics:
            raise ValueError(f"unknown topics: {sorted(unknown_topics)}")
        unknown_keywords = self.matched_keywords - SEARCH_KEYWORDS
        if unknown_keywords:
            raise ValueError(f"unknown keywords: {sorted(unknown_keywords)}")


@dataclass(frozen=True)
class ScreeningVerdict:
    passed: bool
    failed_criteria: tuple[str, ...]


# ---------------------------------------------------------------------------
# Effort estimation
# ---------------------------------------------------------------------------


def control_count(group: ControlGroup) -> int:
    """ct: the number of controls in a group (each control counts exactly 1)."""
    return len(group.controls)


def count_max(groups: list[ControlGroup]) -> int:
    """ct_max: the largest control count among the groups of one requirement.

    The scope is deliberately a single requirement; normalizing against the
    whole catalog would let an unrelated requirement's group sizes distort
    the ratio.
    """
    if not groups:
        raise GroupScopeError("count_max requires at least one group")
    requirements = {g.requirement for g in groups}
    if len(requirements) > 1:
        raise GroupScopeError(f"groups span multiple requirements: {sorted(requirements)}")
    return max(control_count(g) for g in groups)


def implementation_effort(ct: int, ct_max: int) -> Fraction:
    """Relative implementation effort ct/ct_max as an exact rational."""
    if ct < 1 or ct > ct_max:
        raise EffortDomainError(f"ct must satisfy 1 <= ct <= ct_max, got ct={ct}, ct_max={ct_max}")
    return Fraction(ct, ct_max)


def effort_table(catalog: Catalog) -> list[EffortRow]:
    """One effort row per control group, ordered by (requirement id, group_id)."""
    by_requirement: dict[str, list[ControlGroup]] = {}
    for group in catalog.groups:
        by_requirement.setdefault(group.requirement, []).append(group)
    rows: list[EffortRow] = []
    for requirement in sorted(by_requirement):
        groups = by_requirement[requirement]
        ct_max = count_max(groups)
        for group in sorted(groups, key=lambda g: g.group_id):
            ct = control_count(group)
            rows.append(EffortRow(requirement, group.group_id, ct, ct_max, implementation_effort(ct, ct_max)))
    return rows


# ---------------------------------------------------------------------------
# Display formatting
# ---------------------------------------------------------------------------


def _two_decimals(value: Fraction) -> str:
    # Integer arithmetic only: scale to hundredths, round half away from zero.
    if value < 0:
        raise ValueError(f"negative amount: {value}")
    n = value.numerator * 100
    d = value.denominator
    q, r = divmod(n, d)
    if 2 * r >= d:
        q += 1
    return f"{q // 100}.{q % 100:02d}"


def format_effort(ie: Fraction) -> str:
    """Two-decimal display of an effort ratio; the domain is (0, 1]."""
    if ie <= 0 or ie > 1:
        raise EffortDomainError(f"effort must lie in (0, 1], got {ie}")
    return _two_decimals(ie)


def format_amount(value: Fraction) -> str:
    """Two-decimal display of a nonnegative amount (residuals may exceed 1)."""
    return _two_decimals(value)


def format_points(points: Fraction) -> str:
    """Minimal display of a point total: whole points bare, halves with one decimal."""
    if points.denominator == 1:
        return str(points.numerator)
    if points.denominator == 2:
        return f"{points.numerator // 2}.5"
    raise ValueError(f"points must be a multiple of 1/2, got {points}")


def exact_string(value: Fraction) -> str:
    """Lossless "n/d" (or integer) rendering, for clients that need exact deltas."""
    return str(value)


# ---------------------------------------------------------------------------
# Assessment scoring
# ---------------------------------------------------------------------------


def group_index(catalog: Catalog) -> dict[tuple[str, int], ControlGroup]:
    return {(g.requirement, g.group_id): g for g in catalog.groups}


def _check_binding(catalog: Catalog, assessment: Assessment) -> None:
    actual = fingerprint(catalog)
    if assessment.catalog_fingerprint != actual:
        raise FingerprintMismatchError(actual, assessment.catalog_fingerprint)
    index = group_index(catalog)
    for requirement, group_id in assessment.ratings:
        if (requirement, group_id) not in index:
            raise UnknownGroupKeyError(requirement, group_id)


def score_assessment(catalog: Catalog, assessment: Assessment) -> list[RequirementScore]:
    """Point totals per requirement: full 1, partial 0.5, unrated or none 0."""
    _check_binding(catalog, assessment)
    scores: list[RequirementScore] = []
    for requirement in catalog.requirements:
        groups = [g for g in catalog.groups if g.requirement == requirement.id]
        points = sum(
            (assessment.ratings.get((requirement.id, g.group_id), Rating.NONE).weight for g in groups),
            start=Fraction(0),
        )
        scores.append(RequirementScore(requirement.id, points, len(groups)))
    return scores


def residual_effort(catalog: Catalog, assessment: Assessment) -> ResidualReport:
    """Unimplemented effort per group: (1 - rating weight) x ie, totalled exactly.

    A partial rating is assumed to leave half the group's effort outstanding.
    """
    _check_binding(catalog, assessment)
    groups: list[GroupResidual] = []
    by_requirement: dict[str, Fraction] = {r.id: Fraction(0) for r in catalog.requirements}
    total = Fraction(0)
    for row in effort_table(catalog):
        rating = assessment.ratings.get((row.requirement, row.group_id), Rating.NONE)
        residual = (1 - rating.weight) * row.ie
        groups.append(GroupResidual(row.requirement, row.group_id, rating, row.ie, residual))
        by_requirement[row.requirement] += residual
        total += residual
    ordered = tuple((r.id, by_requirement[r.id]) for r in catalog.requirements)
    return ResidualReport(tuple(groups), ordered, total)


def combine(a: Assessment, b: Assessment) -> Assessment:
    """Pointwise best rating of two assessments of the same catalog.

    Models deploying both subjects side by side: a group is covered as well
    as the better of the two covers it.
    """
    if a.catalog_fingerprint != b.catalog_fingerprint:
        raise FingerprintMismatchError(a.catalog_fingerprint, b.catalog_fingerprint)
    merged: dict[tuple[str, int], Rating] = dict(a.ratings)
    for key, rating in b.ratings.items():
        if key not in merged or rating.weight > merged[key].weight:
            merged[key] = rating
    return Assessment(
        subject=f"{a.subject} + {b.subject}",
        catalog_name=a.catalog_name,
        catalog_fingerprint=a.catalog_fingerprint,
        ratings=merged,
    )


def requirement_importance(catalog: Catalog) -> ImportanceReport:
    """Distinct control counts per requirement, split by standard, ranked.

    Requirements backed by more controls rank higher (rank 1 first); ties
    break lexicographically by requirement id for determinism.
    """
    standard_of = {c.id: c.standard for c in catalog.controls}
    standard_ids = [s.id for s in catalog.standards]
    counts: dict[str, dict[str, int]] = {}
    totals: dict[str, int] = {}
    for requirement in catalog.requirements:
        seen: set[str] = set()
        for group in catalog.groups:
            if group.requirement == requirement.id:
                seen.update(group.controls)
        per_standard = {sid: 0 for sid in standard_ids}
        for control_id in seen:
            owner = standard_of.get(control_id)
            if owner in per_standard:
                per_standard[owner] += 1
        counts[requirement.id] = per_standard
        totals[requirement.id] = len(seen)

    ranking = sorted(totals, key=lambda rid: (-totals[rid], rid))
    rank_of = {rid: i + 1 for i, rid in enumerate(ranking)}
    rows = tuple(
        ImportanceRow(
            requirement=rid,
            total=totals[rid],
            by_standard=tuple((sid, counts[rid][sid]) for sid in standard_ids),
            rank=rank_of[rid],
        )
        for rid in ranking
    )
    dependencies = tuple(
        (r.id, dep) for r in catalog.requirements for dep in r.depends_on
    )
    return ImportanceReport(rows, dependencies)


def screen_candidate(profile: ScreeningProfile) -> ScreeningVerdict:
    """Minimum bar for considering an existing platform at all.

    Pass requires: at least one security certification, at least two
    documented uses in industrial settings, documentation covering all
    required topics, and at least two of the search keywords matched.
    """
    failed: list[str] = []
    if profile.certifications < 1:
        failed.append("security_certification")
    if profile.industry40_references < 2:
        failed.append("industry40_references")
    if profile.documented_topics != REQUIRED_TOPICS:
        failed.append("documented_topics")
    if len(profile.matched_keywords) < 2:
        failed.append("search_keywords")
    return ScreeningVerdict(passed=not failed, failed_criteria=tuple(failed))


# ---------------------------------------------------------------------------
# Assessment documents
# ---------------------------------------------------------------------------


def rating_key(requirement: str, group_id: int) -> str:
    return f"{requirement}/{group_id}"


def parse_rating_key(key: str, path: str) -> tuple[str, int]:
    requirement, sep, gid = key.rpartition("/")
    if not sep or not requirement:
        raise DocumentSchemaError(path, f"rating key {key!r} must look like 'REQ/group_id'")
    if not _GROUP_ID_RE.match(gid) or gid == "0":
        raise DocumentSchemaError(path, f"rating key {key!r} needs a positive integer group id")
    return requirement, int(gid)


def parse_assessment(doc: bytes | str) -> Assessment:
    """Parse an assessment document; strictness mirrors parse_catalog."""
    root = loads_strict(doc)
    if not isinstance(root, dict):
        raise DocumentSchemaError("$", f"expected an object, got {type(root).__name__}")
    required = ("assessment_version", "subject", "catalog_name", "catalog_fingerprint", "ratings")
    for key in required:
        if key not in root:
            raise DocumentSchemaError(f"$.{key}", "missing required field")
    for key in root:
        if key not in required:
            raise DocumentSchemaError(f"$.{key}", "unknown field")

    version = root["assessment_version"]
    if not isinstance(version, str):
        raise DocumentSchemaError("$.assessment_version", "expected a string")
    if version != ASSESSMENT_VERSION:
        raise DocumentSchemaError(
            "$.assessment_version",
            f"unsupported version {version!r} (expected {ASSESSMENT_VERSION!r})",
        )
    subject = root["subject"]
    if not isinstance(subject, str):
        raise DocumentSchemaError("$.subject", "expected a string")
    catalog_name = root["catalog_name"]
    if not isinstance(catalog_name, str):
        raise DocumentSchemaError("$.catalog_name", "expected a string")
    digest = root["catalog_fingerprint"]
    if not isinstance(digest, str) or not _FINGERPRINT_RE.match(digest):
        raise DocumentSchemaError("$.catalog_fingerprint", "expected 64 lowercase hex characters")
    raw_ratings = root["ratings"]
    if not isinstance(raw_ratings, dict):
        raise DocumentSchemaError("$.ratings", "expected an object")

    ratings: dict[tuple[str, int], Rating] = {}
    for key, token in raw_ratings.items():
        path = f"$.ratings.{key}"
        parsed = parse_rating_key(key, path)
        if not isinstance(token, str) or token not in Rating._value2member_map_:
            raise DocumentSchemaError(path, f"rating must be one of 'full', 'partial', 'none', got {token!r}")
        ratings[parsed] = Rating(token)

    return Assessment(
        subject=subject,
        catalog_name=catalog_name,
        catalog_fingerprint=digest,
        ratings=ratings,
    )


def assessment_to_doc(assessment: Assessment) -> dict[str, Any]:
    ordered = sorted(assessment.ratings.items(), key=lambda kv: (kv[0][0], kv[0][1]))
    return {
        "assessment_version": ASSESSMENT_VERSION,
        "subject": assessment.subject,
        "catalog_name": assessment.catalog_name,
        "catalog_fingerprint": assessment.catalog_fingerprint,
        "ratings": {rating_key(req, gid): rating.value for (req, gid), rating in ordered},
    }


def serialize_assessment(assessment: Assessment) -> bytes:
    return canonical_json_bytes(assessment_to_doc(assessment))


# ---------------------------------------------------------------------------
# Result documents (shared by the HTTP service and the CLI)
# ---------------------------------------------------------------------------


def effort_doc(catalog: Catalog) -> dict[str, Any]:
    return {
        "catalog_fingerprint": fingerprint(catalog),
        "rows": [
            {
                "requirement": row.requirement,
                "group_id": row.group_id,
                "ct": row.ct,
                "ct_max": row.ct_max,
                "ie": format_effort(row.ie),
                "ie_exact": exact_string(row.ie),
            }
            for row in effort_table(catalog)
        ],
    }


def importance_doc(catalog: Catalog) -> dict[str, Any]:
    report = requirement_importance(catalog)
    return {
        "catalog_fingerprint": fingerprint(catalog),
        "requirements": [
            {
                "requirement": row.requirement,
                "rank": row.rank,
                "total": row.total,
                "by_standard": {sid: count for sid, count in row.by_standard},
            }
            for row in report.rows
        ],
        "dependencies": [
            {"requirement": req, "depends_on": dep} for req, dep in report.dependencies
        ],
    }


def summary_doc(catalog: Catalog, assessment: Assessment) -> dict[str, Any]:
    """Scores plus residual efforts, every number rendered by the library.

    Display strings carry the rounded two-decimal form; *_exact fields carry
    the lossless rational so clients can compute deltas without reintroducing
    rounding error.
    """
    scores = score_assessment(catalog, assessment)
    residuals = residual_effort(catalog, assessment)
    return {
        "subject": assessment.subject,
        "catalog_name": assessment.catalog_name,
        "catalog_fingerprint": assessment.catalog_fingerprint,
        "scores": [
            {
                "requirement": s.requirement,
                "points": format_points(s.points),
                "max_points": s.max_points,
                "normalized": (
                    format_amount(Fraction(s.points, s.max_points)) if s.max_points else "0.00"
                ),
            }
            for s in scores
        ],
        "residuals": [
            {
                "requirement": g.requirement,
                "group_id": g.group_id,
                "rating": g.rating.value,
                "ie": format_effort(g.ie),
                "ie_exact": exact_string(g.ie),
                "residual": format_amount(g.residual),
                "residual_exact": exact_string(g.residual),
            }
            for g in residuals.groups
        ],
        "requirement_residuals": [
            {
                "requirement": requirement,
                "residual": format_amount(total),
                "residual_exact": exact_string(total),
            }
            for requirement, total in residuals.by_requirement
        ],
        "total_residual": {
            "residual": format_amount(residuals.total),
            "residual_exact": exact_string(residuals.total),
        },
    }


def apply_overlay(
    assessment: Assessment, overlay: Mapping[tuple[str, int], Rating]
) -> Assessment:
    """A copy of the assessment with overlay ratings taking precedence."""
    merged = dict(assessment.ratings)
    merged.update(overlay)
    return Assessment(
        subject=assessment.subject,
        catalog_name=assessment.catalog_name,
        catalog_fingerprint=assessment.catalog_fingerprint,
        ratings=merged,
    )


def combine_many(assessments: Iterable[Assessment]) -> Assessment:
    items = list(assessments)
    if not items:
        raise ValueError("combine_many requires at least one assessment")
    combined = items[0]
    for item in items[1:]:
        combined = combine(combined, item)
    return combined
