"""In-memory state with JSON-file persistence.

One file per entity under the data directory, written atomically (temp file
plus rename) in canonical form, loaded fully at startup. Catalogs are
immutable once added; assessments carry an integer revision for optimistic
concurrency and their mutations are serialized per assessment id.
"""

from __future__ import annotations

import json
import os
import threading
import uuid
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator

from ..catalog import Catalog, error_issues, validate
from ..catalog_io import (
    canonical_json_bytes,
    fingerprint,
    loads_strict,
    parse_catalog,
    serialize_catalog,
)
from ..scoring import (
    Assessment,
    Rating,
    UnknownGroupKeyError,
    group_index,
    assessment_to_doc,
    parse_assessment,
)
from ..workflow import Project, parse_project, project_to_doc

STORED_ASSESSMENT_VERSION = "1"
STORED_PROJECT_VERSION = "1"


class NotFoundError(KeyError):
    def __init__(self, kind: str, key: str) -> None:
        super().__init__(f"{kind} {key!r} not found")
        self.kind = kind
        self.key = key


class RevisionConflictError(Exception):
    def __init__(self, current_revision: int) -> None:
        super().__init__(f"expected revision does not match current {current_revision}")
        self.current_revision = current_revision


@dataclass
class StoredAssessment:
    id: str
    revision: int
    assessment: Assessment


@dataclass
class StoredProject:
    id: str
    project: Project


def _atomic_write(path: Path, data: bytes) -> None:
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_bytes(data)
    os.replace(tmp, path)


class DataStore:
    """All service state. Reads are lock-free on immutable snapshots; writes
    take the registry lock, and assessment mutations additionally serialize
    on a per-assessment lock."""

    def __init__(self, data_dir: str | Path | None = None) -> None:
        self._data_dir = Path(data_dir) if data_dir is not None else None
        self._registry_lock = threading.Lock()
        self._catalogs: dict[str, Catalog] = {}
        self._catalog_bytes: dict[str, bytes] = {}
        self._assessments: dict[str, StoredAssessment] = {}
        self._assessment_locks: dict[str, threading.Lock] = {}
        self._projects: dict[str, StoredProject] = {}
        if self._data_dir is not None:
            self._load()

    # -- persistence --------------------------------------------------------

    def _subdir(self, name: str) -> Path:
        assert self._data_dir is not None
        path = self._data_dir / name
        path.mkdir(parents=True, exist_ok=True)
        return path

    def _load(self) -> None:
        assert self._data_dir is not None
        self._data_dir.mkdir(parents=True, exist_ok=True)
        for path in sorted(self._subdir("catalogs").glob("*.json")):
            catalog = parse_catalog(path.read_bytes())
            issues = error_issues(validate(catalog))
            if issues:
                raise ValueError(f"{path}: stored catalog has validation errors")
            digest = fingerprint(catalog)
            self._catalogs[digest] = catalog
            self._catalog_bytes[digest] = serialize_catalog(catalog)
        for path in sorted(self._subdir("assessments").glob("*.json")):
            record = self._parse_stored_assessment(path)
            if record.assessment.catalog_fingerprint not in self._catalogs:
                raise ValueError(f"{path}: assessment references an unknown catalog")
            self._assessments[record.id] = record
            self._assessment_locks[record.id] = threading.Lock()
        for path in sorted(self._subdir("projects").glob("*.json")):
            record = self._parse_stored_project(path)
            self._projects[record.id] = record

    @staticmethod
    def _parse_stored_assessment(path: Path) -> StoredAssessment:
        root = loads_strict(path.read_bytes())
        if (
            not isinstance(root, dict)
            or root.get("stored_assessment_version") != STORED_ASSESSMENT_VERSION
            or not isinstance(root.get("id"), str)
            or isinstance(root.get("revision"), bool)
            or not isinstance(root.get("revision"), int)
            or "assessment" not in root
        ):
            raise ValueError(f"{path}: not a stored assessment file")
        assessment = parse_assessment(json.dumps(root["assessment"]))
        return StoredAssessment(id=root["id"], revision=root["revision"], assessment=assessment)

    @staticmethod
    def _parse_stored_project(path: Path) -> StoredProject:
        root = loads_strict(path.read_bytes())
        if (
            not isinstance(root, dict)
            or root.get("stored_project_version") != STORED_PROJECT_VERSION
            or not isinstance(root.get("id"), str)
            or "project" not in root
        ):
            raise ValueError(f"{path}: not a stored project file")
        project = parse_project(json.dumps(root["project"]))
        return StoredProject(id=root["id"], project=project)

    def _persist_catalog(self, digest: str) -> None:
        if self._data_dir is None:
            return
        _atomic_write(self._subdir("catalogs") / f"{digest}.json", self._catalog_bytes[digest])

    def _persist_assessment(self, record: StoredAssessment) -> None:
        if self._data_dir is None:
            return
        doc = {
            "stored_assessment_version": STORED_ASSESSMENT_VERSION,
            "id": record.id,
            "revision": record.revision,
            "assessment": assessment_to_doc(record.assessment),
        }
        _atomic_write(self._subdir("assessments") / f"{record.id}.json", canonical_json_bytes(doc))

    def _persist_project(self, record: StoredProject) -> None:
        if self._data_dir is None:
            return
        doc = {
            "stored_project_version": STORED_PROJECT_VERSION,
            "id": record.id,
            "project": project_to_doc(record.project),
        }
        _atomic_write(self._subdir("projects") / f"{record.id}.json", canonical_json_bytes(doc))

    # -- catalogs ------------------------------------------------------------

    def add_catalog(self, catalog: Catalog) -> str:
        data = serialize_catalog(catalog)
        digest = fingerprint(catalog)
        with self._registry_lock:
            self._catalogs[digest] = catalog
            self._catalog_bytes[digest] = data
            self._persist_catalog(digest)
        return digest

    def catalog(self, digest: str) -> Catalog:
        try:
            return self._catalogs[digest]
        except KeyError:
            raise NotFoundError("catalog", digest) from None

    def catalog_bytes(self, digest: str) -> bytes:
        try:
            return self._catalog_bytes[digest]
        except KeyError:
            raise NotFoundError("catalog", digest) from None

    def catalogs(self) -> Iterator[tuple[str, Catalog]]:
        return iter(sorted(self._catalogs.items()))

    # -- assessments ---------------------------------------------------------

    def create_assessment(self, catalog_fingerprint: str, subject: str) -> StoredAssessment:
        catalog = self.catalog(catalog_fingerprint)
        assessment = Assessment(
            subject=subject,
            catalog_name=catalog.name,
            catalog_fingerprint=catalog_fingerprint,
            ratings={},
        )
        record = StoredAssessment(id=uuid.uuid4().hex, revision=0, assessment=assessment)
        with self._registry_lock:
            self._assessments[record.id] = record
            self._assessment_locks[record.id] = threading.Lock()
            self._persist_assessment(record)
        return record

    def assessment(self, assessment_id: str) -> StoredAssessment:
        try:
            return self._assessments[assessment_id]
        except KeyError:
            raise NotFoundError("assessment", assessment_id) from None

    def assessments(self) -> Iterator[StoredAssessment]:
        return iter(sorted(self._assessments.values(), key=lambda r: r.id))

    def put_rating(
        self,
        assessment_id: str,
        requirement: str,
        group_id: int,
        rating: Rating,
        expected_revision: int,
    ) -> int:
        record = self.assessment(assessment_id)
        lock = self._assessment_locks[assessment_id]
        with lock:
            # Re-read under the lock; the reference above may be stale.
            record = self._assessments[assessment_id]
            catalog = self.catalog(record.assessment.catalog_fingerprint)
            if (requirement, group_id) not in group_index(catalog):
                raise UnknownGroupKeyError(requirement, group_id)
            if record.revision != expected_revision:
                raise RevisionConflictError(record.revision)
            ratings = dict(record.assessment.ratings)
            ratings[(requirement, group_id)] = rating
            updated = StoredAssessment(
                id=record.id,
                revision=record.revision + 1,
                assessment=Assessment(
                    subject=record.assessment.subject,
                    catalog_name=record.assessment.catalog_name,
                    catalog_fingerprint=record.assessment.catalog_fingerprint,
                    ratings=ratings,
                ),
            )
            self._assessments[assessment_id] = updated
            self._persist_assessment(updated)
            return updated.revision

    # -- projects ------------------------------------------------------------

    def add_project(self, project: Project) -> StoredProject:
        record = StoredProject(id=uuid.uuid4().hex, project=project)
        with self._registry_lock:
            self._projects[record.id] = record
            self._persist_project(record)
        return record

    def project(self, project_id: str) -> StoredProject:
        try:
            return self._projects[project_id]
        except KeyError:
            raise NotFoundError("project", project_id) from None

    def projects(self) -> Iterator[StoredProject]:
        return iter(sorted(self._projects.values(), key=lambda r: r.id))

    def replace_project(self, project_id: str, project: Project) -> StoredProject:
        with self._registry_lock:
            if project_id not in self._projects:
                raise NotFoundError("project", project_id)
            record = StoredProject(id=project_id, project=project)
            self._projects[project_id] = record
            self._persist_project(record)
            return record
