"""HTTP API over the core library.

Every JSON response body is rendered through the same canonical serializer
the library uses, so a byte-for-byte comparison against direct library
output is a meaningful test. Handlers are synchronous on purpose: they do
pure CPU work and take short locks, and the threadpool keeps concurrent
mutations genuinely concurrent.
"""

from __future__ import annotations

from pathlib import Path
from typing import Any

from fastapi import FastAPI, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.staticfiles import StaticFiles

from ..catalog import Severity, validate
from ..catalog_io import (
    DocumentSchemaError,
    DocumentSyntaxError,
    canonical_json_bytes,
    parse_catalog,
)
from ..scoring import (
    FingerprintMismatchError,
    Rating,
    ScreeningProfile,
    UnknownGroupKeyError,
    apply_overlay,
    assessment_to_doc,
    combine_many,
    effort_doc,
    importance_doc,
    parse_rating_key,
    screen_candidate,
    summary_doc,
)
from ..workflow import (
    Outcome,
    WorkflowError,
    new_project,
    advance,
    parse_artifact,
    project_to_doc,
    resolve_control,
)
from .schemas import (
    AdvanceRequest,
    CombineRequest,
    CreateAssessmentRequest,
    CreateProjectRequest,
    PutRatingRequest,
    ResolveRequest,
    ScreeningRequest,
    WhatIfRequest,
)
from .store import DataStore, NotFoundError, RevisionConflictError


def _json(doc: Any, status: int = 200) -> Response:
    return Response(
        content=canonical_json_bytes(doc), media_type="application/json", status_code=status
    )


def _error(status: int, code: str, message: str, **extra: Any) -> Response:
    return _json({"error": {"code": code, "message": message, **extra}}, status)


def create_app(data_dir: str | Path | None = None, ui_dir: str | Path | None = None) -> FastAPI:
    store = DataStore(data_dir)
    app = FastAPI(title="complykit", docs_url=None, redoc_url=None, openapi_url=None)

    @app.exception_handler(NotFoundError)
    def _handle_not_found(request: Request, exc: NotFoundError) -> Response:
        return _error(404, "not_found", f"{exc.kind} {exc.key!r} not found")

    @app.exception_handler(RevisionConflictError)
    def _handle_conflict(request: Request, exc: RevisionConflictError) -> Response:
        return _json({"current_revision": exc.current_revision}, 409)

    @app.exception_handler(UnknownGroupKeyError)
    def _handle_unknown_group(request: Request, exc: UnknownGroupKeyError) -> Response:
        return _error(
            422, "unknown_group", "no such control group", key=f"{exc.requirement}/{exc.group_id}"
        )

    @app.exception_handler(FingerprintMismatchError)
    def _handle_fingerprint(request: Request, exc: FingerprintMismatchError) -> Response:
        return _error(422, "fingerprint_mismatch", str(exc))

    @app.exception_handler(WorkflowError)
    def _handle_workflow(request: Request, exc: WorkflowError) -> Response:
        return _error(409, "workflow", str(exc))

    @app.exception_handler(DocumentSyntaxError)
    def _handle_syntax(request: Request, exc: DocumentSyntaxError) -> Response:
        return _error(400, "syntax", str(exc), byte_offset=exc.byte_offset)

    @app.exception_handler(DocumentSchemaError)
    def _handle_schema(request: Request, exc: DocumentSchemaError) -> Response:
        return _error(400, "schema", str(exc), path=exc.path)

    @app.exception_handler(RequestValidationError)
    def _handle_request_validation(request: Request, exc: RequestValidationError) -> Response:
        first = exc.errors()[0] if exc.errors() else {"msg": "invalid request", "loc": ()}
        where = ".".join(str(part) for part in first.get("loc", ()))
        return _error(422, "request", f"{where}: {first['msg']}" if where else first["msg"])

    # -- catalogs ------------------------------------------------------------

    @app.post("/catalogs")
    async def post_catalog(request: Request) -> Response:
        body = await request.body()
        catalog = parse_catalog(body)
        issues = validate(catalog)
        if any(i.severity is Severity.ERROR for i in issues):
            return _json(
                {
                    "issues": [
                        {
                            "severity": i.severity.value,
                            "code": i.code,
                            "location": i.location,
                            "message": i.message,
                        }
                        for i in issues
                    ]
                },
                422,
            )
        digest = store.add_catalog(catalog)
        return _json({"name": catalog.name, "fingerprint": digest}, 201)

    @app.get("/catalogs")
    def list_catalogs() -> Response:
        return _json(
            {
                "catalogs": [
                    {"name": catalog.name, "fingerprint": digest}
                    for digest, catalog in store.catalogs()
                ]
            }
        )

    @app.get("/catalogs/{digest}")
    def get_catalog(digest: str) -> Response:
        return Response(content=store.catalog_bytes(digest), media_type="application/json")

    @app.get("/catalogs/{digest}/effort")
    def get_effort(digest: str) -> Response:
        return _json(effort_doc(store.catalog(digest)))

    @app.get("/catalogs/{digest}/importance")
    def get_importance(digest: str) -> Response:
        return _json(importance_doc(store.catalog(digest)))

    # -- assessments ---------------------------------------------------------

    @app.post("/assessments")
    def post_assessment(body: CreateAssessmentRequest) -> Response:
        record = store.create_assessment(body.catalog_fingerprint, body.subject)
        return _json({"id": record.id, "revision": record.revision}, 201)

    @app.get("/assessments")
    def list_assessments() -> Response:
        return _json(
            {
                "assessments": [
                    {
                        "id": record.id,
                        "revision": record.revision,
                        "subject": record.assessment.subject,
                        "catalog_name": record.assessment.catalog_name,
                        "catalog_fingerprint": record.assessment.catalog_fingerprint,
                    }
                    for record in store.assessments()
                ]
            }
        )

    @app.post("/assessments/combined")
    def post_combined(body: CombineRequest) -> Response:
        records = [store.assessment(i) for i in body.ids]
        combined = combine_many([r.assessment for r in records])
        catalog = store.catalog(combined.catalog_fingerprint)
        return _json(summary_doc(catalog, combined))

    @app.get("/assessments/{assessment_id}")
    def get_assessment(assessment_id: str) -> Response:
        record = store.assessment(assessment_id)
        return _json(
            {
                "id": record.id,
                "revision": record.revision,
                "assessment": assessment_to_doc(record.assessment),
            }
        )

    @app.put("/assessments/{assessment_id}/ratings/{requirement}/{group_id}")
    def put_rating(
        assessment_id: str, requirement: str, group_id: int, body: PutRatingRequest
    ) -> Response:
        revision = store.put_rating(
            assessment_id, requirement, group_id, Rating(body.rating), body.expected_revision
        )
        return _json({"revision": revision})

    @app.get("/assessments/{assessment_id}/summary")
    def get_summary(assessment_id: str) -> Response:
        record = store.assessment(assessment_id)
        catalog = store.catalog(record.assessment.catalog_fingerprint)
        return _json(summary_doc(catalog, record.assessment))

    @app.post("/assessments/{assessment_id}/what-if")
    def post_what_if(assessment_id: str, body: WhatIfRequest) -> Response:
        record = store.assessment(assessment_id)
        catalog = store.catalog(record.assessment.catalog_fingerprint)
        overlay = {
            parse_rating_key(key, f"$.overlay.{key}"): Rating(token)
            for key, token in body.overlay.items()
        }
        for key in overlay:
            if (key[0], key[1]) not in {(g.requirement, g.group_id) for g in catalog.groups}:
                raise UnknownGroupKeyError(key[0], key[1])
        return _json(summary_doc(catalog, apply_overlay(record.assessment, overlay)))

    # -- projects ------------------------------------------------------------

    @app.post("/projects")
    def post_project(body: CreateProjectRequest) -> Response:
        record = store.add_project(new_project(body.name))
        return _json({"id": record.id, "project": project_to_doc(record.project)}, 201)

    @app.get("/projects")
    def list_projects() -> Response:
        return _json(
            {
                "projects": [
                    {
                        "id": record.id,
                        "name": record.project.name,
                        "current_phase": record.project.current_phase.value,
                        "iteration": record.project.iteration,
                    }
                    for record in store.projects()
                ]
            }
        )

    @app.get("/projects/{project_id}")
    def get_project(project_id: str) -> Response:
        record = store.project(project_id)
        return _json({"id": record.id, "project": project_to_doc(record.project)})

    @app.post("/projects/{project_id}/advance")
    def post_advance(project_id: str, body: AdvanceRequest) -> Response:
        record = store.project(project_id)
        artifact = parse_artifact(body.artifact, "$.artifact")
        updated = advance(record.project, artifact)
        stored = store.replace_project(project_id, updated)
        return _json({"id": stored.id, "project": project_to_doc(stored.project)})

    @app.post("/projects/{project_id}/resolve")
    def post_resolve(project_id: str, body: ResolveRequest) -> Response:
        record = store.project(project_id)
        updated = resolve_control(record.project, Outcome(body.outcome), body.assessments)
        stored = store.replace_project(project_id, updated)
        return _json({"id": stored.id, "project": project_to_doc(stored.project)})

    # -- screening -----------------------------------------------------------

    @app.post("/screening")
    def post_screening(body: ScreeningRequest) -> Response:
        profile = ScreeningProfile(
            certifications=body.profile.certifications,
            industry40_references=body.profile.industry40_references,
            documented_topics=frozenset(body.profile.documented_topics),
            matched_keywords=frozenset(body.profile.matched_keywords),
        )
        verdict = screen_candidate(profile)
        return _json({"passed": verdict.passed, "failed_criteria": list(verdict.failed_criteria)})

    if ui_dir is not None:
        app.mount("/ui", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app
