"""Project lifecycle: a strict five-phase improvement cycle with re-iteration.

A project walks Define, Measure, Analyze, Improve, Control in order, each
transition recording a phase-specific artifact. The Control phase ends in a
decision: accept (project completed) or iterate (back to Define with the
iteration counter incremented). History is append-only and replaying it from
scratch reproduces the project state, which is also how persistence works.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Any, Iterable, Union

from .catalog_io import DocumentSchemaError, canonical_json_bytes, loads_strict

PROJECT_VERSION = "1"


class WorkflowError(ValueError):
    """Base for phase-order and artifact-kind violations."""


class WrongPhaseError(WorkflowError):
    pass


class WrongArtifactError(WorkflowError):
    pass


class Phase(str, Enum):
    DEFINE = "define"
    MEASURE = "measure"
    ANALYZE = "analyze"
    IMPROVE = "improve"
    CONTROL = "control"
    COMPLETED = "completed"


_PHASE_ORDER = (Phase.DEFINE, Phase.MEASURE, Phase.ANALYZE, Phase.IMPROVE, Phase.CONTROL)


class Outcome(str, Enum):
    ACCEPT = "accept"
    ITERATE = "iterate"


@dataclass(frozen=True)
class DefineArtifact:
    """Requirement ids identified for the use case."""

    requirements: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "requirements", tuple(self.requirements))


@dataclass(frozen=True)
class MeasureArtifact:
    """Standards selected as control sources."""

    standards: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "standards", tuple(self.standards))


@dataclass(frozen=True)
class AnalyzeArtifact:
    """Fingerprint of the catalog built (or extended) in this iteration."""

    catalog_fingerprint: str


@dataclass(frozen=True)
class ImproveArtifact:
    """Digest of the effort table the decision was based on."""

    effort_digest: str


@dataclass(frozen=True)
class ControlArtifact:
    """Assessed subjects and the accept-or-iterate decision."""

    outcome: Outcome
    assessments: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "assessments", tuple(self.assessments))


Artifact = Union[DefineArtifact, MeasureArtifact, AnalyzeArtifact, ImproveArtifact, ControlArtifact]

_EXPECTED_KIND: dict[Phase, type] = {
    Phase.DEFINE: DefineArtifact,
    Phase.MEASURE: MeasureArtifact,
    Phase.ANALYZE: AnalyzeArtifact,
    Phase.IMPROVE: ImproveArtifact,
}


@dataclass(frozen=True)
class PhaseRecord:
    phase: Phase
    iteration: int
    artifact: Artifact


@dataclass(frozen=True)
class Project:
    name: str
    current_phase: Phase
    iteration: int
    history: tuple[PhaseRecord, ...]


def new_project(name: str) -> Project:
    if not name:
        raise WorkflowError("project name must be nonempty")
    return Project(name=name, current_phase=Phase.DEFINE, iteration=1, history=())


def advance(project: Project, artifact: Artifact) -> Project:
    """Record the current phase's artifact and move to the next phase.

    The Control phase does not advance; it resolves (see resolve_control),
    because its outcome decides between completion and another iteration.
    """
    if project.current_phase is Phase.COMPLETED:
        raise WrongPhaseError("project is already completed")
    if project.current_phase is Phase.CONTROL:
        raise WrongPhaseError("the control phase ends with resolve_control, not advance")
    expected = _EXPECTED_KIND[project.current_phase]
    if type(artifact) is not expected:
        raise WrongArtifactError(
            f"phase {project.current_phase.value!r} takes {expected.__name__}, "
            f"got {type(artifact).__name__}"
        )
    record = PhaseRecord(project.current_phase, project.iteration, artifact)
    next_phase = _PHASE_ORDER[_PHASE_ORDER.index(project.current_phase) + 1]
    return Project(
        name=project.name,
        current_phase=next_phase,
        iteration=project.iteration,
        history=project.history + (record,),
    )


def resolve_control(
    project: Project, outcome: Outcome, assessments: Iterable[str] = ()
) -> Project:
    """Close the Control phase: accept completes, iterate restarts at Define."""
    if project.current_phase is not Phase.CONTROL:
        raise WrongPhaseError(
            f"resolve_control requires the control phase, project is in {project.current_phase.value!r}"
        )
    record = PhaseRecord(
        Phase.CONTROL, project.iteration, ControlArtifact(outcome, tuple(assessments))
    )
    if outcome is Outcome.ACCEPT:
        return Project(
            name=project.name,
            current_phase=Phase.COMPLETED,
            iteration=project.iteration,
            history=project.history + (record,),
        )
    return Project(
        name=project.name,
        current_phase=Phase.DEFINE,
        iteration=project.iteration + 1,
        history=project.history + (record,),
    )


def replay(name: str, records: list[PhaseRecord]) -> Project:
    """Rebuild a project from its history, enforcing order along the way."""
    project = new_project(name)
    for record in records:
        if record.phase is not project.current_phase:
            raise WorkflowError(
                f"history out of order: expected phase {project.current_phase.value!r}, "
                f"found {record.phase.value!r}"
            )
        if record.iteration != project.iteration:
            raise WorkflowError(
                f"history out of order: expected iteration {project.iteration}, "
                f"found {record.iteration}"
            )
        if isinstance(record.artifact, ControlArtifact):
            project = resolve_control(
                project, record.artifact.outcome, list(record.artifact.assessments)
            )
        else:
            project = advance(project, record.artifact)
    return project


# ---------------------------------------------------------------------------
# Documents
# ---------------------------------------------------------------------------


def artifact_to_doc(artifact: Artifact) -> dict[str, Any]:
    if isinstance(artifact, DefineArtifact):
        return {"kind": "define", "requirements": list(artifact.requirements)}
    if isinstance(artifact, MeasureArtifact):
        return {"kind": "measure", "standards": list(artifact.standards)}
    if isinstance(artifact, AnalyzeArtifact):
        return {"kind": "analyze", "catalog_fingerprint": artifact.catalog_fingerprint}
    if isinstance(artifact, ImproveArtifact):
        return {"kind": "improve", "effort_digest": artifact.effort_digest}
    if isinstance(artifact, ControlArtifact):
        return {
            "kind": "control",
            "outcome": artifact.outcome.value,
            "assessments": list(artifact.assessments),
        }
    raise TypeError(f"not an artifact: {type(artifact).__name__}")


def _string_list(value: Any, path: str) -> tuple[str, ...]:
    if not isinstance(value, list) or any(not isinstance(v, str) for v in value):
        raise DocumentSchemaError(path, "expected an array of strings")
    return tuple(value)


def parse_artifact(doc: Any, path: str = "$") -> Artifact:
    """Parse one artifact object (already JSON-decoded) into its typed form."""
    if not isinstance(doc, dict):
        raise DocumentSchemaError(path, "expected an object")
    kind = doc.get("kind")
    if kind == "define":
        _expect_keys(doc, ("kind", "requirements"), path)
        return DefineArtifact(_string_list(doc["requirements"], f"{path}.requirements"))
    if kind == "measure":
        _expect_keys(doc, ("kind", "standards"), path)
        return MeasureArtifact(_string_list(doc["standards"], f"{path}.standards"))
    if kind == "analyze":
        _expect_keys(doc, ("kind", "catalog_fingerprint"), path)
        value = doc["catalog_fingerprint"]
        if not isinstance(value, str):
            raise DocumentSchemaError(f"{path}.catalog_fingerprint", "expected a string")
        return AnalyzeArtifact(value)
    if kind == "improve":
        _expect_keys(doc, ("kind", "effort_digest"), path)
        value = doc["effort_digest"]
        if not isinstance(value, str):
            raise DocumentSchemaError(f"{path}.effort_digest", "expected a string")
        return ImproveArtifact(value)
    if kind == "control":
        _expect_keys(doc, ("kind", "outcome", "assessments"), path)
        outcome = doc["outcome"]
        if outcome not in Outcome._value2member_map_:
            raise DocumentSchemaError(f"{path}.outcome", "expected 'accept' or 'iterate'")
        return ControlArtifact(
            Outcome(outcome), _string_list(doc["assessments"], f"{path}.assessments")
        )
    raise DocumentSchemaError(f"{path}.kind", f"unknown artifact kind {kind!r}")


def _expect_keys(obj: dict[str, Any], allowed: tuple[str, ...], path: str) -> None:
    for key in allowed:
        if key not in obj:
            raise DocumentSchemaError(f"{path}.{key}", "missing required field")
    for key in obj:
        if key not in allowed:
            raise DocumentSchemaError(f"{path}.{key}", "unknown field")


def project_to_doc(project: Project) -> dict[str, Any]:
    return {
        "project_version": PROJECT_VERSION,
        "name": project.name,
        "current_phase": project.current_phase.value,
        "iteration": project.iteration,
        "history": [
            {
                "phase": record.phase.value,
                "iteration": record.iteration,
                "artifact": artifact_to_doc(record.artifact),
            }
            for record in project.history
        ],
    }


def serialize_project(project: Project) -> bytes:
    return canonical_json_bytes(project_to_doc(project))


def parse_project(doc: bytes | str) -> Project:
    """Parse and replay a project document; stored state must match the replay."""
    root = loads_strict(doc)
    if not isinstance(root, dict):
        raise DocumentSchemaError("$", "expected an object")
    _expect_keys(root, ("project_version", "name", "current_phase", "iteration", "history"), "$")
    if root["project_version"] != PROJECT_VERSION:
        raise DocumentSchemaError("$.project_version", f"unsupported version {root['project_version']!r}")
    name = root["name"]
    if not isinstance(name, str):
        raise DocumentSchemaError("$.name", "expected a string")
    if not isinstance(root["history"], list):
        raise DocumentSchemaError("$.history", "expected an array")

    records: list[PhaseRecord] = []
    for i, raw in enumerate(root["history"]):
        path = f"$.history[{i}]"
        if not isinstance(raw, dict):
            raise DocumentSchemaError(path, "expected an object")
        _expect_keys(raw, ("phase", "iteration", "artifact"), path)
        phase = raw["phase"]
        if phase not in Phase._value2member_map_:
            raise DocumentSchemaError(f"{path}.phase", f"unknown phase {phase!r}")
        iteration = raw["iteration"]
        if isinstance(iteration, bool) or not isinstance(iteration, int) or iteration < 1:
            raise DocumentSchemaError(f"{path}.iteration", "expected a positive integer")
        records.append(
            PhaseRecord(Phase(phase), iteration, parse_artifact(raw["artifact"], f"{path}.artifact"))
        )

    try:
        project = replay(name, records)
    except WorkflowError as exc:
        raise DocumentSchemaError("$.history", str(exc)) from None

    if project.current_phase.value != root["current_phase"] or project.iteration != root["iteration"]:
        raise DocumentSchemaError(
            "$", "stored phase/iteration do not match the replayed history"
        )
    return project
