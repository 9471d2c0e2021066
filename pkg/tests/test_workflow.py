import json

import pytest

from complykit.catalog_io import DocumentSchemaError
from complykit.workflow import (
    AnalyzeArtifact,
    ControlArtifact,
    DefineArtifact,
    ImproveArtifact,
    MeasureArtifact,
    Outcome,
    Phase,
    PhaseRecord,
    Project,
    WorkflowError,
    WrongArtifactError,
    WrongPhaseError,
    advance,
    new_project,
    parse_project,
    project_to_doc,
    replay,
    resolve_control,
    serialize_project,
)

REQS = ("IA", "DI", "DC", "EC", "AV", "CC")
STDS = ("IEC-62443-3-3", "ISO-27000", "NIST-SP")


def walk_to_control(project: Project) -> Project:
    project = advance(project, DefineArtifact(REQS))
    project = advance(project, MeasureArtifact(STDS))
    project = advance(project, AnalyzeArtifact("ab" * 32))
    project = advance(project, ImproveArtifact("cd" * 32))
    return project


class TestNewProject:
    def test_initial_state(self):
        project = new_project("remote-access")
        assert project.current_phase is Phase.DEFINE
        assert project.iteration == 1
        assert project.history == ()

    def test_empty_name_rejected(self):
        with pytest.raises(WorkflowError):
            new_project("")

    def test_projects_are_independent(self):
        a = new_project("same")
        b = new_project("same")
        assert a == b
        assert advance(a, DefineArtifact(REQS)) != b


class TestAdvance:
    def test_define_to_measure(self):
        project = advance(new_project("p"), DefineArtifact(REQS))
        assert project.current_phase is Phase.MEASURE
        assert project.history[-1].phase is Phase.DEFINE

    def test_full_walk_reaches_control(self):
        project = walk_to_control(new_project("p"))
        assert project.current_phase is Phase.CONTROL
        assert [r.phase for r in project.history] == [
            Phase.DEFINE,
            Phase.MEASURE,
            Phase.ANALYZE,
            Phase.IMPROVE,
        ]

    def test_wrong_artifact_kind(self):
        project = advance(new_project("p"), DefineArtifact(REQS))
        with pytest.raises(WrongArtifactError):
            advance(project, DefineArtifact(REQS))

    def test_advance_is_pure(self):
        before = new_project("p")
        advance(before, DefineArtifact(REQS))
        assert before.current_phase is Phase.DEFINE
        assert before.history == ()

    def test_advance_at_control_redirects(self):
        project = walk_to_control(new_project("p"))
        with pytest.raises(WrongPhaseError):
            advance(project, ControlArtifact(Outcome.ACCEPT, ("x",)))

    def test_advance_after_completion(self):
        project = resolve_control(walk_to_control(new_project("p")), Outcome.ACCEPT, [])
        with pytest.raises(WrongPhaseError):
            advance(project, DefineArtifact(REQS))


class TestResolveControl:
    def test_accept_completes(self):
        project = resolve_control(
            walk_to_control(new_project("p")), Outcome.ACCEPT, ["Platform X"]
        )
        assert project.current_phase is Phase.COMPLETED
        assert project.iteration == 1
        record = project.history[-1]
        assert record.artifact.outcome is Outcome.ACCEPT
        assert record.artifact.assessments == ("Platform X",)

    def test_iterate_restarts_at_define(self):
        project = resolve_control(walk_to_control(new_project("p")), Outcome.ITERATE, [])
        assert project.current_phase is Phase.DEFINE
        assert project.iteration == 2

    def test_wrong_phase(self):
        with pytest.raises(WrongPhaseError):
            resolve_control(new_project("p"), Outcome.ACCEPT, [])

    def test_second_iteration_walks_again(self):
        project = resolve_control(walk_to_control(new_project("p")), Outcome.ITERATE, [])
        project = walk_to_control(project)
        project = resolve_control(project, Outcome.ACCEPT, ["Platform Y"])
        assert project.current_phase is Phase.COMPLETED
        assert project.iteration == 2
        assert len(project.history) == 10


class TestReplay:
    def test_reproduces_final_state(self):
        final = resolve_control(walk_to_control(new_project("p")), Outcome.ITERATE, [])
        final = walk_to_control(final)
        final = resolve_control(final, Outcome.ACCEPT, ["chosen"])
        assert replay("p", list(final.history)) == final

    def test_rejects_out_of_order_history(self):
        final = walk_to_control(new_project("p"))
        history = list(final.history)
        history[0], history[1] = history[1], history[0]
        with pytest.raises(WorkflowError):
            replay("p", history)

    def test_rejects_wrong_iteration(self):
        final = walk_to_control(new_project("p"))
        history = list(final.history)
        history[2] = PhaseRecord(history[2].phase, 7, history[2].artifact)
        with pytest.raises(WorkflowError):
            replay("p", history)


class TestProjectDocuments:
    def test_round_trip(self):
        project = resolve_control(walk_to_control(new_project("p")), Outcome.ITERATE, [])
        project = advance(project, DefineArtifact(("IA",)))
        assert parse_project(serialize_project(project)) == project

    def test_fresh_project_round_trip(self):
        project = new_project("fresh")
        assert parse_project(serialize_project(project)) == project

    def test_doc_shape(self):
        doc = project_to_doc(advance(new_project("p"), DefineArtifact(REQS)))
        assert doc["project_version"] == "1"
        assert doc["current_phase"] == "measure"
        assert doc["iteration"] == 1
        assert doc["history"][0]["artifact"] == {"kind": "define", "requirements": list(REQS)}

    def test_tampered_phase_rejected(self):
        doc = project_to_doc(advance(new_project("p"), DefineArtifact(REQS)))
        doc["current_phase"] = "control"
        with pytest.raises(DocumentSchemaError):
            parse_project(json.dumps(doc))

    def test_tampered_history_rejected(self):
        project = walk_to_control(new_project("p"))
        doc = project_to_doc(project)
        doc["history"][1], doc["history"][2] = doc["history"][2], doc["history"][1]
        with pytest.raises(DocumentSchemaError):
            parse_project(json.dumps(doc))

    def test_unknown_artifact_kind(self):
        doc = project_to_doc(new_project("p"))
        doc["history"] = [
            {"phase": "define", "iteration": 1, "artifact": {"kind": "mystery"}}
        ]
        with pytest.raises(DocumentSchemaError):
            parse_project(json.dumps(doc))

    def test_artifact_missing_field(self):
        doc = project_to_doc(new_project("p"))
        doc["history"] = [
            {"phase": "define", "iteration": 1, "artifact": {"kind": "define"}}
        ]
        with pytest.raises(DocumentSchemaError) as e:
            parse_project(json.dumps(doc))
        assert "requirements" in str(e.value)
