import dataclasses

import pytest

from complykit.catalog import (
    Catalog,
    Control,
    ControlGroup,
    Requirement,
    Severity,
    StandardRef,
    UnknownRequirementError,
    groups_of,
    validate,
)


def base_catalog(**overrides) -> Catalog:
    fields = dict(
        name="test",
        standards=(StandardRef("STD1", "Standard One", "S1"),),
        requirements=(Requirement("R1", "Requirement One"),),
        controls=(Control("S1-1", "STD1", "first"),),
        groups=(ControlGroup("R1", 1, ("S1-1",)),),
    )
    fields.update(overrides)
    return Catalog(**fields)


def codes(catalog: Catalog) -> list[str]:
    return [i.code for i in validate(catalog)]


def error_codes(catalog: Catalog) -> list[str]:
    return [i.code for i in validate(catalog) if i.severity is Severity.ERROR]


class TestValidate:
    def test_sound_catalog_has_no_issues(self):
        assert validate(base_catalog()) == []

    def test_sample_catalog_is_clean(self, sample):
        assert validate(sample) == []

    def test_empty_catalog_is_clean(self):
        empty = Catalog(name="empty", standards=(), requirements=(), controls=(), groups=())
        assert validate(empty) == []

    def test_unsupported_version(self):
        assert "unsupported_catalog_version" in codes(base_catalog(catalog_version="2"))

    def test_empty_standard_id(self):
        cat = base_catalog(
            standards=(StandardRef("", "x", "S1"),),
            controls=(Control("S1-1", "", "first"),),
        )
        assert "empty_identifier" in codes(cat)

    def test_empty_standard_prefix(self):
        cat = base_catalog(
            standards=(StandardRef("STD1", "x", ""),),
        )
        assert "empty_standard_prefix" in codes(cat)

    def test_duplicate_standard_id(self):
        cat = base_catalog(
            standards=(StandardRef("STD1", "a", "S1"), StandardRef("STD1", "b", "S1"))
        )
        assert "duplicate_standard_id" in codes(cat)

    def test_duplicate_requirement_id(self):
        cat = base_catalog(
            requirements=(Requirement("R1", "a"), Requirement("R1", "b"))
        )
        assert "duplicate_requirement_id" in codes(cat)

    def test_duplicate_control_id(self):
        cat = base_catalog(
            controls=(Control("S1-1", "STD1", "a"), Control("S1-1", "STD1", "b"))
        )
        assert "duplicate_control_id" in codes(cat)

    def test_duplicate_group_id(self):
        cat = base_catalog(
            groups=(ControlGroup("R1", 1, ("S1-1",)), ControlGroup("R1", 1, ("S1-1",)))
        )
        found = codes(cat)
        assert "duplicate_group_id" in found

    def test_dangling_standard_ref(self):
        cat = base_catalog(controls=(Control("S1-1", "NOPE", "x"),))
        assert "dangling_standard_ref" in codes(cat)

    def test_dangling_requirement_ref(self):
        cat = base_catalog(groups=(ControlGroup("R9", 1, ("S1-1",)),))
        assert "dangling_requirement_ref" in codes(cat)

    def test_dangling_control_ref(self):
        cat = base_catalog(groups=(ControlGroup("R1", 1, ("S1-1", "X-99")),))
        issues = [i for i in validate(cat) if i.code == "dangling_control_ref"]
        assert len(issues) == 1
        assert "X-99" in issues[0].message

    def test_dangling_dependency_ref(self):
        cat = base_catalog(requirements=(Requirement("R1", "a", depends_on=("R9",)),))
        assert "dangling_dependency_ref" in codes(cat)

    def test_self_dependency(self):
        cat = base_catalog(requirements=(Requirement("R1", "a", depends_on=("R1",)),))
        assert "self_dependency" in codes(cat)

    def test_invalid_control_id(self):
        cat = base_catalog(
            controls=(Control("S1 bad!", "STD1", "x"),),
            groups=(ControlGroup("R1", 1, ("S1 bad!",)),),
        )
        assert "invalid_control_id" in codes(cat)

    def test_control_prefix_mismatch(self):
        cat = base_catalog(
            controls=(Control("X-1", "STD1", "x"),),
            groups=(ControlGroup("R1", 1, ("X-1",)),),
        )
        assert "control_prefix_mismatch" in codes(cat)

    def test_prefix_must_be_followed_by_dash(self):
        # "S1x-1" begins with "S1" but not with "S1-".
        cat = base_catalog(
            controls=(Control("S1x-1", "STD1", "x"),),
            groups=(ControlGroup("R1", 1, ("S1x-1",)),),
        )
        assert "control_prefix_mismatch" in codes(cat)

    def test_nonpositive_group_id(self):
        cat = base_catalog(groups=(ControlGroup("R1", 0, ("S1-1",)),))
        assert "nonpositive_group_id" in codes(cat)

    def test_empty_group(self):
        cat = base_catalog(groups=(ControlGroup("R1", 1, ()),))
        assert "empty_group" in codes(cat)

    def test_duplicate_control_in_group(self):
        cat = base_catalog(groups=(ControlGroup("R1", 1, ("S1-1", "S1-1")),))
        assert "duplicate_control_in_group" in codes(cat)

    def test_duplicate_control_in_requirement(self):
        # The partition rule: one control may not sit in two groups of the
        # same requirement. Exactly one error, anchored at the requirement.
        cat = base_catalog(
            groups=(
                ControlGroup("R1", 1, ("S1-1",)),
                ControlGroup("R1", 2, ("S1-1",)),
            )
        )
        issues = [i for i in validate(cat) if i.code == "duplicate_control_in_requirement"]
        assert len(issues) == 1
        assert issues[0].location == "requirements[R1]"

    def test_control_shared_across_requirements_is_fine(self):
        cat = base_catalog(
            requirements=(Requirement("R1", "a"), Requirement("R2", "b")),
            groups=(
                ControlGroup("R1", 1, ("S1-1",)),
                ControlGroup("R2", 1, ("S1-1",)),
            ),
        )
        assert validate(cat) == []

    def test_requirement_without_groups_is_a_warning(self):
        cat = base_catalog(
            requirements=(Requirement("R1", "a"), Requirement("R2", "b"))
        )
        issues = validate(cat)
        assert [i.code for i in issues] == ["requirement_without_groups"]
        assert issues[0].severity is Severity.WARNING
        assert issues[0].location == "requirements[R2]"

    def test_standard_without_controls_is_a_warning(self):
        cat = base_catalog(
            standards=(
                StandardRef("STD1", "one", "S1"),
                StandardRef("STD2", "two", "S2"),
            )
        )
        issues = validate(cat)
        assert [i.code for i in issues] == ["standard_without_controls"]
        assert issues[0].severity is Severity.WARNING

    def test_issues_sorted_by_location_then_code(self):
        cat = base_catalog(
            requirements=(
                Requirement("R1", "a", depends_on=("R1", "R9")),
                Requirement("R2", "b"),
            ),
            groups=(ControlGroup("R1", 1, ("S1-1",)),),
        )
        issues = validate(cat)
        assert issues == sorted(issues, key=lambda i: (i.location, i.code, i.message))

    def test_multiple_problems_all_reported(self):
        cat = base_catalog(
            standards=(StandardRef("STD1", "x", ""),),
            controls=(Control("S1-1", "STD1", "a"), Control("S1-1", "STD1", "b")),
            groups=(ControlGroup("R1", 0, ()),),
        )
        found = set(error_codes(cat))
        assert {"empty_standard_prefix", "duplicate_control_id", "nonpositive_group_id", "empty_group"} <= found


class TestCanonicalOrdering:
    def test_constructor_sorts_entity_lists(self):
        cat = base_catalog(
            requirements=(Requirement("R2", "b"), Requirement("R1", "a")),
            groups=(
                ControlGroup("R2", 2, ("S1-1",)),
                ControlGroup("R1", 1, ("S1-1",)),
                ControlGroup("R2", 1, ("S1-1",)),
            ),
        )
        assert [r.id for r in cat.requirements] == ["R1", "R2"]
        assert [(g.requirement, g.group_id) for g in cat.groups] == [
            ("R1", 1),
            ("R2", 1),
            ("R2", 2),
        ]

    def test_group_controls_sorted(self):
        grp = ControlGroup("R1", 1, ("b", "a", "c"))
        assert grp.controls == ("a", "b", "c")

    def test_reordered_catalogs_are_equal(self, sample):
        permuted = Catalog(
            name=sample.name,
            standards=tuple(reversed(sample.standards)),
            requirements=tuple(reversed(sample.requirements)),
            controls=tuple(reversed(sample.controls)),
            groups=tuple(reversed(sample.groups)),
        )
        assert permuted == sample


class TestGroupsOf:
    def test_orders_by_group_id(self, sample):
        groups = groups_of(sample, "IA")
        assert [g.group_id for g in groups] == [1, 2, 3]

    def test_unknown_requirement(self, sample):
        with pytest.raises(UnknownRequirementError):
            groups_of(sample, "XX")

    def test_requirement_without_groups(self):
        cat = base_catalog(requirements=(Requirement("R1", "a"), Requirement("R2", "b")))
        assert groups_of(cat, "R2") == []


def test_catalog_values_are_immutable():
    cat = base_catalog()
    with pytest.raises(dataclasses.FrozenInstanceError):
        cat.name = "other"
    with pytest.raises(dataclasses.FrozenInstanceError):
        cat.groups[0].group_id = 2
