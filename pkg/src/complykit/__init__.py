"""Requirements-and-controls catalogs, compliance gap scoring, and
implementation effort estimation for industrial security use cases."""

from .catalog import (
    Catalog,
    Control,
    ControlGroup,
    Requirement,
    Severity,
    StandardRef,
    UnknownRequirementError,
    ValidationIssue,
    groups_of,
    validate,
)
from .catalog_io import (
    DocumentSchemaError,
    DocumentSyntaxError,
    InvalidCatalogError,
    fingerprint,
    parse_catalog,
    serialize_catalog,
)
from .scoring import (
    Assessment,
    EffortRow,
    Rating,
    RequirementScore,
    ScreeningProfile,
    ScreeningVerdict,
    combine,
    control_count,
    count_max,
    effort_table,
    format_effort,
    implementation_effort,
    parse_assessment,
    requirement_importance,
    residual_effort,
    score_assessment,
    screen_candidate,
    serialize_assessment,
)
from .sample import sample_catalog
from .workflow import (
    Outcome,
    Phase,
    Project,
    advance,
    new_project,
    resolve_control,
)

__version__ = "0.1.0"

__all__ = [
    "Assessment",
    "Catalog",
    "Control",
    "ControlGroup",
    "DocumentSchemaError",
    "DocumentSyntaxError",
    "EffortRow",
    "InvalidCatalogError",
    "Outcome",
    "Phase",
    "Project",
    "Rating",
    "Requirement",
    "RequirementScore",
    "ScreeningProfile",
    "ScreeningVerdict",
    "Severity",
    "StandardRef",
    "UnknownRequirementError",
    "ValidationIssue",
    "advance",
    "combine",
    "control_count",
    "count_max",
    "effort_table",
    "fingerprint",
    "format_effort",
    "groups_of",
    "implementation_effort",
    "new_project",
    "parse_assessment",
    "parse_catalog",
    "requirement_importance",
    "residual_effort",
    "resolve_control",
    "sample_catalog",
    "score_assessment",
    "screen_candidate",
    "serialize_assessment",
    "serialize_catalog",
    "validate",
]
