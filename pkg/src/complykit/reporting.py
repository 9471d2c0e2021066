"""Deterministic CSV, SVG, and plain-text renderings of catalog computations.

Every byte here is a pure function of the inputs: fixed chart dimensions,
fixed palette, no timestamps, stable ordering. That keeps outputs diffable
and lets golden tests pin them exactly.
"""

from __future__ import annotations

import textwrap
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence
from xml.sax.saxutils import escape

from .catalog import Catalog, groups_of
from .scoring import (
    Assessment,
    effort_table,
    format_amount,
    format_effort,
    format_points,
    requirement_importance,
    score_assessment,
)

CHART_WIDTH = 800
CHART_HEIGHT = 400

#: Series colors by index; recycled if a chart has more series than colors.
PALETTE = ("#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948")


@dataclass(frozen=True)
class ChartSeries:
    label: str
    values: tuple[Fraction, ...]


# ---------------------------------------------------------------------------
# CSV
# ---------------------------------------------------------------------------


def effort_csv(catalog: Catalog) -> bytes:
    lines = ["requirement,group_id,ct,ie"]
    for row in effort_table(catalog):
        lines.append(f"{row.requirement},{row.group_id},{row.ct},{format_effort(row.ie)}")
    return ("\n".join(lines) + "\n").encode("utf-8")


def importance_csv(catalog: Catalog) -> bytes:
    report = requirement_importance(catalog)
    by_requirement = {row.requirement: dict(row.by_standard) for row in report.rows}
    lines = ["requirement,standard,count"]
    for requirement in catalog.requirements:
        for standard in catalog.standards:
            count = by_requirement[requirement.id][standard.id]
            lines.append(f"{requirement.id},{standard.id},{count}")
    return ("\n".join(lines) + "\n").encode("utf-8")


def assessment_csv(catalog: Catalog, assessments: Sequence[Assessment], normalized: bool) -> bytes:
    lines = ["requirement,subject,value"]
    for assessment in assessments:
        for score in score_assessment(catalog, assessment):
            if normalized:
                value = (
                    format_amount(Fraction(score.points, score.max_points))
                    if score.max_points
                    else "0.00"
                )
            else:
                value = format_points(score.points)
            lines.append(f"{score.requirement},{assessment.subject},{value}")
    return ("\n".join(lines) + "\n").encode("utf-8")


# ---------------------------------------------------------------------------
# SVG bar charts
# ---------------------------------------------------------------------------


def _axis_unit(max_value: Fraction) -> int:
    # Smallest unit from {1,2,5} x 10^k such that five gridline steps cover the data.
    if max_value <= 0:
        return 1
    scale = 1
    while True:
        for base in (1, 2, 5):
            unit = base * scale
            if 5 * unit >= max_value:
                return unit
        scale *= 10


def _bar_chart(
    title: str,
    categories: Sequence[str],
    series: Sequence[ChartSeries],
    tick_values: Sequence[Fraction],
    tick_label: Callable[[Fraction], str],
) -> bytes:
    left, right, top, bottom = 60, 20, 40, 60
    plot_w = CHART_WIDTH - left - right
    plot_h = CHART_HEIGHT - top - bottom
    axis_max = tick_values[-1]

    def x_of(offset: float) -> str:
        return f"{left + offset:.2f}"

    def y_of(value: Fraction) -> str:
        return f"{top + plot_h - float(value / axis_max) * plot_h:.2f}"

    parts: list[str] = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{CHART_WIDTH}" height="{CHART_HEIGHT}" '
        f'viewBox="0 0 {CHART_WIDTH} {CHART_HEIGHT}">',
        f'<rect width="{CHART_WIDTH}" height="{CHART_HEIGHT}" fill="#ffffff"/>',
        f'<text x="{CHART_WIDTH // 2}" y="24" text-anchor="middle" '
        f'font-family="sans-serif" font-size="16" fill="#222222">{escape(title)}</text>',
    ]

    for tick in tick_values:
        y = y_of(tick)
        parts.append(
            f'<line x1="{left}" y1="{y}" x2="{left + plot_w}" y2="{y}" '
            f'stroke="#dddddd" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{left - 8}" y="{y}" text-anchor="end" dominant-baseline="middle" '
            f'font-family="sans-serif" font-size="11" fill="#555555">{escape(tick_label(tick))}</text>'
        )

    n_cat = max(len(categories), 1)
    n_ser = max(len(series), 1)
    slot_w = plot_w / n_cat
    bar_w = slot_w * 0.8 / n_ser

    for ci, category in enumerate(categories):
        for si, s in enumerate(series):
            value = s.values[ci]
            if value < 0:
                raise ValueError(f"bar values must be nonnegative, got {value}")
            x = ci * slot_w + slot_w * 0.1 + si * bar_w
            y = y_of(value)
            h = f"{float(value / axis_max) * plot_h:.2f}"
            color = PALETTE[si % len(PALETTE)]
            parts.append(
                f'<rect x="{x_of(x)}" y="{y}" width="{bar_w:.2f}" height="{h}" fill="{color}"/>'
            )
        cx = x_of(ci * slot_w + slot_w / 2)
        parts.append(
            f'<text x="{cx}" y="{top + plot_h + 16}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="12" fill="#222222">{escape(category)}</text>'
        )

    # Baseline on top of the gridlines.
    parts.append(
        f'<line x1="{left}" y1="{top + plot_h}" x2="{left + plot_w}" y2="{top + plot_h}" '
        f'stroke="#222222" stroke-width="1"/>'
    )

    legend_x = float(left)
    legend_y = top + plot_h + 36
    for si, s in enumerate(series):
        color = PALETTE[si % len(PALETTE)]
        parts.append(
            f'<rect x="{legend_x:.2f}" y="{legend_y - 9}" width="10" height="10" fill="{color}"/>'
        )
        parts.append(
            f'<text x="{legend_x + 14:.2f}" y="{legend_y}" font-family="sans-serif" '
            f'font-size="12" fill="#222222">{escape(s.label)}</text>'
        )
        legend_x += 14 + 7.2 * len(s.label) + 18

    parts.append("</svg>")
    return ("\n".join(parts) + "\n").encode("utf-8")


def importance_chart(catalog: Catalog) -> tuple[bytes, bytes]:
    """Grouped bars of control counts per requirement and standard, plus CSV twin."""
    report = requirement_importance(catalog)
    by_requirement = {row.requirement: dict(row.by_standard) for row in report.rows}
    categories = [r.id for r in catalog.requirements]
    series = [
        ChartSeries(
            label=s.id,
            values=tuple(Fraction(by_requirement[rid][s.id]) for rid in categories),
        )
        for s in catalog.standards
    ]
    max_value = max((max(s.values) for s in series if s.values), default=Fraction(0))
    unit = _axis_unit(max_value)
    ticks = [Fraction(unit * i) for i in range(6)]
    svg = _bar_chart(
        "Controls per requirement and standard",
        categories,
        series,
        ticks,
        lambda t: str(int(t)),
    )
    return svg, importance_csv(catalog)


def assessment_chart(
    catalog: Catalog, assessments: Sequence[Assessment], normalized: bool = False
) -> tuple[bytes, bytes]:
    """Per-requirement points per subject; 0-1 axis when normalized."""
    categories = [r.id for r in catalog.requirements]
    series = []
    for assessment in assessments:
        values = []
        for score in score_assessment(catalog, assessment):
            if normalized:
                values.append(
                    Fraction(score.points, score.max_points) if score.max_points else Fraction(0)
                )
            else:
                values.append(score.points)
        series.append(ChartSeries(label=assessment.subject, values=tuple(values)))

    if normalized:
        ticks = [Fraction(i, 4) for i in range(5)]
        label = format_amount
    else:
        max_value = max((max(s.values) for s in series if s.values), default=Fraction(0))
        unit = _axis_unit(max_value)
        ticks = [Fraction(unit * i) for i in range(6)]
        label = lambda t: str(int(t))  # noqa: E731 - tick rendering only
    title = "Requirement applicability (0-1)" if normalized else "Requirement points by subject"
    svg = _bar_chart(title, categories, series, ticks, label)
    return svg, assessment_csv(catalog, assessments, normalized)


# ---------------------------------------------------------------------------
# Plain text
# ---------------------------------------------------------------------------

_IDS_WIDTH = 44
_GUIDANCE_WIDTH = 48


def _wrap_ids(ids: Sequence[str]) -> list[str]:
    return textwrap.wrap(
        " ".join(ids), width=_IDS_WIDTH, break_long_words=False, break_on_hyphens=False
    ) or [""]


def _wrap_guidance(text: str) -> list[str]:
    lines: list[str] = []
    for raw in text.split("\n"):
        wrapped = textwrap.wrap(
            raw, width=_GUIDANCE_WIDTH, break_long_words=False, break_on_hyphens=False
        )
        lines.extend(wrapped or [""])
    return lines


def catalog_extract(catalog: Catalog, requirement_id: str) -> str:
    """Plain-text table of one requirement's groups: id, member controls, guidance."""
    groups = groups_of(catalog, requirement_id)
    req_width = max(len("Req."), len(requirement_id))
    id_width = max(len("ID"), *(len(str(g.group_id)) for g in groups)) if groups else len("ID")

    header = (
        f"{'Req.':<{req_width}}  {'ID':<{id_width}}  "
        f"{'Control IDs':<{_IDS_WIDTH}}  Assessment"
    )
    rule = f"{'-' * req_width}  {'-' * id_width}  {'-' * _IDS_WIDTH}  {'-' * _GUIDANCE_WIDTH}"
    out = [header, rule]
    for group in groups:
        id_lines = _wrap_ids(group.controls)
        guidance_lines = _wrap_guidance(group.assessment_guidance)
        height = max(len(id_lines), len(guidance_lines))
        for i in range(height):
            req_cell = requirement_id if i == 0 else ""
            gid_cell = str(group.group_id) if i == 0 else ""
            ids_cell = id_lines[i] if i < len(id_lines) else ""
            guidance_cell = guidance_lines[i] if i < len(guidance_lines) else ""
            line = (
                f"{req_cell:<{req_width}}  {gid_cell:<{id_width}}  "
                f"{ids_cell:<{_IDS_WIDTH}}  {guidance_cell}"
            )
            out.append(line.rstrip())
    return "\n".join(out) + "\n"


def effort_text(catalog: Catalog) -> str:
    rows = effort_table(catalog)
    req_width = max(len("requirement"), *(len(r.requirement) for r in rows)) if rows else len("requirement")
    out = [f"{'requirement':<{req_width}}  group  ct  ct_max  ie"]
    for row in rows:
        out.append(
            f"{row.requirement:<{req_width}}  {row.group_id:>5}  {row.ct:>2}  "
            f"{row.ct_max:>6}  {format_effort(row.ie)}"
        )
    return "\n".join(out) + "\n"


def importance_text(catalog: Catalog) -> str:
    report = requirement_importance(catalog)
    req_width = max(len("requirement"), *(len(r.requirement) for r in report.rows)) if report.rows else len("requirement")
    out = [f"rank  {'requirement':<{req_width}}  total  per standard"]
    for row in report.rows:
        split = "  ".join(f"{sid}={count}" for sid, count in row.by_standard)
        out.append(f"{row.rank:>4}  {row.requirement:<{req_width}}  {row.total:>5}  {split}")
    if report.dependencies:
        out.append("")
        out.append("dependencies:")
        for requirement, dep in report.dependencies:
            out.append(f"  {requirement} depends on {dep}")
    return "\n".join(out) + "\n"


def summary_text(summary: dict) -> str:
    """Readable rendering of a summary document (see scoring.summary_doc)."""
    out = [f"subject: {summary['subject']}"]
    out.append("")
    out.append("scores:")
    for score in summary["scores"]:
        out.append(
            f"  {score['requirement']}: {score['points']} of {score['max_points']} "
            f"(normalized {score['normalized']})"
        )
    out.append("")
    out.append("residual effort:")
    for residual in summary["requirement_residuals"]:
        out.append(f"  {residual['requirement']}: {residual['residual']}")
    out.append(f"  total: {summary['total_residual']['residual']}")
    return "\n".join(out) + "\n"
