/**
 * HTML renderers. Every function is a pure string builder over service
 * documents, so tests can assert on markup without a DOM. Amounts are
 * interpolated verbatim; bar widths hand the normalized score string to CSS
 * calc() so the browser does the only arithmetic.
 */

import {
  CatalogDoc,
  EffortDoc,
  RatingToken,
  ScreeningVerdictDoc,
  SummaryDoc,
} from "./api.js";
import { ResidualDelta, WhatIfState } from "./state.js";

const RATING_TOKENS: readonly RatingToken[] = ["full", "partial", "none"];

const RATING_LABELS: Record<RatingToken, string> = {
  full: "Full",
  partial: "Partial",
  none: "None",
};

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;")
    .replace(/'/g, "&#39;");
}

function groupKey(requirement: string, groupId: number): string {
  return `${requirement}/${groupId}`;
}

export function renderCatalogBrowser(catalog: CatalogDoc, effort: EffortDoc): string {
  const ieByKey = new Map(effort.rows.map((r) => [groupKey(r.requirement, r.group_id), r.ie]));
  const titles = new Map(catalog.controls.map((c) => [c.id, c.title]));
  const standards = catalog.standards
    .map(
      (s) =>
        `<li><span class="standard-id">${escapeHtml(s.id)}</span> ${escapeHtml(s.label)}</li>`,
    )
    .join("");
  const requirements = catalog.requirements
    .map((req) => {
      const groups = catalog.groups
        .filter((g) => g.requirement === req.id)
        .map((g) => {
          const key = groupKey(g.requirement, g.group_id);
          const controls = g.controls
            .map(
              (id) =>
                `<li><code>${escapeHtml(id)}</code> ${escapeHtml(titles.get(id) ?? "")}</li>`,
            )
            .join("");
          return `<details class="group" data-key="${escapeHtml(key)}">
  <summary>Group ${g.group_id} <span class="ie">IE ${escapeHtml(ieByKey.get(key) ?? "?")}</span></summary>
  <ul class="controls">${controls}</ul>
</details>`;
        })
        .join("\n");
      const dependsOn = req.depends_on.length
        ? `<p class="depends">after ${req.depends_on.map(escapeHtml).join(", ")}</p>`
        : "";
      return `<section class="requirement" data-requirement="${escapeHtml(req.id)}">
<h3>${escapeHtml(req.id)} ${escapeHtml(req.name)}</h3>
<p>${escapeHtml(req.description)}</p>
${dependsOn}
${groups}
</section>`;
    })
    .join("\n");
  return `<div class="catalog-browser">
<h2>${escapeHtml(catalog.name)}</h2>
<ul class="standards">${standards}</ul>
${requirements}
</div>`;
}

/**
 * Assessment checklist: one three-state toggle per control group, current
 * rating marked, everything disabled while a write is in flight.
 */
export function renderChecklist(
  catalog: CatalogDoc,
  ratings: Record<string, RatingToken>,
  busy: boolean,
): string {
  const sections = catalog.requirements
    .map((req) => {
      const rows = catalog.groups
        .filter((g) => g.requirement === req.id)
        .map((g) => {
          const key = groupKey(g.requirement, g.group_id);
          const current = ratings[key] ?? "none";
          const buttons = RATING_TOKENS.map((token) => {
            const active = token === current ? " active" : "";
            const disabled = busy ? " disabled" : "";
            return `<button type="button" class="rate${active}" data-key="${escapeHtml(key)}" data-rating="${token}"${disabled} aria-pressed="${token === current}">${RATING_LABELS[token]}</button>`;
          }).join("");
          return `<div class="check" data-key="${escapeHtml(key)}">
<p class="guidance">${escapeHtml(g.assessment_guidance)}</p>
<div class="toggle" role="group" aria-label="${escapeHtml(key)}">${buttons}</div>
</div>`;
        })
        .join("\n");
      return `<section class="requirement" data-requirement="${escapeHtml(req.id)}">
<h3>${escapeHtml(req.id)} ${escapeHtml(req.name)}</h3>
${rows}
</section>`;
    })
    .join("\n");
  return `<div class="checklist">${sections}</div>`;
}

export function renderScorePanel(summary: SummaryDoc): string {
  const rows = summary.scores
    .map(
      (s) => `<tr data-requirement="${escapeHtml(s.requirement)}">
<td>${escapeHtml(s.requirement)}</td>
<td class="num">${escapeHtml(s.points)} / ${s.max_points}</td>
<td class="num score-normalized">${escapeHtml(s.normalized)}</td>
<td><div class="bar"><div class="fill" style="width: calc(${escapeHtml(s.normalized)} * 100%)"></div></div></td>
</tr>`,
    )
    .join("\n");
  return `<table class="score-panel">
<thead><tr><th>Requirement</th><th>Points</th><th>Score</th><th></th></tr></thead>
<tbody>
${rows}
</tbody>
</table>`;
}

export function renderResiduals(summary: SummaryDoc): string {
  const groups = summary.residuals
    .map((r) => {
      const key = groupKey(r.requirement, r.group_id);
      return `<tr data-key="${escapeHtml(key)}">
<td>${escapeHtml(key)}</td>
<td>${RATING_LABELS[r.rating]}</td>
<td class="num">${escapeHtml(r.ie)}</td>
<td class="num">${escapeHtml(r.residual)}</td>
</tr>`;
    })
    .join("\n");
  const requirements = summary.requirement_residuals
    .map(
      (r) => `<tr data-requirement="${escapeHtml(r.requirement)}">
<td>${escapeHtml(r.requirement)}</td>
<td class="num">${escapeHtml(r.residual)}</td>
</tr>`,
    )
    .join("\n");
  return `<div class="residuals">
<table class="residual-groups">
<thead><tr><th>Group</th><th>Rating</th><th>IE</th><th>Residual</th></tr></thead>
<tbody>
${groups}
</tbody>
</table>
<table class="residual-requirements">
<thead><tr><th>Requirement</th><th>Residual</th></tr></thead>
<tbody>
${requirements}
</tbody>
</table>
<p class="total-residual">Total residual effort: <strong>${escapeHtml(summary.total_residual.residual)}</strong></p>
</div>`;
}

/**
 * Side-by-side actual and hypothetical residuals with the exact decrease.
 * Renders a short hint when no overlay is active.
 */
export function renderWhatIf(
  actual: SummaryDoc,
  whatIf: WhatIfState | null,
  deltas: ResidualDelta[],
  totalDelta: ResidualDelta | null,
): string {
  if (whatIf === null || totalDelta === null) {
    return `<div class="what-if empty"><p>Toggle a rating below to preview its effect. Nothing is saved.</p></div>`;
  }
  const deltaByRequirement = new Map(deltas.map((d) => [d.requirement, d]));
  const hypothetical = new Map(
    whatIf.summary.requirement_residuals.map((r) => [r.requirement, r]),
  );
  const rows = actual.requirement_residuals
    .map((r) => {
      const other = hypothetical.get(r.requirement);
      const delta = deltaByRequirement.get(r.requirement);
      return `<tr data-requirement="${escapeHtml(r.requirement)}">
<td>${escapeHtml(r.requirement)}</td>
<td class="num">${escapeHtml(r.residual)}</td>
<td class="num">${escapeHtml(other?.residual ?? "")}</td>
<td class="num delta">${escapeHtml(delta?.delta ?? "")}</td>
</tr>`;
    })
    .join("\n");
  const overlay = Object.entries(whatIf.overlay)
    .map(([key, token]) => `<li>${escapeHtml(key)} &rarr; ${RATING_LABELS[token]}</li>`)
    .join("");
  return `<div class="what-if">
<ul class="overlay">${overlay}</ul>
<table class="what-if-table">
<thead><tr><th>Requirement</th><th>Actual</th><th>Hypothetical</th><th>Decrease</th></tr></thead>
<tbody>
${rows}
</tbody>
</table>
<p class="total-delta">Total decrease: <strong>${escapeHtml(totalDelta.delta)}</strong>
(${escapeHtml(actual.total_residual.residual)} &rarr; ${escapeHtml(whatIf.summary.total_residual.residual)})</p>
<button type="button" class="close-what-if" data-action="close-what-if">Close preview</button>
</div>`;
}

/** Combined view for several assessments taken together. */
export function renderComparison(combined: SummaryDoc | null): string {
  if (combined === null) {
    return `<div class="comparison empty"><p>Select two or more assessments to combine them.</p></div>`;
  }
  return `<div class="comparison">
<h2>${escapeHtml(combined.subject)}</h2>
${renderScorePanel(combined)}
${renderResiduals(combined)}
</div>`;
}

export function renderScreeningForm(verdict: ScreeningVerdictDoc | null): string {
  let outcome = "";
  if (verdict !== null) {
    if (verdict.passed) {
      outcome = `<p class="verdict passed">Eligible: all screening criteria met.</p>`;
    } else {
      const failed = verdict.failed_criteria
        .map((c) => `<li>${escapeHtml(c)}</li>`)
        .join("");
      outcome = `<div class="verdict failed"><p>Not eligible:</p><ul>${failed}</ul></div>`;
    }
  }
  return `<form class="screening" data-action="screen">
<label>Certifications held
<input type="number" name="certifications" min="0" value="0">
</label>
<label>Industry 4.0 references
<input type="number" name="industry40_references" min="0" value="0">
</label>
<label>Documented topics (comma separated)
<input type="text" name="documented_topics" value="">
</label>
<label>Matched keywords (comma separated)
<input type="text" name="matched_keywords" value="">
</label>
<button type="submit">Check eligibility</button>
${outcome}
</form>`;
}
