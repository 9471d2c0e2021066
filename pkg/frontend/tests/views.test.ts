import { describe, expect, it } from "vitest";

import { CatalogDoc, EffortDoc, SummaryDoc } from "../src/api.js";
import { WhatIfState } from "../src/state.js";
import {
  escapeHtml,
  renderCatalogBrowser,
  renderChecklist,
  renderComparison,
  renderResiduals,
  renderScorePanel,
  renderScreeningForm,
  renderWhatIf,
} from "../src/views.js";
import { loadFixture } from "./support.js";

const catalog = loadFixture<CatalogDoc>("catalog");
const effort = loadFixture<EffortDoc>("effort");
const emptySummary = loadFixture<SummaryDoc>("summary_empty");
const ia1FullSummary = loadFixture<SummaryDoc>("summary_ia1_full");
const whatIfIa2Full = loadFixture<SummaryDoc>("whatif_ia2_full");

describe("escapeHtml", () => {
  it("neutralizes markup", () => {
    expect(escapeHtml(`<script>alert("x") & 'y'</script>`)).toBe(
      "&lt;script&gt;alert(&quot;x&quot;) &amp; &#39;y&#39;&lt;/script&gt;",
    );
  });
});

describe("renderChecklist", () => {
  it("renders a three-state toggle per group with the current rating marked", () => {
    const html = renderChecklist(catalog, { "IA/1": "full" }, false);
    expect(html).toContain(
      `<button type="button" class="rate active" data-key="IA/1" data-rating="full" aria-pressed="true">Full</button>`,
    );
    expect(html).toContain(
      `<button type="button" class="rate" data-key="IA/1" data-rating="none" aria-pressed="false">None</button>`,
    );
    // Unrated groups default to none.
    expect(html).toContain(
      `<button type="button" class="rate active" data-key="IA/2" data-rating="none" aria-pressed="true">None</button>`,
    );
    const groupCount = catalog.groups.length;
    expect(html.match(/class="rate/g)).toHaveLength(3 * groupCount);
  });

  it("shows the assessment guidance beside each toggle", () => {
    const html = renderChecklist(catalog, {}, false);
    for (const group of catalog.groups) {
      expect(html).toContain(escapeHtml(group.assessment_guidance));
    }
  });

  it("disables every button while a write is in flight", () => {
    const busy = renderChecklist(catalog, {}, true);
    const idle = renderChecklist(catalog, {}, false);
    expect(busy.match(/ disabled/g)).toHaveLength(3 * catalog.groups.length);
    expect(idle).not.toContain(" disabled");
  });
});

describe("renderScorePanel", () => {
  it("prints service numbers verbatim and leaves bar math to CSS", () => {
    const html = renderScorePanel(ia1FullSummary);
    expect(html).toContain(">1 / 3<");
    expect(html).toContain(`<td class="num score-normalized">0.33</td>`);
    expect(html).toContain(`style="width: calc(0.33 * 100%)"`);
    expect(html).not.toContain("33%");
  });
});

describe("renderResiduals", () => {
  it("lists group rows, requirement totals, and the grand total verbatim", () => {
    const html = renderResiduals(emptySummary);
    expect(html).toContain(`<tr data-key="IA/2">`);
    expect(html).toContain(">0.89<");
    expect(html).toContain(">2.16<");
    expect(html).toContain("<strong>10.70</strong>");
  });
});

describe("renderCatalogBrowser", () => {
  it("shows standards, requirements, controls, and efforts", () => {
    const html = renderCatalogBrowser(catalog, effort);
    expect(html).toContain(escapeHtml(catalog.name));
    for (const standard of catalog.standards) {
      expect(html).toContain(escapeHtml(standard.label));
    }
    expect(html).toContain("Identification &amp; Authentication");
    expect(html).toContain("IE 0.89");
    const someControl = catalog.controls[0]!;
    expect(html).toContain(`<code>${escapeHtml(someControl.id)}</code>`);
  });
});

describe("renderWhatIf", () => {
  const state: WhatIfState = { overlay: { "IA/2": "full" }, summary: whatIfIa2Full };
  const deltas = [{ requirement: "IA", delta: "0.89", delta_exact: "17/19" }];
  const total = { requirement: "", delta: "0.89", delta_exact: "17/19" };

  it("renders actual, hypothetical, and the exact decrease side by side", () => {
    const html = renderWhatIf(emptySummary, state, deltas, total);
    expect(html).toContain("IA/2 &rarr; Full");
    expect(html).toContain(">2.16<");
    expect(html).toContain(">1.26<");
    expect(html).toContain(`<td class="num delta">0.89</td>`);
    expect(html).toContain("<strong>0.89</strong>");
    expect(html).toContain("10.70");
    expect(html).toContain("9.80");
    expect(html).toContain(`data-action="close-what-if"`);
  });

  it("renders a hint when no overlay is active", () => {
    const html = renderWhatIf(emptySummary, null, [], null);
    expect(html).toContain("Nothing is saved");
    expect(html).not.toContain("what-if-table");
  });
});

describe("renderComparison", () => {
  it("labels the combined subject and reuses the score panel", () => {
    const combined: SummaryDoc = { ...ia1FullSummary, subject: "plant A + plant B" };
    const html = renderComparison(combined);
    expect(html).toContain("plant A + plant B");
    expect(html).toContain(`class="score-panel"`);
  });

  it("prompts for a selection when nothing is combined", () => {
    expect(renderComparison(null)).toContain("two or more");
  });
});

describe("renderScreeningForm", () => {
  it("renders the four profile fields and no verdict initially", () => {
    const html = renderScreeningForm(null);
    for (const name of [
      "certifications",
      "industry40_references",
      "documented_topics",
      "matched_keywords",
    ]) {
      expect(html).toContain(`name="${name}"`);
    }
    expect(html).not.toContain("verdict");
  });

  it("renders pass and fail verdicts", () => {
    expect(renderScreeningForm({ passed: true, failed_criteria: [] })).toContain("Eligible");
    const failed = renderScreeningForm({
      passed: false,
      failed_criteria: ["certifications", "industry40_references"],
    });
    expect(failed).toContain("Not eligible");
    expect(failed).toContain("<li>certifications</li>");
  });
});
