/**
 * Browser entry point. Everything here is wiring: pick a catalog and an
 * assessment, keep one Workbench, delegate clicks, re-render. Rendering and
 * state live in views.ts and state.ts and are covered by tests; this file is
 * deliberately free of logic worth testing.
 */

import {
  ApiError,
  RatingToken,
  ScreeningVerdictDoc,
  ServiceClient,
  SummaryDoc,
} from "./api.js";
import { BusyError, Workbench } from "./state.js";
import {
  renderCatalogBrowser,
  renderChecklist,
  renderComparison,
  renderResiduals,
  renderScorePanel,
  renderScreeningForm,
  renderWhatIf,
} from "./views.js";

type Tab = "browse" | "assess" | "dashboard" | "compare" | "screen";

const client = new ServiceClient("");
const workbench = new Workbench(client);

let activeTab: Tab = "assess";
let combinedSummary: SummaryDoc | null = null;
let screeningVerdict: ScreeningVerdictDoc | null = null;
let notice: string | null = null;

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (node === null) {
    throw new Error(`missing #${id}`);
  }
  return node as T;
}

function renderStatus(): void {
  const parts: string[] = [];
  if (workbench.assessmentId !== null && workbench.summary !== null) {
    parts.push(`${workbench.summary.subject} (revision ${workbench.revision})`);
  }
  if (workbench.busy) {
    parts.push("saving…");
  }
  if (notice !== null) {
    parts.push(notice);
  }
  el("status").textContent = parts.join(" · ");
}

function render(): void {
  for (const button of document.querySelectorAll<HTMLButtonElement>("nav [data-tab]")) {
    button.classList.toggle("active", button.dataset["tab"] === activeTab);
  }
  const view = el("view");
  if (workbench.catalog === null || workbench.effort === null || workbench.summary === null) {
    view.innerHTML = `<p>No catalog loaded. Upload one with the CLI, then reload.</p>`;
    renderStatus();
    return;
  }
  switch (activeTab) {
    case "browse":
      view.innerHTML = renderCatalogBrowser(workbench.catalog, workbench.effort);
      break;
    case "assess":
      view.innerHTML = `<div data-mode="commit">${renderChecklist(
        workbench.catalog,
        workbench.ratings,
        workbench.busy,
      )}</div>`;
      break;
    case "dashboard": {
      const previewRatings = { ...workbench.ratings, ...(workbench.whatIf?.overlay ?? {}) };
      view.innerHTML = [
        renderScorePanel(workbench.summary),
        renderResiduals(workbench.summary),
        renderWhatIf(
          workbench.summary,
          workbench.whatIf,
          workbench.residualDeltas(),
          workbench.totalDelta(),
        ),
        `<div data-mode="preview">${renderChecklist(workbench.catalog, previewRatings, false)}</div>`,
      ].join("\n");
      break;
    }
    case "compare":
      view.innerHTML = renderCompareTab();
      break;
    case "screen":
      view.innerHTML = renderScreeningForm(screeningVerdict);
      break;
  }
  renderStatus();
}

function renderCompareTab(): string {
  return `<div class="compare-controls">
<p>Assessment ids, comma separated:</p>
<input type="text" id="combine-ids" size="80">
<button type="button" data-action="combine">Combine</button>
</div>
${renderComparison(combinedSummary)}`;
}

function report(error: unknown): void {
  if (error instanceof BusyError) {
    return;
  }
  notice = error instanceof ApiError ? `${error.code}: ${error.message}` : String(error);
  render();
}

async function onRate(key: string, rating: RatingToken, mode: string): Promise<void> {
  notice = null;
  try {
    if (mode === "preview") {
      await workbench.whatIfToggle(key, rating);
    } else {
      await workbench.rateGroup(key, rating);
    }
    render();
  } catch (error) {
    report(error);
  }
}

async function onCombine(): Promise<void> {
  const raw = el<HTMLInputElement>("combine-ids").value;
  const ids = raw
    .split(",")
    .map((s) => s.trim())
    .filter((s) => s.length > 0);
  notice = null;
  try {
    combinedSummary = await client.combined(ids);
    render();
  } catch (error) {
    report(error);
  }
}

async function onScreen(form: HTMLFormElement): Promise<void> {
  const data = new FormData(form);
  const listField = (name: string): string[] =>
    String(data.get(name) ?? "")
      .split(",")
      .map((s) => s.trim())
      .filter((s) => s.length > 0);
  notice = null;
  try {
    screeningVerdict = await client.screening({
      certifications: Number(data.get("certifications") ?? 0),
      industry40_references: Number(data.get("industry40_references") ?? 0),
      documented_topics: listField("documented_topics"),
      matched_keywords: listField("matched_keywords"),
    });
    render();
  } catch (error) {
    report(error);
  }
}

function wireEvents(): void {
  document.body.addEventListener("click", (event) => {
    const target = event.target;
    if (!(target instanceof HTMLElement)) {
      return;
    }
    const tabButton = target.closest<HTMLElement>("[data-tab]");
    if (tabButton !== null) {
      activeTab = tabButton.dataset["tab"] as Tab;
      render();
      return;
    }
    const rateButton = target.closest<HTMLButtonElement>("button.rate");
    if (rateButton !== null && !rateButton.disabled) {
      const mode = rateButton.closest<HTMLElement>("[data-mode]")?.dataset["mode"] ?? "commit";
      const key = rateButton.dataset["key"];
      const rating = rateButton.dataset["rating"] as RatingToken | undefined;
      if (key !== undefined && rating !== undefined) {
        void onRate(key, rating, mode);
      }
      return;
    }
    if (target.closest("[data-action='close-what-if']") !== null) {
      workbench.closeWhatIf();
      render();
      return;
    }
    if (target.closest("[data-action='combine']") !== null) {
      void onCombine();
    }
  });
  document.body.addEventListener("submit", (event) => {
    const form = event.target;
    if (form instanceof HTMLFormElement && form.dataset["action"] === "screen") {
      event.preventDefault();
      void onScreen(form);
    }
  });
}

async function boot(): Promise<void> {
  wireEvents();
  try {
    const { catalogs } = await client.listCatalogs();
    const first = catalogs[0];
    if (first === undefined) {
      render();
      return;
    }
    const { assessments } = await client.listAssessments();
    const existing = assessments.find((a) => a.catalog_fingerprint === first.fingerprint);
    let assessmentId: string;
    if (existing !== undefined) {
      assessmentId = existing.id;
    } else {
      const created = await client.createAssessment(first.fingerprint, "workbench");
      assessmentId = created.id;
    }
    await workbench.open(first.fingerprint, assessmentId);
  } catch (error) {
    report(error);
    return;
  }
  render();
}

void boot();
