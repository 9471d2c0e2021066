/**
 * Workbench behavior against a recorded service. The fixtures were captured
 * from the real HTTP service, so every number asserted here is a number the
 * service actually produced.
 */

import { describe, expect, it } from "vitest";

import {
  AssessmentRecordDoc,
  CatalogDoc,
  EffortDoc,
  RevisionConflict,
  ServiceClient,
  SummaryDoc,
} from "../src/api.js";
import { BusyError, Workbench } from "../src/state.js";
import { fakeService, loadFixture, RecordedCall, RouteResult } from "./support.js";

const catalog = loadFixture<CatalogDoc>("catalog");
const effort = loadFixture<EffortDoc>("effort");
const emptyRecord = loadFixture<AssessmentRecordDoc>("assessment_empty");
const ia1FullRecord = loadFixture<AssessmentRecordDoc>("assessment_ia1_full");
const emptySummary = loadFixture<SummaryDoc>("summary_empty");
const ia1FullSummary = loadFixture<SummaryDoc>("summary_ia1_full");
const ia1FullIa2PartialSummary = loadFixture<SummaryDoc>("summary_ia1_full_ia2_partial");
const whatIfIa2Full = loadFixture<SummaryDoc>("whatif_ia2_full");

const FP = loadFixture<{ fingerprint: string }>("index").fingerprint;
const ID = emptyRecord.id;

/** Routes every Workbench.open() needs; returns null for anything else. */
function readRoutes(call: RecordedCall, record: AssessmentRecordDoc, summary: SummaryDoc): RouteResult | null {
  if (call.method !== "GET") {
    return null;
  }
  switch (call.path) {
    case `/catalogs/${FP}`:
      return { body: catalog };
    case `/catalogs/${FP}/effort`:
      return { body: effort };
    case `/assessments/${ID}`:
      return { body: record };
    case `/assessments/${ID}/summary`:
      return { body: summary };
    default:
      return null;
  }
}

function openWorkbench(route: (call: RecordedCall) => RouteResult | Promise<RouteResult>) {
  const { fetch, calls } = fakeService(route);
  const client = new ServiceClient("", fetch);
  const workbench = new Workbench(client);
  return { workbench, client, calls };
}

describe("rating a group", () => {
  it("updates the summary in place and matches a direct GET afterwards", async () => {
    // Serves the empty assessment until the rating lands, then revision 1.
    let revision = 0;
    const route = (call: RecordedCall): RouteResult => {
      if (call.method === "PUT" && call.path === `/assessments/${ID}/ratings/IA/1`) {
        expect(call.body).toEqual({ rating: "full", expected_revision: 0 });
        revision = 1;
        return { body: { revision } };
      }
      const current = revision === 0 ? emptyRecord : ia1FullRecord;
      const summary = revision === 0 ? emptySummary : ia1FullSummary;
      const result = readRoutes(call, current, summary);
      if (result === null) {
        throw new Error(`unexpected call ${call.method} ${call.path}`);
      }
      return result;
    };
    const { workbench, client } = openWorkbench(route);

    await workbench.open(FP, ID);
    expect(workbench.revision).toBe(0);
    expect(workbench.summary).toEqual(emptySummary);

    await workbench.rateGroup("IA/1", "full");

    expect(workbench.revision).toBe(1);
    expect(workbench.ratingOf("IA/1")).toBe("full");
    expect(workbench.summary).toEqual(ia1FullSummary);

    const direct = await client.summary(ID);
    expect(workbench.summary).toEqual(direct);
  });

  it("refetches and replays once on a revision conflict", async () => {
    // This tab opened at revision 0; another writer has since rated IA/1.
    const puts: RecordedCall[] = [];
    let serverRevision = 1;
    const route = (call: RecordedCall): RouteResult => {
      if (call.method === "PUT") {
        puts.push(call);
        const body = call.body as { expected_revision: number };
        if (body.expected_revision !== serverRevision) {
          return { status: 409, body: { current_revision: serverRevision } };
        }
        serverRevision += 1;
        return { body: { revision: serverRevision } };
      }
      const current = serverRevision === 1 ? ia1FullRecord : { ...ia1FullRecord, revision: 2 };
      const summary = serverRevision === 1 ? ia1FullSummary : ia1FullIa2PartialSummary;
      const result = readRoutes(call, current, summary);
      if (result === null) {
        throw new Error(`unexpected call ${call.method} ${call.path}`);
      }
      return result;
    };
    // During open() the tab still sees the stale revision-0 state; by the
    // time it writes, the server has moved on.
    let opened = false;
    const { workbench } = openWorkbench((call) => {
      if (!opened && call.path === `/assessments/${ID}`) {
        return { body: emptyRecord };
      }
      if (!opened && call.path === `/assessments/${ID}/summary`) {
        return { body: emptySummary };
      }
      return route(call);
    });

    await workbench.open(FP, ID);
    opened = true;
    expect(workbench.revision).toBe(0);

    await workbench.rateGroup("IA/2", "partial");

    expect(puts.map((p) => (p.body as { expected_revision: number }).expected_revision)).toEqual([
      0, 1,
    ]);
    expect(workbench.revision).toBe(2);
    // The other writer's rating survives alongside this tab's choice.
    expect(workbench.ratingOf("IA/1")).toBe("full");
    expect(workbench.ratingOf("IA/2")).toBe("partial");
    expect(workbench.summary).toEqual(ia1FullIa2PartialSummary);
  });

  it("gives up after a single replay", async () => {
    let putCount = 0;
    const route = (call: RecordedCall): RouteResult => {
      if (call.method === "PUT") {
        putCount += 1;
        return { status: 409, body: { current_revision: putCount } };
      }
      const result = readRoutes(call, emptyRecord, emptySummary);
      if (result === null) {
        throw new Error(`unexpected call ${call.method} ${call.path}`);
      }
      return result;
    };
    const { workbench } = openWorkbench(route);
    await workbench.open(FP, ID);

    await expect(workbench.rateGroup("IA/1", "full")).rejects.toBeInstanceOf(RevisionConflict);
    expect(putCount).toBe(2);
    expect(workbench.busy).toBe(false);
    expect(workbench.lastError).not.toBeNull();
  });

  it("allows one mutation at a time but lets reads overlap", async () => {
    let release!: () => void;
    const gate = new Promise<void>((resolve) => {
      release = resolve;
    });
    const route = async (call: RecordedCall): Promise<RouteResult> => {
      if (call.method === "PUT") {
        await gate;
        return { body: { revision: 1 } };
      }
      if (call.method === "POST" && call.path === `/assessments/${ID}/what-if`) {
        return { body: whatIfIa2Full };
      }
      const result = readRoutes(call, emptyRecord, ia1FullSummary);
      if (result === null) {
        throw new Error(`unexpected call ${call.method} ${call.path}`);
      }
      return result;
    };
    const { workbench } = openWorkbench(route);
    await workbench.open(FP, ID);

    const first = workbench.rateGroup("IA/1", "full");
    expect(workbench.busy).toBe(true);
    await expect(workbench.rateGroup("IA/2", "full")).rejects.toBeInstanceOf(BusyError);
    // A hypothetical view is a read; it must not be blocked by the write.
    await workbench.whatIfToggle("IA/2", "full");
    expect(workbench.whatIf).not.toBeNull();

    release();
    await first;
    expect(workbench.busy).toBe(false);
    expect(workbench.revision).toBe(1);
  });
});

describe("what-if", () => {
  function whatIfRoute(call: RecordedCall): RouteResult {
    if (call.method === "POST" && call.path === `/assessments/${ID}/what-if`) {
      const overlay = (call.body as { overlay: Record<string, string> }).overlay;
      if (Object.keys(overlay).length === 0 || overlay["IA/1"] === "none") {
        return { body: emptySummary };
      }
      expect(overlay).toEqual({ "IA/2": "full" });
      return { body: whatIfIa2Full };
    }
    const result = readRoutes(call, emptyRecord, emptySummary);
    if (result === null) {
      throw new Error(`unexpected call ${call.method} ${call.path}`);
    }
    return result;
  }

  it("shows a residual decrease equal to the group's displayed effort", async () => {
    const { workbench } = openWorkbench(whatIfRoute);
    await workbench.open(FP, ID);

    await workbench.whatIfToggle("IA/2", "full");

    const total = workbench.totalDelta();
    expect(total).not.toBeNull();
    expect(total!.delta).toBe(workbench.ieOf("IA/2"));
    expect(total!.delta).toBe("0.89");
    expect(total!.delta_exact).toBe("17/19");

    const deltas = workbench.residualDeltas();
    const ia = deltas.find((d) => d.requirement === "IA");
    expect(ia).toEqual({ requirement: "IA", delta: "0.89", delta_exact: "17/19" });
    for (const other of deltas.filter((d) => d.requirement !== "IA")) {
      expect(other.delta).toBe("0.00");
      expect(other.delta_exact).toBe("0");
    }
  });

  it("subtracts exact amounts, not rendered strings", async () => {
    const { workbench } = openWorkbench(whatIfRoute);
    await workbench.open(FP, ID);
    await workbench.whatIfToggle("IA/2", "full");

    // The displayed totals differ by 0.90 (10.70 vs 9.80); the exact
    // difference is 17/19, which renders as 0.89. Only the latter agrees
    // with the service's own effort column.
    expect(workbench.summary!.total_residual.residual).toBe("10.70");
    expect(workbench.whatIf!.summary.total_residual.residual).toBe("9.80");
    expect(workbench.totalDelta()!.delta).toBe("0.89");
  });

  it("never touches the stored summary or revision", async () => {
    const { workbench, calls } = openWorkbench(whatIfRoute);
    await workbench.open(FP, ID);
    const summaryBefore = workbench.summary;

    await workbench.whatIfToggle("IA/2", "full");
    expect(workbench.summary).toBe(summaryBefore);
    expect(workbench.revision).toBe(0);
    expect(calls.filter((c) => c.method === "PUT")).toEqual([]);

    const callsBeforeClose = calls.length;
    workbench.closeWhatIf();
    expect(workbench.whatIf).toBeNull();
    expect(workbench.summary).toBe(summaryBefore);
    expect(workbench.revision).toBe(0);
    expect(calls.length).toBe(callsBeforeClose);
    expect(workbench.residualDeltas()).toEqual([]);
    expect(workbench.totalDelta()).toBeNull();
  });

  it("treats an overlay that changes nothing as no change", async () => {
    const { workbench } = openWorkbench(whatIfRoute);
    await workbench.open(FP, ID);

    // IA/1 is unrated, and unrated means none, so this overlay is a no-op.
    await workbench.whatIfToggle("IA/1", "none");

    expect(workbench.whatIf!.summary).toEqual(workbench.summary);
    expect(workbench.totalDelta()!.delta).toBe("0.00");
    expect(workbench.totalDelta()!.delta_exact).toBe("0");
    for (const delta of workbench.residualDeltas()) {
      expect(delta.delta_exact).toBe("0");
    }
  });

  it("drops the hypothetical view when the request fails", async () => {
    let failNext = false;
    const route = (call: RecordedCall): RouteResult => {
      if (failNext && call.method === "POST") {
        throw new Error("connection reset");
      }
      return whatIfRoute(call);
    };
    const { workbench } = openWorkbench(route);
    await workbench.open(FP, ID);
    await workbench.whatIfToggle("IA/2", "full");
    expect(workbench.whatIf).not.toBeNull();

    failNext = true;
    await expect(workbench.whatIfToggle("IA/3", "full")).rejects.toThrow("connection reset");
    expect(workbench.whatIf).toBeNull();
    expect(workbench.summary).toEqual(emptySummary);
  });

  it("merges repeated toggles into one overlay", async () => {
    const overlays: unknown[] = [];
    const route = (call: RecordedCall): RouteResult => {
      if (call.method === "POST" && call.path === `/assessments/${ID}/what-if`) {
        overlays.push((call.body as { overlay: unknown }).overlay);
        return { body: whatIfIa2Full };
      }
      const result = readRoutes(call, emptyRecord, emptySummary);
      if (result === null) {
        throw new Error(`unexpected call ${call.method} ${call.path}`);
      }
      return result;
    };
    const { workbench } = openWorkbench(route);
    await workbench.open(FP, ID);

    await workbench.whatIfToggle("IA/2", "full");
    await workbench.whatIfToggle("IA/3", "partial");
    await workbench.whatIfToggle("IA/2", "none");

    expect(overlays).toEqual([
      { "IA/2": "full" },
      { "IA/2": "full", "IA/3": "partial" },
      { "IA/2": "none", "IA/3": "partial" },
    ]);
  });
});

describe("effort lookup", () => {
  it("reads the displayed effort straight from the service table", async () => {
    const { workbench } = openWorkbench((call) => {
      const result = readRoutes(call, emptyRecord, emptySummary);
      if (result === null) {
        throw new Error(`unexpected call ${call.method} ${call.path}`);
      }
      return result;
    });
    await workbench.open(FP, ID);
    expect(workbench.ieOf("IA/1")).toBe("1.00");
    expect(workbench.ieOf("IA/2")).toBe("0.89");
    expect(workbench.ieOf("IA/3")).toBe("0.26");
    expect(() => workbench.ieOf("IA/99")).toThrow(RangeError);
  });
});
