/**
 * Workbench state for one open assessment.
 *
 * All numbers shown anywhere come from service responses held here; the one
 * computation this module performs itself is the what-if delta, done in
 * exact rational arithmetic on the *_exact fields (see rational.ts), which
 * is guaranteed to agree with service-rendered amounts.
 */

import {
  AssessmentRecordDoc,
  CatalogDoc,
  EffortDoc,
  RatingToken,
  RevisionConflict,
  ServiceClient,
  SummaryDoc,
} from "./api.js";
import { formatTwoDecimals, formatExact, parseExact, subtract } from "./rational.js";

export interface WhatIfState {
  overlay: Record<string, RatingToken>;
  summary: SummaryDoc;
}

export interface ResidualDelta {
  requirement: string;
  delta: string;
  delta_exact: string;
}

export class BusyError extends Error {
  constructor() {
    super("another change is still being saved");
    this.name = "BusyError";
  }
}

export class Workbench {
  catalog: CatalogDoc | null = null;
  effort: EffortDoc | null = null;
  assessmentId: string | null = null;
  revision = -1;
  ratings: Record<string, RatingToken> = {};
  summary: SummaryDoc | null = null;
  whatIf: WhatIfState | null = null;
  lastError: string | null = null;
  private mutationInFlight = false;

  constructor(private readonly client: ServiceClient) {}

  get busy(): boolean {
    return this.mutationInFlight;
  }

  async open(catalogFingerprint: string, assessmentId: string): Promise<void> {
    const [catalog, effort, record, summary] = await Promise.all([
      this.client.catalog(catalogFingerprint),
      this.client.effort(catalogFingerprint),
      this.client.assessment(assessmentId),
      this.client.summary(assessmentId),
    ]);
    this.catalog = catalog;
    this.effort = effort;
    this.assessmentId = assessmentId;
    this.adopt(record);
    this.summary = summary;
    this.whatIf = null;
    this.lastError = null;
  }

  private adopt(record: AssessmentRecordDoc): void {
    this.revision = record.revision;
    this.ratings = { ...record.assessment.ratings };
  }

  /** Displayed implementation effort for a "REQ/N" group key. */
  ieOf(groupKey: string): string {
    const row = this.effort?.rows.find((r) => `${r.requirement}/${r.group_id}` === groupKey);
    if (row === undefined) {
      throw new RangeError(`no effort row for ${groupKey}`);
    }
    return row.ie;
  }

  ratingOf(groupKey: string): RatingToken {
    return this.ratings[groupKey] ?? "none";
  }

  /**
   * Persist one rating. Sends the revision this tab believes in; a conflict
   * means another writer got there first, so refetch and replay exactly once
   * on top of their revision. Rejects while a previous mutation is saving.
   */
  async rateGroup(groupKey: string, rating: RatingToken): Promise<void> {
    if (this.assessmentId === null) {
      throw new Error("no assessment open");
    }
    if (this.mutationInFlight) {
      throw new BusyError();
    }
    this.mutationInFlight = true;
    try {
      let accepted: { revision: number };
      try {
        accepted = await this.client.putRating(this.assessmentId, groupKey, rating, this.revision);
      } catch (error) {
        if (!(error instanceof RevisionConflict)) {
          throw error;
        }
        this.adopt(await this.client.assessment(this.assessmentId));
        accepted = await this.client.putRating(this.assessmentId, groupKey, rating, this.revision);
      }
      this.revision = accepted.revision;
      this.ratings[groupKey] = rating;
      this.summary = await this.client.summary(this.assessmentId);
      this.lastError = null;
    } catch (error) {
      this.lastError = error instanceof Error ? error.message : String(error);
      throw error;
    } finally {
      this.mutationInFlight = false;
    }
  }

  /**
   * Merge one hypothetical rating into the overlay and fetch the summary the
   * assessment would have. Nothing is persisted; the stored summary and
   * revision are untouched. If the request fails the hypothetical view is
   * dropped rather than left showing numbers for a stale overlay.
   */
  async whatIfToggle(groupKey: string, rating: RatingToken): Promise<void> {
    if (this.assessmentId === null) {
      throw new Error("no assessment open");
    }
    const overlay = { ...(this.whatIf?.overlay ?? {}), [groupKey]: rating };
    let summary: SummaryDoc;
    try {
      summary = await this.client.whatIf(this.assessmentId, overlay);
    } catch (error) {
      this.whatIf = null;
      throw error;
    }
    this.whatIf = { overlay, summary };
  }

  /** Drop the hypothetical view. Purely local. */
  closeWhatIf(): void {
    this.whatIf = null;
  }

  /**
   * Residual decrease per requirement, actual minus hypothetical, computed
   * exactly from the *_exact fields and formatted with the service's
   * two-decimal rule. Empty unless a what-if overlay is active.
   */
  residualDeltas(): ResidualDelta[] {
    if (this.summary === null || this.whatIf === null) {
      return [];
    }
    const hypothetical = new Map(
      this.whatIf.summary.requirement_residuals.map((row) => [row.requirement, row]),
    );
    const deltas: ResidualDelta[] = [];
    for (const actual of this.summary.requirement_residuals) {
      const other = hypothetical.get(actual.requirement);
      if (other === undefined) {
        continue;
      }
      const delta = subtract(parseExact(actual.residual_exact), parseExact(other.residual_exact));
      deltas.push({
        requirement: actual.requirement,
        delta: formatTwoDecimals(delta),
        delta_exact: formatExact(delta),
      });
    }
    return deltas;
  }

  totalDelta(): ResidualDelta | null {
    if (this.summary === null || this.whatIf === null) {
      return null;
    }
    const delta = subtract(
      parseExact(this.summary.total_residual.residual_exact),
      parseExact(this.whatIf.summary.total_residual.residual_exact),
    );
    return { requirement: "", delta: formatTwoDecimals(delta), delta_exact: formatExact(delta) };
  }
}
