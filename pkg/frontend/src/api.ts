/**
 * Typed client for the complykit HTTP service.
 *
 * Every response body is passed through verbatim; this module adds types and
 * error mapping, nothing else. The fetch implementation is injectable so
 * tests can replay captured service responses without a network.
 */

export type RatingToken = "full" | "partial" | "none";

export interface StandardDoc {
  id: string;
  label: string;
  id_prefix: string;
}

export interface RequirementDoc {
  id: string;
  name: string;
  description: string;
  depends_on: string[];
}

export interface ControlDoc {
  id: string;
  standard: string;
  title: string;
}

export interface GroupDoc {
  requirement: string;
  group_id: number;
  controls: string[];
  assessment_guidance: string;
}

export interface CatalogDoc {
  catalog_version: string;
  name: string;
  standards: StandardDoc[];
  requirements: RequirementDoc[];
  controls: ControlDoc[];
  groups: GroupDoc[];
}

export interface EffortRowDoc {
  requirement: string;
  group_id: number;
  ct: number;
  ct_max: number;
  ie: string;
  ie_exact: string;
}

export interface EffortDoc {
  catalog_fingerprint: string;
  rows: EffortRowDoc[];
}

export interface ImportanceRowDoc {
  requirement: string;
  rank: number;
  total: number;
  by_standard: Record<string, number>;
}

export interface ImportanceDoc {
  catalog_fingerprint: string;
  requirements: ImportanceRowDoc[];
  dependencies: { requirement: string; depends_on: string }[];
}

export interface ScoreDoc {
  requirement: string;
  points: string;
  max_points: number;
  normalized: string;
}

export interface ResidualRowDoc {
  requirement: string;
  group_id: number;
  rating: RatingToken;
  ie: string;
  ie_exact: string;
  residual: string;
  residual_exact: string;
}

export interface AmountDoc {
  residual: string;
  residual_exact: string;
}

export interface SummaryDoc {
  subject: string;
  catalog_name: string;
  catalog_fingerprint: string;
  scores: ScoreDoc[];
  residuals: ResidualRowDoc[];
  requirement_residuals: ({ requirement: string } & AmountDoc)[];
  total_residual: AmountDoc;
}

export interface AssessmentDoc {
  assessment_version: string;
  subject: string;
  catalog_name: string;
  catalog_fingerprint: string;
  ratings: Record<string, RatingToken>;
}

export interface AssessmentRecordDoc {
  id: string;
  revision: number;
  assessment: AssessmentDoc;
}

export interface AssessmentListingDoc {
  id: string;
  revision: number;
  subject: string;
  catalog_name: string;
  catalog_fingerprint: string;
}

export interface CatalogListingDoc {
  name: string;
  fingerprint: string;
}

export interface ScreeningProfileDoc {
  certifications: number;
  industry40_references: number;
  documented_topics: string[];
  matched_keywords: string[];
}

export interface ScreeningVerdictDoc {
  passed: boolean;
  failed_criteria: string[];
}

export type Fetch = (url: string, init?: RequestInit) => Promise<Response>;

/** Any non-2xx response other than a rating conflict. */
export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
    readonly details: unknown = undefined,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

/** 409 from a rating write: somebody else committed first. */
export class RevisionConflict extends Error {
  constructor(readonly currentRevision: number) {
    super(`assessment is at revision ${currentRevision}`);
    this.name = "RevisionConflict";
  }
}

interface ErrorEnvelope {
  error?: { code?: string; message?: string };
  current_revision?: number;
}

export class ServiceClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchImpl: Fetch = (url, init) => fetch(url, init),
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method };
    if (body !== undefined) {
      init.headers = { "content-type": "application/json" };
      init.body = JSON.stringify(body);
    }
    const response = await this.fetchImpl(this.baseUrl + path, init);
    const payload = (await response.json()) as unknown;
    if (response.ok) {
      return payload as T;
    }
    const envelope = payload as ErrorEnvelope;
    if (response.status === 409 && typeof envelope.current_revision === "number") {
      throw new RevisionConflict(envelope.current_revision);
    }
    const code = envelope.error?.code ?? "unknown";
    const message = envelope.error?.message ?? `request failed with status ${response.status}`;
    throw new ApiError(response.status, code, message, payload);
  }

  listCatalogs(): Promise<{ catalogs: CatalogListingDoc[] }> {
    return this.request("GET", "/catalogs");
  }

  catalog(fingerprint: string): Promise<CatalogDoc> {
    return this.request("GET", `/catalogs/${fingerprint}`);
  }

  effort(fingerprint: string): Promise<EffortDoc> {
    return this.request("GET", `/catalogs/${fingerprint}/effort`);
  }

  importance(fingerprint: string): Promise<ImportanceDoc> {
    return this.request("GET", `/catalogs/${fingerprint}/importance`);
  }

  createAssessment(
    catalogFingerprint: string,
    subject: string,
  ): Promise<{ id: string; revision: number }> {
    return this.request("POST", "/assessments", {
      catalog_fingerprint: catalogFingerprint,
      subject,
    });
  }

  listAssessments(): Promise<{ assessments: AssessmentListingDoc[] }> {
    return this.request("GET", "/assessments");
  }

  assessment(id: string): Promise<AssessmentRecordDoc> {
    return this.request("GET", `/assessments/${id}`);
  }

  putRating(
    id: string,
    groupKey: string,
    rating: RatingToken,
    expectedRevision: number,
  ): Promise<{ revision: number }> {
    return this.request("PUT", `/assessments/${id}/ratings/${groupKey}`, {
      rating,
      expected_revision: expectedRevision,
    });
  }

  summary(id: string): Promise<SummaryDoc> {
    return this.request("GET", `/assessments/${id}/summary`);
  }

  whatIf(id: string, overlay: Record<string, RatingToken>): Promise<SummaryDoc> {
    return this.request("POST", `/assessments/${id}/what-if`, { overlay });
  }

  combined(ids: string[]): Promise<SummaryDoc> {
    return this.request("POST", "/assessments/combined", { ids });
  }

  screening(profile: ScreeningProfileDoc): Promise<ScreeningVerdictDoc> {
    return this.request("POST", "/screening", { profile });
  }
}
