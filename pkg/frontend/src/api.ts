// Typed client over the curation service. All mutations for a matrix go
// through one promise chain, so rapid interactions reach the server in
// order and the event log stays contiguous (the user never sees a 409).

import type {
  DocumentPayload,
  Label,
  MatrixListItem,
  MatrixPayload,
  Method,
  ProjectionPayload,
  RankingItem,
  SuggestionPayload,
  TermSummaryPayload,
  WordcloudMethod,
} from "./types.js";

export type Fetcher = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    public status: number,
    detail: string,
  ) {
    super(detail);
  }
}

export class ApiClient {
  private writeChain: Promise<unknown> = Promise.resolve();

  constructor(
    private base: string = "",
    private fetcher: Fetcher = (url, init) => fetch(url, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetcher(this.base + path, init);
    if (!response.ok) {
      let detail = response.statusText;
      try {
        const body = await response.json();
        if (body && typeof body.detail === "string") detail = body.detail;
      } catch {
        // non-JSON error body; keep the status text
      }
      throw new ApiError(response.status, detail);
    }
    return (await response.json()) as T;
  }

  private post<T>(path: string, body: unknown): Promise<T> {
    // serialize writes: each POST starts only after the previous settled
    const next = this.writeChain.then(
      () =>
        this.request<T>(path, {
          method: "POST",
          headers: { "content-type": "application/json" },
          body: JSON.stringify(body),
        }),
    );
    this.writeChain = next.catch(() => undefined);
    return next;
  }

  listMatrices(): Promise<{ items: MatrixListItem[] }> {
    return this.request("/matrices");
  }

  createMatrix(seedId: string): Promise<MatrixPayload> {
    return this.post("/matrices", { seed_id: seedId });
  }

  getMatrix(matrixId: string): Promise<MatrixPayload> {
    return this.request(`/matrices/${matrixId}`);
  }

  ranking(matrixId: string, scope: "unknown" | "all"): Promise<{ items: RankingItem[] }> {
    return this.request(`/matrices/${matrixId}/ranking?scope=${scope}`);
  }

  suggestions(matrixId: string, k: number): Promise<SuggestionPayload> {
    return this.request(`/matrices/${matrixId}/suggestions?k=${k}`);
  }

  projection(matrixId: string, method: Method): Promise<ProjectionPayload> {
    return this.request(`/matrices/${matrixId}/projection?method=${method}`);
  }

  keywords(
    matrixId: string,
    method: WordcloudMethod,
    k = 40,
  ): Promise<TermSummaryPayload> {
    return this.request(
      `/matrices/${matrixId}/keywords?set=relevant&method=${method}&k=${k}`,
    );
  }

  selectionKeywords(
    matrixId: string,
    docIds: string[],
    method: WordcloudMethod,
    k = 40,
  ): Promise<TermSummaryPayload> {
    return this.post(`/matrices/${matrixId}/keywords?method=${method}&k=${k}`, {
      doc_ids: docIds,
    });
  }

  document(
    matrixId: string | null,
    docId: string,
    highlight = false,
  ): Promise<DocumentPayload> {
    const params = new URLSearchParams();
    if (matrixId) params.set("matrix", matrixId);
    if (highlight) params.set("highlight", "true");
    const query = params.toString();
    return this.request(`/documents/${docId}${query ? "?" + query : ""}`);
  }

  classify(matrixId: string, docId: string, label: Label): Promise<unknown> {
    return this.post(`/matrices/${matrixId}/classify`, { doc_id: docId, label });
  }

  boost(matrixId: string, term: string, deltaSteps: number): Promise<{ multiplier: number }> {
    return this.post(`/matrices/${matrixId}/boost`, {
      term,
      delta_steps: deltaSteps,
    });
  }
}
