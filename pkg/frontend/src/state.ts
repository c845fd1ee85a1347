// Application state and the actions behind the six panels. Every number on
// screen originates from a service response cached here; the only local
// logic is subsetting (brush membership, label filters) and ordering by the
// server-provided ranking.

import { ApiClient } from "./api.js";
import { docsInsideBrush, type BrushRect } from "./scene.js";
import type {
  DocumentPayload,
  Label,
  MatrixPayload,
  Method,
  ProjectionPayload,
  RankingItem,
  TermSummaryPayload,
  WordcloudMethod,
} from "./types.js";

export interface ViewState {
  activeMatrix: string | null;
  method: Method;
  brush: BrushRect | null;
  focusedDoc: string | null;
  hoveredPrediction: string | null; // doc id whose prediction badge shows
  wordcloudMethod: WordcloudMethod;
}

export class AppState {
  view: ViewState = {
    activeMatrix: null,
    method: "pca",
    brush: null,
    focusedDoc: null,
    hoveredPrediction: null,
    wordcloudMethod: "frequent",
  };

  matrix: MatrixPayload | null = null;
  ranking: RankingItem[] = [];
  projection: ProjectionPayload | null = null;
  relevantCloud: TermSummaryPayload | null = null;
  selectionCloud: TermSummaryPayload | null = null;
  detail: DocumentPayload | null = null;
  lastError: string | null = null;

  private listeners: (() => void)[] = [];

  constructor(public api: ApiClient) {}

  onChange(listener: () => void): void {
    this.listeners.push(listener);
  }

  private notify(): void {
    for (const fn of this.listeners) fn();
  }

  // -- selection (panel B -> C) ------------------------------------------

  /** Doc ids the list should show: brush contents when a brush is active,
   * otherwise every unknown-labeled document. */
  selectedDocs(): string[] {
    if (this.view.brush && this.projection) {
      return docsInsideBrush(this.projection.coords, this.view.brush);
    }
    if (!this.matrix) return [];
    return Object.entries(this.matrix.labels)
      .filter(([, label]) => label === "unknown")
      .map(([docId]) => docId);
  }

  /** The list rows: the selection ordered by the server ranking. */
  listItems(): RankingItem[] {
    const selected = new Set(this.selectedDocs());
    return this.ranking.filter((item) => selected.has(item.doc_id));
  }

  // -- loading ------------------------------------------------------------

  async openMatrix(matrixId: string): Promise<void> {
    this.view.activeMatrix = matrixId;
    this.view.brush = null;
    this.view.focusedDoc = null;
    this.matrix = await this.api.getMatrix(matrixId);
    await this.refreshViews({ projection: true });
    this.notify();
  }

  async setMethod(method: Method): Promise<void> {
    this.view.method = method;
    if (this.view.activeMatrix) {
      this.projection = await this.api.projection(this.view.activeMatrix, method);
    }
    this.notify();
  }

  async setWordcloudMethod(method: WordcloudMethod): Promise<void> {
    this.view.wordcloudMethod = method;
    await this.refreshClouds();
    this.notify();
  }

  private async refreshViews(opts: { projection?: boolean } = {}): Promise<void> {
    const matrixId = this.view.activeMatrix;
    if (!matrixId) return;
    const jobs: Promise<unknown>[] = [
      this.api.ranking(matrixId, "all").then((r) => (this.ranking = r.items)),
      this.refreshClouds(),
    ];
    // t-SNE has no centroid mapping and its coords ignore labels, so a
    // label change does not force the expensive recompute
    if (opts.projection || this.view.method !== "tsne") {
      jobs.push(
        this.api
          .projection(matrixId, this.view.method)
          .then((p) => (this.projection = p)),
      );
    }
    await Promise.all(jobs);
  }

  private async refreshClouds(): Promise<void> {
    const matrixId = this.view.activeMatrix;
    if (!matrixId) return;
    const method = this.view.wordcloudMethod;
    this.relevantCloud = await this.api.keywords(matrixId, method);
    const selection = this.selectedDocs();
    this.selectionCloud = selection.length
      ? await this.api.selectionKeywords(matrixId, selection, method)
      : { method, lambda: null, terms: [] };
  }

  // -- interactions --------------------------------------------------------

  async onBrush(rect: BrushRect | null): Promise<void> {
    this.view.brush = rect;
    await this.refreshClouds();
    this.notify();
  }

  async focusDocument(docId: string | null): Promise<void> {
    this.view.focusedDoc = docId;
    this.view.hoveredPrediction = null;
    this.detail =
      docId && this.view.activeMatrix
        ? await this.api.document(this.view.activeMatrix, docId, true)
        : null;
    this.notify();
  }

  /** Prediction badges stay hidden until the reviewer asks, to avoid
   * anchoring them before they form an opinion. */
  hoverPrediction(docId: string | null): void {
    this.view.hoveredPrediction = docId;
    this.notify();
  }

  predictionVisible(docId: string): boolean {
    return this.view.hoveredPrediction === docId;
  }

  async classifyAction(docId: string, label: Label): Promise<void> {
    const matrixId = this.view.activeMatrix;
    if (!matrixId || !this.matrix) return;
    const previous = this.matrix.labels[docId];
    this.matrix.labels[docId] = label; // optimistic
    this.notify();
    try {
      await this.api.classify(matrixId, docId, label);
    } catch (err) {
      this.matrix.labels[docId] = previous; // revert
      this.lastError = errorText(err);
      this.notify();
      return;
    }
    this.lastError = null;
    this.matrix = await this.api.getMatrix(matrixId);
    await this.refreshViews();
    if (this.view.focusedDoc) {
      this.detail = await this.api.document(matrixId, this.view.focusedDoc, true);
    }
    this.notify();
  }

  async boostAction(term: string, direction: 1 | -1): Promise<void> {
    const matrixId = this.view.activeMatrix;
    if (!matrixId) return;
    try {
      await this.api.boost(matrixId, term, direction);
    } catch (err) {
      this.lastError = errorText(err);
      this.notify();
      return;
    }
    this.lastError = null;
    await this.refreshViews();
    if (this.view.focusedDoc) {
      this.detail = await this.api.document(matrixId, this.view.focusedDoc, true);
    }
    this.notify();
  }
}

function errorText(err: unknown): string {
  return err instanceof Error ? err.message : String(err);
}
