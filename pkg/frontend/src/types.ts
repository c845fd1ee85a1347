// Payload shapes of the curation service API. The UI renders these
// verbatim; it never derives scores, coordinates, or summaries itself.

export type Label = "relevant" | "non_relevant" | "unknown";
export type Method = "pca" | "lda" | "mds" | "tsne";
export type WordcloudMethod = "frequent" | "relevance";

export interface MatrixPayload {
  matrix_id: string;
  seed_id: string;
  rows: string[];
  cols: string[];
  cells: [string, string][];
  labels: Record<string, Label>;
  layer: Record<string, string>;
  last_seq: number;
  iteration: number;
}

export interface MatrixListItem {
  matrix_id: string;
  seed_id: string;
  n_rows: number;
  n_cols: number;
  last_seq: number;
}

export interface RankingItem {
  doc_id: string;
  score: number;
  predicted_label: "relevant" | "non_relevant";
  confidence: number;
}

export interface SuggestionPayload {
  predicted_relevant: { doc_id: string; score: number }[];
  predicted_non_relevant: { doc_id: string; score: number }[];
}

export interface ProjectionPayload {
  method: Method;
  seed: number;
  quality: Record<string, unknown>;
  coords: Record<string, [number, number]>;
  centroids: {
    relevant: [number, number] | null;
    non_relevant: [number, number] | null;
  };
  labels: Record<string, Label>;
  doc_types: Record<string, string>;
}

export interface TermSummaryPayload {
  method: WordcloudMethod;
  lambda: number | null;
  terms: [string, number, number][]; // term, score, display weight in [0,1]
}

export interface HighlightSpan {
  0: number;
  1: number;
  2: "relevant" | "non_relevant";
}

export interface DocumentPayload {
  id: string;
  type: string;
  title: string;
  abstract: string;
  year: number | null;
  authors: string[];
  prediction?: {
    label: "relevant" | "non_relevant";
    confidence: number;
    no_signal: boolean;
  };
  highlight?: { text: string; spans: [number, number, "relevant" | "non_relevant"][] };
}
