// Scene construction for the documents scatter: pure data in, pure data
// out, so the glyph logic is testable without a DOM.

import { labelColor, CENTROID_COLORS } from "./palette.js";
import type { Label, ProjectionPayload } from "./types.js";

export interface Glyph {
  docId: string;
  shape: "circle" | "square";
  x: number;
  y: number;
  size: number;
  color: string;
  label: Label;
}

export interface CentroidMark {
  kind: "relevant" | "non_relevant";
  shape: "triangle-up" | "triangle-down";
  x: number;
  y: number;
  color: string;
}

export interface Scene {
  glyphs: Glyph[];
  centroids: CentroidMark[];
}

export const PS_GLYPH_SIZE = 5;
export const SR_GLYPH_SIZE = 8; // reviews draw slightly larger than studies

/** Build the scatter scene: circles for primary studies, larger squares for
 * systematic reviews, color by label, plus unfilled triangles for the two
 * query centroids when the projection method can place them. */
export function renderScatter(projection: ProjectionPayload): Scene {
  const glyphs: Glyph[] = Object.entries(projection.coords).map(([docId, [x, y]]) => {
    const label = projection.labels[docId] ?? "unknown";
    const isReview = projection.doc_types[docId] === "systematic_review";
    return {
      docId,
      shape: isReview ? "square" : "circle",
      x,
      y,
      size: isReview ? SR_GLYPH_SIZE : PS_GLYPH_SIZE,
      color: labelColor(label),
      label,
    };
  });

  const centroids: CentroidMark[] = [];
  const { relevant, non_relevant } = projection.centroids;
  if (relevant) {
    centroids.push({
      kind: "relevant",
      shape: "triangle-up",
      x: clamp(relevant[0]),
      y: clamp(relevant[1]),
      color: CENTROID_COLORS.relevant,
    });
  }
  if (non_relevant) {
    centroids.push({
      kind: "non_relevant",
      shape: "triangle-down",
      x: clamp(non_relevant[0]),
      y: clamp(non_relevant[1]),
      color: CENTROID_COLORS.non_relevant,
    });
  }
  return { glyphs, centroids };
}

// centroids are out-of-sample points and may land outside the document
// cloud's [-1, 1] box; pin them to the chart edge
function clamp(v: number): number {
  return Math.max(-1, Math.min(1, v));
}

export interface BrushRect {
  x0: number;
  y0: number;
  x1: number;
  y1: number;
}

export function normalizeRect(r: BrushRect): BrushRect {
  return {
    x0: Math.min(r.x0, r.x1),
    y0: Math.min(r.y0, r.y1),
    x1: Math.max(r.x0, r.x1),
    y1: Math.max(r.y0, r.y1),
  };
}

/** Doc ids whose coordinates fall inside the brush (closed bounds). */
export function docsInsideBrush(
  coords: Record<string, [number, number]>,
  brush: BrushRect,
): string[] {
  const r = normalizeRect(brush);
  return Object.entries(coords)
    .filter(([, [x, y]]) => x >= r.x0 && x <= r.x1 && y >= r.y0 && y <= r.y1)
    .map(([docId]) => docId);
}
