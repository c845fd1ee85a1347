import { describe, expect, it } from "vitest";

import { LABEL_COLORS } from "../src/palette.js";
import { docsInsideBrush, renderScatter } from "../src/scene.js";
import type { ProjectionPayload } from "../src/types.js";

function projection(overrides: Partial<ProjectionPayload> = {}): ProjectionPayload {
  return {
    method: "pca",
    seed: 0,
    quality: {},
    coords: {
      S1: [0.0, 0.0],
      S2: [0.5, 0.5],
      P1: [-1.0, 0.2],
      P2: [0.1, -0.9],
      P3: [1.0, 1.0],
    },
    centroids: { relevant: [0.2, 0.1], non_relevant: null },
    labels: { S1: "relevant", S2: "unknown", P1: "unknown", P2: "unknown", P3: "unknown" },
    doc_types: {
      S1: "systematic_review",
      S2: "systematic_review",
      P1: "primary_study",
      P2: "primary_study",
      P3: "primary_study",
    },
    ...overrides,
  };
}

describe("renderScatter", () => {
  it("draws squares for reviews, circles for studies, at most two triangles", () => {
    const scene = renderScatter(projection());
    const squares = scene.glyphs.filter((g) => g.shape === "square");
    const circles = scene.glyphs.filter((g) => g.shape === "circle");
    expect(squares).toHaveLength(2);
    expect(circles).toHaveLength(3);
    expect(scene.centroids.length).toBeLessThanOrEqual(2);
    // reviews draw larger than studies
    expect(squares[0].size).toBeGreaterThan(circles[0].size);
  });

  it("colors glyphs by label from the shared palette", () => {
    const scene = renderScatter(projection());
    const byId = Object.fromEntries(scene.glyphs.map((g) => [g.docId, g]));
    expect(byId.S1.color).toBe(LABEL_COLORS.relevant);
    expect(byId.P1.color).toBe(LABEL_COLORS.unknown);
  });

  it("all-unknown labels give a uniform scene", () => {
    const p = projection();
    p.labels = Object.fromEntries(Object.keys(p.coords).map((d) => [d, "unknown"]));
    const scene = renderScatter(p);
    expect(new Set(scene.glyphs.map((g) => g.color)).size).toBe(1);
  });

  it("draws an upward triangle for the relevant centroid only when present", () => {
    const scene = renderScatter(projection());
    expect(scene.centroids).toHaveLength(1);
    expect(scene.centroids[0].shape).toBe("triangle-up");
    expect(scene.centroids[0].color).toBe(LABEL_COLORS.relevant);

    const both = renderScatter(
      projection({ centroids: { relevant: [0, 0], non_relevant: [0.4, -0.2] } }),
    );
    expect(both.centroids.map((c) => c.shape)).toEqual(["triangle-up", "triangle-down"]);
  });

  it("hides centroids when the server sends none (t-SNE)", () => {
    const scene = renderScatter(
      projection({ method: "tsne", centroids: { relevant: null, non_relevant: null } }),
    );
    expect(scene.centroids).toHaveLength(0);
  });

  it("clamps out-of-range centroids to the chart box", () => {
    const scene = renderScatter(
      projection({ centroids: { relevant: [1.8, -2.5], non_relevant: null } }),
    );
    expect(scene.centroids[0].x).toBe(1);
    expect(scene.centroids[0].y).toBe(-1);
  });
});

describe("docsInsideBrush", () => {
  const coords = projection().coords;

  it("selects everything when the brush covers the whole chart", () => {
    const all = docsInsideBrush(coords, { x0: -1, y0: -1, x1: 1, y1: 1 });
    expect(new Set(all)).toEqual(new Set(Object.keys(coords)));
  });

  it("zero-area brush selects only exact hits", () => {
    expect(docsInsideBrush(coords, { x0: 0.25, y0: 0.25, x1: 0.25, y1: 0.25 })).toEqual([]);
    // closed bounds: a point exactly on the rect corner is included
    expect(docsInsideBrush(coords, { x0: 0.5, y0: 0.5, x1: 0.5, y1: 0.5 })).toEqual(["S2"]);
  });

  it("handles inverted drag direction", () => {
    const sel = docsInsideBrush(coords, { x0: 0.6, y0: 0.6, x1: -0.1, y1: -0.1 });
    expect(new Set(sel)).toEqual(new Set(["S1", "S2"]));
  });

  it("picks exactly the leftmost glyphs for a left-edge brush", () => {
    const sel = docsInsideBrush(coords, { x0: -1, y0: -1, x1: 0.1, y1: 1 });
    expect(new Set(sel)).toEqual(new Set(["S1", "P1", "P2"]));
  });
});
