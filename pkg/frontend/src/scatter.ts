// SVG painter for the documents scatter (panel B) plus brush gestures.
// All geometry comes from the scene module; this file only touches the DOM.

import { renderScatter, type BrushRect } from "./scene.js";
import type { AppState } from "./state.js";

const VIEW = 520; // px, square chart
const PAD = 16;

function toPx(v: number): number {
  return PAD + ((v + 1) / 2) * (VIEW - 2 * PAD);
}

function fromPx(px: number): number {
  return ((px - PAD) / (VIEW - 2 * PAD)) * 2 - 1;
}

function trianglePoints(x: number, y: number, up: boolean, size: number): string {
  const h = up ? -size : size;
  return `${x},${y + h} ${x - size},${y - h * 0.6} ${x + size},${y - h * 0.6}`;
}

export function paintScatter(svg: SVGSVGElement, state: AppState): void {
  svg.setAttribute("viewBox", `0 0 ${VIEW} ${VIEW}`);
  svg.innerHTML = "";
  if (!state.projection) return;
  const scene = renderScatter(state.projection);
  const ns = "http://www.w3.org/2000/svg";

  for (const glyph of scene.glyphs) {
    const px = toPx(glyph.x);
    const py = toPx(-glyph.y); // svg y grows downward
    let el: SVGElement;
    if (glyph.shape === "square") {
      el = document.createElementNS(ns, "rect");
      el.setAttribute("x", String(px - glyph.size / 2));
      el.setAttribute("y", String(py - glyph.size / 2));
      el.setAttribute("width", String(glyph.size));
      el.setAttribute("height", String(glyph.size));
    } else {
      el = document.createElementNS(ns, "circle");
      el.setAttribute("cx", String(px));
      el.setAttribute("cy", String(py));
      el.setAttribute("r", String(glyph.size / 2));
    }
    el.setAttribute("fill", glyph.color);
    el.setAttribute("data-doc", glyph.docId);
    el.setAttribute("class", "glyph");
    el.addEventListener("click", () => void state.focusDocument(glyph.docId));
    svg.appendChild(el);
  }

  for (const mark of scene.centroids) {
    const el = document.createElementNS(ns, "polygon");
    el.setAttribute(
      "points",
      trianglePoints(toPx(mark.x), toPx(-mark.y), mark.shape === "triangle-up", 9),
    );
    el.setAttribute("fill", "none");
    el.setAttribute("stroke", mark.color);
    el.setAttribute("stroke-width", "3");
    el.setAttribute("class", "centroid");
    svg.appendChild(el);
  }

  if (state.view.brush) {
    const r = state.view.brush;
    const el = document.createElementNS(ns, "rect");
    const x0 = toPx(Math.min(r.x0, r.x1));
    const y0 = toPx(-Math.max(r.y0, r.y1));
    el.setAttribute("x", String(x0));
    el.setAttribute("y", String(y0));
    el.setAttribute("width", String(toPx(Math.max(r.x0, r.x1)) - x0));
    el.setAttribute("height", String(toPx(-Math.min(r.y0, r.y1)) - y0));
    el.setAttribute("class", "brush");
    svg.appendChild(el);
  }
}

/** Wire pointer events: drag draws a brush, click on empty space clears it. */
export function installBrush(svg: SVGSVGElement, state: AppState): void {
  let start: { x: number; y: number } | null = null;

  const chartPoint = (evt: PointerEvent) => {
    const rect = svg.getBoundingClientRect();
    const sx = ((evt.clientX - rect.left) / rect.width) * VIEW;
    const sy = ((evt.clientY - rect.top) / rect.height) * VIEW;
    return { x: fromPx(sx), y: -fromPx(sy) };
  };

  svg.addEventListener("pointerdown", (evt) => {
    if ((evt.target as Element).classList.contains("glyph")) return;
    start = chartPoint(evt);
  });
  svg.addEventListener("pointermove", (evt) => {
    if (!start) return;
    const here = chartPoint(evt);
    const rect: BrushRect = { x0: start.x, y0: start.y, x1: here.x, y1: here.y };
    void state.onBrush(rect);
  });
  svg.addEventListener("pointerup", (evt) => {
    if (!start) return;
    const here = chartPoint(evt);
    if (here.x === start.x && here.y === start.y) {
      void state.onBrush(null); // click clears the brush
    }
    start = null;
  });
}
