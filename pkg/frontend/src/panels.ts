// DOM painters for panels C (selected documents list), D (document detail),
// and E/F (word clouds). Pure-DOM code; content comes from AppState caches.

import { labelColor } from "./palette.js";
import type { AppState } from "./state.js";
import type { TermSummaryPayload } from "./types.js";

export function paintList(root: HTMLElement, state: AppState): void {
  root.innerHTML = "";
  for (const item of state.listItems()) {
    const row = document.createElement("div");
    row.className = "doc-row";
    row.dataset.doc = item.doc_id;

    const dot = document.createElement("span");
    dot.className = "label-dot";
    dot.style.background = labelColor(state.matrix?.labels[item.doc_id]);
    row.appendChild(dot);

    const title = document.createElement("a");
    title.textContent = item.doc_id;
    title.className = "doc-link";
    title.addEventListener("click", () => void state.focusDocument(item.doc_id));
    row.appendChild(title);

    const score = document.createElement("span");
    score.className = "doc-score";
    score.textContent = item.score.toFixed(3);
    row.appendChild(score);

    for (const label of ["relevant", "non_relevant", "unknown"] as const) {
      const btn = document.createElement("button");
      btn.textContent = { relevant: "+", non_relevant: "-", unknown: "?" }[label];
      btn.title = `classify ${label}`;
      btn.addEventListener("click", () => void state.classifyAction(item.doc_id, label));
      row.appendChild(btn);
    }
    root.appendChild(row);
  }
}

export function paintDetail(root: HTMLElement, state: AppState): void {
  root.innerHTML = "";
  const doc = state.detail;
  if (!doc) {
    root.textContent = "Select a document to see its details.";
    return;
  }
  const h = document.createElement("h3");
  h.textContent = doc.title;
  root.appendChild(h);

  const meta = document.createElement("p");
  meta.className = "doc-meta";
  meta.textContent = `${doc.type} · ${doc.year ?? "year unknown"} · ${doc.authors.join(", ")}`;
  root.appendChild(meta);

  // the prediction badge stays blank until the reviewer hovers the zone
  const zone = document.createElement("div");
  zone.className = "prediction-zone";
  zone.textContent = "prediction (hover to reveal)";
  const badge = document.createElement("span");
  badge.className = "prediction-badge";
  badge.style.display = "none";
  if (doc.prediction) {
    badge.textContent = `${doc.prediction.label} (${doc.prediction.confidence.toFixed(2)})`;
    badge.style.background = labelColor(doc.prediction.label);
  }
  zone.appendChild(badge);
  zone.addEventListener("pointerenter", () => {
    state.hoverPrediction(doc.id);
    badge.style.display = state.predictionVisible(doc.id) ? "inline-block" : "none";
  });
  zone.addEventListener("pointerleave", () => {
    state.hoverPrediction(null);
    badge.style.display = "none";
  });
  root.appendChild(zone);

  const abstract = document.createElement("p");
  abstract.className = "doc-abstract";
  if (doc.highlight) {
    abstract.append(...highlightedFragments(doc.highlight.text, doc.highlight.spans));
  } else {
    abstract.textContent = doc.abstract;
  }
  root.appendChild(abstract);
}

function highlightedFragments(
  text: string,
  spans: [number, number, "relevant" | "non_relevant"][],
): (Node | string)[] {
  const out: (Node | string)[] = [];
  let cursor = 0;
  for (const [start, end, polarity] of spans) {
    if (start > cursor) out.push(text.slice(cursor, start));
    const mark = document.createElement("mark");
    mark.textContent = text.slice(start, end);
    mark.style.background = labelColor(polarity);
    mark.className = `hl-${polarity}`;
    out.push(mark);
    cursor = end;
  }
  if (cursor < text.length) out.push(text.slice(cursor));
  return out;
}

export function paintCloud(
  root: HTMLElement,
  summary: TermSummaryPayload | null,
  state: AppState,
): void {
  root.innerHTML = "";
  if (!summary || summary.terms.length === 0) {
    root.textContent = "no terms";
    return;
  }
  for (const [term, , weight] of summary.terms) {
    const btn = document.createElement("button");
    btn.className = "cloud-term";
    btn.textContent = term;
    // darker background = more important term
    btn.style.background = `rgba(46, 125, 50, ${0.15 + 0.75 * weight})`;
    btn.title = `${term}: left-click boosts, right-click lowers`;
    btn.addEventListener("click", () => void state.boostAction(term, 1));
    btn.addEventListener("contextmenu", (evt) => {
      evt.preventDefault();
      void state.boostAction(term, -1);
    });
    root.appendChild(btn);
  }
}
