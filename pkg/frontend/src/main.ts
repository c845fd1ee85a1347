// Entry point: wires the six panels to the shared state.

import { ApiClient } from "./api.js";
import { paintCloud, paintDetail, paintList } from "./panels.js";
import { installBrush, paintScatter } from "./scatter.js";
import { AppState } from "./state.js";
import type { Method, WordcloudMethod } from "./types.js";

const api = new ApiClient("");
const state = new AppState(api);

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

const matrixSelect = el<HTMLSelectElement>("matrix-select");
const methodSelect = el<HTMLSelectElement>("method-select");
const cloudSelect = el<HTMLSelectElement>("cloud-method-select");
const seedInput = el<HTMLInputElement>("seed-input");
const createBtn = el<HTMLButtonElement>("create-matrix");
const svg = el<HTMLElement>("scatter") as unknown as SVGSVGElement;
const errorBar = el<HTMLElement>("error-bar");

function repaint(): void {
  paintScatter(svg, state);
  paintList(el("doc-list"), state);
  paintDetail(el("doc-detail"), state);
  paintCloud(el("cloud-relevant"), state.relevantCloud, state);
  paintCloud(el("cloud-selection"), state.selectionCloud, state);
  errorBar.textContent = state.lastError ?? "";
  errorBar.style.display = state.lastError ? "block" : "none";
}

state.onChange(repaint);

async function refreshMatrixList(): Promise<void> {
  const { items } = await api.listMatrices();
  matrixSelect.innerHTML = "";
  for (const item of items) {
    const opt = document.createElement("option");
    opt.value = item.matrix_id;
    opt.textContent = `${item.matrix_id} (seed ${item.seed_id}, ${item.n_rows}x${item.n_cols})`;
    matrixSelect.appendChild(opt);
  }
  if (items.length && !state.view.activeMatrix) {
    await state.openMatrix(items[0].matrix_id);
  }
}

matrixSelect.addEventListener("change", () => void state.openMatrix(matrixSelect.value));
methodSelect.addEventListener("change", () =>
  void state.setMethod(methodSelect.value as Method));
cloudSelect.addEventListener("change", () =>
  void state.setWordcloudMethod(cloudSelect.value as WordcloudMethod));
createBtn.addEventListener("click", async () => {
  try {
    const created = await api.createMatrix(seedInput.value.trim());
    await refreshMatrixList();
    await state.openMatrix(created.matrix_id);
  } catch (err) {
    state.lastError = err instanceof Error ? err.message : String(err);
    repaint();
  }
});

installBrush(svg, state);
void refreshMatrixList();
