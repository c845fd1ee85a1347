// One palette for every label-colored surface: scatter glyphs, list badges,
// and abstract highlight backgrounds must match exactly.

import type { Label } from "./types.js";

export const LABEL_COLORS: Record<Label, string> = {
  relevant: "#2e7d32",
  non_relevant: "#c62828",
  unknown: "#8d8d8d",
};

export const CENTROID_COLORS = {
  relevant: LABEL_COLORS.relevant,
  non_relevant: LABEL_COLORS.non_relevant,
};

export function labelColor(label: Label | undefined): string {
  return LABEL_COLORS[label ?? "unknown"];
}
