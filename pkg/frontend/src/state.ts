/** UI state shared across panels. */

import type { ModuleSummary, Rect } from "./types.js";

export type Tool = "select" | "sketch_axis";

export interface UiState {
  selectedModule: number | null;
  tool: Tool;
  formDirty: boolean;
  viewport: Rect;
  selectedPrototype: string | null;
}

export function initialState(): UiState {
  return {
    selectedModule: null,
    tool: "select",
    formDirty: false,
    viewport: { x0: 0, y0: 0, x1: 1000, y1: 1000 },
    selectedPrototype: null,
  };
}

/** Selection only ever points at a module from the last-fetched list. */
export function selectModule(state: UiState, id: number | null,
  known: ModuleSummary[]): void {
  if (id !== null && !known.some((m) => m.id === id)) {
    state.selectedModule = null;
    return;
  }
  state.selectedModule = id;
  state.formDirty = false;
}

export function duplicateBadgeVisible(duplicates: string[]): boolean {
  return duplicates.length > 0;
}
