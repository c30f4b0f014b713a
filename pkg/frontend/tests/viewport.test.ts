import { describe, expect, it } from "vitest";

import { ViewportLoader, dragToPan, panned, rectFromBBox, screenToDrawing,
  zoomed } from "../src/viewport.js";
import { duplicateBadgeVisible, initialState, selectModule } from "../src/state.js";
import type { ModuleSummary, Rect } from "../src/types.js";

const rect: Rect = { x0: 0, y0: 0, x1: 100, y1: 50 };

describe("viewport math", () => {
  it("pans by drawing deltas", () => {
    expect(panned(rect, 100, 0)).toEqual({ x0: 100, y0: 0, x1: 200, y1: 50 });
  });

  it("zooms about an anchor point", () => {
    const out = zoomed(rect, 2, 50, 25);
    expect(out).toEqual({ x0: -50, y0: -25, x1: 150, y1: 75 });
    const back = zoomed(out, 0.5, 50, 25);
    expect(back).toEqual(rect);
  });

  it("maps screen pixels to drawing coordinates with the y flip", () => {
    // top-left pixel is the drawing's top-left corner (max y)
    expect(screenToDrawing(rect, 0, 0, 200, 100)).toEqual([0, 50]);
    expect(screenToDrawing(rect, 200, 100, 200, 100)).toEqual([100, 0]);
    expect(screenToDrawing(rect, 100, 50, 200, 100)).toEqual([50, 25]);
  });

  it("turns a rightward drag into a leftward world pan", () => {
    const [dx, dy] = dragToPan(rect, 20, 0, 200, 100);
    expect(dx).toBe(-10);
    expect(dy).toBe(0);
    const [, dy2] = dragToPan(rect, 0, 10, 200, 100);
    expect(dy2).toBe(5); // dragging down moves the view up in drawing space
  });

  it("builds a padded rect from a bbox", () => {
    expect(rectFromBBox([0, 0, 10, 20], 5)).toEqual(
      { x0: -5, y0: -5, x1: 15, y1: 25 });
  });
});

describe("ViewportLoader", () => {
  it("drops responses that arrive after a newer request", async () => {
    const shown: string[] = [];
    let release1: (svg: string) => void = () => undefined;
    const loader = new ViewportLoader(
      (r) => r!.x0 === 1
        ? new Promise((resolve) => { release1 = resolve; })
        : Promise.resolve("second"),
      (svg) => shown.push(svg),
    );
    const first = loader.load({ x0: 1, y0: 0, x1: 2, y1: 1 });
    const second = loader.load({ x0: 2, y0: 0, x1: 3, y1: 1 });
    expect(await second).toBe(true);
    release1("first");
    expect(await first).toBe(false); // stale, dropped
    expect(shown).toEqual(["second"]);
  });

  it("reports failures only for the latest request", async () => {
    let failures = 0;
    const loader = new ViewportLoader(
      () => Promise.reject(new Error("offline")),
      () => undefined,
      () => { failures += 1; },
    );
    expect(await loader.load(rect)).toBe(false);
    expect(failures).toBe(1);
  });
});

describe("ui state", () => {
  it("selection must come from the known module list", () => {
    const known: ModuleSummary[] = [
      { id: 3, kind: "pipeline", position: "", bbox: null }];
    const state = initialState();
    selectModule(state, 3, known);
    expect(state.selectedModule).toBe(3);
    selectModule(state, 99, known);
    expect(state.selectedModule).toBeNull();
  });

  it("duplicate badge shows iff the duplicates list is nonempty", () => {
    expect(duplicateBadgeVisible([])).toBe(false);
    expect(duplicateBadgeVisible(["1"])).toBe(true);
  });
});
