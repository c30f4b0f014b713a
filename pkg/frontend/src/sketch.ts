/** Pipeline-axis sketch tool: click to add vertices, double-click to
 * finish, escape to cancel. Clicks near existing geometry lock onto the
 * server-resolved snap point, so sketched vertices can be exact.
 */

import type { SnapHit } from "./types.js";

export type SnapQuery = (x: number, y: number, r: number) => Promise<SnapHit | null>;

export interface SketchResult {
  axis: [number, number][];
}

export class SketchTool {
  private vertices: [number, number][] = [];
  private active = false;

  constructor(private readonly querySnap: SnapQuery) {}

  get isActive(): boolean {
    return this.active;
  }

  get points(): readonly [number, number][] {
    return this.vertices;
  }

  start(): void {
    this.active = true;
    this.vertices = [];
  }

  /** Append a vertex; returns the (possibly snapped) coordinate used.
   * The snap radius is per-click because it tracks the current zoom. */
  async click(x: number, y: number, snapRadius: number): Promise<[number, number]> {
    if (!this.active) throw new Error("sketch tool is not active");
    let vertex: [number, number] = [x, y];
    try {
      const hit = await this.querySnap(x, y, snapRadius);
      if (hit) vertex = [hit.point[0], hit.point[1]];
    } catch {
      // snapping is best-effort; a failed lookup keeps the raw click
    }
    this.vertices.push(vertex);
    return vertex;
  }

  get finishable(): boolean {
    return this.vertices.length >= 2;
  }

  /** Double-click handler; null while fewer than 2 vertices exist. */
  finish(): SketchResult | null {
    if (!this.finishable) return null;
    const axis = this.vertices;
    this.vertices = [];
    this.active = false;
    return { axis };
  }

  cancel(): void {
    this.vertices = [];
    this.active = false;
  }
}
