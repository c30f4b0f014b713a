/** Viewport math and the latest-wins SVG loader.
 *
 * The server renders exactly what the viewport rectangle covers, so pan
 * and zoom are pure rectangle updates followed by a refetch; stale
 * responses are dropped when a newer request has been issued.
 */

import type { Rect } from "./types.js";

export function rectWidth(r: Rect): number {
  return r.x1 - r.x0;
}

export function rectHeight(r: Rect): number {
  return r.y1 - r.y0;
}

export function panned(r: Rect, dx: number, dy: number): Rect {
  return { x0: r.x0 + dx, y0: r.y0 + dy, x1: r.x1 + dx, y1: r.y1 + dy };
}

/** Scale about an anchor point in drawing coordinates; factor > 1 zooms out. */
export function zoomed(r: Rect, factor: number, ax: number, ay: number): Rect {
  return {
    x0: ax + (r.x0 - ax) * factor,
    y0: ay + (r.y0 - ay) * factor,
    x1: ax + (r.x1 - ax) * factor,
    y1: ay + (r.y1 - ay) * factor,
  };
}

/** Screen pixel (y down) to drawing coordinates (y up) within the viewport. */
export function screenToDrawing(r: Rect, px: number, py: number,
  width: number, height: number): [number, number] {
  return [
    r.x0 + (px / width) * rectWidth(r),
    r.y1 - (py / height) * rectHeight(r),
  ];
}

/** Pixel delta to drawing delta for panning (drag right = world moves left). */
export function dragToPan(r: Rect, dpx: number, dpy: number,
  width: number, height: number): [number, number] {
  return [
    (-dpx / width) * rectWidth(r),
    (dpy / height) * rectHeight(r),
  ];
}

export function rectFromBBox(b: [number, number, number, number],
  margin = 0): Rect {
  return { x0: b[0] - margin, y0: b[1] - margin, x1: b[2] + margin, y1: b[3] + margin };
}

export class ViewportLoader {
  private sequence = 0;

  constructor(
    private readonly fetchSvg: (rect: Rect | undefined) => Promise<string>,
    private readonly show: (svg: string) => void,
    private readonly onFailure: (err: unknown) => void = () => undefined,
  ) {}

  /** Fetch and display; a response that arrives after a newer request is dropped. */
  async load(rect: Rect | undefined): Promise<boolean> {
    const ticket = ++this.sequence;
    try {
      const svg = await this.fetchSvg(rect);
      if (ticket !== this.sequence) return false;
      this.show(svg);
      return true;
    } catch (err) {
      if (ticket === this.sequence) this.onFailure(err);
      return false;
    }
  }
}
