/** Shapes exchanged with the drawing server's JSON API. */

export interface SchemaField {
  name: string;
  type: string;
  required: boolean;
  default?: unknown;
  minimum?: number;
  exclusive_minimum?: number;
  maximum?: number;
  unit?: string;
  choices?: string[];
  min_items?: number;
}

export interface KindSchema {
  kind: string;
  fields: SchemaField[];
}

export type SchemaMap = Record<string, KindSchema>;

export interface Placement {
  tx: number;
  ty: number;
  rot: number;
  sx: number;
  sy: number;
}

export interface ModuleSummary {
  id: number;
  kind: string;
  position: string;
  bbox: [number, number, number, number] | null;
}

export interface ModuleDetail extends ModuleSummary {
  layer: number;
  placement: Placement;
  params: Record<string, unknown>;
}

export interface SnapHit {
  point: [number, number];
  kind: string;
  distance: number;
}

export interface SpecRow {
  position: string;
  name: string;
  unit: string;
  qty: number;
}

export interface PrototypeEntry {
  name: string;
  kind: string;
}

/** Viewport rectangle in drawing coordinates (y up). */
export interface Rect {
  x0: number;
  y0: number;
  x1: number;
  y1: number;
}
