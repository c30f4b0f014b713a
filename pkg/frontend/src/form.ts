/** Schema-driven parameter forms.
 *
 * The field list is generated from the server's schema, never hand-coded,
 * so the form's field set always equals the schema's. Client-side checks
 * mirror the schema bounds as a convenience; the server stays the source
 * of validation truth and its 400 messages are mapped back onto fields.
 */

import type { KindSchema, SchemaField } from "./types.js";

export interface FieldState {
  field: SchemaField;
  /** Raw editor text; structured fields hold JSON. */
  raw: string;
  touched: boolean;
  error: string | null;
}

export interface FormModel {
  kind: string;
  fields: FieldState[];
}

const SIMPLE_TYPES = new Set(["number", "integer", "string", "boolean", "enum", "point"]);

export function isJsonField(field: SchemaField): boolean {
  return !SIMPLE_TYPES.has(field.type);
}

function rawFromValue(field: SchemaField, value: unknown): string {
  if (value === undefined || value === null) return "";
  switch (field.type) {
    case "number":
    case "integer":
    case "string":
    case "enum":
      return String(value);
    case "boolean":
      return value ? "true" : "false";
    case "point":
      return (value as number[]).join(",");
    default:
      return JSON.stringify(value);
  }
}

export function buildForm(schema: KindSchema,
  initial?: Record<string, unknown>): FormModel {
  const fields = schema.fields.map((field) => {
    const value = initial && field.name in initial
      ? initial[field.name]
      : field.default;
    return { field, raw: rawFromValue(field, value), touched: false, error: null };
  });
  return { kind: schema.kind, fields };
}

export function fieldNames(model: FormModel): string[] {
  return model.fields.map((f) => f.field.name);
}

export function setFieldRaw(model: FormModel, name: string, raw: string): void {
  const state = model.fields.find((f) => f.field.name === name);
  if (!state) throw new Error(`no field named ${name}`);
  state.raw = raw;
  state.touched = true;
  state.error = null;
}

function checkBounds(field: SchemaField, value: number): string | null {
  if (field.minimum !== undefined && value < field.minimum) {
    return `must be >= ${field.minimum}`;
  }
  if (field.exclusive_minimum !== undefined && value <= field.exclusive_minimum) {
    return `must be > ${field.exclusive_minimum}`;
  }
  if (field.maximum !== undefined && value > field.maximum) {
    return `must be <= ${field.maximum}`;
  }
  return null;
}

export interface ParseResult {
  value?: unknown;
  error?: string;
  /** true when the field should simply be omitted from the record */
  omit?: boolean;
}

export function parseField(field: SchemaField, raw: string): ParseResult {
  const text = raw.trim();
  if (text === "") {
    if (field.required) return { error: "required" };
    return { omit: true };
  }
  switch (field.type) {
    case "number":
    case "integer": {
      const value = Number(text);
      if (!Number.isFinite(value)) return { error: "expected a number" };
      if (field.type === "integer" && !Number.isInteger(value)) {
        return { error: "expected an integer" };
      }
      const bound = checkBounds(field, value);
      return bound ? { error: bound } : { value };
    }
    case "boolean":
      if (text !== "true" && text !== "false") return { error: "expected true/false" };
      return { value: text === "true" };
    case "string":
      return { value: raw };
    case "enum":
      if (!field.choices?.includes(text)) {
        return { error: `expected one of ${field.choices?.join(", ")}` };
      }
      return { value: text };
    case "point": {
      const parts = text.split(",").map((p) => Number(p.trim()));
      if (parts.length !== 2 || parts.some((v) => !Number.isFinite(v))) {
        return { error: "expected x,y" };
      }
      return { value: parts };
    }
    default: {
      let value: unknown;
      try {
        value = JSON.parse(text);
      } catch {
        return { error: "expected JSON" };
      }
      if (field.min_items !== undefined && Array.isArray(value)
        && value.length < field.min_items) {
        return { error: `needs at least ${field.min_items} items` };
      }
      return { value };
    }
  }
}

/** Validate every field; returns the parameter record or marks errors. */
export function formToParams(model: FormModel): Record<string, unknown> | null {
  const params: Record<string, unknown> = {};
  let ok = true;
  for (const state of model.fields) {
    const result = parseField(state.field, state.raw);
    if (result.error) {
      state.error = result.error;
      ok = false;
    } else if (!result.omit) {
      params[state.field.name] = result.value;
    }
  }
  return ok ? params : null;
}

/** Map a server validation message ("field: problem") onto its field. */
export function applyServerError(model: FormModel, message: string): boolean {
  for (const state of model.fields) {
    const name = state.field.name;
    if (message === name || message.startsWith(`${name}:`)
      || message.startsWith(`${name}[`) || message.startsWith(`${name}.`)) {
      state.error = message;
      return true;
    }
  }
  return false;
}
