/** Browser app: wires the API client, viewport, forms and panels together.
 *
 * All geometry math and validation truth lives on the server; this layer
 * only routes clicks and JSON. Every visible geometry change corresponds
 * to exactly one successful mutating request.
 */

import { ApiClient, ApiError } from "./api.js";
import { applyServerError, buildForm, formToParams, isJsonField,
  setFieldRaw, type FormModel } from "./form.js";
import { SketchTool } from "./sketch.js";
import { duplicateBadgeVisible, initialState, selectModule } from "./state.js";
import type { ModuleSummary, SchemaMap } from "./types.js";
import { ViewportLoader, dragToPan, panned, rectFromBBox, screenToDrawing,
  zoomed } from "./viewport.js";

const SNAP_RADIUS_PX = 12;

const app = document.getElementById("app");
if (!app) throw new Error("#app container missing");

app.innerHTML = `
  <div class="topbar">
    <span class="brand">modulecad</span>
    <button id="tool-select" class="tool active">Select</button>
    <button id="tool-sketch" class="tool">Sketch axis</button>
    <select id="new-kind"></select>
    <button id="new-module">New module…</button>
    <span id="banner" class="banner hidden">
      Server unreachable. <button id="retry">Retry</button>
    </span>
    <span id="status"></span>
  </div>
  <div class="columns">
    <div class="side">
      <h3>Modules</h3>
      <ul id="module-list"></ul>
      <h3>Prototypes <button id="proto-refresh" title="reload">⟳</button></h3>
      <ul id="proto-list"></ul>
      <div id="proto-preview"></div>
      <h3>Spec <span id="dup-badge" class="badge hidden">duplicates!</span></h3>
      <table id="spec-table"></table>
    </div>
    <div id="view" class="view"></div>
    <div class="side">
      <h3 id="form-title">Parameters</h3>
      <form id="param-form"></form>
    </div>
  </div>
`;

const viewEl = document.getElementById("view") as HTMLDivElement;
const bannerEl = document.getElementById("banner") as HTMLSpanElement;
const statusEl = document.getElementById("status") as HTMLSpanElement;
const moduleListEl = document.getElementById("module-list") as HTMLUListElement;
const protoListEl = document.getElementById("proto-list") as HTMLUListElement;
const protoPreviewEl = document.getElementById("proto-preview") as HTMLDivElement;
const specTableEl = document.getElementById("spec-table") as HTMLTableElement;
const dupBadgeEl = document.getElementById("dup-badge") as HTMLSpanElement;
const formEl = document.getElementById("param-form") as HTMLFormElement;
const formTitleEl = document.getElementById("form-title") as HTMLHeadingElement;
const kindSelectEl = document.getElementById("new-kind") as HTMLSelectElement;

const api = new ApiClient("");
const state = initialState();
let schemas: SchemaMap = {};
let modules: ModuleSummary[] = [];
let form: FormModel | null = null;
let formModuleId: number | null = null; // null = creating a new module
let placingPrototype: string | null = null;

const loader = new ViewportLoader(
  (rect) => api.render(rect),
  (svg) => {
    viewEl.innerHTML = svg;
    const svgEl = viewEl.querySelector("svg");
    if (svgEl) {
      svgEl.setAttribute("width", "100%");
      svgEl.setAttribute("height", "100%");
      svgEl.setAttribute("preserveAspectRatio", "xMidYMid meet");
    }
    bannerEl.classList.add("hidden");
  },
  () => bannerEl.classList.remove("hidden"),
);

const sketch = new SketchTool((x, y, r) => api.snap(x, y, r));

function refreshView(): Promise<boolean> {
  return loader.load(state.viewport);
}

function drawingPointFromEvent(ev: MouseEvent): [number, number] {
  const bounds = viewEl.getBoundingClientRect();
  return screenToDrawing(state.viewport, ev.clientX - bounds.left,
    ev.clientY - bounds.top, bounds.width, bounds.height);
}

function snapRadiusDrawing(): number {
  const bounds = viewEl.getBoundingClientRect();
  return (SNAP_RADIUS_PX / Math.max(1, bounds.width))
    * (state.viewport.x1 - state.viewport.x0);
}

// --- module list -----------------------------------------------------------

async function refreshModules(): Promise<void> {
  modules = await api.listModules();
  moduleListEl.innerHTML = "";
  for (const m of modules) {
    const item = document.createElement("li");
    item.textContent = `#${m.id} ${m.kind}${m.position ? ` [${m.position}]` : ""}`;
    if (m.id === state.selectedModule) item.classList.add("selected");
    item.addEventListener("click", () => {
      selectModule(state, m.id, modules);
      void openEditForm(m.id);
      void refreshModules();
    });
    moduleListEl.appendChild(item);
  }
}

// --- parameter form -----------------------------------------------------------

function renderForm(): void {
  formEl.innerHTML = "";
  if (!form) return;
  for (const fieldState of form.fields) {
    const row = document.createElement("div");
    row.className = "field";
    const label = document.createElement("label");
    const unit = fieldState.field.unit ? ` (${fieldState.field.unit})` : "";
    label.textContent = `${fieldState.field.name}${unit}`;
    row.appendChild(label);

    let input: HTMLInputElement | HTMLSelectElement | HTMLTextAreaElement;
    const field = fieldState.field;
    if (field.type === "enum") {
      input = document.createElement("select");
      for (const choice of field.choices ?? []) {
        const option = document.createElement("option");
        option.value = choice;
        option.textContent = choice;
        input.appendChild(option);
      }
      input.value = fieldState.raw;
    } else if (field.type === "boolean") {
      input = document.createElement("select");
      for (const choice of ["true", "false"]) {
        const option = document.createElement("option");
        option.value = choice;
        option.textContent = choice;
        input.appendChild(option);
      }
      input.value = fieldState.raw || "false";
    } else if (isJsonField(field)) {
      input = document.createElement("textarea");
      input.value = fieldState.raw;
    } else {
      input = document.createElement("input");
      input.value = fieldState.raw;
    }
    input.setAttribute("name", field.name);
    input.addEventListener("input", () => {
      if (form) setFieldRaw(form, field.name, input.value);
      state.formDirty = true;
      renderFieldError(row, null);
    });
    row.appendChild(input);

    const errorEl = document.createElement("div");
    errorEl.className = "error";
    row.appendChild(errorEl);
    renderFieldError(row, fieldState.error);
    formEl.appendChild(row);
  }
  const submit = document.createElement("button");
  submit.type = "submit";
  submit.textContent = formModuleId === null ? "Create" : "Apply";
  formEl.appendChild(submit);
}

function renderFieldError(row: HTMLDivElement, message: string | null): void {
  const errorEl = row.querySelector(".error") as HTMLDivElement;
  errorEl.textContent = message ?? "";
  row.classList.toggle("invalid", message !== null);
}

async function openEditForm(id: number): Promise<void> {
  const detail = await api.getModule(id);
  form = buildForm(schemas[detail.kind], detail.params);
  formModuleId = id;
  formTitleEl.textContent = `Parameters — #${id} ${detail.kind}`;
  renderForm();
}

function openCreateForm(kind: string, initial?: Record<string, unknown>): void {
  form = buildForm(schemas[kind], initial);
  formModuleId = null;
  formTitleEl.textContent = `New ${kind}`;
  renderForm();
}

formEl.addEventListener("submit", (ev) => {
  ev.preventDefault();
  void submitForm();
});

async function submitForm(): Promise<void> {
  if (!form) return;
  const params = formToParams(form);
  if (params === null) {
    renderForm(); // blocked client-side: show field errors, no request
    return;
  }
  try {
    if (formModuleId === null) {
      const created = await api.createModule(form.kind, params);
      selectModule(state, created.id, [{ id: created.id } as ModuleSummary]);
      formModuleId = created.id;
    } else {
      await api.setParams(formModuleId, params);
    }
    state.formDirty = false;
    statusEl.textContent = "saved";
    await Promise.all([refreshView(), refreshModules(), refreshSpec()]);
  } catch (err) {
    if (err instanceof ApiError && form) {
      if (!applyServerError(form, err.message)) statusEl.textContent = err.message;
      renderForm(); // offending field highlighted; the view is left unchanged
    } else {
      bannerEl.classList.remove("hidden");
    }
  }
}

// --- prototypes ------------------------------------------------------------------

async function refreshPrototypes(): Promise<void> {
  const entries = await api.listPrototypes();
  protoListEl.innerHTML = "";
  for (const entry of entries) {
    const item = document.createElement("li");
    item.textContent = `${entry.name} (${entry.kind})`;
    const place = document.createElement("button");
    place.textContent = "Place";
    place.addEventListener("click", (ev) => {
      ev.stopPropagation();
      placingPrototype = entry.name;
      statusEl.textContent = `click in the view to place "${entry.name}"`;
    });
    item.appendChild(place);
    item.addEventListener("click", async () => {
      state.selectedPrototype = entry.name;
      try {
        protoPreviewEl.innerHTML = await api.previewPrototype(entry.name);
        const svgEl = protoPreviewEl.querySelector("svg");
        svgEl?.setAttribute("width", "100%");
        svgEl?.setAttribute("height", "120");
      } catch {
        protoPreviewEl.textContent = `preview of "${entry.name}" failed`;
      }
    });
    protoListEl.appendChild(item);
  }
}

// --- spec panel ----------------------------------------------------------------

async function refreshSpec(): Promise<void> {
  const [rows, duplicates] = await Promise.all([api.getSpec(), api.getDuplicates()]);
  specTableEl.innerHTML = "<tr><th>pos</th><th>name</th><th>unit</th><th>qty</th></tr>";
  for (const row of rows) {
    const tr = document.createElement("tr");
    for (const cell of [row.position, row.name, row.unit, String(row.qty)]) {
      const td = document.createElement("td");
      td.textContent = cell;
      tr.appendChild(td);
    }
    if (duplicates.includes(row.position)) tr.classList.add("dup");
    specTableEl.appendChild(tr);
  }
  dupBadgeEl.classList.toggle("hidden", !duplicateBadgeVisible(duplicates));
}

// --- viewport interactions ----------------------------------------------------

let dragging: { px: number; py: number } | null = null;
let dragMoved = false;

viewEl.addEventListener("mousedown", (ev) => {
  if (state.tool === "select" && placingPrototype === null) {
    dragging = { px: ev.clientX, py: ev.clientY };
    dragMoved = false;
  }
});

window.addEventListener("mousemove", (ev) => {
  if (!dragging) return;
  const bounds = viewEl.getBoundingClientRect();
  const [dx, dy] = dragToPan(state.viewport, ev.clientX - dragging.px,
    ev.clientY - dragging.py, bounds.width, bounds.height);
  if (Math.abs(ev.clientX - dragging.px) + Math.abs(ev.clientY - dragging.py) > 2) {
    dragMoved = true;
  }
  state.viewport = panned(state.viewport, dx, dy);
  dragging = { px: ev.clientX, py: ev.clientY };
  void refreshView();
});

window.addEventListener("mouseup", () => {
  dragging = null;
});

viewEl.addEventListener("wheel", (ev) => {
  ev.preventDefault();
  const [ax, ay] = drawingPointFromEvent(ev);
  state.viewport = zoomed(state.viewport, ev.deltaY > 0 ? 1.25 : 0.8, ax, ay);
  void refreshView();
}, { passive: false });

viewEl.addEventListener("click", async (ev) => {
  const [x, y] = drawingPointFromEvent(ev);
  if (placingPrototype !== null) {
    const name = placingPrototype;
    placingPrototype = null;
    try {
      await api.instantiatePrototype(name, [x, y]);
      statusEl.textContent = `placed ${name}`;
      await Promise.all([refreshView(), refreshModules(), refreshSpec()]);
    } catch (err) {
      statusEl.textContent = err instanceof ApiError ? err.message : "placement failed";
    }
    return;
  }
  if (state.tool === "sketch_axis" && sketch.isActive) {
    const vertex = await sketch.click(x, y, snapRadiusDrawing());
    statusEl.textContent = `axis: ${sketch.points.length} points `
      + `(last ${vertex[0].toFixed(1)}, ${vertex[1].toFixed(1)}); double-click to finish`;
    return;
  }
  if (state.tool === "select" && !dragMoved) {
    statusEl.textContent = `(${x.toFixed(1)}, ${y.toFixed(1)})`;
  }
});

viewEl.addEventListener("dblclick", () => {
  if (state.tool !== "sketch_axis") return;
  const result = sketch.finish();
  setTool("select");
  if (!result) return;
  openCreateForm("pipeline", { axis: result.axis });
  statusEl.textContent = "axis sketched; fill in the remaining parameters";
});

window.addEventListener("keydown", (ev) => {
  if (ev.key === "Escape") {
    sketch.cancel();
    placingPrototype = null;
    if (state.tool === "sketch_axis") setTool("select");
    statusEl.textContent = "";
  }
});

// --- toolbar ------------------------------------------------------------------

function setTool(tool: "select" | "sketch_axis"): void {
  state.tool = tool;
  document.getElementById("tool-select")?.classList.toggle("active", tool === "select");
  document.getElementById("tool-sketch")?.classList.toggle("active", tool === "sketch_axis");
  if (tool === "sketch_axis") {
    sketch.start();
    statusEl.textContent = "click to add axis points; double-click to finish; esc cancels";
  }
}

document.getElementById("tool-select")?.addEventListener("click", () => setTool("select"));
document.getElementById("tool-sketch")?.addEventListener("click", () => setTool("sketch_axis"));
document.getElementById("new-module")?.addEventListener("click", () => {
  openCreateForm(kindSelectEl.value);
});
document.getElementById("proto-refresh")?.addEventListener("click", () => {
  void refreshPrototypes();
});
document.getElementById("retry")?.addEventListener("click", () => {
  void bootstrap();
});

// --- startup -----------------------------------------------------------------------

async function bootstrap(): Promise<void> {
  try {
    schemas = await api.getSchemas();
    kindSelectEl.innerHTML = "";
    for (const kind of Object.keys(schemas)) {
      const option = document.createElement("option");
      option.value = kind;
      option.textContent = kind;
      kindSelectEl.appendChild(option);
    }
    await refreshModules();
    // initial view: full drawing extents
    const boxes = modules.map((m) => m.bbox).filter((b): b is NonNullable<typeof b> => !!b);
    if (boxes.length > 0) {
      const union: [number, number, number, number] = [
        Math.min(...boxes.map((b) => b[0])),
        Math.min(...boxes.map((b) => b[1])),
        Math.max(...boxes.map((b) => b[2])),
        Math.max(...boxes.map((b) => b[3])),
      ];
      const margin = 0.05 * Math.max(union[2] - union[0], union[3] - union[1], 100);
      state.viewport = rectFromBBox(union, margin);
    }
    await Promise.all([refreshView(), refreshPrototypes(), refreshSpec()]);
    bannerEl.classList.add("hidden");
  } catch {
    bannerEl.classList.remove("hidden");
  }
}

void bootstrap();
