// Browser wiring: every render follows a confirmed service response
// (optimistic updates are deliberately off), clicking a highlighted
// vertex performs its one legal mutation, ambiguous vertices get a
// two-option popover, rejected moves show the backend code on the vertex.

import { ServiceError, SessionClient } from "./api.js";
import { renderDot, renderSvg } from "./render.js";
import { buildViewModel, type ViewModel } from "./viewmodel.js";
import type { Direction, EnumerationDoc } from "./types.js";

const client = new SessionClient("");

let enumeration: EnumerationDoc | null = null;
let current: ViewModel | null = null;

async function refresh(): Promise<void> {
  const [session, layout] = await Promise.all([client.fetchState(), client.fetchLayout()]);
  try {
    enumeration = await client.fetchEnumeration();
  } catch {
    enumeration = null; // enumeration is optional eye candy
  }
  current = buildViewModel(session, layout, enumeration);
  render(current);
}

function render(vm: ViewModel): void {
  const stage = document.getElementById("stage")!;
  stage.innerHTML = renderSvg(vm);
  stage.querySelectorAll<SVGGElement>("g.movable").forEach((group) => {
    group.style.cursor = "pointer";
    group.addEventListener("click", () => onVertexClick(group.dataset.vertex!));
  });

  const relations = document.getElementById("relations")!;
  relations.innerHTML =
    "<h3>dual relations</h3><ul>" +
    vm.dualRelations.map((r) => `<li><code>${r}</code></li>`).join("") +
    "</ul><h3>slice relations</h3><ul>" +
    vm.sliceRelations.map((r) => `<li><code>${r}</code></li>`).join("") +
    "</ul>";

  const history = document.getElementById("history")!;
  history.innerHTML =
    "<h3>history</h3><ol>" +
    vm.history.map((h) => `<li>${h.direction === "plus" ? "s+" : "s-"} at ${h.vertex}</li>`).join("") +
    "</ol>";
  (document.getElementById("undo") as HTMLButtonElement).disabled = vm.undoDepth === 0;

  renderMinimap(vm);
}

function renderMinimap(vm: ViewModel): void {
  const box = document.getElementById("minimap")!;
  if (!vm.minimap) {
    box.textContent = "enumeration unavailable";
    return;
  }
  const m = vm.minimap;
  box.innerHTML =
    `<h3>mutation classes (${m.classCount})</h3>` +
    m.nodes
      .map((id) => {
        const mark = id === m.current ? "●" : "○";
        const label = id === m.start ? `${id} (start)` : `${id}`;
        return `<span class="class-node${id === m.current ? " current" : ""}">${mark} ${label}</span>`;
      })
      .join(" ");
}

async function onVertexClick(vertex: string): Promise<void> {
  if (!current) return;
  const view = current.vertices.find((v) => v.id === vertex);
  if (!view) return;
  let direction: Direction | null = view.click;
  if (view.ambiguous) {
    direction = window.confirm(`${vertex} is both a movable sink and source.\nOK = s- (sink), Cancel = s+ (source)`)
      ? "minus"
      : "plus";
  }
  if (!direction) return;
  try {
    await client.requestMutation(vertex, direction, current.version);
    await refresh();
  } catch (err) {
    if (err instanceof ServiceError) {
      badge(vertex, err.diagnostic.code);
    } else {
      throw err;
    }
  }
}

function badge(vertex: string, code: string): void {
  const group = document.querySelector<SVGGElement>(`g[data-vertex="${vertex}"]`);
  if (!group) return;
  const circle = group.querySelector("circle")!;
  const label = document.createElementNS("http://www.w3.org/2000/svg", "text");
  label.setAttribute("x", circle.getAttribute("cx")!);
  label.setAttribute("y", String(Number(circle.getAttribute("cy")) - 24));
  label.setAttribute("text-anchor", "middle");
  label.setAttribute("class", "badge");
  label.textContent = code;
  group.appendChild(label);
  setTimeout(() => label.remove(), 1600);
}

function download(filename: string, text: string, mime: string): void {
  const link = document.createElement("a");
  link.href = URL.createObjectURL(new Blob([text], { type: mime }));
  link.download = filename;
  link.click();
  URL.revokeObjectURL(link.href);
}

export function boot(): void {
  document.getElementById("undo")!.addEventListener("click", async () => {
    try {
      await client.undo();
      await refresh();
    } catch (err) {
      if (!(err instanceof ServiceError)) throw err;
    }
  });
  document.getElementById("export-svg")!.addEventListener("click", () => {
    if (current) download("slice.svg", renderSvg(current), "image/svg+xml");
  });
  document.getElementById("export-dot")!.addEventListener("click", () => {
    if (current) download("slice.dot", renderDot(current), "text/vnd.graphviz");
  });
  void refresh();
}

if (typeof document !== "undefined" && document.getElementById("stage")) {
  boot();
}
