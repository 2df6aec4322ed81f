// SVG and DOT renderings of a view model, both plain strings so the
// export buttons can offer them as downloads and tests can assert on them.

import type { ViewModel } from "./viewmodel.js";

const CELL_X = 140;
const CELL_Y = 80;
const RADIUS = 16;
const MARGIN = 60;

function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;").replace(/"/g, "&quot;");
}

export function renderSvg(vm: ViewModel): string {
  const xs = vm.vertices.map((v) => v.x);
  const ys = vm.vertices.map((v) => v.y);
  const minX = Math.min(0, ...xs);
  const minY = Math.min(0, ...ys);
  const width = (Math.max(...xs, 0) - minX + 1) * CELL_X + 2 * MARGIN;
  const height = (Math.max(...ys, 0) - minY + 1) * CELL_Y + 2 * MARGIN;
  const px = (v: { x: number; y: number }) => MARGIN + (v.x - minX) * CELL_X;
  const py = (v: { x: number; y: number }) => MARGIN + (v.y - minY) * CELL_Y;
  const at = new Map(vm.vertices.map((v) => [v.id, v]));

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}">`,
    `<defs><marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="7" markerHeight="7" orient="auto-start-reverse"><path d="M 0 0 L 10 5 L 0 10 z"/></marker></defs>`,
  );
  for (const a of [...vm.arrows].sort((p, q) => p.id.localeCompare(q.id))) {
    const from = at.get(a.from);
    const to = at.get(a.to);
    if (!from || !to) continue;
    const x1 = px(from);
    const y1 = py(from);
    const x2 = px(to);
    const y2 = py(to);
    const len = Math.hypot(x2 - x1, y2 - y1) || 1;
    const ux = (x2 - x1) / len;
    const uy = (y2 - y1) / len;
    const dash = a.returning ? ` stroke-dasharray="6 3"` : "";
    parts.push(
      `<line class="arrow${a.returning ? " returning" : ""}" x1="${(x1 + ux * RADIUS).toFixed(1)}" y1="${(y1 + uy * RADIUS).toFixed(1)}" x2="${(x2 - ux * (RADIUS + 4)).toFixed(1)}" y2="${(y2 - uy * (RADIUS + 4)).toFixed(1)}" stroke="black"${dash} marker-end="url(#arrow)"><title>${esc(a.id)}</title></line>`,
    );
  }
  for (const v of [...vm.vertices].sort((p, q) => p.id.localeCompare(q.id))) {
    const cls = v.movable === null ? "vertex" : `vertex movable ${v.movable}`;
    const fill = v.movable === "sink" ? "#ffd7a8" : v.movable === "source" ? "#bfe3ff" : v.movable === "both" ? "#d9c8ff" : "#f2f2f2";
    parts.push(
      `<g class="${cls}" data-vertex="${esc(v.id)}">` +
        `<circle cx="${px(v)}" cy="${py(v)}" r="${RADIUS}" fill="${fill}" stroke="black"/>` +
        `<text x="${px(v)}" y="${py(v) + 4}" text-anchor="middle" font-size="10">${esc(v.id)}</text>` +
        `</g>`,
    );
  }
  parts.push("</svg>");
  return parts.join("\n");
}

export function renderDot(vm: ViewModel, name = "slice"): string {
  const lines = [`digraph "${name}" {`, "  rankdir=LR;", "  node [shape=circle];"];
  for (const v of [...vm.vertices].sort((p, q) => p.id.localeCompare(q.id))) {
    lines.push(`  "${v.id}";`);
  }
  const byLevel = new Map<number, string[]>();
  for (const v of vm.vertices) {
    const group = byLevel.get(v.x) ?? [];
    group.push(v.id);
    byLevel.set(v.x, group);
  }
  for (const level of [...byLevel.keys()].sort((a, b) => a - b)) {
    const group = byLevel
      .get(level)!
      .sort()
      .map((id) => `"${id}"`)
      .join("; ");
    lines.push(`  { rank=same; ${group}; }`);
  }
  for (const a of [...vm.arrows].sort((p, q) => p.id.localeCompare(q.id))) {
    lines.push(`  "${a.from}" -> "${a.to}" [label="${a.id}"];`);
  }
  lines.push("}");
  return lines.join("\n") + "\n";
}
