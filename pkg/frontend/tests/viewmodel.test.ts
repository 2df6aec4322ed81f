import { describe, expect, it } from "vitest";

import { renderDot, renderSvg } from "../src/render.js";
import { buildViewModel, relationText } from "../src/viewmodel.js";
import type { EnumerationDoc, LayoutDoc, SessionDoc } from "../src/types.js";

const session: SessionDoc = {
  state: {
    subset: ["1@1", "2@0", "3@0"],
    slice: {
      name: "demo",
      vertices: ["1@1", "2@0", "3@0"],
      arrows: [
        { id: "b@0", from: "2@0", to: "3@0" },
        { id: "ret_x@0", from: "3@0", to: "1@1" },
      ],
      relations: [[{ coeff: "1", path: ["b@0", "ret_x@0"] }]],
    },
    dual: {
      name: "demo^!",
      vertices: ["1@1", "2@0", "3@0"],
      arrows: [
        { id: "b@0", from: "2@0", to: "3@0" },
        { id: "ret_x@0", from: "3@0", to: "1@1" },
      ],
      relations: [
        [
          { coeff: "1", path: ["b@0", "ret_x@0"] },
          { coeff: "-1/2", path: ["b@0", "ret_x@0"] },
        ],
      ],
    },
    movable: {
      forward: [{ vertex: "1@1", sink: true, source: false }],
      backward: [{ vertex: "2@0", sink: false, source: true }],
    },
    levels: { "1@1": 1, "2@0": 0, "3@0": 0 },
  },
  version: 2,
  history: [
    ["1@0", "plus"],
    ["6@0", "minus"],
  ],
};

const layout: LayoutDoc = {
  positions: {
    "1@1": { x: 1, y: 0 },
    "2@0": { x: 0, y: 1 },
    "3@0": { x: 0, y: 2 },
  },
};

const enumeration: EnumerationDoc = {
  class_count: 3,
  start_class: 0,
  current_class: 2,
  classes: [
    { id: 0, subset: [["1", 0]] },
    { id: 1, subset: [["1", 1]] },
    { id: 2, subset: [["1", 2]] },
  ],
  edges: [
    { from: 0, sink: "1", to: 1 },
    { from: 1, sink: "2", to: 2 },
  ],
};

describe("buildViewModel", () => {
  it("is a pure function of the documents", () => {
    const a = buildViewModel(session, layout, enumeration);
    const b = buildViewModel(session, layout, enumeration);
    expect(a).toEqual(b);
  });

  it("infers click directions from movability", () => {
    const vm = buildViewModel(session, layout, enumeration);
    const byId = new Map(vm.vertices.map((v) => [v.id, v]));
    expect(byId.get("1@1")).toMatchObject({ movable: "sink", click: "minus", ambiguous: false });
    expect(byId.get("2@0")).toMatchObject({ movable: "source", click: "plus", ambiguous: false });
    expect(byId.get("3@0")).toMatchObject({ movable: null, click: null });
  });

  it("flags vertices movable in both directions as ambiguous", () => {
    const doc = structuredClone(session);
    doc.state.movable.backward.push({ vertex: "1@1", sink: false, source: true });
    const vm = buildViewModel(doc, layout, enumeration);
    const v = vm.vertices.find((x) => x.id === "1@1")!;
    expect(v.movable).toBe("both");
    expect(v.ambiguous).toBe(true);
    expect(v.click).toBeNull();
  });

  it("takes layout coordinates from the service", () => {
    const vm = buildViewModel(session, layout, enumeration);
    const v = vm.vertices.find((x) => x.id === "1@1")!;
    expect([v.x, v.y]).toEqual([1, 0]);
  });

  it("keeps undo depth equal to the history length", () => {
    const vm = buildViewModel(session, layout, enumeration);
    expect(vm.undoDepth).toBe(2);
    expect(vm.history).toEqual([
      { vertex: "1@0", direction: "plus" },
      { vertex: "6@0", direction: "minus" },
    ]);
  });

  it("marks the current enumeration class", () => {
    const vm = buildViewModel(session, layout, enumeration);
    expect(vm.minimap).toMatchObject({ classCount: 3, current: 2, start: 0 });
    expect(vm.minimap!.nodes).toEqual([0, 1, 2]);
  });

  it("marks returning arrows", () => {
    const vm = buildViewModel(session, layout, enumeration);
    const returning = vm.arrows.filter((a) => a.returning).map((a) => a.id);
    expect(returning).toEqual(["ret_x@0"]);
  });
});

describe("relation text", () => {
  it("renders coefficients and words", () => {
    expect(relationText(session.state.dual)).toEqual(["b@0*ret_x@0 + (-1/2)b@0*ret_x@0"]);
  });
});

describe("renderers", () => {
  it("svg is deterministic and shows every vertex", () => {
    const vm = buildViewModel(session, layout, enumeration);
    const svg = renderSvg(vm);
    expect(renderSvg(vm)).toBe(svg);
    for (const v of vm.vertices) {
      expect(svg).toContain(`data-vertex="${v.id}"`);
    }
  });

  it("dot has level rank groups", () => {
    const vm = buildViewModel(session, layout, enumeration);
    const dot = renderDot(vm);
    expect(dot).toContain('{ rank=same; "2@0"; "3@0"; }');
    expect(dot).toContain('"3@0" -> "1@1" [label="ret_x@0"];');
  });
});
