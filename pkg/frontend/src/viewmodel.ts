// The view model is a pure function of the last service responses.
// No algebra happens here: levels, movability and the class graph all
// come from the backend documents.

import type {
  Direction,
  EnumerationDoc,
  LayoutDoc,
  QuiverFileDoc,
  SessionDoc,
  SliceStateDoc,
} from "./types.js";

export type Movability = "sink" | "source" | "both" | null;

export interface VertexView {
  id: string;
  x: number;
  y: number;
  movable: Movability;
  /** the one legal move, or null when none or ambiguous */
  click: Direction | null;
  ambiguous: boolean;
}

export interface ArrowView {
  id: string;
  from: string;
  to: string;
  returning: boolean;
}

export interface MinimapView {
  classCount: number;
  nodes: number[];
  edges: { from: number; to: number; sink: string }[];
  current: number | null;
  start: number;
}

export interface ViewModel {
  vertices: VertexView[];
  arrows: ArrowView[];
  sliceRelations: string[];
  dualRelations: string[];
  history: { vertex: string; direction: Direction }[];
  undoDepth: number;
  version: number;
  minimap: MinimapView | null;
}

export function relationText(doc: QuiverFileDoc): string[] {
  return doc.relations.map((terms) =>
    terms
      .map(({ coeff, path }) => {
        const word = path.join("*");
        return coeff === "1" ? word : `(${coeff})${word}`;
      })
      .join(" + "),
  );
}

function movabilityOf(state: SliceStateDoc, vertex: string): { movable: Movability; click: Direction | null; ambiguous: boolean } {
  // clicking a sink performs s^-, a source s^+; a vertex legal for both
  // directions needs the two-option popover
  const forward = state.movable.forward.find((m) => m.vertex === vertex);
  const backward = state.movable.backward.find((m) => m.vertex === vertex);
  const minusLegal = forward !== undefined && forward.sink;
  const plusLegal = backward !== undefined && backward.source;
  if (minusLegal && plusLegal) {
    return { movable: "both", click: null, ambiguous: true };
  }
  if (minusLegal) {
    return { movable: "sink", click: "minus", ambiguous: false };
  }
  if (plusLegal) {
    return { movable: "source", click: "plus", ambiguous: false };
  }
  return { movable: null, click: null, ambiguous: false };
}

export function buildViewModel(
  session: SessionDoc,
  layout: LayoutDoc,
  enumeration: EnumerationDoc | null,
): ViewModel {
  const state = session.state;
  const vertices: VertexView[] = state.subset.map((id) => {
    const pos = layout.positions[id] ?? { x: state.levels?.[id] ?? 0, y: 0 };
    return { id, ...pos, ...movabilityOf(state, id) };
  });
  const subset = new Set(state.subset);
  const arrows: ArrowView[] = state.slice.arrows
    .filter((a) => subset.has(a.from) && subset.has(a.to))
    .map((a) => ({
      id: a.id,
      from: a.from,
      to: a.to,
      returning: a.id.startsWith("ret_"),
    }));
  return {
    vertices,
    arrows,
    sliceRelations: relationText(state.slice),
    dualRelations: relationText(state.dual),
    history: session.history.map(([vertex, direction]) => ({
      vertex,
      direction: direction as Direction,
    })),
    undoDepth: session.history.length,
    version: session.version,
    minimap: enumeration
      ? {
          classCount: enumeration.class_count,
          nodes: enumeration.classes.map((c) => c.id),
          edges: enumeration.edges.map((e) => ({ from: e.from, to: e.to, sink: e.sink })),
          current: enumeration.current_class,
          start: enumeration.start_class,
        }
      : null,
  };
}
