// Service payload shapes, mirroring the canonical JSON documents the
// backend emits. The client never computes algebra; it only re-arranges
// these documents for rendering.

export interface QuiverFileDoc {
  name: string;
  vertices: string[];
  arrows: { id: string; from: string; to: string }[];
  relations: { coeff: string; path: string[] }[][];
  translation?: { n: number; tau: Record<string, string> };
  window?: { from: number; to: number };
}

export interface MovableEntry {
  vertex: string;
  sink: boolean;
  source: boolean;
}

export interface SliceStateDoc {
  subset: string[];
  slice: QuiverFileDoc;
  dual: QuiverFileDoc;
  movable: { forward: MovableEntry[]; backward: MovableEntry[] };
  levels?: Record<string, number>;
}

export interface SessionDoc {
  state: SliceStateDoc;
  version: number;
  history: [string, string][];
}

export interface EnumerationDoc {
  class_count: number;
  start_class: number;
  current_class: number | null;
  classes: { id: number; subset: [string, number][] }[];
  edges: { from: number; sink: string; to: number }[];
}

export interface LayoutDoc {
  positions: Record<string, { x: number; y: number }>;
}

export type Direction = "plus" | "minus";

export interface ErrorDoc {
  code: string;
  message: string;
  witness?: unknown;
}
