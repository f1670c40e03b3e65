/** Interval classification replayed from bundle threshold indices.
 *
 * Mirrors the producer's row logic exactly: a simplex is singular from
 * its own radius until first bounded, regular until buried, interior
 * afterwards; attachment empties the singular part, the hull keeps the
 * regular part open forever (its high index is the infinity sentinel).
 * No geometry is touched here, so replayed counts match the bundle's
 * precomputed series bit for bit.
 */

import { Bundle, SimplexEntry, intervalCount } from "./bundle.js";

export type SimplexClass = "singular" | "regular" | "interior";

export function classifyEntry(
  entry: SimplexEntry,
  interval: number,
  last: number
): SimplexClass | null {
  if (entry.dim === 3) {
    return entry.rho_index! <= interval ? "interior" : null;
  }
  const lo = entry.mu_lo_index;
  const hi = entry.mu_hi_index;
  if (interval < lo) {
    if (entry.dim === 0) {
      return "singular";
    }
    if (!entry.attached && entry.rho_index! <= interval) {
      return "singular";
    }
    return null;
  }
  if (interval < hi) {
    return "regular";
  }
  return interval < last ? "interior" : null;
}

export interface DrawLists {
  /** triangles as vertex-label triples, split by class */
  regularTriangles: number[][];
  singularTriangles: number[][];
  interiorTriangles: number[][];
  singularEdges: number[][];
  regularEdges: number[][];
  singularVertices: number[];
  counts: Record<string, number>;
}

export interface ClassToggles {
  interior: boolean;
  regular: boolean;
  singular: boolean;
  triangles: boolean;
  edges: boolean;
  vertices: boolean;
}

export const defaultToggles: ClassToggles = {
  interior: false,
  regular: true,
  singular: true,
  triangles: true,
  edges: true,
  vertices: true,
};

const DIM_NAMES = ["vertices", "edges", "triangles", "tetrahedra"] as const;

/** Pure function of (bundle, interval): class membership and counts. */
export function drawLists(bundle: Bundle, interval: number): DrawLists {
  const last = intervalCount(bundle);
  const out: DrawLists = {
    regularTriangles: [],
    singularTriangles: [],
    interiorTriangles: [],
    singularEdges: [],
    regularEdges: [],
    singularVertices: [],
    counts: {},
  };
  for (const entry of bundle.simplices) {
    const cls = classifyEntry(entry, interval, last);
    if (cls === null) {
      continue;
    }
    const key = `${cls}_${DIM_NAMES[entry.dim]}`;
    out.counts[key] = (out.counts[key] ?? 0) + 1;
    if (entry.dim === 2) {
      if (cls === "regular") {
        out.regularTriangles.push(entry.verts);
      } else if (cls === "singular") {
        out.singularTriangles.push(entry.verts);
      } else {
        out.interiorTriangles.push(entry.verts);
      }
    } else if (entry.dim === 1) {
      if (cls === "singular") {
        out.singularEdges.push(entry.verts);
      } else if (cls === "regular") {
        out.regularEdges.push(entry.verts);
      }
    } else if (entry.dim === 0 && cls === "singular") {
      out.singularVertices.push(entry.verts[0]);
    }
  }
  return out;
}

/** Replayed per-class counts must equal the bundle's own series. */
export function countsMatchSignatures(bundle: Bundle, interval: number): boolean {
  const lists = drawLists(bundle, interval);
  const series = bundle.signatures.face_counts;
  for (const name of Object.keys(series)) {
    if ((lists.counts[name] ?? 0) !== series[name][interval]) {
      return false;
    }
  }
  for (const name of Object.keys(lists.counts)) {
    if (!(name in series)) {
      return false;
    }
  }
  return true;
}
