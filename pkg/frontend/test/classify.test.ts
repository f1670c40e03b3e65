/** Classification replay from threshold indices, against the fixture
 * bundle produced by the pipeline. */

import { readFileSync } from "node:fs";
import { describe, expect, it } from "vitest";

import { intervalCount, parseBundle } from "../src/bundle.js";
import {
  classifyEntry,
  countsMatchSignatures,
  drawLists,
} from "../src/classify.js";

const text = readFileSync(new URL("./fixtures/p.bundle.json", import.meta.url), "utf8");
const bundle = parseBundle(text);
const last = intervalCount(bundle);

describe("fixture bundle", () => {
  it("has twelve intervals", () => {
    expect(last).toBe(12);
    expect(bundle.n).toBe(4);
    expect(bundle.simplices.length).toBe(15);
  });
});

describe("drawLists", () => {
  it("shows only the four points on the first interval", () => {
    const lists = drawLists(bundle, 0);
    expect(lists.singularVertices.length).toBe(4);
    expect(lists.regularTriangles.length).toBe(0);
    expect(lists.singularTriangles.length).toBe(0);
    expect(lists.singularEdges.length).toBe(0);
  });

  it("shows one darker (singular) triangle just past its radius", () => {
    // the big face enters at the fourth threshold of the worked fixture
    const interval = 4;
    const lists = drawLists(bundle, interval);
    expect(lists.singularTriangles.length).toBe(1);
    expect(lists.singularTriangles[0]).toEqual([1, 2, 3]);
  });

  it("shows the four regular hull triangles on the last interval", () => {
    const lists = drawLists(bundle, last - 1);
    expect(lists.regularTriangles.length).toBe(4);
    expect(lists.singularTriangles.length).toBe(0);
    expect(lists.singularVertices.length).toBe(0);
    expect(lists.counts["interior_tetrahedra"]).toBe(1);
  });

  it("matches the bundle's face-count series at every interval", () => {
    for (let i = 0; i < last; i++) {
      expect(countsMatchSignatures(bundle, i)).toBe(true);
    }
  });

  it("is deterministic", () => {
    const a = JSON.stringify(drawLists(bundle, 5));
    const b = JSON.stringify(drawLists(bundle, 5));
    expect(a).toBe(b);
  });
});

describe("classifyEntry", () => {
  it("keeps hull simplices regular forever", () => {
    const hullTriangle = bundle.simplices.find(
      (s) => s.dim === 2 && s.hull
    )!;
    expect(classifyEntry(hullTriangle, last - 1, last)).toBe("regular");
  });

  it("buries cells after their radius", () => {
    const cell = bundle.simplices.find((s) => s.dim === 3)!;
    expect(classifyEntry(cell, cell.rho_index! - 1, last)).toBeNull();
    expect(classifyEntry(cell, cell.rho_index!, last)).toBe("interior");
  });

  it("never returns singular for attached simplices", () => {
    for (const entry of bundle.simplices) {
      if (!entry.attached) {
        continue;
      }
      for (let i = 0; i < last; i++) {
        expect(classifyEntry(entry, i, last)).not.toBe("singular");
      }
    }
  });
});
