/** View state: loading, clamping, stepping, slider geometry. */

import { readFileSync } from "node:fs";
import { describe, expect, it } from "vitest";

import { BundleError } from "../src/bundle.js";
import { drawLists } from "../src/classify.js";
import {
  loadBundle,
  setInterval,
  setToggle,
  sliderPositions,
  stepInterval,
} from "../src/state.js";

const text = readFileSync(new URL("./fixtures/p.bundle.json", import.meta.url), "utf8");

describe("loadBundle", () => {
  it("starts at the last interval: the convex hull view", () => {
    const state = loadBundle(text);
    expect(state.interval).toBe(11);
    expect(sliderPositions(state)).toBe(12);
    const lists = drawLists(state.bundle, state.interval);
    expect(lists.regularTriangles.length).toBe(4);
  });

  it("rejects malformed JSON with a message, not a crash", () => {
    expect(() => loadBundle("{ nope")).toThrow(BundleError);
    expect(() => loadBundle('{"format":"other"}')).toThrow(/family bundle/);
    expect(() => loadBundle('{"format":"alphafamily-bundle","version":9}')).toThrow(
      /version/
    );
  });

  it("reloading yields an identical initial render", () => {
    const a = loadBundle(text);
    const b = loadBundle(text);
    expect(a.interval).toBe(b.interval);
    expect(JSON.stringify(drawLists(a.bundle, a.interval))).toBe(
      JSON.stringify(drawLists(b.bundle, b.interval))
    );
  });
});

describe("setInterval", () => {
  it("accepts valid indices silently", () => {
    const state = setInterval(loadBundle(text), 4);
    expect(state.interval).toBe(4);
    expect(state.clampNotice).toBeNull();
  });

  it("clamps out-of-range indices with a visible notice", () => {
    const high = setInterval(loadBundle(text), 12);
    expect(high.interval).toBe(11);
    expect(high.clampNotice).toMatch(/beyond/);
    const low = setInterval(loadBundle(text), -3);
    expect(low.interval).toBe(0);
    expect(low.clampNotice).toMatch(/below/);
  });

  it("steps with arrows and clamps at the ends", () => {
    let state = loadBundle(text);
    state = stepInterval(state, 1);
    expect(state.interval).toBe(11);
    expect(state.clampNotice).not.toBeNull();
    state = setInterval(state, 0);
    state = stepInterval(state, -1);
    expect(state.interval).toBe(0);
  });
});

describe("toggles", () => {
  it("default view hides interior simplices", () => {
    const state = loadBundle(text);
    expect(state.toggles.interior).toBe(false);
    expect(state.toggles.regular).toBe(true);
  });

  it("updates immutably", () => {
    const state = loadBundle(text);
    const other = setToggle(state, "interior", true);
    expect(other.toggles.interior).toBe(true);
    expect(state.toggles.interior).toBe(false);
  });
});
