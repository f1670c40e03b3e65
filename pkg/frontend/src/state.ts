/** Viewer state: the loaded bundle, the current interval, class toggles.
 *
 * The rendered scene is a pure function of (bundle, interval, toggles);
 * state changes only describe which member of the family to show.
 */

import { Bundle, parseBundle, intervalCount } from "./bundle.js";
import { ClassToggles, defaultToggles } from "./classify.js";

export interface ViewState {
  bundle: Bundle;
  interval: number;
  toggles: ClassToggles;
  /** set when the last interval change clamped an out-of-range request */
  clampNotice: string | null;
}

/** Parse a bundle and start at the last interval (the convex hull view). */
export function loadBundle(text: string): ViewState {
  const bundle = parseBundle(text);
  return {
    bundle,
    interval: intervalCount(bundle) - 1,
    toggles: { ...defaultToggles },
    clampNotice: null,
  };
}

/** Move to an interval; out-of-range requests clamp and leave a notice. */
export function setInterval(state: ViewState, index: number): ViewState {
  const last = intervalCount(state.bundle) - 1;
  let clamped = Math.round(index);
  let notice: string | null = null;
  if (clamped < 0) {
    clamped = 0;
    notice = `interval ${index} is below the range; showing 0`;
  } else if (clamped > last) {
    clamped = last;
    notice = `interval ${index} is beyond the range; showing ${last}`;
  }
  return { ...state, interval: clamped, clampNotice: notice };
}

export function stepInterval(state: ViewState, delta: number): ViewState {
  return setInterval(state, state.interval + delta);
}

export function setToggle(
  state: ViewState,
  name: keyof ClassToggles,
  value: boolean
): ViewState {
  return { ...state, toggles: { ...state.toggles, [name]: value } };
}

/** Slider geometry: one position per open interval. */
export function sliderPositions(state: ViewState): number {
  return intervalCount(state.bundle);
}
