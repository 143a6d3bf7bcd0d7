import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import {
  RequestSequencer,
  clampToBounds,
  debounce,
  filterParams,
  initialState,
  resetRanges,
  searchTitles,
  setRange,
  toggleStatus,
} from "../src/state";
import type { Bounds } from "../src/types";

const BOUNDS: Bounds = {
  price: [40, 29000],
  cpu_rank: [1, 431],
  downloads: [0, 8000],
  citations: [0, 850],
  authorships: [0, 14],
  usage: [20, 10000],
  oa_percent: [0, 95],
};

describe("clampToBounds", () => {
  it("clamps into bounds and repairs inversion", () => {
    expect(clampToBounds(-5, 50, [0, 40])).toEqual([0, 40]);
    expect(clampToBounds(30, 10, [0, 40])).toEqual([10, 10]);
    expect(clampToBounds(5, 10, null)).toEqual([5, 10]);
  });
});

describe("filterParams", () => {
  it("is empty for the initial state", () => {
    expect(filterParams(initialState("s", BOUNDS))).toEqual({});
  });

  it("emits min/max for active ranges only", () => {
    let state = initialState("s", BOUNDS);
    state = setRange(state, "usage", 100, 500);
    expect(filterParams(state)).toEqual({ usage_min: "100", usage_max: "500" });
  });

  it("omits ranges re-widened to the full extent", () => {
    let state = initialState("s", BOUNDS);
    state = setRange(state, "usage", 100, 500);
    state = setRange(state, "usage", 20, 10000);
    expect(filterParams(state)).toEqual({});
  });

  it("emits the status subset", () => {
    let state = initialState("s", BOUNDS);
    state = toggleStatus(state, "FALSE");
    expect(filterParams(state).statuses).toBe("TRUE,MAYBE,BLANK");
  });

  it("reset restores the identity filter", () => {
    let state = initialState("s", BOUNDS);
    state = setRange(state, "price", 100, 200);
    state = toggleStatus(state, "TRUE");
    state = resetRanges(state);
    expect(filterParams(state)).toEqual({});
  });
});

describe("toggleStatus", () => {
  it("never filters down to the empty set", () => {
    let state = initialState("s", BOUNDS);
    for (const status of ["TRUE", "FALSE", "MAYBE", "BLANK"] as const) {
      state = toggleStatus(state, status);
    }
    expect(state.statuses.size).toBeGreaterThan(0);
  });

  it("re-adds a removed status", () => {
    let state = initialState("s", BOUNDS);
    state = toggleStatus(state, "MAYBE");
    expect(state.statuses.has("MAYBE")).toBe(false);
    state = toggleStatus(state, "MAYBE");
    expect(state.statuses.has("MAYBE")).toBe(true);
  });
});

describe("debounce", () => {
  beforeEach(() => vi.useFakeTimers());
  afterEach(() => vi.useRealTimers());

  it("coalesces a burst into one trailing call", () => {
    const fn = vi.fn();
    const wrapped = debounce(fn, 250);
    wrapped(1);
    wrapped(2);
    wrapped(3);
    vi.advanceTimersByTime(249);
    expect(fn).not.toHaveBeenCalled();
    vi.advanceTimersByTime(1);
    expect(fn).toHaveBeenCalledTimes(1);
    expect(fn).toHaveBeenCalledWith(3);
  });

  it("cancel drops the pending call", () => {
    const fn = vi.fn();
    const wrapped = debounce(fn, 100);
    wrapped();
    wrapped.cancel();
    vi.advanceTimersByTime(500);
    expect(fn).not.toHaveBeenCalled();
  });
});

describe("RequestSequencer", () => {
  it("marks superseded tokens stale", () => {
    const seq = new RequestSequencer();
    const first = seq.issue();
    const second = seq.issue();
    expect(seq.isCurrent(first)).toBe(false);
    expect(seq.isCurrent(second)).toBe(true);
  });
});

describe("searchTitles", () => {
  const rows = [
    { key: "a", title: "Beta Optics" },
    { key: "b", title: "Optics Letters" },
    { key: "c", title: "Applied Optics Review" },
  ];

  it("orders by match position then title", () => {
    expect(searchTitles(rows, "optics").map((r) => r.key)).toEqual(["b", "a", "c"]);
  });

  it("empty query matches nothing", () => {
    expect(searchTitles(rows, "  ")).toEqual([]);
  });

  it("is case-insensitive", () => {
    expect(searchTitles(rows, "BETA")).toHaveLength(1);
  });
});
