// @vitest-environment jsdom
import { describe, expect, it } from "vitest";

import { ChartManager, type EmbedFn, type EmbeddedView } from "../src/charts";
import type { ChartDocument } from "../src/types";

interface FakeView extends EmbeddedView {
  received: [string, unknown][];
  listeners: Map<string, (name: string, value: unknown) => void>;
  fire(name: string, value: unknown): void;
}

function makeFakeView(): FakeView {
  const view: FakeView = {
    received: [],
    listeners: new Map(),
    signal(name, value) {
      view.received.push([name, value]);
      return view;
    },
    async runAsync() {
      return undefined;
    },
    addSignalListener(name, handler) {
      view.listeners.set(name, handler);
      return view;
    },
    fire(name, value) {
      view.listeners.get(name)?.(name, value);
    },
  };
  return view;
}

function doc(chartId: string, linkGroup: string | null): ChartDocument {
  return {
    $schema: "https://vega.github.io/schema/vega-lite/v6.json",
    usermeta: {
      chart_id: chartId,
      link_group: linkGroup,
      excluded_undefined_rows: 0,
      excluded_nonpositive_log_rows: 0,
    },
    data: { values: [] },
  };
}

describe("ChartManager link groups", () => {
  it("mirrors a pan/zoom signal to the other linked charts only", async () => {
    const views = new Map<string, FakeView>();
    const embed: EmbedFn = async (_el, spec) => {
      const view = makeFakeView();
      views.set(spec.usermeta.chart_id, view);
      return { view };
    };
    const manager = new ChartManager(embed);
    await manager.render(document.createElement("div"), [
      doc("usage_vs_downloads", "usage_components"),
      doc("usage_vs_citations", "usage_components"),
      doc("usage_vs_authorships", "usage_components"),
      doc("usage_vs_oa_percent", "usage_components"),
      doc("usage_vs_cost_by_status", null),
    ]);

    views.get("usage_vs_downloads")!.fire("pan_zoom_x", [10, 500]);

    for (const sibling of ["usage_vs_citations", "usage_vs_authorships", "usage_vs_oa_percent"]) {
      expect(views.get(sibling)!.received).toEqual([["pan_zoom_x", [10, 500]]]);
    }
    expect(views.get("usage_vs_downloads")!.received).toEqual([]); // not echoed back
    expect(views.get("usage_vs_cost_by_status")!.received).toEqual([]); // outside the group
  });

  it("ignores signals while a broadcast is already in flight", async () => {
    const views = new Map<string, FakeView>();
    const embed: EmbedFn = async (_el, spec) => {
      const view = makeFakeView();
      views.set(spec.usermeta.chart_id, view);
      return { view };
    };
    const manager = new ChartManager(embed);
    await manager.render(document.createElement("div"), [
      doc("a", "g"),
      doc("b", "g"),
    ]);
    const a = views.get("a")!;
    const b = views.get("b")!;
    // b echoing during a's broadcast must not loop
    const original = b.signal.bind(b);
    b.signal = (name, value) => {
      b.fire(name, value);
      return original(name, value);
    };
    a.fire("pan_zoom_y", [0, 1]);
    expect(b.received.filter(([n]) => n === "pan_zoom_y").length).toBe(1);
    expect(a.received).toEqual([]);
  });
});
