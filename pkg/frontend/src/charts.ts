import type { ChartDocument } from "./types";

/** Minimal slice of the vega view API the manager needs. */
export interface EmbeddedView {
  signal(name: string, value: unknown): EmbeddedView;
  runAsync(): Promise<unknown>;
  addSignalListener(name: string, handler: (name: string, value: unknown) => void): EmbeddedView;
}

export type EmbedFn = (
  el: HTMLElement,
  spec: ChartDocument,
  opts: { actions: boolean },
) => Promise<{ view: EmbeddedView }>;

interface Mounted {
  chartId: string;
  linkGroup: string | null;
  view: EmbeddedView;
}

/** Renders server chart documents verbatim and mirrors pan/zoom across
 *  charts that share a link group. */
export class ChartManager {
  private mounted: Mounted[] = [];
  private syncing = false;

  constructor(private readonly embed: EmbedFn) {}

  async render(container: HTMLElement, docs: ChartDocument[]): Promise<void> {
    container.textContent = "";
    this.mounted = [];
    for (const doc of docs) {
      const cell = document.createElement("div");
      cell.className = "chart-cell";
      cell.dataset.chartId = doc.usermeta.chart_id;
      container.appendChild(cell);
      const { view } = await this.embed(cell, doc, { actions: false });
      const entry: Mounted = {
        chartId: doc.usermeta.chart_id,
        linkGroup: doc.usermeta.link_group,
        view,
      };
      this.mounted.push(entry);
      if (entry.linkGroup) this.attachLinkListeners(entry);
    }
  }

  rowCount(chartId: string): number | null {
    const cell = document.querySelector(`[data-chart-id="${chartId}"]`);
    return cell ? Number(cell.getAttribute("data-rows")) : null;
  }

  private attachLinkListeners(entry: Mounted): void {
    // interval selection bound to scales compiles to <name>_x / <name>_y signals
    for (const signal of ["pan_zoom_x", "pan_zoom_y"]) {
      try {
        entry.view.addSignalListener(signal, (_name, value) => {
          this.broadcast(entry, signal, value);
        });
      } catch {
        // chart without that signal; nothing to link
      }
    }
  }

  private broadcast(source: Mounted, signal: string, value: unknown): void {
    if (this.syncing) return;
    this.syncing = true;
    try {
      for (const other of this.mounted) {
        if (other === source || other.linkGroup !== source.linkGroup) continue;
        try {
          other.view.signal(signal, value);
          void other.view.runAsync();
        } catch {
          // sibling not ready; skip
        }
      }
    } finally {
      this.syncing = false;
    }
  }
}
