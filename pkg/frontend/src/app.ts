import { ApiClient, ApiError } from "./api";
import { ChartManager, type EmbedFn } from "./charts";
import { createStatusEditor } from "./editor";
import { createDualSlider, type DualSlider } from "./sliders";
import {
  type ViewState,
  RequestSequencer,
  debounce,
  filterParams,
  initialState,
  setRange,
  toggleStatus,
} from "./state";
import { renderSummary } from "./summary";
import type { MetricName, StatusName } from "./types";
import { METRIC_LABELS, METRIC_NAMES, STATUS_NAMES } from "./types";

const REFRESH_DEBOUNCE_MS = 250;

/** Loaded on first render so test environments never pull in the renderer. */
const lazyVegaEmbed: EmbedFn = async (el, spec, opts) => {
  const { default: vegaEmbed } = await import("vega-embed");
  return (vegaEmbed as unknown as EmbedFn)(el, spec, opts);
};

export interface AppOptions {
  api?: ApiClient;
  embed?: EmbedFn;
  debounceMs?: number;
}

export class Dashboard {
  readonly api: ApiClient;
  private readonly chartManager: ChartManager;
  private readonly sequencer = new RequestSequencer();
  private readonly debounceMs: number;
  private state: ViewState | null = null;
  private sliders = new Map<MetricName, DualSlider>();
  private editor = createStatusEditor((key, status) => void this.applyEdit(key, status));
  private refreshSoon: { (): void; cancel(): void };

  constructor(
    private readonly root: HTMLElement,
    options: AppOptions = {},
  ) {
    this.api = options.api ?? new ApiClient();
    this.chartManager = new ChartManager(options.embed ?? lazyVegaEmbed);
    this.debounceMs = options.debounceMs ?? REFRESH_DEBOUNCE_MS;
    this.refreshSoon = debounce(() => void this.refresh(), this.debounceMs);
    this.root.innerHTML = `
      <header>
        <h1>unsubscope</h1>
        <div id="package-summary" class="summary-block"></div>
        <div id="view-summary" class="summary-block"></div>
      </header>
      <div class="body">
        <aside id="panel">
          <label class="upload-label">Upload export CSV
            <input type="file" id="upload" accept=".csv" />
          </label>
          <div id="editor-slot"></div>
          <div id="sliders"></div>
          <div id="status-toggles"></div>
          <button id="reset-filters">Reset filters</button>
          <a id="export-link" download>Export decisions CSV</a>
        </aside>
        <main id="charts"></main>
      </div>
      <div id="error-banner" hidden></div>
    `;
    this.panel("#editor-slot").appendChild(this.editor.root);
    this.panel("#upload").addEventListener("change", (event) => {
      const input = event.target as HTMLInputElement;
      const file = input.files?.[0];
      if (file) void this.loadUpload(file);
    });
    this.panel("#reset-filters").addEventListener("click", () => {
      if (!this.state) return;
      this.state = initialState(this.state.sessionId, this.state.bounds);
      this.buildSliders();
      this.buildStatusToggles();
      this.refreshSoon();
    });
    this.panel<HTMLAnchorElement>("#export-link").addEventListener("click", (event) => {
      event.preventDefault();
      void this.downloadExport();
    });
  }

  /** Fetch the export and hand it to the browser under the server-chosen
   *  random filename; an expired session surfaces an inline error instead
   *  of navigating to a bare error page. */
  async downloadExport(): Promise<void> {
    if (!this.state) return;
    try {
      const resp = await this.api.downloadExport(this.state.sessionId);
      if (!resp.ok) {
        let detail = resp.statusText;
        try {
          detail = ((await resp.json()) as { detail?: string }).detail ?? detail;
        } catch {
          // keep the status text
        }
        throw new ApiError(resp.status, `${detail}; upload the file again to continue`);
      }
      const disposition = resp.headers.get("content-disposition") ?? "";
      const match = disposition.match(/filename="([^"]+)"/);
      const blob = await resp.blob();
      const anchor = document.createElement("a");
      anchor.href = URL.createObjectURL(blob);
      anchor.download = match?.[1] ?? "decisions.csv";
      anchor.click();
      URL.revokeObjectURL(anchor.href);
    } catch (err) {
      this.showError(err);
    }
  }

  private panel<T extends HTMLElement = HTMLElement>(selector: string): T {
    return this.root.querySelector<T>(selector)!;
  }

  async boot(): Promise<void> {
    try {
      const created = await this.api.createSampleSession();
      this.adoptSession(created.session_id, created.bounds);
    } catch (err) {
      this.showError(err);
    }
  }

  private async loadUpload(file: File): Promise<void> {
    try {
      const created = await this.api.uploadSession(file);
      this.adoptSession(created.session_id, created.bounds);
    } catch (err) {
      this.showError(err);
    }
  }

  private adoptSession(sessionId: string, bounds: ViewState["bounds"]): void {
    this.state = initialState(sessionId, bounds);
    this.panel<HTMLAnchorElement>("#export-link").href = this.api.exportUrl(sessionId);
    this.buildSliders();
    this.buildStatusToggles();
    void this.refresh();
  }

  private buildSliders(): void {
    const host = this.panel("#sliders");
    host.textContent = "";
    this.sliders.clear();
    if (!this.state) return;
    for (const metric of METRIC_NAMES) {
      const bounds = this.state.bounds[metric];
      if (!bounds) continue;
      const slider = createDualSlider({
        label: METRIC_LABELS[metric],
        min: bounds[0],
        max: bounds[1],
        onChange: (lo, hi) => this.onFilterChange(metric, lo, hi),
      });
      this.sliders.set(metric, slider);
      host.appendChild(slider.root);
    }
  }

  private buildStatusToggles(): void {
    const host = this.panel("#status-toggles");
    host.textContent = "";
    for (const status of STATUS_NAMES) {
      const label = document.createElement("label");
      label.className = "status-toggle";
      const box = document.createElement("input");
      box.type = "checkbox";
      box.checked = this.state?.statuses.has(status) ?? true;
      box.addEventListener("change", () => {
        if (!this.state) return;
        this.state = toggleStatus(this.state, status);
        box.checked = this.state.statuses.has(status);
        this.refreshSoon();
      });
      label.appendChild(box);
      label.appendChild(document.createTextNode(status === "BLANK" ? "(blank)" : status));
      host.appendChild(label);
    }
  }

  onFilterChange(metric: MetricName, lo: number, hi: number): void {
    if (!this.state) return;
    this.state = setRange(this.state, metric, lo, hi);
    this.refreshSoon();
  }

  /** Refetch summary, journals, and charts for the current filters;
   *  responses superseded by a newer request are dropped. */
  async refresh(): Promise<void> {
    if (!this.state) return;
    const token = this.sequencer.issue();
    const sid = this.state.sessionId;
    const params = filterParams(this.state);
    try {
      const [summary, journals, catalog] = await Promise.all([
        this.api.getSummary(sid, params),
        this.api.getJournals(sid, {}),
        this.api.getCatalog(),
      ]);
      const docs = await Promise.all(
        catalog.map((d) => this.api.getChart(sid, d.chart_id, params)),
      );
      if (!this.sequencer.isCurrent(token)) return;

      renderSummary(this.panel("#package-summary"), summary.package, "Package");
      renderSummary(this.panel("#view-summary"), summary.view, "Filtered view");
      this.editor.setJournals(journals.records);
      await this.chartManager.render(this.panel("#charts"), docs);
      this.clearError();
    } catch (err) {
      if (!this.sequencer.isCurrent(token)) return;
      this.showError(err);
      if (err instanceof ApiError && err.status === 400 && this.state) {
        // the server rejected the filter; fall back to the identity filter
        this.state = initialState(this.state.sessionId, this.state.bounds);
        this.buildSliders();
        this.buildStatusToggles();
        this.refreshSoon();
      }
    }
  }

  private async applyEdit(key: string, status: StatusName): Promise<void> {
    if (!this.state) return;
    try {
      const resp = await this.api.patchStatus(
        this.state.sessionId,
        key,
        status,
        filterParams(this.state),
      );
      renderSummary(this.panel("#package-summary"), resp.package_summary, "Package");
      renderSummary(this.panel("#view-summary"), resp.view_summary, "Filtered view");
      await this.refresh(); // recolor affected points
    } catch (err) {
      this.showError(err);
    }
  }

  private showError(err: unknown): void {
    const banner = this.panel("#error-banner");
    banner.hidden = false;
    banner.textContent =
      err instanceof ApiError
        ? `Server error (${err.status}): ${err.message}`
        : `Unexpected error: ${String(err)}`;
  }

  private clearError(): void {
    const banner = this.panel("#error-banner");
    banner.hidden = true;
    banner.textContent = "";
  }
}

export function mount(root: HTMLElement, options: AppOptions = {}): Dashboard {
  const app = new Dashboard(root, options);
  void app.boot();
  return app;
}

declare global {
  interface Window {
    __unsubscope?: Dashboard;
  }
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  window.__unsubscope = mount(document.getElementById("app")!);
}
