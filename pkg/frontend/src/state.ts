import type { Bounds, MetricName, StatusName, SummaryTable } from "./types";
import { METRIC_NAMES, STATUS_NAMES } from "./types";

/** Active slider positions, always inside the loaded package's bounds. */
export type RangeState = Partial<Record<MetricName, [number, number]>>;

export interface ViewState {
  sessionId: string;
  bounds: Bounds;
  ranges: RangeState;
  statuses: Set<StatusName>;
  summary: SummaryTable | null;
  viewSummary: SummaryTable | null;
  dirty: boolean;
}

export function initialState(sessionId: string, bounds: Bounds): ViewState {
  return {
    sessionId,
    bounds,
    ranges: {},
    statuses: new Set(STATUS_NAMES),
    summary: null,
    viewSummary: null,
    dirty: false,
  };
}

export function clampToBounds(
  lo: number,
  hi: number,
  bounds: [number, number] | null,
): [number, number] {
  if (bounds) {
    lo = Math.max(bounds[0], Math.min(lo, bounds[1]));
    hi = Math.max(bounds[0], Math.min(hi, bounds[1]));
  }
  if (lo > hi) lo = hi;
  return [lo, hi];
}

/** Translate slider state into the server's filter query parameters,
 *  omitting ranges that sit at the full data extent (no-op filters). */
export function filterParams(state: ViewState): Record<string, string> {
  const params: Record<string, string> = {};
  for (const name of METRIC_NAMES) {
    const range = state.ranges[name];
    const bounds = state.bounds[name];
    if (!range) continue;
    if (bounds && range[0] === bounds[0] && range[1] === bounds[1]) continue;
    params[`${name}_min`] = String(range[0]);
    params[`${name}_max`] = String(range[1]);
  }
  if (state.statuses.size < STATUS_NAMES.length) {
    params.statuses = STATUS_NAMES.filter((s) => state.statuses.has(s)).join(",");
  }
  return params;
}

export function setRange(state: ViewState, metric: MetricName, lo: number, hi: number): ViewState {
  const clamped = clampToBounds(lo, hi, state.bounds[metric]);
  return { ...state, ranges: { ...state.ranges, [metric]: clamped }, dirty: true };
}

export function resetRanges(state: ViewState): ViewState {
  return { ...state, ranges: {}, statuses: new Set(STATUS_NAMES), dirty: true };
}

export function toggleStatus(state: ViewState, status: StatusName): ViewState {
  const statuses = new Set(state.statuses);
  if (statuses.has(status)) {
    if (statuses.size > 1) statuses.delete(status); // never filter to nothing
  } else {
    statuses.add(status);
  }
  return { ...state, statuses, dirty: true };
}

export function debounce<Args extends unknown[]>(
  fn: (...args: Args) => void,
  waitMs: number,
): { (...args: Args): void; cancel(): void } {
  let timer: ReturnType<typeof setTimeout> | null = null;
  const wrapped = (...args: Args) => {
    if (timer !== null) clearTimeout(timer);
    timer = setTimeout(() => {
      timer = null;
      fn(...args);
    }, waitMs);
  };
  wrapped.cancel = () => {
    if (timer !== null) clearTimeout(timer);
    timer = null;
  };
  return wrapped;
}

/** Monotonic token source; stale chart responses are discarded by sequence. */
export class RequestSequencer {
  private current = 0;

  issue(): number {
    return ++this.current;
  }

  isCurrent(token: number): boolean {
    return token === this.current;
  }
}

/** Case-insensitive title search mirroring the server's ordering:
 *  match position first, then title. */
export function searchTitles(
  rows: { key: string; title: string }[],
  query: string,
): { key: string; title: string }[] {
  const needle = query.trim().toLowerCase();
  if (!needle) return [];
  const hits: { pos: number; key: string; title: string }[] = [];
  for (const row of rows) {
    const pos = row.title.toLowerCase().indexOf(needle);
    if (pos >= 0) hits.push({ pos, key: row.key, title: row.title });
  }
  hits.sort((a, b) => a.pos - b.pos || a.title.localeCompare(b.title));
  return hits.map(({ key, title }) => ({ key, title }));
}
