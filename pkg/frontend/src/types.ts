/** Payload shapes of the /api/v1 contract. The UI never derives metrics
 *  itself; every number on screen comes from one of these responses. */

export type StatusName = "TRUE" | "FALSE" | "MAYBE" | "BLANK";

export const STATUS_NAMES: StatusName[] = ["TRUE", "FALSE", "MAYBE", "BLANK"];

export const STATUS_COLORS: Record<StatusName, string> = {
  TRUE: "blue",
  FALSE: "red",
  MAYBE: "green",
  BLANK: "gray",
};

export interface StatusBucket {
  titles: number;
  dollars: number;
}

export interface SummaryTable {
  TRUE: StatusBucket;
  FALSE: StatusBucket;
  MAYBE: StatusBucket;
  BLANK: StatusBucket;
  total_titles: number;
  total_dollars: number;
}

export type MetricName =
  | "price"
  | "cpu_rank"
  | "downloads"
  | "citations"
  | "authorships"
  | "usage"
  | "oa_percent";

export const METRIC_NAMES: MetricName[] = [
  "price",
  "cpu_rank",
  "downloads",
  "citations",
  "authorships",
  "usage",
  "oa_percent",
];

export const METRIC_LABELS: Record<MetricName, string> = {
  price: "Price (USD)",
  cpu_rank: "CPU rank",
  downloads: "Downloads",
  citations: "Citations",
  authorships: "Authorships",
  usage: "Weighted usage",
  oa_percent: "Open access %",
};

export type Bounds = Record<MetricName, [number, number] | null>;

export interface SessionCreated {
  session_id: string;
  n: number;
  warnings: { code: string; key: string | null; detail: string }[];
  summary: SummaryTable;
  bounds: Bounds;
}

export interface SummaryResponse {
  n: number;
  package: SummaryTable;
  view: SummaryTable;
  bounds: Bounds;
}

export interface JournalRow {
  key: string;
  title: string;
  price: number;
  usage: number;
  cpu_rank: number;
  status: StatusName;
  if_percent: number;
}

export interface JournalsPage {
  total: number;
  page: number;
  page_size: number;
  records: JournalRow[];
}

export interface PatchResponse {
  key: string;
  status: StatusName;
  package_summary: SummaryTable;
  view_summary: SummaryTable;
}

export interface ChartDescriptor {
  chart_id: string;
  title: string;
  link_group: string | null;
}

/** A self-contained Vega-Lite document; rendered verbatim. */
export interface ChartDocument {
  $schema: string;
  usermeta: {
    chart_id: string;
    link_group: string | null;
    excluded_undefined_rows: number;
    excluded_nonpositive_log_rows: number;
  };
  data: { values: Record<string, unknown>[] };
  [key: string]: unknown;
}
