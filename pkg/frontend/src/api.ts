import type {
  ChartDescriptor,
  ChartDocument,
  JournalsPage,
  PatchResponse,
  SessionCreated,
  StatusName,
  SummaryResponse,
} from "./types";

export class ApiError extends Error {
  constructor(readonly status: number, detail: string) {
    super(detail);
  }
}

async function asJson<T>(resp: Response): Promise<T> {
  if (!resp.ok) {
    let detail = resp.statusText;
    try {
      const body = (await resp.json()) as { detail?: string };
      if (body.detail) detail = body.detail;
    } catch {
      // non-JSON error body; keep the status text
    }
    throw new ApiError(resp.status, detail);
  }
  return (await resp.json()) as T;
}

function withQuery(path: string, params: Record<string, string>): string {
  const query = new URLSearchParams(params).toString();
  return query ? `${path}?${query}` : path;
}

/** Thin typed client over the session API. */
export class ApiClient {
  constructor(
    readonly base: string = "/api/v1",
    private readonly fetchImpl: typeof fetch = fetch,
  ) {}

  private call(path: string, init?: RequestInit): Promise<Response> {
    return this.fetchImpl(`${this.base}${path}`, init);
  }

  async createSampleSession(): Promise<SessionCreated> {
    const resp = await this.call("/sessions", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ source: "sample" }),
    });
    return asJson(resp);
  }

  async uploadSession(file: File): Promise<SessionCreated> {
    const form = new FormData();
    form.append("file", file);
    const resp = await this.call("/sessions", { method: "POST", body: form });
    return asJson(resp);
  }

  async getSummary(sid: string, params: Record<string, string>): Promise<SummaryResponse> {
    return asJson(await this.call(withQuery(`/sessions/${sid}/summary`, params)));
  }

  async getJournals(
    sid: string,
    params: Record<string, string>,
    pageSize = 1000,
  ): Promise<JournalsPage> {
    const all = { ...params, page_size: String(pageSize) };
    return asJson(await this.call(withQuery(`/sessions/${sid}/journals`, all)));
  }

  async patchStatus(
    sid: string,
    key: string,
    status: StatusName,
    params: Record<string, string>,
  ): Promise<PatchResponse> {
    const resp = await this.call(
      withQuery(`/sessions/${sid}/journals/${encodeURIComponent(key)}`, params),
      {
        method: "PATCH",
        headers: { "content-type": "application/json" },
        body: JSON.stringify({ status }),
      },
    );
    return asJson(resp);
  }

  async getChart(
    sid: string,
    chartId: string,
    params: Record<string, string>,
  ): Promise<ChartDocument> {
    return asJson(await this.call(withQuery(`/sessions/${sid}/charts/${chartId}`, params)));
  }

  async getCatalog(): Promise<ChartDescriptor[]> {
    const body = await asJson<{ charts: ChartDescriptor[] }>(await this.call("/charts/catalog"));
    return body.charts;
  }

  exportUrl(sid: string): string {
    return `${this.base}/sessions/${sid}/export`;
  }

  /** Raw export response; the caller inspects status and headers. */
  async downloadExport(sid: string): Promise<Response> {
    return this.fetchImpl(this.exportUrl(sid));
  }
}
