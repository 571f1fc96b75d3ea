/**
 * Typed client for the recommendation session service.
 *
 * All mutating calls for one session are serialized through a promise chain,
 * so the server never sees interleaved writes from a single tab.
 */

export interface VegaLiteDoc {
  $schema?: string;
  data?: unknown;
  mark: string;
  encoding: Record<string, Record<string, unknown>>;
}

export interface FieldInfo {
  name: string;
  type: "nominal" | "temporal" | "quantitative";
  selected: boolean;
}

export interface RelatedItem {
  spec: VegaLiteDoc;
  score: number;
  node: string[];
}

export interface RelatedPage {
  page_index: number;
  has_more: boolean;
  items: RelatedItem[];
}

export interface ViewsResponse {
  session_id: string;
  dataset: string;
  algorithm: string;
  fields: FieldInfo[];
  selection: string[];
  specified: VegaLiteDoc | null;
  related: RelatedPage;
  bookmarks: VegaLiteDoc[];
}

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

async function decode<T>(resp: Response): Promise<T> {
  if (!resp.ok) {
    let detail = resp.statusText;
    try {
      const body = await resp.json();
      detail = body.detail ?? detail;
    } catch {
      // non-JSON error body; keep the status text
    }
    throw new ApiError(resp.status, detail);
  }
  return resp.json() as Promise<T>;
}

export class SessionApi {
  private writeQueue: Promise<unknown> = Promise.resolve();

  constructor(private baseUrl: string) {}

  private get(path: string): Promise<Response> {
    return fetch(`${this.baseUrl}${path}`);
  }

  /** Serialize mutations: each write starts after the previous one settled. */
  private post<T>(path: string, body?: unknown): Promise<T> {
    const run = () =>
      fetch(`${this.baseUrl}${path}`, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: body === undefined ? undefined : JSON.stringify(body),
      }).then((r) => decode<T>(r));
    const result = this.writeQueue.then(run, run);
    this.writeQueue = result.catch(() => undefined);
    return result;
  }

  datasets(): Promise<{ datasets: string[] }> {
    return this.get("/datasets").then((r) => decode(r));
  }

  algorithms(): Promise<{ algorithms: string[] }> {
    return this.get("/algorithms").then((r) => decode(r));
  }

  createSession(dataset: string, algorithm: string): Promise<ViewsResponse> {
    return this.post("/sessions", { dataset, algorithm });
  }

  views(sessionId: string): Promise<ViewsResponse> {
    return this.get(`/sessions/${sessionId}/views`).then((r) => decode(r));
  }

  toggleField(sessionId: string, field: string): Promise<ViewsResponse> {
    return this.post(`/sessions/${sessionId}/fields/${encodeURIComponent(field)}/toggle`);
  }

  promote(sessionId: string, spec: VegaLiteDoc): Promise<ViewsResponse> {
    return this.post(`/sessions/${sessionId}/promote`, { spec });
  }

  bookmark(sessionId: string, spec: VegaLiteDoc): Promise<ViewsResponse & { bookmarked: boolean }> {
    return this.post(`/sessions/${sessionId}/bookmark`, { spec });
  }

  hover(sessionId: string, spec: VegaLiteDoc, durationMs: number): Promise<{ ok: boolean }> {
    return this.post(`/sessions/${sessionId}/hover`, {
      spec,
      duration_ms: Math.round(durationMs),
    });
  }

  loadMore(sessionId: string): Promise<ViewsResponse> {
    return this.post(`/sessions/${sessionId}/more`);
  }

  log(sessionId: string): Promise<string> {
    return this.get(`/sessions/${sessionId}/log`).then((r) => {
      if (!r.ok) throw new ApiError(r.status, r.statusText);
      return r.text();
    });
  }
}
