/**
 * Session controller: owns the current server view, funnels every user
 * gesture through the API client, and notifies renderers on change.
 */

import { SessionApi, VegaLiteDoc, ViewsResponse } from "./api";

export interface Clock {
  now(): number;
}

const wallClock: Clock = { now: () => Date.now() };

/** Deterministic key for a chart document, independent of property order. */
export function docKey(doc: VegaLiteDoc): string {
  const sortValue = (value: unknown): unknown => {
    if (Array.isArray(value)) return value.map(sortValue);
    if (value !== null && typeof value === "object") {
      const out: Record<string, unknown> = {};
      for (const k of Object.keys(value as object).sort()) {
        out[k] = sortValue((value as Record<string, unknown>)[k]);
      }
      return out;
    }
    return value;
  };
  return JSON.stringify(sortValue(doc));
}

export type Listener = (view: ViewsResponse) => void;

export class SessionController {
  view: ViewsResponse | null = null;
  private listeners: Listener[] = [];
  private hoverStarted = new Map<string, number>();
  private promoteInFlight = false;

  constructor(private api: SessionApi, private clock: Clock = wallClock) {}

  onChange(listener: Listener): void {
    this.listeners.push(listener);
  }

  private update(view: ViewsResponse): ViewsResponse {
    this.view = view;
    for (const listener of this.listeners) listener(view);
    return view;
  }

  private get sessionId(): string {
    if (!this.view) throw new Error("no active session");
    return this.view.session_id;
  }

  async start(dataset: string, algorithm: string): Promise<ViewsResponse> {
    return this.update(await this.api.createSession(dataset, algorithm));
  }

  async toggleField(field: string): Promise<void> {
    this.update(await this.api.toggleField(this.sessionId, field));
  }

  /** Repeat clicks while a promotion is pending are dropped, not queued. */
  async promote(spec: VegaLiteDoc): Promise<void> {
    if (this.promoteInFlight) return;
    this.promoteInFlight = true;
    try {
      this.update(await this.api.promote(this.sessionId, spec));
    } finally {
      this.promoteInFlight = false;
    }
  }

  async bookmark(spec: VegaLiteDoc): Promise<void> {
    this.update(await this.api.bookmark(this.sessionId, spec));
  }

  hoverStart(spec: VegaLiteDoc): void {
    this.hoverStarted.set(docKey(spec), this.clock.now());
  }

  /** Reports the measured dwell time; the server decides what counts. */
  async hoverEnd(spec: VegaLiteDoc): Promise<void> {
    const key = docKey(spec);
    const startedAt = this.hoverStarted.get(key);
    if (startedAt === undefined) return;
    this.hoverStarted.delete(key);
    await this.api.hover(this.sessionId, spec, this.clock.now() - startedAt);
  }

  async loadMore(): Promise<void> {
    this.update(await this.api.loadMore(this.sessionId));
  }

  async exportLog(): Promise<string> {
    return this.api.log(this.sessionId);
  }
}
