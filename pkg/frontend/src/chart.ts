/**
 * Chart rendering: delegates to vega-embed when available, otherwise falls
 * back to a plain JSON dump so the surrounding UI (and tests) keep working
 * in environments without a canvas.
 *
 * Every rendered element carries the source document in `data-chart`, so
 * callers can recover exactly what is on screen.
 */

import { VegaLiteDoc } from "./api";
import { docKey } from "./state";

type EmbedFn = (el: HTMLElement, doc: unknown, opts: unknown) => Promise<unknown>;

let embed: EmbedFn | null | undefined;

async function loadEmbed(): Promise<EmbedFn | null> {
  if (embed === undefined) {
    try {
      const mod = await import("vega-embed");
      embed = (mod.default ?? mod) as EmbedFn;
    } catch {
      embed = null;
    }
  }
  return embed;
}

export async function renderChart(el: HTMLElement, doc: VegaLiteDoc): Promise<void> {
  el.replaceChildren();
  el.setAttribute("data-chart", docKey(doc));
  const fn = await loadEmbed();
  if (fn) {
    try {
      await fn(el, doc, { actions: false });
      return;
    } catch {
      // fall through to the textual rendering
    }
  }
  const pre = document.createElement("pre");
  pre.className = "chart-fallback";
  pre.textContent = JSON.stringify(doc, null, 2);
  el.appendChild(pre);
}
