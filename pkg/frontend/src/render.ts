/**
 * DOM rendering for the exploration UI.
 *
 * Layout: a header with dataset/algorithm, a data panel of field checkboxes
 * (capped at three selected), the specified view, the related-views gallery
 * with per-card promote/bookmark controls and a Load More button, and the
 * bookmark gallery.
 */

import { RelatedItem, ViewsResponse } from "./api";
import { renderChart } from "./chart";
import { docKey, SessionController } from "./state";

const MAX_SELECTED = 3;

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function renderHeader(view: ViewsResponse): HTMLElement {
  const header = el("header", "top-panel");
  header.appendChild(el("h1", undefined, "Visualization recommendations"));
  header.appendChild(
    el("p", "session-meta", `${view.dataset} · ${view.algorithm} · ${view.session_id}`),
  );
  return header;
}

function renderFields(view: ViewsResponse, controller: SessionController): HTMLElement {
  const panel = el("section", "data-panel");
  panel.appendChild(el("h2", undefined, "Data"));
  const list = el("ul", "field-list");
  const atCap = view.selection.length >= MAX_SELECTED;
  for (const field of view.fields) {
    const item = el("li", `field field-${field.type}`);
    const label = el("label");
    const box = el("input");
    box.type = "checkbox";
    box.checked = field.selected;
    box.disabled = atCap && !field.selected;
    box.setAttribute("data-field", field.name);
    box.addEventListener("change", () => void controller.toggleField(field.name));
    label.appendChild(box);
    label.appendChild(el("span", undefined, ` ${field.name} (${field.type})`));
    item.appendChild(label);
    list.appendChild(item);
  }
  panel.appendChild(list);
  return panel;
}

function renderSpecified(view: ViewsResponse): HTMLElement {
  const panel = el("section", "specified-panel");
  panel.appendChild(el("h2", undefined, "Specified view"));
  const slot = el("div", "specified-chart");
  slot.id = "specified";
  if (view.specified) {
    void renderChart(slot, view.specified);
  } else {
    slot.appendChild(el("p", "placeholder", "Select fields to specify a view."));
  }
  panel.appendChild(slot);
  return panel;
}

function renderCard(
  item: RelatedItem,
  view: ViewsResponse,
  controller: SessionController,
): HTMLElement {
  const card = el("article", "related-card");
  const chart = el("div", "chart");
  void renderChart(chart, item.spec);
  card.appendChild(chart);

  card.addEventListener("pointerenter", () => controller.hoverStart(item.spec));
  card.addEventListener("pointerleave", () => void controller.hoverEnd(item.spec));

  const bar = el("div", "card-actions");
  const promote = el("button", "promote-btn", "Promote");
  promote.addEventListener("click", () => void controller.promote(item.spec));
  bar.appendChild(promote);

  const bookmarked = view.bookmarks.some((b) => docKey(b) === docKey(item.spec));
  const bookmark = el("button", "bookmark-btn", bookmarked ? "Unbookmark" : "Bookmark");
  bookmark.addEventListener("click", () => void controller.bookmark(item.spec));
  bar.appendChild(bookmark);

  bar.appendChild(el("span", "score", item.score.toFixed(2)));
  card.appendChild(bar);
  return card;
}

function renderRelated(view: ViewsResponse, controller: SessionController): HTMLElement {
  const panel = el("section", "related-panel");
  panel.appendChild(el("h2", undefined, `Related views (page ${view.related.page_index + 1})`));
  const gallery = el("div", "related-gallery");
  gallery.id = "related";
  for (const item of view.related.items) {
    gallery.appendChild(renderCard(item, view, controller));
  }
  panel.appendChild(gallery);
  if (view.related.has_more) {
    const more = el("button", "load-more", "Load More");
    more.id = "load-more";
    more.addEventListener("click", () => void controller.loadMore());
    panel.appendChild(more);
  }
  return panel;
}

function renderBookmarks(view: ViewsResponse): HTMLElement {
  const panel = el("section", "bookmark-panel");
  panel.appendChild(el("h2", undefined, `Bookmarks (${view.bookmarks.length})`));
  const gallery = el("div", "bookmark-gallery");
  gallery.id = "bookmarks";
  for (const doc of view.bookmarks) {
    const chart = el("div", "chart");
    void renderChart(chart, doc);
    gallery.appendChild(chart);
  }
  panel.appendChild(gallery);
  return panel;
}

export function render(root: HTMLElement, view: ViewsResponse, controller: SessionController): void {
  root.replaceChildren(
    renderHeader(view),
    renderFields(view, controller),
    renderSpecified(view),
    renderRelated(view, controller),
    renderBookmarks(view),
  );
}

/** Wire a controller to a root element: re-render on every state change. */
export function mount(root: HTMLElement, controller: SessionController): void {
  controller.onChange((view) => render(root, view, controller));
  if (controller.view) render(root, controller.view, controller);
}
