// Home page: the action list first (the to-do list users asked to make
// primary), then the ongoing-cases table, then frequently used sources.

import { statusBadge, urgencyClock } from "../badges.js";
import type { AppContext } from "../context.js";
import { clear, el, formatDate, formatDateTime } from "../dom.js";
import { CASE_STATUS_LABELS, NL } from "../locale.js";
import type { CaseSummary, OpenActionEntry, SourceRef } from "../types.js";

type SortKey = "termijn" | "actie";
type SortOrder = "asc" | "desc";

const sortState: { key: SortKey; order: SortOrder } = { key: "termijn", order: "asc" };

function caseRow(ctx: AppContext, summary: CaseSummary): HTMLElement {
  return el(
    "tr",
    { "data-case-id": String(summary.id) },
    el("td", {}, summary.naam),
    el("td", {}, CASE_STATUS_LABELS[summary.status] ?? summary.status),
    el("td", {}, formatDate(summary.termijn), " ", urgencyClock(summary.urgency)),
    el(
      "td",
      {},
      el(
        "button",
        { class: "open-case", onclick: () => ctx.navigate(`#/zaak/${summary.id}`) },
        NL.open,
      ),
    ),
  );
}

function actionBlock(ctx: AppContext, entry: OpenActionEntry): HTMLElement {
  return el(
    "div",
    { class: "action-block", "data-case-id": String(entry.case.id) },
    el("strong", {}, entry.case.naam),
    el("div", { class: "action-name" }, entry.action),
    el(
      "div",
      { class: "action-term" },
      `${NL.colTerm}: ${formatDate(entry.term)} `,
      urgencyClock(entry.case.urgency),
    ),
    el(
      "button",
      { class: "open-case", onclick: () => ctx.navigate(`#/zaak/${entry.case.id}`) },
      NL.open,
    ),
  );
}

function sourceItem(source: SourceRef): HTMLElement {
  const item = el("li", { class: "source-item" });
  if (source.url) {
    item.append(el("a", { href: source.url, target: "_blank", rel: "noopener" }, source.title));
  } else {
    item.append(source.title);
  }
  if (source.applicableFrom) {
    item.append(` (vanaf ${formatDate(source.applicableFrom)})`);
  }
  return item;
}

export async function renderDashboard(root: HTMLElement, ctx: AppContext): Promise<void> {
  const [openActions, cases, sources] = await Promise.all([
    ctx.api.openActions(),
    ctx.api.listCases({ sort: sortState.key, order: sortState.order }),
    ctx.api.sources(),
  ]);
  clear(root);

  const ongoing = cases.items.filter((c) => c.status !== "afgerond");

  // Openstaande acties: deliberately first and visually distinct, with a
  // caption saying what makes it different from the case overview.
  const actionsSection = el(
    "section",
    { class: "open-actions panel" },
    el("h2", {}, NL.openActions),
    el("p", { class: "hint" }, NL.openActionsHint),
    openActions.length
      ? el("div", { class: "action-blocks" }, ...openActions.map((e) => actionBlock(ctx, e)))
      : el("p", { class: "empty" }, NL.emptyActions),
  );

  const termHeader = el(
    "button",
    {
      class: "sort-header",
      "data-sort": "termijn",
      onclick: () => {
        sortState.order =
          sortState.key === "termijn" && sortState.order === "asc" ? "desc" : "asc";
        sortState.key = "termijn";
        void renderDashboard(root, ctx);
      },
    },
    NL.colTerm,
    " ⇅",
  );
  const sortSelect = el("select", {
    class: "sort-select",
    onchange: (event) => {
      const value = (event.target as HTMLSelectElement).value;
      const [key, order] = value.split("-") as [SortKey, SortOrder];
      sortState.key = key;
      sortState.order = order;
      void renderDashboard(root, ctx);
    },
  }) as HTMLSelectElement;
  for (const [value, label] of [
    ["termijn-asc", `${NL.colTerm} ↑`],
    ["termijn-desc", `${NL.colTerm} ↓`],
    ["actie-asc", `${NL.colAction} ↑`],
    ["actie-desc", `${NL.colAction} ↓`],
  ]) {
    const option = el("option", { value }, label) as HTMLOptionElement;
    option.selected = value === `${sortState.key}-${sortState.order}`;
    sortSelect.append(option);
  }

  const casesSection = el(
    "section",
    { class: "ongoing-cases" },
    el("div", { class: "section-head" }, el("h2", {}, NL.ongoingCases), sortSelect),
    ongoing.length
      ? el(
          "table",
          { class: "cases-table" },
          el(
            "thead",
            {},
            el(
              "tr",
              {},
              el("th", {}, NL.colName),
              el("th", {}, NL.colStatus),
              el("th", {}, termHeader),
              el("th", {}, NL.colOpen),
            ),
          ),
          el("tbody", {}, ...ongoing.map((c) => caseRow(ctx, c))),
        )
      : el("p", { class: "empty" }, NL.emptyCases),
  );

  const sourcesSection = el(
    "section",
    { class: "sources" },
    el("h2", {}, NL.sources),
    sources.length
      ? el("ul", { class: "source-list" }, ...sources.map(sourceItem))
      : el("p", { class: "empty" }, NL.emptySources),
  );

  root.append(
    el("div", { class: "dashboard" }, actionsSection, casesSection, sourcesSection),
  );
}

export function dashboardSortState(): { key: string; order: string } {
  return { ...sortState };
}
