// Zaken tab: the full table with extra columns, search, a date filter and
// sortable headers; the functionality that sets it apart from the dashboard.

import { urgencyClock } from "../badges.js";
import type { AppContext } from "../context.js";
import { clear, el, formatDate, formatDateTime } from "../dom.js";
import { CASE_STATUS_LABELS, NL } from "../locale.js";
import type { CaseSummary } from "../types.js";

type SortKey = "naam" | "termijn" | "actie" | "gewijzigd";

const state = {
  sort: "termijn" as SortKey,
  order: "asc" as "asc" | "desc",
  q: "",
  from: "",
  to: "",
};

export function resetOverviewState(): void {
  state.sort = "termijn";
  state.order = "asc";
  state.q = "";
  state.from = "";
  state.to = "";
}

function row(ctx: AppContext, summary: CaseSummary): HTMLElement {
  return el(
    "tr",
    { "data-case-id": String(summary.id) },
    el("td", {}, summary.naam),
    el("td", {}, summary.type),
    el("td", {}, CASE_STATUS_LABELS[summary.status] ?? summary.status),
    el("td", {}, formatDate(summary.termijn), " ", urgencyClock(summary.urgency)),
    el("td", {}, summary.actie ?? "—"),
    el("td", {}, formatDateTime(summary.gewijzigd)),
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

export async function renderCasesOverview(root: HTMLElement, ctx: AppContext): Promise<void> {
  const params: Record<string, string> = { sort: state.sort, order: state.order };
  if (state.q) params.q = state.q;
  if (state.from) params.from = state.from;
  if (state.to) params.to = state.to;
  const cases = await ctx.api.listCases(params);
  clear(root);

  const rerender = () => void renderCasesOverview(root, ctx);

  function sortableHeader(label: string, key: SortKey): HTMLElement {
    const active = state.sort === key;
    return el(
      "th",
      {},
      el(
        "button",
        {
          class: active ? "sort-header active" : "sort-header",
          "data-sort": key,
          onclick: () => {
            state.order = active && state.order === "asc" ? "desc" : "asc";
            state.sort = key;
            rerender();
          },
        },
        label,
        active ? (state.order === "asc" ? " ↑" : " ↓") : " ⇅",
      ),
    );
  }

  const search = el("input", {
    type: "search",
    class: "search-box",
    placeholder: NL.searchPlaceholder,
  }) as HTMLInputElement;
  search.value = state.q;
  search.addEventListener("change", () => {
    state.q = search.value.trim();
    rerender();
  });
  const from = el("input", { type: "date", class: "filter-from" }) as HTMLInputElement;
  from.value = state.from;
  from.addEventListener("change", () => {
    state.from = from.value;
    rerender();
  });
  const to = el("input", { type: "date", class: "filter-to" }) as HTMLInputElement;
  to.value = state.to;
  to.addEventListener("change", () => {
    state.to = to.value;
    rerender();
  });

  root.append(
    el(
      "div",
      { class: "cases-overview" },
      el(
        "div",
        { class: "toolbar" },
        search,
        el("label", {}, NL.filterFrom, from),
        el("label", {}, NL.filterTo, to),
      ),
      cases.items.length
        ? el(
            "table",
            { class: "cases-table full" },
            el(
              "thead",
              {},
              el(
                "tr",
                {},
                sortableHeader(NL.colName, "naam"),
                el("th", {}, NL.colType),
                el("th", {}, NL.colStatus),
                sortableHeader(NL.colTerm, "termijn"),
                sortableHeader(NL.colAction, "actie"),
                sortableHeader(NL.colModified, "gewijzigd"),
                el("th", {}, NL.colOpen),
              ),
            ),
            el("tbody", {}, ...cases.items.map((c) => row(ctx, c))),
          )
        : el("p", { class: "empty" }, NL.emptyTable),
    ),
  );
}
