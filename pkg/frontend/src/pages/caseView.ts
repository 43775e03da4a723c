// Case page: administrative details on the left, the completed (Afgerond)
// and pending (Vervolg) action lists on the right.
//
// Two findings from user testing drive this page: the violation warning sign
// must actually expand into an explanation when clicked, and status changes
// after an edit must be visibly flagged.

import { statusBadge } from "../badges.js";
import { ApiError } from "../api.js";
import type { AppContext } from "../context.js";
import { clear, el, formatDate, formatDateTime } from "../dom.js";
import { CASE_STATUS_LABELS, NL, OUTCOME_LABELS, STATUS_LABELS } from "../locale.js";
import type {
  ActionsView,
  CaseView,
  CompletedAction,
  PendingAction,
  SourceRef,
  Violation,
} from "../types.js";

// Last rendered status per act per case, to flag what just changed.
const lastStatuses = new Map<number, Record<string, string>>();

export function resetStatusMemory(): void {
  lastStatuses.clear();
}

function sourceLinks(sources: SourceRef[]): HTMLElement {
  const list = el("span", { class: "source-links" });
  sources.forEach((source, i) => {
    if (i > 0) list.append(", ");
    list.append(
      source.url
        ? el("a", { href: source.url, target: "_blank", rel: "noopener" }, source.title)
        : el("span", {}, source.title),
    );
  });
  return list;
}

function violationDetails(violation: Violation): HTMLElement {
  return el(
    "div",
    { class: "violation-details" },
    el("h4", {}, NL.violationHeader),
    el("p", { class: "violation-explanation" }, violation.explanation),
    violation.motivation
      ? el("p", { class: "violation-motivation" }, `${NL.motivation}: ${violation.motivation}`)
      : null,
    violation.sources.length
      ? el("p", {}, `${NL.relevantSources}: `, sourceLinks(violation.sources))
      : null,
  );
}

function completedItem(action: CompletedAction): HTMLElement {
  const item = el(
    "li",
    { class: "action completed-action", "data-act": action.naam },
    el("div", { class: "action-head" },
      el("strong", {}, action.naam),
      " ",
      statusBadge(action.status),
    ),
    el(
      "div",
      { class: "action-meta" },
      `${NL.executedOn} ${formatDateTime(action.uitgevoerdOp)} (${action.uitgevoerdDoor})`,
    ),
    action.motivatie
      ? el("div", { class: "action-motivation" }, `${NL.motivation}: ${action.motivatie}`)
      : null,
  );
  if (action.violation) {
    const details = violationDetails(action.violation);
    details.hidden = true;
    const sign = el(
      "button",
      {
        class: "violation-sign",
        "aria-expanded": "false",
        title: NL.violationHeader,
        onclick: () => {
          details.hidden = !details.hidden;
          sign.setAttribute("aria-expanded", details.hidden ? "false" : "true");
        },
      },
      NL.violationSign,
    );
    item.querySelector(".action-head")?.append(" ", sign);
    item.append(details);
  }
  return item;
}

function pendingItem(
  ctx: AppContext,
  caseId: number,
  action: PendingAction,
  changed: boolean,
  rerender: () => Promise<void>,
): HTMLElement {
  const reasons = el(
    "ul",
    { class: "reasons" },
    ...action.redenen.map((reason) =>
      el(
        "li",
        { class: `reason reason-${reason.truth}` },
        el("code", {}, reason.clause),
        ` — ${STATUS_LABELS[reason.truth === "true" ? "toegestaan" : reason.truth === "false" ? "niet_toegestaan" : "onbestemd"] ?? reason.truth}`,
      ),
    ),
  );
  reasons.hidden = true;

  const executeButton = el(
    "button",
    {
      class: action.status === "niet_toegestaan" ? "execute danger" : "execute",
      "data-act": action.naam,
      onclick: () => {
        if (action.motivationRequired) {
          openMotivationDialog(item, ctx, caseId, action.naam, rerender);
        } else {
          void ctx.api.executeAction(caseId, action.naam).then(rerender);
        }
      },
    },
    NL.executeAction,
  );

  const item = el(
    "li",
    { class: changed ? "action pending-action status-changed" : "action pending-action", "data-act": action.naam },
    el(
      "div",
      { class: "action-head" },
      el("strong", {}, action.naam),
      " ",
      statusBadge(action.status),
      changed ? el("em", { class: "changed-marker" }, ` (${NL.changed})`) : null,
    ),
    el(
      "div",
      { class: "action-meta" },
      `${NL.relevantSources}: `,
      sourceLinks(action.bronnen),
    ),
    el(
      "button",
      {
        class: "why-toggle",
        onclick: () => {
          reasons.hidden = !reasons.hidden;
        },
      },
      NL.whyNotAllowed,
    ),
    reasons,
    executeButton,
  );
  return item;
}

function openMotivationDialog(
  host: HTMLElement,
  ctx: AppContext,
  caseId: number,
  act: string,
  rerender: () => Promise<void>,
): void {
  host.querySelector(".motivation-dialog")?.remove();
  const textarea = el("textarea", { class: "motivation-input" }) as HTMLTextAreaElement;
  const error = el("div", { class: "form-error" });
  const dialog = el(
    "div",
    { class: "motivation-dialog warning", role: "dialog" },
    el("p", { class: "warning-text" }, NL.motivationRequired),
    textarea,
    error,
    el(
      "div",
      { class: "dialog-buttons" },
      el(
        "button",
        {
          class: "danger confirm-execute",
          onclick: () => {
            const motivation = textarea.value.trim();
            if (!motivation) {
              error.textContent = NL.fillRequired;
              return;
            }
            void ctx.api.executeAction(caseId, act, motivation).then(rerender);
          },
        },
        NL.confirmExecute,
      ),
      el("button", { class: "cancel-execute", onclick: () => dialog.remove() }, NL.cancel),
    ),
  );
  host.append(dialog);
}

function adminPanel(ctx: AppContext, view: CaseView): HTMLElement {
  const rows: [string, Node | string][] = [
    [NL.clientName, view.client.name],
    [NL.clientKind, view.client.kind],
    [NL.caseType, view.caseType],
    [NL.colStatus, CASE_STATUS_LABELS[view.status] ?? view.status],
    [NL.createdOn, formatDate(view.createdOn)],
    [NL.decisionTerm, formatDate(view.decisionTerm)],
    [NL.lastModified, formatDateTime(view.lastModified)],
    [NL.notes, view.notes || "—"],
  ];
  if (view.outcome) {
    rows.push([NL.outcome, OUTCOME_LABELS[view.outcome] ?? view.outcome]);
  }
  if (view.amount !== null) {
    rows.push([NL.amount, `€ ${view.amount}`]);
  }
  return el(
    "section",
    { class: "case-admin panel" },
    el(
      "h2",
      {},
      `Zaak ${view.id}`,
      " ",
      el(
        "button",
        {
          class: "edit-case",
          title: NL.edit,
          onclick: () => ctx.navigate(`#/zaak/${view.id}/bewerken`),
        },
        "✎",
      ),
    ),
    el(
      "dl",
      { class: "case-details" },
      ...rows.flatMap(([label, value]) => [el("dt", {}, label), el("dd", {}, value)]),
    ),
  );
}

export async function renderCaseView(
  root: HTMLElement,
  ctx: AppContext,
  caseId: number,
): Promise<void> {
  const [view, actions]: [CaseView, ActionsView] = await Promise.all([
    ctx.api.getCase(caseId),
    ctx.api.caseActions(caseId),
  ]);
  clear(root);

  const current: Record<string, string> = {};
  for (const a of actions.vervolg) current[a.naam] = a.status;
  for (const a of actions.afgerond) current[`${a.naam}!done`] = a.status;
  const previous = lastStatuses.get(caseId);
  const changedActs = new Set(
    previous
      ? Object.keys(current).filter((k) => previous[k] !== undefined && previous[k] !== current[k])
      : [],
  );
  lastStatuses.set(caseId, current);

  const rerender = () => renderCaseView(root, ctx, caseId);

  const completed = el(
    "section",
    { class: "completed panel" },
    el("h3", {}, NL.completed),
    actions.afgerond.length
      ? el("ul", { class: "action-list" }, ...actions.afgerond.map(completedItem))
      : el("p", { class: "empty" }, "—"),
  );
  const pending = el(
    "section",
    { class: "pending panel" },
    el("h3", {}, NL.followUp),
    changedActs.size
      ? el("p", { class: "hint status-change-hint" }, NL.statusChangedHint)
      : null,
    actions.vervolg.length
      ? el(
          "ul",
          { class: "action-list" },
          ...actions.vervolg.map((a) =>
            pendingItem(ctx, caseId, a, changedActs.has(a.naam), rerender),
          ),
        )
      : el("p", { class: "empty" }, "—"),
  );

  root.append(
    el(
      "div",
      { class: "case-page two-columns" },
      adminPanel(ctx, view),
      el("div", { class: "case-actions" }, completed, pending),
    ),
  );
}
