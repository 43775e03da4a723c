// New-case page: administrative fields left, the model's questions right.
// Creation date and decision term come pre-filled; users should never have
// to invent them.

import { ApiError } from "../api.js";
import type { AppContext } from "../context.js";
import { clear, el, plusDaysIso, todayIso } from "../dom.js";
import { markFieldErrors, questionField, readAnswers } from "../forms.js";
import { NL } from "../locale.js";
import type { Question } from "../types.js";

const DEFAULT_DECISION_PERIOD_DAYS = 56;

function adminRow(
  label: string,
  fieldName: string,
  input: HTMLElement,
): HTMLElement {
  return el(
    "div",
    { class: "form-row", "data-field": fieldName },
    el("label", {}, label, input),
    el("div", { class: "field-message", "data-for": fieldName }),
  );
}

export async function renderNewCase(root: HTMLElement, ctx: AppContext): Promise<void> {
  const questions: Question[] = await ctx.api.questions();
  clear(root);

  const name = el("input", { type: "text", name: "client-name" }) as HTMLInputElement;
  const kind = el(
    "select",
    { name: "client-kind" },
    el("option", { value: "civilian" }, NL.kindCivilian),
    el("option", { value: "organisation" }, NL.kindOrganisation),
    el("option", { value: "government" }, NL.kindGovernment),
  ) as HTMLSelectElement;
  const caseType = el("input", { type: "text", name: "case-type" }) as HTMLInputElement;
  caseType.value = "IIT-aanvraag";
  const createdOn = el("input", { type: "date", name: "created-on" }) as HTMLInputElement;
  createdOn.value = todayIso();
  const decisionTerm = el("input", { type: "date", name: "decision-term" }) as HTMLInputElement;
  decisionTerm.value = plusDaysIso(DEFAULT_DECISION_PERIOD_DAYS);
  const notes = el("textarea", { name: "notes" }) as HTMLTextAreaElement;

  const formError = el("div", { class: "form-error", role: "alert" });
  const questionPanel = el(
    "section",
    { class: "questions panel" },
    el("h2", {}, NL.questionsHeader),
    ...questions.map((q) => questionField(q)),
  );

  const adminPanel = el(
    "section",
    { class: "admin-fields panel" },
    el("h2", {}, NL.newCase),
    adminRow(NL.clientName, "naam klant", name),
    adminRow(NL.clientKind, "soort klant", kind),
    adminRow(NL.caseType, "type zaak", caseType),
    adminRow(NL.createdOn, "aanmaakdatum", createdOn),
    adminRow(NL.decisionTerm, "beslistermijn", decisionTerm),
    adminRow(NL.notes, "notities", notes),
  );

  async function submit(): Promise<void> {
    formError.textContent = "";
    try {
      const view = await ctx.api.createCase({
        client: { name: name.value.trim(), kind: kind.value },
        caseType: caseType.value.trim(),
        createdOn: createdOn.value || undefined,
        decisionTerm: decisionTerm.value || undefined,
        notes: notes.value,
        answers: readAnswers(questionPanel, questions),
      });
      ctx.navigate(`#/zaak/${view.id}`);
    } catch (exc) {
      if (exc instanceof ApiError && exc.code === "validation_error") {
        formError.textContent = NL.fillRequired;
        markFieldErrors(root, exc.fields);
      } else {
        throw exc;
      }
    }
  }

  root.append(
    el(
      "form",
      {
        class: "new-case",
        onsubmit: (event) => {
          event.preventDefault();
          void submit();
        },
      },
      el("div", { class: "two-columns" }, adminPanel, questionPanel),
      formError,
      el("button", { type: "submit", class: "primary", "data-action": "submit-case" }, NL.next),
    ),
  );
}
