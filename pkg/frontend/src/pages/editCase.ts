// Edit page: the new-case layout with everything pre-filled. Saving returns
// to the case page, which then highlights any status changes.

import { ApiError } from "../api.js";
import type { AppContext } from "../context.js";
import { clear, el } from "../dom.js";
import { markFieldErrors, questionField, readAnswers } from "../forms.js";
import { NL } from "../locale.js";
import type { AnswerValue, CaseView, Question } from "../types.js";

export async function renderEditCase(
  root: HTMLElement,
  ctx: AppContext,
  caseId: number,
): Promise<void> {
  const [view, questions]: [CaseView, Question[]] = await Promise.all([
    ctx.api.getCase(caseId),
    ctx.api.questions(),
  ]);
  clear(root);

  const decisionTerm = el("input", { type: "date", name: "decision-term" }) as HTMLInputElement;
  decisionTerm.value = view.decisionTerm;
  const notes = el("textarea", { name: "notes" }) as HTMLTextAreaElement;
  notes.value = view.notes;

  const formError = el("div", { class: "form-error", role: "alert" });
  const questionPanel = el(
    "section",
    { class: "questions panel" },
    el("h2", {}, NL.questionsHeader),
    ...questions.map((q) => questionField(q, view.answers[q.fact] as AnswerValue)),
  );

  async function save(): Promise<void> {
    formError.textContent = "";
    try {
      await ctx.api.editCase(caseId, {
        answers: readAnswers(questionPanel, questions),
        decisionTerm: decisionTerm.value || undefined,
        notes: notes.value,
      });
      ctx.navigate(`#/zaak/${caseId}`);
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
        class: "edit-case",
        onsubmit: (event) => {
          event.preventDefault();
          void save();
        },
      },
      el(
        "div",
        { class: "two-columns" },
        el(
          "section",
          { class: "admin-fields panel" },
          el("h2", {}, `${NL.edit}: zaak ${view.id}`),
          el("p", {}, `${NL.clientName}: ${view.client.name}`),
          el(
            "div",
            { class: "form-row", "data-field": "beslistermijn" },
            el("label", {}, NL.decisionTerm, decisionTerm),
            el("div", { class: "field-message", "data-for": "beslistermijn" }),
          ),
          el(
            "div",
            { class: "form-row", "data-field": "notities" },
            el("label", {}, NL.notes, notes),
            el("div", { class: "field-message", "data-for": "notities" }),
          ),
        ),
        questionPanel,
      ),
      formError,
      el(
        "div",
        { class: "form-buttons" },
        el("button", { type: "submit", class: "primary", "data-action": "save-case" }, NL.save),
        el(
          "button",
          {
            type: "button",
            "data-action": "cancel-edit",
            onclick: () => ctx.navigate(`#/zaak/${caseId}`),
          },
          NL.cancel,
        ),
      ),
    ),
  );
}
