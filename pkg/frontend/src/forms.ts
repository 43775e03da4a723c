// Question form building and reading, shared by the new-case and edit-case
// pages. Every question can be answered with "Niet bekend" when the schema
// allows it; the unknown answer is sent as null.

import { el } from "./dom.js";
import { NL } from "./locale.js";
import type { AnswerValue, Question } from "./types.js";

export function questionField(question: Question, current?: AnswerValue): HTMLElement {
  const name = `q-${question.fact}`;
  const known = current !== undefined && current !== null;
  const body = el("div", { class: "question-input" });

  if (question.type === "boolean") {
    const options: [string, string][] = [
      ["ja", NL.yes],
      ["nee", NL.no],
    ];
    if (question.allowsUnknown) options.push(["onbekend", NL.unknownOption]);
    for (const [value, label] of options) {
      const radio = el("input", { type: "radio", name, value }) as HTMLInputElement;
      if (
        (value === "ja" && current === true) ||
        (value === "nee" && current === false) ||
        (value === "onbekend" && current === null)
      ) {
        radio.checked = true;
      }
      body.append(el("label", { class: "radio-option" }, radio, " ", label));
    }
  } else {
    const input = el("input", {
      type: question.type === "integer" ? "number" : question.type === "date" ? "date" : "text",
      name,
      class: "question-value",
    }) as HTMLInputElement;
    if (known) input.value = String(current);
    body.append(input);
    if (question.allowsUnknown) {
      const unknown = el("input", {
        type: "checkbox",
        name: `${name}-onbekend`,
        class: "question-unknown",
      }) as HTMLInputElement;
      if (current === null) unknown.checked = true;
      unknown.addEventListener("change", () => {
        input.disabled = unknown.checked;
      });
      input.disabled = unknown.checked;
      body.append(el("label", { class: "unknown-option" }, unknown, " ", NL.unknownOption));
    }
  }

  return el(
    "fieldset",
    { class: "question", "data-fact": question.fact },
    el(
      "legend",
      {},
      question.prompt,
      question.required ? el("span", { class: "required-mark" }, " *") : null,
    ),
    body,
    el("div", { class: "field-message", "data-for": question.fact }),
  );
}

export function readAnswers(
  container: HTMLElement,
  questions: Question[],
): Record<string, AnswerValue> {
  const answers: Record<string, AnswerValue> = {};
  for (const question of questions) {
    const field = container.querySelector<HTMLElement>(
      `fieldset[data-fact="${question.fact}"]`,
    );
    if (!field) continue;
    if (question.type === "boolean") {
      const checked = field.querySelector<HTMLInputElement>("input[type=radio]:checked");
      if (!checked) continue;
      answers[question.fact] =
        checked.value === "onbekend" ? null : checked.value === "ja";
      continue;
    }
    const unknown = field.querySelector<HTMLInputElement>(".question-unknown");
    if (unknown?.checked) {
      answers[question.fact] = null;
      continue;
    }
    const input = field.querySelector<HTMLInputElement>(".question-value");
    if (!input || input.value.trim() === "") continue;
    answers[question.fact] =
      question.type === "integer" ? Number(input.value) : input.value.trim();
  }
  return answers;
}

export function clearFieldMessages(container: HTMLElement): void {
  for (const node of container.querySelectorAll(".field-message")) {
    node.textContent = "";
  }
  for (const node of container.querySelectorAll(".field-error")) {
    node.classList.remove("field-error");
  }
}

export function markFieldErrors(container: HTMLElement, fields: string[]): void {
  clearFieldMessages(container);
  for (const field of fields) {
    const message = container.querySelector<HTMLElement>(
      `.field-message[data-for="${field}"]`,
    );
    if (message) {
      message.textContent = NL.fillRequired;
      message.closest("fieldset, .form-row")?.classList.add("field-error");
    }
  }
}
