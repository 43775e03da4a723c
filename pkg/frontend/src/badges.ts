// Status and urgency markers. Every semantic distinction carries a distinct
// glyph besides its color, so the interface survives a grayscale filter; one
// of the interviewed officers is colorblind and asked for exactly this.

import { el } from "./dom.js";
import { NL, STATUS_LABELS } from "./locale.js";
import type { StatusToken, Urgency, UrgencyColorToken } from "./types.js";

export const STATUS_GLYPHS: Record<StatusToken, string> = {
  toegestaan: "✓", // check mark
  niet_toegestaan: "✕", // cross
  onbestemd: "?",
};

export const URGENCY_GLYPHS: Record<UrgencyColorToken, string> = {
  green: "○", // open circle: plenty of time
  yellow: "◐", // half circle: deadline getting near
  red: "●", // filled circle: deadline very near
};

export function statusBadge(status: StatusToken): HTMLElement {
  return el(
    "span",
    { class: `badge badge-${status}`, "data-status": status },
    el("span", { class: "badge-glyph", "aria-hidden": "true" }, STATUS_GLYPHS[status]),
    " ",
    STATUS_LABELS[status],
  );
}

export function urgencyClock(urgency: Urgency): HTMLElement {
  const node = el(
    "span",
    {
      class: `clock clock-${urgency.color}`,
      "data-color": urgency.color,
      "data-overdue": urgency.overdue ? "true" : "false",
      title: urgency.overdue ? NL.overdue : "",
    },
    el("span", { class: "clock-glyph", "aria-hidden": "true" }, URGENCY_GLYPHS[urgency.color]),
  );
  if (urgency.overdue) {
    node.append(" ", el("strong", { class: "clock-overdue" }, NL.overdue + "!"));
  }
  return node;
}
