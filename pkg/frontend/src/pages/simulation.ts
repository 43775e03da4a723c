// Simulation tab, three panes: versioned rules on the left (green check =
// active, grey minus = inactive), the action tree in the middle, and a
// collapsible explanation pane for the selected step on the right.

import { STATUS_GLYPHS, statusBadge } from "../badges.js";
import { ApiError } from "../api.js";
import type { AppContext } from "../context.js";
import { clear, el } from "../dom.js";
import { NL, STATUS_LABELS } from "../locale.js";
import type { ExplainDoc, RuleGroupDoc, ScenarioDoc, TreeDoc, TreeNodeDoc } from "../types.js";

const state = {
  scenarioId: null as number | null,
  depth: 3,
  selectedNode: null as number | null,
  editingRule: null as string | null,
  editorText: "",
  detailsCollapsed: false,
};

export function resetSimulationState(): void {
  state.scenarioId = null;
  state.depth = 3;
  state.selectedNode = null;
  state.editingRule = null;
  state.editorText = "";
  state.detailsCollapsed = false;
}

function scenarioPicker(ctx: AppContext, rerender: () => void): HTMLElement {
  const labelInput = el("input", { type: "text", class: "scenario-label" }) as HTMLInputElement;
  const fromCase = el("input", { type: "number", class: "scenario-from-case", min: "1" }) as HTMLInputElement;
  const error = el("div", { class: "form-error" });
  return el(
    "div",
    { class: "scenario-picker" },
    el("h3", {}, NL.newScenario),
    el("label", {}, NL.scenarioLabel, labelInput),
    el("label", {}, NL.scenarioFromCase, fromCase),
    error,
    el(
      "button",
      {
        class: "primary create-scenario",
        onclick: () => {
          error.textContent = "";
          const fromValue = fromCase.value ? Number(fromCase.value) : undefined;
          ctx.api
            .createSimulation(labelInput.value.trim() || NL.scenario, fromValue)
            .then((doc) => {
              state.scenarioId = doc.id;
              state.selectedNode = null;
              rerender();
            })
            .catch((exc) => {
              error.textContent = exc instanceof ApiError ? exc.code : String(exc);
            });
        },
      },
      NL.create,
    ),
  );
}

function ruleEditor(
  ctx: AppContext,
  scenario: ScenarioDoc,
  rerender: () => void,
): HTMLElement {
  const textarea = el("textarea", { class: "rule-editor-text", rows: "10" }) as HTMLTextAreaElement;
  textarea.value = state.editorText;
  const diagnostics = el("ul", { class: "diagnostics" });
  return el(
    "div",
    { class: "rule-editor" },
    el("h4", {}, `${NL.addVersion}: ${state.editingRule}`),
    textarea,
    diagnostics,
    el(
      "div",
      { class: "dialog-buttons" },
      el(
        "button",
        {
          class: "primary save-version",
          onclick: () => {
            clear(diagnostics as HTMLElement);
            ctx.api
              .addRuleVersion(scenario.id, state.editingRule as string, textarea.value)
              .then(() => {
                state.editingRule = null;
                state.editorText = "";
                rerender();
              })
              .catch((exc) => {
                if (exc instanceof ApiError && exc.diagnostics.length) {
                  for (const d of exc.diagnostics) {
                    diagnostics.append(el("li", { class: "diagnostic" }, d));
                  }
                } else {
                  diagnostics.append(el("li", { class: "diagnostic" }, String(exc)));
                }
              });
          },
        },
        NL.save,
      ),
      el(
        "button",
        {
          onclick: () => {
            state.editingRule = null;
            state.editorText = "";
            rerender();
          },
        },
        NL.cancel,
      ),
    ),
  );
}

function ruleGroup(
  ctx: AppContext,
  scenario: ScenarioDoc,
  group: RuleGroupDoc,
  rerender: () => void,
): HTMLElement {
  const active = group.activeVersion !== null;
  const toggle = el(
    "button",
    {
      class: active ? "rule-toggle active" : "rule-toggle inactive",
      title: active ? NL.active : NL.inactive,
      "data-rule": group.ruleId,
      onclick: () => {
        void ctx.api
          .toggleRule(scenario.id, group.ruleId, active ? null : group.versions[0].versionId)
          .then(rerender);
      },
    },
    active ? "✓" : "−",
  );
  const versions = el(
    "ul",
    { class: "versions" },
    ...group.versions.map((version) =>
      el(
        "li",
        {
          class:
            group.activeVersion === version.versionId ? "version active" : "version",
          "data-version": String(version.versionId),
        },
        el(
          "button",
          {
            class: "activate-version",
            onclick: () => {
              void ctx.api
                .toggleRule(scenario.id, group.ruleId, version.versionId)
                .then(rerender);
            },
          },
          `${NL.version} ${version.versionId}`,
          group.activeVersion === version.versionId ? " ✓" : "",
        ),
        el(
          "button",
          {
            class: "edit-version",
            title: NL.editRule,
            onclick: () => {
              state.editingRule = group.ruleId;
              state.editorText = version.text;
              rerender();
            },
          },
          "✎",
        ),
      ),
    ),
  );
  return el(
    "li",
    { class: active ? "rule active" : "rule inactive", "data-rule": group.ruleId },
    el(
      "div",
      { class: "rule-head" },
      toggle,
      el("span", { class: "rule-name" }, group.ruleId),
      el("span", { class: "rule-kind" }, ` (${group.kind})`),
      el(
        "button",
        {
          class: "add-version",
          title: NL.addVersion,
          "data-rule": group.ruleId,
          onclick: () => {
            state.editingRule = group.ruleId;
            state.editorText = "";
            rerender();
          },
        },
        "+",
      ),
    ),
    group.versions.length > 1 || group.activeVersion !== 1 ? versions : null,
  );
}

function treePane(
  ctx: AppContext,
  tree: TreeDoc,
  rerender: () => void,
): HTMLElement {
  const byParent = new Map<number | null, TreeNodeDoc[]>();
  for (const node of tree.nodes) {
    const list = byParent.get(node.parent) ?? [];
    list.push(node);
    byParent.set(node.parent, list);
  }
  const selectedPath = new Set<number>();
  if (state.selectedNode !== null) {
    const byId = new Map(tree.nodes.map((n) => [n.id, n]));
    let cursor = byId.get(state.selectedNode);
    while (cursor) {
      selectedPath.add(cursor.id);
      cursor = cursor.parent === null ? undefined : byId.get(cursor.parent);
    }
  }

  function renderNode(node: TreeNodeDoc): HTMLElement {
    const children = byParent.get(node.id) ?? [];
    const selected = selectedPath.has(node.id);
    const classes = ["tree-node"];
    if (node.status) classes.push(`tree-${node.status}`);
    if (selected) classes.push("selected");
    const circle = node.act === null ? "■" : selected ? "●" : "○";
    const label =
      node.act === null
        ? NL.scenario
        : `${node.act} ${node.status ? STATUS_GLYPHS[node.status] : ""}`;
    return el(
      "li",
      { class: classes.join(" "), "data-node": String(node.id) },
      el(
        "button",
        {
          class: "tree-label",
          onclick: () => {
            state.selectedNode = node.id;
            rerender();
          },
        },
        `${circle} ${label}`,
      ),
      children.length ? el("ul", { class: "tree-children" }, ...children.map(renderNode)) : null,
    );
  }

  const root = tree.nodes.find((n) => n.parent === null);
  return el(
    "section",
    { class: "tree-pane panel" },
    el("h3", {}, NL.treeHeader),
    root ? el("ul", { class: "tree" }, renderNode(root)) : el("p", {}, "—"),
  );
}

function detailsPane(explain: ExplainDoc | null): HTMLElement {
  const content = state.detailsCollapsed
    ? null
    : explain === null
      ? el("p", { class: "empty" }, NL.noSelection)
      : el(
          "div",
          { class: "explain" },
          explain.act
            ? el(
                "p",
                { class: "explain-act" },
                el("strong", {}, explain.act),
                " ",
                explain.status ? statusBadge(explain.status) : null,
              )
            : el("p", {}, NL.scenario),
          explain.motivationRequired
            ? el("p", { class: "warning-text" }, NL.motivationRequired)
            : null,
          explain.clauses.length
            ? el(
                "div",
                {},
                el("h4", {}, NL.clauses),
                el(
                  "ul",
                  { class: "explain-clauses" },
                  ...explain.clauses.map((c) =>
                    el(
                      "li",
                      { class: `reason reason-${c.truth}` },
                      el("code", {}, c.clause),
                      ` — ${c.truth}`,
                    ),
                  ),
                ),
              )
            : null,
          explain.versions.length
            ? el(
                "div",
                {},
                el("h4", {}, NL.applicableVersions),
                el(
                  "ul",
                  { class: "explain-versions" },
                  ...explain.versions.map((v) =>
                    el("li", {}, `${v.ruleId} — ${NL.version} ${v.versionId}`),
                  ),
                ),
              )
            : null,
          explain.sources.length
            ? el(
                "div",
                {},
                el("h4", {}, NL.relevantSources),
                el(
                  "ul",
                  { class: "explain-sources" },
                  ...explain.sources.map((s) =>
                    el(
                      "li",
                      {},
                      s.url
                        ? el("a", { href: s.url, target: "_blank", rel: "noopener" }, s.title)
                        : s.title,
                    ),
                  ),
                ),
              )
            : null,
        );
  return el(
    "section",
    { class: "details-pane panel" },
    el(
      "h3",
      {},
      NL.detailsHeader,
      " ",
      el(
        "button",
        {
          class: "collapse-details",
          onclick: () => {
            state.detailsCollapsed = !state.detailsCollapsed;
            const body = document.querySelector(".details-pane .explain, .details-pane .empty");
            if (body) (body as HTMLElement).hidden = state.detailsCollapsed;
          },
        },
        state.detailsCollapsed ? NL.expand : NL.collapse,
      ),
    ),
    content,
  );
}

export async function renderSimulation(root: HTMLElement, ctx: AppContext): Promise<void> {
  const scenarios = await ctx.api.listSimulations();
  if (state.scenarioId === null && scenarios.length) {
    state.scenarioId = scenarios[scenarios.length - 1].id;
  }
  const rerender = () => void renderSimulation(root, ctx);

  let scenario: ScenarioDoc | null = null;
  let tree: TreeDoc | null = null;
  let explain: ExplainDoc | null = null;
  if (state.scenarioId !== null) {
    scenario = await ctx.api.getSimulation(state.scenarioId);
    tree = await ctx.api.tree(scenario.id, state.depth);
    if (state.selectedNode !== null) {
      const exists = tree.nodes.some((n) => n.id === state.selectedNode);
      explain = exists
        ? await ctx.api.explain(scenario.id, state.selectedNode, state.depth)
        : null;
    }
  }
  clear(root);

  const picker = el(
    "div",
    { class: "scenario-bar" },
    scenarios.length
      ? el(
          "select",
          {
            class: "scenario-select",
            onchange: (event) => {
              state.scenarioId = Number((event.target as HTMLSelectElement).value);
              state.selectedNode = null;
              rerender();
            },
          },
          ...scenarios.map((s) => {
            const option = el(
              "option",
              { value: String(s.id) },
              `${s.label}${s.fromCase ? ` (zaak ${s.fromCase})` : ""}`,
            ) as HTMLOptionElement;
            option.selected = s.id === state.scenarioId;
            return option;
          }),
        )
      : null,
    el("label", {}, NL.depth, (() => {
      const depth = el("input", {
        type: "number",
        class: "depth-input",
        min: "1",
        max: "4",
      }) as HTMLInputElement;
      depth.value = String(state.depth);
      depth.addEventListener("change", () => {
        state.depth = Number(depth.value);
        rerender();
      });
      return depth;
    })()),
    scenarioPicker(ctx, rerender),
  );

  if (!scenario || !tree) {
    root.append(el("div", { class: "simulation" }, picker));
    return;
  }

  const currentScenario = scenario;
  const rulesPane = el(
    "section",
    { class: "rules-pane panel" },
    el("h3", {}, NL.rules),
    el(
      "div",
      { class: "rule-actions" },
      el(
        "button",
        {
          class: "deactivate-all",
          onclick: async () => {
            for (const group of currentScenario.rules) {
              if (group.activeVersion !== null) {
                await ctx.api.toggleRule(currentScenario.id, group.ruleId, null);
              }
            }
            rerender();
          },
        },
        NL.deactivateAll,
      ),
      el(
        "button",
        {
          class: "activate-all",
          onclick: async () => {
            for (const group of currentScenario.rules) {
              if (group.activeVersion === null) {
                await ctx.api.toggleRule(
                  currentScenario.id,
                  group.ruleId,
                  group.versions[0].versionId,
                );
              }
            }
            rerender();
          },
        },
        NL.activateAll,
      ),
    ),
    el(
      "ul",
      { class: "rules" },
      ...currentScenario.rules.map((g) => ruleGroup(ctx, currentScenario, g, rerender)),
    ),
    state.editingRule ? ruleEditor(ctx, currentScenario, rerender) : null,
  );

  root.append(
    el(
      "div",
      { class: "simulation" },
      picker,
      el(
        "div",
        { class: "three-panes" },
        rulesPane,
        treePane(ctx, tree, rerender),
        detailsPane(explain),
      ),
    ),
  );
}
