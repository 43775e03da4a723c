// Hash router and page layout. Pages render into the main region; the
// navigation mirrors the design: Home, Zaken, Simulatie plus the Nieuwe
// zaak button.

import type { ApiClient } from "./api.js";
import type { AppContext } from "./context.js";
import { clear, el } from "./dom.js";
import { NL } from "./locale.js";
import { renderCaseView } from "./pages/caseView.js";
import { renderCasesOverview } from "./pages/casesOverview.js";
import { renderDashboard } from "./pages/dashboard.js";
import { renderEditCase } from "./pages/editCase.js";
import { renderLogin } from "./pages/login.js";
import { renderNewCase } from "./pages/newCase.js";
import { renderSimulation } from "./pages/simulation.js";

export type Route =
  | { page: "login" }
  | { page: "dashboard" }
  | { page: "new-case" }
  | { page: "case"; id: number }
  | { page: "edit-case"; id: number }
  | { page: "cases" }
  | { page: "simulation" };

export function parseRoute(hash: string): Route {
  const path = hash.replace(/^#/, "") || "/";
  if (path === "/login") return { page: "login" };
  if (path === "/" || path === "") return { page: "dashboard" };
  if (path === "/nieuw") return { page: "new-case" };
  if (path === "/zaken") return { page: "cases" };
  if (path === "/simulatie") return { page: "simulation" };
  const caseEdit = path.match(/^\/zaak\/(\d+)\/bewerken$/);
  if (caseEdit) return { page: "edit-case", id: Number(caseEdit[1]) };
  const caseView = path.match(/^\/zaak\/(\d+)$/);
  if (caseView) return { page: "case", id: Number(caseView[1]) };
  return { page: "dashboard" };
}

function navBar(ctx: AppContext, onLogout: () => void): HTMLElement {
  return el(
    "header",
    { class: "topbar" },
    el(
      "button",
      { class: "primary new-case-button", onclick: () => ctx.navigate("#/nieuw") },
      NL.newCase,
    ),
    el(
      "nav",
      {},
      el("a", { href: "#/", class: "nav-home" }, NL.navHome),
      el("a", { href: "#/zaken", class: "nav-cases" }, NL.navCases),
      el("a", { href: "#/simulatie", class: "nav-simulation" }, NL.navSimulation),
    ),
    el("span", { class: "app-name" }, NL.appName),
    el("button", { class: "logout", onclick: onLogout }, NL.logout),
  );
}

export async function renderRoute(
  root: HTMLElement,
  ctx: AppContext,
  hash: string,
  onLogout: () => void = () => undefined,
): Promise<void> {
  const route = ctx.api.token === null ? { page: "login" as const } : parseRoute(hash);
  clear(root);
  if (route.page === "login") {
    renderLogin(root, ctx);
    return;
  }
  const main = el("main", { class: "page" });
  root.append(navBar(ctx, onLogout), main);
  switch (route.page) {
    case "dashboard":
      await renderDashboard(main, ctx);
      break;
    case "new-case":
      await renderNewCase(main, ctx);
      break;
    case "case":
      await renderCaseView(main, ctx, route.id);
      break;
    case "edit-case":
      await renderEditCase(main, ctx, route.id);
      break;
    case "cases":
      await renderCasesOverview(main, ctx);
      break;
    case "simulation":
      await renderSimulation(main, ctx);
      break;
  }
}

export function startApp(root: HTMLElement, api: ApiClient): void {
  const stored = sessionStorage.getItem("normcase-token");
  if (stored) api.token = stored;

  const ctx: AppContext = {
    api,
    navigate: (hash: string) => {
      if (api.token) sessionStorage.setItem("normcase-token", api.token);
      if (location.hash === hash) {
        void renderRoute(root, ctx, hash, logout);
      } else {
        location.hash = hash;
      }
    },
  };

  function logout(): void {
    api.logout();
    sessionStorage.removeItem("normcase-token");
    ctx.navigate("#/login");
  }

  window.addEventListener("hashchange", () => {
    void renderRoute(root, ctx, location.hash, logout);
  });
  void renderRoute(root, ctx, location.hash, logout);
}
