import { ApiError } from "../api.js";
import type { AppContext } from "../context.js";
import { clear, el } from "../dom.js";
import { NL } from "../locale.js";

export function renderLogin(root: HTMLElement, ctx: AppContext): void {
  clear(root);

  const error = el("div", { class: "form-error", role: "alert" });
  const name = el("input", { type: "text", name: "name", autocomplete: "username" }) as HTMLInputElement;
  const secret = el("input", {
    type: "password",
    name: "secret",
    autocomplete: "current-password",
  }) as HTMLInputElement;

  async function submit(register: boolean): Promise<void> {
    error.textContent = "";
    try {
      if (register) {
        await ctx.api.register(name.value.trim(), secret.value);
      } else {
        await ctx.api.login(name.value.trim(), secret.value);
      }
      ctx.navigate("#/");
    } catch (exc) {
      if (exc instanceof ApiError) {
        error.textContent = register ? NL.registerFailed : NL.loginFailed;
      } else {
        throw exc;
      }
    }
  }

  const form = el(
    "form",
    {
      class: "login-form",
      onsubmit: (event) => {
        event.preventDefault();
        void submit(false);
      },
    },
    el("h1", {}, NL.appName),
    el("label", {}, NL.username, name),
    el("label", {}, NL.password, secret),
    error,
    el("div", { class: "login-buttons" },
      el("button", { type: "submit", class: "primary", "data-action": "login" }, NL.login),
      el(
        "button",
        {
          type: "button",
          "data-action": "register",
          onclick: () => void submit(true),
        },
        NL.register,
      ),
    ),
  );

  root.append(el("div", { class: "login-page" }, form));
}
