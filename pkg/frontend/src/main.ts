import { ApiClient } from "./api.js";
import { startApp } from "./app.js";

// Same-origin by default; set window.NORMCASE_API for a split dev setup.
declare global {
  interface Window {
    NORMCASE_API?: string;
  }
}

const api = new ApiClient(window.NORMCASE_API ?? "");
startApp(document.getElementById("app") as HTMLElement, api);
