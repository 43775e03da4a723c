import type { ApiClient } from "./api.js";

export interface AppContext {
  api: ApiClient;
  navigate: (hash: string) => void;
}
