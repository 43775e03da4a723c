import type {
  ActionsView,
  AnswerValue,
  CaseList,
  CaseView,
  ExplainDoc,
  OpenActionEntry,
  Question,
  ScenarioDoc,
  ScenarioSummary,
  SourceRef,
  TreeDoc,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    public fields: string[] = [],
    public diagnostics: string[] = [],
  ) {
    super(code);
  }
}

export interface NewCasePayload {
  client: { name: string; kind: string };
  caseType: string;
  createdOn?: string;
  decisionTerm?: string;
  notes?: string;
  answers: Record<string, AnswerValue>;
}

export interface EditCasePayload {
  answers?: Record<string, AnswerValue>;
  decisionTerm?: string;
  notes?: string;
  caseType?: string;
}

export class ApiClient {
  token: string | null = null;

  constructor(public baseUrl: string = "") {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const headers: Record<string, string> = { "Content-Type": "application/json" };
    if (this.token) headers["Authorization"] = this.token;
    const response = await fetch(this.baseUrl + path, {
      method,
      headers,
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const text = await response.text();
    const doc = text ? JSON.parse(text) : null;
    if (!response.ok) {
      throw new ApiError(
        response.status,
        doc?.error ?? "unknown_error",
        doc?.fields ?? [],
        doc?.diagnostics ?? [],
      );
    }
    return doc as T;
  }

  async register(name: string, secret: string): Promise<void> {
    const doc = await this.request<{ token: string }>("POST", "/api/register", {
      name,
      secret,
    });
    this.token = doc.token;
  }

  async login(name: string, secret: string): Promise<void> {
    const doc = await this.request<{ token: string }>("POST", "/api/login", {
      name,
      secret,
    });
    this.token = doc.token;
  }

  logout(): void {
    this.token = null;
  }

  questions(): Promise<Question[]> {
    return this.request("GET", "/api/questions");
  }

  createCase(payload: NewCasePayload): Promise<CaseView> {
    return this.request("POST", "/api/cases", payload);
  }

  getCase(id: number): Promise<CaseView> {
    return this.request("GET", `/api/cases/${id}`);
  }

  editCase(id: number, payload: EditCasePayload): Promise<CaseView> {
    return this.request("PATCH", `/api/cases/${id}`, payload);
  }

  listCases(params: Record<string, string> = {}): Promise<CaseList> {
    const query = new URLSearchParams(params).toString();
    return this.request("GET", `/api/cases${query ? "?" + query : ""}`);
  }

  caseActions(id: number): Promise<ActionsView> {
    return this.request("GET", `/api/cases/${id}/actions`);
  }

  executeAction(
    id: number,
    act: string,
    motivation?: string,
  ): Promise<{ case: CaseView; actions: ActionsView }> {
    return this.request("POST", `/api/cases/${id}/actions/${act}/execute`, {
      motivation: motivation ?? null,
    });
  }

  openActions(): Promise<OpenActionEntry[]> {
    return this.request("GET", "/api/open-actions");
  }

  sources(): Promise<SourceRef[]> {
    return this.request("GET", "/api/sources");
  }

  addSource(title: string, url?: string): Promise<SourceRef[]> {
    return this.request("POST", "/api/sources", { title, url });
  }

  createSimulation(label: string, fromCase?: number): Promise<ScenarioDoc> {
    return this.request("POST", "/api/simulations", {
      label,
      fromCase: fromCase ?? null,
    });
  }

  listSimulations(): Promise<ScenarioSummary[]> {
    return this.request("GET", "/api/simulations");
  }

  getSimulation(id: number): Promise<ScenarioDoc> {
    return this.request("GET", `/api/simulations/${id}`);
  }

  addRuleVersion(id: number, ruleId: string, text: string): Promise<ScenarioDoc> {
    return this.request("POST", `/api/simulations/${id}/rules/${ruleId}/versions`, {
      text,
    });
  }

  toggleRule(
    id: number,
    ruleId: string,
    activeVersion: number | null,
  ): Promise<ScenarioDoc> {
    return this.request("PATCH", `/api/simulations/${id}/rules/${ruleId}`, {
      activeVersion,
    });
  }

  tree(id: number, depth: number): Promise<TreeDoc> {
    return this.request("GET", `/api/simulations/${id}/tree?depth=${depth}`);
  }

  explain(id: number, node: number, depth: number): Promise<ExplainDoc> {
    return this.request(
      "GET",
      `/api/simulations/${id}/tree/${node}/explain?depth=${depth}`,
    );
  }
}
