// Wire types mirroring the /api JSON. The UI renders these verbatim and
// never computes legal statuses itself.

export type StatusToken = "toegestaan" | "niet_toegestaan" | "onbestemd";
export type CaseStatusToken = "in_behandeling" | "wachten_op_bericht" | "afgerond";
export type UrgencyColorToken = "green" | "yellow" | "red";

export interface SourceRef {
  title: string;
  url: string | null;
  applicableFrom: string | null;
}

export interface Urgency {
  color: UrgencyColorToken;
  overdue: boolean;
}

export interface CaseSummary {
  id: number;
  naam: string;
  type: string;
  status: CaseStatusToken;
  termijn: string;
  urgency: Urgency;
  actie: string | null;
  gewijzigd: string;
}

export interface CaseList {
  items: CaseSummary[];
  total: number;
}

export interface Violation {
  kind: string;
  subject: string;
  at: string;
  explanation: string;
  motivation: string | null;
  sources: SourceRef[];
}

export interface AuditEntry {
  at: string;
  user: string;
  action: string;
  detail: string;
}

export interface CaseView {
  id: number;
  client: { id: number; name: string; kind: string };
  caseType: string;
  createdOn: string;
  decisionTerm: string;
  lastModified: string;
  notes: string;
  status: CaseStatusToken;
  outcome: string | null;
  answers: Record<string, unknown>;
  violations: Violation[];
  audit: AuditEntry[];
  urgency: Urgency;
  nextAction: string | null;
  amount: number | null;
}

export interface Reason {
  clause: string;
  truth: string;
  sources: SourceRef[];
}

export interface PendingAction {
  naam: string;
  status: StatusToken;
  bronnen: SourceRef[];
  motivationRequired: boolean;
  redenen: Reason[];
}

export interface CompletedAction {
  naam: string;
  status: StatusToken;
  bronnen: SourceRef[];
  uitgevoerdOp: string;
  uitgevoerdDoor: string;
  motivatie: string | null;
  violation: Violation | null;
}

export interface ActionsView {
  afgerond: CompletedAction[];
  vervolg: PendingAction[];
}

export interface Question {
  fact: string;
  prompt: string;
  type: "boolean" | "integer" | "text" | "date";
  required: boolean;
  allowsUnknown: boolean;
}

export interface OpenActionEntry {
  case: CaseSummary;
  action: string;
  term: string;
}

export interface RuleVersionDoc {
  versionId: number;
  createdAt: string;
  text: string;
}

export interface RuleGroupDoc {
  ruleId: string;
  kind: "act" | "duty";
  activeVersion: number | null;
  versions: RuleVersionDoc[];
}

export interface ScenarioDoc {
  id: number;
  label: string;
  fromCase: number | null;
  rules: RuleGroupDoc[];
}

export interface ScenarioSummary {
  id: number;
  label: string;
  fromCase: number | null;
}

export interface TreeNodeDoc {
  id: number;
  parent: number | null;
  act: string | null;
  status: StatusToken | null;
  motivationRequired: boolean;
  digest: string;
}

export interface TreeDoc {
  scenario: number;
  depth: number;
  nodes: TreeNodeDoc[];
}

export interface ExplainDoc {
  node: number;
  act: string | null;
  status: StatusToken | null;
  motivationRequired: boolean;
  clauses: Reason[];
  versions: { ruleId: string; versionId: number }[];
  sources: SourceRef[];
  assignments: Record<string, unknown>;
}

export type AnswerValue = boolean | number | string | null;
