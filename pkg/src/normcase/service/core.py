"""Command/query core of the case service.

Every mutation is validated, applied to the in-memory model and appended to
the event log as exactly one event.  Apply functions depend only on event
data, so replaying the log after a restart rebuilds identical state: all
clocks and generated values are captured inside the event at command time.
"""

from __future__ import annotations

import hashlib
import secrets
import threading
from dataclasses import replace
from datetime import date, datetime, timedelta

from ..dsl import NormSpec
from ..engine import (
    AlreadyExecutedError,
    MotivationRequiredError,
    NormState,
    Status,
    UnknownActError,
    assign_fact,
    available_actions,
    check_duties,
    execute,
    init_state,
    state_to_doc,
    violation_to_doc,
)
from ..engine.model import UNKNOWN
from ..engine.serde import source_to_doc
from ..policy import (
    AnswerError,
    PolicyBundle,
    decision_amount,
    decode_answers,
    decode_value,
    household_from_answers,
    load_policy,
)
from ..sim import (
    Scenario,
    SimulationError,
    add_rule_version,
    build_tree,
    create_scenario,
    explain_node,
    scenario_to_doc,
    toggle_rule,
    tree_to_doc,
)
from .config import Config
from .models import (
    CLIENT_KINDS,
    AuditEvent,
    CaseRecord,
    CaseStatus,
    Client,
    User,
    compute_urgency,
)
from .store import EventStore, canonical_json

# Facts the engine and the administrative layer agree on by convention: the
# decision term is mirrored into this date fact, and any act that creates the
# outcome fact counts as a decision act.
DECISION_TERM_FACT = "decision-term"
DECISION_OUTCOME_FACT = "decision-outcome"
CLIENT_ROLE = "client"
SEED_USER = "systeem"

SORT_KEYS = ("naam", "termijn", "actie", "gewijzigd")


class ServiceError(Exception):
    def __init__(self, code: str, fields: list[str] | None = None, detail: str | None = None):
        self.code = code
        self.fields = fields
        super().__init__(detail or code)


class Invalid(ServiceError):
    http_status = 400


class Unauthorized(ServiceError):
    http_status = 401


class NotFound(ServiceError):
    http_status = 404


class Conflict(ServiceError):
    http_status = 409


def _parse_date(raw, field: str, fields: list[str]) -> date | None:
    if raw is None:
        return None
    try:
        return date.fromisoformat(raw)
    except (TypeError, ValueError):
        fields.append(field)
        return None


class CaseService:
    def __init__(self, config: Config, bundle: PolicyBundle | None = None):
        self.config = config
        self.bundle = bundle or load_policy(config.spec_path)
        self.spec: NormSpec = self.bundle.spec
        self.store = EventStore(config.data_dir)
        self._lock = threading.RLock()

        self.users: dict[str, User] = {}
        self.sessions: dict[str, str] = {}  # token -> user name, never persisted
        self.clients: dict[int, Client] = {}
        self.cases: dict[int, CaseRecord] = {}
        self.manual_sources: list[dict] = []
        self.scenarios: dict[int, Scenario] = {}

        self._decision_acts = {
            a.name
            for a in self.spec.acts
            if any(c.fact == DECISION_OUTCOME_FACT for c in a.creates)
        }
        replayed = self.store.replay(self._apply_event)
        if replayed == 0 and config.seed_fixtures:
            self._seed_fixtures()

    # ------------------------------------------------------------------ commands

    def _commit(self, type_: str, data: dict, at: datetime | None = None) -> None:
        with self._lock:
            at = at or datetime.now()
            event = {
                "seq": self.store.seq + 1,
                "type": type_,
                "at": at.isoformat(timespec="seconds"),
                "data": data,
            }
            self._apply_event(event)  # raises before anything is persisted
            self.store.append(
                type_, event["at"], data, snapshot=self._all_snapshots_doc
            )

    def register(self, name: str, secret: str) -> str:
        fields = []
        if not (isinstance(name, str) and name.strip()):
            fields.append("naam")
        if not (isinstance(secret, str) and secret):
            fields.append("wachtwoord")
        if fields:
            raise Invalid("validation_error", fields=fields)
        name = name.strip()
        with self._lock:
            if name in self.users:
                raise Conflict("duplicate_name")
            salt = secrets.token_hex(16)
            data = {
                "id": len(self.users) + 1,
                "name": name,
                "salt": salt,
                "hash": self._hash_secret(secret, salt),
                "role": "officer",
            }
            self._commit("user_registered", data)
        return self._open_session(name)

    def login(self, name: str, secret: str) -> str:
        user = self.users.get((name or "").strip())
        if user is None or self._hash_secret(secret or "", user.salt) != user.credential_hash:
            # One indistinguishable answer for unknown names and bad secrets.
            raise Unauthorized("invalid_credentials")
        return self._open_session(user.name)

    def _hash_secret(self, secret: str, salt: str) -> str:
        return hashlib.scrypt(
            secret.encode("utf-8"), salt=bytes.fromhex(salt), n=2**14, r=8, p=1
        ).hex()

    def _open_session(self, name: str) -> str:
        token = secrets.token_hex(16)
        self.sessions[token] = name
        return token

    def authenticate(self, token: str | None) -> str:
        if token and token in self.sessions:
            return self.sessions[token]
        raise Unauthorized("unauthorized")

    def create_case(self, payload: dict, user: str, today: date | None = None) -> int:
        today = today or date.today()
        fields: list[str] = []
        client = payload.get("client") or {}
        if not isinstance(client, dict):
            client = {}
        client_name = (client.get("name") or "").strip()
        if not client_name:
            fields.append("naam klant")
        kind = client.get("kind", "civilian")
        if kind not in CLIENT_KINDS:
            fields.append("soort klant")
        case_type = (payload.get("caseType") or "").strip()
        if not case_type:
            fields.append("type zaak")
        created_on = _parse_date(payload.get("createdOn"), "aanmaakdatum", fields) or today
        decision_term = _parse_date(payload.get("decisionTerm"), "beslistermijn", fields)
        if decision_term is None and "beslistermijn" not in fields:
            # Auto-filled: users should not have to invent these themselves.
            decision_term = created_on + timedelta(days=self.config.decision_period_days)
        answers = payload.get("answers") or {}
        fields += self._answer_problems(answers, require_all=True)
        if fields:
            raise Invalid("validation_error", fields=fields)

        with self._lock:
            case_id = max(self.cases, default=0) + 1
            existing = next(
                (c for c in self.clients.values() if c.name == client_name), None
            )
            client_doc = {
                "id": existing.id if existing else max(self.clients, default=0) + 1,
                "name": client_name,
                "kind": existing.kind if existing else kind,
            }
            self._commit(
                "case_created",
                {
                    "id": case_id,
                    "client": client_doc,
                    "caseType": case_type,
                    "createdOn": created_on.isoformat(),
                    "decisionTerm": decision_term.isoformat(),
                    "notes": payload.get("notes") or "",
                    "answers": answers,
                    "user": user,
                },
            )
        return case_id

    def edit_case(self, case_id: int, payload: dict, user: str) -> None:
        self._require_case(case_id)
        fields: list[str] = []
        answers = payload.get("answers") or {}
        fields += self._answer_problems(answers, require_all=False)
        decision_term = _parse_date(payload.get("decisionTerm"), "beslistermijn", fields)
        if fields:
            raise Invalid("validation_error", fields=fields)
        data = {"id": case_id, "answers": answers, "user": user}
        if decision_term is not None:
            data["decisionTerm"] = decision_term.isoformat()
        if "notes" in payload:
            data["notes"] = payload["notes"] or ""
        if payload.get("caseType"):
            data["caseType"] = payload["caseType"]
        self._commit("case_edited", data)

    def execute_action(
        self, case_id: int, act: str, motivation: str | None, user: str
    ) -> None:
        record = self._require_case(case_id)
        try:  # dry run against the current state for a clean error, no event
            state, _ = check_duties(record.norm_state, date.today())
            execute(state, act, user, datetime.now(), motivation)
        except UnknownActError:
            raise NotFound("unknown_act") from None
        except AlreadyExecutedError:
            raise Conflict("already_executed") from None
        except MotivationRequiredError:
            raise Invalid("motivation_required") from None
        self._commit(
            "action_executed",
            {"id": case_id, "act": act, "motivation": motivation, "user": user},
        )

    def add_source(self, payload: dict, user: str) -> None:
        title = (payload.get("title") or "").strip()
        if not title:
            raise Invalid("validation_error", fields=["titel"])
        self._commit(
            "source_added",
            {
                "title": title,
                "url": payload.get("url"),
                "applicableFrom": payload.get("applicableFrom"),
                "user": user,
            },
        )

    def create_simulation(self, label: str, from_case: int | None, user: str) -> int:
        if from_case is not None:
            self._require_case(from_case)
        with self._lock:
            scenario_id = max(self.scenarios, default=0) + 1
            self._commit(
                "scenario_created",
                {
                    "id": scenario_id,
                    "label": label or f"Scenario {scenario_id}",
                    "fromCase": from_case,
                    "user": user,
                },
            )
        return scenario_id

    def add_simulation_rule_version(
        self, scenario_id: int, rule_id: str, text: str, user: str
    ) -> None:
        scenario = self._require_scenario(scenario_id)
        try:
            scenario.group(rule_id)
        except SimulationError:
            raise NotFound("unknown_rule") from None
        add_rule_version(scenario, rule_id, text, datetime.now())  # validation only
        self._commit(
            "rule_version_added",
            {"scenario": scenario_id, "ruleId": rule_id, "text": text, "user": user},
        )

    def toggle_simulation_rule(
        self, scenario_id: int, rule_id: str, active_version: int | None, user: str
    ) -> None:
        scenario = self._require_scenario(scenario_id)
        try:
            toggle_rule(scenario, rule_id, active_version)  # validation only
        except SimulationError as exc:
            raise NotFound("unknown_rule", detail=str(exc)) from None
        self._commit(
            "rule_toggled",
            {
                "scenario": scenario_id,
                "ruleId": rule_id,
                "activeVersion": active_version,
                "user": user,
            },
        )

    def _seed_fixtures(self) -> None:
        today = date.today()
        for name in sorted(self.bundle.fixtures):
            fixture = self.bundle.fixtures[name]
            if not fixture.seed:
                continue
            term_days = fixture.decision_term_days
            term = today + timedelta(days=term_days if term_days is not None else self.config.decision_period_days)
            case_id = self.create_case(
                {
                    "client": {"name": fixture.client_name or fixture.label, "kind": fixture.client_kind},
                    "caseType": fixture.case_type or "IIT-aanvraag",
                    "decisionTerm": term.isoformat(),
                    "answers": fixture.answers,
                    "notes": f"Demozaak '{fixture.label}'",
                },
                user=SEED_USER,
                today=today,
            )
            for step in fixture.steps:
                self.execute_action(case_id, step.execute, step.motivation, SEED_USER)

    # ------------------------------------------------------------------- apply

    def _apply_event(self, event: dict) -> None:
        at = datetime.fromisoformat(event["at"])
        data = event["data"]
        handler = {
            "user_registered": self._apply_user_registered,
            "source_added": self._apply_source_added,
            "case_created": self._apply_case_created,
            "case_edited": self._apply_case_edited,
            "action_executed": self._apply_action_executed,
            "scenario_created": self._apply_scenario_created,
            "rule_version_added": self._apply_rule_version_added,
            "rule_toggled": self._apply_rule_toggled,
        }[event["type"]]
        handler(at, data)

    def _apply_user_registered(self, at: datetime, data: dict) -> None:
        self.users[data["name"]] = User(
            id=data["id"],
            name=data["name"],
            salt=data["salt"],
            credential_hash=data["hash"],
            role=data["role"],
        )

    def _apply_source_added(self, at: datetime, data: dict) -> None:
        self.manual_sources.append(
            {
                "title": data["title"],
                "url": data.get("url"),
                "applicableFrom": data.get("applicableFrom"),
            }
        )

    def _apply_case_created(self, at: datetime, data: dict) -> None:
        client = Client(**data["client"])
        created_on = date.fromisoformat(data["createdOn"])
        decision_term = date.fromisoformat(data["decisionTerm"])
        answers = decode_answers(self.spec, data["answers"])
        if any(f.name == DECISION_TERM_FACT for f in self.spec.facts):
            answers[DECISION_TERM_FACT] = decision_term
        state = init_state(self.spec, answers, created_on)
        state, duty_violations = check_duties(state, at.date())
        record = CaseRecord(
            id=data["id"],
            client=client,
            case_type=data["caseType"],
            created_on=created_on,
            decision_term=decision_term,
            last_modified=at,
            notes=data["notes"],
            norm_state=state,
            violations=tuple(duty_violations),
            audit=(
                AuditEvent(at, data["user"], "zaak aangemaakt", f"zaak {data['id']}"),
            ),
        )
        self.clients[client.id] = client
        self.cases[record.id] = record

    def _apply_case_edited(self, at: datetime, data: dict) -> None:
        record = self.cases[data["id"]]
        state = record.norm_state
        changed = []
        for fact_name, raw in data.get("answers", {}).items():
            question = self.bundle.schema.by_fact(fact_name)
            state = assign_fact(state, fact_name, decode_value(question.type, raw))
            changed.append(fact_name)
        decision_term = record.decision_term
        if "decisionTerm" in data:
            decision_term = date.fromisoformat(data["decisionTerm"])
            if any(f.name == DECISION_TERM_FACT for f in self.spec.facts):
                state = assign_fact(state, DECISION_TERM_FACT, decision_term)
            changed.append("beslistermijn")
        if "notes" in data:
            changed.append("notities")
        if "caseType" in data:
            changed.append("type")
        state, duty_violations = check_duties(state, at.date())
        self.cases[record.id] = replace(
            record,
            case_type=data.get("caseType", record.case_type),
            decision_term=decision_term,
            notes=data.get("notes", record.notes),
            last_modified=at,
            norm_state=state,
            violations=record.violations + tuple(duty_violations),
            audit=record.audit
            + (
                AuditEvent(
                    at, data["user"], "zaak gewijzigd", ", ".join(changed) or "geen wijzigingen"
                ),
            ),
        )

    def _apply_action_executed(self, at: datetime, data: dict) -> None:
        record = self.cases[data["id"]]
        state, duty_violations = check_duties(record.norm_state, at.date())
        state, violation = execute(
            state, data["act"], data["user"], at, data.get("motivation")
        )
        new_violations = tuple(duty_violations) + ((violation,) if violation else ())
        self.cases[record.id] = replace(
            record,
            last_modified=at,
            norm_state=state,
            violations=record.violations + new_violations,
            audit=record.audit
            + (AuditEvent(at, data["user"], "actie uitgevoerd", data["act"]),),
        )

    def _apply_scenario_created(self, at: datetime, data: dict) -> None:
        if data.get("fromCase") is not None:
            base_state = self.cases[data["fromCase"]].norm_state
        else:
            base_state = init_state(self.spec, {}, at.date())
        self.scenarios[data["id"]] = create_scenario(
            data["id"], data["label"], base_state, at, data.get("fromCase")
        )

    def _apply_rule_version_added(self, at: datetime, data: dict) -> None:
        scenario = self.scenarios[data["scenario"]]
        self.scenarios[data["scenario"]] = add_rule_version(
            scenario, data["ruleId"], data["text"], at
        )

    def _apply_rule_toggled(self, at: datetime, data: dict) -> None:
        scenario = self.scenarios[data["scenario"]]
        self.scenarios[data["scenario"]] = toggle_rule(
            scenario, data["ruleId"], data.get("activeVersion")
        )

    # ------------------------------------------------------------------ queries

    def _require_case(self, case_id: int) -> CaseRecord:
        try:
            return self.cases[case_id]
        except KeyError:
            raise NotFound("unknown_case") from None

    def _require_scenario(self, scenario_id: int) -> Scenario:
        try:
            return self.scenarios[scenario_id]
        except KeyError:
            raise NotFound("unknown_scenario") from None

    def _answer_problems(self, answers, require_all: bool) -> list[str]:
        problems: list[str] = []
        if not isinstance(answers, dict):
            return ["answers"]
        schema = self.bundle.schema
        for fact_name, raw in answers.items():
            question = schema.by_fact(fact_name)
            if question is None:
                problems.append(fact_name)
                continue
            if raw is None:
                if not question.allows_unknown:
                    problems.append(fact_name)
                continue
            try:
                decode_value(question.type, raw)
            except ValueError:
                problems.append(fact_name)
        if require_all:
            for question in schema.questions:
                if question.required and question.fact not in answers:
                    problems.append(question.fact)
        return problems

    def case_status(self, record: CaseRecord) -> CaseStatus:
        state = record.norm_state
        if any(e.act in self._decision_acts for e in state.history):
            return CaseStatus.AFGEROND
        if any(
            not d.fulfilled and d.holder == CLIENT_ROLE for d in state.duties
        ):
            return CaseStatus.WACHTEN_OP_BERICHT
        return CaseStatus.IN_BEHANDELING

    def decision_outcome(self, record: CaseRecord) -> str | None:
        value = record.norm_state.assignments.get(DECISION_OUTCOME_FACT, UNKNOWN)
        return None if value is UNKNOWN else value

    def next_action(self, record: CaseRecord) -> str | None:
        if self.case_status(record) is CaseStatus.AFGEROND:
            return None  # decided: nothing left to do
        pending = available_actions(record.norm_state)
        for wanted in (Status.ALLOWED, Status.INDEFINITE):
            for act, status in pending:
                if status.status is wanted:
                    return act.name
        return None

    def granted_amount(self, record: CaseRecord) -> int | None:
        if self.decision_outcome(record) != "approved":
            return None
        household = household_from_answers(record.norm_state.assignments)
        if household is None or "amounts" not in self.bundle.params:
            return None
        return decision_amount(household, self.bundle.params)

    # -- serialized views

    def case_snapshot_doc(self, record: CaseRecord) -> dict:
        """Deterministic part of a case: no today-dependent fields."""
        answers = {
            q.fact: _json_value(record.norm_state.assignments.get(q.fact, UNKNOWN))
            for q in self.bundle.schema.questions
        }
        return {
            "id": record.id,
            "client": {
                "id": record.client.id,
                "name": record.client.name,
                "kind": record.client.kind,
            },
            "caseType": record.case_type,
            "createdOn": record.created_on.isoformat(),
            "decisionTerm": record.decision_term.isoformat(),
            "lastModified": record.last_modified.isoformat(timespec="seconds"),
            "notes": record.notes,
            "status": self.case_status(record).value,
            "outcome": self.decision_outcome(record),
            "answers": answers,
            "normState": state_to_doc(record.norm_state),
            "violations": [violation_to_doc(v) for v in record.violations],
            "audit": [
                {
                    "at": a.at.isoformat(timespec="seconds"),
                    "user": a.user,
                    "action": a.action,
                    "detail": a.detail,
                }
                for a in record.audit
            ],
        }

    def case_snapshot_bytes(self, case_id: int) -> bytes:
        return canonical_json(self.case_snapshot_doc(self._require_case(case_id))).encode(
            "utf-8"
        )

    def _all_snapshots_doc(self) -> dict:
        return {
            "cases": {
                str(cid): self.case_snapshot_doc(rec)
                for cid, rec in sorted(self.cases.items())
            }
        }

    def case_view(self, record: CaseRecord, today: date | None = None) -> dict:
        today = today or date.today()
        doc = self.case_snapshot_doc(record)
        urgency = compute_urgency(
            record.decision_term, today, self.config.red_days, self.config.yellow_days
        )
        doc["urgency"] = {"color": urgency.color.value, "overdue": urgency.overdue}
        doc["nextAction"] = self.next_action(record)
        doc["amount"] = self.granted_amount(record)
        return doc

    def case_summary(self, record: CaseRecord, today: date | None = None) -> dict:
        today = today or date.today()
        urgency = compute_urgency(
            record.decision_term, today, self.config.red_days, self.config.yellow_days
        )
        return {
            "id": record.id,
            "naam": record.client.name,
            "type": record.case_type,
            "status": self.case_status(record).value,
            "termijn": record.decision_term.isoformat(),
            "urgency": {"color": urgency.color.value, "overdue": urgency.overdue},
            "actie": self.next_action(record),
            "gewijzigd": record.last_modified.isoformat(timespec="seconds"),
        }

    def actions_view(self, record: CaseRecord) -> dict:
        state = record.norm_state
        by_act_violation = {
            v.subject: violation_to_doc(v)
            for v in record.violations
            if v.kind.value == "non_permitted_execution"
        }
        afgerond = []
        for entry in state.history:
            act = self.spec.act(entry.act)
            afgerond.append(
                {
                    "naam": entry.act,
                    "status": entry.status_at_execution.value,
                    "bronnen": [source_to_doc(s) for s in act.sources],
                    "uitgevoerdOp": entry.at.isoformat(timespec="seconds"),
                    "uitgevoerdDoor": entry.actor,
                    "motivatie": entry.motivation,
                    "violation": by_act_violation.get(entry.act),
                }
            )
        vervolg = []
        for act, status in available_actions(state):
            vervolg.append(
                {
                    "naam": act.name,
                    "status": status.status.value,
                    "bronnen": [source_to_doc(s) for s in act.sources],
                    "motivationRequired": status.status is not Status.ALLOWED,
                    "redenen": [
                        {
                            "clause": r.clause,
                            "truth": r.truth.value,
                            "sources": [source_to_doc(s) for s in r.sources],
                        }
                        for r in status.reasons
                    ],
                }
            )
        return {"afgerond": afgerond, "vervolg": vervolg}

    def list_cases(
        self,
        status: str | None = None,
        q: str | None = None,
        from_: date | None = None,
        to: date | None = None,
        sort: str = "termijn",
        order: str = "asc",
        today: date | None = None,
    ) -> dict:
        if sort not in SORT_KEYS:
            raise Invalid("invalid_sort")
        if order not in ("asc", "desc"):
            raise Invalid("invalid_sort")
        rows = [
            self.case_summary(rec, today) for _, rec in sorted(self.cases.items())
        ]
        if status:
            rows = [r for r in rows if r["status"] == status]
        if q:
            rows = [r for r in rows if q.lower() in r["naam"].lower()]
        if from_:
            rows = [r for r in rows if date.fromisoformat(r["termijn"]) >= from_]
        if to:
            rows = [r for r in rows if date.fromisoformat(r["termijn"]) <= to]
        key = {
            "naam": lambda r: r["naam"],
            "termijn": lambda r: r["termijn"],
            "actie": lambda r: r["actie"] or "",
            "gewijzigd": lambda r: r["gewijzigd"],
        }[sort]
        # Rows are id-ascending already; a stable sort keeps that tie-break in
        # both directions.
        rows.sort(key=key, reverse=(order == "desc"))
        return {"items": rows, "total": len(rows)}

    def open_actions(self, today: date | None = None) -> list[dict]:
        entries = []
        for _, record in sorted(self.cases.items()):
            if self.case_status(record) is not CaseStatus.IN_BEHANDELING:
                continue
            action = self.next_action(record)
            if action is None:
                continue
            entries.append(
                {
                    "case": self.case_summary(record, today),
                    "action": action,
                    "term": record.decision_term.isoformat(),
                }
            )
        entries.sort(key=lambda e: (e["term"], e["case"]["id"]))
        return entries

    def sources_view(self) -> list[dict]:
        seen = []
        for s in self.spec.sources:
            seen.append(source_to_doc(s))
        for doc in self.manual_sources:
            if not any(d["title"] == doc["title"] and d["url"] == doc["url"] for d in seen):
                seen.append(dict(doc))
        return seen

    def simulation_view(self, scenario_id: int) -> dict:
        return scenario_to_doc(self._require_scenario(scenario_id))

    def simulation_tree(self, scenario_id: int, depth: int) -> dict:
        scenario = self._require_scenario(scenario_id)
        tree = build_tree(
            scenario, depth, self.config.tree_max_depth, self.config.tree_max_nodes
        )
        return tree_to_doc(tree)

    def simulation_explain(self, scenario_id: int, node_id: int, depth: int) -> dict:
        scenario = self._require_scenario(scenario_id)
        tree = build_tree(
            scenario, depth, self.config.tree_max_depth, self.config.tree_max_nodes
        )
        try:
            return explain_node(scenario, tree, node_id)
        except SimulationError:
            raise NotFound("unknown_node") from None


def _json_value(value):
    if value is UNKNOWN:
        return None
    if isinstance(value, date):
        return value.isoformat()
    return value
