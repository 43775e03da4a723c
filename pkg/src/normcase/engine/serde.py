"""JSON snapshot format for norm states and violations.

The field names (``assignments``, ``duties``, ``history``, ``clock``) are part
of the persisted format and must stay stable across versions.
"""

from __future__ import annotations

import hashlib
import json
from datetime import date, datetime

from ..dsl.model import NormSpec, ScalarType, SourceRef
from .model import (
    UNKNOWN,
    DutyInstance,
    ExecutedAction,
    NormState,
    Status,
    Value,
    Violation,
    ViolationKind,
)


def _value_to_json(value: Value):
    if value is UNKNOWN:
        return None
    if isinstance(value, date):
        return value.isoformat()
    return value


def _value_from_json(spec: NormSpec, name: str, raw) -> Value:
    if raw is None:
        return UNKNOWN
    if spec.fact(name).value_type is ScalarType.DATE:
        return date.fromisoformat(raw)
    return raw


def source_to_doc(s: SourceRef) -> dict:
    return {
        "title": s.title,
        "url": s.url,
        "applicableFrom": s.applicable_from.isoformat() if s.applicable_from else None,
    }


def source_from_doc(doc: dict) -> SourceRef:
    applicable = doc.get("applicableFrom")
    return SourceRef(
        title=doc["title"],
        url=doc.get("url"),
        applicable_from=date.fromisoformat(applicable) if applicable else None,
    )


def state_to_doc(state: NormState) -> dict:
    return {
        "assignments": {
            name: _value_to_json(value) for name, value in state.assignments.items()
        },
        "duties": [
            {
                "duty": d.duty,
                "holder": d.holder,
                "claimant": d.claimant,
                "deadline": d.deadline.isoformat() if d.deadline else None,
                "fulfilled": d.fulfilled,
                "violatedAt": d.violated_at.isoformat() if d.violated_at else None,
            }
            for d in state.duties
        ],
        "history": [
            {
                "act": e.act,
                "actor": e.actor,
                "at": e.at.isoformat(),
                "status": e.status_at_execution.value,
                "motivation": e.motivation,
            }
            for e in state.history
        ],
        "clock": state.clock.isoformat(),
    }


def state_from_doc(spec: NormSpec, doc: dict) -> NormState:
    return NormState(
        spec=spec,
        assignments={
            name: _value_from_json(spec, name, raw)
            for name, raw in doc["assignments"].items()
        },
        duties=tuple(
            DutyInstance(
                duty=d["duty"],
                holder=d["holder"],
                claimant=d["claimant"],
                deadline=date.fromisoformat(d["deadline"]) if d["deadline"] else None,
                fulfilled=d["fulfilled"],
                violated_at=(
                    date.fromisoformat(d["violatedAt"]) if d["violatedAt"] else None
                ),
            )
            for d in doc["duties"]
        ),
        history=tuple(
            ExecutedAction(
                act=e["act"],
                actor=e["actor"],
                at=datetime.fromisoformat(e["at"]),
                status_at_execution=Status(e["status"]),
                motivation=e["motivation"],
            )
            for e in doc["history"]
        ),
        clock=date.fromisoformat(doc["clock"]),
    )


def violation_to_doc(v: Violation) -> dict:
    return {
        "kind": v.kind.value,
        "subject": v.subject,
        "at": v.at.isoformat(),
        "explanation": v.explanation,
        "motivation": v.motivation,
        "sources": [source_to_doc(s) for s in v.sources],
    }


def violation_from_doc(doc: dict) -> Violation:
    return Violation(
        kind=ViolationKind(doc["kind"]),
        subject=doc["subject"],
        at=datetime.fromisoformat(doc["at"]),
        explanation=doc["explanation"],
        motivation=doc.get("motivation"),
        sources=tuple(source_from_doc(s) for s in doc.get("sources", [])),
    )


def state_digest(state: NormState) -> str:
    """Stable short hash of the serializable part of a state."""
    payload = json.dumps(state_to_doc(state), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()[:16]
