"""Administrative domain types around the engine."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from datetime import date, datetime

from ..engine import NormState, Violation

CLIENT_KINDS = ("civilian", "organisation", "government")


class CaseStatus(enum.Enum):
    IN_BEHANDELING = "in_behandeling"
    WACHTEN_OP_BERICHT = "wachten_op_bericht"
    AFGEROND = "afgerond"


class UrgencyColor(enum.Enum):
    GREEN = "green"
    YELLOW = "yellow"
    RED = "red"


@dataclass(frozen=True)
class UrgencyClock:
    color: UrgencyColor
    overdue: bool


def compute_urgency(
    decision_term: date, today: date, red_days: int = 7, yellow_days: int = 21
) -> UrgencyClock:
    """Traffic light for an approaching decision term.

    Red means the deadline is very near; a term already in the past is red
    *and* flagged overdue, so the interface can say so explicitly instead of
    leaving users guessing what a red clock means.
    """
    remaining = (decision_term - today).days
    if remaining < 0:
        return UrgencyClock(UrgencyColor.RED, overdue=True)
    if remaining <= red_days:
        return UrgencyClock(UrgencyColor.RED, overdue=False)
    if remaining <= yellow_days:
        return UrgencyClock(UrgencyColor.YELLOW, overdue=False)
    return UrgencyClock(UrgencyColor.GREEN, overdue=False)


@dataclass(frozen=True)
class Client:
    id: int
    name: str
    kind: str  # one of CLIENT_KINDS


@dataclass(frozen=True)
class User:
    id: int
    name: str
    salt: str
    credential_hash: str  # never serialized into API responses
    role: str = "officer"  # single authorization level for now


@dataclass(frozen=True)
class AuditEvent:
    at: datetime
    user: str
    action: str
    detail: str


@dataclass(frozen=True)
class CaseRecord:
    """One case; replaced wholesale on every mutation."""

    id: int
    client: Client
    case_type: str
    created_on: date
    decision_term: date
    last_modified: datetime
    notes: str
    norm_state: NormState
    violations: tuple[Violation, ...] = ()
    audit: tuple[AuditEvent, ...] = ()
