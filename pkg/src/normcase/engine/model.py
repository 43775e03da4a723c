"""Value and state types for the norm engine."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from datetime import date, datetime
from typing import Union

from ..dsl.model import NormSpec, SourceRef


class TruthValue(enum.Enum):
    TRUE = "true"
    FALSE = "false"
    UNKNOWN = "unknown"


class Status(enum.Enum):
    """Normative status of an act; values double as the API wire tokens."""

    ALLOWED = "toegestaan"
    NOT_ALLOWED = "niet_toegestaan"
    INDEFINITE = "onbestemd"


STATUS_BY_TRUTH = {
    TruthValue.TRUE: Status.ALLOWED,
    TruthValue.FALSE: Status.NOT_ALLOWED,
    TruthValue.UNKNOWN: Status.INDEFINITE,
}


class _Unknown:
    """Singleton marker for a fact whose value is not known."""

    _instance: "_Unknown | None" = None

    def __new__(cls) -> "_Unknown":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "Unknown"


UNKNOWN = _Unknown()

Value = Union[bool, int, str, date, _Unknown]


@dataclass(frozen=True)
class Reason:
    """Truth value of one top-level condition clause plus its sources."""

    clause: str
    truth: TruthValue
    sources: tuple[SourceRef, ...] = ()


@dataclass(frozen=True)
class NormativeStatus:
    status: Status
    reasons: tuple[Reason, ...] = ()


@dataclass(frozen=True)
class DutyInstance:
    duty: str  # DutyDecl name
    holder: str
    claimant: str
    deadline: date | None = None
    fulfilled: bool = False
    violated_at: date | None = None


@dataclass(frozen=True)
class ExecutedAction:
    act: str  # ActDecl name
    actor: str
    at: datetime
    status_at_execution: Status
    motivation: str | None = None


class ViolationKind(enum.Enum):
    NON_PERMITTED_EXECUTION = "non_permitted_execution"
    DUTY_VIOLATED = "duty_violated"


@dataclass(frozen=True)
class Violation:
    kind: ViolationKind
    subject: str  # act or duty name
    at: datetime
    explanation: str  # always non-empty: names the failing/unknown clauses
    motivation: str | None = None
    sources: tuple[SourceRef, ...] = ()


@dataclass(frozen=True)
class NormState:
    """Knowledge state of one case: immutable, updated by returning new values."""

    spec: NormSpec
    assignments: dict[str, Value]
    duties: tuple[DutyInstance, ...] = ()
    history: tuple[ExecutedAction, ...] = ()
    clock: date = field(default_factory=date.today)

    def executed_act_names(self) -> set[str]:
        return {e.act for e in self.history}


class EngineError(Exception):
    """Base class for evaluation and execution errors."""


class UnknownActError(EngineError):
    pass


class AlreadyExecutedError(EngineError):
    pass


class MotivationRequiredError(EngineError):
    pass


class TypeMismatchError(EngineError):
    pass
