"""Evaluation of a norm specification against the knowledge state of a case.

Conditions are evaluated in strong Kleene three-valued logic; an act's
normative status follows its condition (true = allowed, false = not allowed,
unknown = indefinite).  Executing acts applies their effects and appends to an
immutable history; duties carry deadlines and produce violations when their
violation condition becomes true.
"""

from .model import (
    UNKNOWN,
    AlreadyExecutedError,
    DutyInstance,
    EngineError,
    ExecutedAction,
    MotivationRequiredError,
    NormativeStatus,
    NormState,
    Reason,
    Status,
    TruthValue,
    TypeMismatchError,
    UnknownActError,
    Violation,
    ViolationKind,
)
from .ops import (
    action_status,
    assign_fact,
    available_actions,
    check_duties,
    eval_expr,
    execute,
    init_state,
)
from .serde import state_digest, state_from_doc, state_to_doc, violation_from_doc, violation_to_doc

__all__ = [
    "UNKNOWN",
    "AlreadyExecutedError",
    "DutyInstance",
    "EngineError",
    "ExecutedAction",
    "MotivationRequiredError",
    "NormState",
    "NormativeStatus",
    "Reason",
    "Status",
    "TruthValue",
    "TypeMismatchError",
    "UnknownActError",
    "Violation",
    "ViolationKind",
    "action_status",
    "assign_fact",
    "available_actions",
    "check_duties",
    "eval_expr",
    "execute",
    "init_state",
    "state_digest",
    "state_from_doc",
    "state_to_doc",
    "violation_from_doc",
    "violation_to_doc",
]
