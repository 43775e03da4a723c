"""Engine operations: evaluation, execution, duties.

All functions are pure: they take a :class:`NormState` and return a new one.
"""

from __future__ import annotations

from dataclasses import replace
from datetime import date, datetime
from typing import Mapping

from ..dsl.model import (
    ActDecl,
    And,
    Compare,
    DeadlinePassed,
    DutyDecl,
    Expr,
    FactDecl,
    FactLookup,
    Literal,
    NormSpec,
    Not,
    Or,
    ScalarType,
    conjuncts,
)
from ..dsl.printer import print_expr
from .model import (
    STATUS_BY_TRUTH,
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
    Value,
    Violation,
    ViolationKind,
)

_PYTHON_TYPES = {
    ScalarType.BOOLEAN: bool,
    ScalarType.INTEGER: int,
    ScalarType.TEXT: str,
    ScalarType.DATE: date,
}


def _check_value(fact: FactDecl, value: Value) -> None:
    if value is UNKNOWN:
        return
    expected = _PYTHON_TYPES[fact.value_type]
    # bool is a subclass of int; keep integers and booleans apart.
    if isinstance(value, bool) and expected is not bool:
        raise TypeMismatchError(
            f"fact '{fact.name}' expects {fact.value_type.value}, got boolean"
        )
    if not isinstance(value, expected):
        raise TypeMismatchError(
            f"fact '{fact.name}' expects {fact.value_type.value}, got {type(value).__name__}"
        )


def _impose(spec_duty: DutyDecl, assignments: Mapping[str, Value]) -> DutyInstance:
    deadline = None
    if spec_duty.deadline_fact:
        value = assignments.get(spec_duty.deadline_fact, UNKNOWN)
        if isinstance(value, date):
            deadline = value
    return DutyInstance(
        duty=spec_duty.name,
        holder=spec_duty.holder,
        claimant=spec_duty.claimant,
        deadline=deadline,
    )


def init_state(
    spec: NormSpec, assignments: Mapping[str, Value], clock: date
) -> NormState:
    """Build the initial state: given assignments, everything else Unknown.

    Duties marked ``imposed initially`` become active immediately, with their
    deadline read from the (just-assigned) deadline fact.
    """
    full: dict[str, Value] = {f.name: UNKNOWN for f in spec.facts}
    for name, value in assignments.items():
        try:
            fact = spec.fact(name)
        except KeyError:
            raise TypeMismatchError(f"no declared fact '{name}'") from None
        _check_value(fact, value)
        full[name] = value
    duties = tuple(
        _impose(d, full) for d in spec.duties if d.imposed_initially
    )
    return NormState(spec=spec, assignments=full, duties=duties, clock=clock)


# --- three-valued evaluation -------------------------------------------------


def _tv_not(a: TruthValue) -> TruthValue:
    if a is TruthValue.TRUE:
        return TruthValue.FALSE
    if a is TruthValue.FALSE:
        return TruthValue.TRUE
    return TruthValue.UNKNOWN


def _tv_and(a: TruthValue, b: TruthValue) -> TruthValue:
    if a is TruthValue.FALSE or b is TruthValue.FALSE:
        return TruthValue.FALSE
    if a is TruthValue.UNKNOWN or b is TruthValue.UNKNOWN:
        return TruthValue.UNKNOWN
    return TruthValue.TRUE


def _tv_or(a: TruthValue, b: TruthValue) -> TruthValue:
    if a is TruthValue.TRUE or b is TruthValue.TRUE:
        return TruthValue.TRUE
    if a is TruthValue.UNKNOWN or b is TruthValue.UNKNOWN:
        return TruthValue.UNKNOWN
    return TruthValue.FALSE


_NO_DEADLINE = object()


def _operand_value(state: NormState, e: Expr) -> Value:
    if isinstance(e, Literal):
        return e.value
    if isinstance(e, FactLookup):
        return state.assignments.get(e.name, UNKNOWN)
    # A parenthesized boolean expression on a comparison side.
    tv = _eval(state, e, _NO_DEADLINE)
    if tv is TruthValue.UNKNOWN:
        return UNKNOWN
    return tv is TruthValue.TRUE


def _eval(state: NormState, e: Expr, deadline) -> TruthValue:
    if isinstance(e, Literal):
        if not isinstance(e.value, bool):
            raise EngineError(f"non-boolean literal {e.value!r} in boolean position")
        return TruthValue.TRUE if e.value else TruthValue.FALSE
    if isinstance(e, FactLookup):
        value = state.assignments.get(e.name, UNKNOWN)
        if value is UNKNOWN:
            return TruthValue.UNKNOWN
        if not isinstance(value, bool):
            raise EngineError(f"fact '{e.name}' is not boolean")
        return TruthValue.TRUE if value else TruthValue.FALSE
    if isinstance(e, DeadlinePassed):
        if deadline is _NO_DEADLINE:
            raise EngineError("'deadline-passed' outside a duty context")
        if deadline is None:
            return TruthValue.UNKNOWN
        return TruthValue.TRUE if deadline < state.clock else TruthValue.FALSE
    if isinstance(e, Not):
        return _tv_not(_eval(state, e.operand, deadline))
    if isinstance(e, And):
        return _tv_and(_eval(state, e.left, deadline), _eval(state, e.right, deadline))
    if isinstance(e, Or):
        return _tv_or(_eval(state, e.left, deadline), _eval(state, e.right, deadline))
    if isinstance(e, Compare):
        left = _operand_value(state, e.left)
        right = _operand_value(state, e.right)
        if left is UNKNOWN or right is UNKNOWN:
            return TruthValue.UNKNOWN
        result = {
            "=": lambda a, b: a == b,
            "!=": lambda a, b: a != b,
            "<": lambda a, b: a < b,
            "<=": lambda a, b: a <= b,
            ">": lambda a, b: a > b,
            ">=": lambda a, b: a >= b,
        }[e.op](left, right)
        return TruthValue.TRUE if result else TruthValue.FALSE
    raise AssertionError(f"unhandled expression node {e!r}")


def eval_expr(state: NormState, e: Expr) -> TruthValue:
    """Strong Kleene evaluation of a well-typed boolean expression."""
    return _eval(state, e, _NO_DEADLINE)


def _resolve_act(state: NormState, act: str | ActDecl) -> ActDecl:
    if isinstance(act, ActDecl):
        return act
    try:
        return state.spec.act(act)
    except KeyError:
        raise UnknownActError(f"no declared act '{act}'") from None


def action_status(state: NormState, act: str | ActDecl) -> NormativeStatus:
    """Classify an act, with one reason per top-level conjunct of its condition."""
    decl = _resolve_act(state, act)
    truth = eval_expr(state, decl.condition)
    reasons = tuple(
        Reason(print_expr(c), eval_expr(state, c), decl.sources)
        for c in conjuncts(decl.condition)
    )
    return NormativeStatus(STATUS_BY_TRUTH[truth], reasons)


def available_actions(state: NormState) -> list[tuple[ActDecl, NormativeStatus]]:
    """Every declared act not yet executed, in declaration order."""
    done = state.executed_act_names()
    return [
        (a, action_status(state, a)) for a in state.spec.acts if a.name not in done
    ]


def _non_permitted_explanation(
    decl: ActDecl, status: NormativeStatus, label: str
) -> str:
    failing = [r for r in status.reasons if r.truth is TruthValue.FALSE]
    unknown = [r for r in status.reasons if r.truth is TruthValue.UNKNOWN]
    parts = [f"Actie '{decl.name}' uitgevoerd terwijl de status '{label}' was."]
    if failing:
        parts.append(
            "Niet voldaan: " + "; ".join(r.clause for r in failing) + "."
        )
    if unknown:
        parts.append(
            "Onbekend: " + "; ".join(r.clause for r in unknown) + "."
        )
    if decl.sources:
        parts.append("Bronnen: " + "; ".join(s.title for s in decl.sources) + ".")
    return " ".join(parts)


def execute(
    state: NormState,
    act_id: str,
    actor: str,
    at: datetime,
    motivation: str | None = None,
) -> tuple[NormState, Violation | None]:
    """Execute an act: apply effects, append history, report a violation.

    Acts are one-shot per case.  A non-allowed act may still be executed, but
    only with a non-empty motivation, and doing so records a violation whose
    explanation names the failing or unknown condition clauses.
    """
    decl = _resolve_act(state, act_id)
    if decl.name in state.executed_act_names():
        raise AlreadyExecutedError(f"act '{decl.name}' was already executed")
    status = action_status(state, decl)
    if status.status is not Status.ALLOWED and not (motivation and motivation.strip()):
        raise MotivationRequiredError(
            f"act '{decl.name}' is {status.status.value}; a motivation is required"
        )

    assignments = dict(state.assignments)
    duties = list(state.duties)
    for effect in decl.creates:
        fact = state.spec.fact(effect.fact)
        value: Value = True if not effect.args else effect.args[0].value
        _check_value(fact, value)
        assignments[effect.fact] = value
    for effect in decl.terminates:
        if any(f.name == effect.target for f in state.spec.facts):
            fact = state.spec.fact(effect.target)
            assignments[effect.target] = (
                False if fact.value_type is ScalarType.BOOLEAN else UNKNOWN
            )
        else:
            duties = [
                replace(d, fulfilled=True)
                if d.duty == effect.target and not d.fulfilled
                else d
                for d in duties
            ]
    for effect in decl.imposes:
        try:
            duty_decl = state.spec.duty(effect.duty)
        except KeyError:
            # The duty was removed from the effective spec (a deactivated rule
            # version in a simulation); there is nothing to impose.
            continue
        duties.append(_impose(duty_decl, assignments))

    entry = ExecutedAction(
        act=decl.name,
        actor=actor,
        at=at,
        status_at_execution=status.status,
        motivation=motivation,
    )
    new_state = NormState(
        spec=state.spec,
        assignments=assignments,
        duties=tuple(duties),
        history=state.history + (entry,),
        clock=max(state.clock, at.date()),
    )

    violation = None
    if status.status is not Status.ALLOWED:
        label = (
            "NIET toegestaan" if status.status is Status.NOT_ALLOWED else "Onbestemd"
        )
        violation = Violation(
            kind=ViolationKind.NON_PERMITTED_EXECUTION,
            subject=decl.name,
            at=at,
            explanation=_non_permitted_explanation(decl, status, label),
            motivation=motivation,
            sources=decl.sources,
        )
    return new_state, violation


def check_duties(state: NormState, clock: date) -> tuple[NormState, list[Violation]]:
    """Advance the clock and flag duties whose violation condition holds.

    Already-violated duties are left alone, so repeated checks are idempotent.
    """
    advanced = replace(state, clock=clock)
    duties = []
    violations = []
    for inst in advanced.duties:
        if inst.fulfilled or inst.violated_at is not None:
            duties.append(inst)
            continue
        decl = advanced.spec.duty(inst.duty)
        truth = _eval(advanced, decl.violated_when, inst.deadline)
        if truth is TruthValue.TRUE:
            duties.append(replace(inst, violated_at=clock))
            deadline_note = (
                f" (termijn {inst.deadline.isoformat()}, peildatum {clock.isoformat()})"
                if inst.deadline
                else f" (peildatum {clock.isoformat()})"
            )
            explanation = (
                f"Plicht '{decl.name}' van {inst.holder} jegens {inst.claimant} "
                f"is geschonden: {print_expr(decl.violated_when)}{deadline_note}."
            )
            if decl.sources:
                explanation += " Bronnen: " + "; ".join(s.title for s in decl.sources) + "."
            violations.append(
                Violation(
                    kind=ViolationKind.DUTY_VIOLATED,
                    subject=decl.name,
                    at=datetime.combine(clock, datetime.min.time()),
                    explanation=explanation,
                    sources=decl.sources,
                )
            )
        else:
            duties.append(inst)
    return replace(advanced, duties=tuple(duties)), violations


def assign_fact(state: NormState, name: str, value: Value) -> NormState:
    """Set (or clear, with UNKNOWN) one fact; history is untouched.

    Deadlines of active duty instances bound to the assigned fact follow the
    new value, so extending a decision term moves the duty along with it.
    """
    try:
        fact = state.spec.fact(name)
    except KeyError:
        raise TypeMismatchError(f"no declared fact '{name}'") from None
    _check_value(fact, value)
    assignments = dict(state.assignments)
    assignments[name] = value
    duties = tuple(
        replace(d, deadline=value if isinstance(value, date) else None)
        if (
            not d.fulfilled
            and d.violated_at is None
            and state.spec.duty(d.duty).deadline_fact == name
        )
        else d
        for d in state.duties
    )
    return replace(state, assignments=assignments, duties=duties)
