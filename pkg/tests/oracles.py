"""Independent brute-force oracles the test suite checks the engine against.

Deliberately different formulations from the production code:

* the Kleene oracle encodes truth values as integers (false=0, unknown=1,
  true=2) and computes ``and`` as min, ``or`` as max and ``not`` as 2 - x,
  instead of the engine's case analysis;
* the tree oracle enumerates every executable act sequence by cloning
  states, instead of the simulator's breadth-first builder.
"""

from __future__ import annotations

from datetime import datetime, time

from normcase.dsl.model import (
    And,
    Compare,
    DeadlinePassed,
    Expr,
    FactLookup,
    Literal,
    Not,
    Or,
)

F, U, T = 0, 1, 2


def kleene_eval(expr: Expr, assignment: dict) -> int:
    """Evaluate to F/U/T; assignment maps fact name -> F/U/T for booleans or a
    raw int/str/date value (None for unknown) for comparison operands."""
    if isinstance(expr, Literal):
        if isinstance(expr.value, bool):
            return T if expr.value else F
        raise AssertionError("non-boolean literal in boolean position")
    if isinstance(expr, FactLookup):
        v = assignment.get(expr.name)
        if v is None:
            return U
        if isinstance(v, bool):
            return T if v else F
        if isinstance(v, int) and v in (F, U, T):
            return v
        raise AssertionError(f"fact '{expr.name}' is not a boolean truth value")
    if isinstance(expr, Not):
        return 2 - kleene_eval(expr.operand, assignment)
    if isinstance(expr, And):
        return min(kleene_eval(expr.left, assignment), kleene_eval(expr.right, assignment))
    if isinstance(expr, Or):
        return max(kleene_eval(expr.left, assignment), kleene_eval(expr.right, assignment))
    if isinstance(expr, Compare):
        left = _raw(expr.left, assignment)
        right = _raw(expr.right, assignment)
        if left is None or right is None:
            return U
        ops = {
            "=": lambda a, b: a == b,
            "!=": lambda a, b: a != b,
            "<": lambda a, b: a < b,
            "<=": lambda a, b: a <= b,
            ">": lambda a, b: a > b,
            ">=": lambda a, b: a >= b,
        }
        return T if ops[expr.op](left, right) else F
    if isinstance(expr, DeadlinePassed):
        raise AssertionError("deadline-passed is out of scope for the oracle")
    raise AssertionError(f"unhandled node {expr!r}")


def _raw(expr: Expr, assignment: dict):
    if isinstance(expr, Literal):
        return expr.value
    if isinstance(expr, FactLookup):
        return assignment.get(expr.name)
    v = kleene_eval(expr, assignment)
    if v == U:
        return None
    return v == T


def all_expressions(variables: list[str], operator_depth: int) -> list[Expr]:
    """Every and/or/not expression over the given boolean facts with operator
    nesting at most ``operator_depth``; each distinct shape appears once."""
    exact: list[list[Expr]] = [[FactLookup(v) for v in variables]]
    for _ in range(operator_depth):
        shallower = [e for level in exact[:-1] for e in level]
        deepest = exact[-1]
        level: list[Expr] = [Not(e) for e in deepest]
        for ctor in (And, Or):
            for left in deepest:
                for right in deepest:
                    level.append(ctor(left, right))
            for left in deepest:
                for right in shallower:
                    level.append(ctor(left, right))
            for left in shallower:
                for right in deepest:
                    level.append(ctor(left, right))
        exact.append(level)
    return [e for level in exact for e in level]


def all_assignments(variables: list[str]) -> list[dict[str, int]]:
    """All 3^n truth assignments over the given facts."""
    result: list[dict[str, int]] = [{}]
    for v in variables:
        result = [dict(a, **{v: tv}) for a in result for tv in (F, U, T)]
    return result


def enumerate_action_tree(state, depth: int) -> set[tuple]:
    """All reachable annotated paths by trying every act sequence.

    Each entry is a path of (act name, status token) pairs from the root.
    Not-allowed acts are recorded as leaf annotations and never expanded;
    allowed and indefinite acts are executed (with a stand-in motivation)
    and explored further.
    """
    from normcase.engine import Status, available_actions, execute

    found: set[tuple] = set()

    def walk(s, path: tuple, remaining: int) -> None:
        if remaining == 0:
            return
        for act, status in available_actions(s):
            entry = path + ((act.name, status.status.value),)
            found.add(entry)
            if status.status is Status.NOT_ALLOWED:
                continue
            child, _ = execute(
                s,
                act.name,
                "simulatie",
                datetime.combine(s.clock, time()),
                motivation="hypothetisch pad",
            )
            walk(child, entry, remaining - 1)

    walk(state, (), depth)
    return found
