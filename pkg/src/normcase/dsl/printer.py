"""Canonical textual form of a parsed specification.

``parse_spec(print_spec(s))`` is structurally equal to ``s``: the printer
emits minimal parentheses that re-parse to the same tree shape, LF line
endings and two-space indentation.
"""

from __future__ import annotations

from datetime import date

from .model import (
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
    SourceRef,
    SpecText,
)

HEADER = "# norm specification (canonical form)"

# Higher binds tighter; primaries sit above all operators.
_PRECEDENCE = {Or: 1, And: 2, Not: 3, Compare: 4}


def _prec(e: Expr) -> int:
    return _PRECEDENCE.get(type(e), 5)


def _literal(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, date):
        return value.isoformat()
    if isinstance(value, int):
        return str(value)
    return f'"{value}"'


def print_expr(e: Expr) -> str:
    if isinstance(e, Literal):
        return _literal(e.value)
    if isinstance(e, FactLookup):
        return e.name
    if isinstance(e, DeadlinePassed):
        return "deadline-passed"
    if isinstance(e, Not):
        inner = print_expr(e.operand)
        if _prec(e.operand) < _prec(e):
            inner = f"({inner})"
        return f"not {inner}"
    if isinstance(e, (And, Or)):
        op = "and" if isinstance(e, And) else "or"
        left = print_expr(e.left)
        right = print_expr(e.right)
        # Left-associative: same-precedence children need parens on the right
        # side only, so the flat form re-parses to the identical tree.
        if _prec(e.left) < _prec(e):
            left = f"({left})"
        if _prec(e.right) <= _prec(e):
            right = f"({right})"
        return f"{left} {op} {right}"
    if isinstance(e, Compare):
        sides = []
        for side in (e.left, e.right):
            text = print_expr(side)
            # Operands are primaries in the grammar; anything built from an
            # operator must be re-wrapped to survive the round trip.
            if _prec(side) < 5:
                text = f"({text})"
            sides.append(text)
        return f"{sides[0]} {e.op} {sides[1]}"
    raise AssertionError(f"unhandled expression node {e!r}")


def _source_line(s: SourceRef) -> str:
    parts = [f'source "{s.title}"']
    if s.url:
        parts.append(f'url "{s.url}"')
    if s.applicable_from:
        parts.append(f"from {s.applicable_from.isoformat()}")
    return " ".join(parts)


def _fact_lines(f: FactDecl) -> list[str]:
    return [f"fact {f.name} : {f.value_type.value}"]


def _act_lines(a: ActDecl) -> list[str]:
    lines = [f"act {a.name}", f"  actor {a.actor}", f"  recipient {a.recipient}"]
    lines.append(f"  conditioned by {print_expr(a.condition)}")
    for c in a.creates:
        if c.args:
            args = ", ".join(_literal(arg.value) for arg in c.args)
            lines.append(f"  creates {c.fact}({args})")
        else:
            lines.append(f"  creates {c.fact}")
    for t in a.terminates:
        lines.append(f"  terminates {t.target}")
    for i in a.imposes:
        lines.append(f"  imposes {i.duty}")
    for s in a.sources:
        lines.append(f"  {_source_line(s)}")
    return lines


def _duty_lines(d: DutyDecl) -> list[str]:
    lines = [f"duty {d.name}", f"  holder {d.holder}", f"  claimant {d.claimant}"]
    if d.deadline_fact:
        lines.append(f"  deadline {d.deadline_fact}")
    lines.append(f"  violated when {print_expr(d.violated_when)}")
    if d.imposed_initially:
        lines.append("  imposed initially")
    for s in d.sources:
        lines.append(f"  {_source_line(s)}")
    return lines


def print_declaration(decl: ActDecl | DutyDecl) -> str:
    """One act or duty block in canonical form (used by the rule editor)."""
    lines = _act_lines(decl) if isinstance(decl, ActDecl) else _duty_lines(decl)
    return "\n".join(lines) + "\n"


def print_spec(spec: NormSpec, origin: str = "<printed>") -> SpecText:
    blocks: list[list[str]] = [[HEADER]]
    for f in spec.facts:
        blocks.append(_fact_lines(f))
    for a in spec.acts:
        blocks.append(_act_lines(a))
    for d in spec.duties:
        blocks.append(_duty_lines(d))
    content = "\n\n".join("\n".join(b) for b in blocks) + "\n"
    return SpecText(content, origin)
