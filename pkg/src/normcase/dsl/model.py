"""AST and diagnostics for the norm-specification language."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from datetime import date
from typing import Union


class ScalarType(enum.Enum):
    BOOLEAN = "boolean"
    INTEGER = "integer"
    TEXT = "text"
    DATE = "date"


@dataclass(frozen=True)
class SpecText:
    """Raw specification text plus a label for diagnostics."""

    content: str
    origin: str = "<literal>"


@dataclass(frozen=True)
class SourceRef:
    """Pointer to the legal source a declaration is based on."""

    title: str
    url: str | None = None
    applicable_from: date | None = None


@dataclass(frozen=True)
class Diagnostic:
    severity: str  # "error" | "warning"
    message: str
    line: int
    column: int

    def __str__(self) -> str:
        return f"{self.line}:{self.column}: {self.severity}: {self.message}"


class SpecParseError(Exception):
    """Raised when a specification or rule text does not parse or validate."""

    def __init__(self, diagnostics: list[Diagnostic]):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(str(d) for d in self.diagnostics))


# --- expressions -----------------------------------------------------------


@dataclass(frozen=True)
class Literal:
    value: Union[bool, int, str, date]


@dataclass(frozen=True)
class FactLookup:
    name: str


@dataclass(frozen=True)
class DeadlinePassed:
    """Built-in predicate, only meaningful inside a duty's violation condition."""


@dataclass(frozen=True)
class Compare:
    op: str  # one of =  !=  <  <=  >  >=
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Not:
    operand: "Expr"


@dataclass(frozen=True)
class And:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Or:
    left: "Expr"
    right: "Expr"


Expr = Union[Literal, FactLookup, DeadlinePassed, Compare, Not, And, Or]

ORDER_OPS = ("<", "<=", ">", ">=")
EQUALITY_OPS = ("=", "!=")


def conjuncts(e: Expr) -> list[Expr]:
    """Flatten a chain of top-level ``and`` nodes into its conjuncts."""
    if isinstance(e, And):
        return conjuncts(e.left) + conjuncts(e.right)
    return [e]


# --- declarations ----------------------------------------------------------


@dataclass(frozen=True)
class Param:
    name: str
    type: ScalarType


@dataclass(frozen=True)
class FactDecl:
    name: str
    params: tuple[Param, ...]

    @property
    def value_type(self) -> ScalarType:
        # Surface syntax only produces single-slot facts.
        return self.params[0].type


@dataclass(frozen=True)
class CreateEffect:
    fact: str
    args: tuple[Literal, ...]  # empty means boolean shorthand: set to true


@dataclass(frozen=True)
class TerminateEffect:
    target: str  # fact (cleared) or duty (discharged)


@dataclass(frozen=True)
class ImposeEffect:
    duty: str


@dataclass(frozen=True)
class ActDecl:
    name: str
    actor: str
    recipient: str
    condition: Expr
    creates: tuple[CreateEffect, ...] = ()
    terminates: tuple[TerminateEffect, ...] = ()
    imposes: tuple[ImposeEffect, ...] = ()
    sources: tuple[SourceRef, ...] = ()


@dataclass(frozen=True)
class DutyDecl:
    name: str
    holder: str
    claimant: str
    violated_when: Expr
    deadline_fact: str | None = None  # date-valued fact the deadline is read from
    imposed_initially: bool = False
    sources: tuple[SourceRef, ...] = ()


@dataclass(frozen=True)
class NormSpec:
    facts: tuple[FactDecl, ...] = ()
    acts: tuple[ActDecl, ...] = ()
    duties: tuple[DutyDecl, ...] = ()

    def fact(self, name: str) -> FactDecl:
        for f in self.facts:
            if f.name == name:
                return f
        raise KeyError(name)

    def act(self, name: str) -> ActDecl:
        for a in self.acts:
            if a.name == name:
                return a
        raise KeyError(name)

    def duty(self, name: str) -> DutyDecl:
        for d in self.duties:
            if d.name == name:
                return d
        raise KeyError(name)

    @property
    def sources(self) -> tuple[SourceRef, ...]:
        """All distinct sources referenced by declarations, in first-seen order."""
        seen: dict[SourceRef, None] = {}
        for decl in (*self.acts, *self.duties):
            for s in decl.sources:
                seen.setdefault(s)
        return tuple(seen)

    def declaration_names(self) -> list[str]:
        return (
            [f.name for f in self.facts]
            + [a.name for a in self.acts]
            + [d.name for d in self.duties]
        )
