"""The norm-specification language: parsing, validation, canonical printing.

A specification declares typed facts, acts (with a three-valued condition and
effects on facts and duties) and duties (with a violation condition, usually a
deadline).  Specifications are plain UTF-8 text, one declaration per block,
comments starting with ``#``.
"""

from .model import (
    ActDecl,
    And,
    Compare,
    CreateEffect,
    DeadlinePassed,
    Diagnostic,
    DutyDecl,
    Expr,
    FactDecl,
    FactLookup,
    ImposeEffect,
    Literal,
    NormSpec,
    Not,
    Or,
    Param,
    ScalarType,
    SourceRef,
    SpecParseError,
    SpecText,
    TerminateEffect,
)
from .parser import parse_spec, validate_rule_text
from .printer import print_expr, print_spec

__all__ = [
    "ActDecl",
    "And",
    "Compare",
    "CreateEffect",
    "DeadlinePassed",
    "Diagnostic",
    "DutyDecl",
    "Expr",
    "FactDecl",
    "FactLookup",
    "ImposeEffect",
    "Literal",
    "NormSpec",
    "Not",
    "Or",
    "Param",
    "ScalarType",
    "SourceRef",
    "SpecParseError",
    "SpecText",
    "TerminateEffect",
    "parse_spec",
    "print_expr",
    "print_spec",
    "validate_rule_text",
]
