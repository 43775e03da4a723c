"""Hand-written line-oriented parser for norm specifications.

Grammar sketch::

    spec        := (fact | act | duty)*
    fact        := "fact" NAME ":" TYPE
    act         := "act" NAME property*
    duty        := "duty" NAME property*
    property    := "actor" ROLE | "recipient" ROLE
                 | "conditioned by" expr
                 | "creates" NAME [ "(" literal ("," literal)* ")" ]
                 | "terminates" NAME | "imposes" NAME
                 | "holder" ROLE | "claimant" ROLE
                 | "deadline" NAME | "violated when" expr
                 | "imposed initially"
                 | "source" STRING [ "url" STRING ] [ "from" DATE ]
    expr        := or_expr
    or_expr     := and_expr ("or" and_expr)*
    and_expr    := not_expr ("and" not_expr)*
    not_expr    := "not" not_expr | comparison
    comparison  := primary [ ("=" | "!=" | "<" | "<=" | ">" | ">=") primary ]
    primary     := literal | NAME | "(" expr ")"

Identifiers are case-sensitive ASCII, hyphens allowed.  Comments run from
``#`` to end of line.  A declaration header always starts a new block, so
indentation is conventional rather than significant.
"""

from __future__ import annotations

import re
from datetime import date
from typing import Iterator

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
    conjuncts,
)

DECL_KEYWORDS = ("fact", "act", "duty")
RESERVED = {
    "fact", "act", "duty", "actor", "recipient", "conditioned", "creates",
    "terminates", "imposes", "holder", "claimant", "deadline", "violated",
    "imposed", "source", "url", "from", "by", "when", "initially",
    "and", "or", "not", "true", "false",
}
DEADLINE_PASSED = "deadline-passed"

_IDENT_RE = re.compile(r"[A-Za-z][A-Za-z0-9_-]*")
_INT_RE = re.compile(r"-?[0-9]+")
_DATE_RE = re.compile(r"[0-9]{4}-[0-9]{2}-[0-9]{2}")


class _ParseAbort(Exception):
    """Internal: unwinds to the declaration loop after an unrecoverable line."""


class _Errors:
    def __init__(self) -> None:
        self.items: list[Diagnostic] = []

    def error(self, message: str, line: int, column: int) -> None:
        self.items.append(Diagnostic("error", message, line, column))

    def abort(self, message: str, line: int, column: int) -> None:
        self.error(message, line, column)
        raise _ParseAbort()


def _strip_comment(raw: str) -> str:
    """Remove a trailing comment, leaving quoted ``#`` characters alone."""
    in_string = False
    for i, ch in enumerate(raw):
        if ch == '"':
            in_string = not in_string
        elif ch == "#" and not in_string:
            return raw[:i]
    return raw


class _Line:
    def __init__(self, number: int, text: str):
        self.number = number
        self.text = text
        self.indent = len(text) - len(text.lstrip()) + 1  # 1-based column

    def words(self) -> list[str]:
        return self.text.split()


# --- expression scanner/parser ----------------------------------------------


class _Token:
    def __init__(self, kind: str, value, line: int, column: int):
        self.kind = kind  # ident, int, date, string, op, lparen, rparen, comma, kw
        self.value = value
        self.line = line
        self.column = column


def _tokenize(text: str, line_no: int, col_offset: int, errs: _Errors) -> list[_Token]:
    tokens: list[_Token] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        col = col_offset + i
        if ch.isspace():
            i += 1
            continue
        if ch == '"':
            end = text.find('"', i + 1)
            if end < 0:
                errs.abort("unterminated string literal", line_no, col)
            tokens.append(_Token("string", text[i + 1 : end], line_no, col))
            i = end + 1
            continue
        if ch == "(":
            tokens.append(_Token("lparen", "(", line_no, col))
            i += 1
            continue
        if ch == ")":
            tokens.append(_Token("rparen", ")", line_no, col))
            i += 1
            continue
        if ch == ",":
            tokens.append(_Token("comma", ",", line_no, col))
            i += 1
            continue
        if text.startswith(("<=", ">=", "!="), i):
            tokens.append(_Token("op", text[i : i + 2], line_no, col))
            i += 2
            continue
        if ch in "<>=":
            tokens.append(_Token("op", ch, line_no, col))
            i += 1
            continue
        m = _DATE_RE.match(text, i)
        if m:
            try:
                value = date.fromisoformat(m.group())
            except ValueError:
                errs.abort(f"invalid date literal '{m.group()}'", line_no, col)
            tokens.append(_Token("date", value, line_no, col))
            i = m.end()
            continue
        m = _INT_RE.match(text, i)
        if m:
            tokens.append(_Token("int", int(m.group()), line_no, col))
            i = m.end()
            continue
        m = _IDENT_RE.match(text, i)
        if m:
            word = m.group()
            if word in ("and", "or", "not", "true", "false"):
                tokens.append(_Token("kw", word, line_no, col))
            else:
                tokens.append(_Token("ident", word, line_no, col))
            i = m.end()
            continue
        errs.abort(f"unexpected character '{ch}'", line_no, col)
    return tokens


class _ExprParser:
    def __init__(self, tokens: list[_Token], errs: _Errors, line: int, end_col: int):
        self.tokens = tokens
        self.pos = 0
        self.errs = errs
        self.line = line
        self.end_col = end_col

    def peek(self) -> _Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self) -> _Token:
        tok = self.peek()
        if tok is None:
            self.errs.abort("unexpected end of expression", self.line, self.end_col)
        self.pos += 1
        return tok

    def parse(self) -> Expr:
        e = self.or_expr()
        tok = self.peek()
        if tok is not None:
            self.errs.abort(
                f"unexpected token '{tok.value}' after expression", tok.line, tok.column
            )
        return e

    def or_expr(self) -> Expr:
        e = self.and_expr()
        while (tok := self.peek()) and tok.kind == "kw" and tok.value == "or":
            self.next()
            e = Or(e, self.and_expr())
        return e

    def and_expr(self) -> Expr:
        e = self.not_expr()
        while (tok := self.peek()) and tok.kind == "kw" and tok.value == "and":
            self.next()
            e = And(e, self.not_expr())
        return e

    def not_expr(self) -> Expr:
        tok = self.peek()
        if tok and tok.kind == "kw" and tok.value == "not":
            self.next()
            return Not(self.not_expr())
        return self.comparison()

    def comparison(self) -> Expr:
        left = self.primary()
        tok = self.peek()
        if tok and tok.kind == "op":
            self.next()
            right = self.primary()
            return Compare(tok.value, left, right)
        return left

    def primary(self) -> Expr:
        tok = self.next()
        if tok.kind == "lparen":
            e = self.or_expr()
            closing = self.next()
            if closing.kind != "rparen":
                self.errs.abort("expected ')'", closing.line, closing.column)
            return e
        if tok.kind == "kw" and tok.value in ("true", "false"):
            return Literal(tok.value == "true")
        if tok.kind == "int":
            return Literal(tok.value)
        if tok.kind == "date":
            return Literal(tok.value)
        if tok.kind == "string":
            return Literal(tok.value)
        if tok.kind == "ident":
            if tok.value == DEADLINE_PASSED:
                return DeadlinePassed()
            return FactLookup(tok.value)
        self.errs.abort(f"unexpected token '{tok.value}'", tok.line, tok.column)
        raise AssertionError("unreachable")


# --- declaration parsing -----------------------------------------------------

# Expression positions are remembered so identifier resolution and type
# checking (which run after all declarations are known) can still point at
# the offending line.
_ExprSite = tuple[Expr, int, int, str]  # expr, line, column, context ("act"/"duty")


class _Parser:
    def __init__(self, src: SpecText):
        self.src = src
        self.errs = _Errors()
        self.facts: list[FactDecl] = []
        self.acts: list[ActDecl] = []
        self.duties: list[DutyDecl] = []
        self.decl_lines: dict[str, _Line] = {}
        self.expr_sites: list[_ExprSite] = []
        self.effect_sites: list[tuple[str, object, int, int]] = []

    # -- helpers

    def _lines(self) -> Iterator[_Line]:
        for number, raw in enumerate(self.src.content.splitlines(), start=1):
            stripped = _strip_comment(raw)
            if stripped.strip():
                yield _Line(number, stripped)

    def _require_name(self, line: _Line, after: str) -> str:
        rest = line.text.strip()[len(after) :].strip()
        col = line.text.find(rest, line.indent - 1) + 1 if rest else len(line.text) + 1
        if not rest:
            self.errs.abort(f"expected a name after '{after}'", line.number, col)
        m = _IDENT_RE.fullmatch(rest)
        if not m or rest in RESERVED:
            self.errs.abort(f"invalid identifier '{rest}'", line.number, col)
        return rest

    def _register(self, name: str, line: _Line) -> None:
        if name in self.decl_lines:
            self.errs.error(f"duplicate name '{name}'", line.number, line.indent)
        else:
            self.decl_lines[name] = line

    def _parse_expr(self, line: _Line, keyword: str, context: str) -> Expr:
        m = re.search(keyword.replace(" ", r"\s+"), line.text)
        assert m is not None  # caller checked the leading words
        body_start = m.end()
        body = line.text[body_start:]
        tokens = _tokenize(body, line.number, body_start + 1, self.errs)
        if not tokens:
            self.errs.abort(
                f"expected an expression after '{keyword}'",
                line.number,
                body_start + 1,
            )
        expr = _ExprParser(tokens, self.errs, line.number, len(line.text) + 1).parse()
        self.expr_sites.append((expr, line.number, tokens[0].column, context))
        return expr

    # -- top level

    def run(self) -> NormSpec:
        lines = list(self._lines())
        i = 0
        while i < len(lines):
            line = lines[i]
            head = line.words()[0]
            try:
                if head == "fact":
                    self._fact(line)
                    i += 1
                elif head in ("act", "duty"):
                    block = [line]
                    i += 1
                    while i < len(lines) and lines[i].words()[0] not in DECL_KEYWORDS:
                        block.append(lines[i])
                        i += 1
                    if head == "act":
                        self._act(block)
                    else:
                        self._duty(block)
                else:
                    self.errs.error(
                        f"expected declaration, found '{head}'", line.number, line.indent
                    )
                    i += 1
            except _ParseAbort:
                i += 1
                while i < len(lines) and lines[i].words()[0] not in DECL_KEYWORDS:
                    i += 1
        self._validate()
        if self.errs.items:
            raise SpecParseError(self.errs.items)
        return NormSpec(tuple(self.facts), tuple(self.acts), tuple(self.duties))

    def _fact(self, line: _Line) -> None:
        m = re.fullmatch(
            r"\s*fact\s+([A-Za-z][A-Za-z0-9_-]*)\s*:\s*(\S+)\s*", line.text
        )
        if not m:
            self.errs.abort("malformed fact declaration", line.number, line.indent)
        name, type_word = m.group(1), m.group(2)
        if name in RESERVED:
            self.errs.abort(f"invalid identifier '{name}'", line.number, line.indent)
        try:
            scalar = ScalarType(type_word)
        except ValueError:
            self.errs.abort(
                f"unknown type '{type_word}' (expected boolean, integer, text or date)",
                line.number,
                line.text.index(type_word) + 1,
            )
        self._register(name, line)
        self.facts.append(FactDecl(name, (Param("value", scalar),)))

    def _act(self, block: list[_Line]) -> None:
        header = block[0]
        name = self._require_name(header, "act")
        self._register(name, header)
        actor = recipient = None
        condition: Expr = Literal(True)
        creates: list[CreateEffect] = []
        terminates: list[TerminateEffect] = []
        imposes: list[ImposeEffect] = []
        sources: list[SourceRef] = []
        for line in block[1:]:
            words = line.words()
            head = words[0]
            if head == "actor":
                actor = self._require_name(line, "actor")
            elif head == "recipient":
                recipient = self._require_name(line, "recipient")
            elif head == "conditioned":
                if len(words) < 2 or words[1] != "by":
                    self.errs.abort("expected 'conditioned by'", line.number, line.indent)
                condition = self._parse_expr(line, "conditioned by", "act")
            elif head == "creates":
                creates.append(self._create_effect(line))
            elif head == "terminates":
                target = self._require_name(line, "terminates")
                terminates.append(TerminateEffect(target))
                self.effect_sites.append(("terminates", terminates[-1], line.number, line.indent))
            elif head == "imposes":
                target = self._require_name(line, "imposes")
                imposes.append(ImposeEffect(target))
                self.effect_sites.append(("imposes", imposes[-1], line.number, line.indent))
            elif head == "source":
                sources.append(self._source(line))
            else:
                self.errs.error(
                    f"unexpected line '{head}' in act declaration", line.number, line.indent
                )
        for role, label in ((actor, "actor"), (recipient, "recipient")):
            if role is None:
                self.errs.error(
                    f"act '{name}' is missing its {label}", header.number, header.indent
                )
        self.acts.append(
            ActDecl(
                name,
                actor or "",
                recipient or "",
                condition,
                tuple(creates),
                tuple(terminates),
                tuple(imposes),
                tuple(sources),
            )
        )

    def _create_effect(self, line: _Line) -> CreateEffect:
        body = line.text.strip()[len("creates") :].strip()
        col = line.text.index(body) + 1 if body else line.indent
        m = re.fullmatch(r"([A-Za-z][A-Za-z0-9_-]*)\s*(\((.*)\))?", body)
        if not m:
            self.errs.abort("malformed creates effect", line.number, col)
        fact_name = m.group(1)
        args: list[Literal] = []
        if m.group(2) is not None:
            tokens = _tokenize(m.group(3), line.number, col + body.index("(") + 1, self.errs)
            expect_value = True
            for tok in tokens:
                if expect_value:
                    if tok.kind == "kw" and tok.value in ("true", "false"):
                        args.append(Literal(tok.value == "true"))
                    elif tok.kind in ("int", "date", "string"):
                        args.append(Literal(tok.value))
                    else:
                        self.errs.abort(
                            f"expected a literal argument, found '{tok.value}'",
                            tok.line,
                            tok.column,
                        )
                    expect_value = False
                else:
                    if tok.kind != "comma":
                        self.errs.abort("expected ','", tok.line, tok.column)
                    expect_value = True
            if expect_value and tokens:
                self.errs.abort("trailing ',' in argument list", line.number, col)
        effect = CreateEffect(fact_name, tuple(args))
        self.effect_sites.append(("creates", effect, line.number, col))
        return effect

    def _duty(self, block: list[_Line]) -> None:
        header = block[0]
        name = self._require_name(header, "duty")
        self._register(name, header)
        holder = claimant = None
        deadline_fact: str | None = None
        violated_when: Expr | None = None
        imposed_initially = False
        sources: list[SourceRef] = []
        for line in block[1:]:
            words = line.words()
            head = words[0]
            if head == "holder":
                holder = self._require_name(line, "holder")
            elif head == "claimant":
                claimant = self._require_name(line, "claimant")
            elif head == "deadline":
                deadline_fact = self._require_name(line, "deadline")
                self.effect_sites.append(("deadline", deadline_fact, line.number, line.indent))
            elif head == "violated":
                if len(words) < 2 or words[1] != "when":
                    self.errs.abort("expected 'violated when'", line.number, line.indent)
                violated_when = self._parse_expr(line, "violated when", "duty")
            elif head == "imposed":
                if len(words) != 2 or words[1] != "initially":
                    self.errs.abort("expected 'imposed initially'", line.number, line.indent)
                imposed_initially = True
            elif head == "source":
                sources.append(self._source(line))
            else:
                self.errs.error(
                    f"unexpected line '{head}' in duty declaration", line.number, line.indent
                )
        for role, label in ((holder, "holder"), (claimant, "claimant")):
            if role is None:
                self.errs.error(
                    f"duty '{name}' is missing its {label}", header.number, header.indent
                )
        if violated_when is None:
            self.errs.error(
                f"duty '{name}' is missing a 'violated when' condition",
                header.number,
                header.indent,
            )
            violated_when = Literal(False)
        self.duties.append(
            DutyDecl(
                name,
                holder or "",
                claimant or "",
                violated_when,
                deadline_fact,
                imposed_initially,
                tuple(sources),
            )
        )

    def _source(self, line: _Line) -> SourceRef:
        start = line.text.index("source") + len("source")
        tokens = _tokenize(line.text[start:], line.number, start + 1, self.errs)
        title: str | None = None
        url: str | None = None
        applicable_from: date | None = None
        pos = 0
        if pos < len(tokens) and tokens[pos].kind == "string":
            title = tokens[pos].value
            pos += 1
        else:
            self.errs.abort("expected a quoted source title", line.number, line.indent)
        while pos < len(tokens):
            tok = tokens[pos]
            if tok.kind == "ident" and tok.value == "url":
                if pos + 1 >= len(tokens) or tokens[pos + 1].kind != "string":
                    self.errs.abort("expected a quoted url", tok.line, tok.column)
                url = tokens[pos + 1].value
                pos += 2
            elif tok.kind == "ident" and tok.value == "from":
                if pos + 1 >= len(tokens) or tokens[pos + 1].kind != "date":
                    self.errs.abort("expected a date after 'from'", tok.line, tok.column)
                applicable_from = tokens[pos + 1].value
                pos += 2
            else:
                self.errs.abort(f"unexpected token '{tok.value}'", tok.line, tok.column)
        if not title:
            self.errs.abort("source title must be non-empty", line.number, line.indent)
        return SourceRef(title, url, applicable_from)

    # -- resolution and type checking

    def _validate(self) -> None:
        fact_types = {f.name: f.value_type for f in self.facts}
        duty_names = {d.name for d in self.duties}

        for expr, line, column, context in self.expr_sites:
            self._check_expr(expr, fact_types, context, line, column)

        for kind, payload, line, column in self.effect_sites:
            if kind == "creates":
                assert isinstance(payload, CreateEffect)
                self._check_create(payload, fact_types, line, column)
            elif kind == "terminates":
                assert isinstance(payload, TerminateEffect)
                if payload.target not in fact_types and payload.target not in duty_names:
                    self.errs.error(
                        f"unresolved identifier '{payload.target}'", line, column
                    )
            elif kind == "imposes":
                assert isinstance(payload, ImposeEffect)
                if payload.duty not in duty_names:
                    self.errs.error(
                        f"unresolved identifier '{payload.duty}' (imposes requires a duty)",
                        line,
                        column,
                    )
            elif kind == "deadline":
                assert isinstance(payload, str)
                if payload not in fact_types:
                    self.errs.error(f"unresolved identifier '{payload}'", line, column)
                elif fact_types[payload] is not ScalarType.DATE:
                    self.errs.error(
                        f"type mismatch: deadline fact '{payload}' must be a date",
                        line,
                        column,
                    )

    def _check_create(
        self, effect: CreateEffect, fact_types: dict[str, ScalarType], line: int, column: int
    ) -> None:
        if effect.fact not in fact_types:
            self.errs.error(f"unresolved identifier '{effect.fact}'", line, column)
            return
        expected = fact_types[effect.fact]
        if not effect.args:
            if expected is not ScalarType.BOOLEAN:
                self.errs.error(
                    f"type mismatch: creates '{effect.fact}' needs a {expected.value} argument",
                    line,
                    column,
                )
            return
        if len(effect.args) != 1:
            self.errs.error(
                f"type mismatch: creates '{effect.fact}' takes 1 argument, got {len(effect.args)}",
                line,
                column,
            )
            return
        got = _literal_type(effect.args[0])
        if got is not expected:
            self.errs.error(
                f"type mismatch: creates '{effect.fact}' expects {expected.value}, got {got.value}",
                line,
                column,
            )

    def _check_expr(
        self,
        expr: Expr,
        fact_types: dict[str, ScalarType],
        context: str,
        line: int,
        column: int,
    ) -> None:
        t = self._expr_type(expr, fact_types, context, line, column)
        if t is not None and t is not ScalarType.BOOLEAN:
            self.errs.error(
                f"type mismatch: condition must be boolean, got {t.value}", line, column
            )

    def _expr_type(
        self,
        expr: Expr,
        fact_types: dict[str, ScalarType],
        context: str,
        line: int,
        column: int,
    ) -> ScalarType | None:
        if isinstance(expr, Literal):
            return _literal_type(expr)
        if isinstance(expr, FactLookup):
            if expr.name not in fact_types:
                self.errs.error(f"unresolved identifier '{expr.name}'", line, column)
                return None
            return fact_types[expr.name]
        if isinstance(expr, DeadlinePassed):
            if context != "duty":
                self.errs.error(
                    "'deadline-passed' is only valid in a duty's violation condition",
                    line,
                    column,
                )
            return ScalarType.BOOLEAN
        if isinstance(expr, Not):
            t = self._expr_type(expr.operand, fact_types, context, line, column)
            if t is not None and t is not ScalarType.BOOLEAN:
                self.errs.error(
                    f"type mismatch: 'not' needs a boolean operand, got {t.value}",
                    line,
                    column,
                )
            return ScalarType.BOOLEAN
        if isinstance(expr, (And, Or)):
            for side in (expr.left, expr.right):
                t = self._expr_type(side, fact_types, context, line, column)
                if t is not None and t is not ScalarType.BOOLEAN:
                    op = "and" if isinstance(expr, And) else "or"
                    self.errs.error(
                        f"type mismatch: '{op}' needs boolean operands, got {t.value}",
                        line,
                        column,
                    )
            return ScalarType.BOOLEAN
        if isinstance(expr, Compare):
            lt = self._expr_type(expr.left, fact_types, context, line, column)
            rt = self._expr_type(expr.right, fact_types, context, line, column)
            if lt is not None and rt is not None:
                if lt is not rt:
                    self.errs.error(
                        f"type mismatch: cannot compare {lt.value} with {rt.value}",
                        line,
                        column,
                    )
                elif expr.op in ("<", "<=", ">", ">=") and lt not in (
                    ScalarType.INTEGER,
                    ScalarType.DATE,
                ):
                    self.errs.error(
                        f"type mismatch: '{expr.op}' is only defined for integers and dates",
                        line,
                        column,
                    )
            return ScalarType.BOOLEAN
        raise AssertionError(f"unhandled expression node {expr!r}")


def _literal_type(lit: Literal) -> ScalarType:
    if isinstance(lit.value, bool):
        return ScalarType.BOOLEAN
    if isinstance(lit.value, int):
        return ScalarType.INTEGER
    if isinstance(lit.value, date):
        return ScalarType.DATE
    return ScalarType.TEXT


def parse_spec(src: SpecText | str) -> NormSpec:
    """Parse and validate a full specification.

    Raises :class:`SpecParseError` carrying one diagnostic per problem.
    """
    if isinstance(src, str):
        src = SpecText(src)
    return _Parser(src).run()


def validate_rule_text(rule_text: str, context: NormSpec) -> ActDecl | DutyDecl:
    """Parse a single act or duty declaration against an existing spec's facts.

    Used by the simulation rule editor: the declaration may redefine an
    existing act or duty (same name), so only fact references are resolved
    against the context.
    """
    stripped = rule_text.strip()
    if not stripped:
        raise SpecParseError([Diagnostic("error", "expected declaration", 1, 1)])
    head = stripped.split()[0]
    if head not in ("act", "duty"):
        raise SpecParseError(
            [Diagnostic("error", f"expected declaration, found '{head}'", 1, 1)]
        )

    fact_text = "\n".join(
        f"fact {f.name} : {f.value_type.value}" for f in context.facts
    )
    duty_stubs = ""
    if head == "act":
        # Existing duties stay referencable from the new act's effects.
        duty_stubs = "\n".join(
            f"duty {d.name}\n  holder {d.holder}\n  claimant {d.claimant}\n"
            f"  violated when false"
            for d in context.duties
        )
    preamble = fact_text + ("\n" + duty_stubs if duty_stubs else "")
    offset = preamble.count("\n") + 1 if preamble else 0

    try:
        spec = parse_spec(SpecText(preamble + "\n" + rule_text if preamble else rule_text))
    except SpecParseError as exc:
        adjusted = [
            Diagnostic(d.severity, d.message, max(1, d.line - offset), d.column)
            for d in exc.diagnostics
        ]
        raise SpecParseError(adjusted) from None

    n_new_acts = len(spec.acts)
    n_new_duties = len(spec.duties) - (len(context.duties) if head == "act" else 0)
    if n_new_acts + n_new_duties != 1:
        raise SpecParseError(
            [Diagnostic("error", "expected a single declaration", 1, 1)]
        )
    if head == "act":
        return spec.acts[-1]
    return spec.duties[-1]
