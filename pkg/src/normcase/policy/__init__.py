"""Policy bundles: a norm spec plus its question schema, parameters and fixtures.

A bundle lives in one directory: ``<name>.norm``, ``<name>.questions.json``,
``<name>.params.toml`` and ``fixtures/*.json``.  The package ships one bundle,
the Individuele Inkomenstoeslag (IIT) policy, whose thresholds and amounts are
illustrative configuration rather than the legally current values.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from datetime import date
from importlib import resources
from pathlib import Path

from .. import _toml
from ..dsl import NormSpec, ScalarType, SpecParseError, SpecText, parse_spec
from ..engine import UNKNOWN
from ..engine.model import Value

HOUSEHOLDS = ("single", "single-parent", "couple")


class PolicyError(Exception):
    """The bundle is inconsistent or unreadable; refuse to start."""


class AnswerError(ValueError):
    """One or more answers do not fit the question schema."""

    def __init__(self, fields: list[str]):
        self.fields = fields
        super().__init__("invalid answers: " + ", ".join(fields))


@dataclass(frozen=True)
class Question:
    fact: str
    prompt: str
    type: ScalarType
    required: bool = True
    allows_unknown: bool = True


@dataclass(frozen=True)
class QuestionSchema:
    questions: tuple[Question, ...] = ()

    def by_fact(self, fact: str) -> Question | None:
        for q in self.questions:
            if q.fact == fact:
                return q
        return None


@dataclass(frozen=True)
class SeedStep:
    execute: str
    motivation: str | None = None


@dataclass(frozen=True)
class Fixture:
    name: str
    label: str
    answers: dict
    seed: bool = False
    client_name: str = ""
    client_kind: str = "civilian"
    case_type: str = ""
    decision_term_days: int | None = None
    steps: tuple[SeedStep, ...] = ()


@dataclass(frozen=True)
class PolicyBundle:
    name: str
    spec_text: SpecText
    spec: NormSpec
    schema: QuestionSchema
    params: dict
    fixtures: dict[str, Fixture] = field(default_factory=dict)


def decode_value(value_type: ScalarType, raw) -> Value:
    """One JSON answer value to an engine value; None means unknown."""
    if raw is None:
        return UNKNOWN
    if value_type is ScalarType.BOOLEAN:
        if isinstance(raw, bool):
            return raw
    elif value_type is ScalarType.INTEGER:
        if isinstance(raw, int) and not isinstance(raw, bool):
            return raw
    elif value_type is ScalarType.TEXT:
        if isinstance(raw, str):
            return raw
    elif value_type is ScalarType.DATE:
        if isinstance(raw, str):
            return date.fromisoformat(raw)
    raise ValueError(f"expected {value_type.value}")


def decode_answers(spec: NormSpec, raw: dict) -> dict[str, Value]:
    """JSON answers to typed engine values, collecting per-field problems."""
    answers: dict[str, Value] = {}
    bad: list[str] = []
    for name, value in raw.items():
        try:
            fact = spec.fact(name)
        except KeyError:
            bad.append(name)
            continue
        try:
            answers[name] = decode_value(fact.value_type, value)
        except ValueError:
            bad.append(name)
    if bad:
        raise AnswerError(bad)
    return answers


def household_from_answers(assignments: dict) -> str | None:
    """Derive the household type the same way the grant conditions do."""
    single = assignments.get("single", UNKNOWN)
    child = assignments.get("child-at-home", UNKNOWN)
    if single is UNKNOWN:
        return None
    if not single:
        return "couple"
    if child is UNKNOWN:
        return None
    return "single-parent" if child else "single"


def decision_amount(household: str, params: dict) -> int:
    """Configured allowance for a household type; eligibility is assumed."""
    try:
        return params["amounts"][household]
    except KeyError:
        raise PolicyError(f"no configured amount for household '{household}'") from None


def _load_schema(raw: dict, spec: NormSpec) -> QuestionSchema:
    questions = []
    for q in raw["questions"]:
        try:
            fact = spec.fact(q["fact"])
        except KeyError:
            raise PolicyError(f"question references undeclared fact '{q['fact']}'")
        qtype = ScalarType(q["type"])
        if qtype is not fact.value_type:
            raise PolicyError(
                f"question '{q['fact']}' declares {qtype.value}, "
                f"fact is {fact.value_type.value}"
            )
        questions.append(
            Question(
                fact=q["fact"],
                prompt=q["prompt"],
                type=qtype,
                required=q.get("required", True),
                allows_unknown=q.get("allowsUnknown", True),
            )
        )
    return QuestionSchema(tuple(questions))


def _load_fixture(name: str, raw: dict, spec: NormSpec) -> Fixture:
    try:
        decode_answers(spec, raw.get("answers", {}))
    except AnswerError as exc:
        raise PolicyError(f"fixture '{name}' has ill-typed answers: {exc.fields}")
    client = raw.get("client", {})
    steps = tuple(
        SeedStep(execute=s["execute"], motivation=s.get("motivation"))
        for s in raw.get("seedSteps", [])
    )
    for step in steps:
        try:
            spec.act(step.execute)
        except KeyError:
            raise PolicyError(f"fixture '{name}' executes unknown act '{step.execute}'")
    return Fixture(
        name=name,
        label=raw.get("label", name),
        answers=raw.get("answers", {}),
        seed=raw.get("seed", False),
        client_name=client.get("name", ""),
        client_kind=client.get("kind", "civilian"),
        case_type=raw.get("caseType", ""),
        decision_term_days=raw.get("decisionTermDays"),
        steps=steps,
    )


def _load_from_traversables(name: str, norm, questions, params, fixture_files) -> PolicyBundle:
    spec_text = SpecText(norm.read_text(encoding="utf-8"), origin=str(norm))
    try:
        spec = parse_spec(spec_text)
    except SpecParseError as exc:
        raise PolicyError(f"policy spec does not parse: {exc}") from exc
    schema = _load_schema(json.loads(questions.read_text(encoding="utf-8")), spec)
    params_doc = _toml.loads(params.read_text(encoding="utf-8"))
    fixtures = {}
    for f in sorted(fixture_files, key=lambda t: t.name):
        fixture_name = f.name.rsplit(".", 1)[0]
        fixtures[fixture_name] = _load_fixture(
            fixture_name, json.loads(f.read_text(encoding="utf-8")), spec
        )
    return PolicyBundle(
        name=name,
        spec_text=spec_text,
        spec=spec,
        schema=schema,
        params=params_doc,
        fixtures=fixtures,
    )


def load_policy(norm_path: str | Path) -> PolicyBundle:
    """Load a bundle from a ``.norm`` file path with its sibling files."""
    norm_path = Path(norm_path)
    if not norm_path.exists():
        raise PolicyError(f"no such policy spec: {norm_path}")
    stem = norm_path.name.removesuffix(".norm")
    questions = norm_path.with_name(f"{stem}.questions.json")
    params = norm_path.with_name(f"{stem}.params.toml")
    for required in (questions, params):
        if not required.exists():
            raise PolicyError(f"policy bundle is missing {required.name}")
    fixtures_dir = norm_path.parent / "fixtures"
    fixture_files = (
        sorted(fixtures_dir.glob("*.json")) if fixtures_dir.is_dir() else []
    )
    return _load_from_traversables(stem, norm_path, questions, params, fixture_files)


def load_bundled_policy() -> PolicyBundle:
    """The IIT bundle shipped inside the package."""
    root = resources.files(__package__)
    fixtures = [
        f
        for f in (root / "fixtures").iterdir()
        if f.name.endswith(".json")
    ]
    return _load_from_traversables(
        "iit",
        root / "iit.norm",
        root / "iit.questions.json",
        root / "iit.params.toml",
        fixtures,
    )


def bundled_policy_path() -> Path:
    """Filesystem path of the bundled ``iit.norm`` (for config defaults)."""
    return Path(str(resources.files(__package__) / "iit.norm"))
