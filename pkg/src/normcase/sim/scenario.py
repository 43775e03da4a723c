"""Scenarios and versioned rule groups."""

from __future__ import annotations

from dataclasses import dataclass, replace
from datetime import datetime

from ..dsl import ActDecl, DutyDecl, NormSpec, SpecParseError, validate_rule_text
from ..dsl.model import Diagnostic
from ..dsl.printer import print_declaration
from ..engine import NormState
from ..engine.serde import state_to_doc


class SimulationError(Exception):
    pass


@dataclass(frozen=True)
class RuleVersion:
    version_id: int
    declaration: ActDecl | DutyDecl
    created_at: datetime


@dataclass(frozen=True)
class RuleGroup:
    rule_id: str  # the declaration name all versions share
    kind: str  # "act" | "duty"
    versions: tuple[RuleVersion, ...]
    active_version: int | None

    def version(self, version_id: int) -> RuleVersion:
        for v in self.versions:
            if v.version_id == version_id:
                return v
        raise SimulationError(f"rule '{self.rule_id}' has no version {version_id}")


@dataclass(frozen=True)
class Scenario:
    id: int
    label: str
    base_state: NormState  # carries the full original spec
    rules: tuple[RuleGroup, ...]
    from_case: int | None = None

    def group(self, rule_id: str) -> RuleGroup:
        for g in self.rules:
            if g.rule_id == rule_id:
                return g
        raise SimulationError(f"no rule '{rule_id}'")


def create_scenario(
    scenario_id: int,
    label: str,
    base_state: NormState,
    created_at: datetime,
    from_case: int | None = None,
) -> Scenario:
    """Seed one rule group per act/duty declaration, each version 1, active."""
    spec = base_state.spec
    groups = [
        RuleGroup(a.name, "act", (RuleVersion(1, a, created_at),), 1) for a in spec.acts
    ] + [
        RuleGroup(d.name, "duty", (RuleVersion(1, d, created_at),), 1)
        for d in spec.duties
    ]
    return Scenario(scenario_id, label, base_state, tuple(groups), from_case)


def effective_spec(scenario: Scenario) -> NormSpec:
    """Facts of the base spec plus the active version of every rule group."""
    acts = []
    duties = []
    for g in scenario.rules:
        if g.active_version is None:
            continue
        decl = g.version(g.active_version).declaration
        if g.kind == "act":
            acts.append(decl)
        else:
            duties.append(decl)
    return NormSpec(scenario.base_state.spec.facts, tuple(acts), tuple(duties))


def toggle_rule(
    scenario: Scenario, rule_id: str, version_id: int | None
) -> Scenario:
    """Activate the named version, or deactivate the whole group with None."""
    group = scenario.group(rule_id)
    if version_id is not None:
        group.version(version_id)  # existence check
    new_group = replace(group, active_version=version_id)
    return replace(
        scenario,
        rules=tuple(new_group if g.rule_id == rule_id else g for g in scenario.rules),
    )


def add_rule_version(
    scenario: Scenario, rule_id: str, text: str, created_at: datetime
) -> Scenario:
    """Validate and append a version; activation stays as it was."""
    group = scenario.group(rule_id)
    head = text.strip().split()[0] if text.strip() else ""
    if head in ("act", "duty") and head != group.kind:
        raise SpecParseError(
            [Diagnostic("error", f"rule '{rule_id}' expects a {group.kind} declaration", 1, 1)]
        )
    decl = validate_rule_text(text, scenario.base_state.spec)
    if decl.name != rule_id:
        raise SpecParseError(
            [Diagnostic("error", f"version must redeclare '{rule_id}', not '{decl.name}'", 1, 1)]
        )
    next_id = max(v.version_id for v in group.versions) + 1
    new_group = replace(
        group, versions=group.versions + (RuleVersion(next_id, decl, created_at),)
    )
    return replace(
        scenario,
        rules=tuple(new_group if g.rule_id == rule_id else g for g in scenario.rules),
    )


def scenario_to_doc(scenario: Scenario) -> dict:
    return {
        "id": scenario.id,
        "label": scenario.label,
        "fromCase": scenario.from_case,
        "baseState": state_to_doc(scenario.base_state),
        "rules": [
            {
                "ruleId": g.rule_id,
                "kind": g.kind,
                "activeVersion": g.active_version,
                "versions": [
                    {
                        "versionId": v.version_id,
                        "createdAt": v.created_at.isoformat(),
                        "text": print_declaration(v.declaration),
                    }
                    for v in g.versions
                ],
            }
            for g in scenario.rules
        ],
    }
