"""The bundled IIT policy: contents, parameters, fixtures, self-consistency."""

from datetime import date, datetime

import pytest

from normcase.dsl import print_expr
from normcase.dsl.model import Compare, FactLookup, Literal, conjuncts
from normcase.engine import (
    UNKNOWN,
    Status,
    available_actions,
    execute,
    init_state,
)
from normcase.policy import (
    AnswerError,
    PolicyError,
    decision_amount,
    decode_answers,
    household_from_answers,
    load_policy,
)

TODAY = date(2026, 8, 10)
HOUSEHOLD_BY_ACT = {
    "grant-iit-single": "single",
    "grant-iit-single-parent": "single-parent",
    "grant-iit-couple": "couple",
}


def statuses_for(bundle, fixture_name: str) -> dict[str, Status]:
    answers = decode_answers(bundle.spec, bundle.fixtures[fixture_name].answers)
    state = init_state(bundle.spec, answers, TODAY)
    return {a.name: s.status for a, s in available_actions(state)}


def test_bundle_declares_the_documented_rule_set(bundle):
    spec = bundle.spec
    for name in HOUSEHOLD_BY_ACT:
        spec.act(name)
    spec.act("reject-iit")
    duty = spec.duty("decide-within-term")
    assert duty.deadline_fact == "decision-term"
    assert duty.imposed_initially
    assert duty.holder == "officer" and duty.claimant == "client"


def test_grant_conditions_cover_the_documented_clauses(bundle):
    for act_name in HOUSEHOLD_BY_ACT:
        clauses = [print_expr(c) for c in conjuncts(bundle.spec.act(act_name).condition)]
        mentioned = " ".join(clauses)
        for fact in ("registered-in-municipality", "age", "long-term-low-income", "income", "wealth"):
            assert fact in mentioned, f"{act_name} does not test {fact}"


def test_goal1_fixture_allows_exactly_the_single_parent_grant(bundle):
    statuses = statuses_for(bundle, "usertest-goal1")
    assert [n for n, s in statuses.items() if s is Status.ALLOWED] == [
        "grant-iit-single-parent"
    ]


def test_registration_unknown_fixture_allows_nothing(bundle):
    statuses = statuses_for(bundle, "registration-unknown")
    assert Status.ALLOWED not in statuses.values()


def test_usertest1_fixture_replays_to_one_violation(bundle):
    fixture = bundle.fixtures["usertest1"]
    assert fixture.seed
    answers = decode_answers(bundle.spec, fixture.answers)
    state = init_state(bundle.spec, answers, TODAY)
    violations = []
    for step in fixture.steps:
        state, violation = execute(
            state, step.execute, "officer", datetime(2026, 8, 10, 10), step.motivation
        )
        if violation:
            violations.append(violation)
    assert len(violations) == 1
    assert violations[0].subject == "grant-iit-single"
    assert violations[0].explanation.strip()


def test_child_at_home_toggle_swaps_variant_and_nothing_else(bundle):
    answers = decode_answers(bundle.spec, bundle.fixtures["usertest-goal1"].answers)
    toggled = dict(answers, **{"child-at-home": False})
    before = {
        a.name: s.status
        for a, s in available_actions(init_state(bundle.spec, answers, TODAY))
    }
    after = {
        a.name: s.status
        for a, s in available_actions(init_state(bundle.spec, toggled, TODAY))
    }
    assert before["grant-iit-single-parent"] is Status.ALLOWED
    assert after["grant-iit-single"] is Status.ALLOWED
    swapped = {"grant-iit-single", "grant-iit-single-parent"}
    for name in set(before) - swapped:
        assert before[name] is after[name]


# --- parameters --------------------------------------------------------------


def test_amounts_come_from_the_params_file(bundle):
    amounts = bundle.params["amounts"]
    for household in ("single", "single-parent", "couple"):
        assert decision_amount(household, bundle.params) == amounts[household]


def test_amounts_are_pairwise_distinct(bundle):
    amounts = [decision_amount(h, bundle.params) for h in ("single", "single-parent", "couple")]
    assert len(set(amounts)) == 3


def test_unknown_household_is_rejected(bundle):
    with pytest.raises(PolicyError):
        decision_amount("commune", bundle.params)


def _comparisons(condition) -> dict[tuple[str, str], int]:
    found = {}
    for clause in conjuncts(condition):
        if isinstance(clause, Compare) and isinstance(clause.left, FactLookup):
            if isinstance(clause.right, Literal) and isinstance(clause.right.value, int):
                found[(clause.left.name, clause.op)] = clause.right.value
    return found


def test_norm_thresholds_match_params(bundle):
    # The .norm file carries literal thresholds; they must agree with the
    # configuration so neither can drift silently.
    for act_name, household in HOUSEHOLD_BY_ACT.items():
        cmp = _comparisons(bundle.spec.act(act_name).condition)
        thresholds = bundle.params["thresholds"][household]
        assert cmp[("income", "<=")] == thresholds["income"]
        assert cmp[("wealth", "<=")] == thresholds["wealth"]
        assert cmp[("age", ">=")] == bundle.params["age"]["minimum"]
        assert cmp[("age", "<")] == bundle.params["age"]["maximum"]


def test_every_grant_act_cites_a_source_with_url(bundle):
    for act_name in HOUSEHOLD_BY_ACT:
        sources = bundle.spec.act(act_name).sources
        assert sources
        assert any(s.url for s in sources)
        assert all(s.title for s in sources)


# --- schema and answers --------------------------------------------------------


def test_every_question_resolves_to_a_declared_fact(bundle):
    for q in bundle.schema.questions:
        fact = bundle.spec.fact(q.fact)
        assert fact.value_type is q.type


def test_household_derivation():
    assert household_from_answers({"single": True, "child-at-home": False}) == "single"
    assert household_from_answers({"single": True, "child-at-home": True}) == "single-parent"
    assert household_from_answers({"single": False, "child-at-home": UNKNOWN}) == "couple"
    assert household_from_answers({"single": UNKNOWN}) is None
    assert household_from_answers({"single": True, "child-at-home": UNKNOWN}) is None


def test_decode_answers_collects_bad_fields(bundle):
    with pytest.raises(AnswerError) as exc:
        decode_answers(
            bundle.spec,
            {"income": "veel", "no-such-fact": 1, "single": True, "age": False},
        )
    assert set(exc.value.fields) == {"income", "no-such-fact", "age"}


def test_decode_answers_null_means_unknown(bundle):
    answers = decode_answers(bundle.spec, {"income": None, "single": True})
    assert answers["income"] is UNKNOWN
    assert answers["single"] is True


# --- bundle loading --------------------------------------------------------------


def test_load_policy_missing_file(tmp_path):
    with pytest.raises(PolicyError):
        load_policy(tmp_path / "nope.norm")


def test_load_policy_missing_siblings(tmp_path):
    (tmp_path / "x.norm").write_text("fact a : boolean\n", encoding="utf-8")
    with pytest.raises(PolicyError) as exc:
        load_policy(tmp_path / "x.norm")
    assert "missing" in str(exc.value)


def test_load_policy_rejects_unresolvable_question(tmp_path):
    (tmp_path / "x.norm").write_text("fact a : boolean\n", encoding="utf-8")
    (tmp_path / "x.questions.json").write_text(
        '{"questions": [{"fact": "ghost", "prompt": "?", "type": "boolean"}]}',
        encoding="utf-8",
    )
    (tmp_path / "x.params.toml").write_text("", encoding="utf-8")
    with pytest.raises(PolicyError) as exc:
        load_policy(tmp_path / "x.norm")
    assert "undeclared fact" in str(exc.value)


def test_load_policy_rejects_ill_typed_fixture(tmp_path):
    (tmp_path / "x.norm").write_text("fact a : boolean\n", encoding="utf-8")
    (tmp_path / "x.questions.json").write_text('{"questions": []}', encoding="utf-8")
    (tmp_path / "x.params.toml").write_text("", encoding="utf-8")
    fixtures = tmp_path / "fixtures"
    fixtures.mkdir()
    (fixtures / "bad.json").write_text('{"answers": {"a": 3}}', encoding="utf-8")
    with pytest.raises(PolicyError) as exc:
        load_policy(tmp_path / "x.norm")
    assert "ill-typed" in str(exc.value)
