"""HTTP API and persistence behaviour of the case service."""

import json
from datetime import date, timedelta

import pytest
from fastapi.testclient import TestClient

from normcase.policy import load_bundled_policy
from normcase.service.api import create_app
from normcase.service.config import Config
from normcase.service.core import CaseService
from normcase.service.models import UrgencyColor, compute_urgency

GOAL1 = {
    "client": {"name": "J. de Vries", "kind": "civilian"},
    "caseType": "IIT-aanvraag",
    "answers": {
        "registered-in-municipality": True,
        "age": 30,
        "long-term-low-income": True,
        "single": True,
        "child-at-home": True,
        "income": 1000,
        "wealth": 4000,
    },
}


def make_client(tmp_path, seed=False) -> TestClient:
    config = Config(data_dir=tmp_path / "data", seed_fixtures=seed)
    return TestClient(create_app(config))


@pytest.fixture
def api(tmp_path):
    client = make_client(tmp_path)
    token = client.post(
        "/api/register", json={"name": "anna", "secret": "geheim"}
    ).json()["token"]
    client.headers["Authorization"] = token
    return client


def vervolg_statuses(api, case_id) -> dict[str, str]:
    doc = api.get(f"/api/cases/{case_id}/actions").json()
    return {item["naam"]: item["status"] for item in doc["vervolg"]}


# --- authentication -------------------------------------------------------------


def test_register_then_login_token_works(tmp_path):
    client = make_client(tmp_path)
    assert client.post(
        "/api/register", json={"name": "bob", "secret": "pw"}
    ).status_code == 200
    login = client.post("/api/login", json={"name": "bob", "secret": "pw"})
    assert login.status_code == 200
    token = login.json()["token"]
    assert client.get("/api/cases", headers={"Authorization": token}).status_code == 200


def test_wrong_secret_and_unknown_name_are_indistinguishable(tmp_path):
    client = make_client(tmp_path)
    client.post("/api/register", json={"name": "bob", "secret": "pw"})
    wrong = client.post("/api/login", json={"name": "bob", "secret": "anders"})
    unknown = client.post("/api/login", json={"name": "ghost", "secret": "pw"})
    assert wrong.status_code == unknown.status_code == 401
    assert wrong.json() == unknown.json() == {"error": "invalid_credentials"}


def test_duplicate_registration_conflicts(tmp_path):
    client = make_client(tmp_path)
    client.post("/api/register", json={"name": "bob", "secret": "pw"})
    again = client.post("/api/register", json={"name": "bob", "secret": "pw2"})
    assert again.status_code == 409
    assert again.json()["error"] == "duplicate_name"


def test_protected_endpoints_require_a_token(tmp_path):
    client = make_client(tmp_path)
    for method, path in [
        ("get", "/api/cases"),
        ("post", "/api/cases"),
        ("get", "/api/open-actions"),
        ("get", "/api/sources"),
        ("post", "/api/simulations"),
    ]:
        response = getattr(client, method)(path, **({"json": {}} if method == "post" else {}))
        assert response.status_code == 401, path
        assert response.json()["error"] == "unauthorized"


def test_no_response_ever_contains_a_credential_hash(tmp_path):
    client = make_client(tmp_path)
    register = client.post("/api/register", json={"name": "bob", "secret": "pw"})
    token = register.json()["token"]
    client.headers["Authorization"] = token
    service: CaseService = client.app.state.service
    secret_material = {u.credential_hash for u in service.users.values()} | {
        u.salt for u in service.users.values()
    }
    client.post("/api/cases", json=GOAL1)
    bodies = [
        register.text,
        client.get("/api/cases").text,
        client.get("/api/cases/1").text,
        client.get("/api/cases/1/actions").text,
        client.get("/api/sources").text,
        client.get("/api/open-actions").text,
        client.get("/api/health").text,
    ]
    for body in bodies:
        for material in secret_material:
            assert material not in body


# --- case creation ----------------------------------------------------------------


def test_goal1_creates_case_with_one_allowed_action(api):
    response = api.post("/api/cases", json=GOAL1)
    assert response.status_code == 201
    case = response.json()
    assert case["status"] == "in_behandeling"
    statuses = vervolg_statuses(api, case["id"])
    assert [n for n, s in statuses.items() if s == "toegestaan"] == [
        "grant-iit-single-parent"
    ]


def test_missing_client_name_is_reported_by_field(api):
    payload = {"caseType": "IIT-aanvraag", "answers": GOAL1["answers"]}
    response = api.post("/api/cases", json=payload)
    assert response.status_code == 400
    body = response.json()
    assert body["error"] == "validation_error"
    assert "naam klant" in body["fields"]


def test_missing_required_answers_are_reported_by_fact(api):
    payload = dict(GOAL1, answers={"age": 30})
    response = api.post("/api/cases", json=payload)
    assert response.status_code == 400
    assert "income" in response.json()["fields"]
    assert "single" in response.json()["fields"]


def test_dates_are_auto_filled_when_omitted(api):
    case = api.post("/api/cases", json=GOAL1).json()
    today = date.today()
    assert case["createdOn"] == today.isoformat()
    assert case["decisionTerm"] == (today + timedelta(days=56)).isoformat()


def test_explicit_dates_are_respected(api):
    payload = dict(GOAL1, createdOn="2026-08-01", decisionTerm="2026-09-01")
    case = api.post("/api/cases", json=payload).json()
    assert case["createdOn"] == "2026-08-01"
    assert case["decisionTerm"] == "2026-09-01"


def test_unknown_answer_field_is_rejected(api):
    payload = dict(GOAL1, answers=dict(GOAL1["answers"], **{"decision-outcome": "approved"}))
    response = api.post("/api/cases", json=payload)
    assert response.status_code == 400
    assert "decision-outcome" in response.json()["fields"]


def test_same_client_name_reuses_the_client_id(api):
    first = api.post("/api/cases", json=GOAL1).json()
    second = api.post("/api/cases", json=GOAL1).json()
    assert first["client"]["id"] == second["client"]["id"]
    assert first["id"] != second["id"]


# --- editing ------------------------------------------------------------------------


def test_goal3_edit_switches_grant_variant(api):
    case = api.post("/api/cases", json=GOAL1).json()
    before = vervolg_statuses(api, case["id"])
    response = api.patch(
        f"/api/cases/{case['id']}", json={"answers": {"child-at-home": False}}
    )
    assert response.status_code == 200
    after = vervolg_statuses(api, case["id"])
    assert before["grant-iit-single-parent"] == "toegestaan"
    assert after["grant-iit-single"] == "toegestaan"
    assert after["grant-iit-single-parent"] == "niet_toegestaan"
    unchanged = set(before) - {"grant-iit-single", "grant-iit-single-parent"}
    assert {n: before[n] for n in unchanged} == {n: after[n] for n in unchanged}


def test_noop_edit_still_touches_last_modified_and_audit(api):
    case = api.post("/api/cases", json=GOAL1).json()
    audit_before = len(case["audit"])
    edited = api.patch(f"/api/cases/{case['id']}", json={}).json()
    assert len(edited["audit"]) == audit_before + 1
    assert edited["lastModified"] >= case["lastModified"]
    assert vervolg_statuses(api, case["id"]) == vervolg_statuses(api, case["id"])


def test_answer_to_unknown_never_forbids_a_previously_allowed_act(api):
    case = api.post("/api/cases", json=GOAL1).json()
    before = vervolg_statuses(api, case["id"])
    api.patch(f"/api/cases/{case['id']}", json={"answers": {"child-at-home": None}})
    after = vervolg_statuses(api, case["id"])
    for name, was in before.items():
        if was == "toegestaan":
            assert after[name] in ("toegestaan", "onbestemd")
        if was == "niet_toegestaan":
            assert after[name] in ("niet_toegestaan", "onbestemd")


def test_edit_type_error_is_reported(api):
    case = api.post("/api/cases", json=GOAL1).json()
    response = api.patch(
        f"/api/cases/{case['id']}", json={"answers": {"income": "veel"}}
    )
    assert response.status_code == 400
    assert response.json()["fields"] == ["income"]


def test_edit_unknown_case_is_404(api):
    assert api.patch("/api/cases/999", json={}).status_code == 404


# --- executing actions ------------------------------------------------------------


def test_executing_allowed_act_completes_the_case(api):
    case = api.post("/api/cases", json=GOAL1).json()
    response = api.post(
        f"/api/cases/{case['id']}/actions/grant-iit-single-parent/execute", json={}
    )
    assert response.status_code == 200
    body = response.json()
    assert body["case"]["status"] == "afgerond"
    assert body["case"]["outcome"] == "approved"
    assert body["case"]["amount"] == 614  # single-parent amount from the bundle
    assert body["case"]["violations"] == []
    done = [a["naam"] for a in body["actions"]["afgerond"]]
    assert done == ["grant-iit-single-parent"]
    pending = [a["naam"] for a in body["actions"]["vervolg"]]
    assert "grant-iit-single-parent" not in pending


def test_executing_not_allowed_act_needs_motivation_and_records_violation(api):
    case = api.post("/api/cases", json=GOAL1).json()
    url = f"/api/cases/{case['id']}/actions/grant-iit-single/execute"
    refused = api.post(url, json={})
    assert refused.status_code == 400
    assert refused.json()["error"] == "motivation_required"
    assert vervolg_statuses(api, case["id"])["grant-iit-single"] == "niet_toegestaan"

    executed = api.post(url, json={"motivation": "bijzondere omstandigheden"})
    assert executed.status_code == 200
    body = executed.json()
    (violation,) = body["case"]["violations"]
    assert violation["kind"] == "non_permitted_execution"
    assert violation["motivation"] == "bijzondere omstandigheden"
    assert violation["explanation"]
    done = body["actions"]["afgerond"][0]
    assert done["violation"] is not None
    assert done["violation"]["explanation"] == violation["explanation"]


def test_executing_twice_conflicts(api):
    case = api.post("/api/cases", json=GOAL1).json()
    url = f"/api/cases/{case['id']}/actions/grant-iit-single-parent/execute"
    assert api.post(url, json={}).status_code == 200
    again = api.post(url, json={})
    assert again.status_code == 409
    assert again.json()["error"] == "already_executed"


def test_executing_unknown_act_is_404(api):
    case = api.post("/api/cases", json=GOAL1).json()
    response = api.post(f"/api/cases/{case['id']}/actions/zzz/execute", json={})
    assert response.status_code == 404
    assert response.json()["error"] == "unknown_act"


def test_information_request_moves_case_to_waiting_and_back(api):
    payload = dict(
        GOAL1, answers=dict(GOAL1["answers"], **{"additional-evidence-needed": True})
    )
    case = api.post("/api/cases", json=payload).json()
    api.post(f"/api/cases/{case['id']}/actions/request-information/execute", json={})
    waiting = api.get(f"/api/cases/{case['id']}").json()
    assert waiting["status"] == "wachten_op_bericht"
    assert waiting["id"] not in [
        e["case"]["id"] for e in api.get("/api/open-actions").json()
    ]
    api.post(
        f"/api/cases/{case['id']}/actions/record-information-received/execute", json={}
    )
    resumed = api.get(f"/api/cases/{case['id']}").json()
    assert resumed["status"] == "in_behandeling"


# --- listing, sorting, filtering ----------------------------------------------------


@pytest.fixture
def listing(api):
    for name, term_days, child in (("Aalberts", 30, True), ("Zwart", 5, False), ("Midden", 60, True)):
        payload = dict(
            GOAL1,
            client={"name": name, "kind": "civilian"},
            decisionTerm=(date.today() + timedelta(days=term_days)).isoformat(),
            answers=dict(GOAL1["answers"], **{"child-at-home": child}),
        )
        assert api.post("/api/cases", json=payload).status_code == 201
    return api


def test_sort_by_termijn_ascending_puts_nearest_first(listing):
    body = listing.get("/api/cases", params={"sort": "termijn", "order": "asc"}).json()
    assert [r["naam"] for r in body["items"]] == ["Zwart", "Aalberts", "Midden"]


def test_inverse_orders_reverse_each_other(listing):
    for key in ("naam", "termijn", "actie", "gewijzigd"):
        asc = listing.get("/api/cases", params={"sort": key, "order": "asc"}).json()
        desc = listing.get("/api/cases", params={"sort": key, "order": "desc"}).json()
        asc_keys = [r[key] or "" for r in asc["items"]]
        desc_keys = [r[key] or "" for r in desc["items"]]
        assert asc_keys == sorted(asc_keys)
        assert desc_keys == list(reversed(asc_keys))


def test_text_query_matches_one_client(listing):
    body = listing.get("/api/cases", params={"q": "zwart"}).json()
    assert [r["naam"] for r in body["items"]] == ["Zwart"]


def test_status_filter(listing):
    listing.post("/api/cases/2/actions/grant-iit-single/execute", json={})
    done = listing.get("/api/cases", params={"status": "afgerond"}).json()
    assert [r["id"] for r in done["items"]] == [2]
    open_ = listing.get("/api/cases", params={"status": "in_behandeling"}).json()
    assert [r["id"] for r in open_["items"]] == [1, 3]


def test_date_range_filter(listing):
    frm = (date.today() + timedelta(days=20)).isoformat()
    to = (date.today() + timedelta(days=40)).isoformat()
    body = listing.get("/api/cases", params={"from": frm, "to": to}).json()
    assert [r["naam"] for r in body["items"]] == ["Aalberts"]
    none = listing.get(
        "/api/cases", params={"from": "1990-01-01", "to": "1990-12-31"}
    ).json()
    assert none["items"] == []


def test_invalid_sort_key_is_rejected(listing):
    response = listing.get("/api/cases", params={"sort": "kleur"})
    assert response.status_code == 400
    assert response.json()["error"] == "invalid_sort"


def test_empty_store_lists_nothing(api):
    assert api.get("/api/cases").json() == {"items": [], "total": 0}
    assert api.get("/api/open-actions").json() == []


def test_open_actions_lists_only_actionable_cases(listing):
    listing.post("/api/cases/2/actions/grant-iit-single/execute", json={})
    entries = listing.get("/api/open-actions").json()
    assert [e["case"]["id"] for e in entries] == [1, 3]
    assert all(e["action"] for e in entries)
    # Nearest term first.
    terms = [e["term"] for e in entries]
    assert terms == sorted(terms)


# --- urgency ---------------------------------------------------------------------


def test_urgency_thresholds():
    today = date(2026, 8, 10)
    assert compute_urgency(today + timedelta(days=60), today).color is UrgencyColor.GREEN
    assert compute_urgency(today + timedelta(days=14), today).color is UrgencyColor.YELLOW
    assert compute_urgency(today + timedelta(days=5), today).color is UrgencyColor.RED
    overdue = compute_urgency(today - timedelta(days=1), today)
    assert overdue.color is UrgencyColor.RED and overdue.overdue
    at_term = compute_urgency(today, today)
    assert at_term.color is UrgencyColor.RED and not at_term.overdue


def test_urgency_thresholds_are_configurable():
    today = date(2026, 8, 10)
    clock = compute_urgency(today + timedelta(days=10), today, red_days=10, yellow_days=30)
    assert clock.color is UrgencyColor.RED


def test_questions_endpoint_serves_the_schema(api):
    questions = api.get("/api/questions").json()
    facts = [q["fact"] for q in questions]
    assert "registered-in-municipality" in facts
    assert "income" in facts
    required = next(q for q in questions if q["fact"] == "income")
    assert required["required"] and required["allowsUnknown"]
    assert required["type"] == "integer"
    optional = next(q for q in questions if q["fact"] == "additional-evidence-needed")
    assert not optional["required"]


# --- sources -----------------------------------------------------------------------


def test_sources_list_spec_sources_and_manual_additions(api):
    initial = api.get("/api/sources").json()
    titles = [s["title"] for s in initial]
    assert "Participatiewet art. 36" in titles
    created = api.post(
        "/api/sources",
        json={"title": "Gemeentelijk handboek", "url": "https://example.org/handboek"},
    )
    assert created.status_code == 201
    after = api.get("/api/sources").json()
    assert {"title": "Gemeentelijk handboek", "url": "https://example.org/handboek", "applicableFrom": None} in after


def test_source_requires_title(api):
    response = api.post("/api/sources", json={"url": "https://example.org"})
    assert response.status_code == 400
    assert response.json()["fields"] == ["titel"]


# --- audit completeness -------------------------------------------------------------


def test_every_mutation_appends_exactly_one_audit_event(api):
    case = api.post("/api/cases", json=GOAL1).json()
    case_id = case["id"]
    assert len(case["audit"]) == 1
    api.patch(f"/api/cases/{case_id}", json={"answers": {"income": 1100}})
    api.patch(f"/api/cases/{case_id}", json={"notes": "aangevuld"})
    api.post(f"/api/cases/{case_id}/actions/grant-iit-single-parent/execute", json={})
    audit = api.get(f"/api/cases/{case_id}").json()["audit"]
    assert len(audit) == 4
    # Rejected mutations leave no audit trace.
    api.post(f"/api/cases/{case_id}/actions/grant-iit-single/execute", json={})
    audit = api.get(f"/api/cases/{case_id}").json()["audit"]
    assert len(audit) == 4


# --- persistence --------------------------------------------------------------------


def test_restart_replays_to_byte_identical_snapshots(tmp_path):
    config = Config(data_dir=tmp_path / "data", seed_fixtures=True)
    service = CaseService(config)
    app = create_app(config, service)
    client = TestClient(app)
    token = client.post("/api/register", json={"name": "anna", "secret": "pw"}).json()["token"]
    client.headers["Authorization"] = token
    case = client.post("/api/cases", json=GOAL1).json()
    client.patch(f"/api/cases/{case['id']}", json={"answers": {"wealth": 5200}})
    client.post(
        f"/api/cases/{case['id']}/actions/grant-iit-single/execute",
        json={"motivation": "afwijking na overleg"},
    )
    before = {
        cid: service.case_snapshot_bytes(cid) for cid in sorted(service.cases)
    }

    revived = CaseService(Config(data_dir=tmp_path / "data", seed_fixtures=True))
    after = {cid: revived.case_snapshot_bytes(cid) for cid in sorted(revived.cases)}
    assert before == after
    # Scenario state is rebuilt from the log as well.
    assert set(revived.users) == set(service.users)


def test_seeding_happens_once(tmp_path):
    config = Config(data_dir=tmp_path / "data", seed_fixtures=True)
    first = CaseService(config)
    n = len(first.cases)
    assert n >= 3
    again = CaseService(config)
    assert len(again.cases) == n


# --- simulations over HTTP ------------------------------------------------------------


def test_simulation_lifecycle_over_http(api):
    case = api.post("/api/cases", json=GOAL1).json()
    created = api.post(
        "/api/simulations", json={"label": "proef", "fromCase": case["id"]}
    )
    assert created.status_code == 201
    scenario = created.json()
    assert scenario["fromCase"] == case["id"]
    assert {g["ruleId"] for g in scenario["rules"]} >= {
        "grant-iit-single-parent", "decide-within-term",
    }

    tree = api.get(f"/api/simulations/{scenario['id']}/tree", params={"depth": 2}).json()
    assert tree["nodes"][0]["parent"] is None
    allowed = [n for n in tree["nodes"] if n["status"] == "toegestaan"]
    assert allowed

    explain = api.get(
        f"/api/simulations/{scenario['id']}/tree/{allowed[0]['id']}/explain",
        params={"depth": 2},
    ).json()
    assert explain["act"] == allowed[0]["act"]
    assert explain["clauses"]

    rule = "grant-iit-single-parent"
    version = api.post(
        f"/api/simulations/{scenario['id']}/rules/{rule}/versions",
        json={
            "text": (
                f"act {rule}\n  actor officer\n  recipient client\n"
                "  conditioned by registered-in-municipality and wealth <= 10000\n"
                '  creates decision-outcome("approved")\n'
            )
        },
    )
    assert version.status_code == 201
    toggled = api.patch(
        f"/api/simulations/{scenario['id']}/rules/{rule}",
        json={"activeVersion": 2},
    )
    assert toggled.status_code == 200
    group = next(g for g in toggled.json()["rules"] if g["ruleId"] == rule)
    assert group["activeVersion"] == 2

    deactivated = api.patch(
        f"/api/simulations/{scenario['id']}/rules/{rule}",
        json={"activeVersion": None},
    )
    group = next(g for g in deactivated.json()["rules"] if g["ruleId"] == rule)
    assert group["activeVersion"] is None


def test_simulation_never_mutates_the_case(api):
    case = api.post("/api/cases", json=GOAL1).json()
    snapshot_before = api.get(f"/api/cases/{case['id']}").json()
    scenario = api.post(
        "/api/simulations", json={"label": "proef", "fromCase": case["id"]}
    ).json()
    api.patch(
        f"/api/simulations/{scenario['id']}/rules/grant-iit-single-parent",
        json={"activeVersion": None},
    )
    api.get(f"/api/simulations/{scenario['id']}/tree", params={"depth": 3})
    snapshot_after = api.get(f"/api/cases/{case['id']}").json()
    assert snapshot_before == snapshot_after


def test_simulation_rule_validation_errors_over_http(api):
    scenario = api.post("/api/simulations", json={"label": "leeg"}).json()
    bad = api.post(
        f"/api/simulations/{scenario['id']}/rules/reject-iit/versions",
        json={"text": "act reject-iit\n  actor o\n  recipient c\n  conditioned by ghost\n"},
    )
    assert bad.status_code == 400
    assert bad.json()["error"] == "invalid_rule"
    assert any("unresolved identifier" in d for d in bad.json()["diagnostics"])
    # The scenario is unchanged.
    doc = api.get(f"/api/simulations/{scenario['id']}").json()
    group = next(g for g in doc["rules"] if g["ruleId"] == "reject-iit")
    assert len(group["versions"]) == 1


def test_simulation_depth_bounds_over_http(api):
    scenario = api.post("/api/simulations", json={"label": "leeg"}).json()
    for depth in (0, 7):
        response = api.get(
            f"/api/simulations/{scenario['id']}/tree", params={"depth": depth}
        )
        assert response.status_code == 400
        assert response.json()["error"] == "invalid_depth"


def test_simulation_unknowns_are_404(api):
    assert api.get("/api/simulations/99").status_code == 404
    scenario = api.post("/api/simulations", json={"label": "x"}).json()
    missing_rule = api.patch(
        f"/api/simulations/{scenario['id']}/rules/niets", json={"activeVersion": None}
    )
    assert missing_rule.status_code == 404
    missing_node = api.get(
        f"/api/simulations/{scenario['id']}/tree/424242/explain", params={"depth": 1}
    )
    assert missing_node.status_code == 404
    unknown_case = api.post("/api/simulations", json={"label": "y", "fromCase": 77})
    assert unknown_case.status_code == 404


# --- seeded fixtures (paper walkthrough data) -----------------------------------------


def test_seeded_usertest1_case_carries_one_violation(tmp_path):
    client = make_client(tmp_path, seed=True)
    token = client.post("/api/register", json={"name": "t", "secret": "t"}).json()["token"]
    client.headers["Authorization"] = token
    cases = client.get("/api/cases", params={"q": "UserTest1"}).json()["items"]
    assert len(cases) == 1
    case = client.get(f"/api/cases/{cases[0]['id']}").json()
    assert len(case["violations"]) == 1
    assert case["violations"][0]["explanation"]
    actions = client.get(f"/api/cases/{cases[0]['id']}/actions").json()
    flagged = [a for a in actions["afgerond"] if a.get("violation")]
    assert len(flagged) == 1
