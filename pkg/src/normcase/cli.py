"""Operator command line: serve the API, validate specs, replay scenarios,
dump simulation trees.

Exit codes are uniform across commands: 0 success/compliant, 1 violations
found, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import socket
import sys
from datetime import date, datetime, time
from pathlib import Path

from .dsl import SpecParseError, SpecText, parse_spec
from .engine import (
    EngineError,
    NormState,
    action_status,
    assign_fact,
    check_duties,
    execute,
    init_state,
    state_to_doc,
    violation_to_doc,
)
from .policy import AnswerError, decode_answers
from .sim import SimulationError, build_tree, create_scenario, tree_to_doc

OK, VIOLATIONS_FOUND, INPUT_ERROR = 0, 1, 2
DEFAULT_CLOCK = date(2000, 1, 1)
TREE_MAX_DEPTH = 6


def _fail(message: str) -> int:
    print(f"fout: {message}", file=sys.stderr)
    return INPUT_ERROR


def _read_spec(path: str):
    p = Path(path)
    if not p.exists():
        return None, _fail(f"geen specificatie op {path}")
    try:
        return parse_spec(SpecText(p.read_text(encoding="utf-8"), origin=str(p))), None
    except SpecParseError as exc:
        for d in exc.diagnostics:
            print(f"{path}:{d}", file=sys.stderr)
        return None, INPUT_ERROR


def _read_json(path: str):
    p = Path(path)
    if not p.exists():
        return None, _fail(f"geen bestand op {path}")
    try:
        return json.loads(p.read_text(encoding="utf-8")), None
    except json.JSONDecodeError as exc:
        return None, _fail(f"{path} is geen geldige JSON: {exc}")


def cmd_validate(args) -> int:
    spec, err = _read_spec(args.spec)
    if err is not None:
        return err
    print(
        f"OK: {len(spec.facts)} feiten, {len(spec.acts)} acties, "
        f"{len(spec.duties)} plichten"
    )
    return OK


def _initial_state(spec, doc) -> NormState:
    answers = decode_answers(spec, doc.get("assignments", {}))
    clock = (
        date.fromisoformat(doc["clock"]) if "clock" in doc else DEFAULT_CLOCK
    )
    return init_state(spec, answers, clock)


def cmd_run(args) -> int:
    spec, err = _read_spec(args.spec)
    if err is not None:
        return err
    doc, err = _read_json(args.scenario)
    if err is not None:
        return err

    rows: list[dict] = []
    violations = []
    try:
        state = _initial_state(spec, doc)
        for i, step in enumerate(doc.get("steps", []), start=1):
            if "assign" in step:
                payload = step["assign"]
                decoded = decode_answers(spec, {payload["fact"]: payload["value"]})
                state = assign_fact(state, payload["fact"], decoded[payload["fact"]])
                rows.append(
                    {
                        "step": i,
                        "kind": "assign",
                        "detail": f"{payload['fact']} = {payload['value']}",
                        "result": "ok",
                    }
                )
            elif "execute" in step:
                payload = step["execute"]
                at = (
                    datetime.fromisoformat(payload["at"])
                    if "at" in payload
                    else datetime.combine(state.clock, time(12, 0))
                )
                state, violation = execute(
                    state,
                    payload["act"],
                    payload.get("actor", "officer"),
                    at,
                    payload.get("motivation"),
                )
                if violation:
                    violations.append(violation)
                rows.append(
                    {
                        "step": i,
                        "kind": "execute",
                        "detail": payload["act"],
                        "result": state.history[-1].status_at_execution.value
                        + (" (schending)" if violation else ""),
                    }
                )
            elif "advance-clock" in step:
                to = date.fromisoformat(step["advance-clock"]["to"])
                state, duty_violations = check_duties(state, to)
                violations.extend(duty_violations)
                rows.append(
                    {
                        "step": i,
                        "kind": "clock",
                        "detail": to.isoformat(),
                        "result": f"{len(duty_violations)} schending(en)"
                        if duty_violations
                        else "ok",
                    }
                )
            else:
                return _fail(f"stap {i}: onbekend stap-type {sorted(step)}")
    except (EngineError, AnswerError, KeyError, ValueError) as exc:
        return _fail(f"scenario kan niet worden uitgevoerd: {exc}")

    final = {
        a.name: action_status(state, a).status.value for a in state.spec.acts
    }
    mismatches = []
    for act_name, expected in doc.get("expected", {}).items():
        if act_name not in final:
            return _fail(f"verwachte status voor onbekende actie '{act_name}'")
        actual = final[act_name]
        if actual != expected:
            mismatches.append({"act": act_name, "expected": expected, "actual": actual})

    if args.json:
        print(
            json.dumps(
                {
                    "steps": rows,
                    "violations": [violation_to_doc(v) for v in violations],
                    "finalStatuses": final,
                    "mismatches": mismatches,
                },
                indent=2,
                sort_keys=True,
                ensure_ascii=False,
            )
        )
    else:
        print(f"{'STAP':>4}  {'TYPE':<8} {'DETAIL':<42} RESULTAAT")
        for r in rows:
            print(f"{r['step']:>4}  {r['kind']:<8} {r['detail']:<42} {r['result']}")
        print()
        if violations:
            print("SCHENDINGEN")
            for n, v in enumerate(violations, start=1):
                print(f"{n:>4}. [{v.kind.value}] {v.subject}: {v.explanation}")
        else:
            print("Geen schendingen.")
        if doc.get("expected"):
            print()
            print("EINDSTATUSSEN")
            for act_name, expected in doc["expected"].items():
                actual = final[act_name]
                marker = "ok" if actual == expected else "AFWIJKING"
                print(
                    f"{act_name:<32} verwacht {expected:<16} "
                    f"werkelijk {actual:<16} {marker}"
                )

    if violations or mismatches:
        return VIOLATIONS_FOUND
    return OK


def cmd_tree(args) -> int:
    spec, err = _read_spec(args.spec)
    if err is not None:
        return err
    doc, err = _read_json(args.state)
    if err is not None:
        return err
    try:
        state = _initial_state(spec, doc)
        scenario = create_scenario(
            0, "cli", state, datetime.combine(state.clock, time(0))
        )
        tree = build_tree(scenario, args.depth, max_depth=TREE_MAX_DEPTH)
    except (AnswerError, EngineError) as exc:
        return _fail(str(exc))
    except SimulationError as exc:
        return _fail(str(exc))
    payload = tree_to_doc(tree)
    if args.json:
        print(json.dumps(payload, sort_keys=True, separators=(",", ":")))
    else:
        print(json.dumps(payload, indent=2, sort_keys=True))
    return OK


def cmd_serve(args) -> int:
    import uvicorn

    from .policy import PolicyError
    from .service.api import create_app
    from .service.config import ConfigError, load_config
    from .service.core import CaseService

    try:
        config = load_config(args.config)
    except ConfigError as exc:
        return _fail(str(exc))
    try:
        service = CaseService(config)
    except PolicyError as exc:
        return _fail(str(exc))
    probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    try:
        probe.bind(("0.0.0.0", config.port))
    except OSError:
        return _fail(f"poort {config.port} is al in gebruik")
    finally:
        probe.close()
    app = create_app(config, service)
    print(
        f"normcase: beleid '{service.bundle.name}' "
        f"({len(service.spec.facts)} feiten, {len(service.spec.acts)} acties, "
        f"{len(service.spec.duties)} plichten), "
        f"{len(service.cases)} zaken, poort {config.port}"
    )
    uvicorn.run(app, host="0.0.0.0", port=config.port, log_level="warning")
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="normcase",
        description="Zaakbeheer met een uitvoerbare normspecificatie.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    serve = sub.add_parser("serve", help="start de HTTP-dienst")
    serve.add_argument("--config", required=False, default=None, help="pad naar configuratie")
    serve.set_defaults(func=cmd_serve)

    validate = sub.add_parser("validate", help="controleer een normspecificatie")
    validate.add_argument("spec", help="pad naar .norm-bestand")
    validate.set_defaults(func=cmd_validate)

    run = sub.add_parser("run", help="voer een scenario uit en rapporteer naleving")
    run.add_argument("spec", help="pad naar .norm-bestand")
    run.add_argument("scenario", help="pad naar scenario-JSON")
    run.add_argument("--json", action="store_true", help="machine-leesbare uitvoer")
    run.set_defaults(func=cmd_run)

    tree = sub.add_parser("tree", help="druk de actieboom voor een toestand af")
    tree.add_argument("spec", help="pad naar .norm-bestand")
    tree.add_argument("state", help="pad naar toestand-JSON")
    tree.add_argument("--depth", type=int, required=True)
    tree.add_argument("--json", action="store_true", help="compacte uitvoer")
    tree.set_defaults(func=cmd_tree)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
