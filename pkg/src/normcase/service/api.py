"""HTTP/JSON surface of the service.

All endpoints live under ``/api``; everything except health, register and
login requires the session token from the ``Authorization`` header.  Errors
use one shape: ``{"error": code, "fields": [...]?}``.
"""

from __future__ import annotations

from datetime import date

from fastapi import Depends, FastAPI, Query, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .. import __version__
from ..dsl import SpecParseError
from ..sim import SimulationError, TreeTooLargeError
from .config import Config
from .core import CaseService, Invalid, NotFound, ServiceError, Unauthorized


class ApiError(Exception):
    def __init__(self, status_code: int, code: str, extra: dict | None = None):
        self.status_code = status_code
        self.code = code
        self.extra = extra or {}
        super().__init__(code)


def _from_service_error(exc: ServiceError) -> ApiError:
    extra = {"fields": exc.fields} if exc.fields else {}
    return ApiError(exc.http_status, exc.code, extra)


def create_app(config: Config, service: CaseService | None = None) -> FastAPI:
    service = service or CaseService(config)
    app = FastAPI(title="normcase", version=__version__, docs_url=None, redoc_url=None)
    app.state.service = service
    # The web UI is served separately during development; same-host installs
    # can tighten this via a reverse proxy.
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(ApiError)
    async def handle_api_error(request: Request, exc: ApiError):
        return JSONResponse(
            status_code=exc.status_code, content={"error": exc.code, **exc.extra}
        )

    @app.exception_handler(RequestValidationError)
    async def handle_validation(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"error": "bad_request"})

    def current_user(request: Request) -> str:
        token = request.headers.get("Authorization", "")
        if token.startswith("Bearer "):
            token = token[len("Bearer ") :]
        try:
            return service.authenticate(token or None)
        except Unauthorized as exc:
            raise _from_service_error(exc) from None

    def guard(call, *args, **kwargs):
        """Run a service call, translating domain errors to the wire shape."""
        try:
            return call(*args, **kwargs)
        except ServiceError as exc:
            raise _from_service_error(exc) from None
        except SpecParseError as exc:
            raise ApiError(
                400,
                "invalid_rule",
                {"diagnostics": [str(d) for d in exc.diagnostics]},
            ) from None
        except TreeTooLargeError:
            raise ApiError(400, "tree_too_large") from None
        except SimulationError as exc:
            raise ApiError(400, "invalid_depth") from None

    # ---- open endpoints

    @app.get("/api/health")
    def health():
        return {
            "status": "ok",
            "policy": service.bundle.name,
            "facts": len(service.spec.facts),
            "acts": len(service.spec.acts),
            "duties": len(service.spec.duties),
            "cases": len(service.cases),
        }

    @app.get("/api/questions")
    def questions(user: str = Depends(current_user)):
        return [
            {
                "fact": q.fact,
                "prompt": q.prompt,
                "type": q.type.value,
                "required": q.required,
                "allowsUnknown": q.allows_unknown,
            }
            for q in service.bundle.schema.questions
        ]

    @app.post("/api/register")
    def register(body: dict):
        token = guard(service.register, body.get("name"), body.get("secret"))
        return {"token": token, "name": (body.get("name") or "").strip()}

    @app.post("/api/login")
    def login(body: dict):
        token = guard(service.login, body.get("name"), body.get("secret"))
        return {"token": token, "name": (body.get("name") or "").strip()}

    # ---- cases

    @app.post("/api/cases", status_code=201)
    def create_case(body: dict, user: str = Depends(current_user)):
        case_id = guard(service.create_case, body, user)
        return service.case_view(service.cases[case_id])

    @app.get("/api/cases")
    def list_cases(
        sort: str = "termijn",
        order: str = "asc",
        status: str | None = None,
        q: str | None = None,
        from_: str | None = Query(None, alias="from"),
        to: str | None = None,
        user: str = Depends(current_user),
    ):
        def parse(raw):
            if raw is None:
                return None
            try:
                return date.fromisoformat(raw)
            except ValueError:
                raise ApiError(400, "invalid_date") from None

        return guard(
            service.list_cases,
            status=status,
            q=q,
            from_=parse(from_),
            to=parse(to),
            sort=sort,
            order=order,
        )

    @app.get("/api/cases/{case_id}")
    def get_case(case_id: int, user: str = Depends(current_user)):
        record = guard(service._require_case, case_id)
        return service.case_view(record)

    @app.patch("/api/cases/{case_id}")
    def edit_case(case_id: int, body: dict, user: str = Depends(current_user)):
        guard(service.edit_case, case_id, body, user)
        return service.case_view(service.cases[case_id])

    @app.get("/api/cases/{case_id}/actions")
    def case_actions(case_id: int, user: str = Depends(current_user)):
        record = guard(service._require_case, case_id)
        return service.actions_view(record)

    @app.post("/api/cases/{case_id}/actions/{act}/execute")
    def execute_action(
        case_id: int, act: str, body: dict | None = None, user: str = Depends(current_user)
    ):
        motivation = (body or {}).get("motivation")
        guard(service.execute_action, case_id, act, motivation, user)
        record = service.cases[case_id]
        return {
            "case": service.case_view(record),
            "actions": service.actions_view(record),
        }

    @app.get("/api/open-actions")
    def open_actions(user: str = Depends(current_user)):
        return service.open_actions()

    # ---- sources

    @app.get("/api/sources")
    def sources(user: str = Depends(current_user)):
        return service.sources_view()

    @app.post("/api/sources", status_code=201)
    def add_source(body: dict, user: str = Depends(current_user)):
        guard(service.add_source, body, user)
        return service.sources_view()

    # ---- simulations

    @app.post("/api/simulations", status_code=201)
    def create_simulation(body: dict, user: str = Depends(current_user)):
        scenario_id = guard(
            service.create_simulation, body.get("label"), body.get("fromCase"), user
        )
        return service.simulation_view(scenario_id)

    @app.get("/api/simulations")
    def list_simulations(user: str = Depends(current_user)):
        return [
            {"id": s.id, "label": s.label, "fromCase": s.from_case}
            for _, s in sorted(service.scenarios.items())
        ]

    @app.get("/api/simulations/{scenario_id}")
    def get_simulation(scenario_id: int, user: str = Depends(current_user)):
        return guard(service.simulation_view, scenario_id)

    @app.post("/api/simulations/{scenario_id}/rules/{rule_id}/versions", status_code=201)
    def add_rule_version(
        scenario_id: int, rule_id: str, body: dict, user: str = Depends(current_user)
    ):
        guard(
            service.add_simulation_rule_version,
            scenario_id,
            rule_id,
            body.get("text") or "",
            user,
        )
        return service.simulation_view(scenario_id)

    @app.patch("/api/simulations/{scenario_id}/rules/{rule_id}")
    def toggle_rule(
        scenario_id: int, rule_id: str, body: dict, user: str = Depends(current_user)
    ):
        guard(
            service.toggle_simulation_rule,
            scenario_id,
            rule_id,
            body.get("activeVersion"),
            user,
        )
        return service.simulation_view(scenario_id)

    @app.get("/api/simulations/{scenario_id}/tree")
    def tree(scenario_id: int, depth: int = 3, user: str = Depends(current_user)):
        return guard(service.simulation_tree, scenario_id, depth)

    @app.get("/api/simulations/{scenario_id}/tree/{node_id}/explain")
    def explain(
        scenario_id: int,
        node_id: int,
        depth: int = 3,
        user: str = Depends(current_user),
    ):
        return guard(service.simulation_explain, scenario_id, node_id, depth)

    return app
