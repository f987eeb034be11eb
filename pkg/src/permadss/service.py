"""Stateless HTTP JSON API for evaluation, surfaces and model metadata.

Model data is loaded once at startup and never mutated, so every
response is a function of the request alone.  All non-2xx bodies share
one error shape: ``{"status", "code", "message", "field"}`` with code in
{out_of_range, bad_scenario, bad_request, no_rule_fired}.
"""
from __future__ import annotations

import json
import os
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from starlette.exceptions import HTTPException as StarletteHTTPException

from .engine import FisDefinition, infer
from .errors import NoRuleFiredError, OutOfRangeError
from .permanence import SCENARIOS, PermanenceInput, build_permanence_fis
from .surface import grid_to_doc, sweep

__all__ = ["create_app", "MAX_SURFACE_STEPS"]

MAX_SURFACE_STEPS = 201


class _ApiError(Exception):
    def __init__(self, status: int, code: str, message: str, field: str | None = None):
        self.status = status
        self.code = code
        self.message = message
        self.field = field
        super().__init__(message)

    def response(self) -> JSONResponse:
        return JSONResponse(
            status_code=self.status,
            content={
                "status": self.status,
                "code": self.code,
                "message": self.message,
                "field": self.field,
            },
        )


def _check_scenario(scenario, status: int = 422) -> str:
    if scenario not in SCENARIOS:
        raise _ApiError(status, "bad_scenario",
                        f"unknown scenario {scenario!r}; expected one of {list(SCENARIOS)}",
                        "scenario")
    return scenario


def _number(body: dict, field: str) -> float:
    if field not in body:
        raise _ApiError(400, "bad_request", f"missing field {field!r}", field)
    value = body[field]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise _ApiError(400, "bad_request", f"field {field!r} must be a number", field)
    return float(value)


def create_app(
    models_dir: str | os.PathLike | None = None,
    ui_dir: str | os.PathLike | None = None,
) -> FastAPI:
    """Build the service with models loaded once; safe for concurrent use."""
    app = FastAPI(title="permadss", docs_url=None, redoc_url=None, openapi_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    systems: dict[str, FisDefinition] = {
        scenario: build_permanence_fis(scenario, models_dir) for scenario in SCENARIOS
    }

    @app.exception_handler(_ApiError)
    async def _api_error(_req, exc: _ApiError):
        return exc.response()

    @app.exception_handler(StarletteHTTPException)
    async def _http_error(_req, exc: StarletteHTTPException):
        return _ApiError(exc.status_code, "bad_request", str(exc.detail)).response()

    @app.exception_handler(RequestValidationError)
    async def _validation_error(_req, exc: RequestValidationError):
        return _ApiError(400, "bad_request", str(exc)).response()

    @app.get("/api/v1/health")
    async def health():
        return {"status": "ok", "models": list(SCENARIOS)}

    @app.post("/api/v1/evaluate")
    async def evaluate(request: Request):
        try:
            body = json.loads(await request.body())
        except (json.JSONDecodeError, UnicodeDecodeError):
            raise _ApiError(400, "bad_request", "request body is not valid JSON")
        if not isinstance(body, dict):
            raise _ApiError(400, "bad_request", "request body must be a JSON object")
        scenario = _check_scenario(body.get("scenario"))
        inp = PermanenceInput(
            npv=_number(body, "npv"), gen=_number(body, "gen"), divers=_number(body, "divers")
        )
        clamp = body.get("clamp", False)
        if not isinstance(clamp, bool):
            raise _ApiError(400, "bad_request", "field 'clamp' must be a boolean", "clamp")
        if clamp:
            inp = inp.clamped()
        fis = systems[scenario]  # the startup snapshot, never reloaded
        try:
            inp.validate()
            result = infer(fis, {"NPV": inp.npv, "GEN": inp.gen, "DIVERS": inp.divers})
        except OutOfRangeError as exc:
            raise _ApiError(422, "out_of_range", str(exc), exc.name)
        except NoRuleFiredError as exc:
            raise _ApiError(422, "no_rule_fired", str(exc))
        doc = {
            "incentive": result.output,
            "firing": [
                {"rule": i, "strength": s, "consequent": fis.rules[i].consequent[1]}
                for i, s in enumerate(result.firing)
                if s > 0.0
            ],
        }
        if request.query_params.get("trace") in ("true", "1"):
            doc["aggregate"] = {
                "x": [float(v) for v in result.grid],
                "mu": [float(v) for v in result.aggregate],
            }
        return doc

    @app.get("/api/v1/surface")
    async def surface(request: Request):
        params = request.query_params
        scenario = _check_scenario(params.get("scenario"))
        fixes = params.getlist("fix")
        if len(fixes) != 1:
            raise _ApiError(400, "bad_request",
                            "exactly one 'fix' parameter is required, e.g. fix=NPV:20e6", "fix")
        var, sep, raw = fixes[0].partition(":")
        if not sep:
            raise _ApiError(400, "bad_request", f"fix must be VAR:VAL, got {fixes[0]!r}", "fix")
        try:
            value = float(raw)
        except ValueError:
            raise _ApiError(400, "bad_request", f"fix value {raw!r} is not a number", "fix")
        fis = systems[scenario]
        if var not in fis.input_names:
            raise _ApiError(400, "bad_request",
                            f"unknown variable {var!r}; inputs are {list(fis.input_names)}", "fix")
        steps_raw = params.get("steps", "21")
        try:
            steps = int(steps_raw)
        except ValueError:
            raise _ApiError(400, "bad_request", f"steps must be an integer, got {steps_raw!r}", "steps")
        if steps > MAX_SURFACE_STEPS:
            raise _ApiError(400, "bad_request",
                            f"steps capped at {MAX_SURFACE_STEPS}, got {steps}", "steps")
        if steps < 2:
            raise _ApiError(400, "bad_request", f"steps must be at least 2, got {steps}", "steps")
        axes = [n for n in fis.input_names if n != var]
        try:
            grid = sweep(fis, (var, value), axes[0], axes[1], steps)
        except OutOfRangeError as exc:
            raise _ApiError(422, "out_of_range", str(exc), exc.name)
        return grid_to_doc(grid)

    @app.get("/api/v1/model/{scenario}")
    async def model(scenario: str):
        _check_scenario(scenario, status=404)
        fis = systems[scenario]
        def var_doc(var, kind):
            return {
                "name": var.name,
                "kind": kind,
                "range": [var.universe[0], var.universe[1]],
                "labels": [
                    {"name": n, "shape": mf.kind, "points": list(mf.params)}
                    for n, mf in var.labels
                ],
            }
        return {
            "scenario": scenario,
            "name": fis.name,
            "resolution": fis.resolution,
            "variables": [var_doc(v, "input") for v in fis.inputs] + [var_doc(fis.output, "output")],
            "rules": [
                {
                    "antecedent": [{"var": v, "label": l} for v, l in rule.antecedent],
                    "connective": rule.connective,
                    "consequent": {"var": rule.consequent[0], "label": rule.consequent[1]},
                    "weight": rule.weight,
                }
                for rule in fis.rules
            ],
        }

    static_dir = ui_dir or os.environ.get("PERMADSS_UI_DIR")
    if static_dir and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(static_dir), html=True), name="ui")

    return app
