"""HTTP wire protocol for editor sessions.

JSON request/response over the endpoints the browser editor and the replay
tooling consume:

    POST /session {level, condition}        -> {id, ...snapshot}
    GET  /session/{id}                      -> full state snapshot
    POST /session/{id}/edit {col,row,selected}
    POST /session/{id}/action {action}      (action letter D/U/L/R)
    POST /session/{id}/undo
    POST /session/{id}/reset
    POST /session/{id}/solve                -> canonical action sequence
    POST /session/{id}/select {object}
    GET  /session/{id}/gradient?max=k       -> next k sweep cells (full only)
    GET  /session/{id}/log                  -> line-delimited JSON records

Every state-mutating response carries the live solvability readout
{solvable: "Solved"|"Unsolvable"|"Budget", length}. Gradient cells are
single-tag objects: {"u": true} unchanged, {"d": n} delta, {"x": true}
unsolvable, {"b": true} over budget, {"n": true} not editable,
{"s": len} makes a previously unsolvable level solvable.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException, Response
from pydantic import BaseModel

from .mechanics import Action, EmptyHistory
from .model import Cell, EditStatus, LevelError, TileKind, serialize_level
from .sessions import (
    Condition,
    ConditionDisabled,
    IllegalCommand,
    Session,
    SessionStore,
    UnknownSession,
)
from .solver import SearchBudget


class CreateSessionBody(BaseModel):
    level: str
    condition: str = "full"


class EditBody(BaseModel):
    col: int
    row: int
    selected: str


class ActionBody(BaseModel):
    action: str


class SelectBody(BaseModel):
    object: str


def _palette(name: str) -> TileKind:
    try:
        return TileKind[name.upper()]
    except KeyError:
        raise HTTPException(status_code=422, detail=f"unknown palette object {name!r}")


def _snapshot(session: Session) -> dict:
    result = session.solve_result
    snapshot = {
        "id": session.id,
        "condition": session.condition.value,
        "level": serialize_level(session.level),
        "width": session.level.width,
        "height": session.level.height,
        "selected": session.selected.name.lower(),
        "play": {
            "bird": [[c.col, c.row] for c in session.play.bird],
            "fruit_remaining": sorted([c.col, c.row] for c in session.play.fruit_remaining),
            "status": session.play.status.value,
        },
        "solvable": result.status.value,
        "length": result.length,
    }
    if session.sweep is not None:
        snapshot["sweep"] = {
            "cursor": session.sweep.cursor,
            "total": session.sweep.total,
            "generation": session.sweep.generation,
            "done": session.sweep.done,
        }
    else:
        snapshot["sweep"] = None
    return snapshot


def create_app(store: SessionStore | None = None) -> FastAPI:
    app = FastAPI(title="snakedit session service")
    app.state.store = store if store is not None else SessionStore(budget=SearchBudget())
    sessions: SessionStore = app.state.store

    def locked(session_id: str) -> tuple[Session, object]:
        try:
            return sessions.get(session_id), sessions.lock(session_id)
        except UnknownSession:
            raise HTTPException(status_code=404, detail=f"unknown session {session_id!r}")

    @app.post("/session")
    def create_session(body: CreateSessionBody) -> dict:
        try:
            condition = Condition(body.condition)
        except ValueError:
            raise HTTPException(status_code=422, detail=f"unknown condition {body.condition!r}")
        try:
            session = sessions.create(body.level, condition)
        except LevelError as exc:
            raise HTTPException(status_code=400, detail=f"{type(exc).__name__}: {exc}")
        return _snapshot(session)

    @app.get("/session/{session_id}")
    def get_session(session_id: str) -> dict:
        session, lock = locked(session_id)
        with lock:
            return _snapshot(session)

    @app.post("/session/{session_id}/edit")
    def edit(session_id: str, body: EditBody) -> dict:
        session, lock = locked(session_id)
        with lock:
            try:
                outcome = session.edit(Cell(body.col, body.row), _palette(body.selected))
            except LevelError as exc:
                raise HTTPException(status_code=400, detail=f"{type(exc).__name__}: {exc}")
            response = _snapshot(session)
            response["edit"] = {
                "outcome": outcome.status.value,
                "reason": outcome.reason,
            }
            return response

    @app.post("/session/{session_id}/action")
    def act(session_id: str, body: ActionBody) -> dict:
        session, lock = locked(session_id)
        with lock:
            try:
                action = Action.from_letter(body.action)
            except ValueError:
                raise HTTPException(status_code=422, detail=f"unknown action {body.action!r}")
            try:
                kind = session.act(action)
            except IllegalCommand as exc:
                raise HTTPException(status_code=409, detail=str(exc))
            response = _snapshot(session)
            response["outcome"] = kind.value
            return response

    @app.post("/session/{session_id}/undo")
    def undo(session_id: str) -> dict:
        session, lock = locked(session_id)
        with lock:
            try:
                session.undo()
            except EmptyHistory as exc:
                raise HTTPException(status_code=409, detail=str(exc))
            return _snapshot(session)

    @app.post("/session/{session_id}/reset")
    def reset(session_id: str) -> dict:
        session, lock = locked(session_id)
        with lock:
            session.reset()
            return _snapshot(session)

    @app.post("/session/{session_id}/solve")
    def run_solver(session_id: str) -> dict:
        session, lock = locked(session_id)
        with lock:
            result = session.run_solver()
            response = _snapshot(session)
            response["actions"] = [a.value for a in result.actions] if result.actions else []
            return response

    @app.post("/session/{session_id}/select")
    def select(session_id: str, body: SelectBody) -> dict:
        session, lock = locked(session_id)
        with lock:
            session.select(_palette(body.object))
            return _snapshot(session)

    @app.get("/session/{session_id}/gradient")
    def poll_gradient(session_id: str, max: int = 1) -> dict:
        session, lock = locked(session_id)
        with lock:
            try:
                cells, restarted = session.poll_gradient(max_cells=max)
            except ConditionDisabled as exc:
                raise HTTPException(status_code=403, detail=str(exc))
            sweep = session.sweep
            return {
                "cells": [
                    {"col": gc.cell.col, "row": gc.cell.row, **gc.to_wire()} for gc in cells
                ],
                "cursor": sweep.cursor,
                "total": sweep.total,
                "generation": sweep.generation,
                "done": sweep.done,
                "restarted": restarted,
            }

    @app.get("/session/{session_id}/log")
    def export_log(session_id: str) -> Response:
        session, lock = locked(session_id)
        with lock:
            return Response(
                content=session.export_log(), media_type="application/x-ndjson"
            )

    return app


app = create_app()
