#!/usr/bin/env python3
"""Record a scripted editor session against the live service.

Produces frontend/tests/fixtures/session_recording.json: an ordered list of
request/response exchanges that the front-end controller tests replay
through a fake fetch. Regenerate whenever the wire protocol changes:

    python3 scripts/record_ui_fixture.py
"""

from __future__ import annotations

import json
from pathlib import Path

from fastapi.testclient import TestClient

from snakedit.service import create_app

BUMP = ".....\nBA#.E\n#####\n"
CORRIDOR = "A..E\n####\n"

OUT = Path(__file__).resolve().parent.parent / "frontend" / "tests" / "fixtures"


def main() -> None:
    client = TestClient(create_app())
    exchanges: list[dict] = []

    def call(method: str, path: str, body: dict | None = None) -> dict:
        if method == "GET":
            response = client.get(path)
        else:
            response = client.post(path, json=body) if body is not None else client.post(path)
        exchange = {
            "request": {"method": method, "path": path},
            "response": {"status": response.status_code, "json": response.json()},
        }
        if body is not None:
            exchange["request"]["body"] = body
        exchanges.append(exchange)
        assert response.status_code == 200, (path, response.text)
        return response.json()

    # Full-condition session: sweep polling, an edit, play keys, solve
    # animation (reset + replayed actions), reset, palette selection.
    snap = call("POST", "/session", {"level": BUMP, "condition": "full"})
    sid = snap["id"]
    for _ in range(4):
        call("GET", f"/session/{sid}/gradient?max=1")
    call("POST", f"/session/{sid}/edit", {"col": 2, "row": 1, "selected": "ground"})
    call("GET", f"/session/{sid}/gradient?max=1")
    call("POST", f"/session/{sid}/action", {"action": "R"})
    call("POST", f"/session/{sid}/undo")
    solved = call("POST", f"/session/{sid}/solve")
    call("POST", f"/session/{sid}/reset")
    for letter in solved["actions"]:
        call("POST", f"/session/{sid}/action", {"action": letter})
    call("POST", f"/session/{sid}/reset")
    call("POST", f"/session/{sid}/select", {"object": "spike"})

    # Half-condition session: solver available, gradient never requested.
    half = call("POST", "/session", {"level": CORRIDOR, "condition": "half"})
    hid = half["id"]
    half_solved = call("POST", f"/session/{hid}/solve")
    call("POST", f"/session/{hid}/reset")
    for letter in half_solved["actions"]:
        call("POST", f"/session/{hid}/action", {"action": letter})

    OUT.mkdir(parents=True, exist_ok=True)
    path = OUT / "session_recording.json"
    path.write_text(json.dumps({"exchanges": exchanges}, indent=2) + "\n")
    print(f"wrote {path} ({len(exchanges)} exchanges)")


if __name__ == "__main__":
    main()
