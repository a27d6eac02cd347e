"""Acceptance suite: one test per criterion, each printing a PASS line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines.
The UI contract (overlay colors, keybindings, per-frame pacing, readout
updates) is verified separately by the front end's vitest suite in
frontend/tests/, which replays a recording of this service.
"""

import random
import time
from itertools import product

from fastapi.testclient import TestClient

import levels
from levelgen import random_level
from search_oracle import oracle_min_length
from snakedit.gradient import GradientStatus, gradient, gradient_incremental
from snakedit.mechanics import (
    ACTIONS,
    Action,
    GameStatus,
    StepKind,
    UndoStack,
    initial_state,
    replay_actions,
    step,
)
from snakedit.metrics import solution_density, summarize_sessions
from snakedit.model import Cell, EditStatus, TileKind, apply_edit, parse_level, serialize_level
from snakedit.service import create_app
from snakedit.sessions import LogRecord, parse_log, replay_log
from snakedit.solver import SearchBudget, SolveStatus, solve
from snakedit.stats import mann_whitney_u, spearman_rho, wilcoxon_signed_rank
from stats_oracle import exact_mann_whitney, exact_spearman, exact_wilcoxon


def test_criterion_1_solver_oracle_equivalence():
    rng = random.Random(2024)
    start = time.time()
    solved = total = 0
    while solved < 100 or total < 220:
        level = random_level(rng, max_width=7, max_height=7, max_fruit=2, max_bird=3)
        total += 1
        result = solve(level)
        expected = oracle_min_length(level)
        if expected is None:
            assert result.status is SolveStatus.UNSOLVABLE, serialize_level(level)
        else:
            assert result.status is SolveStatus.SOLVED, serialize_level(level)
            assert result.length == expected, serialize_level(level)
            solved += 1
    elapsed = time.time() - start
    assert total >= 200
    assert elapsed < 60
    print(
        f"PASS criterion 1: solver matches oracle on {total} levels "
        f"({solved} solvable) in {elapsed:.1f}s"
    )


def test_criterion_2_budget_semantics():
    buster = parse_level(levels.budget_buster())
    result = solve(buster, SearchBudget(50_000))
    assert result.status is SolveStatus.BUDGET_EXHAUSTED
    assert result.expansions == 50_000

    rng = random.Random(77)
    checked = 0
    while checked < 25:
        level = random_level(rng)
        base = solve(level, SearchBudget(50_000))
        if base.status is SolveStatus.BUDGET_EXHAUSTED:
            continue
        for larger in (50_001, 100_000, 500_000):
            assert solve(level, SearchBudget(larger)) == base
        checked += 1
    print("PASS criterion 2: budget exhausts at exactly 50000; results stable for larger budgets")


def test_criterion_3_canonical_tie_break():
    level = parse_level(levels.TIE_BREAK)
    result = solve(level)
    assert result.solved and result.length == 2

    # Oracle: enumerate every action sequence up to the optimal length.
    assert oracle_min_length(level) == 2
    winners = set()
    for seq in product(ACTIONS, repeat=2):
        replay = replay_actions(level, seq)
        if replay.state.status is GameStatus.WON and replay.blocked_count == 0:
            winners.add(seq)
    firsts = {seq[0] for seq in winners}
    assert Action.DOWN in firsts and Action.RIGHT in firsts
    assert result.actions[0] is Action.DOWN
    assert all(solve(level) == result for _ in range(5))
    print("PASS criterion 3: down-first optimum chosen over right-first; solves byte-identical")


def test_criterion_4_gradient_soundness_and_exhaustiveness():
    budget = SearchBudget(50_000)
    rng = random.Random(99)
    for _ in range(20):
        level = random_level(rng, max_width=6, max_height=5)
        selected = rng.choice(list(TileKind))
        gmap = gradient(level, selected, budget)
        assert len(gmap.cells) == level.width * level.height
        for gc in gmap.cells:
            if gc.status is GradientStatus.DELTA:
                edited = apply_edit(level, gc.cell, selected).level
                assert solve(edited, budget).length == gmap.base_result.length + gc.delta

        base = solve(level, budget)
        cursor, incremental = 0, []
        while True:
            out = gradient_incremental(level, selected, budget, cursor, base_result=base)
            if out is None:
                break
            cell, cursor = out
            incremental.append(cell)
        assert tuple(incremental) == gmap.cells

    bump = parse_level(levels.SHORTCUT_BUMP)
    ahead = gradient(bump, TileKind.SKY, budget).at(Cell(*levels.SHORTCUT_BUMP_CELL))
    assert ahead.status is GradientStatus.DELTA and ahead.delta == -1
    print("PASS criterion 4: gradient maps exhaustive and sound; -1 ahead of the snake reproduced")


def test_criterion_5_mechanics_property_suite():
    rng = random.Random(4242)
    sequences = 0
    violations = 0
    while sequences < 1000:
        level = random_level(rng)
        state = initial_state(level)
        stack = UndoStack()
        sequences += 1
        for _ in range(rng.randint(1, 25)):
            if state.status is not GameStatus.PLAYING:
                break
            outcome = step(state, level, rng.choice(ACTIONS))
            if outcome.kind is StepKind.BLOCKED:
                assert outcome.state == state
                continue
            prev = state
            stack.push(prev)
            state = outcome.state
            eaten = len(prev.fruit_remaining) - len(state.fruit_remaining)
            if eaten not in (0, 1):
                violations += 1  # fruit monotonicity
            if len(state.bird) != len(prev.bird) + eaten:
                violations += 1  # length law
            if len(set(state.bird)) != len(state.bird):
                violations += 1  # self-collision
            if outcome.kind is StepKind.MOVED:
                supported = any(
                    Cell(c.col, c.row + 1) in level.ground
                    or Cell(c.col, c.row + 1) in state.fruit_remaining
                    for c in state.bird
                )
                if not supported:
                    violations += 1  # gravity fixpoint
                if stack.undo() != prev:
                    violations += 1  # undo inversion
                stack.push(prev)
            if outcome.kind is StepKind.WON and state.fruit_remaining:
                violations += 1
    assert violations == 0
    print(f"PASS criterion 5: {sequences} random action sequences, zero property violations")


def test_criterion_6_density_and_rank_tests():
    assert solution_density(parse_level(levels.DENSITY_ONE)) == 1
    assert solution_density(parse_level(levels.DENSITY_THREE)) == 3
    assert solution_density(parse_level(levels.UNSOLVABLE)) is None

    rng = random.Random(616)
    for _ in range(5):
        xs = [rng.randint(0, 5) for _ in range(6)]
        ys = [rng.randint(0, 5) for _ in range(6)]
        if len(set(xs)) < 2 or len(set(ys)) < 2:
            continue
        mine = spearman_rho(xs, ys)
        _, oracle_p = exact_spearman(xs, ys)
        assert abs(mine.p_value - oracle_p) <= 1e-12

        xs2 = [rng.randint(0, 6) for _ in range(5)]
        ys2 = [rng.randint(0, 6) for _ in range(5)]
        mwu = mann_whitney_u(xs2, ys2)
        _, oracle_p = exact_mann_whitney(xs2, ys2)
        assert abs(mwu.p_value - oracle_p) <= 1e-12

        pairs = [(rng.randint(0, 8), rng.randint(0, 8)) for _ in range(8)]
        if any(x != y for x, y in pairs):
            wil = wilcoxon_signed_rank(pairs)
            _, oracle_p = exact_wilcoxon(pairs)
            assert abs(wil.p_value - oracle_p) <= 1e-12

    for _ in range(10):
        xs = [rng.random() for _ in range(6)]
        ys = [rng.random() + rng.choice([0.0, 0.5]) for _ in range(6)]
        exact = mann_whitney_u(xs, ys, method="exact")
        approx = mann_whitney_u(xs, ys, method="approximation")
        assert abs(exact.p_value - approx.p_value) <= 0.02
        pairs = [(rng.random(), rng.random() + rng.choice([0.0, 0.3])) for _ in range(12)]
        exact = wilcoxon_signed_rank(pairs, method="exact")
        approx = wilcoxon_signed_rank(pairs, method="approximation")
        assert abs(exact.p_value - approx.p_value) <= 0.02
    print("PASS criterion 6: densities 1/3/undefined; rank tests match enumeration oracles")


def test_criterion_7_session_replay_determinism():
    client = TestClient(create_app())
    rng = random.Random(505)

    snap = client.post(
        "/session", json={"level": levels.SHORTCUT_BUMP, "condition": "full"}
    ).json()
    sid = snap["id"]
    palette = ["sky", "ground", "spike", "fruit", "exit"]
    for _ in range(60):
        roll = rng.random()
        if roll < 0.55:
            client.post(
                f"/session/{sid}/edit",
                json={
                    "col": rng.randrange(5),
                    "row": rng.randrange(3),
                    "selected": rng.choice(palette),
                },
            )
        elif roll < 0.85:
            client.post(f"/session/{sid}/action", json={"action": rng.choice("DULR")})
        elif roll < 0.95:
            client.post(f"/session/{sid}/undo")
        else:
            client.post(f"/session/{sid}/solve")
    final_level = client.get(f"/session/{sid}").json()["level"]
    records = parse_log(client.get(f"/session/{sid}/log").text)
    assert serialize_level(replay_log(records)) == final_level

    half = client.post(
        "/session", json={"level": levels.SHORTCUT_BUMP, "condition": "half"}
    ).json()
    hid = half["id"]
    assert half["sweep"] is None
    transmitted = 0
    for _ in range(15):
        client.post(f"/session/{hid}/edit", json={"col": 4, "row": 0, "selected": "ground"})
        client.post(f"/session/{hid}/solve")
        response = client.get(f"/session/{hid}/gradient", params={"max": 50})
        assert response.status_code == 403
        transmitted += len(response.json().get("cells", []))
    assert transmitted == 0
    assert serialize_level(replay_log(parse_log(client.get(f"/session/{hid}/log").text))) == (
        client.get(f"/session/{hid}").json()["level"]
    )
    print("PASS criterion 7: log replay byte-identical; half sessions transmit zero gradient cells")


def test_criterion_8_stats_table_shape():
    level_text = ".....\nA..E.\n#####\n"

    def rec(t_ms, kind, **data):
        return LogRecord(t_ms=t_ms, kind=kind, data=data)

    full_a = [
        rec(0, "load_level", level=level_text, condition="full"),
        rec(1_000, "edit", col=4, row=0, selected="ground"),
        rec(2_000, "play", action="R", outcome="moved"),
        rec(4_000, "solve", status="Solved", length=3),
        rec(240_000, "reset"),
    ]
    full_b = [
        rec(0, "load_level", level=level_text, condition="full"),
        rec(30, "solve", status="Solved", length=3),
        rec(120_000, "undo"),
    ]
    half_a = [
        rec(0, "load_level", level=level_text, condition="half"),
        rec(60_000, "play", action="R", outcome="moved"),
    ]
    table = summarize_sessions([full_a, full_b, half_a])
    by_key = {(r.metric, r.condition): r for r in table.rows}
    assert len(table.rows) == 8  # 4 metrics x 2 conditions
    assert by_key[("time_min", "full")].mean == 3.0  # (4 + 2) / 2
    assert by_key[("time_min", "full")].std == (2.0**0.5)  # stdev of {4, 2}
    assert by_key[("time_min", "full")].median == 3.0
    assert by_key[("num_actions", "full")].mean == 3.0  # {4, 2} commands
    assert by_key[("num_solver", "full")].mean == 1.0
    assert by_key[("sol_length", "full")].mean == 3.0
    assert by_key[("time_min", "half")].mean == 1.0
    assert by_key[("num_actions", "half")].mean == 1.0
    assert by_key[("num_solver", "half")].mean == 0.0
    assert by_key[("sol_length", "half")].mean == 3.0

    lines = table.to_csv().splitlines()
    assert lines[0] == "metric,condition,mean,std,median"
    assert len(lines) == 9
    print("PASS criterion 8: four-metric by mean/std/median table with exact arithmetic")
