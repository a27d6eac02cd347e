import random

import pytest

from levelgen import random_level
from snakedit.mechanics import (
    ACTIONS,
    Action,
    EmptyHistory,
    GameStatus,
    IllegalStatus,
    StepKind,
    UndoStack,
    apply_actions,
    initial_state,
    replay_actions,
    step,
)
from snakedit.model import Cell, parse_level


def test_initial_state_settled_corridor():
    level = parse_level("A.E\n###\n")
    state = initial_state(level)
    assert state.status is GameStatus.PLAYING
    assert state.fruit_remaining == frozenset()
    assert state.bird == (Cell(0, 0),)


def test_initial_state_floating_bird_falls_to_death():
    level = parse_level("A.E\n.#.\n")
    assert initial_state(level).status is GameStatus.DEAD


def test_initial_state_counts_fruit():
    level = parse_level("AFF.E\n#####\n")
    assert len(initial_state(level).fruit_remaining) == 2


def test_eating_grows_and_consumes_fruit():
    level = parse_level("..E\nAF.\n###\n")
    state = initial_state(level)
    outcome = step(state, level, Action.RIGHT)
    assert outcome.kind is StepKind.MOVED
    assert len(outcome.state.bird) == len(state.bird) + 1
    assert len(outcome.state.fruit_remaining) == len(state.fruit_remaining) - 1
    assert outcome.state.bird[0] == Cell(1, 1)
    assert outcome.state.bird[-1] == state.bird[-1]  # tail stays on growth


def test_move_into_ground_is_blocked_and_state_unchanged():
    level = parse_level("A#E\n###\n")
    state = initial_state(level)
    outcome = step(state, level, Action.RIGHT)
    assert outcome.kind is StepKind.BLOCKED
    assert outcome.state is state


def test_move_into_spike_is_blocked_not_fatal():
    level = parse_level("A^E\n###\n")
    outcome = step(initial_state(level), level, Action.RIGHT)
    assert outcome.kind is StepKind.BLOCKED


def test_move_into_own_tail_is_blocked():
    # Tail cell has not vacated when the head arrives.
    level = parse_level("AB.E\n####\n")
    state = initial_state(level)
    assert step(state, level, Action.RIGHT).kind is StepKind.BLOCKED


def test_upward_and_horizontal_out_of_bounds_blocked():
    level = parse_level("A.E\n###\n")
    state = initial_state(level)
    assert step(state, level, Action.UP).kind is StepKind.BLOCKED
    assert step(state, level, Action.LEFT).kind is StepKind.BLOCKED


def test_walking_off_ledge_onto_spikes_dies():
    # Hand simulation: R moves the head over the pit, gravity drops the
    # snake two rows onto the spike at (1,3).
    level = parse_level("A.E\n#..\n...\n.^.\n")
    state = initial_state(level)
    outcome = step(state, level, Action.RIGHT)
    assert outcome.kind is StepKind.DIED
    assert outcome.state.status is GameStatus.DEAD
    assert Cell(1, 3) in outcome.state.bird


def test_falling_off_the_map_dies():
    level = parse_level("A.E\n#.#\n")
    outcome = step(initial_state(level), level, Action.RIGHT)
    assert outcome.kind is StepKind.DIED


def test_entering_active_exit_wins_immediately():
    level = parse_level("AE\n##\n")
    outcome = step(initial_state(level), level, Action.RIGHT)
    assert outcome.kind is StepKind.WON
    assert outcome.state.status is GameStatus.WON
    assert not outcome.state.fruit_remaining


def test_inactive_exit_is_passable_sky():
    level = parse_level("AEF\n###\n")
    state = initial_state(level)
    outcome = step(state, level, Action.RIGHT)
    assert outcome.kind is StepKind.MOVED
    assert outcome.state.bird[0] == Cell(1, 0)


def test_win_during_gravity_landing_on_exit():
    # Second R leaves the snake unsupported; it falls one row and the head
    # lands on the exit mid-gravity.
    level = parse_level("BA..\n##.E\n####\n")
    state = initial_state(level)
    state = step(state, level, Action.RIGHT).state
    assert step(state, level, Action.RIGHT).kind is StepKind.WON


def test_fruit_supports_the_snake():
    level = parse_level("A.E\nF##\n")
    state = initial_state(level)
    assert state.status is GameStatus.PLAYING
    assert state.bird == (Cell(0, 0),)


def test_step_requires_playing_state():
    level = parse_level("AE\n##\n")
    won = step(initial_state(level), level, Action.RIGHT).state
    with pytest.raises(IllegalStatus):
        step(won, level, Action.RIGHT)


def test_apply_actions_empty_is_initial_state():
    level = parse_level("A..E\n####\n")
    assert apply_actions(level, []) == initial_state(level)


def test_apply_actions_skips_blocked_moves():
    level = parse_level("A..E\n####\n")
    with_blocked = apply_actions(level, [Action.UP, Action.RIGHT, Action.UP, Action.RIGHT])
    without = apply_actions(level, [Action.RIGHT, Action.RIGHT])
    assert with_blocked == without


def test_apply_actions_stops_after_terminal_state():
    level = parse_level("A..E\n####\n")
    result = replay_actions(level, [Action.RIGHT] * 10)
    assert result.state.status is GameStatus.WON
    assert len(result.outcomes) == 3


def test_undo_stack_restores_previous_state():
    level = parse_level("A..E\n####\n")
    stack = UndoStack()
    s0 = initial_state(level)
    outcome = step(s0, level, Action.RIGHT)
    stack.push(s0)
    assert stack.undo() == s0
    with pytest.raises(EmptyHistory):
        stack.undo()
    assert outcome.kind is StepKind.MOVED


def test_undo_after_death_restores_predeath_state():
    level = parse_level("A.E\n#.#\n")
    stack = UndoStack()
    s0 = initial_state(level)
    outcome = step(s0, level, Action.RIGHT)
    assert outcome.kind is StepKind.DIED
    stack.push(s0)  # deaths are pushed so the editor can roll back
    assert stack.undo() == s0


def _support_holds(state, level) -> bool:
    return any(
        Cell(c.col, c.row + 1) in level.ground or Cell(c.col, c.row + 1) in state.fruit_remaining
        for c in state.bird
    )


def test_mechanics_property_suite_random_replays():
    rng = random.Random(99)
    sequences = 0
    while sequences < 300:
        level = random_level(rng)
        state = initial_state(level)
        stack = UndoStack()
        sequences += 1
        for _ in range(rng.randint(1, 30)):
            if state.status is not GameStatus.PLAYING:
                break
            action = rng.choice(ACTIONS)
            again = step(state, level, action)
            outcome = step(state, level, action)
            assert outcome == again  # determinism: pure function
            if outcome.kind is StepKind.BLOCKED:
                assert outcome.state == state
                continue
            prev = state
            stack.push(prev)
            state = outcome.state
            # fruit monotonicity and the growth length law
            eaten = len(prev.fruit_remaining) - len(state.fruit_remaining)
            assert eaten in (0, 1)
            assert len(state.bird) == len(prev.bird) + eaten
            # self-collision freedom
            assert len(set(state.bird)) == len(state.bird)
            if outcome.kind is StepKind.MOVED:
                assert _support_holds(state, level)  # gravity fixpoint
                assert stack.undo() == prev
                stack.push(prev)
            if outcome.kind is StepKind.WON:
                assert not state.fruit_remaining
