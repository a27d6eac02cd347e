"""Level design toolkit for a gravity snake puzzle.

Public surface: the level model and text format, the rules engine, the
budgeted breadth-first solver, the exhaustive edit-gradient engine, design
metrics with rank statistics, and the live editor session service.
"""

from .gradient import (
    GradientCell,
    GradientMap,
    GradientStatus,
    GradientSweep,
    evaluation_order,
    gradient,
    gradient_incremental,
)
from .mechanics import (
    ACTIONS,
    Action,
    GameState,
    GameStatus,
    StepKind,
    StepOutcome,
    UndoStack,
    apply_actions,
    initial_state,
    replay_actions,
    step,
)
from .metrics import solution_density, summarize_session, summarize_sessions
from .model import (
    Cell,
    EditOutcome,
    EditStatus,
    Level,
    PaletteObject,
    TileKind,
    apply_edit,
    parse_level,
    serialize_level,
)
from .solver import SearchBudget, SolveResult, SolveStatus, solve, state_key
from .stats import (
    RankTestResult,
    mann_whitney_u,
    spearman_rho,
    wilcoxon_signed_rank,
)

__all__ = [
    "ACTIONS",
    "Action",
    "Cell",
    "EditOutcome",
    "EditStatus",
    "GameState",
    "GameStatus",
    "GradientCell",
    "GradientMap",
    "GradientStatus",
    "GradientSweep",
    "Level",
    "PaletteObject",
    "RankTestResult",
    "SearchBudget",
    "SolveResult",
    "SolveStatus",
    "StepKind",
    "StepOutcome",
    "TileKind",
    "UndoStack",
    "apply_actions",
    "apply_edit",
    "evaluation_order",
    "gradient",
    "gradient_incremental",
    "initial_state",
    "mann_whitney_u",
    "parse_level",
    "replay_actions",
    "serialize_level",
    "solution_density",
    "solve",
    "spearman_rho",
    "state_key",
    "step",
    "summarize_session",
    "summarize_sessions",
    "wilcoxon_signed_rank",
]
