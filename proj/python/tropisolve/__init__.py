"""Exact solvers for max-closed semilinear constraints."""

from ._tropisolve import (
    BudgetExceeded,
    ConsistencyError,
    Error,
    ParseError,
    PreconditionError,
    classify,
    compile,
    duality,
    equivalent,
    game_values,
    normalize,
    solve,
    tropical,
)

__all__ = [
    "BudgetExceeded",
    "ConsistencyError",
    "Error",
    "ParseError",
    "PreconditionError",
    "classify",
    "compile",
    "duality",
    "equivalent",
    "game_values",
    "normalize",
    "solve",
    "tropical",
]
