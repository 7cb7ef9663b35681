"""Fibonacci-network solver for fractional differential equations."""

from ._fibnet import (  # noqa: F401
    Benchmark,
    Expr,
    TrainConfig,
    TrainReport,
    builtin,
    caputo_deriv_fib,
    caputo_deriv_poly,
    error_table,
    eval_expr,
    fibonacci,
    gamma,
    load_problem,
    parse,
    solve,
    to_problem_file,
)

__all__ = [
    "Benchmark",
    "Expr",
    "TrainConfig",
    "TrainReport",
    "builtin",
    "caputo_deriv_fib",
    "caputo_deriv_poly",
    "error_table",
    "eval_expr",
    "fibonacci",
    "gamma",
    "load_problem",
    "parse",
    "solve",
    "to_problem_file",
]
