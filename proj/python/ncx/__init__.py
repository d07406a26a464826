"""Integer complexity tables, optimal presentations and extremal elements."""

from ._core import (
    NcxError,
    Table,
    big_omega,
    build,
    defect,
    evaluate,
    is_prime,
    longest_bad_run,
    maximal_elements,
    minimal_elements,
    optimal_presentations,
    oracle_costs,
    structure_ok,
    term_cost,
)

__all__ = [
    "NcxError",
    "Table",
    "big_omega",
    "build",
    "defect",
    "evaluate",
    "is_prime",
    "longest_bad_run",
    "maximal_elements",
    "minimal_elements",
    "optimal_presentations",
    "oracle_costs",
    "structure_ok",
    "term_cost",
]
