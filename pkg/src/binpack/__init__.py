"""One-dimensional bin-packing heuristics with an exact small-instance
oracle and a benchmark harness."""

from .core import (InstanceFormatError, LowerBoundReport, Packing,
                   ProblemInstance, counting_sort_desc, lower_bound,
                   parse_instance, verify_packing, write_instance)
from .heuristics import (HeuristicId, best_fit, first_fit,
                         first_fit_decreasing, max_rest, next_fit,
                         next_fit_decreasing, solve)

__all__ = [
    "InstanceFormatError", "LowerBoundReport", "Packing", "ProblemInstance",
    "counting_sort_desc", "lower_bound", "parse_instance", "verify_packing",
    "write_instance", "HeuristicId", "best_fit", "first_fit",
    "first_fit_decreasing", "max_rest", "next_fit", "next_fit_decreasing",
    "solve",
]
