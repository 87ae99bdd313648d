"""Edge-coloring of series-parallel multigraphs in linear time.

The reducer decides whether ``chi'(G) <= k`` by repeatedly rewriting small
local configurations; the colorer replays the rewrites to produce an explicit
coloring; the oracle provides brute-force ground truth for testing.
"""

from __future__ import annotations

from .colorer import Coloring, color, coloring_violation, lemma1_extend, replay_color, two_fan_extend, verify_coloring
from .encoding import EncodingState, expand, from_multigraph, potential
from .errors import (
    BudgetExceeded,
    GraphError,
    NoneFound,
    NotSeriesParallel,
    ParseError,
    PreconditionViolated,
    SPColorError,
    TraceMismatch,
)
from .multigraph import Multigraph, build, induced, is_series_parallel, underlying_simple
from .oracle import chi_exact, gamma_exact, gen_sp, is_k_colorable_exact, lower_bound
from .reducer import Answer, Verdict, chromatic_index, decide

__all__ = [
    "Answer",
    "BudgetExceeded",
    "Coloring",
    "EncodingState",
    "GraphError",
    "Multigraph",
    "NoneFound",
    "NotSeriesParallel",
    "ParseError",
    "PreconditionViolated",
    "SPColorError",
    "TraceMismatch",
    "Verdict",
    "build",
    "chi_exact",
    "chromatic_index",
    "color",
    "coloring_violation",
    "decide",
    "expand",
    "from_multigraph",
    "gamma_exact",
    "gen_sp",
    "induced",
    "is_k_colorable_exact",
    "is_series_parallel",
    "lemma1_extend",
    "lower_bound",
    "potential",
    "replay_color",
    "two_fan_extend",
    "underlying_simple",
    "verify_coloring",
]
