"""Agent-based collective search on the DONALD + GERALD = ROBERT puzzle.

Three strategies over the 10! digit-to-letter assignments: independent
random walks, imitation of the lowest-cost agent, and a shared blackboard
of column hints with limited capacity. Exact combinatorial oracles cover
the hint catalog and the landscape's minima census.
"""

from .engines import (
    Blackboard,
    Group,
    SearchOutcome,
    SearchParams,
    blackboard_update,
    imitate,
    imitative_update,
    independent_update,
    init_group,
    init_run,
    post_hint,
    run_many,
    run_null_model,
    run_search,
    run_search_reference,
)
from .hints import (
    Hint,
    HintCatalog,
    assimilate_hint,
    build_catalog,
    catalog,
    extract_hints,
    is_correct,
)
from .landscape import MinimaReport, assignment_at, enumerate_minima, permutation_index
from .puzzle import (
    LETTERS,
    SENTINEL_COST,
    SOLUTION,
    Assignment,
    apply_swap,
    assignment_from_digits,
    cost,
    is_solution,
    neighbors,
    random_elementary_move,
    word_value,
)
from .rng import Pcg32, derive_stream, splitmix64
from .stats import (
    CostSample,
    ExponentialFit,
    PhiEstimate,
    computational_cost,
    fit_exponential,
    null_model_phi,
    phi_from_records,
    summarize,
)

__version__ = "0.1.0"
