"""The three search dynamics: independent, imitative, and blackboard.

A group of M agents shares one clock: every micro-update advances time by
1/M, starting from t = 1, and the run halts as soon as the just-updated
agent holds the solution. Full runs execute in compiled kernels for speed;
the step functions here define the exact same semantics in plain Python
(one micro-update at a time) and the test suite holds the two sides to
bit-identical behavior on matched random streams.

Randomness discipline: every random choice goes through a per-run PCG32
stream derived from (seed, run_index), and forced choices (one candidate)
never consume a draw. That makes independent runs embarrassingly parallel
and output byte-identical regardless of worker count.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from functools import lru_cache

import numpy as np

from . import _kernels as kernels
from .hints import Hint, HintCatalog, assimilate_hint, catalog, extract_hints
from .puzzle import (
    Assignment,
    cost,
    is_solution,
    random_assignment,
    random_elementary_move,
)
from .rng import Pcg32

FACT10 = 3628800
STRATEGIES = ("independent", "imitative", "blackboard")
CATALOG_SIZE = 351


@dataclass
class SearchParams:
    """Configuration of a single run.

    B = 351 gives an effectively unlimited board (it can hold the whole
    catalog). ``max_time`` censors a run once t exceeds it; paper-style
    runs leave it unset. ``run_index`` selects the private random stream
    derived from ``seed``.
    """

    strategy: str
    M: int = 1
    p: float = 0.0
    B: int = 0
    max_time: float | None = None
    seed: int = 0
    run_index: int = 0

    def validate(self) -> None:
        if self.strategy not in STRATEGIES:
            raise ValueError(f"unknown strategy {self.strategy!r}")
        if self.M < 1:
            raise ValueError(f"group size must be >= 1, got {self.M}")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"imitation probability must be in [0, 1], got {self.p}")
        if not 0 <= self.B <= CATALOG_SIZE:
            raise ValueError(f"board capacity must be in [0, {CATALOG_SIZE}], got {self.B}")
        if self.max_time is not None and self.max_time <= 0:
            raise ValueError(f"max_time must be positive, got {self.max_time}")


@dataclass
class Group:
    """The M agents' assignments; costs are cached for the imitative search."""

    assignments: list[Assignment]
    costs: list[int] | None = None

    @property
    def size(self) -> int:
        return len(self.assignments)


class Blackboard:
    """Ordered, duplicate-free hint store with a hard capacity."""

    def __init__(self, capacity: int, hints: tuple[Hint, ...] = ()):
        self.capacity = capacity
        self.hints: list[Hint] = list(hints)
        self._members = set(self.hints)
        if len(self._members) != len(self.hints) or len(self.hints) > capacity:
            raise ValueError("initial board violates its invariants")

    def __len__(self) -> int:
        return len(self.hints)

    def __contains__(self, h: Hint) -> bool:
        return h in self._members

    def append(self, h: Hint) -> None:
        if h in self._members or len(self.hints) >= self.capacity:
            raise ValueError("append would violate board invariants")
        self.hints.append(h)
        self._members.add(h)

    def replace_at(self, index: int, h: Hint) -> None:
        if h in self._members:
            raise ValueError("replacement hint already on the board")
        self._members.discard(self.hints[index])
        self.hints[index] = h
        self._members.add(h)


@dataclass
class SearchOutcome:
    """What one run produced: halting time, telemetry, and the cost C."""

    t_star: float
    solved: bool
    updates: int
    hint_selections: int = 0
    correct_hint_selections: int = 0
    C: float = 0.0


# ---------------------------------------------------------------------------
# Step-level dynamics (reference semantics, one micro-update per call)
# ---------------------------------------------------------------------------


def init_group(params: SearchParams, rng: Pcg32) -> Group:
    """M assignments drawn uniformly from all 10! permutations."""
    assignments = [random_assignment(rng) for _ in range(params.M)]
    costs = [cost(a) for a in assignments] if params.strategy == "imitative" else None
    return Group(assignments, costs)


def independent_update(group: Group, rng: Pcg32) -> int:
    """One micro-update of the baseline: a random agent makes a random move."""
    t = rng.pick(group.size)
    group.assignments[t] = random_elementary_move(group.assignments[t], rng)
    return t


def imitate(target: Assignment, model: Assignment, rng: Pcg32) -> Assignment:
    """Copy one disagreeing letter of the model into the target.

    The chosen letter takes the model's digit via a single swap with the
    letter currently holding that digit, so letter agreement with the model
    grows by at least one. Identical assignments are a contract violation;
    the caller must fall back to the elementary move instead.
    """
    disagreeing = [i for i in range(10) if target.digits[i] != model.digits[i]]
    if not disagreeing:
        raise ValueError("imitate() requires target != model")
    x = disagreeing[rng.pick(len(disagreeing))]
    return target.swap_indices(x, target.holder[model.digits[x]])


def _select_model(costs: list[int], rng: Pcg32) -> int:
    best = min(costs)
    ties = costs.count(best)
    k = rng.pick(ties)
    seen = -1
    for j, c in enumerate(costs):
        if c == best:
            seen += 1
            if seen == k:
                return j
    raise AssertionError("unreachable")


def imitative_update(group: Group, params: SearchParams, rng: Pcg32) -> int:
    """One micro-update of the imitative search; returns the target index.

    With probability 1-p the target makes an elementary move. Otherwise it
    imitates the lowest-cost agent; if it already equals that model it makes
    an elementary move instead (the rule that keeps a homogeneous group
    moving). The target's cached cost is refreshed.
    """
    t = rng.pick(group.size)
    a = group.assignments[t]
    imitating = params.p > 0.0 and rng.random() < params.p
    if imitating:
        model_idx = _select_model(group.costs, rng)
        model = group.assignments[model_idx]
        if a == model:
            a = random_elementary_move(a, rng)
        else:
            a = imitate(a, model, rng)
    else:
        a = random_elementary_move(a, rng)
    group.assignments[t] = a
    group.costs[t] = cost(a)
    return t


def post_hint(board: Blackboard, agent_hints: list[Hint], rng: Pcg32) -> None:
    """Post one novel hint, replacing a random 'different' hint when full.

    Novel hints are those the agent exhibits but the board lacks; different
    hints are those on the board that the agent does not exhibit. When the
    board is full and every board hint is also the agent's, nothing is
    replaced (erasing a hint the poster itself uses would only lose
    information).
    """
    novel = [h for h in agent_hints if h not in board]
    if not novel:
        return
    chosen = novel[rng.pick(len(novel))]
    if len(board) < board.capacity:
        board.append(chosen)
        return
    exhibited = set(agent_hints)
    different = [i for i, h in enumerate(board.hints) if h not in exhibited]
    if different:
        board.replace_at(different[rng.pick(len(different))], chosen)


def blackboard_update(
    group: Group,
    board: Blackboard,
    params: SearchParams,
    cat: HintCatalog,
    rng: Pcg32,
) -> tuple[int, int, int]:
    """One micro-update of the blackboard search.

    The target reads one random board hint (an empty board forces an
    elementary move). A hint it already exhibits also forces an elementary
    move; otherwise the hint is assimilated. Either way the agent then posts
    from its new assignment. Returns (target index, selections made 0/1,
    correct selections made 0/1); a pick counts as a selection even when the
    agent already uses the hint.
    """
    t = rng.pick(group.size)
    a = group.assignments[t]
    selected = correct = 0
    if len(board) == 0:
        a = random_elementary_move(a, rng)
    else:
        hint = board.hints[rng.pick(len(board))]
        selected = 1
        correct = 1 if cat.is_correct(hint) else 0
        if hint.agrees_with(a):
            a = random_elementary_move(a, rng)
        else:
            a = assimilate_hint(a, hint)
    group.assignments[t] = a
    post_hint(board, extract_hints(a, cat), rng)
    return t, selected, correct


def null_board_update(
    group: Group,
    board_hints: list[Hint],
    cat: HintCatalog,
    rng: Pcg32,
) -> tuple[int, int, int]:
    """Blackboard micro-update against a frozen board (no posting)."""
    t = rng.pick(group.size)
    a = group.assignments[t]
    hint = board_hints[rng.pick(len(board_hints))]
    correct = 1 if cat.is_correct(hint) else 0
    if hint.agrees_with(a):
        a = random_elementary_move(a, rng)
    else:
        a = assimilate_hint(a, hint)
    group.assignments[t] = a
    return t, 1, correct


def init_run(
    params: SearchParams, rng: Pcg32, cat: HintCatalog | None = None
) -> tuple[Group, Blackboard | None]:
    """Set up a run's state at t = 1, exactly as ``run_search`` does.

    For the blackboard strategy every agent posts once from its initial
    assignment, in a uniformly shuffled order; initialization consumes no
    clock time.
    """
    group = init_group(params, rng)
    board = None
    if params.strategy == "blackboard":
        cat = cat if cat is not None else catalog()
        board = Blackboard(params.B)
        order = list(range(params.M))
        rng.shuffle(order)
        for idx in order:
            post_hint(board, extract_hints(group.assignments[idx], cat), rng)
    return group, board


def run_search_reference(
    params: SearchParams,
    rng: Pcg32 | None = None,
    cat: HintCatalog | None = None,
) -> SearchOutcome:
    """Pure-Python run loop. Slow; meant for tests and tiny experiments."""
    params.validate()
    rng = rng if rng is not None else Pcg32.for_run(params.seed, params.run_index)
    cat = cat if cat is not None else catalog()
    group, board = init_run(params, rng, cat)
    n_max = _updates_cutoff(params)
    selections = corrects = 0
    if any(is_solution(a) for a in group.assignments):
        return _outcome(params, 0, True, selections, corrects)
    n = 0
    while n < n_max:
        if params.strategy == "independent":
            t = independent_update(group, rng)
        elif params.strategy == "imitative":
            t = imitative_update(group, params, rng)
        else:
            t, sel, cor = blackboard_update(group, board, params, cat, rng)
            selections += sel
            corrects += cor
        n += 1
        if is_solution(group.assignments[t]):
            return _outcome(params, n, True, selections, corrects)
    return _outcome(params, n, False, selections, corrects)


# ---------------------------------------------------------------------------
# Kernel-backed full runs
# ---------------------------------------------------------------------------


@lru_cache(maxsize=1)
def _tables():
    return kernels.catalog_tables(catalog())


def _updates_cutoff(params: SearchParams) -> int:
    if params.max_time is None:
        return int(kernels.NO_CUTOFF)
    # Smallest update count n with 1 + n/M > max_time.
    n = int(params.M * (params.max_time - 1.0)) + 1
    return max(n, 0)


def _outcome(params: SearchParams, n: int, solved: bool, sel: int, cor: int) -> SearchOutcome:
    return SearchOutcome(
        t_star=1.0 + n / params.M,
        solved=solved,
        updates=n,
        hint_selections=sel,
        correct_hint_selections=cor,
        C=(params.M + n) / FACT10,
    )


def _run_blackboard_raw(
    params: SearchParams, post_enabled: bool = True, check_board: bool = False
):
    """Kernel call with the run's final state exposed (tests peek at it)."""
    m, b = params.M, params.B
    digits = np.empty((m, 10), dtype=np.int64)
    holder = np.empty((m, 10), dtype=np.int64)
    res = np.empty(m, dtype=np.int64)
    board = np.empty(CATALOG_SIZE, dtype=np.int64)
    on_board = np.zeros(CATALOG_SIZE, dtype=np.uint8)
    agent_mask = np.zeros(CATALOG_SIZE, dtype=np.uint8)
    n, solved, sel, cor, bsize, code = kernels.run_blackboard(
        params.seed, params.run_index, m, b, _updates_cutoff(params),
        digits, holder, res, board, on_board, agent_mask,
        *_tables(), post_enabled, check_board,
    )
    if code != 0:
        raise RuntimeError(f"board invariant violated (code {int(code)})")
    state = {"digits": digits, "board": board[: int(bsize)].copy(), "res": res}
    return _outcome(params, int(n), bool(solved), int(sel), int(cor)), state


def run_search(params: SearchParams) -> SearchOutcome:
    """Execute one full run to halting (or censoring) and report it."""
    params.validate()
    m = params.M
    n_max = _updates_cutoff(params)
    digits = np.empty((m, 10), dtype=np.int64)
    holder = np.empty((m, 10), dtype=np.int64)
    res = np.empty(m, dtype=np.int64)
    if params.strategy == "independent":
        n, solved = kernels.run_independent(
            params.seed, params.run_index, m, n_max, digits, holder, res
        )
        return _outcome(params, int(n), bool(solved), 0, 0)
    if params.strategy == "imitative":
        costs = np.empty(m, dtype=np.int64)
        n, solved = kernels.run_imitative(
            params.seed, params.run_index, m, params.p, n_max, digits, holder, res, costs
        )
        return _outcome(params, int(n), bool(solved), 0, 0)
    outcome, _ = _run_blackboard_raw(params)
    return outcome


def run_null_model(params: SearchParams, cat: HintCatalog | None = None) -> SearchOutcome:
    """Blackboard run against a frozen board of B catalog hints.

    The board is drawn uniformly without replacement (fresh per run) and
    never changes; posting is disabled. Telemetry counters behave exactly
    as in the live blackboard dynamics.
    """
    params.validate()
    if params.strategy != "blackboard":
        raise ValueError("the null model applies to the blackboard strategy")
    if params.B < 1:
        raise ValueError("the null model needs a board of size >= 1")
    m, b = params.M, params.B
    digits = np.empty((m, 10), dtype=np.int64)
    holder = np.empty((m, 10), dtype=np.int64)
    res = np.empty(m, dtype=np.int64)
    board = np.empty(b, dtype=np.int64)
    pool = np.empty(CATALOG_SIZE, dtype=np.int64)
    hint_len, hint_letters, hint_digits, hint_correct, *_ = _tables()
    n, solved, sel, cor = kernels.run_null_board(
        params.seed, params.run_index, m, b, _updates_cutoff(params),
        digits, holder, res, board, pool,
        hint_len, hint_letters, hint_digits, hint_correct,
    )
    return _outcome(params, int(n), bool(solved), int(sel), int(cor))


def run_many(
    params: SearchParams,
    runs: int,
    threads: int | None = None,
    run_index_base: int = 0,
    null_model: bool = False,
) -> list[SearchOutcome]:
    """``runs`` independent runs, ordered by run index.

    Run r uses the stream derived from (seed, run_index_base + r), so the
    result list is identical whatever the thread count or scheduling.
    """
    params.validate()
    fn = run_null_model if null_model else run_search
    configs = [replace(params, run_index=run_index_base + r) for r in range(runs)]
    results: list[SearchOutcome | None] = [None] * runs
    # First run executes inline so kernels compile once, not per worker.
    results[0] = fn(configs[0])
    if threads is not None and threads > 1 and runs > 2:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for r, outcome in enumerate(pool.map(fn, configs[1:]), start=1):
                results[r] = outcome
    else:
        for r in range(1, runs):
            results[r] = fn(configs[r])
    return results
