"""Compiled hot paths: full search runs and the exhaustive landscape scan.

Every kernel consumes randomness through the same PCG32 stream, in exactly
the same order, as the pure-Python step functions in ``engines``; the test
suite locks the two sides together state-for-state. Group state is kept as
flat integer arrays (digits per agent, digit holder per agent, and the
signed residual ROBERT - (DONALD + GERALD), updated incrementally on every
swap) so a micro-update costs a handful of arithmetic ops.
"""

from __future__ import annotations

import numpy as np
from numba import njit, prange

from .hints import HintCatalog, column_letters
from .puzzle import COEFFS, LETTER_INDEX, LETTER_PAIRS

U64 = np.uint64

_MASK32 = U64(0xFFFFFFFF)
_PCG_MULT = U64(6364136223846793005)
_GOLDEN = U64(0x9E3779B97F4A7C15)
_SM_MIX1 = U64(0xBF58476D1CE4E5B9)
_SM_MIX2 = U64(0x94D049BB133111EB)
_TWO32 = U64(4294967296)

COEF_ARR = np.array(COEFFS, dtype=np.int64)
PAIR_X = np.array([i for i, _ in LETTER_PAIRS], dtype=np.int64)
PAIR_Y = np.array([j for _, j in LETTER_PAIRS], dtype=np.int64)

# Letter indices of D, G, R (digit 0 on any of them is the sentinel case).
_D = LETTER_INDEX["D"]
_G = LETTER_INDEX["G"]
_R = LETTER_INDEX["R"]

SENTINEL = np.int64(10**8)
NO_CUTOFF = np.int64(1) << np.int64(62)

FACTORIALS = np.array(
    [1, 1, 2, 6, 24, 120, 720, 5040, 40320, 362880, 3628800], dtype=np.int64
)
N_STATES = 3628800


# ---------------------------------------------------------------------------
# PCG32 primitives (state is a 2-element uint64 array: [state, inc])
# ---------------------------------------------------------------------------


@njit(inline="always")
def _next_u32(s):
    old = s[0]
    s[0] = old * _PCG_MULT + s[1]
    xorshifted = (((old >> U64(18)) ^ old) >> U64(27)) & _MASK32
    rot = old >> U64(59)
    return ((xorshifted >> rot) | (xorshifted << ((U64(32) - rot) & U64(31)))) & _MASK32


@njit(inline="always")
def _randbelow(s, n):
    un = U64(n)
    x = _next_u32(s)
    m = x * un
    low = m & _MASK32
    if low < un:
        threshold = (_TWO32 - un) % un
        while low < threshold:
            x = _next_u32(s)
            m = x * un
            low = m & _MASK32
    return np.int64(m >> U64(32))


@njit(inline="always")
def _pick(s, n):
    if n == 1:
        return np.int64(0)
    return _randbelow(s, n)


@njit(inline="always")
def _rand01(s):
    return np.float64(_next_u32(s)) * 2.3283064365386963e-10  # 2**-32


@njit(inline="always")
def _splitmix64(x):
    x = x + _GOLDEN
    x = (x ^ (x >> U64(30))) * _SM_MIX1
    x = (x ^ (x >> U64(27))) * _SM_MIX2
    return x ^ (x >> U64(31))


@njit(cache=True)
def _make_stream(master_seed, run_index):
    folded = _splitmix64(_splitmix64(U64(master_seed)) ^ U64(run_index))
    initstate = _splitmix64(folded)
    initseq = _splitmix64(folded ^ _GOLDEN)
    s = np.empty(2, dtype=np.uint64)
    s[0] = U64(0)
    s[1] = (initseq << U64(1)) | U64(1)
    _next_u32(s)
    s[0] = s[0] + initstate
    _next_u32(s)
    return s


@njit(cache=True, nogil=True)
def stream_probe(master_seed, run_index, n):
    """First n raw 32-bit outputs of a run's stream (for parity tests)."""
    s = _make_stream(master_seed, run_index)
    out = np.empty(n, dtype=np.uint64)
    for i in range(n):
        out[i] = _next_u32(s)
    return out


# ---------------------------------------------------------------------------
# Group state helpers
# ---------------------------------------------------------------------------


@njit(inline="always")
def _swap(d_row, h_row, x, y):
    """Swap letters x and y; returns the residual delta."""
    dx = d_row[x]
    dy = d_row[y]
    d_row[x] = dy
    d_row[y] = dx
    h_row[dx] = y
    h_row[dy] = x
    return (COEF_ARR[x] - COEF_ARR[y]) * (dy - dx)


@njit(inline="always")
def _elementary_move(s, d_row, h_row):
    k = _randbelow(s, 45)
    return _swap(d_row, h_row, PAIR_X[k], PAIR_Y[k])


@njit(inline="always")
def _is_solved(d_row, res):
    return res == 0 and d_row[_D] != 0 and d_row[_G] != 0 and d_row[_R] != 0


@njit(inline="always")
def _cost_of(d_row, res):
    if d_row[_D] == 0 or d_row[_G] == 0 or d_row[_R] == 0:
        return SENTINEL
    if res < 0:
        return -res
    return res


@njit(inline="always")
def _init_group(s, digits, holder, res):
    m = digits.shape[0]
    for a in range(m):
        for i in range(10):
            digits[a, i] = i
        for i in range(9, 0, -1):
            j = _pick(s, i + 1)
            tmp = digits[a, i]
            digits[a, i] = digits[a, j]
            digits[a, j] = tmp
        total = np.int64(0)
        for i in range(10):
            holder[a, digits[a, i]] = i
            total += COEF_ARR[i] * digits[a, i]
        res[a] = total


@njit(inline="always")
def _any_solved(digits, res):
    for a in range(digits.shape[0]):
        if _is_solved(digits[a], res[a]):
            return True
    return False


# ---------------------------------------------------------------------------
# Independent search
# ---------------------------------------------------------------------------


@njit(cache=True, nogil=True)
def run_independent(master_seed, run_index, m, n_max, digits, holder, res):
    s = _make_stream(master_seed, run_index)
    _init_group(s, digits, holder, res)
    if _any_solved(digits, res):
        return np.int64(0), True
    n = np.int64(0)
    while n < n_max:
        t = _pick(s, m)
        res[t] += _elementary_move(s, digits[t], holder[t])
        n += 1
        if _is_solved(digits[t], res[t]):
            return n, True
    return n, False


# ---------------------------------------------------------------------------
# Imitative search
# ---------------------------------------------------------------------------


@njit(cache=True, nogil=True)
def run_imitative(master_seed, run_index, m, p, n_max, digits, holder, res, costs):
    s = _make_stream(master_seed, run_index)
    _init_group(s, digits, holder, res)
    for a in range(m):
        costs[a] = _cost_of(digits[a], res[a])
    dis = np.empty(10, dtype=np.int64)
    if _any_solved(digits, res):
        return np.int64(0), True
    n = np.int64(0)
    while n < n_max:
        t = _pick(s, m)
        imitating = False
        if p > 0.0 and _rand01(s) < p:
            imitating = True
        if imitating:
            # Lowest cached cost wins; ties broken uniformly at random.
            best = costs[0]
            ties = np.int64(1)
            for j in range(1, m):
                c = costs[j]
                if c < best:
                    best = c
                    ties = 1
                elif c == best:
                    ties += 1
            k = _pick(s, ties)
            model = np.int64(0)
            seen = np.int64(-1)
            for j in range(m):
                if costs[j] == best:
                    seen += 1
                    if seen == k:
                        model = j
                        break
            identical = True
            for i in range(10):
                if digits[t, i] != digits[model, i]:
                    identical = False
                    break
            if identical:
                res[t] += _elementary_move(s, digits[t], holder[t])
            else:
                nd = np.int64(0)
                for i in range(10):
                    if digits[t, i] != digits[model, i]:
                        dis[nd] = i
                        nd += 1
                x = dis[_pick(s, nd)]
                y = holder[t, digits[model, x]]
                res[t] += _swap(digits[t], holder[t], x, y)
        else:
            res[t] += _elementary_move(s, digits[t], holder[t])
        costs[t] = _cost_of(digits[t], res[t])
        n += 1
        if _is_solved(digits[t], res[t]):
            return n, True
    return n, False


# ---------------------------------------------------------------------------
# Blackboard search
# ---------------------------------------------------------------------------


def catalog_tables(cat: HintCatalog):
    """Flat array form of the hint catalog for the kernels."""
    n = len(cat)
    hint_len = np.zeros(n, dtype=np.int64)
    hint_letters = np.zeros((n, 3), dtype=np.int64)
    hint_digits = np.zeros((n, 3), dtype=np.int64)
    hint_correct = np.zeros(n, dtype=np.uint8)
    lookup = np.full((6, 10, 10, 10), -1, dtype=np.int64)
    for i, h in enumerate(cat.hints):
        hint_len[i] = len(h.pairs)
        for j, (x, d) in enumerate(h.pairs):
            hint_letters[i, j] = LETTER_INDEX[x]
            hint_digits[i, j] = d
        hint_correct[i] = 1 if cat.correct_flags[i] else 0
        t = h.digit_tuple
        t3 = t[2] if len(t) == 3 else 0
        lookup[h.column, t[0], t[1], t3] = i
    col_nletters = np.zeros(6, dtype=np.int64)
    col_letters = np.zeros((6, 3), dtype=np.int64)
    for c in range(6):
        letters = column_letters(c)
        col_nletters[c] = len(letters)
        for j, x in enumerate(letters):
            col_letters[c, j] = LETTER_INDEX[x]
    return (hint_len, hint_letters, hint_digits, hint_correct, lookup,
            col_nletters, col_letters)


@njit(inline="always")
def _extract(d_row, lookup, col_nletters, col_letters, exhibited):
    """Catalog position of the exhibited hint per column, -1 when none."""
    for c in range(6):
        t1 = d_row[col_letters[c, 0]]
        t2 = d_row[col_letters[c, 1]]
        if col_nletters[c] == 3:
            t3 = d_row[col_letters[c, 2]]
        else:
            t3 = 0
        exhibited[c] = lookup[c, t1, t2, t3]


@njit(inline="always")
def _post(s, board, on_board, bsize, capacity, exhibited, agent_mask, novel):
    """Pick-and-replace posting; returns the new board size."""
    n_novel = np.int64(0)
    for c in range(6):
        pos = exhibited[c]
        if pos >= 0 and on_board[pos] == 0:
            novel[n_novel] = pos
            n_novel += 1
    if n_novel == 0:
        return bsize
    chosen = novel[_pick(s, n_novel)]
    if bsize < capacity:
        board[bsize] = chosen
        on_board[chosen] = 1
        return bsize + 1
    for c in range(6):
        if exhibited[c] >= 0:
            agent_mask[exhibited[c]] = 1
    n_diff = np.int64(0)
    for i in range(bsize):
        if agent_mask[board[i]] == 0:
            n_diff += 1
    if n_diff > 0:
        r = _pick(s, n_diff)
        seen = np.int64(-1)
        for i in range(bsize):
            if agent_mask[board[i]] == 0:
                seen += 1
                if seen == r:
                    on_board[board[i]] = 0
                    board[i] = chosen
                    on_board[chosen] = 1
                    break
    for c in range(6):
        if exhibited[c] >= 0:
            agent_mask[exhibited[c]] = 0
    return bsize


@njit(inline="always")
def _board_violation(board, on_board, bsize, capacity):
    """0 when the board invariants hold, an error code otherwise."""
    if bsize > capacity:
        return np.int64(1)
    marked = np.int64(0)
    for pos in range(351):
        if on_board[pos] != 0:
            marked += 1
    if marked != bsize:
        return np.int64(2)
    for i in range(bsize):
        if board[i] < 0 or board[i] >= 351 or on_board[board[i]] == 0:
            return np.int64(3)
        for j in range(i + 1, bsize):
            if board[i] == board[j]:
                return np.int64(4)
    return np.int64(0)


@njit(cache=True, nogil=True)
def run_blackboard(master_seed, run_index, m, capacity, n_max,
                   digits, holder, res, board, on_board, agent_mask,
                   hint_len, hint_letters, hint_digits, hint_correct, lookup,
                   col_nletters, col_letters, post_enabled, check_board):
    s = _make_stream(master_seed, run_index)
    _init_group(s, digits, holder, res)
    exhibited = np.empty(6, dtype=np.int64)
    novel = np.empty(6, dtype=np.int64)
    bsize = np.int64(0)
    if post_enabled:
        # All agents post once at start, in a uniformly shuffled order.
        order = np.empty(m, dtype=np.int64)
        for i in range(m):
            order[i] = i
        for i in range(m - 1, 0, -1):
            j = _pick(s, i + 1)
            tmp = order[i]
            order[i] = order[j]
            order[j] = tmp
        for oi in range(m):
            a = order[oi]
            _extract(digits[a], lookup, col_nletters, col_letters, exhibited)
            bsize = _post(s, board, on_board, bsize, capacity, exhibited, agent_mask, novel)
        if check_board:
            code = _board_violation(board, on_board, bsize, capacity)
            if code != 0:
                return np.int64(0), False, np.int64(0), np.int64(0), bsize, code
    selections = np.int64(0)
    corrects = np.int64(0)
    if _any_solved(digits, res):
        return np.int64(0), True, selections, corrects, bsize, np.int64(0)
    n = np.int64(0)
    while n < n_max:
        t = _pick(s, m)
        if bsize == 0:
            res[t] += _elementary_move(s, digits[t], holder[t])
        else:
            hpos = board[_pick(s, bsize)]
            selections += 1
            if hint_correct[hpos] != 0:
                corrects += 1
            agrees = True
            for i in range(hint_len[hpos]):
                if digits[t, hint_letters[hpos, i]] != hint_digits[hpos, i]:
                    agrees = False
                    break
            if agrees:
                res[t] += _elementary_move(s, digits[t], holder[t])
            else:
                for i in range(hint_len[hpos]):
                    x = hint_letters[hpos, i]
                    d = hint_digits[hpos, i]
                    if digits[t, x] != d:
                        res[t] += _swap(digits[t], holder[t], x, holder[t, d])
        if post_enabled:
            _extract(digits[t], lookup, col_nletters, col_letters, exhibited)
            bsize = _post(s, board, on_board, bsize, capacity, exhibited, agent_mask, novel)
            if check_board:
                code = _board_violation(board, on_board, bsize, capacity)
                if code != 0:
                    return n, False, selections, corrects, bsize, code
        n += 1
        if _is_solved(digits[t], res[t]):
            return n, True, selections, corrects, bsize, np.int64(0)
    return n, False, selections, corrects, bsize, np.int64(0)


@njit(cache=True, nogil=True)
def run_null_board(master_seed, run_index, m, capacity, n_max,
                   digits, holder, res, board, pool,
                   hint_len, hint_letters, hint_digits, hint_correct):
    """Blackboard dynamics against a frozen random board (no posting)."""
    s = _make_stream(master_seed, run_index)
    _init_group(s, digits, holder, res)
    for i in range(351):
        pool[i] = i
    for i in range(capacity):
        j = i + _pick(s, 351 - i)
        tmp = pool[i]
        pool[i] = pool[j]
        pool[j] = tmp
        board[i] = pool[i]
    selections = np.int64(0)
    corrects = np.int64(0)
    if _any_solved(digits, res):
        return np.int64(0), True, selections, corrects
    n = np.int64(0)
    while n < n_max:
        t = _pick(s, m)
        hpos = board[_pick(s, capacity)]
        selections += 1
        if hint_correct[hpos] != 0:
            corrects += 1
        agrees = True
        for i in range(hint_len[hpos]):
            if digits[t, hint_letters[hpos, i]] != hint_digits[hpos, i]:
                agrees = False
                break
        if agrees:
            res[t] += _elementary_move(s, digits[t], holder[t])
        else:
            for i in range(hint_len[hpos]):
                x = hint_letters[hpos, i]
                d = hint_digits[hpos, i]
                if digits[t, x] != d:
                    res[t] += _swap(digits[t], holder[t], x, holder[t, d])
        n += 1
        if _is_solved(digits[t], res[t]):
            return n, True, selections, corrects
    return n, False, selections, corrects


# ---------------------------------------------------------------------------
# Exhaustive landscape scan
# ---------------------------------------------------------------------------


@njit(inline="always")
def _unrank(index, out):
    rem = index
    avail = np.empty(10, dtype=np.int64)
    for i in range(10):
        avail[i] = i
    size = np.int64(10)
    for i in range(10):
        f = FACTORIALS[9 - i]
        k = rem // f
        rem -= k * f
        out[i] = avail[k]
        for j in range(k, size - 1):
            avail[j] = avail[j + 1]
        size -= 1


@njit(inline="always")
def _rank(d):
    index = np.int64(0)
    for i in range(10):
        smaller = np.int64(0)
        for j in range(i + 1, 10):
            if d[j] < d[i]:
                smaller += 1
        index += smaller * FACTORIALS[9 - i]
    return index


@njit(cache=True, parallel=True, nogil=True)
def cost_table():
    """Cost of every assignment, indexed by permutation rank."""
    out = np.empty(N_STATES, dtype=np.uint32)
    for idx in prange(N_STATES):
        d = np.empty(10, dtype=np.int64)
        _unrank(idx, d)
        if d[_D] == 0 or d[_G] == 0 or d[_R] == 0:
            out[idx] = np.uint32(SENTINEL)
        else:
            total = np.int64(0)
            for i in range(10):
                total += COEF_ARR[i] * d[i]
            if total < 0:
                total = -total
            out[idx] = np.uint32(total)
    return out


@njit(cache=True, parallel=True, nogil=True)
def minima_mask(costs):
    """1 where an assignment beats all 45 neighbors strictly."""
    out = np.zeros(N_STATES, dtype=np.uint8)
    for idx in prange(N_STATES):
        c = costs[idx]
        d = np.empty(10, dtype=np.int64)
        _unrank(idx, d)
        ok = True
        for k in range(45):
            x = PAIR_X[k]
            y = PAIR_Y[k]
            tmp = d[x]
            d[x] = d[y]
            d[y] = tmp
            nb = _rank(d)
            tmp = d[x]
            d[x] = d[y]
            d[y] = tmp
            if costs[nb] <= c:
                ok = False
                break
        if ok:
            out[idx] = 1
    return out
