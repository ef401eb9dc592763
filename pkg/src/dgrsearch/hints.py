"""Column hints: the full catalog, extraction, and assimilation.

A hint fixes the digits of one column's letters together with a carry bit
so that the column adds up modulo 10. The puzzle has six columns; the
catalog holds 351 distinct hints, of which exactly six agree with the
solved puzzle (one per column, with the true carries).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Iterator, Sequence

from .puzzle import LETTER_INDEX, SOLUTION, Assignment

# Addend letters and result letter per column, rightmost column first.
COLUMN_SUMS: tuple[tuple[tuple[str, str], str], ...] = (
    (("D", "D"), "T"),
    (("L", "L"), "R"),
    (("A", "A"), "E"),
    (("N", "R"), "B"),
    (("O", "E"), "O"),
    (("D", "G"), "R"),
)
NUM_COLUMNS = len(COLUMN_SUMS)


def column_letters(column: int) -> tuple[str, ...]:
    """Distinct letters of a column in reading order (addends, then result)."""
    (a1, a2), r = COLUMN_SUMS[column]
    seen: list[str] = []
    for ch in (a1, a2, r):
        if ch not in seen:
            seen.append(ch)
    return tuple(seen)


def _true_carries() -> tuple[int, ...]:
    carries = []
    carry = 0
    for (a1, a2), r in COLUMN_SUMS:
        carries.append(carry)
        total = SOLUTION.digit_of(a1) + SOLUTION.digit_of(a2) + carry
        assert total % 10 == SOLUTION.digit_of(r)
        carry = total // 10
    return tuple(carries)


# Carry entering each column when the solved puzzle is added up.
TRUE_CARRIES = _true_carries()


@dataclass(frozen=True)
class Hint:
    """Digit values for one column's distinct letters, plus the carry bit.

    ``pairs`` is stored in the column's reading order; assimilation applies
    the pairs in exactly this order.
    """

    column: int
    epsilon: int
    pairs: tuple[tuple[str, int], ...]

    @property
    def digit_tuple(self) -> tuple[int, ...]:
        return tuple(d for _, d in self.pairs)

    def agrees_with(self, a: Assignment) -> bool:
        """True when every hint letter already holds its hint digit."""
        return all(a.digits[LETTER_INDEX[x]] == d for x, d in self.pairs)

    def serialize(self) -> str:
        body = ",".join(f"{x}={d}" for x, d in self.pairs)
        return f"col={self.column} eps={self.epsilon} {body}"


class HintCatalog:
    """Every admissible hint, in a fixed deterministic order."""

    def __init__(self, hints: Sequence[Hint], correct_flags: Sequence[bool]):
        self.hints = tuple(hints)
        self.correct_flags = tuple(correct_flags)
        self._position = {h: i for i, h in enumerate(self.hints)}
        # Pair content alone identifies a catalog hint: within one column the
        # two carry values force different result digits, so at most one
        # epsilon fits a given digit tuple.
        self._by_pairs = {(h.column, h.digit_tuple): h for h in self.hints}

    def __len__(self) -> int:
        return len(self.hints)

    def __iter__(self) -> Iterator[Hint]:
        return iter(self.hints)

    def __contains__(self, h: Hint) -> bool:
        return h in self._position

    def position(self, h: Hint) -> int:
        return self._position[h]

    def is_correct(self, h: Hint) -> bool:
        return self.correct_flags[self._position[h]]

    def find(self, column: int, digit_tuple: Sequence[int]) -> Hint | None:
        """The catalog hint with these pair digits, if one exists."""
        return self._by_pairs.get((column, tuple(digit_tuple)))

    def column_counts(self) -> list[int]:
        counts = [0] * NUM_COLUMNS
        for h in self.hints:
            counts[h.column] += 1
        return counts

    def correct_hints(self) -> list[Hint]:
        return [h for h, flag in zip(self.hints, self.correct_flags) if flag]


def _admissible_tuples(column: int, eps: int) -> Iterator[tuple[int, ...]]:
    (a1, a2), r = COLUMN_SUMS[column]
    letters = column_letters(column)
    for digit_tuple in permutations(range(10), len(letters)):
        value = dict(zip(letters, digit_tuple))
        if (value[a1] + value[a2] + eps) % 10 == value[r]:
            yield digit_tuple


def build_catalog() -> HintCatalog:
    """Enumerate every column hint: distinct digits, column sum mod 10.

    Ordering is by column, then carry bit, then digit tuple, so the catalog
    is identical on every run. The rightmost column admits no carry in.
    Hints in the leftmost column that would overflow the six-digit result
    are kept; only the modular column sum is enforced.
    """
    hints: list[Hint] = []
    flags: list[bool] = []
    for column in range(NUM_COLUMNS):
        letters = column_letters(column)
        epsilons = (0,) if column == 0 else (0, 1)
        for eps in epsilons:
            for digit_tuple in _admissible_tuples(column, eps):
                hint = Hint(column, eps, tuple(zip(letters, digit_tuple)))
                hints.append(hint)
                flags.append(hint.agrees_with(SOLUTION) and eps == TRUE_CARRIES[column])
    return HintCatalog(hints, flags)


@lru_cache(maxsize=1)
def catalog() -> HintCatalog:
    """Shared catalog instance (cheap to build, built once)."""
    return build_catalog()


def is_correct(h: Hint, cat: HintCatalog | None = None) -> bool:
    """True when the hint matches the solved puzzle and its true carry."""
    return (cat if cat is not None else catalog()).is_correct(h)


def extract_hints(a: Assignment, cat: HintCatalog) -> list[Hint]:
    """Every catalog hint the assignment exhibits, ordered by column.

    At most one hint per column can match, so the result has at most six
    entries and the column ordering makes it deterministic.
    """
    found = []
    for column in range(NUM_COLUMNS):
        digit_tuple = tuple(a.digits[LETTER_INDEX[x]] for x in column_letters(column))
        hint = cat.find(column, digit_tuple)
        if hint is not None:
            found.append(hint)
    return found


def assimilate_hint(a: Assignment, h: Hint) -> Assignment:
    """Rearrange ``a`` until it exhibits ``h``.

    Each hint letter, in stored pair order, takes its hint digit by swapping
    with the letter currently holding that digit. Hint digits are pairwise
    distinct, so later swaps never disturb a letter fixed earlier; at most
    three swaps happen and the result always exhibits the hint.
    """
    for x, d in h.pairs:
        xi = LETTER_INDEX[x]
        if a.digits[xi] != d:
            a = a.swap_indices(xi, a.holder[d])
    return a
