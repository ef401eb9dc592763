"""State space of the DONALD + GERALD = ROBERT puzzle.

An assignment maps the ten letters {A,B,D,E,G,L,N,O,R,T} bijectively onto
the digits 0-9; there are 10! of them and exactly one solves the puzzle.
The cost of an assignment is |ROBERT - (DONALD + GERALD)|. Assignments
that give a leading letter (D, G or R) the digit 0 stay in the state space
but carry a fixed large sentinel cost instead of being excluded. The move
operator swaps the digits of two letters, which gives every assignment
exactly 45 neighbors.
"""

from __future__ import annotations

from itertools import combinations
from typing import Sequence

LETTERS = "ABDEGLNORT"
LETTER_INDEX = {ch: i for i, ch in enumerate(LETTERS)}

ADDEND_WORDS = ("DONALD", "GERALD")
RESULT_WORD = "ROBERT"
LEADING_LETTERS = "DGR"

SENTINEL_COST = 10**8

SOLUTION_DIGITS = (4, 3, 5, 9, 1, 8, 6, 2, 7, 0)

# The 45 unordered letter pairs, lexicographic by letter index.
LETTER_PAIRS: tuple[tuple[int, int], ...] = tuple(combinations(range(10), 2))


def _signed_coefficients() -> tuple[int, ...]:
    coeffs = [0] * 10

    def add(word: str, sign: int) -> None:
        for pos, ch in enumerate(word):
            coeffs[LETTER_INDEX[ch]] += sign * 10 ** (len(word) - 1 - pos)

    add(RESULT_WORD, 1)
    for word in ADDEND_WORDS:
        add(word, -1)
    return tuple(coeffs)


# Per-letter weight of the signed residual ROBERT - (DONALD + GERALD).
# The compiled kernels track that residual incrementally across swaps.
COEFFS = _signed_coefficients()


class Assignment:
    """A bijective letter-to-digit map.

    Immutable once built. Both directions are stored: ``digits[i]`` is the
    digit of the i-th letter of ``LETTERS``, and ``holder[d]`` is the index
    of the letter currently holding digit ``d``, so "who has digit d" is
    answered in O(1).
    """

    __slots__ = ("digits", "holder")

    def __init__(self, digits: Sequence[int]):
        digits = tuple(digits)
        if len(digits) != 10:
            raise ValueError(f"expected 10 digits, got {len(digits)}")
        holder = [-1] * 10
        for i, d in enumerate(digits):
            if not isinstance(d, int) or not 0 <= d <= 9 or holder[d] != -1:
                raise ValueError(f"digits must be a permutation of 0..9, got {digits!r}")
            holder[d] = i
        self.digits = digits
        self.holder = tuple(holder)

    @classmethod
    def _from_parts(cls, digits: tuple[int, ...], holder: tuple[int, ...]) -> "Assignment":
        a = object.__new__(cls)
        a.digits = digits
        a.holder = holder
        return a

    def digit_of(self, letter: str) -> int:
        return self.digits[LETTER_INDEX[letter]]

    def letter_of(self, digit: int) -> str:
        return LETTERS[self.holder[digit]]

    def swap_indices(self, i: int, j: int) -> "Assignment":
        """New assignment with the digits at letter indices i and j exchanged."""
        d = list(self.digits)
        h = list(self.holder)
        di, dj = d[i], d[j]
        d[i], d[j] = dj, di
        h[di], h[dj] = j, i
        return Assignment._from_parts(tuple(d), tuple(h))

    def serialize(self) -> str:
        """Ten digits in canonical letter order, e.g. '4359186270'."""
        return "".join(str(d) for d in self.digits)

    @classmethod
    def deserialize(cls, text: str) -> "Assignment":
        return cls([int(ch) for ch in text])

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Assignment) and self.digits == other.digits

    def __hash__(self) -> int:
        return hash(self.digits)

    def __repr__(self) -> str:
        body = ", ".join(f"{ch}={d}" for ch, d in zip(LETTERS, self.digits))
        return f"Assignment({body})"


SOLUTION = Assignment(SOLUTION_DIGITS)


def assignment_from_digits(digits: Sequence[int]) -> Assignment:
    """Assignment mapping the k-th letter of LETTERS to digits[k]."""
    return Assignment(digits)


def word_value(a: Assignment, word: str) -> int:
    """The base-10 integer spelled by ``word``, most significant letter first."""
    value = 0
    for ch in word:
        value = value * 10 + a.digits[LETTER_INDEX[ch]]
    return value


def cost(a: Assignment) -> int:
    """|ROBERT - (DONALD + GERALD)|, or the sentinel when D, G or R holds 0."""
    for ch in LEADING_LETTERS:
        if a.digits[LETTER_INDEX[ch]] == 0:
            return SENTINEL_COST
    total = sum(word_value(a, w) for w in ADDEND_WORDS)
    return abs(word_value(a, RESULT_WORD) - total)


def apply_swap(a: Assignment, x: str, y: str) -> Assignment:
    """Exchange the digits of letters x and y (x != y)."""
    if x == y:
        raise ValueError(f"swap needs two different letters, got {x!r} twice")
    return a.swap_indices(LETTER_INDEX[x], LETTER_INDEX[y])


def random_elementary_move(a: Assignment, rng) -> Assignment:
    """Swap the digits of a uniformly chosen letter pair (45 possibilities)."""
    i, j = LETTER_PAIRS[rng.randbelow(45)]
    return a.swap_indices(i, j)


def neighbors(a: Assignment) -> list[Assignment]:
    """The 45 assignments one swap away, in canonical pair order."""
    return [a.swap_indices(i, j) for i, j in LETTER_PAIRS]


def is_solution(a: Assignment) -> bool:
    return cost(a) == 0


def random_assignment(rng) -> Assignment:
    """Uniform draw from the 10! assignments (Fisher-Yates)."""
    digits = list(range(10))
    rng.shuffle(digits)
    return Assignment(digits)
