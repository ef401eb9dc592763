"""Seedable, portable random streams.

The generator is PCG32 (64-bit state, 64-bit odd increment). Streams are
derived from a (master seed, run index) pair through splitmix64, so every
run of an experiment owns a private stream and results do not depend on
scheduling or worker count. The compiled kernels mirror this generator
bit for bit; tests assert both sides produce identical draws.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1
_MASK32 = (1 << 32) - 1
_PCG_MULT = 6364136223846793005
_GOLDEN = 0x9E3779B97F4A7C15

RNG_NAME = "pcg32/splitmix64-streams"


def splitmix64(x: int) -> int:
    """One splitmix64 scrambling step (seeding only, not a stream)."""
    x = (x + _GOLDEN) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def derive_stream(master_seed: int, run_index: int) -> tuple[int, int]:
    """Map (master seed, run index) to a PCG32 (initstate, initseq) pair."""
    folded = splitmix64(splitmix64(master_seed & _MASK64) ^ (run_index & _MASK64))
    return splitmix64(folded), splitmix64(folded ^ _GOLDEN)


class Pcg32:
    """PCG32 stream with the helpers the search dynamics need.

    ``pick(n)`` is the workhorse: an unbiased integer in [0, n) that never
    consumes a draw when the choice is forced (n == 1). Every consumer of
    randomness goes through this class so that draw order is a documented
    part of the run semantics.
    """

    __slots__ = ("state", "inc")

    def __init__(self, initstate: int, initseq: int = 0):
        self.state = 0
        self.inc = ((initseq << 1) | 1) & _MASK64
        self.next_u32()
        self.state = (self.state + initstate) & _MASK64
        self.next_u32()

    @classmethod
    def for_run(cls, master_seed: int, run_index: int) -> "Pcg32":
        return cls(*derive_stream(master_seed, run_index))

    def next_u32(self) -> int:
        old = self.state
        self.state = (old * _PCG_MULT + self.inc) & _MASK64
        xorshifted = (((old >> 18) ^ old) >> 27) & _MASK32
        rot = old >> 59
        return ((xorshifted >> rot) | (xorshifted << ((32 - rot) & 31))) & _MASK32

    def random(self) -> float:
        """Uniform float in [0, 1) with 2**-32 resolution."""
        return self.next_u32() * 2.0**-32

    def randbelow(self, n: int) -> int:
        """Unbiased integer in [0, n), Lemire's multiply-with-rejection."""
        x = self.next_u32()
        m = x * n
        low = m & _MASK32
        if low < n:
            threshold = ((1 << 32) - n) % n
            while low < threshold:
                x = self.next_u32()
                m = x * n
                low = m & _MASK32
        return m >> 32

    def pick(self, n: int) -> int:
        return 0 if n == 1 else self.randbelow(n)

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates, descending, using ``pick``."""
        for i in range(len(items) - 1, 0, -1):
            j = self.pick(i + 1)
            items[i], items[j] = items[j], items[i]

    def sample_indices(self, n: int, k: int) -> list[int]:
        """k distinct values from range(n), partial ascending Fisher-Yates."""
        pool = list(range(n))
        for i in range(k):
            j = i + self.pick(n - i)
            pool[i], pool[j] = pool[j], pool[i]
        return pool[:k]
