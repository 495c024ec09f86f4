"""Platform-stable seeded sampling of distinct rational root vectors."""

from __future__ import annotations

from fractions import Fraction
from typing import List

MASK64 = (1 << 64) - 1


def mix64(z: int) -> int:
    """SplitMix64 finalizer."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


class SplitMix64:
    """SplitMix64 generator (Steele, Lea & Flood); identical output on every platform."""

    GAMMA = 0x9E3779B97F4A7C15

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + self.GAMMA) & MASK64
        return mix64(self.state)

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in ``[lo, hi]`` by rejection (no modulo bias)."""
        span = hi - lo + 1
        if span <= 0:
            raise ValueError("empty range")
        limit = (1 << 64) - ((1 << 64) % span)
        while True:
            u = self.next_u64()
            if u < limit:
                return lo + u % span


def derive_seed(seed: int, index: int) -> int:
    """Sub-seed for trial ``index``; independent of the order trials run in."""
    return mix64((seed & MASK64) ^ mix64(index + 1))


def sample_distinct_roots(n: int, seed: int, bound: int, max_draws: int | None = None) -> List[Fraction]:
    """``n`` pairwise-distinct rationals with |numerator| <= bound, 1 <= denominator <= bound."""
    if n < 1:
        raise ValueError("need at least one root")
    if bound < 1 or bound < n:
        raise ValueError(f"bound {bound} too small for {n} distinct roots")
    if max_draws is None:
        max_draws = 1000 * n
    rng = SplitMix64(seed)
    out: List[Fraction] = []
    seen = set()
    draws = 0
    while len(out) < n:
        if draws >= max_draws:
            raise ValueError(f"could not draw {n} distinct roots within {max_draws} draws")
        draws += 1
        value = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        if value not in seen:
            seen.add(value)
            out.append(value)
    return out
