"""Deterministic seeded randomness for reproducible set sampling.

The point samplers must produce identical sets for identical seeds on every
platform, so instead of a platform library RNG the package pins xorshift64*:

    x ^= x >> 12;  x ^= x << 25;  x ^= x >> 27;  output = x * 2685821657736338717

with all arithmetic mod 2^64.  A zero seed is remapped to a fixed nonzero
constant (the all-zero state is a fixed point of the shifts).  Test vectors
live in the README and the test suite.

Bounded draws use a plain modulo reduction; the bias is below bound / 2^64,
irrelevant at desk scale, and keeps the draw count per request fixed.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1
_MULTIPLIER = 2685821657736338717
_ZERO_SEED_REPLACEMENT = 0x9E3779B97F4A7C15


class XorShift64Star:
    """Minimal xorshift64* stream; deterministic in the seed."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        state = seed & _MASK64
        self.state = state if state else _ZERO_SEED_REPLACEMENT

    def next_u64(self) -> int:
        x = self.state
        x ^= x >> 12
        x = (x ^ (x << 25)) & _MASK64
        x ^= x >> 27
        self.state = x
        return (x * _MULTIPLIER) & _MASK64

    def below(self, bound: int) -> int:
        """Uniform-ish draw in [0, bound); bound must be positive."""
        if bound <= 0:
            raise ValueError(f"bound must be positive, got {bound}")
        return self.next_u64() % bound


def mix64(*parts: int) -> int:
    """Fold integers into one 64-bit seed via chained splitmix64 rounds.

    Used to derive independent per-trial seeds from (master seed, cell
    coordinates, trial index) without correlated streams.
    """
    acc = 0
    for part in parts:
        acc = _splitmix64(acc ^ (part & _MASK64))
    return acc


def _splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def sample_without_replacement(total: int, count: int, seed: int) -> list[int]:
    """First `count` entries of a seeded partial Fisher-Yates shuffle of range(total).

    Sparse bookkeeping keeps memory at O(count) even for large totals.
    """
    if count < 0:
        raise ValueError(f"count must be >= 0, got {count}")
    if count > total:
        raise ValueError(f"cannot sample {count} of {total} values without replacement")
    rng = XorShift64Star(seed)
    displaced: dict[int, int] = {}
    out = []
    for i in range(count):
        j = i + rng.below(total - i)
        vi = displaced.get(i, i)
        vj = displaced.get(j, j)
        displaced[j] = vi
        out.append(vj)
    return out
