"""Exact arithmetic in the prime field F_q and the additive character."""

from __future__ import annotations

import numpy as np

#: Largest modulus the toolkit accepts; keeps trial division and the character
#: table cheap, and is far beyond desk-scale experiment sizes anyway.
MAX_MODULUS = 1 << 16


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality test, exact for n <= MAX_MODULUS."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class PrimeField:
    """The prime field F_q.

    Scalars are plain ints in [0, q).  The additive character
    chi(a) = exp(2*pi*i*a/q) is read from a table of the q-th roots of unity
    precomputed at construction, so repeated evaluations are deterministic
    and cheap.  Instances are immutable and safe to share.
    """

    __slots__ = ("q", "roots", "inverse_table")

    def __init__(self, q: int):
        if isinstance(q, bool) or not isinstance(q, int):
            raise TypeError(f"modulus must be an int, got {type(q).__name__}")
        if q > MAX_MODULUS:
            raise ValueError(f"modulus {q} exceeds the supported cap {MAX_MODULUS}")
        if not is_prime(q):
            raise ValueError(f"modulus {q} is not prime")
        self.q = q
        roots = np.exp(2j * np.pi * np.arange(q) / q)
        roots.setflags(write=False)
        self.roots = roots
        inv = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            inv[a] = pow(a, q - 2, q)
        inv.setflags(write=False)
        self.inverse_table = inv

    # -- scalar operations -------------------------------------------------

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.q

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.q

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.q

    def neg(self, a: int) -> int:
        return (-a) % self.q

    def inv(self, a: int) -> int:
        """Multiplicative inverse; a must be nonzero mod q."""
        a %= self.q
        if a == 0:
            raise ZeroDivisionError(f"0 has no inverse in F_{self.q}")
        return int(self.inverse_table[a])

    def character(self, a: int) -> complex:
        """chi(a) = exp(2*pi*i*a/q), a point on the unit circle."""
        return complex(self.roots[a % self.q])

    def elements(self) -> range:
        return range(self.q)

    # -- identity ----------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PrimeField) and other.q == self.q

    def __hash__(self) -> int:
        return hash(("PrimeField", self.q))

    def __repr__(self) -> str:
        return f"PrimeField({self.q})"
