"""Directions in F_q^d: the quotient of nonzero vectors by scaling.

Two nonzero vectors point the same way when one is a nonzero scalar multiple
of the other.  The canonical representative of a class scales the first
nonzero coordinate to 1, so representatives with first coordinate 1 read off
as slope tuples (1, t_1, ..., t_{d-1}) directly.

The zero vector belongs to no class: the direction set of E collects
canonical forms of the nonzero differences x - y over x, y in E.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from . import grid
from .field import PrimeField
from .pointset import PointSet

Direction = tuple[int, ...]

#: Pair-block size for the difference sweep; bounds peak memory, not results.
_PAIR_BLOCK = 1 << 21


def canonical_direction(z: Sequence[int], q: int) -> Direction:
    """Canonical representative of the class of a nonzero vector z.

    Scales z by the inverse of its first nonzero coordinate; idempotent, and
    identical for tz over every nonzero t.  Raises ValueError for z = 0.
    """
    vec = [int(c) % q for c in z]
    lead = next((c for c in vec if c != 0), None)
    if lead is None:
        raise ValueError("the zero vector determines no direction")
    scale = pow(lead, q - 2, q)
    return tuple((scale * c) % q for c in vec)


def canonicalize_rows(diffs: np.ndarray, field: PrimeField) -> np.ndarray:
    """Row-wise canonical representatives of an (n, d) array of nonzero vectors."""
    q = field.q
    lead_pos = np.argmax(diffs != 0, axis=1)
    lead = diffs[np.arange(len(diffs)), lead_pos]
    scale = field.inverse_table[lead]
    return (diffs * scale[:, None]) % q


def direction_set(E: PointSet) -> set[Direction]:
    """Directions determined by E: canonical forms of x - y over distinct pairs."""
    coords = E.coords()
    n = len(coords)
    if n < 2:
        return set()
    field = E.field
    q, d = E.q, E.dim
    out: set[Direction] = set()
    block = max(1, _PAIR_BLOCK // max(1, n))
    for start in range(0, n, block):
        chunk = coords[start : start + block]
        diffs = (chunk[:, None, :] - coords[None, :, :]).reshape(-1, d) % q
        diffs = diffs[np.any(diffs != 0, axis=1)]
        if not len(diffs):
            continue
        canon = np.unique(canonicalize_rows(diffs, field), axis=0)
        out.update(tuple(int(c) for c in row) for row in canon)
    return out


def ambient_direction_count(q: int, d: int) -> int:
    """Number of direction classes of F_q^d itself: (q^d - 1) / (q - 1)."""
    PrimeField(q)
    if d < 1:
        raise ValueError(f"dimension must be >= 1, got {d}")
    return (q**d - 1) // (q - 1)


def ambient_directions(q: int, d: int) -> set[Direction]:
    """All canonical representatives in F_q^d."""
    return coordinate_subspace_directions(q, d, d)


def coordinate_subspace_directions(q: int, d: int, n: int) -> set[Direction]:
    """Directions of the n-dimensional coordinate subspace (last d-n coords zero)."""
    field = PrimeField(q)
    if not 1 <= n <= d:
        raise ValueError(f"subspace dimension must be in [1, {d}], got {n}")
    vecs = grid.decode_indices(np.arange(1, q**n, dtype=np.int64), q, n)
    canon = np.unique(canonicalize_rows(vecs, field), axis=0)
    pad = (0,) * (d - n)
    return {tuple(int(c) for c in row) + pad for row in canon}


def sort_directions(dirs: set[Direction], q: int) -> list[Direction]:
    """Deterministic listing: ascending mixed-radix index of the representative."""
    return sorted(dirs, key=lambda rep: grid.encode(rep, q))
