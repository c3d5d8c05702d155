"""Point sets E in F_q^d: dense indicators, .fset serialization, linear maps.

The .fset text format (used by the CLI and by campaign replay files):

    line 1:            q d
    every other line:  d space-separated integers in [0, q)

Blank lines are ignored.  Duplicate points are rejected.  The writer emits
points in ascending mixed-radix order, so output is canonical byte for byte.
"""

from __future__ import annotations

import io
import os
from typing import Iterable, Sequence

import numpy as np

from . import grid
from .errors import FsetParseError, SizeCapError
from .field import PrimeField
from .spectral import DEFAULT_SIZE_CAP, GridFunction, Spectrum, check_size_cap, forward_transform


class PointSet:
    """A subset E of F_q^d stored as a dense bit indicator.

    Treat instances as immutable: operations return new sets.  The Fourier
    spectrum of the indicator is computed lazily and cached, so sweeps that
    reuse it (incidence counts across all slopes) pay for one transform.
    """

    def __init__(self, field: PrimeField, dim: int, mask: np.ndarray, size_cap: int = DEFAULT_SIZE_CAP):
        n = check_size_cap(field.q, dim, size_cap)
        mask = np.asarray(mask, dtype=bool)
        if mask.shape != (n,):
            raise ValueError(f"indicator must have shape ({n},), got {mask.shape}")
        self.field = field
        self.dim = dim
        self.mask = mask
        self.size_cap = size_cap
        self._indices: np.ndarray | None = None
        self._spectrum: Spectrum | None = None
        self._spectrum_power: np.ndarray | None = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_indices(cls, q: int, dim: int, indices: Iterable[int], size_cap: int = DEFAULT_SIZE_CAP) -> "PointSet":
        field = PrimeField(q)
        n = check_size_cap(q, dim, size_cap)
        mask = np.zeros(n, dtype=bool)
        idx = np.asarray(list(indices), dtype=np.int64)
        if idx.size:
            if idx.min() < 0 or idx.max() >= n:
                raise ValueError("point index out of range")
            if len(np.unique(idx)) != len(idx):
                raise ValueError("duplicate points")
            mask[idx] = True
        return cls(field, dim, mask, size_cap)

    @classmethod
    def from_points(cls, q: int, dim: int, points: Iterable[Sequence[int]], size_cap: int = DEFAULT_SIZE_CAP) -> "PointSet":
        pts = list(points)
        for p in pts:
            if len(p) != dim:
                raise ValueError(f"point {tuple(p)} does not have {dim} coordinates")
            if any(not (0 <= int(c) < q) for c in p):
                raise ValueError(f"point {tuple(p)} has coordinates outside [0, {q})")
        return cls.from_indices(q, dim, (grid.encode(p, q) for p in pts), size_cap)

    @classmethod
    def from_coords(cls, q: int, dim: int, coords: np.ndarray, size_cap: int = DEFAULT_SIZE_CAP) -> "PointSet":
        coords = np.asarray(coords, dtype=np.int64)
        if coords.size == 0:
            return cls.from_indices(q, dim, [], size_cap)
        return cls.from_indices(q, dim, grid.encode_coords(coords, q), size_cap)

    @classmethod
    def empty(cls, q: int, dim: int, size_cap: int = DEFAULT_SIZE_CAP) -> "PointSet":
        return cls.from_indices(q, dim, [], size_cap)

    @classmethod
    def full(cls, q: int, dim: int, size_cap: int = DEFAULT_SIZE_CAP) -> "PointSet":
        field = PrimeField(q)
        n = check_size_cap(q, dim, size_cap)
        return cls(field, dim, np.ones(n, dtype=bool), size_cap)

    # -- basic queries -----------------------------------------------------

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def cardinality(self) -> int:
        return int(self.mask.sum())

    def indices(self) -> np.ndarray:
        if self._indices is None:
            self._indices = np.flatnonzero(self.mask)
        return self._indices

    def coords(self) -> np.ndarray:
        """Member points as an (|E|, d) array, ascending index order."""
        return grid.decode_indices(self.indices(), self.q, self.dim)

    def points(self) -> list[tuple[int, ...]]:
        return [tuple(int(c) for c in row) for row in self.coords()]

    def contains(self, point: Sequence[int]) -> bool:
        return bool(self.mask[grid.encode(point, self.q)])

    def __len__(self) -> int:
        return self.cardinality

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, PointSet)
            and other.q == self.q
            and other.dim == self.dim
            and bool(np.array_equal(other.mask, self.mask))
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"PointSet(q={self.q}, d={self.dim}, |E|={self.cardinality})"

    # -- derived objects ---------------------------------------------------

    def translate(self, shift: Sequence[int]) -> "PointSet":
        if len(shift) != self.dim:
            raise ValueError(f"shift must have {self.dim} coordinates")
        coords = (self.coords() + np.asarray(shift, dtype=np.int64)) % self.q
        return PointSet.from_coords(self.q, self.dim, coords, self.size_cap)

    def indicator(self) -> GridFunction:
        return GridFunction(self.field, self.dim, self.mask.astype(np.complex128), self.size_cap)

    def spectrum(self) -> Spectrum:
        """Fourier coefficients of the indicator, cached after the first call."""
        if self._spectrum is None:
            self._spectrum = forward_transform(self.indicator())
        return self._spectrum

    def spectrum_power(self) -> np.ndarray:
        """|Ehat(m)|^2 for all m, cached; read-only."""
        if self._spectrum_power is None:
            power = np.abs(self.spectrum().values) ** 2
            power.setflags(write=False)
            self._spectrum_power = power
        return self._spectrum_power


# -- linear maps over F_q --------------------------------------------------


def matrix_rank_mod(matrix: np.ndarray, q: int) -> int:
    """Rank of an integer matrix over F_q by exact Gaussian elimination."""
    field = PrimeField(q)
    m = [[int(v) % q for v in row] for row in np.asarray(matrix)]
    rows, cols = len(m), len(m[0]) if m else 0
    rank = 0
    for col in range(cols):
        pivot = next((r for r in range(rank, rows) if m[r][col] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = field.inv(m[rank][col])
        m[rank] = [(v * inv) % q for v in m[rank]]
        for r in range(rows):
            if r != rank and m[r][col] != 0:
                factor = m[r][col]
                m[r] = [(a - factor * b) % q for a, b in zip(m[r], m[rank])]
        rank += 1
        if rank == rows:
            break
    return rank


def apply_linear_map(E: PointSet, matrix: Sequence[Sequence[int]]) -> PointSet:
    """Image {Ax : x in E} under an invertible d x d matrix over F_q.

    Realizes a change of coordinates, so statements about coordinate
    subspaces transfer to arbitrary subspaces.  Raises ValueError if the
    matrix is singular over F_q.
    """
    A = np.asarray(matrix, dtype=np.int64) % E.q
    if A.shape != (E.dim, E.dim):
        raise ValueError(f"matrix must be {E.dim}x{E.dim}, got {A.shape}")
    if matrix_rank_mod(A, E.q) != E.dim:
        raise ValueError(f"matrix is singular over F_{E.q}")
    coords = (E.coords() @ A.T) % E.q
    return PointSet.from_coords(E.q, E.dim, coords, E.size_cap)


# -- .fset serialization ---------------------------------------------------


def format_fset(E: PointSet) -> str:
    """Canonical .fset text: header, then points ascending by grid index."""
    lines = [f"{E.q} {E.dim}"]
    for row in E.coords():
        lines.append(" ".join(str(int(c)) for c in row))
    return "\n".join(lines) + "\n"


def write_fset(E: PointSet, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(format_fset(E))


def parse_fset(text: str, size_cap: int = DEFAULT_SIZE_CAP) -> PointSet:
    lines = text.splitlines()
    header_line = None
    q = dim = 0
    points: list[tuple[int, ...]] = []
    seen: set[tuple[int, ...]] = set()
    for lineno, raw in enumerate(lines, start=1):
        stripped = raw.strip()
        if not stripped:
            continue
        fields = stripped.split()
        if header_line is None:
            if len(fields) != 2:
                raise FsetParseError("header must be 'q d'", lineno)
            try:
                q, dim = int(fields[0]), int(fields[1])
            except ValueError:
                raise FsetParseError("header must contain two integers", lineno) from None
            if dim < 1:
                raise FsetParseError(f"dimension must be >= 1, got {dim}", lineno)
            try:
                PrimeField(q)
            except ValueError as exc:
                raise FsetParseError(str(exc), lineno) from None
            try:
                check_size_cap(q, dim, size_cap)
            except SizeCapError as exc:
                raise FsetParseError(str(exc), lineno) from None
            header_line = lineno
            continue
        if len(fields) != dim:
            raise FsetParseError(f"expected {dim} coordinates, got {len(fields)}", lineno)
        try:
            point = tuple(int(f) for f in fields)
        except ValueError:
            raise FsetParseError("coordinates must be integers", lineno) from None
        if any(not (0 <= c < q) for c in point):
            raise FsetParseError(f"coordinate outside [0, {q})", lineno)
        if point in seen:
            raise FsetParseError(f"duplicate point {point}", lineno)
        seen.add(point)
        points.append(point)
    if header_line is None:
        raise FsetParseError("empty input, expected a 'q d' header")
    return PointSet.from_points(q, dim, points, size_cap)


def read_fset(path: str | os.PathLike, size_cap: int = DEFAULT_SIZE_CAP) -> PointSet:
    with io.open(path, "r", encoding="ascii") as fh:
        return parse_fset(fh.read(), size_cap)
