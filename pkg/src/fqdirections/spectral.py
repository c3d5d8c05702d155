"""Fourier transforms of complex-valued functions on F_q^d.

The forward transform is

    fhat(m) = q^(-d) * sum_x chi(-x . m) f(x)

and by character orthogonality the inverse carries no normalization:

    f(x) = sum_m chi(x . m) fhat(m).

Both are computed axis by axis: d successive length-q one-dimensional
transforms, O(d * q^(d+1)) scalar operations in total.  No fast-transform
algorithm is used; at desk scale none is needed.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dataclass_field

import numpy as np

from .errors import SizeCapError
from .field import PrimeField

#: Default cap on dense table entries (q^d); configurable per grid.
DEFAULT_SIZE_CAP = 1 << 24


def check_size_cap(q: int, dim: int, size_cap: int = DEFAULT_SIZE_CAP) -> int:
    """Return q**dim, or raise SizeCapError if it exceeds the cap."""
    if dim < 1:
        raise ValueError(f"dimension must be >= 1, got {dim}")
    n = q**dim
    if n > size_cap:
        raise SizeCapError(f"grid of {q}^{dim} = {n} entries exceeds the cap {size_cap}")
    return n


@dataclass(eq=False)
class GridFunction:
    """A dense complex-valued function on F_q^d in mixed-radix layout."""

    field: PrimeField
    dim: int
    values: np.ndarray
    size_cap: int = dataclass_field(default=DEFAULT_SIZE_CAP, repr=False)

    def __post_init__(self) -> None:
        n = check_size_cap(self.field.q, self.dim, self.size_cap)
        values = np.asarray(self.values, dtype=np.complex128)
        if values.shape != (n,):
            raise ValueError(
                f"expected a flat table of {self.field.q}^{self.dim} = {n} values, "
                f"got shape {values.shape}"
            )
        self.values = values

    @classmethod
    def zeros(cls, field: PrimeField, dim: int, size_cap: int = DEFAULT_SIZE_CAP) -> "GridFunction":
        n = check_size_cap(field.q, dim, size_cap)
        return cls(field, dim, np.zeros(n, dtype=np.complex128), size_cap)

    def reshaped(self) -> np.ndarray:
        """View of the table as a d-dimensional cube, axis 0 = coordinate 1."""
        return self.values.reshape((self.field.q,) * self.dim)

    def copy(self) -> "GridFunction":
        return type(self)(self.field, self.dim, self.values.copy(), self.size_cap)


class Spectrum(GridFunction):
    """Fourier coefficients fhat(m) for all m, same layout as the source."""


def _transform_last_axis(cube: np.ndarray, field: PrimeField, conjugate: bool) -> np.ndarray:
    """One-dimensional character transform along the last axis.

    out[..., m] = sum_x cube[..., x] * chi(-+ m*x), with the character read
    from the field's root table.  Output rows are produced in blocks so the
    q x q character matrix never exceeds a few MiB even for large q.
    """
    q = field.q
    roots = np.conj(field.roots) if conjugate else field.roots
    xs = np.arange(q)
    out = np.empty_like(cube, dtype=np.complex128)
    step = max(1, (1 << 22) // q)
    for start in range(0, q, step):
        ms = np.arange(start, min(start + step, q))
        block = roots[np.multiply.outer(ms, xs) % q]
        out[..., start : start + len(ms)] = cube @ block.T
    return out


def _axis_by_axis(values: np.ndarray, field: PrimeField, dim: int, conjugate: bool) -> np.ndarray:
    cube = values.reshape((field.q,) * dim)
    # Transform the last axis, rotate it to the front; after dim rounds every
    # axis is transformed exactly once and the original order is restored.
    for _ in range(dim):
        cube = np.moveaxis(_transform_last_axis(cube, field, conjugate), -1, 0)
    return cube.reshape(-1)


def forward_transform(f: GridFunction) -> Spectrum:
    """Fourier transform: fhat(m) = q^(-d) sum_x chi(-x.m) f(x)."""
    vals = _axis_by_axis(f.values, f.field, f.dim, conjugate=True)
    vals *= float(f.field.q) ** (-f.dim)
    return Spectrum(f.field, f.dim, vals, f.size_cap)


def inverse_transform(spec: GridFunction) -> GridFunction:
    """Inverse transform: f(x) = sum_m chi(x.m) fhat(m)."""
    vals = _axis_by_axis(spec.values, spec.field, spec.dim, conjugate=False)
    return GridFunction(spec.field, spec.dim, vals, spec.size_cap)


def plancherel_defect(f: GridFunction) -> float:
    """|sum_m |fhat(m)|^2 - q^(-d) sum_x |f(x)|^2|.

    Exactly zero in exact arithmetic; callers assert it stays below
    1e-9 * max(1, sum_x |f(x)|^2).
    """
    spec = forward_transform(f)
    lhs = float(np.sum(np.abs(spec.values) ** 2))
    rhs = float(np.sum(np.abs(f.values) ** 2)) * float(f.field.q) ** (-f.dim)
    return abs(lhs - rhs)
