"""Point-set generator library: random sets, subspaces, paraboloids, embeddings.

Generators are addressable by name from the CLI and from campaign configs,
either via keyword arguments or via a compact spec string such as

    random:q=7,d=2,n=10,seed=42
    coordinate-subspace:q=5,d=3,k=2
    affine-subspace:q=5,d=3,k=1,shift=1-2-0
    paraboloid:q=5,d=2
    subspace-random:q=11,d=4,m=2,n=37,seed=3
    embedded:in=low.fset,d=3

Vector-valued parameters use dashes between coordinates.  All generators are
deterministic in their arguments.
"""

from __future__ import annotations

import numpy as np

from . import grid
from .pointset import PointSet, read_fset
from .rng import sample_without_replacement
from .spectral import DEFAULT_SIZE_CAP, check_size_cap


def gen_random(q: int, d: int, n: int, seed: int) -> PointSet:
    """n points drawn uniformly without replacement, deterministic in seed."""
    total = check_size_cap(q, d, DEFAULT_SIZE_CAP)
    if n > total:
        raise ValueError(f"cannot draw {n} distinct points from a grid of {total}")
    return PointSet.from_indices(q, d, sample_without_replacement(total, n, seed))


def gen_coordinate_subspace(q: int, d: int, k: int) -> PointSet:
    """The k-dimensional coordinate subspace: first k coordinates free, rest zero."""
    if not 0 <= k <= d:
        raise ValueError(f"subspace dimension must be in [0, {d}], got {k}")
    check_size_cap(q, d, DEFAULT_SIZE_CAP)
    if k == 0:
        return PointSet.from_points(q, d, [(0,) * d])
    coords = np.zeros((q**k, d), dtype=np.int64)
    coords[:, :k] = grid.decode_indices(np.arange(q**k, dtype=np.int64), q, k)
    return PointSet.from_coords(q, d, coords)


def gen_affine_subspace(q: int, d: int, k: int, shift: tuple[int, ...]) -> PointSet:
    """A coordinate subspace translated by a fixed shift vector."""
    return gen_coordinate_subspace(q, d, k).translate(shift)


def gen_paraboloid(q: int, d: int) -> PointSet:
    """{(x, x.x) : x in F_q^(d-1)}, the canonical explicit near-random family.

    For d = 2 its nonzero Fourier coefficients all have modulus q^(-3/2),
    square-root cancellation on the nose.
    """
    if d < 2:
        raise ValueError(f"paraboloid needs dimension >= 2, got {d}")
    check_size_cap(q, d, DEFAULT_SIZE_CAP)
    base = grid.decode_indices(np.arange(q ** (d - 1), dtype=np.int64), q, d - 1)
    coords = np.empty((len(base), d), dtype=np.int64)
    coords[:, : d - 1] = base
    coords[:, d - 1] = np.sum(base * base, axis=1) % q
    return PointSet.from_coords(q, d, coords)


def gen_embedded(base: PointSet, d: int) -> PointSet:
    """base lifted into F_q^d by padding trailing zero coordinates."""
    if base.dim >= d:
        raise ValueError(f"embedding target dimension must exceed {base.dim}, got {d}")
    check_size_cap(base.q, d, DEFAULT_SIZE_CAP)
    coords = np.zeros((base.cardinality, d), dtype=np.int64)
    coords[:, : base.dim] = base.coords()
    return PointSet.from_coords(base.q, d, coords)


def gen_subspace_random(q: int, d: int, m: int, n: int, seed: int) -> PointSet:
    """n random points inside the m-dimensional coordinate subspace of F_q^d."""
    if not 1 <= m <= d:
        raise ValueError(f"subspace dimension must be in [1, {d}], got {m}")
    check_size_cap(q, d, DEFAULT_SIZE_CAP)
    total = q**m
    if n > total:
        raise ValueError(f"cannot draw {n} distinct points from a subspace of {total}")
    picks = np.asarray(sample_without_replacement(total, n, seed), dtype=np.int64)
    coords = np.zeros((n, d), dtype=np.int64)
    coords[:, :m] = grid.decode_indices(picks, q, m)
    return PointSet.from_coords(q, d, coords)


GENERATOR_NAMES = (
    "random",
    "coordinate-subspace",
    "affine-subspace",
    "paraboloid",
    "embedded",
    "subspace-random",
)


def _parse_params(blob: str) -> dict[str, str]:
    params: dict[str, str] = {}
    if not blob:
        return params
    for item in blob.split(","):
        if "=" not in item:
            raise ValueError(f"malformed generator parameter {item!r}, expected key=value")
        key, value = item.split("=", 1)
        key = key.strip()
        if key in params:
            raise ValueError(f"duplicate generator parameter {key!r}")
        params[key] = value.strip()
    return params


def _take_int(params: dict[str, str], key: str) -> int:
    if key not in params:
        raise ValueError(f"missing generator parameter {key!r}")
    try:
        return int(params.pop(key))
    except ValueError:
        raise ValueError(f"generator parameter {key!r} must be an integer") from None


def _take_vector(params: dict[str, str], key: str) -> tuple[int, ...]:
    if key not in params:
        raise ValueError(f"missing generator parameter {key!r}")
    raw = params.pop(key)
    try:
        return tuple(int(part) for part in raw.split("-"))
    except ValueError:
        raise ValueError(f"generator parameter {key!r} must be dash-separated integers") from None


def build_set(spec: str) -> PointSet:
    """Build a point set from a compact name:params spec string."""
    name, _, blob = spec.partition(":")
    name = name.strip()
    params = _parse_params(blob)
    if name == "random":
        E = gen_random(_take_int(params, "q"), _take_int(params, "d"), _take_int(params, "n"), _take_int(params, "seed"))
    elif name == "coordinate-subspace":
        E = gen_coordinate_subspace(_take_int(params, "q"), _take_int(params, "d"), _take_int(params, "k"))
    elif name == "affine-subspace":
        E = gen_affine_subspace(
            _take_int(params, "q"), _take_int(params, "d"), _take_int(params, "k"), _take_vector(params, "shift")
        )
    elif name == "paraboloid":
        E = gen_paraboloid(_take_int(params, "q"), _take_int(params, "d"))
    elif name == "subspace-random":
        E = gen_subspace_random(
            _take_int(params, "q"), _take_int(params, "d"), _take_int(params, "m"),
            _take_int(params, "n"), _take_int(params, "seed"),
        )
    elif name == "embedded":
        if "in" not in params:
            raise ValueError("missing generator parameter 'in'")
        base = read_fset(params.pop("in"))
        E = gen_embedded(base, _take_int(params, "d"))
    else:
        raise ValueError(f"unknown generator {name!r}; known: {', '.join(GENERATOR_NAMES)}")
    if params:
        raise ValueError(f"unused generator parameters: {', '.join(sorted(params))}")
    return E
