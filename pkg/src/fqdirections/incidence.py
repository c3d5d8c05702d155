"""Slope-incidence counts and their spectral decomposition.

For a slope tuple (t_1, ..., t_k), 1 <= k <= d-1, the incidence count of E is
the number of ordered pairs of distinct points whose difference z satisfies
z_{i+1} = t_i * z_1 for every i.  It splits as

    nu(t) = |E|(|E|-1)/q^k  -  |E|(q^k-1)/q^k  +  R(t)

where the remainder is a sum of squared Fourier coefficients along a line of
frequencies and is therefore nonnegative:

    R(t) = q^(2d-k) * sum_{s != 0} |Ehat(s.t, -s_1, ..., -s_k, 0, ..., 0)|^2.

Two independent routes are provided: `nu_brute` counts pairs directly and
`nu_spectral` assembles the decomposition from the cached spectrum, rounding
to the nearest integer with a guard band.  They must agree exactly.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

import numpy as np

from . import grid
from .errors import NumericalInconsistencyError
from .pointset import PointSet

#: Maximum allowed distance between the assembled spectral value and the
#: nearest integer; anything larger signals a transform bug.
ROUNDING_GUARD = 1e-4


@dataclass(frozen=True)
class IncidenceReport:
    """One incidence count with its three-term decomposition.

    main_term and diagonal_term are exact rationals (denominator q^k) so the
    decomposition does not suffer float cancellation; remainder is the only
    floating entry.  nu_nondegenerate additionally requires x_1 != y_1, the
    witnesses that certify a genuine slope-pattern direction.
    """

    slope: tuple[int, ...]
    nu: int
    nu_nondegenerate: int
    main_term: Fraction
    diagonal_term: Fraction
    remainder: float


def all_slopes(q: int, k: int) -> list[tuple[int, ...]]:
    """All q^k slope tuples in ascending mixed-radix order."""
    return [tuple(t) for t in product(range(q), repeat=k)]


def _check_k(E: PointSet, k: int) -> None:
    if not 1 <= k <= E.dim - 1:
        raise ValueError(f"slope length must be in [1, {E.dim - 1}], got {k}")


def _terms(size: int, q: int, k: int) -> tuple[Fraction, Fraction]:
    qk = q**k
    return Fraction(size * (size - 1), qk), Fraction(size * (qk - 1), qk)


def pair_differences(E: PointSet) -> np.ndarray:
    """Differences x - y over all ordered pairs of distinct points, one row each."""
    coords = E.coords()
    n = len(coords)
    if n < 2:
        return np.empty((0, E.dim), dtype=np.int64)
    diffs = (coords[:, None, :] - coords[None, :, :]).reshape(-1, E.dim) % E.q
    return diffs[np.any(diffs != 0, axis=1)]


def degenerate_pair_count(E: PointSet, k: int) -> int:
    """Ordered pairs of distinct points agreeing on coordinates 1..k+1.

    These satisfy every slope constraint vacuously (their difference vanishes
    in the constrained coordinates), so they inflate nu for every t when
    k < d-1.  For k = d-1 the count is zero: agreement everywhere forces x = y.
    """
    _check_k(E, k)
    groups = Counter(tuple(int(c) for c in row[: k + 1]) for row in E.coords())
    return sum(c * (c - 1) for c in groups.values())


def nu_brute(E: PointSet, slope: tuple[int, ...], _diffs: np.ndarray | None = None) -> IncidenceReport:
    """Direct pair count; the remainder is back-solved from the decomposition."""
    k = len(slope)
    _check_k(E, k)
    q = E.q
    diffs = pair_differences(E) if _diffs is None else _diffs
    if len(diffs):
        z1 = diffs[:, 0]
        ok = np.ones(len(diffs), dtype=bool)
        for i, t in enumerate(slope):
            ok &= (diffs[:, i + 1] - int(t) * z1) % q == 0
        nu = int(np.count_nonzero(ok))
        nondeg = int(np.count_nonzero(ok & (z1 != 0)))
    else:
        nu = nondeg = 0
    main, diag = _terms(E.cardinality, q, k)
    remainder = float(Fraction(nu) - main + diag)
    return IncidenceReport(tuple(slope), nu, nondeg, main, diag, remainder)


# Frequency bookkeeping reused across slope sweeps, keyed by (q, d, k):
# the nonzero parameter vectors s and the index contribution of the fixed
# coordinates (-s_1, ..., -s_k, 0, ..., 0).
_FREQ_CACHE: dict[tuple[int, int, int], tuple[np.ndarray, np.ndarray]] = {}


def _frequency_tables(q: int, d: int, k: int) -> tuple[np.ndarray, np.ndarray]:
    key = (q, d, k)
    cached = _FREQ_CACHE.get(key)
    if cached is None:
        svecs = grid.decode_indices(np.arange(1, q**k, dtype=np.int64), q, k)
        weights = q ** np.arange(d - 2, d - 2 - k, -1, dtype=np.int64)
        rest = ((-svecs) % q) @ weights
        cached = _FREQ_CACHE[key] = (svecs, rest)
    return cached


def remainder_spectral(E: PointSet, slope: tuple[int, ...]) -> float:
    """R(t) summed over the q^k - 1 nonzero frequency parameters s.

    The frequency probed at s is m = (s.t, -s_1, ..., -s_k, 0, ..., 0) in the
    global mixed-radix layout.  Nonnegative up to float noise.
    """
    k = len(slope)
    _check_k(E, k)
    q, d = E.q, E.dim
    power = E.spectrum_power()
    svecs, rest = _frequency_tables(q, d, k)
    first = (svecs @ np.asarray(slope, dtype=np.int64)) % q
    idx = first * q ** (d - 1) + rest
    return float(q ** (2 * d - k) * power[idx].sum())


def nu_spectral(E: PointSet, slope: tuple[int, ...], _degenerate: int | None = None) -> IncidenceReport:
    """Assemble nu from the decomposition and round to the exact integer.

    Raises NumericalInconsistencyError if the float lands farther than the
    guard band from the nearest integer.
    """
    k = len(slope)
    _check_k(E, k)
    main, diag = _terms(E.cardinality, E.q, k)
    remainder = remainder_spectral(E, slope)
    value = float(main - diag) + remainder
    nu = round(value)
    if abs(value - nu) > ROUNDING_GUARD:
        raise NumericalInconsistencyError(
            f"spectral incidence value {value!r} is {abs(value - nu):.3e} from the "
            f"nearest integer (guard band {ROUNDING_GUARD:g}) at slope {slope}"
        )
    deg = degenerate_pair_count(E, k) if _degenerate is None else _degenerate
    return IncidenceReport(tuple(slope), nu, nu - deg, main, diag, remainder)


@dataclass(frozen=True)
class SlopeOutcome:
    slope: tuple[int, ...]
    nu: int
    nu_nondegenerate: int


@dataclass(frozen=True)
class ThresholdReport:
    """Outcome of sweeping every slope tuple against the positivity threshold.

    Above the threshold (|E| > q^k) the lower bound

        nu(t) >= (|E|(|E|-1) - |E|(q^k-1)) / q^k  >  0

    must hold for every t; witness_failures lists slopes that violate it
    (expected empty).  At or below the threshold, witness_failures lists the
    slopes with nu = 0 instead.
    """

    q: int
    dim: int
    k: int
    set_size: int
    threshold: int
    lower_bound: Fraction
    holds: bool
    witness_failures: tuple[tuple[int, ...], ...]
    outcomes: tuple[SlopeOutcome, ...]

    @property
    def above_threshold(self) -> bool:
        return self.set_size > self.threshold

    @property
    def min_nu(self) -> int:
        return min(o.nu for o in self.outcomes)

    @property
    def slope_pattern_covered(self) -> bool:
        """True when every slope tuple has a witness pair with x_1 != y_1."""
        return all(o.nu_nondegenerate > 0 for o in self.outcomes)


def theorem_main_threshold(E: PointSet, k: int, method: str = "spectral") -> ThresholdReport:
    """Sweep all slope tuples and test the size threshold |E| > q^k."""
    _check_k(E, k)
    if method not in ("spectral", "brute"):
        raise ValueError(f"unknown method {method!r}")
    q = E.q
    size = E.cardinality
    main, diag = _terms(size, q, k)
    lower = main - diag
    outcomes = []
    if method == "spectral":
        deg = degenerate_pair_count(E, k)
        for slope in all_slopes(q, k):
            rep = nu_spectral(E, slope, _degenerate=deg)
            outcomes.append(SlopeOutcome(slope, rep.nu, rep.nu_nondegenerate))
    else:
        diffs = pair_differences(E)
        for slope in all_slopes(q, k):
            rep = nu_brute(E, slope, _diffs=diffs)
            outcomes.append(SlopeOutcome(slope, rep.nu, rep.nu_nondegenerate))
    if size > q**k:
        failures = tuple(o.slope for o in outcomes if Fraction(o.nu) < lower)
    else:
        failures = tuple(o.slope for o in outcomes if o.nu == 0)
    return ThresholdReport(
        q=q,
        dim=E.dim,
        k=k,
        set_size=size,
        threshold=q**k,
        lower_bound=lower,
        holds=not failures,
        witness_failures=failures,
        outcomes=tuple(outcomes),
    )
