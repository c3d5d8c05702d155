"""Verification campaigns over (q, d, k, |E|) grids with deterministic reports.

A campaign is described by a CampaignConfig (JSON-loadable), runs one of
three kinds of sweep, and produces a CampaignResult whose CSV/JSON renderings
are byte-identical for identical configs:

    theorem-main   incidence threshold |E| > q^k, direction coverage
    salem-bounds   direction/difference counts against the flatness bounds
    sharpness      exact direction counts of coordinate subspaces

Two failure severities are kept apart throughout.  Hard failures contradict
an exact statement (the nu lower bound above threshold, full coverage for
k = d-1, the (q-1)-to-1 quotient bound, subspace direction counts) and make
the campaign report not-ok; soft flags mark measured quantities that missed
a configured expectation (ratio floors, mean-direction monotonicity) and
never fail the run on their own.  Every flagged set is recorded in full
.fset form for replay.
"""

from __future__ import annotations

import ast
import csv
import io
import json
import math
import operator
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from pathlib import Path
from typing import Any, Callable, Iterable, Mapping, Sequence

from .directions import ambient_direction_count, coordinate_subspace_directions, direction_set
from .errors import ConfigError
from .field import MAX_MODULUS, is_prime
from .generators import gen_coordinate_subspace, gen_random, gen_subspace_random
from .incidence import theorem_main_threshold
from .pointset import PointSet, format_fset
from .rng import mix64
from .salem import difference_bound_check
from .spectral import DEFAULT_SIZE_CAP, check_size_cap

#: Enumerating all size-n subsets is preferred to sampling up to this count.
EXHAUSTIVE_LIMIT = 10**7

KINDS = ("theorem-main", "salem-bounds", "sharpness")
MODES = ("auto", "random", "exhaustive")
GENERATORS = ("random", "subspace-random")


# -- size expressions ------------------------------------------------------

_SIZE_FUNCS: dict[str, Callable] = {
    "ceil": math.ceil,
    "floor": math.floor,
    "round": round,
    "sqrt": math.sqrt,
    "min": min,
    "max": max,
}

_SIZE_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
    ast.FloorDiv: operator.floordiv,
    ast.Mod: operator.mod,
    ast.Pow: operator.pow,
}


def evaluate_size(expr: int | str, **variables: int | None) -> int:
    """Evaluate a set-size expression such as "q^k+1" or "ceil(q^1.5)".

    Variables are the cell parameters (q, d, k); ^ means exponentiation.
    Allowed beyond that: integer and float literals, + - * / // %, unary
    minus, and the functions ceil, floor, round, sqrt, min, max.  The result
    must come out a positive integer ("rounded" policies must say so with
    round/ceil/floor; round is Python round, halves to even).
    """
    if isinstance(expr, bool) or not isinstance(expr, (int, str)):
        raise ConfigError(f"set size must be an int or an expression string, got {expr!r}")
    if isinstance(expr, int):
        value: int | float = expr
    else:
        try:
            tree = ast.parse(expr.replace("^", "**"), mode="eval")
        except SyntaxError as exc:
            raise ConfigError(f"bad size expression {expr!r}: {exc.msg}") from None
        value = _eval_size_node(tree.body, variables, expr)
    if isinstance(value, float):
        if not value.is_integer():
            raise ConfigError(f"size expression {expr!r} evaluates to non-integer {value!r}")
        value = int(value)
    if value < 1:
        raise ConfigError(f"size expression {expr!r} evaluates to {value}, need >= 1")
    return value


def _eval_size_node(node: ast.AST, variables: Mapping[str, int | None], expr: str) -> int | float:
    if isinstance(node, ast.Constant):
        if isinstance(node.value, bool) or not isinstance(node.value, (int, float)):
            raise ConfigError(f"non-numeric literal in size expression {expr!r}")
        return node.value
    if isinstance(node, ast.Name):
        value = variables.get(node.id)
        if value is None:
            raise ConfigError(f"unknown variable {node.id!r} in size expression {expr!r}")
        return value
    if isinstance(node, ast.BinOp) and type(node.op) in _SIZE_BINOPS:
        left = _eval_size_node(node.left, variables, expr)
        right = _eval_size_node(node.right, variables, expr)
        try:
            return _SIZE_BINOPS[type(node.op)](left, right)
        except ZeroDivisionError:
            raise ConfigError(f"division by zero in size expression {expr!r}") from None
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.UAdd, ast.USub)):
        operand = _eval_size_node(node.operand, variables, expr)
        return -operand if isinstance(node.op, ast.USub) else operand
    if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and not node.keywords:
        func = _SIZE_FUNCS.get(node.func.id)
        if func is not None:
            return func(*(_eval_size_node(arg, variables, expr) for arg in node.args))
    raise ConfigError(f"unsupported syntax in size expression {expr!r}")


# -- configuration ---------------------------------------------------------

def _as_int_tuple(value: Any, name: str) -> tuple[int, ...]:
    if isinstance(value, bool):
        raise ConfigError(f"config field {name!r} must hold integers")
    if isinstance(value, int):
        return (value,)
    if isinstance(value, (list, tuple)):
        out = []
        for item in value:
            if isinstance(item, bool) or not isinstance(item, int):
                raise ConfigError(f"config field {name!r} must hold integers, got {item!r}")
            out.append(item)
        return tuple(out)
    raise ConfigError(f"config field {name!r} must be an integer or a list of integers")


def _as_size_tuple(value: Any) -> tuple[int | str, ...]:
    if isinstance(value, (int, str)) and not isinstance(value, bool):
        return (value,)
    if isinstance(value, (list, tuple)):
        out = []
        for item in value:
            if isinstance(item, bool) or not isinstance(item, (int, str)):
                raise ConfigError(f"config field 'sizes' entries must be ints or strings, got {item!r}")
            out.append(item)
        return tuple(out)
    raise ConfigError("config field 'sizes' must be a size or a list of sizes")


@dataclass(frozen=True)
class CampaignConfig:
    """Full description of one campaign; equal configs give identical reports."""

    kind: str
    q_list: tuple[int, ...]
    d_list: tuple[int, ...]
    k_list: tuple[int, ...] = ()
    sizes: tuple[int | str, ...] = ()
    trials: int = 100
    seed: int = 0
    mode: str = "auto"
    generator: str = "random"
    salem_threshold: float = 2.0
    ratio_floor: float = 0.25
    threads: int = 1
    output: str | None = None

    _JSON_KEYS = {
        "kind": "kind",
        "q": "q_list",
        "d": "d_list",
        "k": "k_list",
        "sizes": "sizes",
        "trials": "trials",
        "seed": "seed",
        "mode": "mode",
        "generator": "generator",
        "salem_threshold": "salem_threshold",
        "ratio_floor": "ratio_floor",
        "threads": "threads",
        "output": "output",
    }

    @classmethod
    def from_mapping(cls, data: Mapping[str, Any]) -> "CampaignConfig":
        if not isinstance(data, Mapping):
            raise ConfigError("campaign config must be a JSON object")
        unknown = sorted(set(data) - set(cls._JSON_KEYS))
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
        for key in ("kind", "q", "d"):
            if key not in data:
                raise ConfigError(f"config key {key!r} is required")
        kwargs: dict[str, Any] = {"kind": data["kind"]}
        kwargs["q_list"] = _as_int_tuple(data["q"], "q")
        kwargs["d_list"] = _as_int_tuple(data["d"], "d")
        if "k" in data:
            kwargs["k_list"] = _as_int_tuple(data["k"], "k")
        if "sizes" in data:
            kwargs["sizes"] = _as_size_tuple(data["sizes"])
        for key in ("trials", "seed", "threads"):
            if key in data:
                value = data[key]
                if isinstance(value, bool) or not isinstance(value, int):
                    raise ConfigError(f"config field {key!r} must be an integer")
                kwargs[key] = value
        for key in ("salem_threshold", "ratio_floor"):
            if key in data:
                value = data[key]
                if isinstance(value, bool) or not isinstance(value, (int, float)):
                    raise ConfigError(f"config field {key!r} must be a number")
                kwargs[key] = float(value)
        for key in ("mode", "generator"):
            if key in data:
                if not isinstance(data[key], str):
                    raise ConfigError(f"config field {key!r} must be a string")
                kwargs[key] = data[key]
        if "output" in data and data["output"] is not None:
            if not isinstance(data["output"], str):
                raise ConfigError("config field 'output' must be a string path")
            kwargs["output"] = data["output"]
        config = cls(**kwargs)
        config.validate()
        return config

    @classmethod
    def from_json(cls, text: str) -> "CampaignConfig":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config is not valid JSON: line {exc.lineno}: {exc.msg}") from None
        return cls.from_mapping(data)

    @classmethod
    def from_file(cls, path: str | Path) -> "CampaignConfig":
        return cls.from_json(Path(path).read_text(encoding="ascii"))

    def validate(self) -> None:
        if self.kind not in KINDS:
            raise ConfigError(f"unknown campaign kind {self.kind!r}; expected one of {', '.join(KINDS)}")
        if self.mode not in MODES:
            raise ConfigError(f"unknown mode {self.mode!r}; expected one of {', '.join(MODES)}")
        if self.generator not in GENERATORS:
            raise ConfigError(f"unknown generator {self.generator!r}; expected one of {', '.join(GENERATORS)}")
        if not self.q_list:
            raise ConfigError("config needs at least one q")
        if not self.d_list:
            raise ConfigError("config needs at least one d")
        for q in self.q_list:
            if not is_prime(q):
                raise ConfigError(f"q = {q} is not prime")
            if q > MAX_MODULUS:
                raise ConfigError(f"q = {q} exceeds the modulus cap {MAX_MODULUS}")
        for d in self.d_list:
            if d < 1:
                raise ConfigError(f"dimension must be >= 1, got {d}")
        for q in self.q_list:
            for d in self.d_list:
                check_size_cap(q, d, DEFAULT_SIZE_CAP)
        for k in self.k_list:
            if k < 1:
                raise ConfigError(f"k must be >= 1, got {k}")
        if self.trials < 1:
            raise ConfigError(f"trials must be >= 1, got {self.trials}")
        if self.seed < 0:
            raise ConfigError(f"seed must be >= 0, got {self.seed}")
        if self.threads < 1:
            raise ConfigError(f"threads must be >= 1, got {self.threads}")
        if self.salem_threshold <= 0:
            raise ConfigError(f"salem_threshold must be > 0, got {self.salem_threshold}")
        if self.ratio_floor < 0:
            raise ConfigError(f"ratio_floor must be >= 0, got {self.ratio_floor}")
        if self.kind == "salem-bounds" and not self.sizes:
            raise ConfigError("salem-bounds campaigns need explicit sizes")
        if self.generator == "subspace-random" and not self.k_list:
            raise ConfigError("the subspace-random generator needs k (draws inside H_(k+1))")
        if self.mode == "exhaustive" and self.generator != "random":
            raise ConfigError("exhaustive mode enumerates all sets; it requires the random generator")

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": self.kind,
            "q": list(self.q_list),
            "d": list(self.d_list),
            "k": list(self.k_list),
            "sizes": list(self.sizes),
            "trials": self.trials,
            "seed": self.seed,
            "mode": self.mode,
            "generator": self.generator,
            "salem_threshold": self.salem_threshold,
            "ratio_floor": self.ratio_floor,
            "threads": self.threads,
            "output": self.output,
        }


# -- cells -----------------------------------------------------------------

@dataclass(frozen=True)
class Cell:
    q: int
    d: int
    k: int | None
    size: int | None
    mode: str
    total: int | None = None


def _resolve_cell_mode(config: CampaignConfig, q: int, d: int, size: int) -> tuple[str, int]:
    total = math.comb(q**d, size)
    if config.mode == "exhaustive":
        if total > EXHAUSTIVE_LIMIT:
            raise ConfigError(
                f"exhaustive enumeration of C({q**d}, {size}) = {total} sets exceeds the {EXHAUSTIVE_LIMIT} limit"
            )
        return "exhaustive", total
    if config.mode == "auto" and config.generator == "random" and total <= EXHAUSTIVE_LIMIT:
        return "exhaustive", total
    return "random", total


def _check_draw_bounds(config: CampaignConfig, q: int, d: int, k: int | None, size: int) -> None:
    if size > q**d:
        raise ConfigError(f"size {size} exceeds the {q**d} points of the grid (q={q}, d={d})")
    if config.generator == "subspace-random" and size > q ** (k + 1):
        raise ConfigError(
            f"size {size} exceeds the {q ** (k + 1)} points of H_{k + 1} (q={q}, d={d}, k={k})"
        )


def _expand_cells(config: CampaignConfig) -> list[Cell]:
    cells: list[Cell] = []
    if config.kind == "sharpness":
        for q in config.q_list:
            for d in config.d_list:
                if d < 2:
                    continue
                cells.append(Cell(q, d, None, None, "deterministic"))
        if not cells:
            raise ConfigError("no valid cells: sharpness needs d >= 2")
        return cells
    if config.kind == "theorem-main":
        sizes = config.sizes or ("q^k+1",)
        for q in config.q_list:
            for d in config.d_list:
                k_values = config.k_list or tuple(range(1, d))
                for k in k_values:
                    if not 1 <= k <= d - 1:
                        continue
                    for expr in sizes:
                        size = evaluate_size(expr, q=q, d=d, k=k)
                        _check_draw_bounds(config, q, d, k, size)
                        mode, total = _resolve_cell_mode(config, q, d, size)
                        cells.append(Cell(q, d, k, size, mode, total))
        if not cells:
            raise ConfigError("no valid cells: theorem-main needs 1 <= k <= d-1")
        return cells
    # salem-bounds: k is optional and only steers the subspace-random generator
    k_values: tuple[int | None, ...] = config.k_list or (None,)
    for q in config.q_list:
        for d in config.d_list:
            for k in k_values:
                if k is not None and k > d - 1:
                    continue
                for expr in config.sizes:
                    size = evaluate_size(expr, q=q, d=d, k=k)
                    _check_draw_bounds(config, q, d, k, size)
                    mode, total = _resolve_cell_mode(config, q, d, size)
                    cells.append(Cell(q, d, k, size, mode, total))
    if not cells:
        raise ConfigError("no valid cells: salem-bounds needs k <= d-1 when k is given")
    return cells


def _trial_seed(config: CampaignConfig, cell: Cell, trial: int) -> int:
    return mix64(config.seed, cell.q, cell.d, cell.k or 0, cell.size or 0, trial)


def _draw_set(config: CampaignConfig, cell: Cell, seed: int) -> PointSet:
    if config.generator == "subspace-random":
        return gen_subspace_random(cell.q, cell.d, cell.k + 1, cell.size, seed)
    return gen_random(cell.q, cell.d, cell.size, seed)


def _map_ordered(work: Callable, items: Iterable, threads: int) -> list:
    if threads <= 1:
        return [work(item) for item in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(work, items))


# -- results ---------------------------------------------------------------

_COLUMNS: dict[str, tuple[str, ...]] = {
    "theorem-main": (
        "kind", "q", "d", "k", "size", "mode", "trial", "trial_seed",
        "nu_min", "lower_bound", "threshold_holds", "slope_pattern_covered",
        "literal_subset", "direction_count", "ambient_count", "full_coverage",
        "hard_fail", "soft_flags",
    ),
    "salem-bounds": (
        "kind", "q", "d", "k", "size", "mode", "trial", "trial_seed",
        "direction_count", "ambient_count", "full_coverage", "diff_size",
        "bound_ii", "bound_iii", "bound_diff", "ratio_ii", "ratio_iii",
        "ratio_diff", "salem_constant", "is_salem", "parseval_defect_rel",
        "quotient_bound_holds", "hard_fail", "soft_flags",
    ),
    "sharpness": (
        "kind", "q", "d", "k", "size", "mode", "trial", "trial_seed",
        "direction_count", "expected_count", "next_subspace_count",
        "exact_match", "strictly_fewer", "hard_fail", "soft_flags",
    ),
}


@dataclass(frozen=True)
class CampaignResult:
    kind: str
    config: CampaignConfig
    rows: tuple[dict, ...]
    aggregates: dict
    counterexamples: tuple[dict, ...]

    @property
    def hard_failure_count(self) -> int:
        return sum(1 for c in self.counterexamples if c["severity"] == "hard")

    @property
    def soft_flag_count(self) -> int:
        return sum(1 for c in self.counterexamples if c["severity"] == "soft")

    @property
    def ok(self) -> bool:
        """True when no hard assertion fired; the CLI exit code is 0 iff ok."""
        return self.hard_failure_count == 0


def _flag_records(
    cell: Cell, trial: int | None, seed: int | None, reasons: Sequence[str], severity: str, E: PointSet | None
) -> list[dict]:
    return [
        {
            "severity": severity,
            "reason": reason,
            "q": cell.q,
            "d": cell.d,
            "k": cell.k,
            "size": cell.size,
            "trial": trial,
            "trial_seed": seed,
            "fset": format_fset(E) if E is not None else None,
        }
        for reason in reasons
    ]


# -- theorem-main ----------------------------------------------------------

def _theorem_outcome(E: PointSet, cell: Cell, trial: int, seed: int | None) -> tuple[dict, list[str], list[str], PointSet]:
    report = theorem_main_threshold(E, cell.k)
    dirs = direction_set(E)
    ambient_n = ambient_direction_count(cell.q, cell.d)
    literal = coordinate_subspace_directions(cell.q, cell.d, cell.k + 1) <= dirs
    full = len(dirs) == ambient_n
    hard: list[str] = []
    soft: list[str] = []
    if report.above_threshold:
        if not report.holds:
            hard.append("nu-threshold")
        # full coverage is exact for k = d-1; below that the subset claim and
        # the slope-pattern coverage are open questions, recorded per row only
        if cell.k == cell.d - 1 and not full:
            hard.append("ambient-coverage")
    row = {
        "kind": "theorem-main",
        "q": cell.q,
        "d": cell.d,
        "k": cell.k,
        "size": cell.size,
        "mode": cell.mode,
        "trial": trial,
        "trial_seed": seed,
        "nu_min": report.min_nu,
        "lower_bound": report.lower_bound,
        "threshold_holds": report.holds,
        "slope_pattern_covered": report.slope_pattern_covered,
        "literal_subset": literal,
        "direction_count": len(dirs),
        "ambient_count": ambient_n,
        "full_coverage": full,
        "hard_fail": bool(hard),
        "soft_flags": tuple(soft),
    }
    return row, hard, soft, E


def verify_theorem_main(config: CampaignConfig) -> CampaignResult:
    """Sweep the incidence threshold and direction coverage over the grid."""
    config.validate()
    if config.kind != "theorem-main":
        raise ConfigError(f"verify_theorem_main got a {config.kind!r} config")
    rows: list[dict] = []
    counterexamples: list[dict] = []
    cell_aggs: list[dict] = []
    for cell in _expand_cells(config):
        if cell.mode == "exhaustive":
            results = [
                _theorem_outcome(PointSet.from_indices(cell.q, cell.d, picks), cell, i, None)
                for i, picks in enumerate(combinations(range(cell.q**cell.d), cell.size))
            ]
        else:
            def work(trial: int, _cell: Cell = cell) -> tuple[dict, list[str], list[str], PointSet]:
                seed = _trial_seed(config, _cell, trial)
                return _theorem_outcome(_draw_set(config, _cell, seed), _cell, trial, seed)

            results = _map_ordered(work, range(config.trials), config.threads)
        agg = {
            "q": cell.q, "d": cell.d, "k": cell.k, "size": cell.size, "mode": cell.mode,
            "sets_checked": len(results),
            "nu_min": min(r[0]["nu_min"] for r in results),
            "hard_failures": 0, "literal_subset_failures": 0, "slope_pattern_failures": 0,
        }
        for row, hard, soft, E in results:
            rows.append(row)
            agg["hard_failures"] += bool(hard)
            agg["literal_subset_failures"] += not row["literal_subset"]
            agg["slope_pattern_failures"] += not row["slope_pattern_covered"]
            if hard or soft:
                counterexamples.extend(_flag_records(cell, row["trial"], row["trial_seed"], hard, "hard", E))
                counterexamples.extend(_flag_records(cell, row["trial"], row["trial_seed"], soft, "soft", E))
        cell_aggs.append(agg)
    aggregates = {
        "cells": cell_aggs,
        "sets_checked": sum(a["sets_checked"] for a in cell_aggs),
        "hard_failures": sum(a["hard_failures"] for a in cell_aggs),
    }
    return CampaignResult("theorem-main", config, tuple(rows), aggregates, tuple(counterexamples))


# -- salem-bounds ----------------------------------------------------------

def _salem_outcome(E: PointSet, cell: Cell, trial: int, seed: int | None, config: CampaignConfig) -> tuple[dict, list[str], list[str], PointSet]:
    rec = difference_bound_check(E)
    ambient_n = ambient_direction_count(cell.q, cell.d)
    full = rec.direction_count == ambient_n
    hard: list[str] = []
    soft: list[str] = []
    if rec.set_size > cell.q ** (cell.d - 1) and not full:
        hard.append("part-i-coverage")
    if not rec.quotient_bound_holds:
        hard.append("quotient-bound")
    if rec.ratio_ii < config.ratio_floor:
        soft.append("ratio-ii-floor")
    if rec.ratio_diff < config.ratio_floor:
        soft.append("ratio-diff-floor")
    row = {
        "kind": "salem-bounds",
        "q": cell.q,
        "d": cell.d,
        "k": cell.k,
        "size": cell.size,
        "mode": cell.mode,
        "trial": trial,
        "trial_seed": seed,
        "direction_count": rec.direction_count,
        "ambient_count": ambient_n,
        "full_coverage": full,
        "diff_size": rec.diff_size,
        "bound_ii": rec.bound_ii,
        "bound_iii": rec.bound_iii,
        "bound_diff": rec.bound_diff,
        "ratio_ii": rec.ratio_ii,
        "ratio_iii": rec.ratio_iii,
        "ratio_diff": rec.ratio_diff,
        "salem_constant": rec.salem_constant,
        "is_salem": rec.salem_constant <= config.salem_threshold,
        "parseval_defect_rel": rec.parseval_defect_rel,
        "quotient_bound_holds": rec.quotient_bound_holds,
        "hard_fail": bool(hard),
        "soft_flags": tuple(soft),
    }
    return row, hard, soft, E


def verify_salem_bounds(config: CampaignConfig) -> CampaignResult:
    """Measure direction and difference counts against the flatness bounds."""
    config.validate()
    if config.kind != "salem-bounds":
        raise ConfigError(f"verify_salem_bounds got a {config.kind!r} config")
    rows: list[dict] = []
    counterexamples: list[dict] = []
    cell_aggs: list[dict] = []
    for cell in _expand_cells(config):
        if cell.mode == "exhaustive":
            results = [
                _salem_outcome(PointSet.from_indices(cell.q, cell.d, picks), cell, i, None, config)
                for i, picks in enumerate(combinations(range(cell.q**cell.d), cell.size))
            ]
        else:
            def work(trial: int, _cell: Cell = cell) -> tuple[dict, list[str], list[str], PointSet]:
                seed = _trial_seed(config, _cell, trial)
                return _salem_outcome(_draw_set(config, _cell, seed), _cell, trial, seed, config)

            results = _map_ordered(work, range(config.trials), config.threads)
        n = len(results)
        agg = {
            "q": cell.q, "d": cell.d, "k": cell.k, "size": cell.size, "mode": cell.mode,
            "trials": n,
            "min_ratio_ii": min(r[0]["ratio_ii"] for r in results),
            "min_ratio_iii": min(r[0]["ratio_iii"] for r in results),
            "min_ratio_diff": min(r[0]["ratio_diff"] for r in results),
            "max_salem_constant": max(r[0]["salem_constant"] for r in results),
            "mean_direction_count": sum(r[0]["direction_count"] for r in results) / n,
            "hard_failures": sum(bool(r[1]) for r in results),
            "soft_flags": sum(len(r[2]) for r in results),
        }
        cell_aggs.append(agg)
        for row, hard, soft, E in results:
            rows.append(row)
            if hard or soft:
                counterexamples.extend(_flag_records(cell, row["trial"], row["trial_seed"], hard, "hard", E))
                counterexamples.extend(_flag_records(cell, row["trial"], row["trial_seed"], soft, "soft", E))
    monotonicity = _monotonicity_probe(cell_aggs)
    for probe in monotonicity:
        if not probe["nondecreasing"]:
            counterexamples.append(
                {
                    "severity": "soft",
                    "reason": "direction-mean-monotonicity",
                    "q": probe["q"],
                    "d": probe["d"],
                    "k": probe["k"],
                    "size": None,
                    "trial": None,
                    "trial_seed": None,
                    "fset": None,
                }
            )
    aggregates = {
        "cells": cell_aggs,
        "monotonicity": monotonicity,
        "sets_checked": sum(a["trials"] for a in cell_aggs),
        "hard_failures": sum(a["hard_failures"] for a in cell_aggs),
    }
    return CampaignResult("salem-bounds", config, tuple(rows), aggregates, tuple(counterexamples))


def _monotonicity_probe(cell_aggs: list[dict]) -> list[dict]:
    """Mean |D(E)| should not drop as |E| grows within a (q, d, k) group."""
    groups: dict[tuple, list[dict]] = {}
    for agg in cell_aggs:
        groups.setdefault((agg["q"], agg["d"], agg["k"]), []).append(agg)
    probes = []
    for (q, d, k), aggs in groups.items():
        if len(aggs) < 2:
            continue
        ordered = sorted(aggs, key=lambda a: a["size"])
        means = [a["mean_direction_count"] for a in ordered]
        probes.append(
            {
                "q": q, "d": d, "k": k,
                "sizes": [a["size"] for a in ordered],
                "mean_direction_count": means,
                "nondecreasing": all(means[i] <= means[i + 1] for i in range(len(means) - 1)),
            }
        )
    return probes


# -- sharpness -------------------------------------------------------------

def verify_sharpness(config: CampaignConfig) -> CampaignResult:
    """Exact direction counts of H_k: the threshold |E| > q^k cannot weaken to >=."""
    config.validate()
    if config.kind != "sharpness":
        raise ConfigError(f"verify_sharpness got a {config.kind!r} config")
    rows: list[dict] = []
    counterexamples: list[dict] = []
    for cell in _expand_cells(config):
        q, d = cell.q, cell.d
        for k in range(1, d):
            E = gen_coordinate_subspace(q, d, k)
            n_dirs = len(direction_set(E))
            expected = (q**k - 1) // (q - 1)
            next_count = (q ** (k + 1) - 1) // (q - 1)
            exact = n_dirs == expected and E.cardinality == q**k
            fewer = n_dirs < next_count
            hard = [] if exact and fewer else ["sharpness-count"]
            row = {
                "kind": "sharpness",
                "q": q,
                "d": d,
                "k": k,
                "size": q**k,
                "mode": cell.mode,
                "trial": None,
                "trial_seed": None,
                "direction_count": n_dirs,
                "expected_count": expected,
                "next_subspace_count": next_count,
                "exact_match": exact,
                "strictly_fewer": fewer,
                "hard_fail": bool(hard),
                "soft_flags": (),
            }
            rows.append(row)
            if hard:
                k_cell = Cell(q, d, k, q**k, cell.mode)
                counterexamples.extend(_flag_records(k_cell, None, None, hard, "hard", E))
    aggregates = {
        "cells_checked": len(rows),
        "hard_failures": sum(row["hard_fail"] for row in rows),
    }
    return CampaignResult("sharpness", config, tuple(rows), aggregates, tuple(counterexamples))


def sharpness_suite(q: int, d: int) -> CampaignResult:
    """Convenience wrapper: the sharpness campaign for a single (q, d)."""
    config = CampaignConfig(kind="sharpness", q_list=(q,), d_list=(d,))
    return verify_sharpness(config)


_RUNNERS = {
    "theorem-main": verify_theorem_main,
    "salem-bounds": verify_salem_bounds,
    "sharpness": verify_sharpness,
}


def run_campaign(config: CampaignConfig) -> CampaignResult:
    config.validate()
    return _RUNNERS[config.kind](config)


# -- report emission -------------------------------------------------------

def _csv_value(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (list, tuple)):
        return ";".join(str(item) for item in value)
    return str(value)


def _json_value(value: Any) -> Any:
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, tuple):
        return [_json_value(item) for item in value]
    if isinstance(value, list):
        return [_json_value(item) for item in value]
    if isinstance(value, dict):
        return {key: _json_value(item) for key, item in value.items()}
    return value


def emit_report(result: CampaignResult, format: str) -> str:
    """Render the campaign to text; identical results render byte-identically."""
    if format == "csv":
        columns = _COLUMNS[result.kind]
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(columns)
        for row in result.rows:
            writer.writerow([_csv_value(row[col]) for col in columns])
        return buffer.getvalue()
    if format == "json":
        doc = {
            "kind": result.kind,
            "config": result.config.to_dict(),
            "rows": [_json_value(row) for row in result.rows],
            "aggregates": _json_value(result.aggregates),
            "counterexamples": [_json_value(c) for c in result.counterexamples],
            "hard_failure_count": result.hard_failure_count,
            "soft_flag_count": result.soft_flag_count,
            "ok": result.ok,
        }
        return json.dumps(doc, indent=2) + "\n"
    raise ConfigError(f"unknown report format {format!r}; expected csv or json")


def write_report(result: CampaignResult, format: str, path: str | Path) -> None:
    text = emit_report(result, format)
    with open(path, "w", encoding="ascii", newline="\n") as handle:
        handle.write(text)
