"""Command-line front end: set generators, analyses, verification campaigns.

Exit codes: 0 success, 1 campaign found a hard counterexample, 2 bad input
(malformed .fset or config, invalid flags).  Integers print exactly; reals
print with 6 significant digits.  Reports and .fset files are written only
after the computation that fills them has finished, so a failing run leaves
no partial output behind.
"""

from __future__ import annotations

import sys
from dataclasses import replace
from functools import wraps

import click

from .directions import direction_set, sort_directions
from .errors import ConfigError, FsetParseError, NumericalInconsistencyError, SizeCapError
from .generators import (
    GENERATOR_NAMES,
    gen_affine_subspace,
    gen_coordinate_subspace,
    gen_embedded,
    gen_paraboloid,
    gen_random,
    gen_subspace_random,
)
from .harness import GENERATORS, KINDS, MODES, CampaignConfig, run_campaign, write_report
from .incidence import all_slopes, nu_brute, nu_spectral
from .pointset import format_fset, read_fset
from .salem import difference_profile, salem_report

_INPUT_ERRORS = (
    FsetParseError,
    ConfigError,
    SizeCapError,
    NumericalInconsistencyError,
    ValueError,
    OSError,
)


def _guarded(func):
    """Input and consistency errors exit 2 with a one-line message."""

    @wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except _INPUT_ERRORS as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(2)

    return wrapper


def _fmt(value) -> str:
    if isinstance(value, float):
        return format(value, ".6g")
    return str(value)


def _parse_vector(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise ConfigError(f"expected comma-separated integers, got {text!r}") from None


def _join(vec) -> str:
    return ",".join(str(c) for c in vec)


@click.group()
@click.option("--threads", type=int, default=None, help="Worker thread cap for campaigns.")
@click.pass_context
def main(ctx: click.Context, threads: int | None) -> None:
    """Exact direction-set and Fourier experiments over prime-field grids."""
    ctx.ensure_object(dict)
    ctx.obj["threads"] = threads


_FAMILY_PARAMS = {
    "random": ("q", "d", "n", "seed"),
    "coordinate-subspace": ("q", "d", "k"),
    "affine-subspace": ("q", "d", "k", "shift"),
    "paraboloid": ("q", "d"),
    "embedded": ("in", "d"),
    "subspace-random": ("q", "d", "m", "n", "seed"),
}


@main.command("gen")
@click.option("--family", type=click.Choice(GENERATOR_NAMES), required=True)
@click.option("--q", type=int, default=None, help="Field modulus (prime).")
@click.option("--d", type=int, default=None, help="Ambient dimension.")
@click.option("--k", type=int, default=None, help="Subspace dimension.")
@click.option("--m", type=int, default=None, help="Containing-subspace dimension (subspace-random).")
@click.option("--n", type=int, default=None, help="Number of points to draw.")
@click.option("--seed", type=int, default=None, help="Draw seed.")
@click.option("--shift", default=None, help="Translation vector, comma-separated (affine-subspace).")
@click.option("--in", "in_path", type=click.Path(), default=None, help="Base .fset to embed (embedded).")
@click.option("--out", type=click.Path(), default=None, help="Output .fset path (default stdout).")
@_guarded
def gen_cmd(family, q, d, k, m, n, seed, shift, in_path, out) -> None:
    """Write a generated point set in .fset form."""
    provided = {
        name: value
        for name, value in (
            ("q", q), ("d", d), ("k", k), ("m", m), ("n", n),
            ("seed", seed), ("shift", shift), ("in", in_path),
        )
        if value is not None
    }
    wanted = _FAMILY_PARAMS[family]
    missing = [p for p in wanted if p not in provided]
    extra = [p for p in provided if p not in wanted]
    if missing:
        raise ConfigError(f"family {family} needs --{', --'.join(missing)}")
    if extra:
        raise ConfigError(f"family {family} does not take --{', --'.join(extra)}")
    if family == "random":
        E = gen_random(q, d, n, seed)
    elif family == "coordinate-subspace":
        E = gen_coordinate_subspace(q, d, k)
    elif family == "affine-subspace":
        E = gen_affine_subspace(q, d, k, _parse_vector(shift))
    elif family == "paraboloid":
        E = gen_paraboloid(q, d)
    elif family == "embedded":
        E = gen_embedded(read_fset(in_path), d)
    else:
        E = gen_subspace_random(q, d, m, n, seed)
    text = format_fset(E)
    if out is None:
        click.echo(text, nl=False)
    else:
        with open(out, "w", encoding="ascii", newline="\n") as handle:
            handle.write(text)


@main.command("directions")
@click.option("--in", "in_path", type=click.Path(), required=True, help="Input .fset file.")
@click.option("--list", "show_list", is_flag=True, help="Also print the canonical representatives.")
@_guarded
def directions_cmd(in_path, show_list) -> None:
    """Print |D(E)|, the number of directions the set determines."""
    E = read_fset(in_path)
    dirs = direction_set(E)
    click.echo(str(len(dirs)))
    if show_list:
        for vec in sort_directions(dirs, E.q):
            click.echo(" ".join(str(c) for c in vec))


@main.command("nu")
@click.option("--in", "in_path", type=click.Path(), required=True, help="Input .fset file.")
@click.option("--k", type=int, required=True, help="Slope length, 1 <= k <= d-1.")
@click.option("--t", "slope_text", default=None, help="Slope tuple, comma-separated; omit to sweep all.")
@click.option("--method", type=click.Choice(("spectral", "brute")), default="spectral", show_default=True)
@_guarded
def nu_cmd(in_path, k, slope_text, method) -> None:
    """Count ordered pairs whose difference follows a slope tuple."""
    E = read_fset(in_path)
    count = nu_spectral if method == "spectral" else nu_brute
    if slope_text is not None:
        slope = _parse_vector(slope_text)
        if len(slope) != k:
            raise ConfigError(f"slope {slope_text!r} has {len(slope)} entries, expected k = {k}")
        if any(not 0 <= t < E.q for t in slope):
            raise ConfigError(f"slope entries must lie in [0, {E.q})")
        rep = count(E, slope)
        click.echo(f"slope {_join(rep.slope)}")
        click.echo(f"nu {rep.nu}")
        click.echo(f"nu_nondegenerate {rep.nu_nondegenerate}")
        click.echo(f"main_term {rep.main_term}")
        click.echo(f"diagonal_term {rep.diagonal_term}")
        click.echo(f"remainder {_fmt(rep.remainder)}")
        return
    for slope in all_slopes(E.q, k):
        rep = count(E, slope)
        click.echo(
            f"slope={_join(rep.slope)} nu={rep.nu} "
            f"nondegenerate={rep.nu_nondegenerate} remainder={_fmt(rep.remainder)}"
        )


@main.command("salem")
@click.option("--in", "in_path", type=click.Path(), required=True, help="Input .fset file.")
@click.option("--threshold", type=float, default=2.0, show_default=True, help="Flatness classification bound.")
@_guarded
def salem_cmd(in_path, threshold) -> None:
    """Print the measured spectral-flatness constant of a set."""
    rep = salem_report(read_fset(in_path))
    click.echo(f"q {rep.q}")
    click.echo(f"d {rep.dim}")
    click.echo(f"size {rep.set_size}")
    click.echo(f"max_nonzero_coeff {_fmt(rep.max_nonzero_coeff)}")
    click.echo(f"salem_constant {_fmt(rep.salem_constant)}")
    click.echo(f"threshold {_fmt(threshold)}")
    click.echo(f"salem {'true' if rep.is_salem_at(threshold) else 'false'}")


@main.command("diff")
@click.option("--in", "in_path", type=click.Path(), required=True, help="Input .fset file.")
@_guarded
def diff_cmd(in_path) -> None:
    """Print difference-multiplicity statistics of a set."""
    E = read_fset(in_path)
    prof = difference_profile(E)
    click.echo(f"q {prof.q}")
    click.echo(f"d {prof.dim}")
    click.echo(f"size {E.cardinality}")
    click.echo(f"support {prof.support_size}")
    click.echo(f"total {prof.total}")
    click.echo(f"mu_zero {prof.mu_of((0,) * prof.dim)}")
    click.echo(f"max_multiplicity {prof.max_multiplicity()}")


def _finish_campaign(result, out_prefix: str | None) -> None:
    if out_prefix is not None:
        for fmt in ("csv", "json"):
            path = f"{out_prefix}.{fmt}"
            write_report(result, fmt, path)
            click.echo(f"wrote {path}")
    click.echo(f"campaign {result.kind}")
    click.echo(f"rows {len(result.rows)}")
    click.echo(f"hard_failures {result.hard_failure_count}")
    click.echo(f"soft_flags {result.soft_flag_count}")
    for record in result.counterexamples[:10]:
        where = f"q={record['q']} d={record['d']} k={record['k']} size={record['size']}"
        trial = "" if record["trial"] is None else f" trial={record['trial']}"
        click.echo(f"counterexample {record['severity']} {record['reason']} {where}{trial}")
    if len(result.counterexamples) > 10:
        click.echo(f"... {len(result.counterexamples) - 10} more in the JSON report")
    click.echo(f"ok {'true' if result.ok else 'false'}")
    sys.exit(0 if result.ok else 1)


@main.command("verify")
@click.option("--campaign", "kind", type=click.Choice(KINDS), required=True)
@click.option("--q", "q_values", type=int, multiple=True, required=True)
@click.option("--d", "d_values", type=int, multiple=True, required=True)
@click.option("--k", "k_values", type=int, multiple=True)
@click.option("--size", "size_values", multiple=True, help="Size or expression in q, d, k; repeatable.")
@click.option("--trials", type=int, default=100, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--mode", type=click.Choice(MODES), default="auto", show_default=True)
@click.option("--exhaustive", "exhaustive_flag", is_flag=True, help="Shorthand for --mode exhaustive.")
@click.option("--generator", type=click.Choice(GENERATORS), default="random", show_default=True)
@click.option("--salem-threshold", type=float, default=2.0, show_default=True)
@click.option("--ratio-floor", type=float, default=0.25, show_default=True)
@click.option("--out", "out_prefix", type=click.Path(), default=None, help="Report path prefix.")
@click.pass_context
@_guarded
def verify_cmd(
    ctx, kind, q_values, d_values, k_values, size_values, trials, seed, mode,
    exhaustive_flag, generator, salem_threshold, ratio_floor, out_prefix,
) -> None:
    """Run one verification campaign from command-line flags."""
    config = CampaignConfig(
        kind=kind,
        q_list=tuple(q_values),
        d_list=tuple(d_values),
        k_list=tuple(k_values),
        sizes=tuple(size_values),
        trials=trials,
        seed=seed,
        mode="exhaustive" if exhaustive_flag else mode,
        generator=generator,
        salem_threshold=salem_threshold,
        ratio_floor=ratio_floor,
        threads=ctx.obj["threads"] or 1,
    )
    config.validate()
    _finish_campaign(run_campaign(config), out_prefix)


@main.command("sweep")
@click.argument("config_file", type=click.Path())
@click.option("--out", "out_prefix", type=click.Path(), default=None, help="Override the config's output prefix.")
@click.pass_context
@_guarded
def sweep_cmd(ctx, config_file, out_prefix) -> None:
    """Run the campaign described by a JSON config file."""
    config = CampaignConfig.from_file(config_file)
    if ctx.obj["threads"] is not None:
        config = replace(config, threads=ctx.obj["threads"])
        config.validate()
    _finish_campaign(run_campaign(config), out_prefix or config.output)


if __name__ == "__main__":
    main()
