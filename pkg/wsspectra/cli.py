"""Command-line interface for wsspectra.

Usage:
    wsspectra table1                          # ⁵⁶Fe levels in 3 dimensions
    wsspectra table2 --format json            # the same in 4 dimensions
    wsspectra solve --A 208 --scan-l 0:6      # any well, any channels
    wsspectra curves --out data/              # potential and wavefunction curves
    wsspectra oracle --l 1 --hamiltonian exact
"""

import logging
import os
import sys
import typing

import click

from . import __version__
from .config import (
    RunConfig,
    build_run_config,
    parse_overrides,
    read_key_values,
    table_preset,
)
from .exceptions import ConfigError, WSSpectraError
from .numerov import Hamiltonian, ShootingConfig, shoot
from .output import OracleRow, curve_to_csv, render, render_rows
from .potential import potential_curve
from .solver import solve_channels
from .utils import Coordinate
from .wavefunction import sample_curve

logger = logging.getLogger(__name__)

EXIT_CONFIG_ERROR = 1
EXIT_CROSS_CHECK_FAILED = 2

# Radial window of the potential curves, in fm.
CURVE_R_MIN = 0.5
CURVE_R_MAX = 15.0
DEFAULT_CURVE_L = (1, 8)

F = typing.TypeVar("F", bound=typing.Callable[..., typing.Any])

# (flag, key, help); each flag mirrors the config file key of the same name.
RUN_FLAGS = (
    ("--V0", "V0", "Well depth in MeV."),
    ("--R0", "R0", "Well radius in fm."),
    ("--a", "a", "Surface diffuseness in fm."),
    ("--mu", "mu", "Reduced mass in u."),
    ("--A", "A", "Mass number; derives V0, R0 and mu."),
    ("--D", "D", "Number of spatial dimensions."),
    ("--l", "l", "Orbital quantum number."),
    ("--nr", "nr", "Radial quantum number."),
    ("--scan-l", "scan_l", "Range of l, as LO:HI."),
    ("--scan-nr", "scan_nr", "Range of nr, as LO:HI."),
    ("--format", "format", "json, csv or pretty."),
    ("--out", "out", "Output file, or output directory for curves."),
    ("--normalization", "normalization", "orthogonality or tabulated."),
    ("--curve-points", "curve_points", "Samples per curve."),
)
RUN_KEYS = tuple(key for _, key, _ in RUN_FLAGS)


def _apply(f: F, options: typing.Sequence[typing.Callable[[F], F]]) -> F:
    for option in reversed(options):
        f = option(f)
    return f


def run_options(f: F) -> F:
    """Adds the run flags plus --config, --constants and --oracle."""
    path = click.Path(dir_okay=False)
    options = [
        click.option("--config", "config", type=path, help="key = value run file."),
        click.option("--constants", "constants", type=path, help="Constants file."),
    ]
    options.extend(click.option(flag, key, help=text) for flag, key, text in RUN_FLAGS)
    options.append(
        click.option(
            "--oracle", "oracle", is_flag=True, help="Also run the shooting oracle."
        )
    )
    return _apply(f, options)


def table_options(f: F) -> F:
    return _apply(
        f,
        [
            click.option("--format", "fmt", help="json, csv or pretty."),
            click.option("--out", "out", help="Output file."),
            click.option("--constants", "constants", type=click.Path(dir_okay=False)),
            click.option("--oracle", "oracle", is_flag=True),
        ],
    )


def _fail(exc: Exception) -> typing.NoReturn:
    click.echo("Error: {}".format(exc), err=True)
    sys.exit(EXIT_CONFIG_ERROR)


def _load(
    options: typing.Mapping[str, typing.Any],
    default_l: typing.Optional[typing.Tuple[int, int]] = None,
) -> RunConfig:
    """Merges the run file and the flags, flags winning.

    default_l is the l range used when neither source names l or scan_l.
    """
    values: typing.Dict[str, typing.Any] = {}
    if options.get("config"):
        values.update(read_key_values(options["config"]))
    values.update(parse_overrides({key: options.get(key) for key in RUN_KEYS}))
    if options.get("oracle"):
        values["oracle"] = True
    if default_l is not None and "l" not in values and "scan_l" not in values:
        values["scan_l"] = default_l
    return build_run_config(values, constants_path=options.get("constants"))


def _emit(text: str, out: typing.Optional[str]) -> None:
    if out is None:
        click.echo(text, nl=False)
        return
    try:
        _write(out, text)
    except OSError as exc:
        _fail(exc)


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(text)


def _run(cfg: RunConfig) -> None:
    oracle_cfg = ShootingConfig() if cfg.oracle else None
    solutions = solve_channels(cfg.params, cfg.channels, cfg.measure, oracle_cfg)
    _emit(render(cfg.output_format, cfg.params, solutions), cfg.out)
    failed = [s.channel for s in solutions if s.cross_check_failed]
    if failed:
        click.echo("Error: NU/SUSY cross-check failed for {}".format(failed), err=True)
        sys.exit(EXIT_CROSS_CHECK_FAILED)


@click.group()
@click.version_option(version=__version__, prog_name="wsspectra")
@click.option("-v", "--verbose", count=True, help="Log INFO, or DEBUG when repeated.")
def cli(verbose: int) -> None:
    """Woods-Saxon bound states in D dimensions through the Pekeris approximation."""
    levels = (logging.WARNING, logging.INFO, logging.DEBUG)
    logging.basicConfig(
        level=levels[min(verbose, 2)],
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )


@cli.command("solve")
@run_options
def solve_command(**options: typing.Any) -> None:
    """Solve the given channels and print one row per channel."""
    try:
        cfg = _load(options)
    except ConfigError as exc:
        _fail(exc)
    _run(cfg)


def _table(
    D: int,
    fmt: typing.Optional[str],
    out: typing.Optional[str],
    constants: typing.Optional[str],
    oracle: bool,
) -> None:
    try:
        overrides = parse_overrides({"format": fmt, "out": out})
        if oracle:
            overrides["oracle"] = True
        cfg = table_preset(D, overrides, constants_path=constants)
    except ConfigError as exc:
        _fail(exc)
    _run(cfg)


@cli.command()
@table_options
def table1(
    fmt: typing.Optional[str],
    out: typing.Optional[str],
    constants: typing.Optional[str],
    oracle: bool,
) -> None:
    """⁵⁶Fe levels for D = 3 with the tabulated constants."""
    _table(3, fmt, out, constants, oracle)


@cli.command()
@table_options
def table2(
    fmt: typing.Optional[str],
    out: typing.Optional[str],
    constants: typing.Optional[str],
    oracle: bool,
) -> None:
    """⁵⁶Fe levels for D = 4 with the tabulated constants."""
    _table(4, fmt, out, constants, oracle)


@cli.command()
@run_options
def curves(**options: typing.Any) -> None:
    """Write effective-potential curves and ground-state wavefunctions as CSV.

    Files are named potential_D<D>_l<l>.csv and wavefunction_D<D>_l<l>.csv. Without
    --l or --scan-l, l runs from 1 to 8.
    """
    try:
        cfg = _load(options, default_l=DEFAULT_CURVE_L)
    except ConfigError as exc:
        _fail(exc)
    p = cfg.params
    directory = cfg.out or "."
    r_max = max(CURVE_R_MAX, p.R0 + CURVE_R_MAX * p.a)
    ground_states = sorted(
        {c.with_nr(0) for c in cfg.channels}, key=lambda c: (c.D, c.l)
    )
    try:
        os.makedirs(directory, exist_ok=True)
        for c in ground_states:
            stem = "D{}_l{}.csv".format(c.D, c.l)
            path = os.path.join(directory, "potential_" + stem)
            curve = potential_curve(p, c, CURVE_R_MIN, r_max, cfg.curve_points)
            _write(path, curve_to_csv(curve))
            click.echo(path)

            w = solve_channels(p, [c], cfg.measure)[0].wavefunction
            if w is None:
                logger.warning("no normalizable wavefunction for %s", c)
                continue
            path = os.path.join(directory, "wavefunction_" + stem)
            _write(path, curve_to_csv(sample_curve(w, cfg.curve_points, Coordinate.Z)))
            click.echo(path)
    except OSError as exc:
        _fail(exc)


@cli.command()
@run_options
@click.option(
    "--hamiltonian",
    "hamiltonian",
    type=click.Choice([h.value for h in Hamiltonian]),
    default=Hamiltonian.PEKERIS_APPROX.value,
    show_default=True,
)
@click.option("--step", "step", type=float, default=None, help="Grid spacing in fm.")
def oracle(
    hamiltonian: str, step: typing.Optional[float], **options: typing.Any
) -> None:
    """Solve channels by Numerov shooting next to their closed-form energies."""
    try:
        cfg = _load(options)
    except ConfigError as exc:
        _fail(exc)
    which = Hamiltonian(hamiltonian)
    shooting = ShootingConfig(step=step)
    rows = []
    for solution in solve_channels(cfg.params, cfg.channels, cfg.measure):
        c = solution.channel
        try:
            result = shoot(which, cfg.params, c, solution.expansion, shooting)
        except WSSpectraError as exc:
            row = OracleRow.create(c, which.value, solution.energy, error=str(exc))
        else:
            row = OracleRow.create(c, which.value, solution.energy, result)
        rows.append(row)
    _emit(render_rows(cfg.output_format, cfg.params, rows, OracleRow._fields), cfg.out)
