"""Serialization of result rows and curves to CSV, JSON and a plain-text table."""

import csv
import enum
import io
import json
import typing

import numpy as np

from .utils import Coordinate, Curve, format_number, round_significant

if typing.TYPE_CHECKING:
    from wsspectra.nu import ChannelSolution  # pragma: nocover
    from wsspectra.numerov import OracleResult  # pragma: nocover
    from wsspectra.potential import ChannelSpec, PotentialParams  # pragma: nocover


class OutputFormat(str, enum.Enum):
    JSON = "json"
    CSV = "csv"
    PRETTY = "pretty"


def _finite(value: typing.Optional[float]) -> typing.Optional[float]:
    return value if value is not None and np.isfinite(value) else None


def _cell(value: typing.Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, str)):
        return str(value)
    return format_number(value)


def _json_value(value: typing.Any) -> typing.Any:
    return round_significant(value) if isinstance(value, float) else value


class TableRow(typing.NamedTuple):
    """One serialized channel. Field order is the column order of every format."""

    nr: int
    l: int  # noqa: E741
    D: int
    r_l: typing.Optional[float]
    veff_min: typing.Optional[float]
    energy: typing.Optional[float]
    status: str
    norm: typing.Optional[float]
    epsilon: typing.Optional[float]
    eta: typing.Optional[float]
    normalizable: typing.Optional[bool]
    susy_energy: typing.Optional[float]
    oracle_energy: typing.Optional[float]
    pekeris_error: typing.Optional[float]

    @classmethod
    def from_solution(cls, s: "ChannelSolution") -> "TableRow":
        px = s.expansion
        w = s.wavefunction
        t = s.triple
        return cls(
            nr=s.channel.nr,
            l=s.channel.l,
            D=s.channel.D,
            r_l=_finite(px.r_l) if px is not None else None,
            veff_min=_finite(px.veff_min) if px is not None else None,
            energy=_finite(s.energy),
            status=s.status.value,
            norm=w.norm_const if w is not None else None,
            epsilon=_finite(t.epsilon) if t is not None else None,
            eta=_finite(t.eta) if t is not None else None,
            normalizable=t.normalizable if t is not None else None,
            susy_energy=s.susy_energy,
            oracle_energy=s.oracle.energy if s.oracle is not None else None,
            pekeris_error=s.pekeris_error,
        )


class OracleRow(typing.NamedTuple):
    """One shooting run next to the closed form it checks."""

    nr: int
    l: int  # noqa: E741
    D: int
    hamiltonian: str
    closed_form: typing.Optional[float]
    energy: typing.Optional[float]
    node_count: typing.Optional[int]
    matching_residual: typing.Optional[float]
    converged: typing.Optional[bool]
    error: str

    @classmethod
    def create(
        cls,
        c: "ChannelSpec",
        hamiltonian: str,
        closed_form: typing.Optional[float],
        result: typing.Optional["OracleResult"] = None,
        error: str = "",
    ) -> "OracleRow":
        return cls(
            nr=c.nr,
            l=c.l,
            D=c.D,
            hamiltonian=hamiltonian,
            closed_form=_finite(closed_form),
            energy=result.energy if result is not None else None,
            node_count=result.node_count if result is not None else None,
            matching_residual=result.matching_residual if result is not None else None,
            converged=result.converged if result is not None else None,
            error=error,
        )


Row = typing.Union[TableRow, OracleRow]

COLUMNS = TableRow._fields


def _write_csv(
    header: typing.Sequence[str], rows: typing.Iterable[typing.Sequence[str]]
) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def rows_to_csv(
    rows: typing.Sequence[Row], columns: typing.Sequence[str] = COLUMNS
) -> str:
    return _write_csv(columns, ([_cell(value) for value in row] for row in rows))


def rows_to_json(params: "PotentialParams", rows: typing.Sequence[Row]) -> str:
    """One document holding the well, the constants it was solved with and the rows."""
    constants = params.constants
    document = {
        "params": {"V0": params.V0, "R0": params.R0, "a": params.a, "mu": params.mu},
        "constants": {"hbar_c": constants.hbar_c, "amu_c2": constants.amu_c2},
        "rows": [
            {key: _json_value(value) for key, value in row._asdict().items()}
            for row in rows
        ],
    }
    return json.dumps(document, indent=2, allow_nan=False) + "\n"


def rows_to_pretty(
    rows: typing.Sequence[Row], columns: typing.Sequence[str] = COLUMNS
) -> str:
    table = [list(columns)] + [[_cell(value) or "-" for value in row] for row in rows]
    widths = [max(len(line[i]) for line in table) for i in range(len(columns))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(line, widths)) for line in table]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def render_rows(
    fmt: OutputFormat,
    params: "PotentialParams",
    rows: typing.Sequence[Row],
    columns: typing.Sequence[str] = COLUMNS,
) -> str:
    if fmt is OutputFormat.JSON:
        return rows_to_json(params, rows)
    if fmt is OutputFormat.CSV:
        return rows_to_csv(rows, columns)
    return rows_to_pretty(rows, columns)


def render(
    fmt: OutputFormat,
    params: "PotentialParams",
    solutions: typing.Sequence["ChannelSolution"],
) -> str:
    return render_rows(fmt, params, [TableRow.from_solution(s) for s in solutions])


CURVE_HEADERS = {Coordinate.R: ("r", "V_eff"), Coordinate.Z: ("z", "u")}


def curve_to_csv(curve: Curve) -> str:
    return _write_csv(
        CURVE_HEADERS[curve.coordinate],
        ((format_number(x), format_number(y)) for x, y in curve.pairs()),
    )


def curve_from_csv(text: str, coordinate: Coordinate) -> Curve:
    """Reads back a two-column curve written by curve_to_csv."""
    reader = csv.reader(io.StringIO(text))
    next(reader)
    pairs = [(float(x), float(y)) for x, y in reader]
    x, y = (np.array(column, dtype=float) for column in zip(*pairs))
    return Curve(coordinate, x, y)
