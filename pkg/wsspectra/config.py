"""Run configuration: flat ``key = value`` files, constants overrides and presets."""

import logging
import os
import typing

from .exceptions import ConfigError, ParameterError
from .output import OutputFormat
from .potential import (
    CODATA_2018,
    TABULATED,
    ChannelSpec,
    PhysicalConstants,
    PotentialParams,
)
from .utils import split_range
from .wavefunction import NormalizationMeasure

logger = logging.getLogger(__name__)

CONSTANTS_ENV_VAR = "WS_SPECTRA_CONSTANTS"
DEFAULT_CURVE_POINTS = 200

# ⁵⁶Fe, the worked example of the published tables.
IRON_56 = {"V0": 47.78, "R0": 4.9162, "a": 0.65, "mu": 0.990814}

CONSTANT_PRESETS = {"codata2018": CODATA_2018, "tabulated": TABULATED}

TABLE_CHANNELS = {
    3: [(0, 1), (1, 1), (0, 2), (1, 2), (0, 3), (1, 3), (0, 4), (1, 4)]
    + [(0, 5), (0, 6), (0, 7), (0, 8)],
    4: [(0, 0), (1, 0), (0, 1), (1, 1), (0, 2), (1, 2), (0, 3), (1, 3)]
    + [(0, 4), (1, 4), (0, 5), (0, 6), (0, 7)],
}


def _parse_bool(text: str) -> bool:
    lowered = text.strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise ValueError("expected a boolean, got {!r}".format(text))


def _parse_preset(text: str) -> PhysicalConstants:
    try:
        return CONSTANT_PRESETS[text.strip().lower()]
    except KeyError:
        raise ValueError(
            "unknown preset {!r}, expected one of {}".format(
                text, ", ".join(sorted(CONSTANT_PRESETS))
            )
        ) from None


KEY_PARSERS: typing.Dict[str, typing.Callable[[str], typing.Any]] = {
    "V0": float,
    "R0": float,
    "a": float,
    "mu": float,
    "A": int,
    "D": int,
    "l": int,
    "nr": int,
    "scan_l": split_range,
    "scan_nr": split_range,
    "oracle": _parse_bool,
    "format": OutputFormat,
    "out": str,
    "normalization": NormalizationMeasure,
    "curve_points": int,
    "hbar_c": float,
    "amu_c2": float,
    "preset": _parse_preset,
}

CONSTANT_KEYS = ("preset", "hbar_c", "amu_c2")


class RunConfig(typing.NamedTuple):
    """Everything one CLI invocation needs.

    Args:
        params: The potential well, carrying its constants.
        channels: Channels to solve, ordered by (D, l, nr).
        output_format: Serialization of the result rows.
        out: Output file, or directory for curves; None writes to stdout.
        oracle: Whether to run the numerical oracle per channel.
        measure: Normalization measure of the wavefunctions.
        curve_points: Samples per emitted curve.
    """

    params: PotentialParams
    channels: typing.Tuple[ChannelSpec, ...]
    output_format: OutputFormat = OutputFormat.PRETTY
    out: typing.Optional[str] = None
    oracle: bool = False
    measure: NormalizationMeasure = NormalizationMeasure.ORTHOGONALITY
    curve_points: int = DEFAULT_CURVE_POINTS

    @property
    def constants(self) -> PhysicalConstants:
        return self.params.constants


def parse_key_values(
    text: str,
    source: str = "<config>",
    allowed: typing.Optional[typing.Iterable[str]] = None,
) -> typing.Dict[str, typing.Any]:
    """Parses ``key = value`` lines into typed values.

    Blank lines and ``#`` comments are skipped; later keys override earlier ones.

    Raises:
        ConfigError: Naming the line of a malformed entry, unknown key or bad value.
    """
    allowed_keys = set(KEY_PARSERS if allowed is None else allowed)
    values: typing.Dict[str, typing.Any] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or not key or not value:
            raise ConfigError(
                "{}:{}: expected `key = value`, got {!r}".format(source, lineno, raw)
            )
        if key not in allowed_keys:
            raise ConfigError("{}:{}: unknown key {!r}".format(source, lineno, key))
        try:
            values[key] = KEY_PARSERS[key](value)
        except ValueError as exc:
            raise ConfigError(
                "{}:{}: invalid value for {}: {}".format(source, lineno, key, exc)
            ) from exc
    return values


def parse_overrides(
    raw: typing.Mapping[str, typing.Optional[str]]
) -> typing.Dict[str, typing.Any]:
    """Parses command-line values with the same rules as config file entries.

    Raises:
        ConfigError: Naming the flag with a bad value.
    """
    values: typing.Dict[str, typing.Any] = {}
    for key, text in raw.items():
        if text is None:
            continue
        try:
            values[key] = KEY_PARSERS[key](text)
        except ValueError as exc:
            flag = "--" + key.replace("_", "-")
            raise ConfigError("invalid value for {}: {}".format(flag, exc)) from exc
    return values


def read_key_values(
    path: str, allowed: typing.Optional[typing.Iterable[str]] = None
) -> typing.Dict[str, typing.Any]:
    try:
        with open(path, encoding="utf-8") as f:
            text = f.read()
    except OSError as exc:
        raise ConfigError("Cannot read {}: {}".format(path, exc)) from exc
    return parse_key_values(text, source=path, allowed=allowed)


def constants_from_values(
    values: typing.Mapping[str, typing.Any],
    base: PhysicalConstants = CODATA_2018,
) -> PhysicalConstants:
    """Applies preset, hbar_c and amu_c2 entries on top of base.

    Raises:
        ConfigError: If a resulting constant is not positive.
    """
    constants = values.get("preset", base)
    for key in ("hbar_c", "amu_c2"):
        if key in values:
            constants = constants._replace(**{key: values[key]})
    try:
        constants.check()
    except ParameterError as exc:
        raise ConfigError(str(exc)) from exc
    return typing.cast(PhysicalConstants, constants)


def resolve_constants(
    values: typing.Mapping[str, typing.Any],
    constants_path: typing.Optional[str] = None,
    environ: typing.Optional[typing.Mapping[str, str]] = None,
    default: PhysicalConstants = CODATA_2018,
) -> PhysicalConstants:
    """Picks the constants: --constants file, then run keys, then the env var file."""
    environ = os.environ if environ is None else environ
    if constants_path:
        logger.debug("constants from %s", constants_path)
        return constants_from_values(read_key_values(constants_path, CONSTANT_KEYS))
    if any(key in values for key in CONSTANT_KEYS):
        return constants_from_values(values, default)
    env_path = environ.get(CONSTANTS_ENV_VAR)
    if env_path:
        logger.debug("constants from $%s=%s", CONSTANTS_ENV_VAR, env_path)
        return constants_from_values(read_key_values(env_path, CONSTANT_KEYS))
    return default


def resolve_params(
    values: typing.Mapping[str, typing.Any], constants: PhysicalConstants
) -> PotentialParams:
    """Explicit V0, R0, a, mu win over A-derived values, which win over ⁵⁶Fe.

    Raises:
        ConfigError: If the resulting well is invalid.
    """
    try:
        if "A" in values:
            derived = PotentialParams.from_mass_number(values["A"], constants=constants)
            well = {
                "V0": derived.V0,
                "R0": derived.R0,
                "a": derived.a,
                "mu": derived.mu,
            }
        else:
            well = dict(IRON_56)
        well.update({k: values[k] for k in IRON_56 if k in values})
        return PotentialParams.create(constants=constants, **well)
    except ParameterError as exc:
        raise ConfigError(str(exc)) from exc


def resolve_channels(
    values: typing.Mapping[str, typing.Any]
) -> typing.Tuple[ChannelSpec, ...]:
    """Expands l/scan_l and nr/scan_nr into channels sorted by (D, l, nr).

    Raises:
        ConfigError: If no orbital quantum number is given or a channel is invalid.
    """
    if "scan_l" in values:
        lo, hi = values["scan_l"]
        ls = list(range(lo, hi + 1))
    elif "l" in values:
        ls = [values["l"]]
    else:
        raise ConfigError("No channels given; set l or scan_l")
    if "scan_nr" in values:
        lo, hi = values["scan_nr"]
        nrs = list(range(lo, hi + 1))
    else:
        nrs = [values.get("nr", 0)]
    D = values.get("D", 3)
    try:
        channels = [
            ChannelSpec.create(nr, l, D) for l in ls for nr in nrs  # noqa: E741
        ]
    except ParameterError as exc:
        raise ConfigError(str(exc)) from exc
    return tuple(sorted(set(channels), key=lambda c: (c.D, c.l, c.nr)))


def build_run_config(
    values: typing.Mapping[str, typing.Any],
    constants_path: typing.Optional[str] = None,
    environ: typing.Optional[typing.Mapping[str, str]] = None,
    default_constants: PhysicalConstants = CODATA_2018,
    channels: typing.Optional[typing.Sequence[ChannelSpec]] = None,
) -> RunConfig:
    """Turns merged file and flag values into a validated RunConfig.

    Raises:
        ConfigError: For any invalid or missing setting.
    """
    constants = resolve_constants(values, constants_path, environ, default_constants)
    params = resolve_params(values, constants)
    resolved = tuple(channels) if channels is not None else resolve_channels(values)
    if not resolved:
        raise ConfigError("Channel list is empty")
    curve_points = values.get("curve_points", DEFAULT_CURVE_POINTS)
    if curve_points < 2:
        raise ConfigError(
            "curve_points must be at least 2, got {}".format(curve_points)
        )
    return RunConfig(
        params=params,
        channels=resolved,
        output_format=values.get("format", OutputFormat.PRETTY),
        out=values.get("out"),
        oracle=values.get("oracle", False),
        measure=values.get("normalization", NormalizationMeasure.ORTHOGONALITY),
        curve_points=curve_points,
    )


def table_preset(
    D: int,
    overrides: typing.Optional[typing.Mapping[str, typing.Any]] = None,
    constants_path: typing.Optional[str] = None,
    environ: typing.Optional[typing.Mapping[str, str]] = None,
) -> RunConfig:
    """The ⁵⁶Fe table runs for D = 3 or 4, with tabulated constants and norms.

    Raises:
        ConfigError: If D has no table.
    """
    if D not in TABLE_CHANNELS:
        raise ConfigError("No table preset for D={}".format(D))
    values: typing.Dict[str, typing.Any] = {
        "normalization": NormalizationMeasure.TABULATED
    }
    values.update(overrides or {})
    channels = [ChannelSpec(nr, l, D) for nr, l in TABLE_CHANNELS[D]]  # noqa: E741
    channels.sort(key=lambda c: (c.D, c.l, c.nr))
    return build_run_config(
        values,
        constants_path=constants_path,
        environ=environ,
        default_constants=TABULATED,
        channels=channels,
    )
