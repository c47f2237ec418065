import pathlib

import pytest

from wsspectra import (
    CODATA_2018,
    TABULATED,
    ChannelSpec,
    ConfigError,
    NormalizationMeasure,
)
from wsspectra.config import (
    CONSTANTS_ENV_VAR,
    IRON_56,
    build_run_config,
    constants_from_values,
    parse_key_values,
    parse_overrides,
    read_key_values,
    resolve_channels,
    resolve_constants,
    resolve_params,
    table_preset,
)
from wsspectra.output import OutputFormat


def test_parse_key_values() -> None:
    values = parse_key_values(
        """
        # ⁵⁶Fe p-wave
        V0 = 50.5
        D = 4
        scan_l = 1:3   # inclusive
        oracle = yes
        format = csv
        normalization = tabulated
        V0 = 51
        """
    )
    assert values == {
        "V0": 51.0,
        "D": 4,
        "scan_l": (1, 3),
        "oracle": True,
        "format": OutputFormat.CSV,
        "normalization": NormalizationMeasure.TABULATED,
    }


@pytest.mark.parametrize(
    "text,message",
    [
        ("V0 = 1\nR0 4.0", "run.conf:2: expected `key = value`"),
        ("depth = 40", "run.conf:1: unknown key 'depth'"),
        ("\n\nD = three", "run.conf:3: invalid value for D"),
        ("oracle = maybe", "run.conf:1: invalid value for oracle"),
        ("format = xml", "run.conf:1: invalid value for format"),
        ("V0 =", "run.conf:1: expected `key = value`"),
    ],
)
def test_parse_key_values_errors(text: str, message: str) -> None:
    with pytest.raises(ConfigError) as exc_info:
        parse_key_values(text, source="run.conf")
    assert message in str(exc_info.value)


def test_parse_key_values_restricts_keys() -> None:
    with pytest.raises(ConfigError):
        parse_key_values("V0 = 40", allowed=("hbar_c",))


def test_parse_overrides_names_flag() -> None:
    assert parse_overrides({"l": "2", "nr": None}) == {"l": 2}
    with pytest.raises(ConfigError) as exc_info:
        parse_overrides({"scan_nr": "3:1"})
    assert "--scan-nr" in str(exc_info.value)


def test_read_key_values_missing_file(tmp_path: pathlib.Path) -> None:
    with pytest.raises(ConfigError) as exc_info:
        read_key_values(str(tmp_path / "missing.conf"))
    assert "Cannot read" in str(exc_info.value)


def test_constants_from_values() -> None:
    assert constants_from_values({}) == CODATA_2018
    assert constants_from_values({"preset": TABULATED}) == TABULATED
    custom = constants_from_values({"hbar_c": 197.0}, base=TABULATED)
    assert custom.hbar_c == 197.0 and custom.amu_c2 == TABULATED.amu_c2
    with pytest.raises(ConfigError):
        constants_from_values({"amu_c2": -1.0})


def test_constants_precedence(tmp_path: pathlib.Path) -> None:
    flag_file = tmp_path / "flag.conf"
    flag_file.write_text("amu_c2 = 900\n")
    env_file = tmp_path / "env.conf"
    env_file.write_text("preset = tabulated\nhbar_c = 190\n")
    environ = {CONSTANTS_ENV_VAR: str(env_file)}

    assert resolve_constants({}, environ={}) == CODATA_2018
    from_env = resolve_constants({}, environ=environ)
    assert from_env.hbar_c == 190.0 and from_env.amu_c2 == TABULATED.amu_c2
    from_keys = resolve_constants({"hbar_c": 195.0}, environ=environ)
    assert from_keys.hbar_c == 195.0 and from_keys.amu_c2 == CODATA_2018.amu_c2
    from_file = resolve_constants({"hbar_c": 195.0}, str(flag_file), environ)
    assert from_file.amu_c2 == 900.0 and from_file.hbar_c == CODATA_2018.hbar_c


def test_constants_file_rejects_run_keys(tmp_path: pathlib.Path) -> None:
    path = tmp_path / "constants.conf"
    path.write_text("V0 = 40\n")
    with pytest.raises(ConfigError):
        resolve_constants({}, str(path), environ={})


def test_environment_variable_is_read(
    tmp_path: pathlib.Path, monkeypatch: pytest.MonkeyPatch
) -> None:
    path = tmp_path / "constants.conf"
    path.write_text("preset = tabulated\n")
    monkeypatch.setenv(CONSTANTS_ENV_VAR, str(path))
    assert resolve_constants({}) == TABULATED


def test_resolve_params_precedence() -> None:
    assert resolve_params({}, CODATA_2018)._asdict() == dict(
        IRON_56, constants=CODATA_2018
    )
    lead = resolve_params({"A": 208, "a": 0.7}, CODATA_2018)
    assert lead.V0 == pytest.approx(40.5 + 0.13 * 208)
    assert lead.a == 0.7
    assert resolve_params({"A": 208, "V0": 60.0}, CODATA_2018).V0 == 60.0


@pytest.mark.parametrize("values", [{"V0": -1.0}, {"A": 0}])
def test_resolve_params_invalid(values: dict) -> None:
    with pytest.raises(ConfigError):
        resolve_params(values, CODATA_2018)


def test_resolve_channels() -> None:
    assert resolve_channels({"l": 2}) == (ChannelSpec(0, 2, 3),)
    channels = resolve_channels({"l": 5, "scan_l": (2, 3), "scan_nr": (0, 1), "D": 4})
    assert channels == (
        ChannelSpec(0, 2, 4),
        ChannelSpec(1, 2, 4),
        ChannelSpec(0, 3, 4),
        ChannelSpec(1, 3, 4),
    )


@pytest.mark.parametrize("values", [{}, {"nr": 1}, {"l": 1, "D": 1}, {"l": -1}])
def test_resolve_channels_invalid(values: dict) -> None:
    with pytest.raises(ConfigError):
        resolve_channels(values)


def test_build_run_config_defaults() -> None:
    cfg = build_run_config({"l": 1}, environ={})
    assert cfg.constants == CODATA_2018
    assert cfg.output_format is OutputFormat.PRETTY
    assert cfg.measure is NormalizationMeasure.ORTHOGONALITY
    assert cfg.out is None and not cfg.oracle
    assert cfg.curve_points == 200


def test_build_run_config_errors() -> None:
    with pytest.raises(ConfigError):
        build_run_config({"l": 1, "curve_points": 1}, environ={})
    with pytest.raises(ConfigError):
        build_run_config({}, environ={}, channels=[])


@pytest.mark.parametrize("D,rows", [(3, 12), (4, 13)])
def test_table_preset(D: int, rows: int) -> None:
    cfg = table_preset(D, environ={})
    assert cfg.constants == TABULATED
    assert cfg.measure is NormalizationMeasure.TABULATED
    assert len(cfg.channels) == rows
    assert list(cfg.channels) == sorted(cfg.channels, key=lambda c: (c.l, c.nr))
    assert {c.D for c in cfg.channels} == {D}


def test_table_preset_overrides() -> None:
    cfg = table_preset(3, {"format": OutputFormat.JSON, "oracle": True}, environ={})
    assert cfg.output_format is OutputFormat.JSON and cfg.oracle
    with pytest.raises(ConfigError):
        table_preset(5, environ={})
