import math

import numpy as np
import pytest

from wsspectra.utils import (
    Coordinate,
    Curve,
    fermi_factor,
    format_number,
    logistic,
    relative_difference,
    round_significant,
    sign_changes,
    split_range,
)


@pytest.mark.parametrize(
    "text,expected",
    [("1:7", (1, 7)), (" 0 : 0 ", (0, 0)), ("-2:3", (-2, 3)), ("4:12", (4, 12))],
)
def test_split_range(text: str, expected: tuple) -> None:
    assert split_range(text) == expected


@pytest.mark.parametrize("text", ["", "1", "1:", "a:b", "1:2:3", "1-7", "7:1"])
def test_split_range_invalid_raises(text: str) -> None:
    with pytest.raises(ValueError):
        split_range(text)


@pytest.mark.parametrize(
    "value,expected",
    [
        (None, ""),
        (float("nan"), ""),
        (0.0, "0"),
        (-42.8980494, "-42.8980494"),
        (1.0 / 3.0, "0.333333333333"),
        (123456789012345.0, "1.23456789012e+14"),
    ],
)
def test_format_number(value: float, expected: str) -> None:
    assert format_number(value) == expected


def test_round_significant_matches_format_number() -> None:
    value = -164.00836912345678
    assert round_significant(value) == float(format_number(value))
    assert round_significant(None) is None


@pytest.mark.parametrize(
    "values,expected",
    [
        ([], 0),
        ([1.0], 0),
        ([1.0, 2.0, 3.0], 0),
        ([1.0, -1.0, 1.0], 2),
        ([1.0, 0.0, -1.0], 1),
        ([0.0, 0.0, 0.0], 0),
        ([-1.0, 0.0, 0.0, 2.0, -3.0], 2),
    ],
)
def test_sign_changes(values: list, expected: int) -> None:
    assert sign_changes(values) == expected


def test_logistic_does_not_overflow() -> None:
    values = logistic(np.array([-1000.0, 0.0, 1000.0]))
    assert list(values) == [0.0, 0.5, 1.0]


def test_fermi_factor_is_one_half_at_radius() -> None:
    assert fermi_factor(4.0, 4.0, 0.5) == 0.5
    assert fermi_factor(4.5, 4.0, 0.5) == pytest.approx(1.0 / (1.0 + math.e))


def test_relative_difference_uses_floor() -> None:
    assert relative_difference(1e-3, 2e-3) == pytest.approx(1e-3)
    assert relative_difference(100.0, 101.0) == pytest.approx(1.0 / 101.0)


def test_curve_pairs() -> None:
    curve = Curve(Coordinate.Z, np.array([0.0, 1.0]), np.array([2.0, 3.0]))
    assert len(curve) == 2
    assert curve.pairs() == [(0.0, 2.0), (1.0, 3.0)]
