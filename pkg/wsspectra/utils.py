import enum
import math
import re
import typing

import numpy as np
from scipy.special import expit

from ._types import ArrayLike, FloatArray, FloatOrArray

RANGE_REGEX = re.compile(r"^\s*(?P<lo>-?\d+)\s*:\s*(?P<hi>-?\d+)\s*$")

SIGNIFICANT_DIGITS = 12


class Coordinate(str, enum.Enum):
    """Abscissa a sampled curve is expressed in."""

    Z = "z"
    R = "r"


class Curve(typing.NamedTuple):
    """Uniformly sampled curve.

    Args:
        coordinate: Which variable the abscissa holds.
        x: Abscissa samples, strictly increasing.
        y: Ordinate samples, same length as ``x``.
    """

    coordinate: Coordinate
    x: FloatArray
    y: FloatArray

    def pairs(self) -> typing.List[typing.Tuple[float, float]]:
        return [(float(x), float(y)) for x, y in zip(self.x, self.y)]

    def __len__(self) -> int:
        return len(self.x)


def logistic(t: FloatOrArray) -> FloatOrArray:
    """Returns 1 / (1 + e^-t) without overflowing for large |t|."""
    return typing.cast(FloatOrArray, expit(t))


def fermi_factor(r: FloatOrArray, R0: float, a: float) -> FloatOrArray:
    """Returns the Woods-Saxon shape 1 / (1 + e^((r - R0) / a))."""
    return logistic(-(np.asarray(r, dtype=float) - R0) / a)


def sign_changes(values: ArrayLike) -> int:
    """Counts strict sign changes in a sequence, skipping exact zeros."""
    arr = np.asarray(values, dtype=float)
    arr = arr[arr != 0.0]
    if arr.size < 2:
        return 0
    return int(np.count_nonzero(np.signbit(arr[1:]) != np.signbit(arr[:-1])))


def relative_difference(a: float, b: float, floor: float = 1.0) -> float:
    return abs(a - b) / max(floor, abs(a), abs(b))


def format_number(value: typing.Optional[float]) -> str:
    """Formats a float at 12 significant digits, empty for missing values."""
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return ""
    return "{:.{}g}".format(value, SIGNIFICANT_DIGITS)


def round_significant(value: typing.Optional[float]) -> typing.Optional[float]:
    """Rounds to 12 significant digits so JSON and CSV carry the same numbers."""
    text = format_number(value)
    return float(text) if text else None


def split_range(text: str) -> typing.Tuple[int, int]:
    """Returns an inclusive (lo, hi) integer range from a string like '1:7'."""
    match = re.match(RANGE_REGEX, text)
    if match is None:
        raise ValueError(
            "Invalid range {!r}, expected two integers separated by a colon, "
            "i.e. `1:7`".format(text)
        )
    lo, hi = int(match.group("lo")), int(match.group("hi"))
    if lo > hi:
        raise ValueError("Invalid range {!r}, lower bound exceeds upper".format(text))
    return lo, hi
