import typing

import numpy as np
import numpy.typing as npt

FloatArray = npt.NDArray[np.float64]
FloatOrArray = typing.Union[float, FloatArray]
ArrayLike = typing.Union[float, typing.Sequence[float], FloatArray]
