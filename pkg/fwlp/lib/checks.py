import numpy as np

from fwlp.lib.errors import (DimensionMismatchError, InvalidParameterError,
                             InvalidStartPointError, NonFiniteEntryError)


def check_length(name: str, values: np.ndarray, expected: int) -> None:
    if values.ndim != 1 or values.shape[0] != expected:
        raise DimensionMismatchError(name, expected, values.size)

def check_finite(name: str, values: np.ndarray) -> None:
    bad = np.flatnonzero(~np.isfinite(values))
    if bad.size:
        raise NonFiniteEntryError(name, int(bad[0]))

def check_positive(**params: float) -> None:
    for name, value in params.items():
        if not value > 0:
            raise InvalidParameterError(name, value, "> 0")

def check_counts(**params: int) -> None:
    for name, value in params.items():
        if value < 0:
            raise InvalidParameterError(name, value, ">= 0")

def check_start(x0: np.ndarray, y0: np.ndarray, n: int, m: int) -> None:
    check_length("x0", x0, n)
    check_length("y0", y0, m)
    check_finite("x0", x0)
    check_finite("y0", y0)
    if np.any(x0 < 0):
        raise InvalidStartPointError(f"x0 has a negative entry at position {int(np.argmin(x0))}!")

def check_in_box(y0: np.ndarray, eta: float) -> None:
    if y0.size and np.max(np.abs(y0)) > eta:
        raise InvalidStartPointError(f"y0 leaves the box [-{eta}, {eta}], screening bounds need y0 inside!")
