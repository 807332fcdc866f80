from enum import StrEnum

import numpy as np
import numpy.typing as npt

Vector = npt.NDArray[np.float64]
IndexVector = npt.NDArray[np.intp]
Index = int


class Algorithm(StrEnum):
    FWLP = "fwlp"
    FWLPP = "fwlp-p"

class RunStatus(StrEnum):
    CONVERGED = "converged"
    BUDGET = "budget"

class RowKind(StrEnum):
    N = "N"
    E = "E"
    L = "L"
    G = "G"
