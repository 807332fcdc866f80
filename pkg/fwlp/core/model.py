from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
import scipy.sparse as sp

from fwlp.constants import (DEFAULT_MAX_ITERS, DEFAULT_REFRESH_PERIOD,
                            DEFAULT_TOL, DRIFT_TOLERANCE)
from fwlp.lib.checks import (check_counts, check_finite, check_length,
                             check_positive, check_start)
from fwlp.lib.errors import InvalidParameterError
from fwlp.lib.types import IndexVector, Vector


@dataclass(frozen=True, eq=False)
class StandardFormLP:
    """minimize cᵀx subject to Ax = b, x >= 0.

    A is held in CSC form so a single column costs time proportional to its
    nonzeros. A CSR copy of Aᵀ is built lazily for reduced-cost products.
    """
    A: sp.csc_matrix
    b: Vector
    c: Vector

    def __post_init__(self) -> None:
        A = sp.csc_matrix(self.A, dtype=np.float64)
        A.sum_duplicates()
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", np.asarray(self.b, dtype=np.float64))
        object.__setattr__(self, "c", np.asarray(self.c, dtype=np.float64))

    @property
    def nrows(self) -> int:
        return self.A.shape[0]

    @property
    def ncols(self) -> int:
        return self.A.shape[1]

    @cached_property
    def AT(self) -> sp.csr_matrix:
        return sp.csr_matrix(self.A.T)

    @cached_property
    def column_norms(self) -> Vector:
        """‖a_j‖₁ for every column."""
        return np.asarray(abs(self.A).sum(axis=0), dtype=np.float64).ravel()

    def column(self, j: int) -> tuple[IndexVector, Vector]:
        start, end = self.A.indptr[j], self.A.indptr[j + 1]
        return self.A.indices[start:end], self.A.data[start:end]

    def matvec(self, x: Vector) -> Vector:
        return np.asarray(self.A @ x, dtype=np.float64)

    def rmatvec(self, y: Vector) -> Vector:
        return np.asarray(self.AT @ y, dtype=np.float64)

    def reduced_costs(self, y: Vector, cols: IndexVector | None = None) -> Vector:
        """c - Aᵀy, optionally only for the columns in `cols`.

        Each entry is computed the same way whether or not a subset is given,
        so screened and dense scans see bit-identical values.
        """
        if cols is None:
            return self.c - self.AT @ y
        return self.c[cols] - self.AT[cols] @ y

    def add_columns(self, target: Vector, cols: IndexVector, weights: Vector) -> None:
        """target += Σ weights[t]·a_{cols[t]}, touching only those columns."""
        for j, w in zip(cols, weights):
            rows, vals = self.column(int(j))
            target[rows] += w * vals

    @classmethod
    def from_dense(cls, A, b, c) -> StandardFormLP:
        return cls(sp.csc_matrix(np.atleast_2d(np.asarray(A, dtype=np.float64))),
                   np.asarray(b, dtype=np.float64), np.asarray(c, dtype=np.float64))


def validate(problem: StandardFormLP) -> None:
    """Raise on the first dimensional or finiteness violation."""
    m, n = problem.A.shape
    if m < 1:
        raise InvalidParameterError("nrows", m, ">= 1")
    if n < 1:
        raise InvalidParameterError("ncols", n, ">= 1")
    check_length("b", problem.b, m)
    check_length("c", problem.c, n)
    check_finite("A", problem.A.data)
    check_finite("b", problem.b)
    check_finite("c", problem.c)


def drift_tolerance(problem: StandardFormLP) -> float:
    return DRIFT_TOLERANCE * (1.0 + float(np.max(np.abs(problem.b))))


@dataclass
class SolverParams:
    xi: float
    eta: float
    max_iters: int = DEFAULT_MAX_ITERS
    refresh_period: int = DEFAULT_REFRESH_PERIOD
    screening_enabled: bool = False
    trace_every: int = 1
    tol: float = DEFAULT_TOL
    verify_bounds: bool = False

    def __post_init__(self) -> None:
        check_positive(xi=self.xi, eta=self.eta)
        check_counts(max_iters=self.max_iters)
        if self.refresh_period < 1:
            raise InvalidParameterError("refresh_period", self.refresh_period, ">= 1")
        if self.trace_every < 1:
            raise InvalidParameterError("trace_every", self.trace_every, ">= 1")
        if self.tol < 0:
            raise InvalidParameterError("tol", self.tol, ">= 0")


@dataclass
class SolverState:
    """Iterate (x_k, y_k) at iteration k.

    x is stored as scale·x_hat so an FWLP step only rescales one float and
    touches a single entry of x_hat. ax caches A·x and is refreshed every
    refresh_period iterations.
    """
    k: int
    x_hat: Vector
    y: Vector
    ax: Vector
    scale: float = 1.0
    r_idx: IndexVector = field(default_factory=lambda: np.empty(0, dtype=np.intp))
    r_val: Vector = field(default_factory=lambda: np.empty(0, dtype=np.float64))
    s_last: Vector = field(default_factory=lambda: np.empty(0, dtype=np.float64))
    touches: int = 0

    @classmethod
    def initial(cls, problem: StandardFormLP, x0: Vector | None = None, y0: Vector | None = None) -> SolverState:
        m, n = problem.nrows, problem.ncols
        x = np.zeros(n) if x0 is None else np.array(x0, dtype=np.float64)
        y = np.zeros(m) if y0 is None else np.array(y0, dtype=np.float64)
        check_start(x, y, n, m)
        return cls(k=1, x_hat=x, y=y, ax=problem.matvec(x), s_last=np.zeros(m))

    @property
    def x(self) -> Vector:
        return self.scale * self.x_hat

    @property
    def r_last(self) -> Vector:
        r = np.zeros(self.x_hat.shape[0])
        r[self.r_idx] = self.r_val
        return r

    def rescale(self, factor: float) -> None:
        """Multiply x (and its cached product) by factor."""
        self.scale *= factor
        self.ax *= factor

    def add_to_x(self, idx: IndexVector, values: Vector) -> None:
        self.x_hat[idx] += values / self.scale

    def cache_drift(self, problem: StandardFormLP) -> float:
        return float(np.max(np.abs(self.ax - problem.matvec(self.x))))

    def copy(self) -> SolverState:
        return SolverState(self.k, self.x_hat.copy(), self.y.copy(), self.ax.copy(), self.scale,
                           self.r_idx.copy(), self.r_val.copy(), self.s_last.copy(), self.touches)


def refresh_cache(state: SolverState, problem: StandardFormLP) -> SolverState:
    """Fold scale into x and recompute A·x exactly."""
    state.x_hat = state.x
    state.scale = 1.0
    state.ax = problem.matvec(state.x_hat)
    return state
