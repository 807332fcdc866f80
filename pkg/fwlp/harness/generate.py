"""Random standard-form LPs with a known primal-dual optimal pair."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from fwlp.constants import GENERATOR_CONDITION_LIMIT, GENERATOR_RETRY_LIMIT
from fwlp.core.model import StandardFormLP
from fwlp.lib.checks import check_positive
from fwlp.lib.errors import (InvalidParameterError,
                             RankDeficiencyRetryLimitError)
from fwlp.lib.log import logger
from fwlp.lib.types import IndexVector, Vector


@dataclass
class GeneratedInstance:
    problem: StandardFormLP
    x_star: Vector
    y_star: Vector
    support: IndexVector

    @property
    def xi_min(self) -> float:
        return 2.0 * float(np.sum(np.abs(self.x_star)))

    @property
    def eta_min(self) -> float:
        return 2.0 * float(np.max(np.abs(self.y_star)))


def _sample_matrix(rng: np.random.Generator, m: int, n: int, density: float,
                   support: IndexVector) -> sp.csc_matrix:
    rows, cols = np.nonzero(rng.random((m, n)) < density)
    A = sp.coo_matrix((rng.uniform(-1.0, 1.0, rows.size), (rows, cols)), shape=(m, n))
    # One guaranteed entry per support column, each in a different row.
    pivots = rng.permutation(m)
    vals = rng.uniform(1.0, 2.0, m) * rng.choice([-1.0, 1.0], m)
    forced = sp.coo_matrix((vals, (pivots, support)), shape=(m, n))
    return sp.csc_matrix(A + forced)


def _well_conditioned(block: np.ndarray) -> bool:
    """Rank test by residual: A_S z = e must be solvable to near machine precision."""
    ones = np.ones(block.shape[0])
    z, *_ = np.linalg.lstsq(block, ones, rcond=None)
    residual = float(np.max(np.abs(block @ z - ones)))
    return residual <= 1e-8 and np.linalg.cond(block) < GENERATOR_CONDITION_LIMIT


def generate_instance(seed: int, m: int, n: int, density: float, value_scale: float = 1.0) -> GeneratedInstance:
    """Sample A, a support S of size m and (x*, y*) that are optimal by construction.

    b = A x*, c_S = (Aᵀy*)_S, and c_j exceeds (Aᵀy*)_j by a positive slack off S.
    """
    if m < 1:
        raise InvalidParameterError("m", m, ">= 1")
    if n <= m:
        raise InvalidParameterError("n", n, f"> m = {m}")
    if not 0 < density <= 1:
        raise InvalidParameterError("density", density, "in (0, 1]")
    check_positive(value_scale=value_scale)

    rng = np.random.default_rng(seed)
    for attempt in range(1, GENERATOR_RETRY_LIMIT + 1):
        support = np.sort(rng.choice(n, size=m, replace=False)).astype(np.intp)
        A = _sample_matrix(rng, m, n, density, support)
        if _well_conditioned(A[:, support].toarray()):
            break
        logger.debug(f"Support block rank-deficient on attempt {attempt}, resampling.")
    else:
        raise RankDeficiencyRetryLimitError(GENERATOR_RETRY_LIMIT)

    x_star = np.zeros(n)
    x_star[support] = rng.uniform(0.5, 1.5, m) * value_scale
    y_star = rng.uniform(-1.0, 1.0, m) * value_scale
    problem = StandardFormLP(A, np.zeros(m), np.zeros(n))
    b = problem.matvec(x_star)
    c = problem.rmatvec(y_star)
    off = np.ones(n, dtype=bool)
    off[support] = False
    c[off] += rng.uniform(0.1, 1.0, int(off.sum())) * value_scale
    return GeneratedInstance(StandardFormLP(problem.A, b, c), x_star, y_star, support)
