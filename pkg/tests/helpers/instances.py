"""Small problem builders shared by unit and integration tests."""
from __future__ import annotations

import numpy as np
import scipy.sparse as sp

from fwlp.core.model import SolverParams, StandardFormLP
from fwlp.harness.generate import GeneratedInstance, generate_instance


def one_by_one() -> StandardFormLP:
    """min x s.t. x = 1, x >= 0; the unique optimum is x* = y* = 1."""
    return StandardFormLP.from_dense([[1.0]], [1.0], [1.0])


def one_by_one_params(**overrides) -> SolverParams:
    settings = {"xi": 2.0, "eta": 2.0, "max_iters": 10, "trace_every": 1}
    settings.update(overrides)
    return SolverParams(**settings)


def random_dense(seed: int, m: int, n: int) -> StandardFormLP:
    """Dense Gaussian data with no particular structure."""
    rng = np.random.default_rng(seed)
    return StandardFormLP.from_dense(rng.normal(size=(m, n)), rng.normal(size=m), rng.normal(size=n))


def generated(seed: int, m: int = 10, n: int = 20, density: float = 0.5) -> tuple[GeneratedInstance, SolverParams]:
    instance = generate_instance(seed, m, n, density)
    return instance, SolverParams(xi=instance.xi_min, eta=instance.eta_min)


def dominant_block(n: int, block: int = 10) -> StandardFormLP:
    """min cᵀx s.t. Σx = 1 where a small leading block of columns is far cheaper than the rest."""
    c = np.full(n, 100.0) + 1e-3 * np.arange(n)
    c[:block] = -1.0 + 0.01 * np.arange(block)
    A = sp.csc_matrix(np.ones((1, n)))
    return StandardFormLP(A, np.array([1.0]), c)
