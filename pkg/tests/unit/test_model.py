import numpy as np
import pytest
import scipy.sparse as sp

from fwlp.core.model import (SolverParams, SolverState, StandardFormLP,
                             drift_tolerance, refresh_cache, validate)
from fwlp.lib.errors import (DimensionMismatchError, InvalidParameterError,
                             InvalidStartPointError, NonFiniteEntryError)


def make(m: int = 2, n: int = 3) -> StandardFormLP:
    return StandardFormLP.from_dense(np.arange(m * n, dtype=float).reshape(m, n), np.ones(m), np.ones(n))


def test_validate_accepts_consistent_dimensions():
    validate(make())


def test_validate_rejects_long_b():
    problem = StandardFormLP(sp.csc_matrix(np.ones((2, 3))), np.ones(3), np.ones(3))
    with pytest.raises(DimensionMismatchError):
        validate(problem)


def test_validate_rejects_nan_in_c():
    problem = StandardFormLP.from_dense(np.ones((2, 3)), np.ones(2), [1.0, np.nan, 1.0])
    with pytest.raises(NonFiniteEntryError, match="position 1"):
        validate(problem)


def test_validate_rejects_infinite_matrix_entry():
    problem = StandardFormLP.from_dense([[1.0, np.inf]], [1.0], [1.0, 1.0])
    with pytest.raises(NonFiniteEntryError):
        validate(problem)


def test_validate_rejects_empty_problem():
    problem = StandardFormLP(sp.csc_matrix((0, 2)), np.zeros(0), np.ones(2))
    with pytest.raises(InvalidParameterError):
        validate(problem)


def test_column_access_matches_dense():
    problem = make()
    rows, vals = problem.column(2)
    dense = np.zeros(problem.nrows)
    dense[rows] = vals
    assert np.array_equal(dense, problem.A.toarray()[:, 2])


def test_column_norms_are_one_norms():
    problem = StandardFormLP.from_dense([[1.0, -2.0], [-3.0, 0.0]], [0.0, 0.0], [0.0, 0.0])
    assert np.array_equal(problem.column_norms, [4.0, 2.0])


def test_subset_reduced_costs_are_bit_identical():
    rng = np.random.default_rng(3)
    dense = rng.normal(size=(15, 40)) * (rng.random((15, 40)) < 0.3)
    problem = StandardFormLP.from_dense(dense, rng.normal(size=15), rng.normal(size=40))
    y = rng.normal(size=15)
    cols = np.array([1, 7, 8, 30], dtype=np.intp)
    assert np.array_equal(problem.reduced_costs(y)[cols], problem.reduced_costs(y, cols))


def test_add_columns_matches_product():
    problem = make(3, 4)
    target = np.zeros(3)
    problem.add_columns(target, np.array([0, 3]), np.array([0.5, 2.0]))
    x = np.array([0.5, 0.0, 0.0, 2.0])
    assert np.allclose(target, problem.matvec(x))


@pytest.mark.parametrize("settings", [
    {"xi": 0.0, "eta": 1.0},
    {"xi": 1.0, "eta": -1.0},
    {"xi": 1.0, "eta": 1.0, "max_iters": -1},
    {"xi": 1.0, "eta": 1.0, "refresh_period": 0},
    {"xi": 1.0, "eta": 1.0, "trace_every": 0},
    {"xi": 1.0, "eta": 1.0, "tol": -1e-3},
])
def test_params_reject_bad_values(settings):
    with pytest.raises(InvalidParameterError):
        SolverParams(**settings)


def test_initial_state_defaults_to_origin():
    state = SolverState.initial(make())
    assert state.k == 1
    assert not state.x.any() and not state.y.any() and not state.ax.any()


def test_initial_state_rejects_negative_x0():
    with pytest.raises(InvalidStartPointError):
        SolverState.initial(make(), x0=np.array([1.0, -1.0, 0.0]))


def test_initial_state_rejects_wrong_y0_length():
    with pytest.raises(DimensionMismatchError):
        SolverState.initial(make(), y0=np.zeros(5))


def test_refresh_cache_direct_product():
    problem = StandardFormLP.from_dense([[1.0, 2.0]], [0.0], [0.0, 0.0])
    state = SolverState.initial(problem, x0=np.array([1.0, 1.0]))
    refresh_cache(state, problem)
    assert np.array_equal(state.ax, [3.0])


def test_refresh_cache_folds_scale_and_removes_drift():
    problem = make()
    state = SolverState.initial(problem, x0=np.array([1.0, 2.0, 3.0]))
    state.rescale(0.5)
    state.ax += 1e-9
    refresh_cache(state, problem)
    assert state.scale == 1.0
    assert np.array_equal(state.x, [0.5, 1.0, 1.5])
    assert np.array_equal(state.ax, problem.matvec(state.x))
    assert state.cache_drift(problem) == 0.0


def test_refresh_cache_zero_state():
    problem = make()
    state = refresh_cache(SolverState.initial(problem), problem)
    assert not state.ax.any()


def test_refresh_cache_is_idempotent():
    problem = make()
    state = SolverState.initial(problem, x0=np.array([1.0, 0.0, 2.0]))
    state.rescale(2.0 / 3.0)
    once = refresh_cache(state, problem).copy()
    twice = refresh_cache(state, problem)
    assert np.array_equal(once.x_hat, twice.x_hat)
    assert np.array_equal(once.ax, twice.ax)


def test_scaled_updates_track_x():
    problem = make()
    state = SolverState.initial(problem)
    state.rescale(0.5)
    state.add_to_x(np.array([1]), np.array([0.25]))
    assert np.allclose(state.x, [0.0, 0.25, 0.0])


def test_drift_tolerance_scales_with_b():
    problem = StandardFormLP.from_dense([[1.0]], [-4.0], [0.0])
    assert drift_tolerance(problem) == pytest.approx(5e-8)
