"""End-to-end runs checking the guarantees the solvers are built around."""
import numpy as np
import pytest

from fwlp.core.fwlp import run_fwlp
from fwlp.core.fwlpp import run_fwlpp
from fwlp.core.model import SolverParams
from tests.helpers.instances import (dominant_block, generated, one_by_one,
                                     one_by_one_params)


@pytest.fixture(scope="module", params=range(20))
def verified_run(request):
    instance, params = generated(request.param)
    params.max_iters = 1000
    params.tol = 0.0
    params.verify_bounds = True
    return run_fwlpp(instance.problem, params)


def test_recursion_identity(verified_run):
    records = verified_run.records
    assert [r.k for r in records] == list(range(3, 1001))
    previous = [verified_run.u2] + [r.U for r in records[:-1]]
    for record, u in zip(records, previous):
        assert abs(record.recursion_residual) <= 1e-8 * (1 + abs(u)), record.k


def test_no_bound_violations(verified_run):
    # Covers the envelope, the ε and δ floors, the certificate and the gap relation.
    assert verified_run.violations == []


def test_gap_never_exceeds_potential(verified_run):
    for record in verified_run.records:
        assert record.gap <= record.U + 1e-9 * (1 + abs(record.U))
        assert record.M >= record.U - 1e-9 * (1 + abs(record.U))


@pytest.mark.parametrize("seed", range(10))
def test_screening_does_not_change_fwlp(seed):
    instance, params = generated(seed, 15, 30)
    params.max_iters = 10_000
    params.trace_every = 500
    params.tol = 0.0
    dense = run_fwlp(instance.problem, params)
    params.screening_enabled = True
    lazy = run_fwlp(instance.problem, params)

    assert len(dense.states) == len(lazy.states)
    for a, b in zip(dense.states, lazy.states):
        assert np.array_equal(a.r_idx, b.r_idx)
        np.testing.assert_allclose(a.x, b.x, rtol=0, atol=1e-12)
        np.testing.assert_allclose(a.y, b.y, rtol=0, atol=1e-12)
    np.testing.assert_allclose(dense.final.x, lazy.final.x, rtol=0, atol=1e-12)
    np.testing.assert_allclose(dense.final.y, lazy.final.y, rtol=0, atol=1e-12)
    assert lazy.final.touches <= dense.final.touches


def test_screening_pays_off_on_a_dominant_block():
    n = 10_000
    problem = dominant_block(n)
    params = SolverParams(xi=2.0, eta=2.0, max_iters=10_000, trace_every=1000, tol=0.0, screening_enabled=True)
    trace = run_fwlp(problem, params)
    touches = {r.k: r.touch_count for r in trace.records}
    assert (touches[10_000] - touches[1000]) / 9000 < 0.1 * n


def test_fwlp_on_one_by_one():
    trace = run_fwlp(one_by_one(), one_by_one_params(max_iters=100_000, trace_every=1000, tol=0.0))
    record = trace.records[-1]
    assert record.k == 100_000
    assert record.primal_infeas <= 0.05
    assert abs(record.gap) <= 0.1


def test_fwlpp_on_one_by_one():
    trace = run_fwlpp(one_by_one(), one_by_one_params(max_iters=10_000, trace_every=1000, tol=0.0))
    assert abs(trace.final.x[0] - 1.0) <= 0.1
    assert abs(trace.final.y[0] - 1.0) <= 0.1


def _slope(records) -> float:
    k = np.array([r.k for r in records], dtype=np.float64)
    error = np.array([max(r.primal_infeas, r.dual_infeas, abs(r.gap)) for r in records])
    return float(np.polyfit(np.log(k), np.log(error), 1)[0])


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(3))
def test_fwlpp_converges_at_square_root_rate(seed):
    instance, params = generated(seed)
    params.max_iters = 1_000_000
    params.trace_every = 10_000
    params.tol = 0.0
    params.verify_bounds = True
    trace = run_fwlpp(instance.problem, params)
    assert trace.violations == []
    assert -1.1 <= _slope(trace.records) <= -0.35


@pytest.mark.slow
def test_fwlp_gap_trends_down():
    instance, params = generated(0)
    params.max_iters = 1_000_000
    params.trace_every = 1000
    params.tol = 0.0
    trace = run_fwlp(instance.problem, params)
    gaps = np.array([abs(r.gap) for r in trace.records])
    first = gaps[(np.array([r.k for r in trace.records]) <= 10_000)]
    assert np.median(gaps[-len(first):]) < np.median(first)
