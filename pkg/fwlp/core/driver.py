"""Shared iteration loop for both solvers.

The potential U_k needs r_{k+1}, which only exists once step k has run, so the
driver snapshots the state before a traced step and completes the snapshot
afterwards. Records at k also need the snapshot at k-1, so iterations k-1 and
k are both snapshotted whenever k is traced.
"""
from __future__ import annotations

import time
from collections.abc import Callable
from dataclasses import dataclass, field

import numpy as np

from fwlp.core.diagnostics import (DiagnosticsRecord, bound_violations,
                                   certificate_check, data_constant_bar,
                                   delta_term, dual_infeasibility,
                                   epsilon_term, potential_U,
                                   primal_infeasibility, recursion_residual,
                                   standard_gap_M)
from fwlp.core.model import (SolverParams, SolverState, StandardFormLP,
                             drift_tolerance, refresh_cache, validate)
from fwlp.core.screening import ScreeningState
from fwlp.lib.checks import check_in_box
from fwlp.lib.log import logger
from fwlp.lib.types import Algorithm, RunStatus, Vector

StepFunction = Callable[[SolverState, StandardFormLP, SolverParams, ScreeningState | None], SolverState]


@dataclass
class Trace:
    """Everything a run produced.

    `states[0]` is the starting point; `states[i + 1]` is the iterate that
    `records[i]` describes.
    """
    algorithm: Algorithm
    states: list[SolverState]
    records: list[DiagnosticsRecord]
    final: SolverState
    status: RunStatus = RunStatus.BUDGET
    u2: float | None = None
    violations: list[tuple[int, str]] = field(default_factory=list)
    screen: ScreeningState | None = None

    @property
    def converged(self) -> bool:
        return self.status is RunStatus.CONVERGED

    @property
    def iterations(self) -> int:
        return self.final.k - 1


@dataclass
class _Snapshot:
    state: SolverState
    r_next: Vector | None = None
    U: float = 0.0


def _meets_tolerance(x: Vector, y: Vector, problem: StandardFormLP, tol: float) -> bool:
    return (primal_infeasibility(x, problem) <= tol
            and dual_infeasibility(y, problem) <= tol
            and abs(float(problem.c @ x - problem.b @ y)) <= tol)


def _record(k: int, previous: _Snapshot, current: _Snapshot, problem: StandardFormLP,
            params: SolverParams, started: int) -> DiagnosticsRecord:
    x, y = current.state.x, current.state.y
    delta = delta_term(previous.r_next, current.r_next, y, k - 1, problem)
    epsilon = epsilon_term(previous.state.s_last, current.state.s_last, previous.state.x, k - 1, problem)
    return DiagnosticsRecord(
        k=k,
        U=current.U,
        delta=delta,
        epsilon=epsilon,
        recursion_residual=recursion_residual(previous.U, current.U, delta, epsilon, k - 1),
        primal_infeas=primal_infeasibility(x, problem),
        dual_infeas=dual_infeasibility(y, problem),
        gap=float(problem.c @ x - problem.b @ y),
        M=standard_gap_M(x, y, problem, params),
        touch_count=current.state.touches,
        x_min=float(np.min(x)),
        wall_time_ns=time.perf_counter_ns() - started,
    )


def drive(problem: StandardFormLP, params: SolverParams, algorithm: Algorithm, step: StepFunction,
          x0: Vector | None = None, y0: Vector | None = None) -> Trace:
    validate(problem)
    state = SolverState.initial(problem, x0, y0)
    screen = None
    if params.screening_enabled:
        check_in_box(state.y, params.eta)
        screen = ScreeningState.for_problem(problem, params)

    trace = Trace(algorithm, [state.copy()], [], state, screen=screen)
    certify = params.verify_bounds and algorithm is Algorithm.FWLPP
    dbar = data_constant_bar(problem, params) if certify else 0.0
    drift_limit = drift_tolerance(problem)
    every = params.trace_every
    m = problem.nrows

    logger.info(f"Running {algorithm} on {m}x{problem.ncols} (xi={params.xi}, eta={params.eta}, "
                f"max_iters={params.max_iters}, screening={'on' if screen else 'off'})")
    started = time.perf_counter_ns()
    previous: _Snapshot | None = None

    for k in range(1, params.max_iters + 1):
        snapshot = None
        if k >= 2 and (k == 2 or k % every == 0 or (k + 1) % every == 0):
            snapshot = _Snapshot(state.copy())

        step(state, problem, params, screen)

        if snapshot is None:
            previous = None
            continue
        snapshot.r_next = state.r_last
        s = snapshot.state
        snapshot.U = potential_U(s.x, s.y, snapshot.r_next, s.s_last, k, problem)
        if k == 2:
            trace.u2 = snapshot.U

        if k >= 3 and k % every == 0 and previous is not None:
            record = _record(k, previous, snapshot, problem, params, started)
            trace.records.append(record)
            trace.states.append(snapshot.state)
            logger.debug(f"k={k} U={record.U:.6g} gap={record.gap:.6g} primal={record.primal_infeas:.6g} "
                         f"dual={record.dual_infeas:.6g} residual={record.recursion_residual:.3g} "
                         f"touches={record.touch_count}")

            if params.verify_bounds:
                drift = state.cache_drift(problem)
                if drift > drift_limit:
                    logger.warning(f"Cached Ax drifted by {drift:.3g} at k={k}, refreshing early.")
                    trace.violations.append((k, "cache_drift"))
                    refresh_cache(state, problem)
            if certify:
                report = certificate_check(record, params, m)
                names = report.violations + bound_violations(record, m, params, trace.u2, dbar)
                for name in names:
                    logger.warning(f"Bound '{name}' violated at k={k}.")
                    trace.violations.append((k, name))

            if (record.primal_infeas <= params.tol and record.dual_infeas <= params.tol
                    and abs(record.gap) <= params.tol):
                trace.final = snapshot.state
                trace.status = RunStatus.CONVERGED
                break
        previous = snapshot
    else:
        trace.final = state
        if _meets_tolerance(state.x, state.y, problem, params.tol):
            trace.status = RunStatus.CONVERGED

    logger.info(f"{algorithm} finished with status {trace.status} after {trace.iterations} iterations "
                f"({trace.final.touches} column touches).")
    return trace
