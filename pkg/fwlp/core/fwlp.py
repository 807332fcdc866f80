"""FWLP: alternating Frank-Wolfe steps on the primal and dual with step-size 1/(k+1)."""
from __future__ import annotations

import numpy as np

from fwlp.core.driver import Trace, drive
from fwlp.core.model import (SolverParams, SolverState, StandardFormLP,
                             refresh_cache)
from fwlp.core.screening import ScreeningState
from fwlp.lib.types import Algorithm, Vector

_NO_SUPPORT = np.empty(0, dtype=np.intp)


def most_violated_index(d: Vector) -> tuple[int, float]:
    """Lowest index attaining min d, and that minimum."""
    i = int(np.argmin(d))
    return i, float(d[i])


def fwlp_step(state: SolverState, problem: StandardFormLP, params: SolverParams,
              screen: ScreeningState | None = None) -> SolverState:
    k = state.k
    if screen is None:
        i, d_i = most_violated_index(problem.reduced_costs(state.y))
        state.touches += problem.ncols
    else:
        before = screen.touch_counter
        i, d_i = screen.refresh_and_select(state.y, k, problem)
        state.touches += screen.touch_counter - before

    factor = k / (k + 1)
    state.rescale(factor)
    if d_i < 0:
        # Step toward ξ·e_i; only column i of A is read.
        step = params.xi / (k + 1)
        state.add_to_x(np.array([i], dtype=np.intp), np.array([step]))
        rows, vals = problem.column(i)
        state.ax[rows] += step * vals
        state.r_idx = np.array([i], dtype=np.intp)
        state.r_val = np.array([params.xi])
    else:
        state.r_idx = _NO_SUPPORT
        state.r_val = np.empty(0)

    # np.sign(0) == 0: a satisfied row only shrinks its multiplier.
    s = params.eta * np.sign(problem.b - state.ax)
    state.y = factor * state.y + s / (k + 1)
    state.s_last = s
    state.k = k + 1
    if state.k % params.refresh_period == 0:
        refresh_cache(state, problem)
    return state


def run_fwlp(problem: StandardFormLP, params: SolverParams,
             x0: Vector | None = None, y0: Vector | None = None) -> Trace:
    return drive(problem, params, Algorithm.FWLP, fwlp_step, x0, y0)
