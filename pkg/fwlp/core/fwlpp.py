"""FWLP-P: FWLP with ‖·‖²/(2√k) perturbations, so each step is a Euclidean projection."""
from __future__ import annotations

import math

import numpy as np

from fwlp.core.driver import Trace, drive
from fwlp.core.model import (SolverParams, SolverState, StandardFormLP,
                             refresh_cache)
from fwlp.core.projection import project_box, project_simplex_cap
from fwlp.core.screening import ScreeningState
from fwlp.lib.types import Algorithm, Vector


def compute_r(y: Vector, k: int, problem: StandardFormLP, params: SolverParams,
              screen: ScreeningState | None = None) -> Vector:
    """r_{k+1} = proj_Δ(√k·(Aᵀy_k - c)).

    With a screen, only columns certified possibly violated are materialised;
    all others have Aᵀy - c < 0 and project to zero.
    """
    root = math.sqrt(k)
    if screen is None:
        w0 = -root * problem.reduced_costs(y)
        return project_simplex_cap(w0, params.xi)

    r = np.zeros(problem.ncols)
    cols = screen.violated_superset(y, k, problem)
    if cols.size:
        w0 = -root * screen.d_snapshot[cols]
        r[cols] = project_simplex_cap(w0, params.xi, partial=True)
    return r


def compute_s(ax: Vector, k: int, problem: StandardFormLP, params: SolverParams) -> Vector:
    """s_{k+1} = clamp(√k·(b - A x_{k+1}), ±η); `ax` must be A·x_{k+1}."""
    return project_box(math.sqrt(k) * (problem.b - ax), params.eta)


def fwlpp_step(state: SolverState, problem: StandardFormLP, params: SolverParams,
               screen: ScreeningState | None = None) -> SolverState:
    k = state.k
    if screen is None:
        r = compute_r(state.y, k, problem, params)
        state.touches += problem.ncols
    else:
        before = screen.touch_counter
        r = compute_r(state.y, k, problem, params, screen)
        state.touches += screen.touch_counter - before

    support = np.flatnonzero(r)
    # Columns of A read to update the cached product.
    state.touches += support.size
    factor = k / (k + 1)
    state.rescale(factor)
    if support.size:
        weights = r[support] / (k + 1)
        state.add_to_x(support, weights)
        problem.add_columns(state.ax, support, weights)

    s = compute_s(state.ax, k, problem, params)
    state.y = factor * state.y + s / (k + 1)
    state.r_idx, state.r_val = support, r[support]
    state.s_last = s
    state.k = k + 1
    if state.k % params.refresh_period == 0:
        refresh_cache(state, problem)
    return state


def run_fwlpp(problem: StandardFormLP, params: SolverParams,
              x0: Vector | None = None, y0: Vector | None = None) -> Trace:
    return drive(problem, params, Algorithm.FWLPP, fwlpp_step, x0, y0)
