"""Lazy screening of dual constraints.

A column j whose reduced cost d_j = c_j - a_jᵀy sits a gap g above the
current minimum can only close that gap as fast as y moves. Every y update is
a convex step y_{t+1} = y_t + (s - y_t)/(t+1) with s, y_t in [-η, η]^m, so
|d_j(t+1) - d_j(t)| <= ‖a_j‖₁·2η/(t+1). Summing that drift tells us the
first iteration at which j could matter again; until then it is asleep.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from fwlp.constants import WAKE_ABSOLUTE_SLACK, WAKE_RELATIVE_SLACK
from fwlp.core.model import SolverParams, StandardFormLP
from fwlp.lib.types import IndexVector, Vector
from fwlp.lib.utils import harmonic_gap, harmonic_gaps


def drift_bound(col_norm: float, k0: int, k1: int, eta: float) -> float:
    """Upper bound on |d_j(k1) - d_j(k0)| for a column with ‖a_j‖₁ = col_norm."""
    if col_norm == 0 or k1 <= k0:
        return 0.0
    return col_norm * 2.0 * eta * harmonic_gap(k0, k1)


@dataclass
class ScreeningState:
    col_norms: Vector
    eta: float
    horizon: int
    d_snapshot: Vector
    snapshot_iter: IndexVector
    wake_iter: IndexVector
    active: IndexVector
    touch_counter: int = 0
    last_active: IndexVector = field(default_factory=lambda: np.empty(0, dtype=np.intp))
    _buckets: dict[int, list[IndexVector]] = field(default_factory=dict)
    _popped_through: int = 0

    @classmethod
    def for_problem(cls, problem: StandardFormLP, params: SolverParams) -> ScreeningState:
        n = problem.ncols
        return cls(
            col_norms=problem.column_norms.copy(),
            eta=params.eta,
            horizon=params.max_iters,
            d_snapshot=np.full(n, np.nan),
            snapshot_iter=np.zeros(n, dtype=np.intp),
            wake_iter=np.ones(n, dtype=np.intp),
            active=np.arange(n, dtype=np.intp),
        )

    @property
    def asleep(self) -> IndexVector:
        """Columns skipped by the most recent evaluation."""
        mask = np.ones(self.col_norms.shape[0], dtype=bool)
        mask[self.last_active] = False
        return np.flatnonzero(mask)

    def drift_bound(self, j: int, k0: int, k1: int) -> float:
        return drift_bound(float(self.col_norms[j]), k0, k1, self.eta)

    def compute_wake(self, j: int, gap: float, k: int, min_col_norm: float) -> int:
        """Smallest k' > k at which column j could undercut the incumbent minimum.

        Both the candidate and the incumbent drift, so both norms are charged.
        """
        rate = 2.0 * self.eta * (float(self.col_norms[j]) + min_col_norm)
        return int(self._wake(np.array([gap], dtype=np.float64), np.array([rate]), k)[0])

    def refresh_and_select(self, y: Vector, k: int, problem: StandardFormLP) -> tuple[int, float]:
        """Most violated dual constraint at y_k, evaluating only awake columns."""
        cols, d = self._evaluate(y, k, problem)
        pos = int(np.argmin(d))
        i, d_min = int(cols[pos]), float(d[pos])
        rates = 2.0 * self.eta * (self.col_norms[cols] + self.col_norms[i])
        wakes = self._wake(d - d_min, rates, k)
        wakes[pos] = k + 1
        self._sleep(cols, wakes, k)
        return i, d_min

    def violated_superset(self, y: Vector, k: int, problem: StandardFormLP) -> IndexVector:
        """Columns with d_j(k) < 0; every asleep column is certified d_j(k) > 0.

        The returned columns' reduced costs are left in `d_snapshot`.
        """
        cols, d = self._evaluate(y, k, problem)
        rates = 2.0 * self.eta * self.col_norms[cols]
        wakes = self._wake(np.maximum(d, 0.0), rates, k)
        self._sleep(cols, wakes, k)
        return cols[d < 0]

    def _evaluate(self, y: Vector, k: int, problem: StandardFormLP) -> tuple[IndexVector, Vector]:
        due = []
        for t in range(self._popped_through + 1, k + 1):
            due.extend(self._buckets.pop(t, ()))
        self._popped_through = max(self._popped_through, k)
        if due:
            self.active = np.union1d(self.active, np.concatenate(due))

        cols = self.active
        d = problem.reduced_costs(y, cols)
        self.touch_counter += cols.size
        self.d_snapshot[cols] = d
        self.snapshot_iter[cols] = k
        self.last_active = cols
        return cols, d

    def _sleep(self, cols: IndexVector, wakes: IndexVector, k: int) -> None:
        self.wake_iter[cols] = wakes
        awake = wakes <= k + 1
        self.active = cols[awake]

        sleepers, times = cols[~awake], wakes[~awake]
        keep = times <= self.horizon
        sleepers, times = sleepers[keep], times[keep]
        if not sleepers.size:
            return
        order = np.argsort(times, kind="stable")
        keys, starts = np.unique(times[order], return_index=True)
        for key, group in zip(keys, np.split(sleepers[order], starts[1:])):
            self._buckets.setdefault(int(key), []).append(group)

    def _wake(self, gaps: Vector, rates: Vector, k: int) -> IndexVector:
        """Vectorised wake iterations: smallest k' > k with rate·(H(k') - H(k)) >= gap."""
        limit = max(self.horizon + 1, k + 1)
        out = np.full(gaps.shape, k + 1, dtype=np.intp)
        target = np.maximum(gaps * (1.0 - WAKE_RELATIVE_SLACK) - WAKE_ABSOLUTE_SLACK, 0.0)
        pending = target > 0
        never = pending & ~(rates > 0)
        out[never] = limit
        pending &= ~never
        if not pending.any():
            return out

        need = target[pending] / rates[pending]
        lo = np.full(need.shape, k, dtype=np.int64)
        hi = np.full(need.shape, k + 1, dtype=np.int64)
        # Exponential search for a bracket, then bisection.
        while True:
            short = (harmonic_gaps(k, hi) < need) & (hi < limit)
            if not short.any():
                break
            lo = np.where(short, hi, lo)
            hi = np.where(short, np.minimum(2 * hi, limit), hi)
        unreachable = harmonic_gaps(k, hi) < need
        while np.any(hi - lo > 1):
            mid = (lo + hi) // 2
            ok = harmonic_gaps(k, mid) >= need
            hi = np.where(ok, mid, hi)
            lo = np.where(ok, lo, mid)
        out[pending] = np.where(unreachable, limit, hi)
        return out
