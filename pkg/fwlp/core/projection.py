"""Euclidean projections onto the simplex cap Δ = {x >= 0, eᵀx <= ξ} and the box Γ = [-η, η]^m."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from fwlp.constants import BRUTE_FORCE_MAX_N, KKT_TOLERANCE
from fwlp.lib.errors import SizeLimitExceededError
from fwlp.lib.types import Vector


@dataclass
class KktSolution:
    """KKT triple of  min -wᵀx + ½‖x‖²  s.t. eᵀx <= 1, x >= 0.

    z is only built on request (`with_multipliers=True`); the solvers never need it.
    """
    x: Vector
    mu: float
    z: Vector | None = None

    def residuals(self, w: Vector) -> dict[str, float]:
        """∞-norm violation of each KKT condition."""
        if self.z is None:
            raise ValueError("Multipliers were not constructed, call kkt_unit_cap(w, with_multipliers=True)!")
        x, mu, z = self.x, self.mu, self.z
        total = float(np.sum(x))
        return {
            "stationarity": float(np.max(np.abs(-w + x + mu - z), initial=0.0)),
            "primal_feasibility": max(0.0, total - 1.0),
            "cap_complementarity": abs(mu * (total - 1.0)),
            "bound_complementarity": abs(float(z @ x)),
            "nonnegativity": max(0.0, -float(np.min(x, initial=0.0)), -mu, -float(np.min(z, initial=0.0))),
        }


def kkt_unit_cap(w: Vector, with_multipliers: bool = False, partial: bool = False) -> KktSolution:
    """Solve the unit-cap QP by sorting w and scanning prefix sums.

    With `partial`, only the positive entries of w are sorted: a coordinate
    with w_j <= 0 is zero in both branches.
    """
    w = np.asarray(w, dtype=np.float64)
    n = w.shape[0]
    x = np.zeros(n)

    if partial:
        candidates = np.flatnonzero(w > 0)
        if candidates.size == 0:
            return _finish(w, x, 0.0, None, with_multipliers)
        sub = w[candidates]
        order = candidates[np.argsort(-sub, kind="stable")]
    else:
        # Stable descending sort, ties broken by original index.
        order = np.argsort(-w, kind="stable")

    wbar = w[order]
    size = wbar.shape[0]
    if size == 0:
        return _finish(w, x, 0.0, None, with_multipliers)
    cumulative = np.cumsum(wbar)
    mus = (cumulative - 1.0) / np.arange(1, size + 1)
    # Stop at the first prefix j where the next entry no longer beats μ_j.
    stops = np.flatnonzero(wbar[1:] <= mus[:-1])
    J = int(stops[0]) + 1 if stops.size else size
    mu = float(mus[J - 1])

    if mu >= 0:
        support = order[:J]
        x[support] = np.maximum(wbar[:J] - mu, 0.0)
        return _finish(w, x, mu, support, with_multipliers)

    np.maximum(w, 0.0, out=x)
    return _finish(w, x, 0.0, None, with_multipliers)


def _finish(w: Vector, x: Vector, mu: float, support, with_multipliers: bool) -> KktSolution:
    if not with_multipliers:
        return KktSolution(x, mu)
    if support is None:
        z = x - w
    else:
        z = mu - w
        z[support] = 0.0
    return KktSolution(x, mu, z)


def brute_force_unit_cap(w: Vector) -> Vector:
    """Enumerate every support set with the cap active or inactive.

    Test oracle only, exponential in n.
    """
    w = np.asarray(w, dtype=np.float64)
    n = w.shape[0]
    if n > BRUTE_FORCE_MAX_N:
        raise SizeLimitExceededError(n)

    best = np.zeros(n)
    best_value = np.inf
    tol = KKT_TOLERANCE
    for size in range(0, n + 1):
        for support in combinations(range(n), size):
            idx = list(support)
            rest = np.ones(n, dtype=bool)
            rest[idx] = False
            # Cap inactive (μ = 0), then cap active with μ from eᵀx = 1.
            multipliers = [0.0]
            if size:
                multipliers.append((float(np.sum(w[idx])) - 1.0) / size)
            for mu in multipliers:
                x = np.zeros(n)
                x[idx] = w[idx] - mu
                if mu < -tol or np.any(x < -tol) or np.sum(x) > 1.0 + tol:
                    continue
                if np.any(mu - w[rest] < -tol):
                    continue
                if mu > tol and abs(np.sum(x) - 1.0) > tol:
                    continue
                x = np.maximum(x, 0.0)
                value = float(-w @ x + 0.5 * x @ x)
                if value < best_value:
                    best, best_value = x, value
    return best


def project_simplex_cap(w0: Vector, xi: float, partial: bool = False) -> Vector:
    """argmin ‖w0 - x‖² over Δ, via the unit-cap problem on w0/ξ."""
    return xi * kkt_unit_cap(np.asarray(w0, dtype=np.float64) / xi, partial=partial).x


def project_box(v: Vector, eta: float) -> Vector:
    return np.clip(v, -eta, eta)
