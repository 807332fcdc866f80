"""Potential function, its recursion terms, certificates and the primal-dual gap.

Index conventions follow the solver: `k` is the iteration a quantity belongs
to, r_{k+1} is the primal direction chosen at step k and s_k the dual
direction chosen at step k-1.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from fwlp.core.model import SolverParams, StandardFormLP
from fwlp.lib.errors import IndexTooSmallError
from fwlp.lib.types import Vector
from fwlp.lib.utils import frobenius_norm

# Relative slack applied to every inequality check.
CHECK_TOLERANCE = 1e-9


@dataclass
class DiagnosticsRecord:
    k: int
    U: float
    delta: float
    epsilon: float
    recursion_residual: float
    primal_infeas: float
    dual_infeas: float
    gap: float
    M: float
    touch_count: int
    x_min: float = 0.0
    wall_time_ns: int = 0


def potential_U(x: Vector, y: Vector, r_next: Vector, s: Vector, k: int, problem: StandardFormLP) -> float:
    """U_k from (x_k, y_k), r_{k+1} and s_k."""
    if k < 2:
        raise IndexTooSmallError(k)
    two_root = 2.0 * math.sqrt(k)
    d = problem.reduced_costs(y)
    residual = problem.b - problem.matvec(x)
    return float(-r_next @ d - (r_next @ r_next) / two_root
                 + s @ residual - (s @ s) / two_root
                 + problem.c @ x - problem.b @ y)


def delta_term(r_next: Vector, r_after: Vector, y_next: Vector, k: int, problem: StandardFormLP) -> float:
    """δ_{k+1} from r_{k+1}, r_{k+2} and y_{k+1}."""
    if k < 1:
        raise IndexTooSmallError(k, 1)
    d = problem.reduced_costs(y_next)
    return float(r_after @ d + (r_after @ r_after) / (2.0 * math.sqrt(k + 1))
                 - r_next @ d - k / (2.0 * (k + 1) * math.sqrt(k)) * (r_next @ r_next))


def epsilon_term(s: Vector, s_next: Vector, x: Vector, k: int, problem: StandardFormLP) -> float:
    """ε_{k+1} from s_k, s_{k+1} and x_k."""
    if k < 2:
        raise IndexTooSmallError(k)
    residual = problem.b - problem.matvec(x)
    inner = (-s_next @ residual + math.sqrt(k + 1) / (2.0 * k) * (s_next @ s_next)
             + s @ residual - (s @ s) / (2.0 * math.sqrt(k)))
    return float(k / (k + 1) * inner)


def recursion_residual(U: float, U_next: float, delta: float, epsilon: float, k: int) -> float:
    """δ_{k+1} + ε_{k+1} + U_{k+1} - k/(k+1)·U_k, zero in exact arithmetic."""
    return delta + epsilon + U_next - k / (k + 1) * U


def dual_infeasibility(y: Vector, problem: StandardFormLP) -> float:
    return max(0.0, float(np.max(-problem.reduced_costs(y))))


def primal_infeasibility(x: Vector, problem: StandardFormLP) -> float:
    return float(np.sum(np.abs(problem.b - problem.matvec(x))))


def standard_gap_M(x: Vector, y: Vector, problem: StandardFormLP, params: SolverParams) -> float:
    """max over Δ×Γ of L(x, s) - L(r, y), in closed form."""
    d_min = float(np.min(problem.reduced_costs(y)))
    return (params.eta * primal_infeasibility(x, problem)
            + float(problem.c @ x - problem.b @ y)
            - params.xi * min(0.0, d_min))


def data_constant(problem: StandardFormLP, params: SolverParams) -> float:
    """D, with the spectral norm of A bounded by its Frobenius norm."""
    a = frobenius_norm(problem.A) * math.sqrt(problem.nrows) * params.eta
    return 2.0 * a * (3.0 * a + float(np.linalg.norm(problem.c))) + params.xi ** 2 / 4.0


def data_constant_bar(problem: StandardFormLP, params: SolverParams) -> float:
    return data_constant(problem, params) + problem.nrows * params.eta ** 2 / 6.0


def envelope_constant(u2: float, dbar: float) -> float:
    """F such that U_{k+1} <= F/√k for all k >= 2."""
    return max(math.sqrt(2.0) * u2, 6.0 * dbar)


def epsilon_floor(k: int, m: int, eta: float) -> float:
    """Lower bound on ε_{k+1}, k >= 2."""
    if k < 2:
        raise IndexTooSmallError(k)
    return -m * eta ** 2 / (6.0 * k ** 2 * math.sqrt(k - 1))


def delta_floor(k: int, dbar: float) -> float:
    """Lower bound on δ_{k+1}."""
    return -dbar / k ** 1.5


def gap_relation_bound(k: int, m: int, eta: float, xi: float) -> float:
    """Bound on M_k - U_k, which is also nonnegative."""
    if k < 2:
        raise IndexTooSmallError(k)
    return (m * eta ** 2 + xi ** 2) / (2.0 * math.sqrt(k - 1))


def _holds(lhs: float, rhs: float) -> bool:
    return lhs <= rhs + CHECK_TOLERANCE * (1.0 + abs(rhs))


@dataclass
class CertificateReport:
    k: int
    violations: list[str] = field(default_factory=list)
    slack: dict[str, float] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.violations


def certificate_check(record: DiagnosticsRecord, params: SolverParams, m: int) -> CertificateReport:
    """Check the optimality certificate implied by U_k.

    Valid for FWLP-P iterates with ξ >= 2‖x*‖₁ and η >= 2‖y*‖∞.
    """
    k = record.k
    if k < 2:
        raise IndexTooSmallError(k)
    report = CertificateReport(k)
    checks = {
        "x_nonnegative": (-record.x_min, 0.0),
        "combined_infeasibility": (
            params.xi / 2.0 * record.dual_infeas + params.eta / 2.0 * record.primal_infeas,
            record.U + params.xi ** 2 / (2.0 * math.sqrt(k)) + m * params.eta ** 2 / (2.0 * math.sqrt(k - 1)),
        ),
        "gap_below_potential": (record.gap, record.U),
    }
    for name, (lhs, rhs) in checks.items():
        report.slack[name] = rhs - lhs
        if not _holds(lhs, rhs):
            report.violations.append(name)
    return report


def bound_violations(record: DiagnosticsRecord, m: int, params: SolverParams, u2: float, dbar: float) -> list[str]:
    """Names of the potential-function bounds the record breaks. Needs k >= 3."""
    k = record.k
    if k < 3:
        raise IndexTooSmallError(k, 3)
    violations = []
    if not _holds(record.U, envelope_constant(u2, dbar) / math.sqrt(k - 1)):
        violations.append("potential_envelope")
    if not _holds(epsilon_floor(k - 1, m, params.eta), record.epsilon):
        violations.append("epsilon_floor")
    if not _holds(delta_floor(k - 1, dbar), record.delta):
        violations.append("delta_floor")
    spread = record.M - record.U
    bound = gap_relation_bound(k, m, params.eta, params.xi)
    if not (_holds(spread, bound) and _holds(0.0, spread)):
        violations.append("gap_relation")
    return violations
