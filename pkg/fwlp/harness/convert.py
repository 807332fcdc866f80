"""General-form LP to `StandardFormLP`.

Columns of the result are, in order: the original variables (a free variable
contributes u⁺ here and u⁻ right after it), one slack per L or G row, and one
slack per finite upper bound. Rows are the constraint rows followed by one
row per finite upper bound.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from fwlp.core.model import StandardFormLP
from fwlp.harness.mps import MpsModel
from fwlp.lib.errors import (InconsistentBoundsError,
                             UnboundedBelowVariableError)
from fwlp.lib.types import IndexVector, RowKind, Vector


@dataclass
class VariableMap:
    """Maps a standard-form point back to the original variables.

    original_j = x[plus_j] - x[minus_j] + shift_j, with minus_j = -1 when the
    variable was not split.
    """
    names: list[str]
    plus: IndexVector
    minus: IndexVector
    shift: Vector
    cost: Vector
    constant: float = 0.0

    @property
    def offset(self) -> float:
        """Constant to add to the standard-form objective cᵀx."""
        return self.constant + float(self.cost @ self.shift)

    def recover(self, x: Vector) -> Vector:
        values = x[self.plus] + self.shift
        split = self.minus >= 0
        values[split] -= x[self.minus[split]]
        return values

    def objective(self, x: Vector) -> float:
        return float(self.cost @ self.recover(x)) + self.constant


def to_standard_form(model: MpsModel) -> tuple[StandardFormLP, VariableMap]:
    row_index = {name: i for i, name in enumerate(model.rows)}
    m = len(row_index)
    b = [model.rhs.get(name, 0.0) for name in model.rows]
    rows: list[int] = []
    cols: list[int] = []
    vals: list[float] = []
    c: list[float] = []

    def new_column(cost: float, entries) -> int:
        j = len(c)
        c.append(cost)
        for i, v in entries:
            rows.append(i)
            cols.append(j)
            vals.append(v)
        return j

    names = list(model.columns)
    plus = np.empty(len(names), dtype=np.intp)
    minus = np.full(len(names), -1, dtype=np.intp)
    shift = np.zeros(len(names))
    cost = np.array([model.cost.get(name, 0.0) for name in names])
    capped: list[tuple[int, float]] = []

    for t, name in enumerate(names):
        lower, upper = model.bounds(name)
        entries = [(row_index[r], v) for r, v in model.columns[name].items()]
        if lower > upper:
            raise InconsistentBoundsError(name, lower, upper)
        if lower == -math.inf:
            if name not in model.free or upper < math.inf:
                raise UnboundedBelowVariableError(name)
            plus[t] = new_column(cost[t], entries)
            minus[t] = new_column(-cost[t], [(i, -v) for i, v in entries])
            continue

        # x = x' + lower moves lower·a_j to the right-hand side.
        if lower != 0.0:
            shift[t] = lower
            for i, v in entries:
                b[i] -= lower * v
        plus[t] = new_column(cost[t], entries)
        if upper < math.inf:
            capped.append((plus[t], upper - lower))

    for name, kind in model.rows.items():
        match kind:
            case RowKind.L:
                new_column(0.0, [(row_index[name], 1.0)])
            case RowKind.G:
                new_column(0.0, [(row_index[name], -1.0)])

    # x' + t = upper - lower for each finite upper bound.
    for offset, (j, width) in enumerate(capped):
        i = m + offset
        rows.append(i)
        cols.append(int(j))
        vals.append(1.0)
        new_column(0.0, [(i, 1.0)])
        b.append(width)

    A = sp.coo_matrix((vals, (rows, cols)), shape=(len(b), len(c))).tocsc()
    problem = StandardFormLP(A, np.array(b, dtype=np.float64), np.array(c, dtype=np.float64))
    return problem, VariableMap(names, plus, minus, shift, cost, model.obj_offset)
