"""Deterministic table building and CSV formatting for the CLI and service.

Numeric cells use the shortest round-trip decimal capped at 12 significant
digits, so identical configurations produce byte-identical CSV.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .counting import i_exact, s_exact
from .errors import BudgetError, DomainError
from .estimates import (
    DEFAULT_GRID_STEP,
    i_center,
    i_first,
    i_residue_curve,
    s_center_curve,
    s_first,
    s_hybrid,
)
from .zeta import ZeroTable

DEFAULT_SUPPORT_BUDGET = 2_000_000
EXACT_OMITTED = "NA"


def format_number(x: float) -> str:
    """Shortest round-trip decimal, at most 12 significant digits."""
    x = float(x)
    if math.isnan(x) or math.isinf(x):
        return repr(x)
    short = repr(x)
    mantissa = short.split("e")[0].split("E")[0].lstrip("-").replace(".", "").lstrip("0")
    if len(mantissa) <= 12:
        return short
    return f"{x:.12g}"


def grid_points(w_max: Fraction, step: Fraction) -> list[Fraction]:
    """0, step, 2*step, ..., up to and including w_max when it lies on the grid."""
    if step <= 0:
        raise DomainError(f"step must be positive, got {step}")
    if w_max < 0:
        raise DomainError(f"w_max must be nonnegative, got {w_max}")
    count = int(w_max / step)
    return [step * i for i in range(count + 1)]


def predicted_support(j: int, k: int, w: float) -> float:
    """First-order predicted size of the exponential's support at cap w."""
    try:
        return s_first(j, k, w)
    except OverflowError:
        return math.inf


def check_budget(j: int, k: int, w: float, budget: int = DEFAULT_SUPPORT_BUDGET) -> None:
    """Refuse enumerations whose predicted support would exceed the budget."""
    predicted = predicted_support(j, k, w)
    if predicted > budget:
        raise BudgetError(
            f"predicted support ~{predicted:.3g} for (j={j}, k={k}, w={w}) "
            f"exceeds the budget {budget}; raise --budget to override"
        )


@dataclass(frozen=True)
class Table:
    header: list[str]
    rows: list[list[str]]

    def to_csv(self) -> str:
        lines = [",".join(self.header)]
        lines.extend(",".join(row) for row in self.rows)
        return "\n".join(lines) + "\n"

    def to_records(self) -> list[dict[str, str]]:
        return [dict(zip(self.header, row)) for row in self.rows]


def staircase_table(
    j: int,
    k: int,
    w_max: Fraction,
    step: Fraction,
    height: float | None = None,
    zeros: ZeroTable | None = None,
) -> Table:
    """Rows `w,I_exact,I_first,I_center[,I_residue]` on the uniform grid.

    I_exact is the midpoint-convention staircase.  The residue column is
    present iff a truncation height is given (which requires a zero table).
    """
    if height is not None and zeros is None:
        raise DomainError("a zeros table is required when a height is given")
    ws = grid_points(w_max, step)
    header = ["w", "I_exact", "I_first", "I_center"]
    residue_vals = None
    if height is not None:
        header.append("I_residue")
        positive = np.array([float(w) for w in ws if w > 0], dtype=np.float64)
        residue_vals = iter(i_residue_curve(j, k, positive, height, zeros))
    rows = []
    for w in ws:
        wf = float(w)
        row = [
            format_number(wf),
            format_number(float(i_exact(j, k, w))),
            format_number(i_first(j, k, wf)),
            format_number(i_center(j, k, wf)),
        ]
        if residue_vals is not None:
            row.append(format_number(0.0 if w == 0 else float(next(residue_vals))))
        rows.append(row)
    return Table(header, rows)


def estimate_s_table(
    j: int,
    k: int,
    w_max: Fraction,
    step: Fraction,
    grid_step: Fraction = DEFAULT_GRID_STEP,
    budget: int = DEFAULT_SUPPORT_BUDGET,
    hybrid_w0: float = 0.0,
) -> Table:
    """Rows `w,S_exact,S_first,S_center[,S_hybrid]` on the uniform grid.

    S_exact cells above the enumeration budget carry the marker `NA`.
    """
    ws = grid_points(w_max, step)
    header = ["w", "S_exact", "S_first", "S_center"]
    if hybrid_w0 > 0:
        header.append("S_hybrid")
    floats = [float(w) for w in ws]
    centers = s_center_curve(j, k, floats, grid_step)
    rows = []
    for w, wf, ctr in zip(ws, floats, centers):
        if predicted_support(j, k, wf) <= budget:
            exact_cell = format_number(float(s_exact(j, k, w)))
        else:
            exact_cell = EXACT_OMITTED
        row = [
            format_number(wf),
            exact_cell,
            format_number(s_first(j, k, wf)),
            format_number(ctr),
        ]
        if hybrid_w0 > 0:
            row.append(format_number(s_hybrid(j, k, wf, hybrid_w0, grid_step)))
        rows.append(row)
    return Table(header, rows)
