"""Analytic approximations of the exponent staircase and of the count itself.

Three staircase estimators of increasing fidelity:

* first order        zeta(1 + k/j) / zeta(k) * w^(k/j)
* centerline         first order + ln w (truncated below w = 1)
                     + gamma - j(1 - 1/k) ln(2 pi)
* truncated zero sum centerline + 2 Re sum over zeros with 0 < Im rho < T of
                     zeta(rho/j + 1) zeta(rho/k) / zeta'(rho) * w^(rho/j) / rho

and the matching count estimators obtained by pushing each through the
convolution exponential (closed-form power series for the first-order term,
grid convolution against exp*(chi_[1,inf)/t) for the centerline).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DomainError
from .measure import (
    GridDensity,
    build_dI,
    conv_exp_power_integral,
    grid_conv_exp,
    grid_convolve,
    grid_integral,
)
from .radical import DEFAULT_SCALE_BITS, check_exponent
from .zeta import EULER_GAMMA, ZeroTable, zeta, zeta_em

DEFAULT_GRID_STEP = Fraction(1, 256)


@dataclass(frozen=True)
class EstimateKind:
    """Which staircase estimator to evaluate; RESIDUE carries its zero data."""

    name: str
    height: float = 0.0
    table: ZeroTable | None = None

    @classmethod
    def first_order(cls) -> "EstimateKind":
        return cls("first_order")

    @classmethod
    def centerline(cls) -> "EstimateKind":
        return cls("centerline")

    @classmethod
    def residue(cls, height: float, table: ZeroTable) -> "EstimateKind":
        if height > 0 and table.max_height() < height and len(table):
            raise DomainError(
                f"zero table tops out at {table.max_height():.2f} < requested height {height}"
            )
        return cls("residue", height, table)


def _leading_coefficient(j: int, k: int) -> float:
    return zeta_em(complex(1 + Fraction(k, j))).real / zeta_em(complex(k)).real


def _centerline_constant(j: int, k: int) -> float:
    return EULER_GAMMA - j * (1 - 1 / k) * math.log(2 * math.pi)


def i_first(j: int, k: int, w: float) -> float:
    """Leading-order staircase estimate; 0 below w = 0."""
    check_exponent(j, k)
    if w <= 0:
        return 0.0
    return _leading_coefficient(j, k) * w ** (k / j)


def i_center(j: int, k: int, w: float) -> float:
    """Centerline estimate: leading term + truncated log + scale constant.

    The logarithm is cut off below w = 1 to avoid its blow-up near 0; the
    constant enters from w = 0+ and the estimate is 0 at w = 0 itself.
    """
    check_exponent(j, k)
    if w <= 0:
        return 0.0
    log_part = math.log(w) if w >= 1 else 0.0
    return i_first(j, k, w) + log_part + _centerline_constant(j, k)


def _residue_coefficients(
    j: int, k: int, height: float, table: ZeroTable
) -> list[tuple[complex, complex]]:
    """(coefficient, rho/j) per zero below the truncation height."""
    out = []
    for g in table.below(height):
        rho = complex(0.5, g)
        cap = abs(g) + 8.0
        coef = (
            zeta(rho / j + 1, max_height=cap)
            * zeta(rho / k, max_height=cap)
            / table.deriv(g)
            / rho
        )
        out.append((coef, rho / j))
    return out


def i_residue(j: int, k: int, w: float, height: float, table: ZeroTable) -> float:
    """Truncated-zero-sum estimate of the staircase at w > 0.

    Zeros are paired with their conjugates, so each contributes twice the
    real part of its summand and the total is real.
    """
    check_exponent(j, k)
    if w <= 0:
        raise DomainError(f"w must be positive, got {w}")
    return i_residue_curve(j, k, np.array([w]), height, table)[0]


def i_residue_curve(
    j: int, k: int, w: np.ndarray, height: float, table: ZeroTable
) -> np.ndarray:
    """Vectorized i_residue over positive w values (zeta factors reused)."""
    check_exponent(j, k)
    w = np.asarray(w, dtype=np.float64)
    if np.any(w <= 0):
        raise DomainError("i_residue needs w > 0")
    coef = _leading_coefficient(j, k)
    const = _centerline_constant(j, k)
    log_w = np.log(w)
    out = coef * w ** (k / j) + log_w + const
    for cf, exponent in _residue_coefficients(j, k, height, table):
        out = out + 2.0 * np.real(cf * np.exp(exponent * log_w))
    return out


def s_first(j: int, k: int, w: float) -> float:
    """First-order count estimate: the closed-form power series for the
    integral of exp* of the leading density c * v^a, a = k/j - 1."""
    check_exponent(j, k)
    if w <= 0:
        return 0.0
    a = k / j - 1
    c = (k / j) * _leading_coefficient(j, k)
    return conv_exp_power_integral(c, a, w)


def buchstab_factor(h: Fraction = DEFAULT_GRID_STEP, t_max: float = 8.0) -> GridDensity:
    """exp*(chi_[1,inf)/t) on the grid; its density plateaus near e^(-gamma)."""
    n = int(round(t_max / float(h))) + 1
    t = np.arange(n) * float(h)
    f = np.where(t >= 1.0, 1.0 / np.maximum(t, 1e-300), 0.0)
    f[0] = 0.0
    return grid_conv_exp(GridDensity(h, f), t_max)


def s_center_curve(
    j: int,
    k: int,
    w_values: list[float],
    h: Fraction = DEFAULT_GRID_STEP,
) -> list[float]:
    """Centerline count estimate at each w, sharing one grid computation.

    The estimate is e^(gamma - j(1-1/k) ln 2pi) times the integral to w of
    exp*(leading density + chi_[1,inf)/t).  With F1 the first-order integral
    and G = delta + G~ the grid conv-exp of chi/t, that integral expands to
    F1(w) + int_0^w G~ + (F1 * G~)(w).
    """
    check_exponent(j, k)
    if any(w < 0 for w in w_values):
        raise DomainError("s_center needs w >= 0")
    h = Fraction(h)
    if h <= 0:
        raise DomainError(f"grid step must be positive, got {h}")
    w_max = max(w_values, default=0.0)
    if w_max == 0.0:
        return [0.0 for _ in w_values]
    hf = float(h)
    n = int(round(w_max / hf)) + 1
    t = np.arange(n) * hf

    gfac = buchstab_factor(h, w_max + 2 * hf)
    g_tilde = GridDensity(h, gfac.samples[:n])

    a = k / j - 1
    c = (k / j) * _leading_coefficient(j, k)
    f1 = np.array([conv_exp_power_integral(c, a, float(x)) if x > 0 else 0.0 for x in t])

    cross = grid_convolve(GridDensity(h, f1), g_tilde, out_len=n).samples
    g_cum = np.concatenate([[0.0], np.cumsum((g_tilde.samples[1:] + g_tilde.samples[:-1]) / 2)]) * hf
    total = f1 + g_cum + cross
    const = math.exp(_centerline_constant(j, k))

    out = []
    for w in w_values:
        if w <= 0:
            out.append(0.0)
            continue
        i = int(round(w / hf))
        out.append(const * float(total[i]))
    return out


def s_center(j: int, k: int, w: float, h: Fraction = DEFAULT_GRID_STEP) -> float:
    """Centerline count estimate at a single w."""
    return s_center_curve(j, k, [w], h)[0]


def s_hybrid(
    j: int,
    k: int,
    w: float,
    w0: float,
    h: Fraction = DEFAULT_GRID_STEP,
) -> float:
    """Hybrid count estimate: exact jump measure up to w0, centerline density beyond.

    The exact part deposits each jump weight 1/m into its grid bin, so no
    scale constant applies (actual offsets are carried by the jumps).  With
    w0 <= 0 this degenerates to the centerline estimate.
    """
    check_exponent(j, k)
    if w <= 0:
        return 0.0
    if w0 <= 0:
        return s_center(j, k, w, h)
    hf = float(h)
    n = int(round(w / hf)) + 1
    t = np.arange(n) * hf
    density = np.zeros(n)
    w0 = min(w0, w)
    exact = build_dI(j, k, Fraction(w0).limit_denominator(10**9))
    for combo, weight in exact.masses.items():
        lo, hi = exact.enclosures[combo]
        value = (lo + hi) / 2 / 2.0**DEFAULT_SCALE_BITS
        idx = int(round(value / hf))
        if idx < n:
            density[idx] += float(weight) / hf
    coef = _leading_coefficient(j, k)
    mask = t > w0
    density[mask] += (k / j) * coef * t[mask] ** (k / j - 1)
    density[mask & (t >= 1.0)] += 1.0 / t[mask & (t >= 1.0)]
    total = grid_conv_exp(GridDensity(h, density), w)
    return grid_integral(total, w)


@dataclass(frozen=True)
class ResidualReport:
    """Envelope-exponent diagnostic for the staircase residual R = I - leading.

    The fitted exponent comes from a least-squares line through log-log
    window maxima of |R| on a geometric grid; reference_exponent is
    (k/j) * beta_k and unconditional_exponent the 1/j bound.
    """

    w_grid: np.ndarray
    residuals: np.ndarray
    fitted_exponent: float
    reference_exponent: float
    unconditional_exponent: float


def residual_report(
    j: int,
    k: int,
    w_max: float,
    beta_k: float,
    n_points: int = 200,
    n_windows: int = 12,
) -> ResidualReport:
    """Sample R(w) = i_exact(w) - i_first(w) on a log grid and fit its envelope."""
    from .counting import i_exact

    check_exponent(j, k)
    if w_max < 1:
        raise DomainError(f"w_max={w_max} is below the first jump; nothing to report")
    grid = np.exp(np.linspace(0.0, math.log(w_max), n_points))
    residuals = np.array(
        [float(i_exact(j, k, Fraction(x).limit_denominator(10**6))) - i_first(j, k, x) for x in grid]
    )
    log_w = np.log(grid)
    edges = np.linspace(0.0, math.log(w_max), n_windows + 1)
    xs, ys = [], []
    for i in range(n_windows):
        mask = (log_w >= edges[i]) & (log_w <= edges[i + 1])
        if mask.any():
            peak = float(np.max(np.abs(residuals[mask])))
            if peak > 0:
                xs.append(0.5 * (edges[i] + edges[i + 1]))
                ys.append(math.log(peak))
    if len(xs) < 2:
        raise DomainError("not enough windows with nonzero residual to fit an exponent")
    slope = float(np.polyfit(xs, ys, 1)[0])
    return ResidualReport(
        w_grid=grid,
        residuals=residuals,
        fitted_exponent=slope,
        reference_exponent=(k / j) * beta_k,
        unconditional_exponent=1.0 / j,
    )


def i_estimate(j: int, k: int, w: float, kind: EstimateKind) -> float:
    """Dispatch a staircase estimator by kind."""
    if kind.name == "first_order":
        return i_first(j, k, w)
    if kind.name == "centerline":
        return i_center(j, k, w)
    if kind.name == "residue":
        if kind.table is None:
            raise DomainError("residue estimate needs a zero table")
        return i_residue(j, k, w, kind.height, kind.table)
    raise DomainError(f"unknown estimate kind {kind.name!r}")
