"""Named verification checks behind `radsum verify` and the acceptance tests.

Each check pins its tolerance here; nothing is calibrated at run time.  The
checks are deterministic (seeded sampling) and report a one-line detail
string alongside the pass/fail flag.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from . import arith, counting, estimates, measure, zeta
from .cache import s_exact_cached
from .errors import RadsumError

THEOREM1_PAIRS = ((1, 2), (1, 3), (2, 3))
THEOREM1_CAP = Fraction(8)
THEOREM1_SAMPLES = 25
THEOREM1_TIME_BUDGET = 60.0
FIRST_ORDER_W = 15
FIRST_ORDER_TOL = 0.035
CENTERLINE_WS = (5, 10, 15, 20)
CENTERLINE_TOL = 0.10
CENTERLINE_STEP = Fraction(1, 256)
PLATEAU_RANGE = (3.0, 6.0)
PLATEAU_BAND = (0.57, 0.61)
DIRICHLET_A_XS = (1.5, 2.0, 3.0)
DIRICHLET_H_XS = (-0.6, -0.8, -1.2)
DIRICHLET_LIMIT = 200_000
ZETA2_TOL = 1e-12
ZETA_NEG1_TOL = 1e-10
ZETA_DERIV_TOL = 1e-6
ZETA_DERIV_POINTS = 50
RESIDUE_W_RANGE = (2.0, 20.0)
RESIDUE_W_STEP = 0.05
RESIDUE_HEIGHT = 240.0  # all 100 bundled zeros
RESIDUAL_ALPHA_MAX = 1.3
RESIDUAL_W_MAX = 12.0
RESIDUAL_BETA2 = 17.0 / 54.0
CLOSED_FORM_AS = (0.0, 0.5, 1.0, 2.0)
CLOSED_FORM_CS = (0.5, 1.4615)
CLOSED_FORM_T_MAX = 5.0


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str


def _sample_ws(j: int, k: int) -> list[Fraction]:
    """25 deterministic rationals in (0, 8], jump points included."""
    rng = random.Random(1000 * j + k)
    ws = {Fraction(1), Fraction(2), Fraction(3), Fraction(8)}
    while len(ws) < THEOREM1_SAMPLES:
        q = rng.randint(1, 12)
        p = rng.randint(1, 8 * q)
        ws.add(Fraction(p, q))
    return sorted(ws, reverse=True)


def check_theorem1(_context: dict) -> CheckResult:
    """Exact identity: the count equals the integrated convolution exponential,
    and every nonzero support weight of exp*(dI) is exactly 1."""
    start = time.monotonic()
    mismatches = []
    bad_weights = 0
    total_points = 0
    for j, k in THEOREM1_PAIRS:
        exp_measure = counting.conv_exp_measure(j, k, THEOREM1_CAP)
        zero = exp_measure.zero_combo()
        for combo, weight in exp_measure.masses.items():
            if combo != zero and weight != 1:
                bad_weights += 1
        total_points += exp_measure.support_size() - 1
        for w in _sample_ws(j, k):
            a = counting.s_exact(j, k, w)
            b = counting.s_via_conv_exp(j, k, w)
            if a != b:
                mismatches.append((j, k, w, a, b))
    elapsed = time.monotonic() - start
    ok = not mismatches and bad_weights == 0 and elapsed < THEOREM1_TIME_BUDGET
    detail = (
        f"{3 * THEOREM1_SAMPLES} counts compared, {total_points} support weights "
        f"checked, {bad_weights} non-unit, {len(mismatches)} mismatches, {elapsed:.1f}s"
    )
    if mismatches:
        detail += f"; first mismatch {mismatches[0]}"
    return CheckResult("theorem1", ok, detail)


def check_staircase_identity(_context: dict) -> CheckResult:
    """The two staircase constructions agree exactly, including at jumps."""
    bad = []
    count = 0
    for j, k in THEOREM1_PAIRS:
        for w in _sample_ws(j, k):
            count += 1
            if counting.i_exact(j, k, w) != counting.i_via_q(j, k, w):
                bad.append((j, k, w))
    return CheckResult(
        "staircase-identity",
        not bad,
        f"{count} rational thresholds compared exactly, {len(bad)} mismatches",
    )


def check_first_order(_context: dict) -> CheckResult:
    """Leading-term relative error at w = 15 for square roots."""
    exact = float(counting.i_exact(1, 2, FIRST_ORDER_W))
    approx = estimates.i_first(1, 2, float(FIRST_ORDER_W))
    rel = abs(approx - exact) / exact
    return CheckResult(
        "first-order-15",
        rel <= FIRST_ORDER_TOL,
        f"relative error {rel:.4%} at w={FIRST_ORDER_W} (tolerance {FIRST_ORDER_TOL:.1%})",
    )


def check_centerline(_context: dict) -> CheckResult:
    """Centerline count estimate within 10% at w in {5, 10, 15, 20}."""
    ws = [float(w) for w in CENTERLINE_WS]
    centers = estimates.s_center_curve(1, 2, ws, CENTERLINE_STEP)
    worst = 0.0
    parts = []
    ok = True
    for w, ctr in zip(CENTERLINE_WS, centers):
        exact = s_exact_cached(1, 2, w)
        rel = abs(ctr - exact) / exact
        worst = max(worst, rel)
        flag = "" if rel <= CENTERLINE_TOL else "!"
        parts.append(f"w={w}: {rel:.2%}{flag}")
        ok = ok and rel <= CENTERLINE_TOL
    return CheckResult(
        "centerline-10pct",
        ok,
        "; ".join(parts) + f" (tolerance {CENTERLINE_TOL:.0%})",
    )


def check_plateau(_context: dict) -> CheckResult:
    """The conv-exp factor of the truncated-log density on t in [3, 6]."""
    factor = estimates.buchstab_factor(t_max=PLATEAU_RANGE[1] + 0.5)
    t = factor.times()
    mask = (t >= PLATEAU_RANGE[0]) & (t <= PLATEAU_RANGE[1])
    vals = factor.samples[mask]
    lo, hi = float(np.min(vals)), float(np.max(vals))
    ok = lo >= PLATEAU_BAND[0] and hi <= PLATEAU_BAND[1]
    return CheckResult(
        "plateau",
        ok,
        f"range [{lo:.4f}, {hi:.4f}] on t in [3, 6]; required band {PLATEAU_BAND}",
    )


def check_dirichlet_a(_context: dict) -> CheckResult:
    """Partial sums of a_l l^-x against the tri-zeta ratio, within the tail bound."""
    coeffs = arith.a_coeff_prefix(1, 2, DIRICHLET_LIMIT)
    ls = np.arange(DIRICHLET_LIMIT + 1, dtype=np.float64)
    ls[0] = 1.0
    parts = []
    ok = True
    for x in DIRICHLET_A_XS:
        partial = float(np.sum(coeffs * ls**-x))
        target = zeta.tri_zeta(1, 2, complex(x)).real
        tail = DIRICHLET_LIMIT ** (1 - x) / (x - 1)
        diff = target - partial
        good = -1e-9 <= diff <= tail + 1e-9
        ok = ok and good
        parts.append(f"x={x}: diff {diff:.3e} <= tail {tail:.3e} {'ok' if good else 'FAIL'}")
    return CheckResult("dirichlet-a", ok, "; ".join(parts))


def check_dirichlet_h(_context: dict) -> CheckResult:
    """Partial sums of h_l l^(x-1) against zeta(-2x) zeta(1-x) / zeta(1-2x).

    All terms are positive, so the partial sum must sit below the limit by
    at most the tail bound L^(3/2-s) * (1/(s-1) + zeta(s)/(2s-3)), s = 1-x.
    """
    coeffs = arith.h_coeff_prefix(DIRICHLET_LIMIT)
    ls = np.arange(DIRICHLET_LIMIT + 1, dtype=np.float64)
    ls[0] = 1.0
    parts = []
    ok = True
    for x in DIRICHLET_H_XS:
        s = 1 - x
        partial = float(np.sum(coeffs * ls ** (x - 1)))
        target = (
            zeta.zeta(complex(-2 * x)).real
            * zeta.zeta(complex(1 - x)).real
            / zeta.zeta(complex(1 - 2 * x)).real
        )
        zeta_s = zeta.zeta_em(complex(s)).real
        tail = DIRICHLET_LIMIT ** (1.5 - s) * (1 / (s - 1) + zeta_s / (2 * s - 3))
        diff = target - partial
        good = -1e-9 <= diff <= tail + 1e-9
        ok = ok and good
        parts.append(f"x={x}: diff {diff:.3e} <= tail {tail:.3e} {'ok' if good else 'FAIL'}")
    return CheckResult("dirichlet-h", ok, "; ".join(parts))


def check_zeta_engine(_context: dict) -> CheckResult:
    """Closed-form anchors plus finite differences for the derivative."""
    problems = []
    err2 = abs(zeta.zeta_em(2) - math.pi**2 / 6)
    if err2 > ZETA2_TOL:
        problems.append(f"zeta(2) error {err2:.2e}")
    err_neg1 = abs(zeta.zeta_reflect(-1) - (-1.0 / 12.0))
    if err_neg1 > ZETA_NEG1_TOL:
        problems.append(f"zeta(-1) error {err_neg1:.2e}")
    rng = random.Random(424242)
    fd_step = 1e-5
    worst_fd = 0.0
    tested = 0
    while tested < ZETA_DERIV_POINTS:
        z = complex(rng.uniform(-0.9, 3.0), rng.uniform(-30.0, 30.0))
        if abs(z - 1) < 0.3 or abs(z) < 0.1:
            continue
        tested += 1
        fd = (zeta.zeta(z + fd_step) - zeta.zeta(z - fd_step)) / (2 * fd_step)
        err = abs(zeta.zeta_deriv(z) - fd)
        worst_fd = max(worst_fd, err)
    if worst_fd > ZETA_DERIV_TOL:
        problems.append(f"zeta' vs finite differences worst {worst_fd:.2e}")
    detail = (
        f"zeta(2) err {err2:.1e}; zeta(-1) err {err_neg1:.1e}; "
        f"zeta' vs FD worst {worst_fd:.1e} over {tested} points"
    )
    if problems:
        detail += "; " + "; ".join(problems)
    return CheckResult("zeta-engine", not problems, detail)


def check_zeros_validation(context: dict) -> CheckResult:
    """Every ingested ordinate passes the |zeta(1/2 + i g)| residual test."""
    try:
        table = _zero_table(context)
    except RadsumError as exc:
        return CheckResult("zeros-validation", False, f"ingestion failed: {exc}")
    worst = 0.0
    for g in table.ordinates:
        worst = max(worst, abs(zeta.zeta_em(complex(0.5, g), max_height=g + 8.0)))
    return CheckResult(
        "zeros-validation",
        worst < zeta.ZERO_VALIDATION_TOL,
        f"{len(table)} ordinates, worst residual {worst:.2e} (tol {zeta.ZERO_VALIDATION_TOL})",
    )


def check_residue_improvement(context: dict) -> CheckResult:
    """Adding the truncated zero sum must reduce RMS error against the exact
    staircase on w in [2, 20]."""
    table = _zero_table(context)
    ws = np.arange(RESIDUE_W_RANGE[0], RESIDUE_W_RANGE[1] + 1e-9, RESIDUE_W_STEP)
    exact = np.array(
        [float(counting.i_exact(1, 2, Fraction(x).limit_denominator(10**6))) for x in ws]
    )
    center = np.array([estimates.i_center(1, 2, float(x)) for x in ws])
    residue = estimates.i_residue_curve(1, 2, ws, RESIDUE_HEIGHT, table)
    rms_center = float(np.sqrt(np.mean((center - exact) ** 2)))
    rms_residue = float(np.sqrt(np.mean((residue - exact) ** 2)))
    return CheckResult(
        "residue-improvement",
        rms_residue < rms_center,
        f"RMS centerline {rms_center:.4f} vs zero-sum {rms_residue:.4f} "
        f"({len(table)} zeros, {len(ws)} thresholds)",
    )


def check_residual_order(_context: dict) -> CheckResult:
    """Envelope exponent of the staircase residual stays near the unconditional bound."""
    report = estimates.residual_report(1, 2, RESIDUAL_W_MAX, RESIDUAL_BETA2)
    return CheckResult(
        "residual-order",
        report.fitted_exponent <= RESIDUAL_ALPHA_MAX,
        f"fitted exponent {report.fitted_exponent:.3f} <= {RESIDUAL_ALPHA_MAX} "
        f"(reference (k/j)*beta={report.reference_exponent:.3f}, "
        f"unconditional {report.unconditional_exponent:.1f})",
    )


def check_closed_form(_context: dict) -> CheckResult:
    """Grid conv-exp of power-law densities against the closed-form series."""
    h = estimates.DEFAULT_GRID_STEP
    hf = float(h)
    tol = max(1e-3, 5 * hf)
    n = int(round(CLOSED_FORM_T_MAX / hf)) + 1
    t = np.arange(n) * hf
    worst = 0.0
    worst_case = ""
    for a in CLOSED_FORM_AS:
        for c in CLOSED_FORM_CS:
            density = c * t**a  # 0**0 == 1, so a == 0 gives the constant c from t = 0
            grid = measure.grid_conv_exp(measure.GridDensity(h, density), CLOSED_FORM_T_MAX)
            series = measure.conv_exp_power_density(c, a, t)
            err = float(np.max(np.abs(grid.samples - series)))
            if err > worst:
                worst = err
                worst_case = f"a={a}, c={c}"
    return CheckResult(
        "conv-exp-closed-form",
        worst <= tol,
        f"worst deviation {worst:.3e} at {worst_case} (tolerance {tol:.3e})",
    )


def _zero_table(context: dict) -> zeta.ZeroTable:
    if "zero_table" not in context:
        if context.get("zeros_text") is not None:
            context["zero_table"] = zeta.load_zeros_text(context["zeros_text"])
        else:
            context["zero_table"] = zeta.load_default_zeros()
    return context["zero_table"]


CHECKS: dict[str, Callable[[dict], CheckResult]] = {
    "theorem1": check_theorem1,
    "staircase-identity": check_staircase_identity,
    "first-order-15": check_first_order,
    "centerline-10pct": check_centerline,
    "plateau": check_plateau,
    "dirichlet-a": check_dirichlet_a,
    "dirichlet-h": check_dirichlet_h,
    "zeta-engine": check_zeta_engine,
    "zeros-validation": check_zeros_validation,
    "residue-improvement": check_residue_improvement,
    "residual-order": check_residual_order,
    "conv-exp-closed-form": check_closed_form,
}


def run_checks(only: str | None = None, zeros_text: str | None = None) -> list[CheckResult]:
    """Run all (or one named) verification checks; shared state in one context."""
    context: dict = {"zeros_text": zeros_text}
    names = [only] if only else list(CHECKS)
    if only and only not in CHECKS:
        raise KeyError(f"unknown check {only!r}; available: {', '.join(CHECKS)}")
    results = []
    for name in names:
        try:
            results.append(CHECKS[name](context))
        except RadsumError as exc:
            results.append(CheckResult(name, False, f"error: {exc}"))
    return results
