import math
from fractions import Fraction

import numpy as np
import pytest

from radsum.counting import i_exact, s_exact
from radsum.errors import DomainError
from radsum.estimates import (
    EstimateKind,
    buchstab_factor,
    i_center,
    i_estimate,
    i_first,
    i_residue,
    i_residue_curve,
    residual_report,
    s_center,
    s_center_curve,
    s_first,
    s_hybrid,
)
from radsum.measure import GridDensity, grid_integral
from radsum.zeta import EULER_GAMMA, ZeroTable, zeta_em

ZETA2 = math.pi**2 / 6
ZETA3 = 1.2020569031595943


def test_i_first_values():
    assert i_first(1, 2, 0) == 0.0
    assert i_first(1, 2, -3) == 0.0
    assert i_first(1, 2, 1) == pytest.approx(ZETA3 / ZETA2, rel=1e-12)
    assert i_first(1, 2, 4) == pytest.approx(16 * ZETA3 / ZETA2, rel=1e-12)


def test_i_first_three_percent_at_fifteen():
    exact = float(i_exact(1, 2, 15))
    rel = abs(i_first(1, 2, 15.0) - exact) / exact
    assert rel <= 0.035


def test_i_center_constants():
    expected = ZETA3 / ZETA2 + EULER_GAMMA - 0.5 * math.log(2 * math.pi)
    assert i_center(1, 2, 1) == pytest.approx(expected, rel=1e-12)
    assert i_center(1, 2, 0) == 0.0
    # below 1 the log is truncated away
    assert i_center(1, 2, 0.5) == pytest.approx(
        i_first(1, 2, 0.5) + EULER_GAMMA - 0.5 * math.log(2 * math.pi), rel=1e-12
    )


def test_i_center_tracks_staircase_in_band():
    # the estimate hugs the staircase: error stays below 1.5 on [5, 15]
    for w in np.linspace(5, 15, 41):
        exact = float(i_exact(1, 2, Fraction(float(w)).limit_denominator(10**6)))
        assert abs(i_center(1, 2, float(w)) - exact) < 1.5


def test_i_residue_with_no_zeros_is_centerline(zero_table):
    empty = ZeroTable(())
    for w in (1.0, 2.5, 7.0):
        assert i_residue(1, 2, w, 50.0, empty) == pytest.approx(i_center(1, 2, w), rel=1e-12)
    # equivalently: truncation below the first zero
    assert i_residue(1, 2, 3.0, 10.0, zero_table) == pytest.approx(i_center(1, 2, 3.0), rel=1e-12)


def test_i_residue_is_real_and_finite(zero_table):
    vals = i_residue_curve(1, 2, np.linspace(2, 20, 50), 100.0, zero_table)
    assert np.all(np.isfinite(vals))


def test_i_residue_improves_rms(zero_table):
    ws = np.arange(2.0, 20.0 + 1e-9, 0.25)
    exact = np.array([float(i_exact(1, 2, Fraction(x).limit_denominator(10**6))) for x in ws])
    center = np.array([i_center(1, 2, float(x)) for x in ws])
    residue = i_residue_curve(1, 2, ws, 100.0, zero_table)
    assert np.sqrt(np.mean((residue - exact) ** 2)) < np.sqrt(np.mean((center - exact) ** 2))


def test_i_residue_rejects_nonpositive_w(zero_table):
    with pytest.raises(DomainError):
        i_residue(1, 2, 0.0, 50.0, zero_table)


def test_s_first_square_root_series_coefficients():
    """For square roots the series must be sum (2 zeta(3)/zeta(2))^m w^(2m) / ((2m)! m!)."""
    c = 2 * ZETA3 / ZETA2
    for w in (0.5, 1.0, 2.0, 5.0):
        explicit = sum(
            c**m * w ** (2 * m) / (math.factorial(2 * m) * math.factorial(m))
            for m in range(1, 25)
        )
        assert s_first(1, 2, w) == pytest.approx(explicit, rel=1e-12)


def test_s_first_at_zero():
    assert s_first(1, 2, 0) == 0.0


def test_s_first_matches_grid_conv_exp():
    """Cross-check of the closed form against the grid pipeline."""
    from radsum.measure import grid_conv_exp

    h = Fraction(1, 256)
    for j, k in [(1, 2), (1, 3), (2, 3)]:
        a = k / j - 1
        c = (k / j) * zeta_em(complex(1 + k / j)).real / zeta_em(complex(k)).real
        n = int(3 / float(h)) + 1
        t = np.arange(n) * float(h)
        grid = grid_conv_exp(GridDensity(h, c * t**a), 3.0)
        for w in (1.0, 2.0, 3.0):
            quad = grid_integral(grid, w)
            assert quad == pytest.approx(s_first(j, k, w), abs=10 * float(h))


def test_buchstab_factor_plateau_honest_values():
    """The factor's density is the two-sided-truncated-log conv-exp; it equals
    (1 + ln(t-1))/t on [2, 3] and tends to e^(-gamma) = 0.5615..."""
    factor = buchstab_factor(t_max=6.5)
    assert factor.atom0 == 1.0
    assert factor.value_at(3.0) == pytest.approx((1 + math.log(2)) / 3, abs=2e-3)
    assert factor.value_at(6.0) == pytest.approx(math.exp(-EULER_GAMMA), abs=2e-3)


def test_s_center_reference_points():
    """Centerline estimate against exact counts (tracking, not certifying,
    the headline tolerance: the w=5 deviation sits at about 10.3%)."""
    ws = [5.0, 10.0]
    approx = s_center_curve(1, 2, ws, Fraction(1, 256))
    exact = [float(s_exact(1, 2, int(w))) for w in ws]
    rel5 = abs(approx[0] - exact[0]) / exact[0]
    rel10 = abs(approx[1] - exact[1]) / exact[1]
    assert 0.09 < rel5 < 0.12
    assert rel10 < 0.10


def test_s_center_zero_and_monotone():
    assert s_center(1, 2, 0.0) == 0.0
    vals = s_center_curve(1, 2, [1.0, 2.0, 4.0, 8.0], Fraction(1, 128))
    assert all(b > a for a, b in zip(vals, vals[1:]))


def test_s_center_curve_matches_single_calls():
    ws = [2.0, 6.0]
    curve = s_center_curve(1, 2, ws, Fraction(1, 128))
    for w, v in zip(ws, curve):
        assert s_center(1, 2, w, Fraction(1, 128)) == pytest.approx(v, rel=1e-9)


def test_s_hybrid_with_full_exact_window_tracks_count():
    # with w0 = w the density is exactly the discretized jump measure
    w = 6.0
    approx = s_hybrid(1, 2, w, w, Fraction(1, 256))
    exact = s_exact(1, 2, 6)
    assert abs(approx - exact) / exact < 0.08


def test_s_hybrid_disabled_equals_centerline():
    assert s_hybrid(1, 2, 5.0, 0.0) == pytest.approx(s_center(1, 2, 5.0), rel=1e-12)


def test_residual_report_fit_and_errors():
    report = residual_report(1, 2, 12.0, 17.0 / 54.0)
    assert report.fitted_exponent <= 1.3
    assert report.unconditional_exponent == 1.0
    assert report.reference_exponent == pytest.approx(2 * 17 / 54)
    with pytest.raises(DomainError):
        residual_report(1, 2, 0.5, 0.5)


def test_residual_report_cube_root_case():
    report = residual_report(1, 3, 12.0, 1.0 / 3.0, n_points=80, n_windows=10)
    assert report.fitted_exponent <= 1.3
    assert report.reference_exponent == pytest.approx(1.0)


def test_estimators_vanish_at_zero_and_grow_past_one(zero_table):
    assert i_first(1, 2, 0.0) == 0.0
    assert i_center(1, 2, 0.0) == 0.0
    assert s_first(1, 2, 0.0) == 0.0
    assert s_center(1, 2, 0.0) == 0.0
    ws = np.arange(1.0, 15.0 + 1e-9, 0.5)
    for series in (
        [i_first(1, 2, float(w)) for w in ws],
        [i_center(1, 2, float(w)) for w in ws],
        list(i_residue_curve(1, 2, ws, 100.0, zero_table)),
        [s_first(1, 2, float(w)) for w in ws],
    ):
        assert all(b >= a for a, b in zip(series, series[1:]))


def test_estimate_kind_dispatch(zero_table):
    assert i_estimate(1, 2, 3.0, EstimateKind.first_order()) == i_first(1, 2, 3.0)
    assert i_estimate(1, 2, 3.0, EstimateKind.centerline()) == i_center(1, 2, 3.0)
    kind = EstimateKind.residue(50.0, zero_table)
    assert i_estimate(1, 2, 3.0, kind) == i_residue(1, 2, 3.0, 50.0, zero_table)
    with pytest.raises(DomainError):
        EstimateKind.residue(500.0, zero_table)
