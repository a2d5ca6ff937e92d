"""Finite discrete measures over radical combos, and sampled grid densities.

`PointMassMeasure` keeps exact rational weights keyed by canonical
`RadicalCombo` support points, so aggregation under convolution is exact and
order-independent.  The convolution exponential

    exp*(mu) = delta_0 + mu + mu*mu/2! + ...

terminates under a support cap because the m-fold convolution power of a
measure supported on [delta, inf) lives on [m*delta, inf).

`GridDensity` is the continuous-estimate counterpart: uniform-step samples
with an optional atom at t = 0, convolved by trapezoid rule.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import DomainError
from .radical import (
    DEFAULT_SCALE_BITS,
    Ordering,
    RadicalCombo,
    combo_add,
    combo_enclosure,
    compare_threshold,
    format_combo,
)

_SCALE = DEFAULT_SCALE_BITS


def _scaled_bounds(x: Fraction, shift: int = _SCALE) -> tuple[int, int]:
    """Integers (lo, hi) with lo <= x * 2^shift <= hi."""
    n = x.numerator << shift
    lo = n // x.denominator
    hi = lo if n % x.denominator == 0 else lo + 1
    return lo, hi


@dataclass
class PointMassMeasure:
    """Finite measure: exact weights on canonical combos, all values <= cap.

    `enclosures` carries a certified integer enclosure of each support value
    at scale 2^-_SCALE so repeated threshold tests are integer arithmetic.
    Treat instances as immutable once built.
    """

    j: int
    k: int
    cap: Fraction
    masses: dict[RadicalCombo, Fraction] = field(default_factory=dict)
    enclosures: dict[RadicalCombo, tuple[int, int]] = field(default_factory=dict)

    def __post_init__(self):
        self.cap = Fraction(self.cap)
        for combo in self.masses:
            if combo not in self.enclosures:
                self.enclosures[combo] = combo_enclosure(combo, _SCALE)

    def zero_combo(self) -> RadicalCombo:
        return RadicalCombo.zero(self.j, self.k)

    def total_mass(self) -> Fraction:
        return sum(self.masses.values(), Fraction(0))

    def support_size(self) -> int:
        return len(self.masses)


def _fits_cap(
    combo: RadicalCombo,
    lo: int,
    hi: int,
    cap: Fraction,
    cap_lo: int,
    cap_hi: int,
) -> bool:
    """value(combo) <= cap, deciding by enclosure and falling back to exact."""
    if hi <= cap_lo:
        return True
    if lo > cap_hi:
        return False
    return compare_threshold(combo, cap) is not Ordering.GREATER


def build_dI(j: int, k: int, cap: Fraction | int) -> PointMassMeasure:
    """Point masses of weight 1/m at every value m * n^(j/k) <= cap, n k-free.

    Membership is exact: m * n^(j/k) <= cap iff m^k * n^j <= cap^k.
    """
    cap = Fraction(cap)
    if cap <= 0:
        raise DomainError(f"cap must be positive, got {cap}")
    from .arith import shared_sieve

    masses: dict[RadicalCombo, Fraction] = {}
    cap_k = cap**k
    sieve = shared_sieve(k)
    n = 0
    while True:
        n += 1
        if Fraction(n) ** j > cap_k:
            break
        if not sieve.is_kfree(n):
            continue
        m = 0
        while True:
            m += 1
            if Fraction(m) ** k * n**j > cap_k:
                break
            masses[RadicalCombo.single(j, k, n, m)] = Fraction(1, m)
    return PointMassMeasure(j, k, cap, masses)


def convolve(
    mu: PointMassMeasure, nu: PointMassMeasure, cap: Fraction | int
) -> PointMassMeasure:
    """Pushforward of addition: masses at p+q with weight w_p * w_q, pruned at cap.

    Support points whose value exceeds cap are dropped; boundary points are
    kept (the counting functions use closed thresholds).
    """
    if (mu.j, mu.k) != (nu.j, nu.k):
        raise DomainError("cannot convolve measures with different exponents")
    cap = Fraction(cap)
    cap_lo, cap_hi = _scaled_bounds(cap)
    # iterate nu ascending so each mu-point can stop early
    nu_items = sorted(
        ((nu.enclosures[q][0], q, wq) for q, wq in nu.masses.items()), key=lambda t: t[0]
    )
    out_masses: dict[RadicalCombo, Fraction] = {}
    out_enc: dict[RadicalCombo, tuple[int, int]] = {}
    for p, wp in mu.masses.items():
        plo, phi = mu.enclosures[p]
        for qlo, q, wq in nu_items:
            lo = plo + qlo
            if lo > cap_hi:
                # certainly above cap, and qlo only grows from here
                break
            key = combo_add(p, q)
            hi = phi + nu.enclosures[q][1]
            if not _fits_cap(key, lo, hi, cap, cap_lo, cap_hi):
                # boundary enclosure rejected exactly; a later point could
                # still fit (enclosures overlap), so no early break here
                continue
            if key in out_masses:
                out_masses[key] += wp * wq
            else:
                out_masses[key] = wp * wq
                out_enc[key] = (lo, hi)
    return PointMassMeasure(mu.j, mu.k, cap, out_masses, out_enc)


def conv_exp(mu: PointMassMeasure, cap: Fraction | int) -> PointMassMeasure:
    """delta_0 + sum_{m>=1} mu^{*m} / m!, truncated to support values <= cap.

    Requires no mass at the zero combo (the series would not terminate).
    Stage m carries mu^{*m}/m! and is pruned by the cap before the next
    stage, which bounds memory because stage support minima grow linearly.
    """
    cap = Fraction(cap)
    if cap > mu.cap:
        raise DomainError(f"cap {cap} exceeds the argument's support bound {mu.cap}")
    zero = mu.zero_combo()
    if zero in mu.masses:
        raise DomainError("conv_exp requires no mass at the zero combo")
    cap_lo, cap_hi = _scaled_bounds(cap)
    stage_masses: dict[RadicalCombo, Fraction] = {}
    stage_enc: dict[RadicalCombo, tuple[int, int]] = {}
    for combo, w in mu.masses.items():
        lo, hi = mu.enclosures[combo]
        if _fits_cap(combo, lo, hi, cap, cap_lo, cap_hi):
            stage_masses[combo] = w
            stage_enc[combo] = (lo, hi)
    acc_masses: dict[RadicalCombo, Fraction] = {zero: Fraction(1)}
    acc_enc: dict[RadicalCombo, tuple[int, int]] = {zero: (0, 0)}
    stage = PointMassMeasure(mu.j, mu.k, cap, stage_masses, stage_enc)
    m = 1
    while stage.masses:
        for combo, w in stage.masses.items():
            if combo in acc_masses:
                acc_masses[combo] += w
            else:
                acc_masses[combo] = w
                acc_enc[combo] = stage.enclosures[combo]
        m += 1
        stage = convolve(stage, mu, cap)
        inv_m = Fraction(1, m)
        stage.masses = {c: w * inv_m for c, w in stage.masses.items()}
    return PointMassMeasure(mu.j, mu.k, cap, acc_masses, acc_enc)


def cumulative(
    mu: PointMassMeasure, w: Fraction | int, include_zero: bool = False
) -> Fraction:
    """Exact total weight at support values <= w; the atom at 0 is optional."""
    w = Fraction(w)
    if w > mu.cap:
        raise DomainError(f"w={w} exceeds the measure cap {mu.cap}; support may be incomplete")
    w_lo, w_hi = _scaled_bounds(w)
    total = Fraction(0)
    zero = mu.zero_combo()
    for combo, weight in mu.masses.items():
        if combo == zero:
            if include_zero:
                total += weight
            continue
        lo, hi = mu.enclosures[combo]
        if _fits_cap(combo, lo, hi, w, w_lo, w_hi):
            total += weight
    return total


def dump_measure(mu: PointMassMeasure) -> str:
    """Debug dump: `<canonical combo>\\t<weight p/q>\\t<decimal value>` per line."""
    rows = []
    for combo, weight in mu.masses.items():
        lo, hi = mu.enclosures[combo]
        rows.append((lo, combo, weight))
    rows.sort(key=lambda t: t[0])
    lines = []
    for lo, combo, weight in rows:
        value = lo / 2.0**_SCALE
        lines.append(f"{format_combo(combo)}\t{weight}\t{value:.12g}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# grid densities
# ---------------------------------------------------------------------------


@dataclass
class GridDensity:
    """Density samples on the uniform grid t = i*h, plus an atom at t = 0."""

    h: Fraction
    samples: np.ndarray
    atom0: float = 0.0

    def __post_init__(self):
        self.h = Fraction(self.h)
        if self.h <= 0:
            raise DomainError(f"grid step must be positive, got {self.h}")
        self.samples = np.asarray(self.samples, dtype=np.float64)
        if self.samples.ndim != 1:
            raise DomainError("samples must be one-dimensional")

    def __len__(self) -> int:
        return len(self.samples)

    def times(self) -> np.ndarray:
        return np.arange(len(self.samples)) * float(self.h)

    def value_at(self, t: float) -> float:
        i = int(round(t / float(self.h)))
        if not 0 <= i < len(self.samples):
            raise DomainError(f"t={t} outside the sampled grid")
        return float(self.samples[i])


def grid_convolve(f: GridDensity, g: GridDensity, out_len: int | None = None) -> GridDensity:
    """Trapezoid-rule convolution of two densities on the same grid.

    Atoms act as shifts: (a*delta + f) * (b*delta + g) contributes a*g, b*f
    and a*b*delta on top of the continuous part.
    """
    if f.h != g.h:
        raise DomainError(f"grid step mismatch: {f.h} vs {g.h}")
    n = out_len if out_len is not None else len(f) + len(g) - 1
    h = float(f.h)
    fa, ga = f.samples, g.samples
    conv = np.convolve(fa, ga) * h
    full = np.zeros(n)
    full[: min(n, len(conv))] = conv[:n]
    fa_n = np.zeros(n)
    fa_n[: min(n, len(fa))] = fa[:n]
    ga_n = np.zeros(n)
    ga_n[: min(n, len(ga))] = ga[:n]
    full -= 0.5 * h * (fa[0] * ga_n + ga[0] * fa_n)
    out = full + f.atom0 * ga_n + g.atom0 * fa_n
    return GridDensity(f.h, out, f.atom0 * g.atom0)


def grid_integral(f: GridDensity, t: float, include_atom: bool = False) -> float:
    """Trapezoid integral of the density over [0, t] (+ atom if requested)."""
    i = int(round(t / float(f.h)))
    if not 0 <= i < len(f.samples):
        raise DomainError(f"t={t} outside the sampled grid")
    s = f.samples[: i + 1]
    value = float((0.5 * (s[0] + s[-1]) + s[1:-1].sum()) * float(f.h)) if i > 0 else 0.0
    return value + (f.atom0 if include_atom else 0.0)


def grid_conv_exp(f: GridDensity, t_max: float, tol: float = 1e-12) -> GridDensity:
    """Convolution exponential of a pure density, sampled up to t_max.

    Result carries the unit atom of delta_0.  The series is truncated when
    the closed-form majorant for a constant dominating density (the a = 0
    case of the power-law series) falls below tol, or the stage vanishes on
    the grid.
    """
    if f.atom0 != 0.0:
        raise DomainError("grid_conv_exp expects a pure density (no atom)")
    h = float(f.h)
    n = int(round(t_max / h)) + 1
    base = np.zeros(n)
    base[: min(n, len(f))] = f.samples[:n]
    dom = float(np.max(base, initial=0.0))
    total = base.copy()
    stage = GridDensity(f.h, base)
    m = 1
    while True:
        m += 1
        stage = grid_convolve(stage, GridDensity(f.h, base), out_len=n)
        stage = GridDensity(f.h, stage.samples / m)
        total += stage.samples
        majorant = (
            dom**m * t_max ** (m - 1) / (math.factorial(m) * math.factorial(m - 1))
            if dom > 0
            else 0.0
        )
        if majorant < tol or not np.any(stage.samples):
            break
        if m > 400:
            raise DomainError("conv-exp series did not truncate; check the density")
    return GridDensity(f.h, total, 1.0)


# ---------------------------------------------------------------------------
# closed forms for exp* of c * t^a (power-law densities)
# ---------------------------------------------------------------------------


def conv_exp_power_density(c: float, a: float, t: np.ndarray | float) -> np.ndarray | float:
    """Density of exp*(c * v^a) minus its delta: sum over m >= 1 of
    c^m Gamma(a+1)^m / (m! Gamma(m(a+1))) * t^(m(a+1)-1), for a > -1, c >= 0."""
    if a <= -1:
        raise DomainError(f"power-law exponent must exceed -1, got {a}")
    t_arr = np.asarray(t, dtype=np.float64)
    out = np.zeros_like(t_arr)
    log_t = np.log(np.where(t_arr > 0, t_arr, 1.0))
    m = 0
    while True:
        m += 1
        log_coef = (
            m * (math.log(c) if c > 0 else -math.inf)
            + m * math.lgamma(a + 1)
            - math.lgamma(m + 1)
            - math.lgamma(m * (a + 1))
        )
        if log_coef == -math.inf:
            break
        term = np.where(t_arr > 0, np.exp(log_coef + (m * (a + 1) - 1) * log_t), 0.0)
        if m * (a + 1) - 1 == 0:
            term = np.where(t_arr >= 0, math.exp(log_coef), term)
        out += term
        if m > 3 and np.max(term, initial=0.0) < 1e-16 * max(1.0, np.max(out, initial=0.0)):
            break
        if m > 500:
            break
    return out if isinstance(t, np.ndarray) else float(out)


def conv_exp_power_integral(c: float, a: float, w: float, rel_tol: float = 1e-12) -> float:
    """Integral over (0, w] of exp*(c * v^a):
    sum over m >= 1 of c^m Gamma(a+1)^m / (m! Gamma(m(a+1))) * w^(m(a+1)) / (m(a+1))."""
    if a <= -1:
        raise DomainError(f"power-law exponent must exceed -1, got {a}")
    if w <= 0 or c == 0:
        return 0.0
    log_w = math.log(w)
    total = 0.0
    m = 0
    while True:
        m += 1
        log_term = (
            m * math.log(c)
            + m * math.lgamma(a + 1)
            - math.lgamma(m + 1)
            - math.lgamma(m * (a + 1))
            + m * (a + 1) * log_w
            - math.log(m * (a + 1))
        )
        term = math.exp(log_term)
        total += term
        if m > 3 and term < rel_tol * max(total, 1e-300):
            return total
        if m > 10_000:
            raise DomainError("power-law conv-exp integral did not converge")
