"""Riemann zeta evaluation and zero-table ingestion.

The engine is Euler-Maclaurin summation in double precision with exact
Bernoulli coefficients, routed through the functional equation for arguments
left of the critical line.  It is accurate to ~1e-13 for heights within the
configured cap, which is all the desk-scale estimates here require.  Zeros
are ingested from text tables (one ascending ordinate per line, '#' comments
allowed) and validated against the engine; they are never computed.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterable

import mpmath

from .errors import (
    ConditioningError,
    DomainError,
    HeightCapError,
    ZeroTableDataError,
    ZeroTableParseError,
)

DEFAULT_HEIGHT_CAP = 120.0
ZERO_VALIDATION_TOL = 1e-6
SIMPLE_ZERO_FLOOR = 1e-8
EULER_GAMMA = 0.5772156649015328606


def _bernoulli_even(count: int) -> list[Fraction]:
    """B_0, B_2, ..., B_{2(count-1)} exactly, via the defining recurrence."""
    full = [Fraction(1)]
    for m in range(1, 2 * count - 1):
        s = sum(comb(m + 1, i) * full[i] for i in range(m))
        full.append(Fraction(-s, m + 1))
    return full[::2]

_MAX_ORDER = 16
_B_OVER_FACT = [
    float(b) / math.factorial(2 * r)
    for r, b in enumerate(_bernoulli_even(_MAX_ORDER + 2))
]


def _auto_params(z: complex, terms: int | None, order: int | None) -> tuple[int, int]:
    n = terms if terms is not None else max(24, int(1.35 * abs(z.imag)) + 12)
    m = order if order is not None else 14
    if not (2 <= m <= _MAX_ORDER):
        raise DomainError(f"Bernoulli order must be in [2, {_MAX_ORDER}], got {m}")
    if n < 2:
        raise DomainError(f"need at least 2 direct terms, got {n}")
    return n, m


def _check_height(z: complex, max_height: float) -> None:
    if abs(z.imag) > max_height:
        raise HeightCapError(
            f"|Im z| = {abs(z.imag):.3f} exceeds the height cap {max_height}; "
            "raise max_height explicitly if this is intended"
        )


def zeta_em(
    z: complex,
    terms: int | None = None,
    order: int | None = None,
    max_height: float = DEFAULT_HEIGHT_CAP,
) -> complex:
    """zeta(z) by Euler-Maclaurin: direct sum + integral + Bernoulli corrections.

    Valid to the left of the pole for Re z > -(2*order - 1); parameters are
    auto-selected from |Im z| when not given.  The remainder of the truncated
    Bernoulli tail is below ~1e-13 for heights within the cap.
    """
    z = complex(z)
    if z == 1:
        raise DomainError("zeta has a pole at z = 1")
    _check_height(z, max_height)
    n, m = _auto_params(z, terms, order)
    s = 0j
    for i in range(1, n):
        s += cmath.exp(-z * math.log(i))
    ln_n = math.log(n)
    s += cmath.exp((1 - z) * ln_n) / (z - 1)
    s += 0.5 * cmath.exp(-z * ln_n)
    poly = z
    for r in range(1, m + 1):
        if r > 1:
            poly *= (z + 2 * r - 3) * (z + 2 * r - 2)
        s += _B_OVER_FACT[r] * poly * cmath.exp((-z - 2 * r + 1) * ln_n)
    return s


def zeta_em_deriv(
    z: complex,
    terms: int | None = None,
    order: int | None = None,
    max_height: float = DEFAULT_HEIGHT_CAP,
) -> complex:
    """zeta'(z) by term-wise differentiation of the Euler-Maclaurin formula."""
    z = complex(z)
    if z == 1:
        raise DomainError("zeta has a pole at z = 1")
    _check_height(z, max_height)
    n, m = _auto_params(z, terms, order)
    s = 0j
    for i in range(2, n):
        ln_i = math.log(i)
        s += -ln_i * cmath.exp(-z * ln_i)
    ln_n = math.log(n)
    n_pow = cmath.exp((1 - z) * ln_n)
    s += -ln_n * n_pow / (z - 1) - n_pow / (z - 1) ** 2
    s += -0.5 * ln_n * cmath.exp(-z * ln_n)
    poly = z
    dpoly = 1 + 0j
    for r in range(1, m + 1):
        if r > 1:
            a = z + 2 * r - 3
            b = z + 2 * r - 2
            dpoly = dpoly * a * b + poly * (a + b)
            poly = poly * a * b
        n_fac = cmath.exp((-z - 2 * r + 1) * ln_n)
        s += _B_OVER_FACT[r] * (dpoly - poly * ln_n) * n_fac
    return s


def _is_trivial_zero(z: complex) -> bool:
    return (
        z.imag == 0.0
        and z.real < 0
        and z.real == int(z.real)
        and int(z.real) % 2 == 0
    )


def zeta_reflect(z: complex, max_height: float = DEFAULT_HEIGHT_CAP) -> complex:
    """zeta(z) for Re z < 1/2 via the functional equation.

    zeta(z) = 2^z pi^(z-1) sin(pi z / 2) Gamma(1-z) zeta(1-z); the trivial
    zeros at negative even integers are returned as exact 0.
    """
    z = complex(z)
    if _is_trivial_zero(z):
        return 0j
    if z == 0:
        # sin(pi z/2) * zeta(1-z) -> -pi/2 as z -> 0; the formula's limit is -1/2
        return complex(-0.5)
    gamma_factor = complex(mpmath.gamma(1 - mpmath.mpc(z)))
    return (
        2**z
        * cmath.pi ** (z - 1)
        * cmath.sin(cmath.pi * z / 2)
        * gamma_factor
        * zeta_em(1 - z, max_height=max_height)
    )


def zeta(z: complex, max_height: float = DEFAULT_HEIGHT_CAP) -> complex:
    """zeta(z) routed between the direct engine and the reflection formula."""
    z = complex(z)
    if z == 1:
        raise DomainError("zeta has a pole at z = 1")
    if z.real >= 0.5:
        return zeta_em(z, max_height=max_height)
    return zeta_reflect(z, max_height=max_height)


def zeta_deriv(z: complex, max_height: float = DEFAULT_HEIGHT_CAP) -> complex:
    """zeta'(z), using the differentiated functional equation for Re z < -1/2."""
    z = complex(z)
    if z == 1:
        raise DomainError("zeta has a pole at z = 1")
    if z.real >= -0.5:
        return zeta_em_deriv(z, max_height=max_height)
    # A(z) = 2^z pi^(z-1) sin(pi z/2) Gamma(1-z); zeta = A * zeta(1-z)
    # A'(z) has no pole once the digamma term is grouped with sin.
    w = 1 - z
    gamma_w = complex(mpmath.gamma(mpmath.mpc(w)))
    psi_w = complex(mpmath.digamma(mpmath.mpc(w)))
    pref = 2**z * cmath.pi ** (z - 1) * gamma_w
    sin_t = cmath.sin(cmath.pi * z / 2)
    cos_t = cmath.cos(cmath.pi * z / 2)
    a_val = pref * sin_t
    a_deriv = pref * ((math.log(2 * math.pi) - psi_w) * sin_t + (cmath.pi / 2) * cos_t)
    return a_deriv * zeta_em(w, max_height=max_height) - a_val * zeta_em_deriv(
        w, max_height=max_height
    )


def tri_zeta(
    j: int,
    k: int,
    z: complex,
    denominator_floor: float = 1e-8,
    max_height: float = DEFAULT_HEIGHT_CAP,
) -> complex:
    """The ratio zeta(k*z + 1) * zeta(j*z) / zeta(j*k*z).

    Raises ConditioningError near the poles (z = 0, j*z = 1, j*k*z = 1) and
    near zeros of the denominator.
    """
    z = complex(z)
    tol = 1e-9
    if abs(z) < tol or abs(j * z - 1) < tol or abs(j * k * z - 1) < tol:
        raise ConditioningError(f"tri-zeta ratio evaluated too close to a pole at z={z}")
    den = zeta(complex(j * k) * z, max_height=max_height)
    if abs(den) < denominator_floor:
        raise ConditioningError(
            f"|zeta({j * k}z)| = {abs(den):.3e} below floor {denominator_floor}"
        )
    num = zeta(complex(k) * z + 1, max_height=max_height) * zeta(
        complex(j) * z, max_height=max_height
    )
    return num / den


@dataclass
class ZeroTable:
    """Validated ordinates of nontrivial zeros (assumed simple, on Re = 1/2)."""

    ordinates: tuple[float, ...]
    _derivs: dict[float, complex] = field(default_factory=dict, repr=False)

    def __len__(self) -> int:
        return len(self.ordinates)

    def max_height(self) -> float:
        return self.ordinates[-1] if self.ordinates else 0.0

    def below(self, height: float) -> tuple[float, ...]:
        """Ordinates strictly below the truncation height."""
        return tuple(g for g in self.ordinates if g < height)

    def deriv(self, ordinate: float) -> complex:
        """zeta'(1/2 + i*ordinate), cached; rejects near-multiple zeros."""
        if ordinate not in self._derivs:
            value = zeta_em_deriv(
                complex(0.5, ordinate), max_height=abs(ordinate) + 8.0
            )
            if abs(value) < SIMPLE_ZERO_FLOOR:
                raise ConditioningError(
                    f"|zeta'(rho)| = {abs(value):.2e} at ordinate {ordinate}; "
                    "multiple zeros are not supported"
                )
            self._derivs[ordinate] = value
        return self._derivs[ordinate]


def load_zeros(lines: Iterable[str], validation_tol: float = ZERO_VALIDATION_TOL) -> ZeroTable:
    """Parse and validate a zeros table from an iterable of text lines.

    Format: one decimal ordinate per line, strictly ascending, '#' comments
    and blank lines ignored.  Each ordinate g must satisfy
    |zeta(1/2 + i g)| < validation_tol under the engine.
    """
    ordinates: list[float] = []
    prev = 0.0
    for lineno, raw in enumerate(lines, start=1):
        text = raw.split("#", 1)[0].strip()
        if not text:
            continue
        try:
            g = float(text)
        except ValueError:
            raise ZeroTableParseError(f"not a decimal ordinate: {text!r}", lineno) from None
        if not math.isfinite(g) or g <= 0:
            raise ZeroTableParseError(f"ordinate must be a positive real, got {text!r}", lineno)
        if g <= prev:
            raise ZeroTableParseError(
                f"ordinates must be strictly ascending ({g} after {prev})", lineno
            )
        resid = abs(zeta_em(complex(0.5, g), max_height=g + 8.0))
        if resid >= validation_tol:
            raise ZeroTableDataError(
                f"line {lineno}: |zeta(1/2 + {g}i)| = {resid:.3e} "
                f"fails the zero check (tol {validation_tol})"
            )
        ordinates.append(g)
        prev = g
    return ZeroTable(tuple(ordinates))


def load_zeros_text(text: str, validation_tol: float = ZERO_VALIDATION_TOL) -> ZeroTable:
    return load_zeros(text.splitlines(), validation_tol)


def load_zeros_path(path, validation_tol: float = ZERO_VALIDATION_TOL) -> ZeroTable:
    with open(path, "r", encoding="utf-8") as fh:
        return load_zeros(fh, validation_tol)


def default_zeros_path():
    """Path of the bundled 100-zero table."""
    from importlib.resources import files

    return files("radsum").joinpath("data/zeros100.txt")


def load_default_zeros() -> ZeroTable:
    return load_zeros_text(default_zeros_path().read_text(encoding="utf-8"))
