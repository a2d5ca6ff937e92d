"""Exact ground truth: enumeration, the two staircases, and their identities.

Everything here is exact.  Membership tests reduce to integer comparisons:
m * n^(j/k) <= w iff m^k * n^j <= w^k, and the depth-first enumeration of
sums tracks certified integer enclosures (outward-rounded k-th roots at a
fixed bit scale), falling back to exact radical comparison only when an
enclosure straddles the threshold.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction

from .arith import QConvention, q_count_rational_power, shared_sieve
from .errors import DomainError, IdentityError
from .measure import PointMassMeasure, build_dI, conv_exp, cumulative
from .radical import (
    Ordering,
    RadicalCombo,
    check_exponent,
    scaled_root,
    combo_compare,
    compare_threshold,
)

_DFS_SHIFT = 160


@dataclass(frozen=True)
class Staircase:
    """Sorted jumps (location combo, positive weight) plus a jump convention."""

    jumps: tuple[tuple[RadicalCombo, Fraction], ...]
    convention: QConvention

    def value_at(self, w: Fraction | int) -> Fraction:
        """Sum of jump weights below w, with the convention applied at w itself."""
        w = Fraction(w)
        total = Fraction(0)
        for combo, weight in self.jumps:
            order = compare_threshold(combo, w)
            if order is Ordering.LESS:
                total += weight
            elif order is Ordering.EQUAL:
                if self.convention is QConvention.RIGHT_CONTINUOUS:
                    total += weight
                else:
                    total += weight / 2
        return total


def _bases_with_roots(j: int, k: int, w: Fraction) -> tuple[list[int], list[int], list[int]]:
    """k-free bases n with n^(j/k) <= w, ascending, with scaled root enclosures."""
    sieve = shared_sieve(k)
    wk = w**k
    bases: list[int] = []
    lows: list[int] = []
    highs: list[int] = []
    n = 0
    while True:
        n += 1
        if Fraction(n) ** j > wk:
            break
        if not sieve.is_kfree(n):
            continue
        x, exact = scaled_root(n, j, k, _DFS_SHIFT)
        bases.append(n)
        lows.append(x)
        highs.append(x if exact else x + 1)
    return bases, lows, highs


def _threshold_bounds(w: Fraction) -> tuple[int, int]:
    n = w.numerator << _DFS_SHIFT
    lo = n // w.denominator
    hi = lo if n % w.denominator == 0 else lo + 1
    return lo, hi


def _walk_elements(j: int, k: int, w: Fraction, visit) -> None:
    """DFS over combos with value <= w; calls visit(terms, lo, hi) per element.

    `terms` is the in-progress [(base, coeff), ...] stack (bases ascending);
    callers must copy it if they keep it.  Enclosure straddles are resolved
    by exact comparison, so no element at or below w is missed or duplicated.
    """
    bases, lows, highs = _bases_with_roots(j, k, w)
    w_lo, w_hi = _threshold_bounds(w)
    nbases = len(bases)
    terms: list[tuple[int, int]] = []

    def fits(lo: int, hi: int, candidate_terms) -> bool:
        if hi <= w_lo:
            return True
        if lo > w_hi:
            return False
        combo = RadicalCombo(j, k, tuple(candidate_terms))
        return compare_threshold(combo, w) is not Ordering.GREATER

    def rec(start: int, plo: int, phi: int) -> None:
        for i in range(start, nbases):
            xlo, xhi = lows[i], highs[i]
            if plo + xlo > w_hi:
                # base values ascend, so nothing further fits for sure
                break
            m = 0
            cur_lo, cur_hi = plo, phi
            while True:
                m += 1
                cur_lo += xlo
                cur_hi += xhi
                terms.append((bases[i], m))
                if not fits(cur_lo, cur_hi, terms):
                    terms.pop()
                    break
                visit(terms, cur_lo, cur_hi)
                rec(i + 1, cur_lo, cur_hi)
                terms.pop()

    rec(0, 0, 0)


def s_exact(j: int, k: int, w: Fraction | int | float) -> int:
    """S(w): the number of distinct sums of (j/k)-powers at or below w."""
    check_exponent(j, k)
    w = Fraction(w)
    if w <= 0:
        return 0
    count = 0

    def visit(_terms, _lo, _hi):
        nonlocal count
        count += 1

    _walk_elements(j, k, w, visit)
    return count


def enumerate_elements(j: int, k: int, w: Fraction | int | float) -> list[RadicalCombo]:
    """All monoid elements with value <= w, each exactly once, sorted by value."""
    check_exponent(j, k)
    w = Fraction(w)
    if w <= 0:
        return []
    found: list[tuple[int, int, RadicalCombo]] = []

    def visit(terms, lo, hi):
        found.append((lo, hi, RadicalCombo(j, k, tuple(terms))))

    _walk_elements(j, k, w, visit)
    found.sort(key=lambda t: t[0])
    # enclosure-lo order is the value order unless adjacent enclosures
    # overlap out of order, which certified comparison then repairs
    needs_exact_sort = any(
        found[i][1] >= found[i + 1][0]
        and combo_compare(found[i][2], found[i + 1][2]) is Ordering.GREATER
        for i in range(len(found) - 1)
    )
    if needs_exact_sort:
        import functools

        found.sort(
            key=functools.cmp_to_key(lambda s, t: combo_compare(s[2], t[2]).value)
        )
    return [combo for _, _, combo in found]


def i_exact(j: int, k: int, w: Fraction | int | float) -> Fraction:
    """The exponent staircase at w, midpoint convention, as an exact rational.

    I(w) = (1/2) * (sum over m*n^(j/k) < w of 1/m  +  sum over <= w of 1/m);
    each membership test is the integer comparison m^k * n^j vs w^k.
    """
    check_exponent(j, k)
    w = Fraction(w)
    if w <= 0:
        return Fraction(0)
    sieve = shared_sieve(k)
    wk = w**k
    below = Fraction(0)
    at_or_below = Fraction(0)
    n = 0
    while True:
        n += 1
        if Fraction(n) ** j > wk:
            break
        if not sieve.is_kfree(n):
            continue
        nj = n**j
        m = 0
        while True:
            m += 1
            q = Fraction(m**k * nj)
            if q < wk:
                below += Fraction(1, m)
                at_or_below += Fraction(1, m)
            elif q == wk:
                at_or_below += Fraction(1, m)
            else:
                break
    return (below + at_or_below) / 2


def i_staircase(j: int, k: int, cap: Fraction | int) -> Staircase:
    """The jumps of the exponent staircase up to cap (weight 1/m at m*n^(j/k))."""
    measure = build_dI(j, k, Fraction(cap))
    jumps = sorted(
        ((measure.enclosures[c][0], c, wt) for c, wt in measure.masses.items()),
        key=lambda t: t[0],
    )
    return Staircase(
        tuple((c, wt) for _, c, wt in jumps), QConvention.MIDPOINT
    )


def i_via_q(j: int, k: int, w: Fraction | int | float) -> Fraction:
    """The staircase via k-free counting functions:
    sum over m <= floor(w) of (1/m) * Q_k((w/m)^(k/j)) at the midpoint convention."""
    check_exponent(j, k)
    w = Fraction(w)
    if w <= 0:
        return Fraction(0)
    total = Fraction(0)
    m_max = w.numerator // w.denominator
    for m in range(1, m_max + 1):
        total += Fraction(1, m) * q_count_rational_power(
            k, w / m, k, j, QConvention.MIDPOINT
        )
    return total


_CONV_EXP_CACHE: dict[tuple[int, int], PointMassMeasure] = {}
_CONV_EXP_LOCK = threading.Lock()


def conv_exp_measure(j: int, k: int, cap: Fraction | int) -> PointMassMeasure:
    """exp*(dI) up to cap, cached per (j, k) at the largest cap seen.

    Pruning at a larger cap never changes masses at or below a smaller w,
    because every partial sum of a decomposition of v <= w is itself <= w,
    so reusing a wider measure is exact.
    """
    check_exponent(j, k)
    cap = Fraction(cap)
    with _CONV_EXP_LOCK:
        cached = _CONV_EXP_CACHE.get((j, k))
        if cached is None or cached.cap < cap:
            cached = conv_exp(build_dI(j, k, cap), cap)
            _CONV_EXP_CACHE[(j, k)] = cached
        return cached


def s_via_conv_exp(j: int, k: int, w: Fraction | int | float) -> int:
    """S(w) through the convolution exponential of the jump measure.

    Equals cumulative(conv_exp(build_dI(j, k, w), w), w) with the zero atom
    excluded; raises IdentityError if the cumulative is not an integer.
    """
    check_exponent(j, k)
    w = Fraction(w)
    if w <= 0:
        return 0
    total = cumulative(conv_exp_measure(j, k, w), w, include_zero=False)
    if total.denominator != 1:
        raise IdentityError(
            f"conv-exp cumulative at w={w} is {total}, not an integer; "
            "the unit-jump identity failed"
        )
    return int(total)


def conv_exp_cache_clear() -> None:
    with _CONV_EXP_LOCK:
        _CONV_EXP_CACHE.clear()


@dataclass(frozen=True)
class ZFormsResult:
    """Truncated evaluations of the three partition-function forms, with tails.

    sum_form        1 + sum over monoid elements v <= v_cap of e^(-s v)
    product_form    product over k-free n <= n_cap of (1 - e^(-s n^(j/k)))^(-1)
    log_sum_form    exp( sum over m*n^(j/k) <= v_cap of e^(-s m n^(j/k)) / m )
    *_tail          analytic bounds on the truncation error of each form
    """

    sum_form: float
    product_form: float
    log_sum_form: float
    sum_tail: float
    product_tail: float
    log_sum_tail: float

    def combined_bound(self) -> float:
        return self.sum_tail + self.product_tail + self.log_sum_tail + 1e-9

    def consistent(self) -> bool:
        b = self.combined_bound()
        return (
            abs(self.sum_form - self.product_form) <= b
            and abs(self.sum_form - self.log_sum_form) <= b
            and abs(self.product_form - self.log_sum_form) <= b
        )


def z_forms_check(
    j: int, k: int, s: float, n_cap: int = 50, v_cap: float = 20.0
) -> ZFormsResult:
    """Evaluate the sum, product, and exp-of-log-sum forms of the partition
    function at real s > 0, with analytic tail bounds for each truncation.

    The tails use the integral majorant for sums of e^(-s x^(j/k)): the full
    sum over n >= 1 is below (k/j) * Gamma(k/j) * s^(-k/j), and cut versions
    below the same expression with an upper incomplete Gamma.
    """
    import mpmath

    from .zeta import zeta_em

    check_exponent(j, k)
    if s <= 0:
        raise DomainError(f"s must be positive, got {s}")
    kj = k / j
    zeta_1kj = zeta_em(complex(1 + kj)).real
    sieve = shared_sieve(k)

    # product over k-free n <= n_cap
    product = 1.0
    n = 0
    while n < n_cap:
        n += 1
        if not sieve.is_kfree(n):
            continue
        product /= 1.0 - math.exp(-s * n ** (j / k))

    # log-sum over pairs with m * n^(j/k) <= v_cap
    log_sum = 0.0
    n = 0
    while True:
        n += 1
        root = n ** (j / k)
        if root > v_cap:
            break
        if not sieve.is_kfree(n):
            continue
        m = 0
        while True:
            m += 1
            v = m * root
            if v > v_cap:
                break
            log_sum += math.exp(-s * v) / m
    log_sum_form = math.exp(log_sum)

    # sum over monoid elements <= v_cap, streamed through the walk (the
    # element count grows superpolynomially in v_cap; keep caps desk-scale)
    total = 1.0
    scale = 2.0**_DFS_SHIFT
    sum_terms = []

    def visit(_terms, lo, _hi):
        sum_terms.append(math.exp(-s * (lo / scale)))

    _walk_elements(j, k, Fraction(v_cap).limit_denominator(10**6), visit)
    total += math.fsum(sum_terms)

    # tails
    z_half = math.exp(kj * math.gamma(kj) * zeta_1kj * (2 / s) ** kj)
    sum_tail = math.exp(-s * v_cap / 2) * z_half
    log_dropped = math.exp(-s * v_cap / 2) * (
        kj * math.gamma(kj) * zeta_1kj * (2 / s) ** kj
    )
    log_sum_tail = log_sum_form * (math.exp(log_dropped) - 1.0)
    # dropped product factors: sum over n > n_cap, all m, bounded by the
    # incomplete-gamma integral of each m-layer
    prod_log_tail = 0.0
    m = 0
    while True:
        m += 1
        arg = s * m * n_cap ** (j / k)
        layer = (
            (1.0 / m)
            * kj
            * float(mpmath.gammainc(kj, arg))
            * (s * m) ** (-kj)
        )
        prod_log_tail += layer
        if layer < 1e-22 * max(prod_log_tail, 1e-300) or m > 500:
            break
    product_tail = product * (math.exp(prod_log_tail) - 1.0)

    return ZFormsResult(
        sum_form=total,
        product_form=product,
        log_sum_form=log_sum_form,
        sum_tail=sum_tail,
        product_tail=product_tail,
        log_sum_tail=log_sum_tail,
    )
