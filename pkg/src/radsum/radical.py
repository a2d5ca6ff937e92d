"""Exact canonical elements of the additive monoid generated by n^(j/k).

Every value u_1^(j/k) + ... + u_l^(j/k) over positive integers u_i reduces
uniquely to an integer combination sum_n m_n * n^(j/k) over k-free bases n.
`RadicalCombo` stores that coefficient vector; distinct combos have distinct
real values (linear independence of k-th roots of distinct k-free integers),
which makes set-uniqueness structural instead of numeric.

Real evaluation is certified: enclosures come from integer k-th roots at a
chosen bit scale, so lo <= value <= hi holds exactly, and comparisons refine
the scale until they resolve (a rational value is only possible when the
sole base is 1, which is decided symbolically).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import gcd

import gmpy2

from .arith import factorize, is_kfree
from .errors import DomainError, PrecisionError

_MAX_COMPARE_BITS = 1 << 14
_DEFAULT_COMPARE_BITS = 64


def set_default_compare_bits(bits: int) -> None:
    """Starting precision for certified comparisons (they refine on demand).

    Raising this mainly saves refinement rounds in dense enumerations;
    correctness never depends on it.
    """
    global _DEFAULT_COMPARE_BITS
    if bits < 16:
        raise DomainError(f"compare precision must be >= 16 bits, got {bits}")
    _DEFAULT_COMPARE_BITS = int(bits)


class Ordering(Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


@dataclass(frozen=True)
class CertifiedValue:
    """Enclosure lo <= value <= hi at a stated precision."""

    lo: Fraction
    hi: Fraction
    precision_bits: int

    def midpoint(self) -> float:
        return float((self.lo + self.hi) / 2)

    def width(self) -> Fraction:
        return self.hi - self.lo


def kfree_split(u: int, k: int) -> tuple[int, int]:
    """Factor u = f^k * n with n k-free; returns (f, n)."""
    if u < 1:
        raise DomainError(f"u must be >= 1, got {u}")
    f = n = 1
    for p, e in factorize(u).items():
        f *= p ** (e // k)
        n *= p ** (e % k)
    return f, n


def reduce_power(u: int, j: int, k: int) -> tuple[int, int]:
    """Reduce u^(j/k) to m * r^(1/k) with r k-free; returns (m, r).

    Works on the exponent vector of u^j: m collects the k-th-power part,
    r the remainder.
    """
    if u < 1:
        raise DomainError(f"u must be >= 1, got {u}")
    check_exponent(j, k)
    m = r = 1
    for p, e in factorize(u).items():
        je = j * e
        m *= p ** (je // k)
        r *= p ** (je % k)
    return m, r


def check_exponent(j: int, k: int) -> None:
    if j < 1:
        raise DomainError(f"j must be >= 1, got {j}")
    if k < 2:
        raise DomainError(f"k must be >= 2, got {k} (integer powers are not supported)")
    if gcd(j, k) != 1:
        raise DomainError(f"j/k must be in lowest terms, got {j}/{k}")


@dataclass(frozen=True)
class RadicalCombo:
    """Canonical element: value = sum over (base, coeff) of coeff * base^(j/k).

    Bases are k-free, strictly ascending, coefficients strictly positive.
    The empty term tuple is the additive identity (value 0).
    """

    j: int
    k: int
    terms: tuple[tuple[int, int], ...]

    def __post_init__(self):
        check_exponent(self.j, self.k)
        prev = 0
        for base, coeff in self.terms:
            if base <= prev:
                raise DomainError(f"bases must be strictly ascending, got {self.terms}")
            if coeff < 1:
                raise DomainError(f"coefficients must be >= 1, got {coeff} at base {base}")
            if not is_kfree(self.k, base):
                raise DomainError(f"base {base} is not {self.k}-free")
            prev = base

    @classmethod
    def zero(cls, j: int, k: int) -> "RadicalCombo":
        return cls(j, k, ())

    @classmethod
    def single(cls, j: int, k: int, base: int, coeff: int = 1) -> "RadicalCombo":
        return cls(j, k, ((base, coeff),))

    @classmethod
    def from_terms(cls, j: int, k: int, terms: dict[int, int]) -> "RadicalCombo":
        items = tuple(sorted((b, c) for b, c in terms.items() if c != 0))
        return cls(j, k, items)

    @classmethod
    def from_integers(cls, j: int, k: int, values: list[int]) -> "RadicalCombo":
        """Canonicalize sum of u^(j/k) over arbitrary positive integers u.

        u = f^k * n with n k-free gives u^(j/k) = f^j * n^(j/k), so duplicates
        like sqrt(12)+sqrt(48) and sqrt(3)+sqrt(75) collapse to the same key.
        """
        acc: dict[int, int] = {}
        for u in values:
            f, n = kfree_split(u, k)
            acc[n] = acc.get(n, 0) + f**j
        return cls.from_terms(j, k, acc)

    def is_zero(self) -> bool:
        return not self.terms

    def is_rational(self) -> bool:
        """True iff the real value is rational (only base 1, or empty)."""
        return all(base == 1 for base, _ in self.terms)

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise DomainError("combo value is irrational")
        return Fraction(sum(c for _, c in self.terms))

    def __str__(self) -> str:
        return format_combo(self)


def combo_add(a: RadicalCombo, b: RadicalCombo) -> RadicalCombo:
    """Coefficient-wise sum; both combos must share (j, k)."""
    if (a.j, a.k) != (b.j, b.k):
        raise DomainError(f"exponent mismatch: {a.j}/{a.k} vs {b.j}/{b.k}")
    if not a.terms:
        return b
    if not b.terms:
        return a
    merged = dict(a.terms)
    for base, coeff in b.terms:
        merged[base] = merged.get(base, 0) + coeff
    return RadicalCombo(a.j, a.k, tuple(sorted(merged.items())))


def format_combo(c: RadicalCombo) -> str:
    """Canonical text `m1*r(n1)+m2*r(n2)+...` with bases ascending; "0" if empty."""
    if not c.terms:
        return "0"
    return "+".join(f"{m}*r({n})" for n, m in c.terms)


def parse_combo(j: int, k: int, text: str) -> RadicalCombo:
    """Inverse of format_combo."""
    text = text.strip()
    if text == "0":
        return RadicalCombo.zero(j, k)
    terms: dict[int, int] = {}
    for part in text.split("+"):
        try:
            coeff_s, base_s = part.split("*r(")
            coeff = int(coeff_s)
            base = int(base_s.rstrip(")"))
        except ValueError as exc:
            raise DomainError(f"bad combo term {part!r}") from exc
        terms[base] = terms.get(base, 0) + coeff
    return RadicalCombo.from_terms(j, k, terms)


@lru_cache(maxsize=65536)
def scaled_root(base: int, j: int, k: int, shift: int) -> tuple[int, bool]:
    """(floor(base^(j/k) * 2^shift), exact?) via an integer k-th root."""
    root, exact = gmpy2.iroot(gmpy2.mpz(base) ** j << (k * shift), k)
    return int(root), bool(exact)

# enclosure integers are at this scale unless a caller picks its own
DEFAULT_SCALE_BITS = 96


def combo_enclosure(c: RadicalCombo, shift: int = DEFAULT_SCALE_BITS) -> tuple[int, int]:
    """Integer enclosure (lo, hi) with lo <= value * 2^shift <= hi, exact bounds."""
    lo = hi = 0
    for base, coeff in c.terms:
        x, exact = scaled_root(base, c.j, c.k, shift)
        lo += coeff * x
        hi += coeff * (x if exact else x + 1)
    return lo, hi


def combo_value(c: RadicalCombo, bits: int) -> CertifiedValue:
    """Certified enclosure of the combo's real value at the requested precision."""
    if bits < 16:
        raise DomainError(f"bits must be >= 16, got {bits}")
    total_coeff = sum(coeff for _, coeff in c.terms)
    shift = bits + max(1, total_coeff).bit_length() + 2
    lo, hi = combo_enclosure(c, shift)
    scale = Fraction(1, 1 << shift)
    return CertifiedValue(lo * scale, hi * scale, bits)


def combo_float(c: RadicalCombo) -> float:
    """Double-precision approximation (midpoint of a 64-bit enclosure)."""
    lo, hi = combo_enclosure(c, 64)
    return (lo + hi) / 2 / 2.0**64


def compare_threshold(c: RadicalCombo, w: Fraction | int) -> Ordering:
    """Exact ordering of the combo's real value against a rational threshold.

    EQUAL can only happen for rational combo values (all bases equal to 1);
    otherwise adaptive refinement of the certified enclosure must terminate
    because the value is irrational while w is rational.
    """
    w = Fraction(w)
    if c.is_rational():
        v = c.rational_value()
        if v < w:
            return Ordering.LESS
        return Ordering.EQUAL if v == w else Ordering.GREATER
    shift = _DEFAULT_COMPARE_BITS
    while shift <= _MAX_COMPARE_BITS:
        lo, hi = combo_enclosure(c, shift)
        w_scaled = w * (1 << shift)
        if hi < w_scaled:
            return Ordering.LESS
        if lo > w_scaled:
            return Ordering.GREATER
        shift *= 2
    raise PrecisionError(f"comparison of {c} against {w} did not resolve")


def combo_compare(a: RadicalCombo, b: RadicalCombo) -> Ordering:
    """Exact ordering of two combos by real value.

    Structural equality is the only EQUAL case; distinct combos have distinct
    values, so interval refinement terminates.
    """
    if (a.j, a.k) != (b.j, b.k):
        raise DomainError(f"exponent mismatch: {a.j}/{a.k} vs {b.j}/{b.k}")
    if a.terms == b.terms:
        return Ordering.EQUAL
    shift = _DEFAULT_COMPARE_BITS
    while shift <= _MAX_COMPARE_BITS:
        alo, ahi = combo_enclosure(a, shift)
        blo, bhi = combo_enclosure(b, shift)
        if ahi < blo:
            return Ordering.LESS
        if alo > bhi:
            return Ordering.GREATER
        shift *= 2
    raise PrecisionError(f"comparison of {a} against {b} did not resolve")
