"""Sieves and arithmetic functions over the k-free integers.

A positive integer is *k-free* when no prime raised to the k-th power divides
it (k=2 gives the square-free integers).  This module provides the k-free
indicator and counting function Q_k, Euler's totient, and the two Dirichlet
coefficient families used by the analytic identities:

* ``a_coeff(j, k, l)`` -- 1/m when l = m^k * n^j with n k-free (the unique
  such representation), else 0.
* ``h_coeff(l)`` -- sum of d*phi(d) over divisors d of m, where l = n * m^2
  with n square-free.
"""

from __future__ import annotations

import threading
from enum import Enum
from fractions import Fraction
from math import gcd

import numpy as np

from .errors import DomainError


class QConvention(Enum):
    """How a counting function values its jumps at integer arguments.

    RIGHT_CONTINUOUS counts every point <= x with full weight.  MIDPOINT
    halves the contribution of a jump located exactly at x (the average of
    the one-sided limits).
    """

    RIGHT_CONTINUOUS = "right_continuous"
    MIDPOINT = "midpoint"


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of n >= 1 by trial division, as {prime: exponent}."""
    if n < 1:
        raise DomainError(f"cannot factorize {n}; need n >= 1")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_kfree(k: int, n: int) -> bool:
    """True iff no prime power p^k divides n.

    Composite trial divisors are harmless: d^k | n for composite d implies
    p^k | n for any prime p | d, which an earlier iteration already caught.
    """
    if k < 2:
        raise DomainError(f"k must be >= 2, got {k}")
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    d = 2
    while d**k <= n:
        if n % d**k == 0:
            return False
        d += 1
    return True


def totient(n: int) -> int:
    """Euler's totient phi(n)."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    result = n
    for p in factorize(n):
        result -= result // p
    return result


def h_coeff(l: int) -> int:
    """Coefficient h_l = sum_{d | m} d*phi(d), where l = n*m^2 with n square-free.

    h is multiplicative; on a prime power p^e the square part is p^(e//2) and
    the local factor is 1 + sum_{i=1..e//2} p^i * (p^i - p^(i-1)).
    """
    if l < 1:
        raise DomainError(f"l must be >= 1, got {l}")
    result = 1
    for p, e in factorize(l).items():
        local = 1
        for i in range(1, e // 2 + 1):
            local += p**i * (p**i - p ** (i - 1))
        result *= local
    return result


def a_coeff(j: int, k: int, l: int) -> Fraction:
    """Coefficient a_l: 1/m if l = m^k * n^j for some m >= 1 and k-free n, else 0.

    For each prime exponent e of l the k-free factor's exponent b is forced
    modulo k by b = e * j^(-1) mod k; the representation exists iff e >= j*b
    at every prime, and is then unique because gcd(j, k) = 1.
    """
    _validate_jk(j, k)
    if l < 1:
        raise DomainError(f"l must be >= 1, got {l}")
    j_inv = pow(j, -1, k)
    m = 1
    for p, e in factorize(l).items():
        b = (e * j_inv) % k
        if j * b > e:
            return Fraction(0)
        m *= p ** ((e - j * b) // k)
    return Fraction(1, m)


def _validate_jk(j: int, k: int) -> None:
    if j < 1 or k < 2:
        raise DomainError(f"need j >= 1 and k >= 2, got j={j}, k={k}")
    if gcd(j, k) != 1:
        raise DomainError(f"j/k must be in lowest terms, got {j}/{k}")


class KfreeSieve:
    """Boolean k-free flags on [0, limit], resumable to larger limits.

    flags[0] is False by convention; flags[1] is True.  A prefix-count array
    makes Q_k queries O(1).  Instances may be shared across threads: queries
    are read-only and extension is serialized (the service runs handlers in
    a thread pool).
    """

    def __init__(self, k: int, limit: int = 1):
        if k < 2:
            raise DomainError(f"k must be >= 2, got {k}")
        if limit < 1:
            raise DomainError(f"limit must be >= 1, got {limit}")
        self.k = k
        self.limit = 0
        self.flags = np.zeros(1, dtype=bool)
        self._counts = np.zeros(1, dtype=np.int64)
        self._grow_lock = threading.Lock()
        self.ensure(limit)

    def ensure(self, limit: int) -> None:
        """Grow the sieve so that queries up to `limit` are valid."""
        if limit <= self.limit:
            return
        with self._grow_lock:
            if limit <= self.limit:
                return
            old = self.limit
            flags = np.ones(limit + 1, dtype=bool)
            flags[0] = False
            flags[: old + 1] = self.flags
            # only the new segment needs marking, but primes must cover the new root bound
            root = int(limit ** (1.0 / self.k)) + 2
            while root**self.k > limit:
                root -= 1
            for p in _primes_upto(root):
                pk = p**self.k
                start = max(pk, ((old + 1 + pk - 1) // pk) * pk) if old else pk
                flags[start :: pk] = False
            self.flags = flags
            self._counts = np.cumsum(flags, dtype=np.int64)
            # publish the new limit last so early-return readers see full arrays
            self.limit = limit

    def is_kfree(self, n: int) -> bool:
        if n < 1:
            raise DomainError(f"n must be >= 1, got {n}")
        self.ensure(n)
        return bool(self.flags[n])

    def count_leq(self, n: int) -> int:
        """Number of k-free integers in [1, n]."""
        if n < 1:
            return 0
        self.ensure(n)
        return int(self._counts[n])

    def iter_kfree(self, limit: int):
        """Ascending k-free integers in [1, limit]."""
        self.ensure(limit)
        return iter(np.nonzero(self.flags[: limit + 1])[0].tolist())


def _primes_upto(n: int) -> list[int]:
    if n < 2:
        return []
    flags = np.ones(n + 1, dtype=bool)
    flags[:2] = False
    for i in range(2, int(n**0.5) + 1):
        if flags[i]:
            flags[i * i :: i] = False
    return np.nonzero(flags)[0].tolist()


_SIEVES: dict[int, KfreeSieve] = {}


def shared_sieve(k: int) -> KfreeSieve:
    """Process-wide sieve for modulus k, grown on demand."""
    if k not in _SIEVES:
        _SIEVES[k] = KfreeSieve(k)
    return _SIEVES[k]


def q_count(
    k: int,
    x: Fraction | int,
    conv: QConvention = QConvention.RIGHT_CONTINUOUS,
    sieve: KfreeSieve | None = None,
) -> Fraction:
    """Q_k(x): number of k-free integers <= x, with exact rational threshold.

    Under MIDPOINT a k-free integer exactly at x contributes 1/2.
    """
    if k < 2:
        raise DomainError(f"k must be >= 2, got {k}")
    x = Fraction(x)
    if x < 1:
        return Fraction(0)
    sieve = sieve or shared_sieve(k)
    floor_x = x.numerator // x.denominator
    total = Fraction(sieve.count_leq(floor_x))
    if conv is QConvention.MIDPOINT and x.denominator == 1 and sieve.is_kfree(floor_x):
        total -= Fraction(1, 2)
    return total


def q_count_rational_power(
    k: int,
    base: Fraction,
    pow_num: int,
    pow_den: int,
    conv: QConvention = QConvention.RIGHT_CONTINUOUS,
    sieve: KfreeSieve | None = None,
) -> Fraction:
    """Q_k evaluated at base^(pow_num/pow_den) without ever forming the root.

    n <= base^(num/den) iff n^den <= base^num, an exact rational comparison,
    so irrational thresholds cost nothing and integer hits are detected
    exactly (the MIDPOINT half-jump case).
    """
    if k < 2:
        raise DomainError(f"k must be >= 2, got {k}")
    if pow_num < 1 or pow_den < 1:
        raise DomainError("power exponents must be positive")
    base = Fraction(base)
    if base <= 0:
        return Fraction(0)
    sieve = sieve or shared_sieve(k)
    threshold = base**pow_num
    # crude float cap, then exact filtering
    approx = float(base) ** (pow_num / pow_den)
    cap = max(1, int(approx) + 2)
    while Fraction(cap) ** pow_den <= threshold:
        cap *= 2
    sieve.ensure(cap)
    total = Fraction(0)
    for n in sieve.iter_kfree(cap):
        q = Fraction(n) ** pow_den
        if q < threshold:
            total += 1
        elif q == threshold:
            total += 1 if conv is QConvention.RIGHT_CONTINUOUS else Fraction(1, 2)
        else:
            break
    return total


def smallest_prime_factors(limit: int) -> np.ndarray:
    """SPF table spf[0..limit]; spf[n] is the least prime factor of n (0 for n < 2)."""
    spf = np.zeros(limit + 1, dtype=np.int64)
    for p in range(2, limit + 1):
        if spf[p] == 0:
            spf[p::p] = np.where(spf[p::p] == 0, p, spf[p::p])
    return spf


def _factor_with_spf(n: int, spf: np.ndarray) -> dict[int, int]:
    out: dict[int, int] = {}
    while n > 1:
        p = int(spf[n])
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        out[p] = e
    return out


def a_coeff_prefix(j: int, k: int, limit: int) -> np.ndarray:
    """Float array a[0..limit] of a_coeff values, for bulk Dirichlet sums."""
    _validate_jk(j, k)
    spf = smallest_prime_factors(limit)
    j_inv = pow(j, -1, k)
    out = np.zeros(limit + 1)
    for l in range(1, limit + 1):
        m = 1
        for p, e in _factor_with_spf(l, spf).items():
            b = (e * j_inv) % k
            if j * b > e:
                m = 0
                break
            m *= p ** ((e - j * b) // k)
        out[l] = 0.0 if m == 0 else 1.0 / m
    return out


def h_coeff_prefix(limit: int) -> np.ndarray:
    """Float array h[0..limit] of h_coeff values, for bulk Dirichlet sums."""
    spf = smallest_prime_factors(limit)
    out = np.zeros(limit + 1)
    for l in range(1, limit + 1):
        acc = 1
        for p, e in _factor_with_spf(l, spf).items():
            local = 1
            for i in range(1, e // 2 + 1):
                local += p**i * (p**i - p ** (i - 1))
            acc *= local
        out[l] = acc
    return out
