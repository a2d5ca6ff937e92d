import math
import random
from fractions import Fraction

import pytest

from radsum.arith import is_kfree
from radsum.errors import DomainError
from radsum.radical import (
    Ordering,
    RadicalCombo,
    combo_add,
    combo_compare,
    combo_value,
    compare_threshold,
    format_combo,
    kfree_split,
    parse_combo,
    reduce_power,
)


def test_reduce_power_examples():
    assert reduce_power(8, 1, 2) == (2, 2)  # sqrt(8) = 2 sqrt(2)
    assert reduce_power(4, 2, 3) == (2, 2)  # 4^(2/3) = 2 * 2^(1/3)
    assert reduce_power(1, 3, 2) == (1, 1)


def test_reduce_power_is_exact():
    # m^k * r == u^j and r is k-free, for a spread of inputs
    for j, k in [(1, 2), (1, 3), (2, 3), (3, 2)]:
        for u in range(1, 300):
            m, r = reduce_power(u, j, k)
            assert m**k * r == u**j
            assert is_kfree(k, r)


@pytest.mark.parametrize("j,k", [(1, 2), (1, 3), (2, 3)])
def test_reduce_power_injective_on_kfree(j, k):
    seen = {}
    for n in range(1, 10_001):
        if not is_kfree(k, n):
            continue
        _, r = reduce_power(n, j, k)
        assert r not in seen, f"bases {seen[r]} and {n} collide at k-free part {r}"
        seen[r] = n


def test_kfree_split():
    f, n = kfree_split(48, 2)
    assert f == 4 and n == 3 and f * f * n == 48


def test_combo_canonicalization_collapses_duplicates():
    a = RadicalCombo.from_integers(1, 2, [12, 48])
    b = RadicalCombo.from_integers(1, 2, [3, 75])
    assert a == b  # sqrt(12)+sqrt(48) = sqrt(3)+sqrt(75) = 6 sqrt(3)
    assert a.terms == ((3, 6),)


def test_combo_validation():
    with pytest.raises(DomainError):
        RadicalCombo(1, 2, ((4, 1),))  # 4 is not square-free
    with pytest.raises(DomainError):
        RadicalCombo(2, 4, ((3, 1),))  # 2/4 not in lowest terms
    with pytest.raises(DomainError):
        RadicalCombo(1, 1, ((2, 1),))  # integer exponent
    with pytest.raises(DomainError):
        RadicalCombo(1, 2, ((3, 1), (2, 1)))  # bases out of order


def test_combo_add_identity_and_commutativity():
    zero = RadicalCombo.zero(1, 2)
    a = RadicalCombo.single(1, 2, 2)
    b = RadicalCombo.from_terms(1, 2, {1: 1, 3: 2})
    assert combo_add(zero, a) == a
    assert combo_add(a, zero) == a
    assert combo_add(a, b) == combo_add(b, a)
    one = RadicalCombo.single(1, 2, 1)
    assert combo_add(one, one).terms == ((1, 2),)


def test_combo_add_associativity_random():
    rng = random.Random(11)
    bases = [1, 2, 3, 5, 6, 7]
    for _ in range(50):
        combos = [
            RadicalCombo.from_terms(
                1, 2, {b: rng.randint(1, 3) for b in rng.sample(bases, rng.randint(1, 3))}
            )
            for _ in range(3)
        ]
        a, b, c = combos
        assert combo_add(combo_add(a, b), c) == combo_add(a, combo_add(b, c))


def test_combo_add_rejects_mixed_exponents():
    with pytest.raises(DomainError):
        combo_add(RadicalCombo.single(1, 2, 2), RadicalCombo.single(1, 3, 2))


def test_combo_value_exact_for_rational():
    cv = combo_value(RadicalCombo.from_terms(1, 2, {1: 2}), 64)
    assert cv.lo == cv.hi == 2


def test_combo_value_encloses_sqrt2():
    cv = combo_value(RadicalCombo.single(1, 2, 2), 128)
    # lo <= sqrt(2) <= hi, checked exactly by squaring
    assert cv.lo**2 <= 2 <= cv.hi**2
    assert cv.width() <= Fraction(2) ** (1 - 128) * max(1, cv.hi)


def test_combo_value_empty_is_zero():
    cv = combo_value(RadicalCombo.zero(1, 2), 64)
    assert cv.lo == cv.hi == 0


def test_combo_value_width_invariant_many():
    rng = random.Random(23)
    for _ in range(30):
        bits = rng.choice([16, 64, 200])
        terms = {
            b: rng.randint(1, 9)
            for b in rng.sample([1, 2, 3, 5, 6, 7, 10, 11], rng.randint(1, 4))
        }
        cv = combo_value(RadicalCombo.from_terms(1, 2, terms), bits)
        assert cv.lo <= cv.hi
        assert cv.width() <= Fraction(2) ** (1 - bits) * max(1, abs(cv.hi))


def test_compare_threshold_examples():
    assert compare_threshold(RadicalCombo.from_terms(1, 2, {1: 2}), 2) is Ordering.EQUAL
    assert compare_threshold(RadicalCombo.single(1, 2, 2), Fraction(3, 2)) is Ordering.LESS
    assert compare_threshold(RadicalCombo.from_terms(1, 2, {2: 2}), 2) is Ordering.GREATER


def test_compare_threshold_agrees_with_floats():
    rng = random.Random(5)
    for _ in range(200):
        terms = {
            b: rng.randint(1, 5)
            for b in rng.sample([1, 2, 3, 5, 6, 7, 10], rng.randint(1, 3))
        }
        combo = RadicalCombo.from_terms(1, 2, terms)
        value = sum(m * math.sqrt(n) for n, m in terms.items())
        w = Fraction(rng.randint(1, 400), rng.randint(1, 20))
        got = compare_threshold(combo, w)
        if abs(value - float(w)) > 1e-6:
            expected = Ordering.LESS if value < float(w) else Ordering.GREATER
            assert got is expected


def test_compare_consistent_with_value_at_any_precision():
    combo = RadicalCombo.from_terms(2, 3, {2: 1, 3: 2})
    w = Fraction(7, 2)
    order = compare_threshold(combo, w)
    for bits in (16, 64, 256, 1024):
        cv = combo_value(combo, bits)
        if order is Ordering.LESS:
            assert cv.lo <= w
        elif order is Ordering.GREATER:
            assert cv.hi >= w


@pytest.mark.parametrize("j,k,cap", [(1, 2, 12), (1, 3, 6), (2, 3, 8)])
def test_distinct_combos_have_distinct_values(j, k, cap):
    """Adjacent elements in value order separate at certified precision,
    which gives pairwise distinctness of the whole enumeration."""
    from radsum.counting import enumerate_elements

    elements = enumerate_elements(j, k, cap)
    for a, b in zip(elements, elements[1:]):
        assert combo_compare(a, b) is Ordering.LESS


def test_format_and_parse_roundtrip():
    combo = RadicalCombo.from_terms(1, 2, {1: 2, 3: 1, 10: 4})
    text = format_combo(combo)
    assert text == "2*r(1)+1*r(3)+4*r(10)"
    assert parse_combo(1, 2, text) == combo
    assert format_combo(RadicalCombo.zero(1, 2)) == "0"
    assert parse_combo(1, 2, "0") == RadicalCombo.zero(1, 2)
