import random
from fractions import Fraction

import pytest

from radsum.arith import QConvention
from radsum.counting import (
    conv_exp_cache_clear,
    enumerate_elements,
    i_exact,
    i_staircase,
    i_via_q,
    s_exact,
    s_via_conv_exp,
    z_forms_check,
)
from radsum.radical import Ordering, combo_compare, compare_threshold

from oracles import brute_count, brute_elements, brute_i

# committed from the brute-force oracle (tests/oracles.py)
ORACLE_COUNTS = {
    (1, 2, Fraction(2)): 4,
    (1, 2, Fraction(3)): 11,
    (1, 2, Fraction(4)): 28,
    (1, 2, Fraction(5)): 63,
    (1, 2, Fraction(7, 2)): 18,
    (1, 3, Fraction(2)): 8,
    (1, 3, Fraction(3)): 36,
    (2, 3, Fraction(4)): 17,
    (2, 3, Fraction(5, 2)): 4,
    (3, 2, Fraction(6)): 12,
}


@pytest.mark.parametrize("key,expected", sorted(ORACLE_COUNTS.items()))
def test_s_exact_against_frozen_oracle_values(key, expected):
    j, k, w = key
    assert s_exact(j, k, w) == expected


# per-pair caps keep the brute-force oracle affordable; growth in w is
# much steeper for k/j = 3 than for 2/3
ORACLE_W_CAP = {(1, 2): 6, (1, 3): 4, (2, 3): 6, (3, 2): 10}


@pytest.mark.parametrize("j,k", [(1, 2), (1, 3), (2, 3), (3, 2)])
def test_s_exact_against_live_oracle(j, k):
    rng = random.Random(31 * j + k)
    cap = ORACLE_W_CAP[(j, k)]
    for _ in range(6):
        q = rng.randint(1, 6)
        w = Fraction(rng.randint(1, cap * q), q)
        assert s_exact(j, k, w) == brute_count(j, k, w), (j, k, w)


def test_s_exact_trivial_cases():
    assert s_exact(1, 2, Fraction(1, 2)) == 0
    assert s_exact(1, 2, 1) == 1


def test_enumerate_elements_small():
    elements = enumerate_elements(1, 2, 2)
    assert [str(e) for e in elements] == ["1*r(1)", "1*r(2)", "1*r(3)", "2*r(1)"]
    assert enumerate_elements(1, 2, Fraction(1, 2)) == []


@pytest.mark.parametrize("j,k,w", [(1, 2, Fraction(6)), (1, 3, Fraction(3)), (2, 3, Fraction(9, 2))])
def test_enumerate_matches_oracle_as_sets(j, k, w):
    mine = enumerate_elements(j, k, w)
    theirs = brute_elements(j, k, w)
    assert set(mine) == set(theirs)
    assert len(mine) == len(set(mine))


def test_enumerate_sorted_strictly_increasing():
    elements = enumerate_elements(1, 2, 6)
    for a, b in zip(elements, elements[1:]):
        assert combo_compare(a, b) is Ordering.LESS


def test_s_exact_jumps_by_one_across_elements():
    """Thresholds strictly between consecutive elements count exactly
    their rank: the staircase is nondecreasing with unit jumps."""
    from radsum.radical import combo_float

    elements = enumerate_elements(1, 2, 4)
    previous = 0
    for i in range(len(elements) - 1):
        mid = Fraction((combo_float(elements[i]) + combo_float(elements[i + 1])) / 2)
        mid = mid.limit_denominator(10**9)
        assert compare_threshold(elements[i], mid) is Ordering.LESS
        assert compare_threshold(elements[i + 1], mid) is Ordering.GREATER
        count = s_exact(1, 2, mid)
        assert count == i + 1
        assert count >= previous
        previous = count


def test_i_exact_examples():
    assert i_exact(1, 2, 2) == Fraction(13, 4)
    assert i_exact(1, 2, Fraction(1, 2)) == 0
    assert i_exact(1, 2, 1) == Fraction(1, 2)  # half-jump at 1
    # committed from the oracle
    assert i_exact(1, 2, 6) == Fraction(1667, 60)
    assert i_exact(1, 3, 3) == Fraction(74, 3)
    assert i_exact(3, 2, 5) == Fraction(191, 60)


def test_i_exact_matches_live_oracle():
    rng = random.Random(2024)
    for j, k in [(1, 2), (1, 3), (2, 3), (3, 2)]:
        for _ in range(4):
            w = Fraction(rng.randint(1, 40), rng.randint(1, 5))
            assert i_exact(j, k, w) == brute_i(j, k, w)


def test_i_via_q_examples():
    assert i_via_q(1, 2, 2) == Fraction(13, 4)
    assert i_via_q(1, 2, Fraction(9, 10)) == 0
    assert i_via_q(1, 2, 6) == i_exact(1, 2, 6)


@pytest.mark.parametrize("j,k", [(1, 2), (1, 3), (2, 3), (3, 2)])
def test_i_identities_on_random_rationals(j, k):
    """The pair-sum and Q-sum constructions agree exactly, jumps included."""
    rng = random.Random(100 * j + k)
    thresholds = [Fraction(rng.randint(1, 12 * q), q) for q in rng.choices(range(1, 9), k=40)]
    thresholds += [Fraction(n) for n in range(1, 13)]  # exact jump points
    for w in thresholds:
        if w > 12:
            continue
        assert i_exact(j, k, w) == i_via_q(j, k, w), (j, k, w)


def test_i_exact_right_continuous_away_from_jumps():
    # between jumps the midpoint value equals the plain closed sum
    w = Fraction(7, 3)  # not of the form m * sqrt(n)
    total = Fraction(0)
    n = 0
    while True:
        n += 1
        if Fraction(n) > w**2:
            break
        from radsum.arith import is_kfree

        if not is_kfree(2, n):
            continue
        m = 0
        while True:
            m += 1
            if Fraction(m**2 * n) > w**2:
                break
            total += Fraction(1, m)
    assert i_exact(1, 2, w) == total


def test_staircase_type_agrees_with_i_exact():
    stairs = i_staircase(1, 2, Fraction(4))
    for w in (Fraction(1), Fraction(3, 2), Fraction(2), Fraction(7, 2), Fraction(4)):
        assert stairs.value_at(w) == i_exact(1, 2, w)
    assert stairs.convention is QConvention.MIDPOINT


@pytest.mark.parametrize("j,k,w", [(1, 2, Fraction(3)), (1, 2, Fraction(1, 2)), (2, 3, Fraction(4)), (1, 3, Fraction(3))])
def test_s_via_conv_exp_matches_s_exact(j, k, w):
    assert s_via_conv_exp(j, k, w) == s_exact(j, k, w)


def test_s_via_conv_exp_cache_reuse_is_exact():
    conv_exp_cache_clear()
    big_first = s_via_conv_exp(1, 2, 6)
    small_after = s_via_conv_exp(1, 2, 3)
    conv_exp_cache_clear()
    small_fresh = s_via_conv_exp(1, 2, 3)
    assert small_after == small_fresh
    assert big_first == s_exact(1, 2, 6)


def test_z_forms_consistency():
    res = z_forms_check(1, 2, 2.0, n_cap=50, v_cap=12.0)
    assert res.consistent()
    assert abs(res.sum_form - res.product_form) < res.combined_bound()


def test_z_forms_log_vs_product_at_s_one():
    # the log-sum and product forms are cheap even at generous caps; their
    # difference is covered by their own two tails
    res = z_forms_check(1, 2, 1.0, n_cap=400, v_cap=8.0)
    assert abs(res.log_sum_form - res.product_form) < res.log_sum_tail + res.product_tail + 1e-9


def test_z_forms_limit_is_one_for_large_s():
    res = z_forms_check(1, 2, 30.0, n_cap=20, v_cap=10.0)
    for value in (res.sum_form, res.product_form, res.log_sum_form):
        assert value == pytest.approx(1.0, abs=1e-10)


def test_z_forms_rejects_nonpositive_s():
    with pytest.raises(Exception):
        z_forms_check(1, 2, 0.0)
