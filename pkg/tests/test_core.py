from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jacobisym.core import (
    CertificationError,
    bernoulli_even,
    box_content,
    boxes,
    certification_failures,
    conjugate,
    content_product,
    contains,
    dominates,
    draw_generic_params,
    eigenvalue_of,
    finite_h,
    format_partition,
    format_rational,
    make_context,
    make_partition,
    n_stat,
    parse_partition,
    parse_rational,
    partitions_of,
    partitions_upto,
    precedes,
    shift,
)
from strategies import nonzero_rationals, partitions, rationals


# --- conjugate / n statistic -------------------------------------------------


@pytest.mark.parametrize("lam,want", [((3, 1), (2, 1, 1)), ((), ()), ((2, 2), (2, 2))])
def test_conjugate_examples(lam, want):
    assert conjugate(lam) == want


@pytest.mark.parametrize("lam,want", [((1,), 0), ((2, 1), 1), ((1, 1, 1), 3)])
def test_n_stat_examples(lam, want):
    assert n_stat(lam) == want


@given(partitions(8))
def test_conjugate_is_involution(lam):
    assert conjugate(conjugate(lam)) == lam


@given(partitions(8))
def test_n_stat_of_conjugate_counts_pairs_in_rows(lam):
    assert n_stat(conjugate(lam)) == sum(comb(a, 2) for a in lam)


def test_partition_counts():
    assert [len(partitions_of(n)) for n in range(8)] == [1, 1, 2, 3, 5, 7, 11, 15]
    assert len(partitions_upto(3)) == 7


def test_partition_order_is_weight_then_reverse_lex():
    assert partitions_upto(3) == [(), (1,), (2,), (1, 1), (3,), (2, 1), (1, 1, 1)]


# --- contents ------------------------------------------------------------------


def test_content_product_examples():
    x, k = Fraction(5, 3), Fraction(-2, 7)
    assert content_product("zero", (1,), x, k) == x
    assert content_product("minus", (2,), x, k) == x * (x + 1)
    h = Fraction(3, 11)
    assert content_product("plus", (1,), 2 * h - 1, k) == 1 + 2 * k + 2 * h


def test_box_content_examples():
    k = Fraction(-3, 5)
    assert box_content("zero", (4, 2), (1, 1), Fraction(7, 2), k) == Fraction(7, 2)
    assert box_content("minus", (2,), (1, 1), 0, k) == 1
    assert box_content("plus", (1,), (1, 1), 0, k) == 2 + 2 * k


def test_box_content_outside_diagram():
    # arm and leg go negative for a box just past the end of the row
    k = Fraction(1, 3)
    assert box_content("minus", (1,), (1, 2), 0, k) == 1 - 2 - k * (0 - 1)


@given(st.sampled_from(["plus", "minus", "zero"]), partitions(7), rationals(), nonzero_rationals())
def test_content_product_is_product_of_box_contents(kind, lam, x, k):
    want = Fraction(1)
    for b in boxes(lam):
        want *= box_content(kind, lam, b, x, k)
    assert content_product(kind, lam, x, k) == want


def test_unknown_content_kind():
    with pytest.raises(ValueError):
        content_product("sideways", (1,), 0, 1)


# --- Bernoulli -----------------------------------------------------------------


@given(rationals())
def test_b2_closed_form(x):
    assert bernoulli_even(1, x) == x * x - x + Fraction(1, 6)


def test_bernoulli_values():
    assert bernoulli_even(1, 0) == Fraction(1, 6)
    assert bernoulli_even(2, Fraction(1, 3)) == bernoulli_even(2, Fraction(2, 3))


@given(st.integers(1, 3), st.integers(1, 5), rationals())
def test_bernoulli_difference_is_power_sum(l, t, x):
    lhs = bernoulli_even(l, x + t) - bernoulli_even(l, x)
    rhs = 2 * l * sum((x + i - 1) ** (2 * l - 1) for i in range(1, t + 1))
    assert lhs == rhs


@given(st.integers(1, 4), rationals())
def test_even_bernoulli_reflection(l, x):
    assert bernoulli_even(l, x) == bernoulli_even(l, 1 - x)


# --- partitions text format and order -----------------------------------------


@pytest.mark.parametrize("text,lam", [("", ()), ("3,1,1", (3, 1, 1)), (" 2 , 2 ", (2, 2))])
def test_parse_partition(text, lam):
    assert parse_partition(text) == lam


@pytest.mark.parametrize("text", ["1,2", "0", "a", "2,-1"])
def test_parse_partition_rejects(text):
    with pytest.raises(ValueError):
        parse_partition(text)


@given(partitions(8))
def test_partition_text_round_trip(lam):
    assert parse_partition(format_partition(lam)) == lam


@pytest.mark.parametrize("text,val", [("-4/7", Fraction(-4, 7)), ("6/4", Fraction(3, 2)), ("5", Fraction(5)), ("0/3", Fraction(0))])
def test_parse_rational(text, val):
    assert parse_rational(text) == val


@pytest.mark.parametrize("text", ["", "1/0", "1/-2", "x", "1.5"])
def test_parse_rational_rejects(text):
    with pytest.raises(ValueError):
        parse_rational(text)


@given(rationals(1000))
def test_rational_text_is_canonical(x):
    s = format_rational(x)
    assert parse_rational(s) == x
    assert format_rational(parse_rational(s)) == s


def test_make_partition_validates():
    assert make_partition([3, 1, 0, 0]) == (3, 1)
    with pytest.raises(ValueError):
        make_partition([1, 2])


def test_dominance_and_total_order():
    assert dominates((3,), (2, 1)) and dominates((2, 1), (1, 1, 1))
    assert not dominates((3, 1, 1, 1), (2, 2, 2)) and not dominates((2, 2, 2), (3, 1, 1, 1))
    assert precedes((2,), (1, 1, 1)) and precedes((2, 1), (3,))
    assert not precedes((3,), (3,))


@given(partitions(6), partitions(6))
def test_dominance_reverses_under_conjugation(lam, mu):
    if sum(lam) == sum(mu):
        assert dominates(lam, mu) == dominates(conjugate(mu), conjugate(lam))


def test_contains_and_shift():
    assert contains((3, 2), (2, 2)) and not contains((2, 2), (3,))
    assert shift((2, 1), 2, 1) == (2, 2)
    assert shift((2, 2), 2, 1) is None
    assert shift((2, 1), 3, -1) is None


# --- parameter contexts -------------------------------------------------------


def test_draw_is_deterministic_and_certified():
    a, b = draw_generic_params(42, 6), draw_generic_params(42, 6)
    assert a == b and a.certified
    assert not certification_failures(a.k, a.p, a.q, a.h, 6)


def test_p0_relation():
    ctx = draw_generic_params(7, 4)
    assert ctx.p0 == -(ctx.h + ctx.p / 2 + ctx.q) / ctx.k


def test_k_zero_rejected():
    with pytest.raises(CertificationError):
        make_context(0, 1, 1, Fraction(1, 3))


def test_inadmissible_h_rejected():
    k = Fraction(-3, 7)
    with pytest.raises(CertificationError):
        make_context(k, Fraction(2, 5), Fraction(1, 3), (k + 1) / 2, 3)


def test_small_positive_k_rejected():
    assert any("small positive" in f for f in certification_failures(Fraction(1, 2), Fraction(2, 5), Fraction(1, 3), Fraction(9, 101), 3))


def test_finite_locus_formula():
    k, p, q = Fraction(-3, 7), Fraction(2, 5), Fraction(1, 3)
    assert finite_h(k, p, q, 4) == -4 * k - p / 2 - q


@given(partitions(6))
def test_eigenvalue_formula(lam):
    k, h = Fraction(-3, 7), Fraction(9, 11)
    want = 2 * n_stat(conjugate(lam)) + 2 * k * n_stat(lam) + sum(lam) * (2 * h + 2 * k + 1)
    assert eigenvalue_of(lam, k, h) == want
