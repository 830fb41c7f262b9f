from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jacobisym.core import ParamContext, make_context, partitions_of, partitions_upto
from jacobisym.poly import MultiPoly
from jacobisym.symfunc import (
    MONOMIAL,
    POWER,
    BasisMismatchError,
    SymFunc,
    elementary,
    eval_deformed,
    eval_deformed_theta,
    eval_finite,
    expand_deformed,
    expand_finite,
    omega,
    theta,
    theta_inverse,
    to_monomial,
    to_power,
    truncate_length,
)
from strategies import CTX6, nonzero_rationals, partitions, rationals


def _loose_ctx(k, q):
    # automorphism-only tests do not need a certified context
    return ParamContext(k, Fraction(1, 3), q, Fraction(5, 7))


@st.composite
def symfuncs(draw, max_weight=4, basis=POWER):
    lams = draw(st.lists(partitions(max_weight), min_size=1, max_size=4, unique=True))
    coeffs = draw(st.lists(rationals(20), min_size=len(lams), max_size=len(lams)))
    return SymFunc(basis, dict(zip(lams, coeffs)))


def points(size):
    return st.lists(rationals(9), min_size=size, max_size=size)


# --- ring operations ------------------------------------------------------------


def test_ring_examples():
    assert SymFunc.p(1) * SymFunc.p(1) == SymFunc.p(1, 1)
    f = SymFunc.p(2, 1)
    assert f + SymFunc(POWER) == f
    assert SymFunc.m(1) * SymFunc.m(1) == SymFunc(MONOMIAL, {(2,): 1, (1, 1): 2})


def test_basis_mismatch():
    with pytest.raises(BasisMismatchError):
        SymFunc.p(1) + SymFunc.m(1)


def test_zero_coefficients_are_not_stored():
    f = SymFunc(POWER, {(1,): 0, (2,): Fraction(1, 2)})
    assert f.terms == {(2,): Fraction(1, 2)}
    assert (f - f).is_zero()


# --- base change --------------------------------------------------------------------


def test_base_change_examples():
    assert to_power(SymFunc.m(1, 1)) == SymFunc(POWER, {(1, 1): Fraction(1, 2), (2,): Fraction(-1, 2)})
    assert to_monomial(SymFunc.p(2)) == SymFunc.m(2)
    assert to_monomial(to_power(SymFunc.m(3, 1))) == SymFunc.m(3, 1)


@pytest.mark.parametrize("lam", partitions_upto(6))
def test_base_change_round_trip(lam):
    assert to_monomial(to_power(SymFunc.m(*lam))) == SymFunc.m(*lam)
    assert to_power(to_monomial(SymFunc.p(*lam))) == SymFunc.p(*lam)


@given(partitions(5), points(3))
def test_monomial_values_match_direct_sum(lam, u):
    # m_lam at a point is the sum over distinct permutations of the exponent vector
    from itertools import permutations

    exps = set(permutations(tuple(lam) + (0,) * (3 - len(lam)))) if len(lam) <= 3 else set()
    want = Fraction(0)
    for e in exps:
        term = Fraction(1)
        for x, a in zip(u, e):
            term *= x**a
        want += term
    assert eval_finite(SymFunc.m(*lam), u) == want


def test_elementary_in_monomials():
    assert to_monomial(elementary(2)) == SymFunc.m(1, 1)
    assert to_monomial(elementary(3)) == SymFunc.m(1, 1, 1)


# --- evaluations ------------------------------------------------------------------


def test_eval_finite_examples():
    assert eval_finite(SymFunc.p(2), [1, 2]) == 5
    assert eval_finite(SymFunc.m(1, 1), [2, 3]) == 6
    assert eval_finite(SymFunc.p(1), []) == 0


def test_eval_deformed_examples():
    assert eval_deformed(SymFunc.p(1), [2], [3], Fraction(1, 2)) == 8
    f = SymFunc(POWER, {(): 7, (2, 1): 3})
    assert eval_deformed(f, [], [], Fraction(3, 4)) == 7
    assert eval_deformed(SymFunc.p(2), [1], [1], -1) == 0
    with pytest.raises(ZeroDivisionError):
        eval_deformed(SymFunc.p(1), [1], [1], 0)


def test_eval_deformed_theta_examples():
    k = Fraction(-3, 7)
    ctx = _loose_ctx(k, k + Fraction(1, 2))
    assert eval_deformed_theta(SymFunc.p(1), [], [], ctx) == 0
    assert eval_deformed_theta(SymFunc.constant(Fraction(4, 9)), [2], [5], ctx) == Fraction(4, 9)
    # p_1 -> u + (-2)(2q - 2k - 1)/(2k) with k = 1/2, q = 0
    ctx = _loose_ctx(Fraction(1, 2), 0)
    assert eval_deformed_theta(SymFunc.p(1), [1], [], ctx) == 5


@settings(max_examples=40)
@given(symfuncs(), symfuncs(), points(3))
def test_finite_evaluation_is_multiplicative(f, g, u):
    assert eval_finite(f * g, u) == eval_finite(f, u) * eval_finite(g, u)


@settings(max_examples=40)
@given(symfuncs(), symfuncs(), points(2), points(2), nonzero_rationals(9))
def test_deformed_evaluation_is_multiplicative(f, g, u, v, k):
    assert eval_deformed(f * g, u, v, k) == eval_deformed(f, u, v, k) * eval_deformed(g, u, v, k)


@given(symfuncs(), points(3), nonzero_rationals(9))
def test_deformed_with_no_v_is_finite(f, u, k):
    assert eval_deformed(f, u, [], k) == eval_finite(f, u)


@given(symfuncs(basis=MONOMIAL))
def test_constant_term_is_value_at_empty_point(f):
    assert f.constant_term() == eval_finite(f, [])


@given(symfuncs(), points(3))
def test_expansion_agrees_with_point_evaluation(f, u):
    assert expand_finite(f, 3).evaluate(u) == eval_finite(f, u)


@given(symfuncs(), points(1), points(2), nonzero_rationals(9))
def test_deformed_expansion_agrees_with_point_evaluation(f, u, v, k):
    assert expand_deformed(f, 1, 2, k).evaluate(u + v) == eval_deformed(f, u, v, k)


def test_expansion_examples():
    P = expand_finite(SymFunc.p(2), 2)
    assert P == MultiPoly(("u1", "u2"), {(2, 0): 1, (0, 2): 1})
    assert expand_finite(SymFunc.m(1), 3) == MultiPoly(("u1", "u2", "u3"), {(1, 0, 0): 1, (0, 1, 0): 1, (0, 0, 1): 1})
    k = Fraction(2, 9)
    assert expand_deformed(SymFunc.p(1), 1, 1, k) == MultiPoly(("u1", "v1"), {(1, 0): 1, (0, 1): 1 / k})


@given(partitions(6))
def test_finite_kernel_is_long_monomials(lam):
    f = SymFunc.m(*lam)
    assert expand_finite(f, 2).is_zero() == (len(lam) > 2)
    assert expand_finite(truncate_length(f, 2), 2) == expand_finite(f, 2)


# --- automorphisms ---------------------------------------------------------------


def test_omega_examples():
    k = Fraction(-5, 3)
    assert omega(SymFunc.p(1), k) == SymFunc.p(1).scale(1 / k)
    assert omega(SymFunc.p(3, 2), k) == SymFunc.p(3, 2).scale(1 / k**2)
    assert omega(SymFunc.constant(1), k) == SymFunc.constant(1)


def test_theta_examples():
    k, q = Fraction(-3, 7), Fraction(1, 3)
    ctx = _loose_ctx(k, q)
    c = 2 * k + 1 - 2 * q
    assert theta(SymFunc.p(1), ctx) == SymFunc(POWER, {(1,): 1, (): -c / k})
    assert theta(SymFunc.p(2), ctx) == SymFunc(POWER, {(2,): 1, (): 2 * c / k})
    assert theta(SymFunc.constant(3), ctx) == SymFunc.constant(3)


@settings(max_examples=40)
@given(symfuncs(), symfuncs(), nonzero_rationals(9))
def test_omega_is_multiplicative_and_invertible(f, g, k):
    assert omega(f * g, k) == omega(f, k) * omega(g, k)
    # p_a -> p_a / k followed by p_a -> p_a / (1/k) is the identity
    assert omega(omega(f, k), 1 / k) == f


@settings(max_examples=40)
@given(symfuncs(), symfuncs(), nonzero_rationals(9), rationals(9))
def test_theta_is_multiplicative_and_invertible(f, g, k, q):
    ctx = _loose_ctx(k, q)
    assert theta(f * g, ctx) == theta(f, ctx) * theta(g, ctx)
    assert theta_inverse(theta(f, ctx), ctx) == f


@pytest.mark.parametrize("lam", [lam for lam in partitions_upto(5) if lam])
def test_theta_is_triangular_in_monomials(lam):
    ctx = CTX6
    img = to_monomial(theta(to_power(SymFunc.m(*lam)), ctx))
    assert img.coeff(lam) == 1
    for mu in img.support():
        # mu arises from lam by deleting some rows
        rest = list(lam)
        for a in mu:
            assert a in rest
            rest.remove(a)


def test_json_round_trip():
    f = SymFunc(MONOMIAL, {(2, 1): Fraction(-4, 7), (): 3})
    data = f.to_json()
    assert data["terms"][0] == {"partition": [], "coeff": "3"}
    assert SymFunc.from_json(data) == f
