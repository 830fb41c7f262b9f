from fractions import Fraction

import pytest

from jacobisym.core import ParamContext, conjugate, finite_h, partitions_upto, weight
from jacobisym.eigenfunctions import DegenerateFactorError, jacobi_zero_closed
from jacobisym.pieri import (
    PHI,
    THETA_PHI,
    InadmissibleShiftError,
    PieriTermSpec,
    SignedShift,
    admissible_shifts,
    finite_context,
    finite_term_factors,
    generic_vanishing,
    ideal_closure_failures,
    ideal_contains,
    ideal_mismatches,
    infinite_term_specs,
    lemma_zero_violations,
    pieri_coeff_boxes,
    pieri_coeff_product,
    pieri_coeff_r1,
    pieri_coeff_upsilon,
    reconstruct_coeff_in_h,
    term_specs,
    v_func,
    van_diejen_rhs,
    verify_pieri_infinite,
    verify_pieri_r1,
    verify_singular_ideal,
    verify_van_diejen,
    w_func,
)
from strategies import CTX6, CTX_SEEDS

CTX = CTX6
K, P, Q, H = CTX.k, CTX.p, CTX.q, CTX.h


# --- building blocks -------------------------------------------------------------


def test_w_and_v_examples():
    assert v_func(K, K) == 0
    assert v_func(2 * K, K) == Fraction(1, 2)
    assert w_func(P / 2 + Q, K, P, Q) == 0
    with pytest.raises(DegenerateFactorError):
        v_func(0, K)


def test_admissible_shifts():
    got = {(s.index, s.sign) for s in admissible_shifts((2, 1))}
    assert got == {(1, 1), (2, 1), (3, 1), (1, -1), (2, -1)}
    assert {(s.index, s.sign) for s in admissible_shifts(())} == {(1, 1)}


def test_term_specs_respect_partition_targets():
    for spec in term_specs((2, 2), 2, range(1, 4)):
        assert spec.r == 2
        assert spec.target((2, 2)) is not None


# --- van Diejen's rule -------------------------------------------------------------


def test_van_diejen_two_boxes_in_four_variables():
    assert verify_van_diejen((2, 1), 2, 4, CTX)


@pytest.mark.parametrize("lam", [(1,), (2, 1)])
def test_van_diejen_one_box_matches_closed_form(lam):
    N = 4
    fctx = finite_context(CTX, N, 6)
    rhs = van_diejen_rhs(lam, 1, N, K, P, Q)
    for sh in admissible_shifts(lam):
        assert rhs[sh.apply(lam)] == pieri_coeff_r1(lam, sh, fctx)


@pytest.mark.parametrize("ctx", CTX_SEEDS[:2], ids=["s42", "s7"])
@pytest.mark.parametrize("lam", [lam for lam in partitions_upto(3)])
def test_van_diejen_small(lam, ctx):
    for r in (1, 2):
        for N in range(max(len(lam), r), 4):
            assert verify_van_diejen(lam, r, N, ctx)


@pytest.mark.parametrize("lam", partitions_upto(3))
def test_far_terms_vanish(lam):
    for r in (1, 2):
        for N in range(max(len(lam), r), 8):
            count, bad = lemma_zero_violations(lam, r, N, K, P, Q)
            assert not bad


def test_far_term_lower_factor_is_zero():
    lam, N = (1,), 5
    spec = PieriTermSpec(((4, 1),), ())  # L index 4 >= l + 2r + 1 = 4
    vm, _ = finite_term_factors(lam, spec, N, K, P, Q)
    assert vm == 0


# --- r = 1 closed forms --------------------------------------------------------------


def test_empty_partition_coefficient_is_value_at_zero():
    v = pieri_coeff_r1((), SignedShift(1, 1), CTX)
    assert v == jacobi_zero_closed((1,), CTX)
    assert v == -2 / K * (H + P / 2 + Q) * (2 * K + 2 * H + 1 - P) / (2 * K + 2 * H + 1)


@pytest.mark.parametrize("lam", [(2, 1), (3, 1), (2, 2, 1)])
def test_rectangle_independence(lam):
    l, lc = len(lam), len(conjugate(lam))
    for sh in admissible_shifts(lam):
        small = pieri_coeff_boxes(lam, sh.index, sh.sign, K, P, Q, H)
        large = pieri_coeff_boxes(lam, sh.index, sh.sign, K, P, Q, H, M=l + 2, N=lc + 3)
        assert small == large


def test_inadmissible_shift():
    with pytest.raises(InadmissibleShiftError):
        pieri_coeff_product((1,), 2, -1, K, P, Q, H)
    with pytest.raises(InadmissibleShiftError):
        pieri_coeff_r1((2, 2), SignedShift(2, 1), CTX)


@pytest.mark.parametrize("lam", partitions_upto(4))
def test_three_coefficient_forms_agree(lam):
    for N in (len(lam) + 1, len(lam) + 3):
        h = finite_h(K, P, Q, N)
        for sh in admissible_shifts(lam):
            a = pieri_coeff_product(lam, sh.index, sh.sign, K, P, Q, h)
            assert a == pieri_coeff_boxes(lam, sh.index, sh.sign, K, P, Q, h)
            assert a == pieri_coeff_upsilon(lam, sh.index, sh.sign, N, K, P, Q)


@pytest.mark.parametrize("lam", partitions_upto(5))
def test_one_box_pieri_rule(lam):
    assert verify_pieri_r1(lam, CTX)


def test_mutated_coefficient_breaks_the_rule():
    lam = (2, 1)
    assert not verify_pieri_r1(lam, CTX, mutate=SignedShift(1, 1))


# --- reconstruction in h ------------------------------------------------------------------


def test_reconstruction_matches_closed_form():
    spec = PieriTermSpec((), ((1, 1),))
    rf, _ = reconstruct_coeff_in_h((), spec, K, P, Q)
    for h in (Fraction(3, 13), Fraction(-17, 19), Fraction(41, 7)):
        assert rf(h) == jacobi_zero_closed((1,), ParamContext(K, P, Q, h))


def test_reconstruction_predicts_fresh_samples():
    lam = (2, 1)
    for spec in infinite_term_specs(lam, 1)[:4]:
        rf, _ = reconstruct_coeff_in_h(lam, spec, K, P, Q)
        N = 25
        vm, vp = finite_term_factors(lam, spec, N, K, P, Q)
        assert rf(finite_h(K, P, Q, N)) == (-1) ** len(spec.L) * vm * vp


def test_reconstructed_rule_holds_in_full_algebra():
    assert verify_pieri_infinite((1,), 2, CTX)


# --- invariant ideals ------------------------------------------------------------------


def test_rectangle_containment():
    assert ideal_contains((2, 2), 1, 1)
    assert not ideal_contains((3, 1), 1, 1)
    assert not ideal_contains((), 0, 0)
    assert ideal_contains((1,), 0, 0)


@pytest.mark.parametrize("m,n", [(1, 1), (2, 1)])
def test_first_branch_ideal(m, n):
    assert verify_singular_ideal(m, n, PHI, K, P, Q, 5)


@pytest.mark.parametrize("m,n", [(0, 0), (1, 0), (0, 1), (1, 1)])
def test_second_branch_ideal(m, n):
    assert not ideal_mismatches(m, n, THETA_PHI, K, P, Q, 4)


def test_second_branch_needs_the_stated_shift_sign():
    assert ideal_mismatches(1, 1, THETA_PHI, K, P, Q, 4, twist=-1)


def test_no_vanishing_at_generic_h():
    assert generic_vanishing(CTX, 4) == []


def test_ideal_is_closed_under_first_power_sum():
    assert ideal_closure_failures(1, 1, K, P, Q, 5) == []
