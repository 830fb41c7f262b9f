from fractions import Fraction

import pytest
from hypothesis import given, settings

from jacobisym.core import deformed_h, finite_h, make_context, partitions_upto
from jacobisym.eigenfunctions import jacobi
from jacobisym.operators import (
    A_PART,
    B_PART,
    OMEGA_DUALITY,
    PQ_REFLECTION,
    SYMMETRIES,
    THETA_SHIFT,
    LocusError,
    NotInDomainError,
    apply_A,
    apply_B,
    apply_deformed,
    apply_deformed_L,
    apply_finite,
    apply_finite_L,
    apply_L,
    dual_params,
    verify_intertwine_deformed,
    verify_intertwine_finite,
    verify_symmetry,
)
from jacobisym.poly import MultiPoly
from jacobisym.symfunc import POWER, SymFunc, expand_deformed, expand_finite
from strategies import CTX6, CTX_SEEDS, partitions

CTX = CTX6


def _on_finite_locus(ctx, N):
    return ctx.with_params(h=finite_h(ctx.k, ctx.p, ctx.q, N))


def _on_deformed_locus(ctx, m, n):
    return ctx.with_params(h=deformed_h(ctx.k, ctx.p, ctx.q, m, n))


# --- the infinite operator --------------------------------------------------------


def test_constants_are_killed():
    assert apply_L(SymFunc.constant(5), CTX).is_zero()


def test_action_on_p1():
    k, p, h, p0 = CTX.k, CTX.p, CTX.h, CTX.p0
    c = 1 + 2 * k + 2 * h
    assert apply_L(SymFunc.p(1), CTX) == SymFunc(POWER, {(1,): c, (): (c - p) * p0})
    assert apply_A(SymFunc.p(1), CTX) == SymFunc(POWER, {(1,): c})
    assert apply_B(SymFunc.p(1), CTX) == SymFunc(POWER, {(): (c - p) * p0})


def test_lowering_part_on_p2():
    k, p, h, p0 = CTX.k, CTX.p, CTX.h, CTX.p0
    want = SymFunc(POWER, {(1,): -4 * k * p0 + 2 * (3 + 4 * k + 2 * h - p)})
    assert apply_B(SymFunc.p(2), CTX) == want


def test_first_jacobi_function_is_an_eigenvector():
    J = jacobi((1,), CTX)
    assert apply_L(J, CTX) == J.scale(2 * CTX.h + 2 * CTX.k + 1)


@pytest.mark.parametrize("lam", partitions_upto(6))
def test_split_into_degree_parts(lam):
    f = SymFunc.p(*lam)
    a, b = apply_A(f, CTX), apply_B(f, CTX)
    assert apply_L(f, CTX) == a + b
    w = sum(lam)
    assert all(sum(mu) == w for mu in a.support())
    assert all(sum(mu) == w - 1 for mu in b.support())


# --- finite operator -------------------------------------------------------------


def test_finite_constants_are_killed():
    P = MultiPoly.constant(("u1", "u2"), 3)
    assert apply_finite_L(P, CTX.k, CTX.p, CTX.q).is_zero()


@pytest.mark.parametrize("N", [1, 2, 3, 4])
def test_finite_action_on_e1(N):
    k, p, q = CTX.k, CTX.p, CTX.q
    e1 = expand_finite(SymFunc.p(1), N)
    want = e1.scale(-(p + 2 * q - 1 + 2 * k * (N - 1))) + MultiPoly.constant(e1.vars, -2 * k * N * (N - 1) - (2 * p + 2 * q - 1) * N)
    assert apply_finite_L(e1, k, p, q) == want


def test_finite_rejects_non_symmetric_input():
    with pytest.raises(NotInDomainError):
        apply_finite_L(MultiPoly.variable(("u1", "u2"), 0), CTX.k, CTX.p, CTX.q)


@pytest.mark.parametrize("N", [1, 2, 3, 4])
@pytest.mark.parametrize("a,b", [(a, b) for a in range(1, 4) for b in range(a, 4)])
def test_finite_second_order_cross_terms(N, a, b):
    k, p, q = CTX.k, CTX.p, CTX.q
    pa, pb = expand_finite(SymFunc.p(a), N), expand_finite(SymFunc.p(b), N)
    for kind, want in ((A_PART, SymFunc.p(a + b).scale(2 * a * b)), (B_PART, SymFunc.p(a + b - 1).scale(4 * a * b))):
        gap = apply_finite(pa * pb, k, p, q, kind) - apply_finite(pa, k, p, q, kind) * pb - pa * apply_finite(pb, k, p, q, kind)
        assert gap == expand_finite(want, N)


@pytest.mark.parametrize("mu", [mu for mu in partitions_upto(4) if mu])
def test_finite_output_stays_symmetric(mu):
    P = expand_finite(SymFunc.p(*mu), 3)
    out = apply_finite_L(P, CTX.k, CTX.p, CTX.q)
    # a second application only succeeds on symmetric input
    apply_finite_L(out, CTX.k, CTX.p, CTX.q)


# --- intertwining --------------------------------------------------------------------


def test_finite_intertwining_examples():
    ctx = _on_finite_locus(CTX, 3)
    assert verify_intertwine_finite(SymFunc.p(2), 3, ctx)
    assert verify_intertwine_finite(SymFunc.constant(1), 3, ctx)
    off = ctx.with_params(h=ctx.h + 1)
    assert not verify_intertwine_finite(SymFunc.p(2), 3, off, check_locus=False)
    with pytest.raises(LocusError):
        verify_intertwine_finite(SymFunc.p(2), 3, off)


def test_deformed_intertwining_examples():
    assert verify_intertwine_deformed(SymFunc.p(2), 1, 1, _on_deformed_locus(CTX, 1, 1))
    assert verify_intertwine_deformed(SymFunc.p(2, 1), 2, 1, _on_deformed_locus(CTX, 2, 1))


@pytest.mark.parametrize("mu", [mu for mu in partitions_upto(4) if mu])
def test_deformed_without_odd_variables_is_finite(mu):
    ctx = _on_finite_locus(CTX, 2)
    f = SymFunc.p(*mu)
    assert verify_intertwine_deformed(f, 2, 0, ctx) == verify_intertwine_finite(f, 2, ctx) is True


def test_deformed_action_on_p1():
    k, p, q = CTX.k, CTX.p, CTX.q
    ctx = _on_deformed_locus(CTX, 1, 1)
    P = expand_deformed(SymFunc.p(1), 1, 1, k)
    assert apply_deformed_L(P, 1, 1, k, p, q) == expand_deformed(apply_L(SymFunc.p(1), ctx), 1, 1, k)


def test_deformed_rejects_outside_algebra():
    P = MultiPoly.variable(("u1", "v1"), 0)
    with pytest.raises(NotInDomainError):
        apply_deformed_L(P, 1, 1, CTX.k, CTX.p, CTX.q)


@settings(max_examples=25, deadline=None)
@given(partitions(4))
def test_deformed_output_stays_in_algebra(mu):
    k, p, q = CTX.k, CTX.p, CTX.q
    P = expand_deformed(SymFunc.p(*mu), 2, 1, k)
    apply_deformed_L(apply_deformed_L(P, 2, 1, k, p, q), 2, 1, k, p, q)
    apply_deformed(P, 2, 1, k, p, q, A_PART)


# --- symmetries ----------------------------------------------------------------------


@pytest.mark.parametrize("rel", SYMMETRIES)
@pytest.mark.parametrize("ctx", CTX_SEEDS, ids=["s42", "s7", "s2024"])
def test_symmetries_hold(rel, ctx):
    assert verify_symmetry(rel, 6, ctx)


def test_theta_shift_needs_the_right_q():
    assert verify_symmetry(THETA_SHIFT, 4, CTX)
    assert not verify_symmetry(THETA_SHIFT, 4, CTX, q_tilde=CTX.q)


def test_dual_parameters_are_an_involution():
    k, p, q, h = CTX.k, CTX.p, CTX.q, CTX.h
    assert dual_params(*dual_params(k, p, q, h)) == (k, p, q, h)
