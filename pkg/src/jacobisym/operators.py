"""The BC-infinity operator in power sums, its finite and deformed restrictions.

The infinite operator acts on p-monomials by second-order calculus in the
coordinates p_a with d_a = a * d/dp_a; every p_0 that appears is replaced by
the scalar p0 = -(h + p/2 + q)/k.  The finite and deformed operators act on
:class:`MultiPoly` values; their divided differences are exact divisions that
fail loudly on inputs outside the invariant subalgebra.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .core import CertificationError, ParamContext, Partition, make_context, partitions_upto
from .poly import MultiPoly, NotDivisibleError
from .symfunc import MONOMIAL, POWER, SymFunc, merge, omega, theta, theta_constant, to_monomial, to_power

FULL, A_PART, B_PART = "L", "A", "B"


class NotInDomainError(ValueError):
    """Input polynomial is outside the algebra the operator preserves."""


class LocusError(ValueError):
    """The context's h does not sit on the required locus."""


# ---------------------------------------------------------------------------
# infinite operator on p-monomials


def _pmono(indices, coeff, p0) -> tuple[Partition, Fraction]:
    """Product of p_i over ``indices`` with p_0 folded into the scalar."""
    c = Fraction(coeff)
    parts = []
    for i in indices:
        if i == 0:
            c *= p0
        else:
            parts.append(i)
    return tuple(sorted(parts, reverse=True)), c


def _first_order_coeff(a: int, kind: str, k, p, h, p0) -> dict[Partition, Fraction]:
    """The coefficient polynomial F_a multiplying d_a, as a p-basis dict."""
    out: dict[Partition, Fraction] = {}

    def add(indices, c):
        lam, v = _pmono(indices, c, p0)
        if v:
            out[lam] = out.get(lam, 0) + v

    for b in range(a - 1):  # b = 0 .. a-2
        if kind in (FULL, A_PART):
            add((a - b - 1, b + 1), -k)
        if kind in (FULL, B_PART):
            add((a - b - 1, b), -2 * k)
    if kind in (FULL, A_PART):
        add((a,), a + k * (a + 1) + 2 * h)
    if kind in (FULL, B_PART):
        add((a - 1,), 2 * a - 1 + 2 * k * a + 2 * h - p)
    return {lam: c for lam, c in out.items() if c}


def _remove(counts: dict[int, int], *parts: int) -> Partition:
    c = dict(counts)
    for a in parts:
        c[a] -= 1
    return tuple(sorted((a for a, n in c.items() for _ in range(n)), reverse=True))


@lru_cache(maxsize=None)
def _apply_pmono(lam: Partition, kind: str, k: Fraction, p: Fraction, q: Fraction, h: Fraction):
    p0 = -(h + p / 2 + q) / k
    counts: dict[int, int] = {}
    for a in lam:
        counts[a] = counts.get(a, 0) + 1
    out: dict[Partition, Fraction] = {}

    def add(part: Partition, c):
        if c:
            v = out.get(part, 0) + c
            if v:
                out[part] = v
            else:
                out.pop(part, None)

    # second order: sum over ordered pairs (a, b)
    distinct = sorted(counts)
    for a in distinct:
        for b in distinct:
            if a == b:
                if counts[a] < 2:
                    continue
                mult = a * a * counts[a] * (counts[a] - 1)
            else:
                mult = a * b * counts[a] * counts[b]
            rest = _remove(counts, a, b)
            if kind in (FULL, A_PART):
                add(merge(rest, (a + b,)), mult)
            if kind in (FULL, B_PART):
                add(merge(rest, (a + b - 1,)), 2 * mult)
    # first order
    for a in distinct:
        mult = a * counts[a]
        rest = _remove(counts, a)
        for mono, c in _first_order_coeff(a, kind, k, p, h, p0).items():
            add(merge(rest, mono), mult * c)
    return tuple(out.items())


def apply_operator(f: SymFunc, k, p, q, h, kind: str = FULL) -> SymFunc:
    """Image of f under the infinite operator (or its A/B part) at explicit parameters."""
    k, p, q, h = (Fraction(x) for x in (k, p, q, h))
    if k == 0:
        raise ZeroDivisionError("k must be nonzero")
    g = to_power(f)
    out: dict = {}
    for lam, c in g.terms.items():
        for mu, d in _apply_pmono(lam, kind, k, p, q, h):
            out[mu] = out.get(mu, 0) + c * d
    res = SymFunc(POWER, out)
    return res if f.basis == POWER else to_monomial(res)


def apply_L(f: SymFunc, ctx: ParamContext) -> SymFunc:
    return apply_operator(f, ctx.k, ctx.p, ctx.q, ctx.h, FULL)


def apply_A(f: SymFunc, ctx: ParamContext) -> SymFunc:
    return apply_operator(f, ctx.k, ctx.p, ctx.q, ctx.h, A_PART)


def apply_B(f: SymFunc, ctx: ParamContext) -> SymFunc:
    return apply_operator(f, ctx.k, ctx.p, ctx.q, ctx.h, B_PART)


@lru_cache(maxsize=None)
def monomial_matrix_row(mu: Partition, kind: str, k, p, q, h) -> tuple[tuple[Partition, Fraction], ...]:
    """The operator applied to m_mu, expanded back in monomials."""
    img = apply_operator(SymFunc(MONOMIAL, {mu: 1}), k, p, q, h, kind)
    return tuple(img.terms.items())


# ---------------------------------------------------------------------------
# finite-N and deformed operators


def _is_symmetric(P: MultiPoly, idx: list[int]) -> bool:
    return all(P.swap(idx[t], idx[t + 1]) == P for t in range(len(idx) - 1))


def _divided(P: MultiPoly, i: int, j: int, ci=1, cj=1) -> MultiPoly:
    """(ci * x_i d_i P - cj * x_j d_j P) / (x_i - x_j), exactly."""
    num = P.euler(i).scale(ci) - P.euler(j).scale(cj)
    try:
        return num.divide_difference(i, j)
    except NotDivisibleError as exc:
        raise NotInDomainError(str(exc)) from exc


def apply_finite(P: MultiPoly, k, p, q, kind: str = FULL) -> MultiPoly:
    """The BC_N operator in u-coordinates (or its A/B part) on a symmetric P."""
    k, p, q = Fraction(k), Fraction(p), Fraction(q)
    N = len(P.vars)
    idx = list(range(N))
    if not _is_symmetric(P, idx):
        raise NotInDomainError("input is not symmetric")
    out = MultiPoly(P.vars)
    for i in idx:
        d1 = P.diff(i)
        d2 = d1.diff(i)
        eu = P.euler(i)
        if kind in (FULL, A_PART):
            out = out + d2.mul_var(i, 2) + eu - eu.scale(p + 2 * q + k * (N - 1))
        if kind in (FULL, B_PART):
            out = out + d2.mul_var(i).scale(2) - d1.scale(2 * p + 2 * q - 1)
    for i in idx:
        for j in idx[i + 1 :]:
            D = _divided(P, i, j)
            if kind in (FULL, A_PART):
                out = out - (D.mul_var(i) + D.mul_var(j)).scale(k)
            if kind in (FULL, B_PART):
                out = out - D.scale(4 * k)
    return out


def apply_finite_L(P: MultiPoly, k, p, q) -> MultiPoly:
    return apply_finite(P, k, p, q, FULL)


def apply_deformed(P: MultiPoly, m: int, n: int, k, p, q, kind: str = FULL) -> MultiPoly:
    """The deformed BC(m,n) operator on P(u_1..u_m, v_1..v_n)."""
    k, p, q = Fraction(k), Fraction(p), Fraction(q)
    if len(P.vars) != m + n:
        raise ValueError("variable count does not match (m, n)")
    us = list(range(m))
    vs = list(range(m, m + n))
    if not (_is_symmetric(P, us) and _is_symmetric(P, vs)):
        raise NotInDomainError("input is not bisymmetric")
    out = MultiPoly(P.vars)
    mom = n + k * (m - 1) + p + 2 * q
    for i in us + vs:
        scale = 1 if i < m else k
        d1 = P.diff(i)
        d2 = d1.diff(i)
        eu = P.euler(i)
        if kind in (FULL, A_PART):
            # (x d)^2 = x^2 d^2 + x d
            out = out + (d2.mul_var(i, 2) + eu).scale(scale) - eu.scale(mom)
        if kind in (FULL, B_PART):
            # 2 d (x d) = 2 x d^2 + 2 d
            out = out + (d2.mul_var(i) + d1).scale(2 * scale) - d1.scale(1 + 2 * p + 2 * q)
    for a in range(m + n):
        for b in range(a + 1, m + n):
            if a < m and b < m:
                D = _divided(P, a, b)
                c_a, c_b = k, 4 * k
            elif a >= m and b >= m:
                D = _divided(P, a, b)
                c_a, c_b = Fraction(1), Fraction(4)
            else:
                D = _divided(P, a, b, 1, k)
                c_a, c_b = Fraction(1), Fraction(4)
            if kind in (FULL, A_PART):
                out = out - (D.mul_var(a) + D.mul_var(b)).scale(c_a)
            if kind in (FULL, B_PART):
                out = out - D.scale(c_b)
    return out


def apply_deformed_L(P: MultiPoly, m: int, n: int, k, p, q) -> MultiPoly:
    return apply_deformed(P, m, n, k, p, q, FULL)


# ---------------------------------------------------------------------------
# verifications


def _require_locus(h, expected, what: str):
    if Fraction(h) != expected:
        raise LocusError(f"h = {h} is not on the {what} locus (expected {expected})")


def verify_intertwine_finite(f: SymFunc, N: int, ctx: ParamContext, *, check_locus: bool = True) -> bool:
    """phi_N(L f) == L^(N) phi_N(f) exactly."""
    from .symfunc import expand_finite

    if check_locus:
        _require_locus(ctx.h, -ctx.k * N - ctx.p / 2 - ctx.q, f"N={N}")
    lhs = expand_finite(apply_L(f, ctx), N)
    rhs = apply_finite_L(expand_finite(f, N), ctx.k, ctx.p, ctx.q)
    return lhs == rhs


def verify_intertwine_deformed(f: SymFunc, m: int, n: int, ctx: ParamContext, *, check_locus: bool = True) -> bool:
    """phi_{m,n}(L f) == L^(m,n) phi_{m,n}(f) exactly."""
    from .symfunc import expand_deformed

    if check_locus:
        _require_locus(ctx.h, -ctx.k * m - n - ctx.p / 2 - ctx.q, f"(m,n)=({m},{n})")
    lhs = expand_deformed(apply_L(f, ctx), m, n, ctx.k)
    rhs = apply_deformed_L(expand_deformed(f, m, n, ctx.k), m, n, ctx.k, ctx.p, ctx.q)
    return lhs == rhs


PQ_REFLECTION = "pq-reflection"
OMEGA_DUALITY = "omega-duality"
THETA_SHIFT = "theta-shift"
SYMMETRIES = (PQ_REFLECTION, OMEGA_DUALITY, THETA_SHIFT)


def reflected_params(k, p, q) -> tuple[Fraction, Fraction]:
    """(p', q') = (1 + 2k - p - 2q, q)."""
    return 1 + 2 * Fraction(k) - Fraction(p) - 2 * Fraction(q), Fraction(q)


def dual_params(k, p, q, h) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """(1/k, r, s, h_hat) with r = p/k, 2s+1 = (2q+1)/k, 2h_hat-1 = (2h-1)/k."""
    k, p, q, h = (Fraction(x) for x in (k, p, q, h))
    r = p / k
    s = ((2 * q + 1) / k - 1) / 2
    hh = ((2 * h - 1) / k + 1) / 2
    return 1 / k, r, s, hh


def shifted_params(k, p, q) -> tuple[Fraction, Fraction]:
    """(p~, q~) = (-p, 2k + 1 - q)."""
    return -Fraction(p), 2 * Fraction(k) + 1 - Fraction(q)


def dual_context(ctx: ParamContext, d: int | None = None) -> ParamContext:
    k, r, s, hh = dual_params(ctx.k, ctx.p, ctx.q, ctx.h)
    return make_context(k, r, s, hh, ctx.d if d is None else d)


def verify_symmetry(rel: str, d: int, ctx: ParamContext, *, q_tilde=None) -> bool:
    """Check one operator symmetry on every p-monomial of weight <= d."""
    if not ctx.certified:
        raise CertificationError("verify_symmetry needs a certified context")
    k, p, q, h = ctx.k, ctx.p, ctx.q, ctx.h
    monos = [SymFunc(POWER, {lam: 1}) for lam in partitions_upto(d)]
    if rel == PQ_REFLECTION:
        p2, q2 = reflected_params(k, p, q)
        return all(apply_operator(f, k, p, q, h) == apply_operator(f, k, p2, q2, h) for f in monos)
    if rel == OMEGA_DUALITY:
        dual = dual_context(ctx)
        return all(
            omega(apply_L(f, ctx), k) == apply_L(omega(f, k), dual).scale(k) for f in monos
        )
    if rel == THETA_SHIFT:
        p2, q2 = shifted_params(k, p, q)
        if q_tilde is not None:
            q2 = Fraction(q_tilde)
        return all(
            theta(apply_L(f, ctx), ctx) == apply_operator(theta(f, ctx), k, p2, q2, h) for f in monos
        )
    raise ValueError(f"unknown symmetry {rel!r}")
