"""Jacobi symmetric functions, Jack functions and their closed-form companions."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .core import (
    ParamContext,
    Partition,
    bernoulli_even,
    boxes,
    conjugate,
    contains,
    content_product,
    eigenvalue_of,
    finite_h,
    make_context,
    partitions_of,
    partitions_upto,
    precedes,
    weight,
)
from .interpolation import interpolation_norm, interpolation_value
from .operators import A_PART, FULL, dual_params, monomial_matrix_row, reflected_params, shifted_params
from .poly import MultiPoly
from .symfunc import MONOMIAL, SymFunc, expand_finite, omega, theta, to_monomial


class ResonanceError(ArithmeticError):
    """Two eigenvalues on the triangular chain coincide."""


class DegenerateFactorError(ArithmeticError):
    """A closed-form product hit a zero denominator."""


def eigenvalue(lam: Partition, ctx: ParamContext) -> Fraction:
    return eigenvalue_of(lam, ctx.k, ctx.h)


def _key(ctx: ParamContext):
    return (ctx.k, ctx.p, ctx.q, ctx.h)


# ---------------------------------------------------------------------------
# triangular eigen-solves


@lru_cache(maxsize=None)
def _jacobi(lam: Partition, k, p, q, h) -> SymFunc:
    n = weight(lam)
    target = eigenvalue_of(lam, k, h)
    diag = dict(monomial_matrix_row(lam, FULL, k, p, q, h)).get(lam, Fraction(0))
    if diag != target:
        raise ArithmeticError(f"operator diagonal {diag} differs from eigenvalue {target} at {lam}")
    coeffs: dict[Partition, Fraction] = {lam: Fraction(2) ** n}
    acc: dict[Partition, Fraction] = {}

    def push(nu, u):
        for mu, c in monomial_matrix_row(nu, FULL, k, p, q, h):
            if mu != nu:
                acc[mu] = acc.get(mu, 0) + u * c

    push(lam, coeffs[lam])
    for w in range(n, -1, -1):
        for mu in partitions_of(w):
            if not precedes(mu, lam):
                continue
            s = acc.get(mu, 0)
            if not s:
                continue
            gap = target - eigenvalue_of(mu, k, h)
            if gap == 0:
                raise ResonanceError(f"e({lam}) = e({mu})")
            coeffs[mu] = s / gap
            push(mu, coeffs[mu])
    return SymFunc(MONOMIAL, coeffs)


def jacobi(lam: Partition, ctx: ParamContext) -> SymFunc:
    """The Jacobi symmetric function J_lam in the monomial basis."""
    if ctx.certified and weight(lam) > ctx.d:
        raise ValueError(f"|lam| = {weight(lam)} exceeds the certified degree {ctx.d}")
    return _jacobi(tuple(lam), *_key(ctx))


@lru_cache(maxsize=None)
def _jack(lam: Partition, k) -> SymFunc:
    zero = Fraction(0)
    diag_of = lambda nu: dict(monomial_matrix_row(nu, A_PART, k, zero, zero, zero)).get(nu, zero)
    target = diag_of(lam)
    coeffs: dict[Partition, Fraction] = {lam: Fraction(1)}
    acc: dict[Partition, Fraction] = {}

    def push(nu, u):
        for mu, c in monomial_matrix_row(nu, A_PART, k, zero, zero, zero):
            if mu != nu:
                acc[mu] = acc.get(mu, 0) + u * c

    push(lam, Fraction(1))
    for mu in partitions_of(weight(lam)):
        if mu == lam or not precedes(mu, lam):
            continue
        s = acc.get(mu, 0)
        if not s:
            continue
        gap = target - diag_of(mu)
        if gap == 0:
            raise ResonanceError(f"Jack resonance {lam} ~ {mu}")
        coeffs[mu] = s / gap
        push(mu, coeffs[mu])
    return SymFunc(MONOMIAL, coeffs)


def jack(lam: Partition, ctx: ParamContext) -> SymFunc:
    """Monic Jack function P_lam(u; -k): eigenfunction of the degree-preserving part."""
    return _jack(tuple(lam), ctx.k)


def jack_k(lam: Partition, k) -> SymFunc:
    return _jack(tuple(lam), Fraction(k))


# ---------------------------------------------------------------------------
# values at zero


def jacobi_zero_closed(lam: Partition, ctx: ParamContext) -> Fraction:
    k, p, q, h = _key(ctx)
    num = content_product("zero", lam, h + p / 2 + q, k) * content_product("zero", lam, k + h - p / 2 + Fraction(1, 2), k)
    den = content_product("minus", lam, -k, k) * content_product("plus", lam, 2 * h - 1, k)
    if den == 0:
        raise DegenerateFactorError(f"zero denominator in J_{lam}(0)")
    return Fraction(4) ** weight(lam) * num / den


def pochhammer(x: Fraction, n: int) -> Fraction:
    out = Fraction(1)
    for i in range(n):
        out *= x + i
    return out


def gamma_ratio_shift(a: Fraction, b: Fraction) -> Fraction:
    """Gamma(a)/Gamma(b) when a - b is an integer."""
    t = a - b
    if t.denominator != 1:
        raise DegenerateFactorError(f"non-integer gamma offset {t}")
    t = int(t)
    if t >= 0:
        return pochhammer(b, t)
    d = pochhammer(a, -t)
    if d == 0:
        raise DegenerateFactorError("pole in gamma ratio")
    return 1 / d


def upsilon(A: Fraction, B: Fraction, m_alpha: Fraction, m_half: Fraction) -> Fraction:
    """Gamma(A-c)Gamma(B-c')/(Gamma(A-c')Gamma(B-c)), c = m + m'/2, c' = m'/2.

    Either A - B or m_alpha must be an integer so the ratio telescopes.
    """
    c = m_alpha + m_half / 2
    c2 = m_half / 2
    if (A - B).denominator == 1:
        num = gamma_ratio_shift(A - c, B - c)
        den = gamma_ratio_shift(A - c2, B - c2)
    elif m_alpha.denominator == 1:
        num = gamma_ratio_shift(B - c2, B - c)
        den = gamma_ratio_shift(A - c2, A - c)
    else:
        raise DegenerateFactorError("gamma ratio does not telescope")
    if den == 0:
        raise DegenerateFactorError("zero in gamma ratio")
    return num / den


def finite_roots(N: int, k, p, q):
    """Positive BC_N roots as (coefficient vector, multiplicity, half-root multiplicity)."""
    out = []
    for i in range(N):
        e = [0] * N
        e[i] = 1
        out.append((tuple(e), Fraction(p), Fraction(0)))
        e2 = [0] * N
        e2[i] = 2
        out.append((tuple(e2), Fraction(q), Fraction(p)))
    for i in range(N):
        for j in range(i + 1, N):
            for s in (1, -1):
                e = [0] * N
                e[i] = 1
                e[j] = s
                out.append((tuple(e), Fraction(k), Fraction(0)))
    return out


def finite_rho(N: int, k, p, q) -> list[Fraction]:
    return [Fraction(k) * (N - i) + Fraction(p) / 2 + Fraction(q) for i in range(1, N + 1)]


def _coroot_pair(x, alpha) -> Fraction:
    norm = sum(a * a for a in alpha)
    return sum(Fraction(2) * xi * a for xi, a in zip(x, alpha)) / norm


def opdam_product(lam: Partition, N: int, k, p, q) -> Fraction:
    """Product of upsilon factors over the positive roots of BC_N."""
    k, p, q = Fraction(k), Fraction(p), Fraction(q)
    rho = finite_rho(N, k, p, q)
    lam_v = [Fraction(a) for a in lam] + [Fraction(0)] * (N - len(lam))
    out = Fraction(1)
    for alpha, m, mh in finite_roots(N, k, p, q):
        A = _coroot_pair([l - r for l, r in zip(lam_v, rho)], alpha)
        B = _coroot_pair([-r for r in rho], alpha)
        out *= upsilon(A, B, m, mh)
    return out


def opdam_content_form(lam: Partition, N: int, k, p, q) -> Fraction:
    """The content-product form of the finite value at zero."""
    k, p, q = Fraction(k), Fraction(p), Fraction(q)
    num = content_product("zero", lam, -k * N, k) * content_product("zero", lam, k * (1 - N) - p - q + Fraction(1, 2), k)
    den = content_product("minus", lam, -k, k) * content_product("plus", lam, -2 * k * N - p - 2 * q - 1, k)
    if den == 0:
        raise DegenerateFactorError("zero denominator")
    return Fraction(4) ** weight(lam) * num / den


def opdam_finite_oracle(lam: Partition, N: int, k, p, q) -> Fraction:
    """Finite value at zero; both closed forms are computed and must agree."""
    if len(lam) > N:
        raise ValueError("l(lam) must not exceed N")
    a = opdam_product(lam, N, k, p, q)
    b = opdam_content_form(lam, N, k, p, q)
    if a != b:
        raise ArithmeticError(f"closed forms disagree at {lam}, N={N}: {a} vs {b}")
    return a


# ---------------------------------------------------------------------------
# binomial formula


def binomial_coeffs(lam: Partition, ctx: ParamContext) -> dict[Partition, Fraction]:
    """Coefficients of J_lam in the Jack basis: mu -> 2^|mu| J_lam(0) I_mu(lam) / (J_mu(0) I_mu(mu))."""
    lam = tuple(lam)
    jl = jacobi_zero_closed(lam, ctx)
    out = {}
    for mu in partitions_upto(weight(lam)):
        if not contains(lam, mu):
            continue
        jm = jacobi_zero_closed(mu, ctx)
        norm = interpolation_norm(mu, ctx.k, ctx.h)
        if jm == 0 or norm == 0:
            raise DegenerateFactorError(f"zero denominator at mu={mu}")
        c = Fraction(2) ** weight(mu) * jl * interpolation_value(mu, lam, ctx.k, ctx.h) / (jm * norm)
        if c:
            out[mu] = c
    return out


def expand_in_jacks(f: SymFunc, ctx: ParamContext) -> dict[Partition, Fraction]:
    """Coefficients of f in the Jack basis, by triangular elimination."""
    g = dict(to_monomial(f).terms)
    out = {}
    while g:
        # the top term in (weight, dominance-refined lex) order is a Jack leading term
        lam = max(g, key=lambda mu: (weight(mu), mu))
        c = g[lam]
        out[lam] = c
        for mu, d in jack(lam, ctx).terms.items():
            v = g.get(mu, 0) - c * d
            if v:
                g[mu] = v
            else:
                g.pop(mu, None)
    return out


def expand_in_jacobis(f: SymFunc, ctx: ParamContext) -> dict[Partition, Fraction]:
    """Coefficients of f in the Jacobi basis, by triangular elimination."""
    g = dict(to_monomial(f).terms)
    out = {}
    while g:
        lam = max(g, key=lambda mu: (weight(mu), mu))
        J = jacobi(lam, ctx)
        c = g[lam] / J.coeff(lam)
        out[lam] = c
        for mu, d in J.terms.items():
            v = g.get(mu, 0) - c * d
            if v:
                g[mu] = v
            else:
                g.pop(mu, None)
    return out


# ---------------------------------------------------------------------------
# shifted-symmetric data


def bernoulli_gen(l: int, lam: Partition, ctx_or_kh) -> Fraction:
    """f_l(lam) = 2l sum over boxes (j-1 + k(i-1) + h + k + 1/2)^(2l-1)."""
    k, h = _kh(ctx_or_kh)
    return 2 * l * sum(((j - 1 + k * (i - 1) + h + k + Fraction(1, 2)) ** (2 * l - 1) for i, j in boxes(lam)), Fraction(0))


def bernoulli_gen_shifted(l: int, w, k, h) -> Fraction:
    """f_l at a free point w: sum_i B_2l(w_i + h + ki + 1/2) - B_2l(h + ki + 1/2)."""
    k, h = Fraction(k), Fraction(h)
    return sum(
        (bernoulli_even(l, Fraction(wi) + h + k * i + Fraction(1, 2)) - bernoulli_even(l, h + k * i + Fraction(1, 2))
         for i, wi in enumerate(w, start=1)),
        Fraction(0),
    )


def _kh(ctx_or_kh):
    if isinstance(ctx_or_kh, ParamContext):
        return ctx_or_kh.k, ctx_or_kh.h
    k, h = ctx_or_kh
    return Fraction(k), Fraction(h)


class ShiftedSample:
    """A shifted-symmetric function known through its values on partitions."""

    def __init__(self, values: dict[Partition, Fraction], degree: int):
        self.values = {tuple(l): Fraction(v) for l, v in values.items()}
        self.degree = degree

    def __call__(self, lam: Partition) -> Fraction:
        return self.values[tuple(lam)]

    @classmethod
    def from_function(cls, fn, dmax: int, degree: int, max_length: int | None = None) -> "ShiftedSample":
        parts = [lam for lam in partitions_upto(dmax) if max_length is None or len(lam) <= max_length]
        return cls({lam: fn(lam) for lam in parts}, degree)


def pie_coefficient(mu: Partition, nu: Partition, ctx: ParamContext) -> Fraction:
    """2^(|nu|-|mu|) J_mu(0) I_mu(mu) / (J_nu(0) I_nu(nu)): the coefficient that
    makes the interpolation Pieri identity hold with the solved matrix a."""
    k, h = ctx.k, ctx.h
    return (
        Fraction(2) ** (weight(nu) - weight(mu))
        * jacobi_zero_closed(mu, ctx)
        * interpolation_norm(mu, k, h)
        / (jacobi_zero_closed(nu, ctx) * interpolation_norm(nu, k, h))
    )


def binomial_matrix_entry(lam: Partition, mu: Partition, ctx: ParamContext) -> Fraction:
    """C_{lam,mu} = 2^|mu| J_lam(0) I_mu(lam) / (J_mu(0) I_mu(mu))."""
    k, h = ctx.k, ctx.h
    return (
        Fraction(2) ** weight(mu)
        * jacobi_zero_closed(lam, ctx)
        * interpolation_value(mu, lam, k, h)
        / (jacobi_zero_closed(mu, ctx) * interpolation_norm(mu, k, h))
    )


class PieIdentityError(ArithmeticError):
    pass


def quantum_integral_matrix(
    f: ShiftedSample, dmax: int, ctx: ParamContext, *, sample_weight: int | None = None, N: int | None = None
) -> dict[tuple[Partition, Partition], Fraction]:
    """Solve f(lam) C[lam,mu] = sum_{mu<=nu<=lam} C[lam,nu] a[nu,mu] for |nu| <= dmax.

    Afterwards the interpolation Pieri identity
    f(lam) I_mu(lam) = sum_nu coeff(mu,nu) a[nu,mu] I_nu(lam)
    is checked at every sampled lam (|lam| <= sample_weight) for |mu| <= dmax - bandwidth,
    using only the nu inside the bandwidth deg(f)/2.
    """
    if N is not None and ctx.h != finite_h(ctx.k, ctx.p, ctx.q, N):
        raise ValueError("context is not on the finite locus for this N")
    parts = [lam for lam in partitions_upto(dmax) if N is None or len(lam) <= N]
    C: dict[tuple[Partition, Partition], Fraction] = {}
    for lam in parts:
        for mu in parts:
            if contains(lam, mu):
                C[lam, mu] = binomial_matrix_entry(lam, mu, ctx)
    a: dict[tuple[Partition, Partition], Fraction] = {}
    for lam in parts:  # increasing weight
        subs = [mu for mu in parts if contains(lam, mu)]
        for mu in subs:
            rhs = f(lam) * C[lam, mu]
            for nu in subs:
                if nu != lam and contains(nu, mu):
                    rhs -= C[lam, nu] * a.get((nu, mu), Fraction(0))
            diag = C[lam, lam]
            if diag == 0:
                raise ArithmeticError(f"singular triangular system at {lam}")
            val = rhs / diag
            if val:
                a[lam, mu] = val
    band = f.degree // 2
    sw = dmax if sample_weight is None else sample_weight
    for lam in partitions_upto(sw):
        if N is not None and len(lam) > N:
            continue
        for mu in parts:
            if weight(mu) + band > dmax:
                continue
            lhs = f(lam) * interpolation_value(mu, lam, ctx.k, ctx.h)
            rhs = Fraction(0)
            for nu in parts:
                if contains(nu, mu) and weight(nu) - weight(mu) <= band:
                    coef = a.get((nu, mu), Fraction(0))
                    if coef:
                        rhs += pie_coefficient(mu, nu, ctx) * coef * interpolation_value(nu, lam, ctx.k, ctx.h)
            if lhs != rhs:
                raise PieIdentityError(f"interpolation Pieri identity fails at lam={lam}, mu={mu}: {lhs} != {rhs}")
    return a


def pie_identity_holds(order: str, f: ShiftedSample, a, dmax: int, sample_weight: int, ctx: ParamContext) -> bool:
    """Check the interpolation Pieri identity with a chosen reading of its coefficient.

    ``order`` is "mu,nu" or "nu,mu" (the binomial matrix entry with either index order) or
    "derived" (:func:`pie_coefficient`).  Uses the full solved sum over nu.
    """
    k, h = ctx.k, ctx.h
    parts = partitions_upto(dmax)
    for lam in partitions_upto(sample_weight):
        for mu in parts:
            if weight(mu) + f.degree // 2 > dmax:
                continue
            lhs = f(lam) * interpolation_value(mu, lam, k, h)
            rhs = Fraction(0)
            for nu in parts:
                if not contains(nu, mu):
                    continue
                coef = a.get((nu, mu), Fraction(0))
                if not coef:
                    continue
                if order == "mu,nu":
                    c = Fraction(2) ** weight(nu) * jacobi_zero_closed(mu, ctx) * interpolation_value(nu, mu, k, h) / (
                        jacobi_zero_closed(nu, ctx) * interpolation_norm(nu, k, h))
                elif order == "nu,mu":
                    c = binomial_matrix_entry(nu, mu, ctx)
                elif order == "derived":
                    c = pie_coefficient(mu, nu, ctx)
                else:
                    raise ValueError(order)
                rhs += c * coef * interpolation_value(nu, lam, k, h)
            if lhs != rhs:
                return False
    return True


# ---------------------------------------------------------------------------
# N = 1 reduction to the classical Jacobi equation


def classical_ode_check(n_deg: int, ctx: ParamContext, *, alpha_shift=0, check_locus: bool = True) -> bool:
    """The one-variable Jacobi function of degree n solves the classical Jacobi ODE in t = u + 1."""
    k, p, q = ctx.k, ctx.p, ctx.q
    if check_locus and ctx.h != finite_h(k, p, q, 1):
        raise ValueError("context is not on the N = 1 locus")
    y = expand_finite(jacobi((n_deg,), ctx), 1).substitute_affine(0, 1, -1)
    alpha = -p - q - Fraction(1, 2) + Fraction(alpha_shift)
    beta = -q - Fraction(1, 2)
    t = MultiPoly.variable(y.vars, 0)
    y1 = y.diff(0)
    y2 = y1.diff(0)
    lhs = (1 - t * t) * y2 + ((beta - alpha) - (alpha + beta + 2) * t) * y1 + y.scale(n_deg * (n_deg + alpha + beta + 1))
    return lhs.is_zero()


# ---------------------------------------------------------------------------
# parameter dualities of the Jacobi functions


def reflected_context(ctx: ParamContext) -> ParamContext:
    p2, q2 = reflected_params(ctx.k, ctx.p, ctx.q)
    return make_context(ctx.k, p2, q2, ctx.h, ctx.d)


def shifted_context(ctx: ParamContext) -> ParamContext:
    p2, q2 = shifted_params(ctx.k, ctx.p, ctx.q)
    return make_context(ctx.k, p2, q2, ctx.h, ctx.d)


def verify_reflection_duality(lam: Partition, ctx: ParamContext) -> bool:
    return jacobi(lam, ctx) == jacobi(lam, reflected_context(ctx))


def verify_omega_duality(lam: Partition, ctx: ParamContext) -> bool:
    k, r, s, hh = dual_params(ctx.k, ctx.p, ctx.q, ctx.h)
    dual = make_context(k, r, s, hh, ctx.d)
    lam_c = conjugate(lam)
    lhs = omega(jacobi(lam, ctx), ctx.k)
    ratio = jacobi_zero_closed(lam, ctx) / jacobi_zero_closed(lam_c, dual)
    return lhs == jacobi(lam_c, dual).scale(ratio)


def verify_theta_duality(lam: Partition, ctx: ParamContext) -> bool:
    return theta(jacobi(lam, ctx), ctx) == jacobi(lam, shifted_context(ctx))
