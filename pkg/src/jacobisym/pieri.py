"""Pieri rules for Jacobi symmetric functions and the invariant ideals they control."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Iterator

from .core import (
    ParamContext,
    Partition,
    box_content,
    conjugate,
    finite_h,
    deformed_h,
    make_context,
    part,
    partitions_upto,
    shift,
    weight,
)
from .eigenfunctions import (
    DegenerateFactorError,
    expand_in_jacobis,
    gamma_ratio_shift,
    jack_k,
    jacobi,
    jacobi_zero_closed,
)
from .linalg import RationalFunction, reconstruct_rational
from .symfunc import MONOMIAL, SymFunc, elementary, expand_deformed, theta_constant, to_monomial, truncate_length

HALF = Fraction(1, 2)


class InadmissibleShiftError(ValueError):
    """lam + beta is not a partition."""


@dataclass(frozen=True)
class SignedShift:
    index: int
    sign: int

    def apply(self, lam: Partition) -> Partition | None:
        return shift(lam, self.index, self.sign)


def admissible_shifts(lam: Partition) -> list[SignedShift]:
    """Box additions in rows 1..l+1 and removals in rows 1..l that keep a partition."""
    out = []
    for i in range(1, len(lam) + 2):
        for s in (1, -1):
            if shift(lam, i, s) is not None:
                out.append(SignedShift(i, s))
    return out


# ---------------------------------------------------------------------------
# van Diejen's rule in N variables


def w_func(x, k, p, q) -> Fraction:
    x = Fraction(x)
    den = x * (x + HALF)
    if den == 0:
        raise DegenerateFactorError("w has a pole here")
    return (x - Fraction(p) / 2 - Fraction(q)) * (x - Fraction(p) / 2 + HALF) / den


def v_func(x, k) -> Fraction:
    x = Fraction(x)
    if x == 0:
        raise DegenerateFactorError("v has a pole at 0")
    return (x - Fraction(k)) / x


def v_plus(sig: dict[int, int], index_set, x, k, p, q) -> Fraction:
    """V^+_{sigma(J), I}(x) with J the keys of ``sig`` and x indexed from 1."""
    J = sorted(sig)
    out = Fraction(1)
    for j in J:
        out *= w_func(sig[j] * x[j], k, p, q)
    for a, b in combinations(J, 2):
        s = sig[a] * x[a] + sig[b] * x[b]
        out *= v_func(s, k) * v_func(s + 1, k)
    for j in J:
        for l in index_set:
            if l not in sig:
                out *= v_func(sig[j] * x[j] + x[l], k) * v_func(sig[j] * x[j] - x[l], k)
    return out


def v_minus(sig: dict[int, int], index_set, x, k, p, q) -> Fraction:
    """V^-_{sigma(L), I}(x)."""
    L = sorted(sig)
    out = Fraction(1)
    for j in L:
        out *= w_func(sig[j] * x[j], k, p, q)
    for a, b in combinations(L, 2):
        s = sig[a] * x[a] + sig[b] * x[b]
        out *= v_func(s, k) * v_func(-s - 1, k)
    for j in L:
        for l in index_set:
            if l not in sig:
                out *= v_func(sig[j] * x[j] + x[l], k) * v_func(sig[j] * x[j] - x[l], k)
    return out


@dataclass(frozen=True)
class PieriTermSpec:
    """Signed index sets: ``L`` and ``J`` map indices to signs."""

    L: tuple[tuple[int, int], ...]
    J: tuple[tuple[int, int], ...]

    @property
    def r(self) -> int:
        return len(self.L) + len(self.J)

    def target(self, lam: Partition) -> Partition | None:
        return shift_many(lam, self.J)

    def max_L(self) -> int:
        return max((i for i, _ in self.L), default=0)

    def label(self) -> str:
        fmt = lambda d: ",".join(f"{'+' if s > 0 else '-'}{i}" for i, s in d)
        return f"L={{{fmt(self.L)}}} J={{{fmt(self.J)}}}"


def shift_many(lam: Partition, moves) -> Partition | None:
    """Apply all (index, sign) moves at once; None unless the result is a partition."""
    top = max([len(lam)] + [i for i, _ in moves])
    seq = list(lam) + [0] * (top - len(lam))
    for i, s in moves:
        seq[i - 1] += s
    if any(a < 0 for a in seq) or any(seq[t] < seq[t + 1] for t in range(len(seq) - 1)):
        return None
    return tuple(a for a in seq if a > 0)


def term_specs(lam: Partition, r: int, indices) -> Iterator[PieriTermSpec]:
    """All (L, J, sigma) with L, J disjoint subsets of ``indices``, |L|+|J| = r and lam+sigma(J) a partition."""
    indices = sorted(indices)
    for nj in range(r + 1):
        for J in combinations(indices, nj):
            for sj in product((1, -1), repeat=nj):
                jspec = tuple(zip(J, sj))
                spec0 = PieriTermSpec((), jspec)
                if spec0.target(lam) is None:
                    continue
                rest = [i for i in indices if i not in J]
                for L in combinations(rest, r - nj):
                    for sl in product((1, -1), repeat=r - nj):
                        yield PieriTermSpec(tuple(zip(L, sl)), jspec)


def spectral_point(lam: Partition, N: int, k, p, q) -> dict[int, Fraction]:
    """x_i = lam_i - rho_i with rho_i = kN + p/2 + q - ki."""
    k, p, q = Fraction(k), Fraction(p), Fraction(q)
    return {i: part(lam, i) - (k * N + p / 2 + q - k * i) for i in range(1, N + 1)}


def finite_term_factors(lam: Partition, spec: PieriTermSpec, N: int, k, p, q) -> tuple[Fraction, Fraction]:
    """(V^-_{sigma(L), J^c}(lam - rho), V^+_{sigma(J), I}(lam - rho)) for I = {1..N}."""
    x = spectral_point(lam, N, k, p, q)
    I = range(1, N + 1)
    J = dict(spec.J)
    Jc = [i for i in I if i not in J]
    return v_minus(dict(spec.L), Jc, x, k, p, q), v_plus(J, I, x, k, p, q)


def finite_term_coeff(lam: Partition, spec: PieriTermSpec, N: int, k, p, q) -> Fraction:
    vm, vp = finite_term_factors(lam, spec, N, k, p, q)
    return (-1) ** len(spec.L) * vm * vp


def van_diejen_rhs(lam: Partition, r: int, N: int, k, p, q) -> dict[Partition, Fraction]:
    """Coefficient of J_mu / J_mu(0) in 2^r E_r J_lam / J_lam(0), for N variables."""
    if len(lam) > N or r > N:
        raise ValueError("need l(lam) <= N and r <= N")
    out: dict[Partition, Fraction] = {}
    for spec in term_specs(lam, r, range(1, N + 1)):
        c = finite_term_coeff(lam, spec, N, k, p, q)
        if c:
            mu = spec.target(lam)
            out[mu] = out.get(mu, 0) + c
    return {mu: c for mu, c in out.items() if c}


def finite_context(ctx: ParamContext, N: int, d: int | None = None) -> ParamContext:
    return make_context(ctx.k, ctx.p, ctx.q, finite_h(ctx.k, ctx.p, ctx.q, N), max(ctx.d, d or 0))


def van_diejen_residual(lam: Partition, r: int, N: int, ctx: ParamContext) -> SymFunc:
    """LHS - RHS of van Diejen's identity after multiplying through by J_lam(0),
    modulo the monomials that vanish in N variables."""
    fctx = finite_context(ctx, N, weight(lam) + r)
    J = jacobi(lam, fctx)
    lhs = to_monomial(elementary(r).scale(Fraction(2) ** r)) * J
    rhs = SymFunc.constant(0, MONOMIAL)
    j0 = jacobi_zero_closed(lam, fctx)
    for mu, c in van_diejen_rhs(lam, r, N, fctx.k, fctx.p, fctx.q).items():
        rhs = rhs + jacobi(mu, fctx).scale(c * j0 / jacobi_zero_closed(mu, fctx))
    return truncate_length(lhs - rhs, N)


def verify_van_diejen(lam: Partition, r: int, N: int, ctx: ParamContext) -> bool:
    return van_diejen_residual(lam, r, N, ctx).is_zero()


def lemma_zero_violations(lam: Partition, r: int, N: int, k, p, q) -> tuple[int, list[PieriTermSpec]]:
    """Check that V^- vanishes whenever M(L) >= l(lam) + 2r + 1.

    Returns (number of such terms, the ones where it did not vanish).
    """
    bound = len(lam) + 2 * r + 1
    count, bad = 0, []
    for spec in term_specs(lam, r, range(1, N + 1)):
        if spec.max_L() < bound:
            continue
        count += 1
        vm, _ = finite_term_factors(lam, spec, N, k, p, q)
        if vm != 0:
            bad.append(spec)
    return count, bad


# ---------------------------------------------------------------------------
# infinite coefficients as rational functions of h


def reconstruct_coeff_in_h(
    lam: Partition, spec: PieriTermSpec, k, p, q, *, factor: str = "product", holdout: int = 3
) -> tuple[RationalFunction, int]:
    """Rebuild a Pieri term coefficient as a rational function of h from its finite-N values.

    ``factor`` selects V^- ("minus"), V^+ ("plus") or the signed product.
    Sampling starts at N = l(lam) + 2r + 1 where h = -kN - p/2 - q.
    """
    k, p, q = Fraction(k), Fraction(p), Fraction(q)
    start = max(len(lam) + 2 * spec.r + 1, 1)

    def sample(N):
        vm, vp = finite_term_factors(lam, spec, N, k, p, q)
        val = {"minus": vm, "plus": vp, "product": (-1) ** len(spec.L) * vm * vp}[factor]
        return finite_h(k, p, q, N), val

    return reconstruct_rational(sample, start, holdout=holdout)


def infinite_term_specs(lam: Partition, r: int) -> list[PieriTermSpec]:
    """Terms of the infinite rule: M(L) below l(lam) + 2r + 1 (the rest vanish)."""
    bound = len(lam) + 2 * r + 1
    return [s for s in term_specs(lam, r, range(1, bound)) if s.max_L() < bound]


def reconstructed_pieri(lam: Partition, r: int, k, p, q) -> dict[PieriTermSpec, RationalFunction]:
    return {spec: reconstruct_coeff_in_h(lam, spec, k, p, q)[0] for spec in infinite_term_specs(lam, r)}


def verify_pieri_infinite(lam: Partition, r: int, ctx: ParamContext, coeffs=None) -> bool:
    """2^r E_r J_lam = sum of reconstructed coefficients times J_lam(0)/J_mu(0) J_mu, in the full algebra."""
    coeffs = coeffs or reconstructed_pieri(lam, r, ctx.k, ctx.p, ctx.q)
    ctx = ctx if ctx.d >= weight(lam) + r else make_context(ctx.k, ctx.p, ctx.q, ctx.h, weight(lam) + r)
    lhs = to_monomial(elementary(r).scale(Fraction(2) ** r)) * jacobi(lam, ctx)
    j0 = jacobi_zero_closed(lam, ctx)
    agg: dict[Partition, Fraction] = {}
    for spec, f in coeffs.items():
        c = f(ctx.h)
        if c:
            mu = spec.target(lam)
            agg[mu] = agg.get(mu, 0) + c
    rhs = SymFunc.constant(0, MONOMIAL)
    for mu, c in agg.items():
        if c:
            rhs = rhs + jacobi(mu, ctx).scale(c * j0 / jacobi_zero_closed(mu, ctx))
    return lhs == rhs


# ---------------------------------------------------------------------------
# r = 1 coefficients in closed form


def _check_shift(lam: Partition, i: int, s: int) -> Partition:
    mu = shift(lam, i, s)
    if mu is None:
        raise InadmissibleShiftError(f"{lam} {'+' if s > 0 else '-'} e_{i} is not a partition")
    return mu


def pieri_coeff_product(lam: Partition, i: int, s: int, k, p, q, h) -> Fraction:
    """V(lam, h, s e_i) as an explicit product over rows."""
    _check_shift(lam, i, s)
    k, p, q, h = (Fraction(a) for a in (k, p, q, h))
    l = len(lam)
    li = part(lam, i)
    out = Fraction(1)
    if s > 0:
        for j in range(1, l + 2):
            if j == i:
                continue
            lj = part(lam, j)
            out *= (li - lj + k * (i - j - 1)) * (li + lj + k * (i + j - 1) + 2 * h)
            out /= (li - lj + k * (i - j)) * (li + lj + k * (i + j) + 2 * h)
        out *= (li + k * (i - 1) + h + p / 2 + q) * (li + k * (i + l + 1) + 2 * h) * (li + k * i + h - p / 2 + HALF)
        out /= (li + k * (i - l - 2)) * (li + k * i + h) * (li + k * i + h + HALF)
    else:
        for j in range(1, l + 1):
            if j == i:
                continue
            lj = part(lam, j)
            out *= (li - lj + k * (i - j + 1)) * (li + lj + k * (i + j + 1) + 2 * h)
            out /= (li - lj + k * (i - j)) * (li + lj + k * (i + j) + 2 * h)
        out *= (li + k * (i + 1) + h - p / 2 - q) * (li + k * (i - l)) * (li + k * i + h + p / 2 - HALF)
        out /= (li + k * (i + l + 1) + 2 * h) * (li + k * i + h) * (li + k * i + h - HALF)
    return out


def pieri_coeff_boxes(lam: Partition, i: int, s: int, k, p, q, h, M: int | None = None, N: int | None = None) -> Fraction:
    """V(lam, h, s e_i) from box contents along the column of the moved box.

    The strip runs over rows 1..M of that column except row i, inside an
    M x N rectangle containing lam + e_i (default (l+1) x (l'+1)).
    """
    mu = _check_shift(lam, i, s)
    k, p, q, h = (Fraction(a) for a in (k, p, q, h))
    if M is None:
        M = len(lam) + 1
    if N is None:
        N = len(conjugate(lam)) + 1
    big = mu if s > 0 else lam
    if len(big) > M or (big and big[0] > N):
        raise ValueError("rectangle does not contain the diagram")
    c = lambda kind, nu, b, x: box_content(kind, nu, b, x, k)
    if s > 0:
        box = (i, part(lam, i) + 1)
        num = c("zero", mu, box, h + p / 2 + q) * c("zero", mu, box, k * (M + 1) + 2 * h) * c("zero", mu, box, h - p / 2 + HALF + k)
        den = c("zero", mu, box, h + k) * c("zero", mu, box, -k * M) * c("zero", mu, box, h + HALF + k)
    else:
        box = (i, part(lam, i))
        num = c("zero", lam, box, 2 * k + 1 + h - p / 2 - q) * c("zero", lam, box, 1 + k * (1 - M)) * c("zero", lam, box, k + h + p / 2 + HALF)
        den = c("zero", lam, box, 1 + k + h) * c("zero", lam, box, 1 + k * (M + 2) + 2 * h) * c("zero", lam, box, h + HALF + k)
    out = num / den
    col = box[1]
    for row in range(1, M + 1):
        if row == i:
            continue
        b = (row, col)
        if s > 0:
            out *= c("minus", lam, b, 1) * c("plus", lam, b, 2 * h - 1)
            out /= c("minus", mu, b, 1) * c("plus", mu, b, 2 * h - 1)
        else:
            # the removal strip uses -2k in the first numerator content
            out *= c("minus", mu, b, -2 * k) * c("plus", mu, b, 2 * k + 2 * h)
            out /= c("minus", lam, b, 0) * c("plus", lam, b, 2 * h)
    return out


def _bc_roots_all(N: int, k, p, q):
    """All BC_N roots with (multiplicity, multiplicity of the half root)."""
    k, p, q = Fraction(k), Fraction(p), Fraction(q)
    out = []
    for i in range(N):
        for sgn in (1, -1):
            e = [0] * N
            e[i] = sgn
            out.append((tuple(e), p, Fraction(0)))
            e2 = [0] * N
            e2[i] = 2 * sgn
            out.append((tuple(e2), q, p))
    for i in range(N):
        for j in range(N):
            if i == j:
                continue
            for s in (1, -1):
                if s == 1 and j < i:
                    continue
                for sgn in (1, -1):
                    e = [0] * N
                    e[i] = sgn
                    e[j] = sgn * s
                    out.append((tuple(e), k, Fraction(0)))
    return out


def pieri_coeff_upsilon(lam: Partition, i: int, s: int, N: int, k, p, q) -> Fraction:
    """V(lam, beta) as the product of Upsilon(lam + beta, a)/Upsilon(lam, a) over roots a with (a, beta) > 0,
    at h = -kN - p/2 - q."""
    mu = _check_shift(lam, i, s)
    if len(mu) > N or i > N:
        raise ValueError("shift leaves the N-variable range")
    k, p, q = Fraction(k), Fraction(p), Fraction(q)
    rho = [k * (N - t) + p / 2 + q for t in range(1, N + 1)]
    lv = [Fraction(part(lam, t)) for t in range(1, N + 1)]
    beta = [0] * N
    beta[i - 1] = s
    seen = set()
    out = Fraction(1)
    for alpha, m, mh in _bc_roots_all(N, k, p, q):
        if alpha in seen:
            continue
        seen.add(alpha)
        if sum(a * b for a, b in zip(alpha, beta)) <= 0:
            continue
        norm = sum(a * a for a in alpha)
        A = sum(2 * (l - r) * a for l, r, a in zip(lv, rho, alpha)) / norm
        shift_ = Fraction(sum(2 * b * a for b, a in zip(beta, alpha)), norm)
        c = m + mh / 2
        c2 = mh / 2
        out *= gamma_ratio_shift(A + shift_ - c, A - c) / gamma_ratio_shift(A + shift_ - c2, A - c2)
    return out


def locus_rank(ctx: ParamContext) -> int | None:
    """N with h = -kN - p/2 - q, if it is a positive integer."""
    t = (-ctx.p / 2 - ctx.q - ctx.h) / ctx.k
    return int(t) if t.denominator == 1 and t >= 1 else None


class FormMismatchError(ArithmeticError):
    pass


def pieri_coeff_r1(lam: Partition, sh: SignedShift, ctx: ParamContext) -> Fraction:
    """V(lam, h, +-e_i): product form, cross-checked against the box-content form
    and, on a finite locus with enough variables, the Upsilon-ratio form."""
    lam = tuple(lam)
    a = pieri_coeff_product(lam, sh.index, sh.sign, ctx.k, ctx.p, ctx.q, ctx.h)
    b = pieri_coeff_boxes(lam, sh.index, sh.sign, ctx.k, ctx.p, ctx.q, ctx.h)
    if a != b:
        raise FormMismatchError(f"product form {a} != box form {b} at {lam}, {sh}")
    N = locus_rank(ctx)
    if N is not None and N >= len(lam) + 1:
        c = pieri_coeff_upsilon(lam, sh.index, sh.sign, N, ctx.k, ctx.p, ctx.q)
        if a != c:
            raise FormMismatchError(f"product form {a} != Upsilon form {c} at {lam}, {sh}, N={N}")
    return a


def pieri_r1_residual(lam: Partition, ctx: ParamContext, mutate: SignedShift | None = None) -> SymFunc:
    """2 p_1 J_lam minus the r = 1 Pieri expansion; ``mutate`` zeroes one coefficient."""
    lam = tuple(lam)
    J = jacobi(lam, ctx)
    j0 = jacobi_zero_closed(lam, ctx)
    lhs = SymFunc.m(1).scale(2) * J
    rhs = SymFunc.constant(0, MONOMIAL)
    for sh in admissible_shifts(lam):
        V = Fraction(0) if sh == mutate else pieri_coeff_r1(lam, sh, ctx)
        nu = sh.apply(lam)
        rhs = rhs + jacobi(nu, ctx).scale(V * j0 / jacobi_zero_closed(nu, ctx)) - J.scale(V)
    return lhs - rhs


def verify_pieri_r1(lam: Partition, ctx: ParamContext, mutate: SignedShift | None = None) -> bool:
    return pieri_r1_residual(lam, ctx, mutate).is_zero()


# ---------------------------------------------------------------------------
# invariant ideals


PHI = "phi"
THETA_PHI = "thetaPhi"


def ideal_contains(lam: Partition, m: int, n: int) -> bool:
    """lam contains the (m+1) x (n+1) rectangle."""
    return part(lam, m + 1) >= n + 1


def branch_h(case: str, m: int, n: int, k, p, q) -> Fraction:
    k, p, q = Fraction(k), Fraction(p), Fraction(q)
    if case == PHI:
        return deformed_h(k, p, q, m, n)
    if case == THETA_PHI:
        return -k * (m + 2) - (n + 1) + p / 2 + q
    raise ValueError(f"unknown branch {case!r}")


def _image(f: SymFunc, m: int, n: int, ctx: ParamContext, case: str, twist: int = 1):
    if case == PHI:
        return expand_deformed(f, m, n, ctx.k)
    # phi composed with theta: p_a -> phi(p_a) + (-2)^a gamma; twist = -1 flips the shift
    return expand_deformed(f, m, n, ctx.k, twist * theta_constant(ctx.k, ctx.q))


def ideal_mismatches(m: int, n: int, case: str, k, p, q, dmax: int, *, twist: int = 1) -> list[dict]:
    """Partitions where vanishing of the image disagrees with rectangle containment."""
    h = branch_h(case, m, n, k, p, q)
    ctx = make_context(k, p, q, h, max(dmax, 1))
    bad = []
    for lam in partitions_upto(dmax):
        want = ideal_contains(lam, m, n)
        if _image(jacobi(lam, ctx), m, n, ctx, case, twist).is_zero() != want:
            bad.append({"partition": lam, "object": "jacobi", "expected_zero": want})
        if case == PHI and expand_deformed(jack_k(lam, ctx.k), m, n, ctx.k).is_zero() != want:
            bad.append({"partition": lam, "object": "jack", "expected_zero": want})
    return bad


def verify_singular_ideal(m: int, n: int, case: str, k, p, q, dmax: int) -> bool:
    return not ideal_mismatches(m, n, case, k, p, q, dmax)


def generic_vanishing(ctx: ParamContext, dmax: int, max_total: int = 3) -> list[dict]:
    """Any (lam, m, n) with m + n <= max_total whose Jacobi image vanishes at the given h."""
    hits = []
    for m in range(max_total + 1):
        for n in range(max_total + 1 - m):
            for lam in partitions_upto(dmax):
                if expand_deformed(jacobi(lam, ctx), m, n, ctx.k).is_zero():
                    hits.append({"partition": lam, "m": m, "n": n})
    return hits


def ideal_closure_failures(m: int, n: int, k, p, q, dmax: int) -> list[dict]:
    """On the first branch, p_1 J_lam stays in the span of J_nu with nu containing the rectangle."""
    h = branch_h(PHI, m, n, k, p, q)
    ctx = make_context(k, p, q, h, dmax + 1)
    bad = []
    for lam in partitions_upto(dmax):
        if not ideal_contains(lam, m, n):
            continue
        coeffs = expand_in_jacobis(SymFunc.m(1) * jacobi(lam, ctx), ctx)
        for nu, c in coeffs.items():
            if c and not ideal_contains(nu, m, n):
                bad.append({"partition": lam, "escapes_to": nu, "coeff": c})
    return bad
