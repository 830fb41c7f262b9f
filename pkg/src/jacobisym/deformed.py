"""Super Jacobi and super Jack polynomials over the deformed BC(m, n) root system."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .core import (
    ParamContext,
    Partition,
    bernoulli_even,
    conjugate,
    content_product,
    deformed_h,
    make_context,
    part,
    partitions_upto,
    weight,
)
from .eigenfunctions import DegenerateFactorError, bernoulli_gen, eigenvalue, gamma_ratio_shift, jack_k, jacobi, upsilon
from .interpolation import interpolation_value
from .operators import apply_deformed_L, dual_params
from .poly import MultiPoly
from .symfunc import deformed_vars, expand_deformed

HALF = Fraction(1, 2)


class FatHookError(ValueError):
    """The partition does not fit in the fat (m, n)-hook."""


class InadmissibleMoveError(ValueError):
    """chi(lam) + beta is not chi of a partition in the hook."""


# ---------------------------------------------------------------------------
# fat-hook coordinates


def in_hook(lam: Partition, m: int, n: int) -> bool:
    return part(lam, m + 1) <= n


def _require_hook(lam: Partition, m: int, n: int):
    if not in_hook(lam, m, n):
        raise FatHookError(f"{lam} is not in the fat ({m},{n})-hook")


@dataclass(frozen=True)
class FatHookCoord:
    w: tuple[Fraction, ...]
    z: tuple[Fraction, ...]

    def vector(self) -> tuple[Fraction, ...]:
        """Coordinates on (e_1..e_m, d_1..d_n)."""
        return self.w + self.z


def split(lam: Partition, n: int) -> tuple[Partition, Partition]:
    """(mu, nu): nu is the first n columns of lam and mu the rest."""
    nu = tuple(min(a, n) for a in lam)
    mu = tuple(a - n for a in lam if a > n)
    return mu, nu


def chi(lam: Partition, m: int, n: int) -> FatHookCoord:
    _require_hook(lam, m, n)
    mu, nu = split(lam, n)
    nu_c = conjugate(nu)
    return FatHookCoord(
        tuple(Fraction(part(mu, i)) for i in range(1, m + 1)),
        tuple(Fraction(part(nu_c, j)) for j in range(1, n + 1)),
    )


def chi_inverse(w, z, m: int, n: int) -> Partition | None:
    """The partition in the hook with coordinates (w, z), if there is one."""
    if any(Fraction(x).denominator != 1 or x < 0 for x in list(w) + list(z)):
        return None
    w = [int(x) for x in w]
    z = [int(x) for x in z]
    if any(z[j] < z[j + 1] for j in range(n - 1)) or any(w[i] < w[i + 1] for i in range(m - 1)):
        return None
    rows = max([len(w)] + z + [0])
    lam = []
    for i in range(1, rows + 1):
        cols = sum(1 for zj in z if zj >= i)
        extra = w[i - 1] if i <= m else 0
        if extra and cols < n:
            return None
        lam.append(cols + extra)
    lam = tuple(a for a in lam if a > 0)
    if chi(lam, m, n) != FatHookCoord(tuple(map(Fraction, w)), tuple(map(Fraction, z))):
        return None
    return lam


# ---------------------------------------------------------------------------
# the deformed root system


@dataclass(frozen=True)
class DeformedRoot:
    vec: tuple[Fraction, ...]
    species: str
    mult: Fraction

    def half_mult(self, system: "DeformedRootSystem") -> Fraction:
        half = tuple(x / 2 for x in self.vec)
        return system.mult_of(half)


class DeformedRootSystem:
    """BC(m, n) with (e, e) = 1, (d, d) = k and multiplicities tied by p = kr, 2q + 1 = k(2s + 1)."""

    def __init__(self, m: int, n: int, k, p, q):
        self.m, self.n = m, n
        self.k, self.p, self.q = Fraction(k), Fraction(p), Fraction(q)
        self.r = self.p / self.k
        self.s = ((2 * self.q + 1) / self.k - 1) / 2
        self.dim = m + n
        self._mult: dict[tuple, Fraction] = {}
        self.roots: list[DeformedRoot] = []
        self.positive: list[DeformedRoot] = []
        self._build()

    def _e(self, i):
        v = [Fraction(0)] * self.dim
        v[i] = Fraction(1)
        return v

    def _d(self, j):
        v = [Fraction(0)] * self.dim
        v[self.m + j] = Fraction(1)
        return v

    def _add(self, vec, species, mult, positive):
        for sgn in (1, -1):
            t = tuple(sgn * x for x in vec)
            root = DeformedRoot(t, species, mult)
            self.roots.append(root)
            self._mult[t] = mult
            if sgn == 1 and positive:
                self.positive.append(root)

    def _build(self):
        m, n, k = self.m, self.n, self.k
        for i in range(m):
            self._add(self._e(i), "e", self.p, True)
            self._add([2 * x for x in self._e(i)], "2e", self.q, True)
            for j in range(i + 1, m):
                self._add([a + b for a, b in zip(self._e(i), self._e(j))], "e+e", k, True)
                self._add([a - b for a, b in zip(self._e(i), self._e(j))], "e-e", k, True)
        for a in range(n):
            self._add(self._d(a), "d", self.r, True)
            self._add([2 * x for x in self._d(a)], "2d", self.s, True)
            for b in range(a + 1, n):
                self._add([x + y for x, y in zip(self._d(a), self._d(b))], "d+d", 1 / k, True)
                self._add([x - y for x, y in zip(self._d(a), self._d(b))], "d-d", 1 / k, True)
            for i in range(m):
                self._add([x + y for x, y in zip(self._d(a), self._e(i))], "d+e", Fraction(1), True)
                self._add([x - y for x, y in zip(self._d(a), self._e(i))], "d-e", Fraction(1), True)

    def mult_of(self, vec) -> Fraction:
        return self._mult.get(tuple(Fraction(x) for x in vec), Fraction(0))

    def form(self, x, y) -> Fraction:
        m = self.m
        return sum(a * b for a, b in zip(x[:m], y[:m])) + self.k * sum(a * b for a, b in zip(x[m:], y[m:]))

    def standard(self, x, y) -> Fraction:
        return sum(a * b for a, b in zip(x, y))

    def coroot_pair(self, x, alpha) -> Fraction:
        """(x, alpha^vee) with alpha^vee = 2 alpha / (alpha, alpha)."""
        return 2 * self.form(x, alpha) / self.form(alpha, alpha)

    def rho(self) -> tuple[Fraction, ...]:
        """Half the multiplicity-weighted sum of positive roots."""
        out = [Fraction(0)] * self.dim
        for root in self.positive:
            for t, x in enumerate(root.vec):
                out[t] += root.mult * x / 2
        return tuple(out)

    def rho_closed(self, h) -> tuple[Fraction, ...]:
        h, k = Fraction(h), self.k
        return tuple(-(h + self.n + k * i) for i in range(1, self.m + 1)) + tuple(
            -(h + k / 2 - HALF + j) / k for j in range(1, self.n + 1)
        )

    def unit(self, kind: str, index: int, sign: int) -> tuple[Fraction, ...]:
        """+-e_i (kind 'e') or +-d_j (kind 'd'), indices from 1."""
        v = [Fraction(0)] * self.dim
        v[(index - 1) if kind == "e" else (self.m + index - 1)] = Fraction(sign)
        return tuple(v)

    def moves(self) -> list[tuple[str, int, int]]:
        return [(kind, i, s) for kind, cnt in (("e", self.m), ("d", self.n)) for i in range(1, cnt + 1) for s in (1, -1)]


@lru_cache(maxsize=None)
def root_system(m: int, n: int, k, p, q) -> DeformedRootSystem:
    return DeformedRootSystem(m, n, k, p, q)


def dual_multiplicities_match(k, p, q) -> bool:
    """The delta multiplicities (r, s) coincide with the omega-duality parameter map."""
    R = DeformedRootSystem(1, 1, k, p, q)
    _, r, s, _ = dual_params(k, p, q, 0)
    return R.r == r and R.s == s and R.p == R.k * R.r and 2 * R.q + 1 == R.k * (2 * R.s + 1)


# ---------------------------------------------------------------------------
# super polynomials


def super_context(m: int, n: int, k, p, q, d: int = 6) -> ParamContext:
    return make_context(k, p, q, deformed_h(k, p, q, m, n), d)


def super_jacobi(lam: Partition, m: int, n: int, k, p, q, d: int | None = None) -> MultiPoly:
    lam = tuple(lam)
    _require_hook(lam, m, n)
    ctx = super_context(m, n, k, p, q, max(6, weight(lam)) if d is None else d)
    return expand_deformed(jacobi(lam, ctx), m, n, ctx.k)


def super_jack(lam: Partition, m: int, n: int, k) -> MultiPoly:
    lam = tuple(lam)
    _require_hook(lam, m, n)
    return expand_deformed(jack_k(lam, Fraction(k)), m, n, Fraction(k))


def verify_super_eigen(lam: Partition, m: int, n: int, k, p, q) -> bool:
    """The deformed operator acts on the super Jacobi polynomial by the eigenvalue of lam."""
    lam = tuple(lam)
    ctx = super_context(m, n, k, p, q, max(6, weight(lam)))
    SJ = super_jacobi(lam, m, n, k, p, q)
    return apply_deformed_L(SJ, m, n, ctx.k, ctx.p, ctx.q) == SJ.scale(eigenvalue(lam, ctx))


def a_lambda(lam: Partition, n: int, k) -> Fraction:
    k = Fraction(k)
    mu, nu = split(tuple(lam), n)
    num = content_product("minus", lam, 1, k) * content_product("minus", mu, -k, k)
    den = content_product("minus", lam, -k, k) * content_product("minus", mu, 1, k)
    if den == 0:
        raise DegenerateFactorError("zero denominator in a_lambda")
    return (-1) ** weight(nu) * Fraction(2) ** weight(lam) * num / den


def b_lambda(lam: Partition, n: int, k) -> Fraction:
    return a_lambda(lam, n, k) / Fraction(2) ** weight(lam)


def _pair_key(e: tuple, m: int) -> tuple:
    """Concatenated (nu', mu) sequence of a monomial: sorted v-exponents first."""
    return tuple(sorted(e[m:], reverse=True)) + tuple(sorted(e[:m], reverse=True))


def _leq(x: tuple, y: tuple) -> bool:
    sx = sy = 0
    for a, b in zip(x, y):
        sx += a
        sy += b
        if sx > sy:
            return False
    return True


def highest_terms(P: MultiPoly, m: int) -> list[tuple]:
    """Maximal (nu', mu) keys of P's monomials in the partial-sum order."""
    keys = {_pair_key(e, m) for e in P.terms}
    return sorted(x for x in keys if not any(y != x and _leq(x, y) for y in keys))


def leading_exponent(lam: Partition, m: int, n: int) -> tuple[int, ...]:
    mu, nu = split(tuple(lam), n)
    nu_c = conjugate(nu)
    return tuple(part(mu, i) for i in range(1, m + 1)) + tuple(part(nu_c, j) for j in range(1, n + 1))


def highest_term_report(lam: Partition, m: int, n: int, k, p, q) -> dict:
    lam = tuple(lam)
    _require_hook(lam, m, n)
    e = leading_exponent(lam, m, n)
    key = _pair_key(e, m)
    SJ = super_jacobi(lam, m, n, k, p, q)
    SP = super_jack(lam, m, n, k)
    return {
        "jacobi_top": highest_terms(SJ, m),
        "jack_top": highest_terms(SP, m),
        "expected_top": key,
        "jacobi_coeff": SJ.coefficient(e),
        "jack_coeff": SP.coefficient(e),
        "a": a_lambda(lam, n, k),
        "b": b_lambda(lam, n, k),
    }


def highest_term_check(lam: Partition, m: int, n: int, k, p, q) -> bool:
    r = highest_term_report(lam, m, n, k, p, q)
    return (
        r["jacobi_top"] == [r["expected_top"]]
        and r["jack_top"] == [r["expected_top"]]
        and r["jacobi_coeff"] == r["a"]
        and r["jack_coeff"] == r["b"]
    )


# ---------------------------------------------------------------------------
# evaluation at zero


def _spectral(lam: Partition, R: DeformedRootSystem) -> tuple[Fraction, ...]:
    x = chi(lam, R.m, R.n).vector()
    return tuple(a - b for a, b in zip(x, R.rho()))


def super_jacobi_zero_product(lam: Partition, m: int, n: int, k, p, q) -> Fraction:
    """Product of upsilon factors over the positive deformed roots."""
    lam = tuple(lam)
    R = root_system(m, n, Fraction(k), Fraction(p), Fraction(q))
    X = _spectral(lam, R)
    minus_rho = tuple(-a for a in R.rho())
    out = Fraction(1)
    for root in R.positive:
        A = R.coroot_pair(X, root.vec)
        B = R.coroot_pair(minus_rho, root.vec)
        out *= upsilon(A, B, root.mult, root.half_mult(R))
    return out


def super_jacobi_normalized_zero(lam: Partition, m: int, n: int, k, p, q) -> Fraction:
    """a_lambda^{-1} times the value at zero, from the upsilon product.

    The upsilon product normalizes by b_lambda (it reduces to the finite value at n = 0),
    so a factor 2^{-|lam|} converts it to the a_lambda normalization.
    """
    return super_jacobi_zero_product(lam, m, n, k, p, q) / Fraction(2) ** weight(tuple(lam))


def super_evaluation_ratio(lam: Partition, m: int, n: int, k, p, q) -> Fraction:
    """Upsilon product over (constant term / a_lambda); equals 2^{|lam|}."""
    return super_jacobi_zero_product(lam, m, n, k, p, q) / super_jacobi_zero_direct(lam, m, n, k, p, q)


def super_jacobi_zero_direct(lam: Partition, m: int, n: int, k, p, q) -> Fraction:
    """Constant term of the super Jacobi polynomial divided by a_lambda."""
    return super_jacobi(lam, m, n, k, p, q).constant_term() / a_lambda(lam, n, k)


# ---------------------------------------------------------------------------
# deformed Pieri rule and the Koornwinder operator


def move(lam: Partition, beta: tuple[str, int, int], m: int, n: int) -> Partition | None:
    """lam + beta through the fat-hook coordinates, or None if not admissible."""
    c = chi(lam, m, n)
    w, z = list(c.w), list(c.z)
    kind, i, s = beta
    if kind == "e":
        w[i - 1] += s
    else:
        z[i - 1] += s
    return chi_inverse(w, z, m, n)


def move_by_boxes(lam: Partition, beta: tuple[str, int, int], m: int, n: int) -> Partition | None:
    """The same move described on the diagram: e-moves touch a box right of column n
    in row i, d-moves touch a box in column j <= n."""
    kind, i, s = beta
    lam = list(lam)
    if kind == "e":
        r = i
        if s > 0:
            if part(tuple(lam), r) < n:
                return None
            col = part(tuple(lam), r) + 1
        else:
            col = part(tuple(lam), r)
            if col <= n:
                return None
    else:
        lc = conjugate(tuple(lam))
        col = i
        r = part(lc, col) + 1 if s > 0 else part(lc, col)
        if r == 0:
            return None
    seq = lam + [0] * max(0, r - len(lam))
    if s > 0:
        if seq[r - 1] != col - 1:
            return None
        seq[r - 1] += 1
    else:
        if seq[r - 1] != col:
            return None
        seq[r - 1] -= 1
    if any(seq[t] < seq[t + 1] for t in range(len(seq) - 1)):
        return None
    out = tuple(a for a in seq if a > 0)
    return out if in_hook(out, m, n) else None


class _Leading:
    """Leading behaviour c * t^order of a product of linear factors x + dx * t as t -> 0."""

    def __init__(self):
        self.coeff = Fraction(1)
        self.order = 0

    def mul(self, x, dx=0):
        if x != 0:
            self.coeff *= x
        elif dx != 0:
            self.coeff *= dx
            self.order += 1
        else:
            raise DegenerateFactorError("degenerate factor at this point")

    def div(self, x, dx=0):
        if x != 0:
            self.coeff /= x
        elif dx != 0:
            self.coeff /= dx
            self.order -= 1
        else:
            raise DegenerateFactorError("degenerate factor at this point")

    def value(self) -> Fraction:
        if self.order > 0:
            return Fraction(0)
        if self.order < 0:
            raise DegenerateFactorError("pole at the spectral point")
        return self.coeff


def koornwinder_weight_roots(z, beta, R: DeformedRootSystem, direction=None) -> Fraction:
    """W(z, beta) from the deformed root data; z is a point on (e_1..e_m, d_1..d_n).

    With ``direction`` the value is the limit of W(z + t * direction, beta) as t -> 0,
    which resolves 0/0 cancellations at special points.
    """
    kind, i, s = beta
    b = R.unit(kind, i, s)
    dz = direction if direction is not None else (Fraction(0),) * R.dim
    m_b = R.mult_of(b)
    m_2b = R.mult_of(tuple(2 * x for x in b))
    zb, dzb = R.coroot_pair(z, b), R.coroot_pair(dz, b)
    acc = _Leading()
    acc.mul(zb - m_b - 2 * m_2b, dzb)
    acc.mul(zb - m_b + 1, dzb)
    acc.div(R.form(b, b))
    acc.div(zb, dzb)
    acc.div(zb + 1, dzb)
    for root in R.roots:
        a = root.vec
        if R.standard(a, b) <= 0 or _proportional(a, b):
            continue
        za, dza = R.coroot_pair(z, a), R.coroot_pair(dz, a)
        acc.mul(za - root.mult, dza)
        acc.div(za + R.coroot_pair(b, a) - 1, dza)
    return acc.value()


def _proportional(a, b) -> bool:
    nz = [(x, y) for x, y in zip(a, b) if x or y]
    if any(x == 0 or y == 0 for x, y in nz):
        return False
    return len({x / y for x, y in nz}) == 1


def koornwinder_weight_explicit(z, beta, R: DeformedRootSystem) -> Fraction:
    """W(z, beta) from the explicit W^{+-} factors in x (e-block) and y (d-block)."""
    m, n, k, p, q, r, s_ = R.m, R.n, R.k, R.p, R.q, R.r, R.s
    x = list(z[:m])
    y = list(z[m:])
    kind, i, sg = beta
    one = Fraction(1)
    out = Fraction(1)
    if kind == "e":
        xi = x[i - 1]
        out *= (one - sg * (p + 2 * q) / (2 * xi)) * (one - sg * p / (2 * xi + sg))
        for j in range(m):
            if j != i - 1:
                out *= (one - sg * k / (xi - x[j])) * (one - sg * k / (xi + x[j]))
        c = (1 - k) / 2
        for yj in y:
            out *= (one - sg / (xi + k * yj + sg * c)) * (one - sg / (xi - k * yj + sg * c))
    else:
        yj = y[i - 1]
        ki = 1 / k
        out = ki * (one - sg * (r + 2 * s_) / (2 * yj)) * (one - sg * r / (2 * yj + sg))
        for t in range(n):
            if t != i - 1:
                out *= (one - sg * ki / (yj - y[t])) * (one - sg * ki / (yj + y[t]))
        c = (1 - ki) / 2
        for xi in x:
            out *= (one - sg / (yj + ki * xi + sg * c)) * (one - sg / (yj - ki * xi + sg * c))
    return out


class FormMismatchError(ArithmeticError):
    pass


def koornwinder_weight(z, beta, m: int, n: int, k, p, q) -> Fraction:
    """W(z, beta), computed both ways; the two must agree."""
    R = root_system(m, n, Fraction(k), Fraction(p), Fraction(q))
    z = tuple(Fraction(t) for t in z)
    a = koornwinder_weight_roots(z, beta, R)
    b = koornwinder_weight_explicit(z, beta, R)
    if a != b:
        raise FormMismatchError(f"W forms disagree at z={z}, beta={beta}: {a} vs {b}")
    return a


def deformed_pieri_coeff_upsilon(lam: Partition, beta, m: int, n: int, k, p, q) -> Fraction:
    """V(lam, beta) as (beta, beta)^{-1} times the upsilon ratio over roots with <alpha, beta> > 0.

    Both spectral points are moved by t * beta and t -> 0 is taken, as in the root form.
    """
    lam = tuple(lam)
    nu = move(lam, beta, m, n)
    if nu is None:
        raise InadmissibleMoveError(f"{beta} is not admissible for {lam}")
    R = root_system(m, n, Fraction(k), Fraction(p), Fraction(q))
    b = R.unit(*beta)
    X = _spectral(lam, R)
    Y = _spectral(nu, R)
    acc = _Leading()
    acc.div(R.form(b, b))
    for root in R.roots:
        if R.standard(root.vec, b) <= 0:
            continue
        _upsilon_ratio_into(
            acc,
            R.coroot_pair(Y, root.vec),
            R.coroot_pair(X, root.vec),
            R.coroot_pair(b, root.vec),
            root.mult,
            root.half_mult(R),
        )
    return acc.value()


def _shift_into(acc: _Leading, a: Fraction, b: Fraction, d: Fraction, invert: bool):
    """Multiply (or divide) acc by Gamma(a + d t)/Gamma(b + d t) for an integer a - b."""
    t = a - b
    if t.denominator != 1:
        raise DegenerateFactorError(f"non-integer gamma offset {t}")
    t = int(t)
    lo, steps, up = (b, t, True) if t >= 0 else (a, -t, False)
    for i in range(steps):
        if up != invert:
            acc.mul(lo + i, d)
        else:
            acc.div(lo + i, d)


def _upsilon_ratio_into(acc: _Leading, A1, A0, dA, m_alpha: Fraction, m_half: Fraction):
    """Upsilon at A1 over upsilon at A0 (common B, which cancels); both points move by dA * t."""
    c = m_alpha + m_half / 2
    c2 = m_half / 2
    if (A1 - A0).denominator == 1:
        _shift_into(acc, A1 - c, A0 - c, dA, invert=False)
        _shift_into(acc, A1 - c2, A0 - c2, dA, invert=True)
    elif m_alpha.denominator == 1:
        _shift_into(acc, A0 - c2, A0 - c, dA, invert=False)
        _shift_into(acc, A1 - c2, A1 - c, dA, invert=True)
    else:
        raise DegenerateFactorError("gamma ratio does not telescope")


def deformed_pieri_coeff(lam: Partition, beta, m: int, n: int, k, p, q) -> Fraction:
    """V(lam, beta) = W(chi(lam) - rho, beta), cross-checked against the upsilon-ratio form.

    Where a factor of W vanishes against a pole at the spectral point the value is the
    limit along beta.
    """
    lam = tuple(lam)
    if move(lam, beta, m, n) is None:
        raise InadmissibleMoveError(f"{beta} is not admissible for {lam}")
    R = root_system(m, n, Fraction(k), Fraction(p), Fraction(q))
    a = koornwinder_weight_roots(_spectral(lam, R), beta, R, direction=R.unit(*beta))
    b = deformed_pieri_coeff_upsilon(lam, beta, m, n, k, p, q)
    if a != b:
        raise FormMismatchError(f"Pieri forms disagree at {lam}, {beta}: {a} vs {b}")
    return a


def admissible_moves(lam: Partition, m: int, n: int) -> list[tuple[tuple[str, int, int], Partition]]:
    R = root_system(m, n, Fraction(1), Fraction(0), Fraction(0))
    out = []
    for beta in R.moves():
        nu = move(lam, beta, m, n)
        if nu is not None:
            out.append((beta, nu))
    return out


def deformed_pieri_residual(lam: Partition, m: int, n: int, k, p, q) -> MultiPoly:
    """LHS - RHS of the deformed Pieri identity, as a polynomial in u, v."""
    lam = tuple(lam)
    _require_hook(lam, m, n)
    k, p, q = Fraction(k), Fraction(p), Fraction(q)
    d = max(6, weight(lam) + 1)
    variables = deformed_vars(m, n)
    SJ = super_jacobi(lam, m, n, k, p, q, d)
    c0 = SJ.constant_term()
    norm = SJ.scale(1 / c0)
    e1 = MultiPoly.power_sum(variables, range(m), 1) + MultiPoly.power_sum(variables, range(m, m + n), 1, scale=1 / k)
    lhs = (e1 * norm).scale(2)
    rhs = MultiPoly(variables)
    for beta, nu in admissible_moves(lam, m, n):
        V = deformed_pieri_coeff(lam, beta, m, n, k, p, q)
        S = super_jacobi(nu, m, n, k, p, q, d)
        rhs = rhs + (S.scale(1 / S.constant_term()) - norm).scale(V)
    return lhs - rhs


def verify_deformed_pieri(lam: Partition, m: int, n: int, k, p, q) -> bool:
    return deformed_pieri_residual(lam, m, n, k, p, q).is_zero()


def koornwinder_apply(g, lam: Partition, m: int, n: int, k, p, q) -> Fraction:
    """sum over admissible beta of W(chi(lam) - rho, beta) (g(lam + beta) - g(lam))."""
    lam = tuple(lam)
    R = root_system(m, n, Fraction(k), Fraction(p), Fraction(q))
    X = _spectral(lam, R)
    base = g(lam)
    return sum(
        (
            koornwinder_weight_roots(X, beta, R, direction=R.unit(*beta)) * (g(nu) - base)
            for beta, nu in admissible_moves(lam, m, n)
        ),
        Fraction(0),
    )


def bispectral_check(lam: Partition, m: int, n: int, k, p, q, u0, v0) -> bool:
    """The Koornwinder operator in lam reproduces multiplication by 2 p_1(u0, v0)."""
    k = Fraction(k)
    d = max(6, weight(lam) + 1)
    point = [Fraction(x) for x in list(u0) + list(v0)]

    def g(nu):
        S = super_jacobi(nu, m, n, k, p, q, d)
        return S.evaluate(point) / S.constant_term()

    e1 = sum(map(Fraction, u0), Fraction(0)) + sum(map(Fraction, v0), Fraction(0)) / k
    return koornwinder_apply(g, lam, m, n, k, p, q) == 2 * e1 * g(tuple(lam))


# ---------------------------------------------------------------------------
# super binomial formula and interpolation values


def deformed_interpolation_value(lam: Partition, mu: Partition, m: int, n: int, k, h) -> Fraction:
    _require_hook(lam, m, n)
    _require_hook(mu, m, n)
    return interpolation_value(tuple(lam), tuple(mu), Fraction(k), Fraction(h))


def deformed_interpolation_norm(lam: Partition, k, h) -> Fraction:
    k, h = Fraction(k), Fraction(h)
    lc = conjugate(lam)
    out = Fraction(1)
    for i, row in enumerate(lam, start=1):
        for j in range(1, row + 1):
            out *= (1 + row - j - k * (lc[j - 1] - i)) * (2 * h - 1 + row + j + k * (lc[j - 1] + i))
    return out


def super_binomial_residual(lam: Partition, m: int, n: int, k, p, q) -> MultiPoly:
    """a_lam^{-1} SJ_lam minus its expansion in normalized super Jacks."""
    lam = tuple(lam)
    _require_hook(lam, m, n)
    k, p, q = Fraction(k), Fraction(p), Fraction(q)
    h = deformed_h(k, p, q, m, n)
    lhs = super_jacobi(lam, m, n, k, p, q).scale(1 / a_lambda(lam, n, k))
    jl = super_jacobi_normalized_zero(lam, m, n, k, p, q)
    rhs = MultiPoly(deformed_vars(m, n))
    for mu in partitions_upto(weight(lam)):
        if not in_hook(mu, m, n) or not all(part(lam, i) >= a for i, a in enumerate(mu, start=1)):
            continue
        coeff = jl * deformed_interpolation_value(mu, lam, m, n, k, h) / (
            super_jacobi_normalized_zero(mu, m, n, k, p, q) * deformed_interpolation_value(mu, mu, m, n, k, h)
        )
        rhs = rhs + super_jack(mu, m, n, k).scale(coeff / b_lambda(mu, n, k))
    return lhs - rhs


# ---------------------------------------------------------------------------
# Bernoulli generators on the hook


def bernoulli_gen_deformed(l: int, pt: FatHookCoord, m: int, n: int, k, h) -> Fraction:
    k, h = Fraction(k), Fraction(h)
    out = Fraction(0)
    for i, wi in enumerate(pt.w, start=1):
        base = h + n + k * i + HALF
        out += bernoulli_even(l, wi + base) - bernoulli_even(l, base)
    scale = k ** (2 * l - 1)
    for j, zj in enumerate(pt.z, start=1):
        base = h / k + Fraction(j) / k - 1 / (2 * k) + 1
        out += scale * (bernoulli_even(l, zj + base) - bernoulli_even(l, base))
    return out


def restriction_matches(l: int, lam: Partition, m: int, n: int, ctx: ParamContext) -> bool:
    return bernoulli_gen_deformed(l, chi(lam, m, n), m, n, ctx.k, ctx.h) == bernoulli_gen(l, lam, ctx)


def quasi_invariance_gap(l: int, w, z, i: int, j: int, m: int, n: int, k, h) -> Fraction:
    """f(w - e_i, z + d_j) - f(w, z) with w_i moved onto the hyperplane w_i + k(i-1) = k z_j + j - n."""
    k = Fraction(k)
    w = [Fraction(x) for x in w]
    z = [Fraction(x) for x in z]
    w[i - 1] = k * z[j - 1] + j - n - k * (i - 1)
    w2 = list(w)
    z2 = list(z)
    w2[i - 1] -= 1
    z2[j - 1] += 1
    f = lambda a, b: bernoulli_gen_deformed(l, FatHookCoord(tuple(a), tuple(b)), m, n, k, h)
    return f(w2, z2) - f(w, z)
