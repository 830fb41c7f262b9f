"""The ring of symmetric functions in the power-sum and monomial bases.

Elements are :class:`SymFunc` values: a basis tag (``"p"`` or ``"m"``) and a
sparse dict from partitions to Fractions.  Base change is exact and cached
per partition.  The evaluation maps send ``p_a`` to finite power sums,
optionally deformed by ``k`` (and shifted for the theta-twisted variant).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .core import (
    ParamContext,
    Partition,
    format_rational,
    multiplicities,
    partitions_of,
    sort_key,
    weight,
)
from .poly import MultiPoly

POWER = "p"
MONOMIAL = "m"


class BasisMismatchError(ValueError):
    pass


class SymFunc:
    __slots__ = ("basis", "terms")

    def __init__(self, basis: str, terms: Mapping[Partition, object] | None = None):
        if basis not in (POWER, MONOMIAL):
            raise ValueError(f"unknown basis {basis!r}")
        self.basis = basis
        clean = {}
        for lam, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                clean[tuple(lam)] = c
        self.terms = clean

    @classmethod
    def _raw(cls, basis: str, terms: dict) -> "SymFunc":
        obj = cls.__new__(cls)
        obj.basis = basis
        obj.terms = terms
        return obj

    @classmethod
    def constant(cls, c, basis: str = POWER) -> "SymFunc":
        return cls(basis, {(): c})

    @classmethod
    def p(cls, *parts: int) -> "SymFunc":
        return cls(POWER, {tuple(sorted(parts, reverse=True)): 1})

    @classmethod
    def m(cls, *parts: int) -> "SymFunc":
        return cls(MONOMIAL, {tuple(sorted(parts, reverse=True)): 1})

    # queries ------------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, lam: Partition) -> Fraction:
        return self.terms.get(tuple(lam), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.terms.get((), Fraction(0))

    def degree(self) -> int:
        return max((weight(lam) for lam in self.terms), default=-1)

    def support(self) -> list[Partition]:
        return sorted(self.terms, key=sort_key)

    def __eq__(self, other):
        if not isinstance(other, SymFunc):
            return NotImplemented
        if self.basis != other.basis:
            return to_monomial(self).terms == to_monomial(other).terms
        return self.terms == other.terms

    def __hash__(self):
        return hash((self.basis, frozenset(self.terms.items())))

    def __repr__(self):
        body = " + ".join(
            f"{format_rational(c)}*{self.basis}{list(lam)}" for lam, c in self.sorted_terms()
        )
        return f"SymFunc({body or '0'})"

    def sorted_terms(self) -> list[tuple[Partition, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: sort_key(t[0]))

    # ring operations ------------------------------------------------------------

    def _same(self, other: "SymFunc"):
        if self.basis != other.basis:
            raise BasisMismatchError(f"cannot combine {self.basis} and {other.basis} bases")

    def __add__(self, other):
        if not isinstance(other, SymFunc):
            other = SymFunc.constant(other, self.basis)
        self._same(other)
        out = dict(self.terms)
        for lam, c in other.terms.items():
            v = out.get(lam, 0) + c
            if v:
                out[lam] = v
            else:
                out.pop(lam, None)
        return SymFunc._raw(self.basis, out)

    __radd__ = __add__

    def __neg__(self):
        return SymFunc._raw(self.basis, {lam: -c for lam, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, SymFunc):
            other = SymFunc.constant(other, self.basis)
        return self + (-other)

    def scale(self, c) -> "SymFunc":
        c = Fraction(c)
        if not c:
            return SymFunc._raw(self.basis, {})
        return SymFunc._raw(self.basis, {lam: v * c for lam, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, SymFunc):
            return self.scale(other)
        self._same(other)
        if self.basis == MONOMIAL:
            return to_monomial(to_power(self) * to_power(other))
        out: dict = {}
        for l1, c1 in self.terms.items():
            for l2, c2 in other.terms.items():
                lam = merge(l1, l2)
                v = out.get(lam, 0) + c1 * c2
                if v:
                    out[lam] = v
                else:
                    del out[lam]
        return SymFunc._raw(POWER, out)

    def __rmul__(self, other):
        return self.scale(other)

    def to_json(self) -> dict:
        return {
            "basis": self.basis,
            "terms": [
                {"partition": list(lam), "coeff": format_rational(c)} for lam, c in self.sorted_terms()
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "SymFunc":
        from .core import make_partition, parse_rational

        terms: dict = {}
        for t in data["terms"]:
            lam = make_partition(t["partition"])
            terms[lam] = terms.get(lam, Fraction(0)) + parse_rational(str(t["coeff"]))
        return cls(data["basis"], terms)


def merge(l1: Partition, l2: Partition) -> Partition:
    return tuple(sorted(l1 + l2, reverse=True))


# ---------------------------------------------------------------------------
# base change


def p_times_m(r: int, mu: Partition) -> dict[Partition, int]:
    """Monomial expansion of p_r * m_mu."""
    out: dict[Partition, int] = {}
    for a in set(mu) | {0}:
        parts = list(mu)
        if a:
            parts.remove(a)
        parts.append(a + r)
        nu = tuple(sorted(parts, reverse=True))
        out[nu] = out.get(nu, 0) + sum(1 for b in nu if b == a + r)
    return out


@lru_cache(maxsize=None)
def power_in_monomials(lam: Partition) -> tuple[tuple[Partition, int], ...]:
    """p_lam = sum_mu R[lam, mu] m_mu (integer coefficients)."""
    if not lam:
        return (((), 1),)
    prev = dict(power_in_monomials(lam[1:]))
    out: dict[Partition, int] = {}
    r = lam[0]
    for mu, c in prev.items():
        for nu, d in p_times_m(r, mu).items():
            out[nu] = out.get(nu, 0) + c * d
    return tuple(sorted(out.items(), key=lambda t: sort_key(t[0])))


@lru_cache(maxsize=None)
def _monomials_in_powers_degree(n: int) -> dict[Partition, dict[Partition, Fraction]]:
    table: dict[Partition, dict[Partition, Fraction]] = {}
    for lam in partitions_of(n):  # decreasing lex: dominating shapes come first
        row = dict(power_in_monomials(lam))
        lead = Fraction(row.pop(lam))
        expansion: dict[Partition, Fraction] = {lam: Fraction(1)}
        for mu, c in row.items():
            for nu, d in table[mu].items():
                expansion[nu] = expansion.get(nu, Fraction(0)) - c * d
        table[lam] = {nu: c / lead for nu, c in expansion.items() if c}
    return table


def monomial_in_powers(lam: Partition) -> dict[Partition, Fraction]:
    return _monomials_in_powers_degree(weight(lam))[tuple(lam)]


def to_power(f: SymFunc) -> SymFunc:
    if f.basis == POWER:
        return f
    out: dict = {}
    for lam, c in f.terms.items():
        for nu, d in monomial_in_powers(lam).items():
            out[nu] = out.get(nu, 0) + c * d
    return SymFunc(POWER, out)


def to_monomial(f: SymFunc) -> SymFunc:
    if f.basis == MONOMIAL:
        return f
    out: dict = {}
    for lam, c in f.terms.items():
        for nu, d in power_in_monomials(lam):
            out[nu] = out.get(nu, 0) + c * d
    return SymFunc(MONOMIAL, out)


def elementary(r: int) -> SymFunc:
    """e_r = m_(1^r)."""
    return SymFunc(MONOMIAL, {(1,) * r: 1})


# ---------------------------------------------------------------------------
# evaluation maps


def _eval_power(f: SymFunc, pvals) -> Fraction:
    total = Fraction(0)
    for lam, c in to_power(f).terms.items():
        t = c
        for a in lam:
            t *= pvals(a)
        total += t
    return total


def eval_finite(f: SymFunc, u: Sequence) -> Fraction:
    pts = [Fraction(x) for x in u]
    cache: dict[int, Fraction] = {}

    def pv(a):
        if a not in cache:
            cache[a] = sum((x**a for x in pts), Fraction(0))
        return cache[a]

    return _eval_power(f, pv)


def _deformed_power(u: Sequence, v: Sequence, k: Fraction, shift=None):
    pts_u = [Fraction(x) for x in u]
    pts_v = [Fraction(x) for x in v]
    cache: dict[int, Fraction] = {}

    def pv(a):
        if a not in cache:
            val = sum((x**a for x in pts_u), Fraction(0)) + sum((y**a for y in pts_v), Fraction(0)) / k
            if shift is not None:
                val += shift(a)
            cache[a] = val
        return cache[a]

    return pv


def eval_deformed(f: SymFunc, u: Sequence, v: Sequence, k) -> Fraction:
    k = Fraction(k)
    if k == 0:
        raise ZeroDivisionError("k must be nonzero")
    return _eval_power(f, _deformed_power(u, v, k))


def theta_constant(k, q) -> Fraction:
    """gamma with theta(p_a) = p_a + (-2)^a gamma."""
    k = Fraction(k)
    if k == 0:
        raise ZeroDivisionError("k must be nonzero")
    return (2 * k + 1 - 2 * Fraction(q)) / (2 * k)


def eval_deformed_theta(f: SymFunc, u: Sequence, v: Sequence, ctx: ParamContext) -> Fraction:
    gamma = -theta_constant(ctx.k, ctx.q)
    return _eval_power(f, _deformed_power(u, v, ctx.k, lambda a: (-2) ** a * gamma))


# ---------------------------------------------------------------------------
# automorphisms


def omega(f: SymFunc, k) -> SymFunc:
    k = Fraction(k)
    if k == 0:
        raise ZeroDivisionError("k must be nonzero")
    g = to_power(f)
    return SymFunc(POWER, {lam: c / k ** len(lam) for lam, c in g.terms.items()})


def shift_powers(f: SymFunc, gamma) -> SymFunc:
    """The substitution p_a -> p_a + (-2)^a gamma, expanded."""
    gamma = Fraction(gamma)
    out: dict = {}
    for lam, c in to_power(f).terms.items():
        n = len(lam)
        for size in range(n + 1):
            for keep in combinations(range(n), size):
                kept = tuple(lam[i] for i in keep)
                const = c
                for i in range(n):
                    if i not in keep:
                        const *= (-2) ** lam[i] * gamma
                out[kept] = out.get(kept, 0) + const
    return SymFunc(POWER, out)


def theta(f: SymFunc, ctx: ParamContext) -> SymFunc:
    return shift_powers(f, theta_constant(ctx.k, ctx.q))


def theta_inverse(f: SymFunc, ctx: ParamContext) -> SymFunc:
    return shift_powers(f, -theta_constant(ctx.k, ctx.q))


# ---------------------------------------------------------------------------
# polynomial images


def finite_vars(N: int) -> tuple[str, ...]:
    return tuple(f"u{i}" for i in range(1, N + 1))


def deformed_vars(m: int, n: int) -> tuple[str, ...]:
    return tuple(f"u{i}" for i in range(1, m + 1)) + tuple(f"v{j}" for j in range(1, n + 1))


class _PowerImages:
    """Memoized images of p_lam under a fixed evaluation into a polynomial ring."""

    def __init__(self, variables, generator):
        self.vars = variables
        self.generator = generator
        self.products: dict[Partition, MultiPoly] = {(): MultiPoly.constant(variables, 1)}
        self.gens: dict[int, MultiPoly] = {}

    def gen(self, a: int) -> MultiPoly:
        if a not in self.gens:
            self.gens[a] = self.generator(a)
        return self.gens[a]

    def image(self, lam: Partition) -> MultiPoly:
        if lam not in self.products:
            self.products[lam] = self.gen(lam[0]) * self.image(lam[1:])
        return self.products[lam]

    def apply(self, f: SymFunc) -> MultiPoly:
        terms: dict = {}
        for lam, c in to_power(f).terms.items():
            for e, d in self.image(lam).terms.items():
                v = terms.get(e, 0) + c * d
                if v:
                    terms[e] = v
                else:
                    terms.pop(e, None)
        return MultiPoly._raw(self.vars, terms)


@lru_cache(maxsize=64)
def _finite_images(N: int) -> _PowerImages:
    variables = finite_vars(N)
    return _PowerImages(variables, lambda a: MultiPoly.power_sum(variables, range(N), a))


@lru_cache(maxsize=256)
def _deformed_images(m: int, n: int, k: Fraction, gamma: Fraction) -> _PowerImages:
    variables = deformed_vars(m, n)

    def gen(a):
        poly = MultiPoly.power_sum(variables, range(m), a) + MultiPoly.power_sum(
            variables, range(m, m + n), a, scale=1 / k
        )
        if gamma:
            poly = poly + (-2) ** a * gamma
        return poly

    return _PowerImages(variables, gen)


def expand_finite(f: SymFunc, N: int) -> MultiPoly:
    if N < 0:
        raise ValueError("N must be nonnegative")
    return _finite_images(N).apply(f)


def expand_deformed(f: SymFunc, m: int, n: int, k, gamma=0) -> MultiPoly:
    """phi_{m,n}(f); a nonzero ``gamma`` adds (-2)^a gamma to every p_a."""
    k = Fraction(k)
    if k == 0:
        raise ZeroDivisionError("k must be nonzero")
    return _deformed_images(m, n, k, Fraction(gamma)).apply(f)


def expand_deformed_theta(f: SymFunc, m: int, n: int, ctx: ParamContext) -> MultiPoly:
    return expand_deformed(f, m, n, ctx.k, -theta_constant(ctx.k, ctx.q))


def truncate_length(f: SymFunc, N: int) -> SymFunc:
    """Drop monomials m_mu with more than N parts (the kernel of phi_N)."""
    g = to_monomial(f)
    return SymFunc(MONOMIAL, {lam: c for lam, c in g.terms.items() if len(lam) <= N})


def sum_of(items: Iterable[SymFunc], basis: str = MONOMIAL) -> SymFunc:
    out = SymFunc(basis)
    for it in items:
        out = out + it
    return out
