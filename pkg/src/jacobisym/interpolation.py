"""Interpolation BC polynomials: tableau formula, point values, linear-system oracle."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Callable

from .core import Partition, conjugate, contains, content_product, partitions_upto, part
from .linalg import solve
from .poly import MultiPoly


def _arm(lam: Partition, i: int, j: int) -> int:
    return part(lam, i) - j


def _leg(lam: Partition, lam_c: Partition, i: int, j: int) -> int:
    return part(lam_c, j) - i


def _b(lam: Partition, lam_c: Partition, i: int, j: int, alpha: Fraction) -> Fraction:
    a = _arm(lam, i, j)
    l = _leg(lam, lam_c, i, j)
    return (alpha * a + l + 1) / (alpha * a + l + alpha)


def psi_strip(lam: Partition, mu: Partition, alpha: Fraction) -> Fraction:
    """Jack Pieri weight psi_{lam/mu} for a horizontal strip lam/mu."""
    lam_c = conjugate(lam)
    mu_c = conjugate(mu)
    rows = {i for i in range(1, len(lam) + 1) if part(lam, i) > part(mu, i)}
    cols = {j for j in range(1, (lam[0] if lam else 0) + 1) if part(lam_c, j) > part(mu_c, j)}
    out = Fraction(1)
    for i in rows:
        for j in range(1, part(mu, i) + 1):
            if j in cols:
                continue
            out *= _b(mu, mu_c, i, j, alpha) / _b(lam, lam_c, i, j, alpha)
    return out


def horizontal_strips(mu: Partition, outer: Partition) -> list[Partition]:
    """All nu with mu <= nu <= outer and nu/mu a horizontal strip (incl. nu = mu)."""
    n = len(outer)
    res = []

    def rec(i, acc):
        if i == n:
            res.append(tuple(a for a in acc if a > 0))
            return
        lo = part(mu, i + 1)
        hi = outer[i]
        if i > 0:
            hi = min(hi, part(mu, i))  # strip: nu_{i+1} <= mu_i
            hi = min(hi, acc[-1])
        for v in range(lo, hi + 1):
            rec(i + 1, acc + [v])

    rec(0, [])
    return res


def _tableau_sum(lam: Partition, N: int, k: Fraction, unit, box_factor: Callable):
    """Sum over reverse tableaux of shape lam, entries 1..N, via strips.

    ``box_factor(t, i, j)`` gives the factor of box (i, j) holding entry t.
    """
    alpha = -1 / k
    states = {(): unit}
    for t in range(N, 0, -1):
        nxt: dict = {}
        for mu, val in states.items():
            for nu in horizontal_strips(mu, lam):
                w = psi_strip(nu, mu, alpha) if nu != mu else Fraction(1)
                term = val * w
                for i in range(1, len(nu) + 1):
                    for j in range(part(mu, i) + 1, nu[i - 1] + 1):
                        term = term * box_factor(t, i, j)
                nxt[nu] = nxt[nu] + term if nu in nxt else term
        states = nxt
    return states.get(tuple(lam))


def interpolation_comb(lam: Partition, N: int, k, h) -> MultiPoly:
    """I_lam(z_1..z_N; k, h) from the reverse-tableau formula."""
    k, h = Fraction(k), Fraction(h)
    if len(lam) > N:
        raise ValueError("l(lam) must not exceed N")
    variables = tuple(f"z{i}" for i in range(1, N + 1))
    one = MultiPoly.constant(variables, 1)
    if not lam:
        return one
    zs = [MultiPoly.variable(variables, i) for i in range(N)]

    def factor(t, i, j):
        c = j - 1 + k * (i - 1)
        # (z_t + h + kt)^2 - (c + h + kt)^2 = (z_t - c)(z_t + c + 2h + 2kt)
        return (zs[t - 1] - c) * (zs[t - 1] + (c + 2 * h + 2 * k * t))

    res = _tableau_sum(lam, N, k, one, factor)
    return res if res is not None else MultiPoly(variables)


@lru_cache(maxsize=None)
def interpolation_value(lam: Partition, mu: Partition, k, h) -> Fraction:
    """I_lam evaluated at the partition mu (stable in the number of variables)."""
    k, h = Fraction(k), Fraction(h)
    lam, mu = tuple(lam), tuple(mu)
    if not lam:
        return Fraction(1)
    if not contains(mu, lam):
        return Fraction(0)
    N = max(len(lam), len(mu))

    def factor(t, i, j):
        c = j - 1 + k * (i - 1)
        z = part(mu, t)
        return (z - c) * (z + c + 2 * h + 2 * k * t)

    res = _tableau_sum(lam, N, k, Fraction(1), factor)
    return res if res is not None else Fraction(0)


def interpolation_norm(lam: Partition, k, h) -> Fraction:
    """C^-_lam(1) C^+_lam(2h - 1)."""
    return content_product("minus", lam, 1, k) * content_product("plus", lam, 2 * Fraction(h) - 1, k)


def _shifted_power_values(r: int, z, k: Fraction, h: Fraction) -> Fraction:
    return sum(((zi + k * i + h) ** (2 * r) - (k * i + h) ** (2 * r) for i, zi in enumerate(z, start=1)), Fraction(0))


def _shifted_power_poly(r: int, variables, k: Fraction, h: Fraction) -> MultiPoly:
    out = MultiPoly(variables)
    for i in range(len(variables)):
        y = MultiPoly.variable(variables, i) + (k * (i + 1) + h)
        out = out + y ** (2 * r) - (k * (i + 1) + h) ** (2 * r)
    return out


def interpolation_oracle(lam: Partition, N: int, k, h) -> MultiPoly:
    """I_lam as the unique combination of shifted power products with the
    vanishing and normalization conditions, found by an exact linear solve."""
    k, h = Fraction(k), Fraction(h)
    if len(lam) > N:
        raise ValueError("l(lam) must not exceed N")
    d = sum(lam)
    variables = tuple(f"z{i}" for i in range(1, N + 1))
    basis = [nu for nu in partitions_upto(d) if not nu or nu[0] <= N]
    points = [mu for mu in partitions_upto(d) if len(mu) <= N]
    assert len(basis) == len(points)
    rows, rhs = [], []
    for mu in points:
        z = [Fraction(part(mu, i)) for i in range(1, N + 1)]
        g = {r: _shifted_power_values(r, z, k, h) for r in range(1, d + 1)}
        row = []
        for nu in basis:
            v = Fraction(1)
            for a in nu:
                v *= g[a]
            row.append(v)
        rows.append(row)
        rhs.append(interpolation_norm(lam, k, h) if mu == tuple(lam) else Fraction(0))
    coeffs = solve(rows, rhs)
    gens = {r: _shifted_power_poly(r, variables, k, h) for r in range(1, d + 1)}
    out = MultiPoly(variables)
    for nu, c in zip(basis, coeffs):
        if c:
            term = MultiPoly.constant(variables, c)
            for a in nu:
                term = term * gens[a]
            out = out + term
    return out
