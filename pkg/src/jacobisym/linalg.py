"""Exact linear algebra and univariate rational functions over Q."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


class SingularSystemError(ArithmeticError):
    pass


def _row_reduce(rows: list[list[Fraction]], ncols: int) -> list[int]:
    """In-place reduced row echelon form; returns the pivot columns."""
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        piv = rows[r][c]
        if piv != 1:
            rows[r] = [x / piv for x in rows[r]]
        prow = rows[r]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots


def solve(a: Sequence[Sequence], b: Sequence) -> list[Fraction]:
    """Solve the square system a x = b exactly."""
    n = len(a)
    rows = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(a, b)]
    if any(len(row) != n + 1 for row in rows):
        raise ValueError("solve expects a square system")
    pivots = _row_reduce(rows, n)
    if len(pivots) < n:
        raise SingularSystemError(f"rank {len(pivots)} < {n}")
    return [rows[i][n] for i in range(n)]


def nullspace(a: Sequence[Sequence], ncols: int) -> list[list[Fraction]]:
    """A basis of {x : a x = 0}."""
    rows = [[Fraction(x) for x in row] for row in a]
    pivots = _row_reduce(rows, ncols) if rows else []
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][f]
        basis.append(v)
    return basis


# ---------------------------------------------------------------------------
# univariate polynomials as coefficient lists, lowest degree first


def _trim(c: list[Fraction]) -> list[Fraction]:
    while c and c[-1] == 0:
        c.pop()
    return c


def upoly_eval(c: Sequence[Fraction], x) -> Fraction:
    acc = Fraction(0)
    for a in reversed(c):
        acc = acc * x + a
    return acc


def upoly_divmod(a: Sequence[Fraction], b: Sequence[Fraction]):
    a = _trim(list(a))
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        f = a[-1] / b[-1]
        q[shift] = f
        for i, bc in enumerate(b):
            a[i + shift] -= f * bc
        a.pop()
        _trim(a)
    return _trim(q), a


def upoly_gcd(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    a = _trim(list(a))
    b = _trim(list(b))
    while b:
        _, r = upoly_divmod(a, b)
        a, b = b, r
    if not a:
        return []
    lead = a[-1]
    return [x / lead for x in a]


class RationalFunction:
    """num(x)/den(x) in lowest terms with a monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Sequence, den: Sequence = (1,)):
        num = _trim([Fraction(x) for x in num])
        den = _trim([Fraction(x) for x in den])
        if not den:
            raise ZeroDivisionError("zero denominator")
        if num:
            g = upoly_gcd(num, den)
            if len(g) > 1:
                num, _ = upoly_divmod(num, g)
                den, _ = upoly_divmod(den, g)
        else:
            den = [Fraction(1)]
        lead = den[-1]
        self.num = tuple(x / lead for x in num)
        self.den = tuple(x / lead for x in den)

    def __call__(self, x) -> Fraction:
        d = upoly_eval(self.den, Fraction(x))
        if d == 0:
            raise ZeroDivisionError(f"pole at {x}")
        return upoly_eval(self.num, Fraction(x)) / d

    def is_zero(self) -> bool:
        return not self.num

    @property
    def degrees(self) -> tuple[int, int]:
        return (len(self.num) - 1, len(self.den) - 1)

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __repr__(self):
        return f"RationalFunction(num={list(map(str, self.num))}, den={list(map(str, self.den))})"


def fit_rational(xs: Sequence, ys: Sequence, dnum: int, dden: int) -> RationalFunction | None:
    """A rational function of degrees <= (dnum, dden) through all points, or None."""
    ncols = dnum + 1 + dden + 1
    rows = []
    for x, y in zip(xs, ys):
        x = Fraction(x)
        y = Fraction(y)
        powers = [x**i for i in range(max(dnum, dden) + 1)]
        rows.append(powers[: dnum + 1] + [-y * powers[i] for i in range(dden + 1)])
    for v in nullspace(rows, ncols):
        den = v[dnum + 1 :]
        if not any(den):
            continue
        try:
            f = RationalFunction(v[: dnum + 1], den)
        except ZeroDivisionError:
            continue
        try:
            if all(f(x) == Fraction(y) for x, y in zip(xs, ys)):
                return f
        except ZeroDivisionError:
            continue
    return None


def reconstruct_rational(sample, start: int, holdout: int = 3, max_degree: int = 64):
    """Recover a univariate rational function from an integer-indexed sampler.

    ``sample(N)`` returns ``(x_N, value)``.  Degree bounds grow 1, 2, 4, ...
    and a candidate is accepted only once it reproduces ``holdout`` extra
    samples it was not fitted on.  Returns ``(function, nodes_used)``.
    """
    cache: dict[int, tuple[Fraction, Fraction]] = {}

    def get(n):
        if n not in cache:
            cache[n] = sample(n)
        return cache[n]

    d = 1
    while d <= max_degree:
        npts = 2 * d + 1
        pts = [get(start + i) for i in range(npts)]
        f = fit_rational([p[0] for p in pts], [p[1] for p in pts], d, d)
        if f is not None:
            extra = [get(start + npts + i) for i in range(holdout)]
            try:
                if all(f(x) == y for x, y in extra):
                    return f, npts + holdout
            except ZeroDivisionError:
                pass
        d *= 2
    raise ArithmeticError(f"no rational fit up to degree {max_degree}")
