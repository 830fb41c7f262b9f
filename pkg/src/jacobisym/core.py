"""Scalars, partitions, box contents and parameter contexts.

Every scalar is an exact :class:`fractions.Fraction`.  Partitions are plain
weakly decreasing tuples of positive ints; ``()`` is the empty partition.
Boxes are 1-based ``(row, column)`` pairs.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Iterator, Sequence

Rational = Fraction
Partition = tuple  # tuple[int, ...], weakly decreasing, positive parts
Box = tuple  # (i, j), 1-based


class CertificationError(ValueError):
    """Raised when parameters fail the genericity/admissibility scan."""


# ---------------------------------------------------------------------------
# text formats


def parse_rational(text: str) -> Fraction:
    s = text.strip()
    if not s:
        raise ValueError("empty rational")
    num, sep, den = s.partition("/")
    try:
        n = int(num)
        d = int(den) if sep else 1
    except ValueError as exc:
        raise ValueError(f"malformed rational {text!r}") from exc
    if sep and (d <= 0 or den.strip().startswith(("+", "-"))):
        raise ValueError(f"denominator must be a positive integer: {text!r}")
    return Fraction(n, d)


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_partition(text: str) -> Partition:
    s = text.strip()
    if not s:
        return ()
    try:
        parts = tuple(int(t) for t in s.split(","))
    except ValueError as exc:
        raise ValueError(f"malformed partition {text!r}") from exc
    if any(a <= 0 for a in parts):
        raise ValueError(f"parts must be positive: {text!r}")
    return make_partition(parts)


def format_partition(lam: Partition) -> str:
    return ",".join(str(a) for a in lam)


def make_partition(parts: Iterable[int]) -> Partition:
    """Validate ``parts`` as a partition, dropping trailing zeros."""
    lam = tuple(parts)
    while lam and lam[-1] == 0:
        lam = lam[:-1]
    if any(a <= 0 for a in lam):
        raise ValueError(f"not a partition: {lam}")
    if any(lam[i] < lam[i + 1] for i in range(len(lam) - 1)):
        raise ValueError(f"parts must be weakly decreasing: {lam}")
    return lam


# ---------------------------------------------------------------------------
# partition combinatorics


def weight(lam: Partition) -> int:
    return sum(lam)


def conjugate(lam: Partition) -> Partition:
    if not lam:
        return ()
    return tuple(sum(1 for a in lam if a >= j) for j in range(1, lam[0] + 1))


def n_stat(lam: Partition) -> Fraction:
    """n(lambda) = sum (i-1) lambda_i."""
    return Fraction(sum(i * a for i, a in enumerate(lam)))


def part(lam: Partition, i: int) -> int:
    """lambda_i with 1-based i, zero beyond the length."""
    return lam[i - 1] if 1 <= i <= len(lam) else 0


def boxes(lam: Partition) -> Iterator[Box]:
    for i, a in enumerate(lam, start=1):
        for j in range(1, a + 1):
            yield (i, j)


def contains(lam: Partition, mu: Partition) -> bool:
    """True iff the diagram of ``mu`` lies inside the diagram of ``lam``."""
    return len(mu) <= len(lam) and all(m <= a for m, a in zip(mu, lam))


def dominates(lam: Partition, mu: Partition) -> bool:
    """lam >= mu in dominance order (same weight assumed by callers)."""
    s = t = 0
    for i in range(max(len(lam), len(mu))):
        s += part(lam, i + 1)
        t += part(mu, i + 1)
        if t > s:
            return False
    return True


def precedes(mu: Partition, lam: Partition) -> bool:
    """mu strictly below lam in the triangular order (weight, then dominance)."""
    if mu == lam:
        return False
    if weight(mu) != weight(lam):
        return weight(mu) < weight(lam)
    return dominates(lam, mu)


def shift(lam: Partition, i: int, sign: int) -> Partition | None:
    """lam +/- e_i, or None when the result is not a partition."""
    parts = list(lam) + [0]
    if i < 1 or i > len(parts):
        return None
    parts[i - 1] += sign
    if parts[i - 1] < 0:
        return None
    if i >= 2 and parts[i - 1] > parts[i - 2]:
        return None
    if i < len(parts) and parts[i - 1] < parts[i]:
        return None
    return tuple(a for a in parts if a > 0)


@lru_cache(maxsize=None)
def partitions_of(n: int, max_part: int | None = None) -> tuple[Partition, ...]:
    """Partitions of n in decreasing lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions_of(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def partitions_upto(d: int) -> list[Partition]:
    """All partitions of weight <= d, ordered by weight then reverse-lex."""
    return [lam for n in range(d + 1) for lam in partitions_of(n)]


def sort_key(lam: Partition) -> tuple:
    """Key for the deterministic (weight, reverse-lexicographic) order."""
    return (weight(lam), tuple(-a for a in lam))


def multiplicities(lam: Partition) -> dict[int, int]:
    out: dict[int, int] = {}
    for a in lam:
        out[a] = out.get(a, 0) + 1
    return out


# ---------------------------------------------------------------------------
# box contents


def box_content(kind: str, lam: Partition, b: Box, x, k) -> Fraction:
    """Single-box content c^+, c^- or c^0 of ``b`` relative to ``lam``.

    The box may lie outside the diagram; arm and leg then go negative.
    """
    i, j = b
    x = Fraction(x)
    k = Fraction(k)
    if kind == "zero":
        return j - 1 + k * (i - 1) + x
    lam_i = part(lam, i)
    lam_c_j = part(conjugate(lam), j)
    if kind == "plus":
        return lam_i + j + k * (lam_c_j + i) + x
    if kind == "minus":
        return lam_i - j - k * (lam_c_j - i) + x
    raise ValueError(f"unknown content kind {kind!r}")


def content_product(kind: str, lam: Partition, x, k) -> Fraction:
    """C^+_lam(x), C^-_lam(x) or C^0_lam(x): product of box contents over lam."""
    x = Fraction(x)
    k = Fraction(k)
    conj = conjugate(lam)
    out = Fraction(1)
    for i, a in enumerate(lam, start=1):
        for j in range(1, a + 1):
            if kind == "zero":
                out *= j - 1 + k * (i - 1) + x
            elif kind == "plus":
                out *= a + j + k * (conj[j - 1] + i) + x
            elif kind == "minus":
                out *= a - j - k * (conj[j - 1] - i) + x
            else:
                raise ValueError(f"unknown content kind {kind!r}")
    return out


# ---------------------------------------------------------------------------
# Bernoulli polynomials


@lru_cache(maxsize=None)
def bernoulli_number(n: int) -> Fraction:
    """B_n with B_1 = -1/2."""
    if n == 0:
        return Fraction(1)
    return -sum(comb(n + 1, j) * bernoulli_number(j) for j in range(n)) / Fraction(n + 1)


def bernoulli_poly(n: int, x) -> Fraction:
    x = Fraction(x)
    return sum((comb(n, j) * bernoulli_number(j) * x ** (n - j) for j in range(n + 1)), Fraction(0))


def bernoulli_even(l: int, x) -> Fraction:
    """The even Bernoulli polynomial B_{2l}(x)."""
    if l < 1:
        raise ValueError("l must be positive")
    return bernoulli_poly(2 * l, x)


# ---------------------------------------------------------------------------
# parameter contexts


def eigenvalue_of(lam: Partition, k, h) -> Fraction:
    return 2 * n_stat(conjugate(lam)) + 2 * Fraction(k) * n_stat(lam) + weight(lam) * (2 * Fraction(h) + 2 * Fraction(k) + 1)


@dataclass(frozen=True)
class ParamContext:
    """Exact parameters (k, p, q, h) with the derived p0 and a certificate.

    ``p0 = -(h + p/2 + q)/k`` stands in for the number of variables.
    ``certified`` is set only by :func:`make_context` after a full scan up
    to degree ``d``.
    """

    k: Fraction
    p: Fraction
    q: Fraction
    h: Fraction
    d: int = 6
    certified: bool = False
    p0: Fraction = field(init=False, compare=False)

    def __post_init__(self):
        for name in ("k", "p", "q", "h"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.k == 0:
            raise CertificationError("k must be nonzero")
        object.__setattr__(self, "p0", -(self.h + self.p / 2 + self.q) / self.k)

    def with_params(self, **changes) -> "ParamContext":
        """A freshly certified context with some parameters replaced."""
        vals = {"k": self.k, "p": self.p, "q": self.q, "h": self.h, "d": self.d}
        vals.update(changes)
        return make_context(**vals)

    def describe(self) -> dict:
        return {
            "k": format_rational(self.k),
            "p": format_rational(self.p),
            "q": format_rational(self.q),
            "h": format_rational(self.h),
            "p0": format_rational(self.p0),
            "d": self.d,
            "certified": self.certified,
        }


def admissibility_bound(d: int) -> int:
    return 4 * d + 4


def certification_failures(k, p, q, h, d: int) -> list[str]:
    """Every violated genericity condition up to degree ``d`` (empty = certified)."""
    k, p, q, h = (Fraction(v) for v in (k, p, q, h))
    failures = []
    if k == 0:
        return ["k = 0"]
    bound = admissibility_bound(d)
    # 2h = a k + b
    for a in range(-bound, bound + 1):
        b = 2 * h - a * k
        if b.denominator == 1 and abs(b.numerator) <= bound:
            failures.append(f"h inadmissible: 2h = {a}k + {b.numerator}")
    if k > 0 and k.numerator <= 2 * d and k.denominator <= 2 * d:
        failures.append(f"k = {k} is a small positive rational")
    parts = partitions_upto(d)
    eig = {lam: eigenvalue_of(lam, k, h) for lam in parts}
    for lam in parts:
        for mu in parts:
            if precedes(mu, lam) and eig[mu] == eig[lam]:
                failures.append(f"eigenvalue collision {lam} ~ {mu}")
    return failures


def make_context(k, p, q, h, d: int = 6) -> ParamContext:
    """Certify (k, p, q, h) up to degree d or raise :class:`CertificationError`."""
    failures = certification_failures(k, p, q, h, d)
    if failures:
        raise CertificationError("; ".join(failures[:5]))
    return ParamContext(k, p, q, h, d, True)


def finite_h(k, p, q, N: int) -> Fraction:
    """The h-locus h = -kN - p/2 - q of N variables."""
    return -Fraction(k) * N - Fraction(p) / 2 - Fraction(q)


def deformed_h(k, p, q, m: int, n: int) -> Fraction:
    """h = -km - n - p/2 - q for the deformed BC(m, n) restriction."""
    return -Fraction(k) * m - n - Fraction(p) / 2 - Fraction(q)


def _small_relation(values: Sequence[Fraction], bound: int) -> bool:
    """True if c_0 + sum c_i v_i = 0 for integers |c| <= bound, not all c_i (i >= 1) zero."""
    den = 1
    for v in values:
        den = den * v.denominator // _gcd(den, v.denominator)
    ints = [int(v * den) for v in values]
    n = len(ints)
    coeffs = [-bound] * n
    while True:
        if any(coeffs):
            s = sum(c * v for c, v in zip(coeffs, ints))
            if s % den == 0 and abs(s // den) <= bound:
                return True
        i = 0
        while i < n and coeffs[i] == bound:
            coeffs[i] = -bound
            i += 1
        if i == n:
            return False
        coeffs[i] += 1


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _draw_rational(rng: random.Random) -> Fraction:
    num = rng.randint(-99, 99)
    den = rng.randint(1, 99)
    return Fraction(num, den)


REDRAW_BUDGET = 200


def draw_generic_params(seed: int, d: int) -> ParamContext:
    """Deterministically draw a certified context from ``seed``.

    Besides the certification scan, (1, k, p, q) must satisfy no integer
    relation with coefficients of size <= 3, which keeps the derived loci
    h = -kN - p/2 - q away from degenerate values too.
    """
    rng = random.Random(seed)
    for _ in range(REDRAW_BUDGET):
        k, p, q, h = (_draw_rational(rng) for _ in range(4))
        if k == 0:
            continue
        if _small_relation([k, p, q], 3):
            continue
        if certification_failures(k, p, q, h, d):
            continue
        return ParamContext(k, p, q, h, d, True)
    raise RuntimeError(f"no certified parameters after {REDRAW_BUDGET} draws (seed={seed})")
