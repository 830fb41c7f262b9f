"""Sparse multivariate polynomials with exact rational coefficients.

A polynomial is a dict from exponent tuples to nonzero Fractions, carried
together with its tuple of variable names.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence


class NotDivisibleError(ArithmeticError):
    """Exact division left a nonzero remainder."""


class MultiPoly:
    __slots__ = ("vars", "terms")

    def __init__(self, variables: Sequence[str], terms: Mapping[tuple, object] | None = None):
        self.vars = tuple(variables)
        clean = {}
        if terms:
            n = len(self.vars)
            for e, c in terms.items():
                c = Fraction(c)
                if c == 0:
                    continue
                if len(e) != n:
                    raise ValueError(f"exponent {e} does not match {n} variables")
                clean[tuple(e)] = c
        self.terms = clean

    # construction -----------------------------------------------------------

    @classmethod
    def _raw(cls, variables: tuple, terms: dict) -> "MultiPoly":
        obj = cls.__new__(cls)
        obj.vars = variables
        obj.terms = terms
        return obj

    @classmethod
    def constant(cls, variables: Sequence[str], c) -> "MultiPoly":
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def variable(cls, variables: Sequence[str], i: int) -> "MultiPoly":
        variables = tuple(variables)
        e = [0] * len(variables)
        e[i] = 1
        return cls(variables, {tuple(e): 1})

    @classmethod
    def power_sum(cls, variables: Sequence[str], indices: Iterable[int], a: int, scale=1) -> "MultiPoly":
        """scale * sum_{i in indices} x_i^a."""
        variables = tuple(variables)
        out: dict = {}
        for i in indices:
            e = [0] * len(variables)
            e[i] = a
            e = tuple(e)
            out[e] = out.get(e, Fraction(0)) + Fraction(scale)
        return cls(variables, out)

    # basic queries ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def coefficient(self, exps: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    def _check(self, other: "MultiPoly"):
        if self.vars != other.vars:
            raise ValueError(f"variable mismatch {self.vars} vs {other.vars}")

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.vars == other.vars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == MultiPoly.constant(self.vars, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def __repr__(self):
        return f"MultiPoly({self.to_text()})"

    # ring operations --------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.constant(self.vars, other)
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return MultiPoly._raw(self.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.constant(self.vars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "MultiPoly":
        c = Fraction(c)
        if c == 0:
            return MultiPoly._raw(self.vars, {})
        return MultiPoly._raw(self.vars, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        self._check(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    del out[e]
        return MultiPoly._raw(self.vars, out)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int):
        out = MultiPoly.constant(self.vars, 1)
        for _ in range(n):
            out = out * self
        return out

    # calculus ---------------------------------------------------------------

    def diff(self, i: int) -> "MultiPoly":
        out = {}
        for e, c in self.terms.items():
            a = e[i]
            if a:
                ne = list(e)
                ne[i] = a - 1
                out[tuple(ne)] = c * a
        return MultiPoly._raw(self.vars, out)

    def euler(self, i: int) -> "MultiPoly":
        """x_i d/dx_i."""
        return MultiPoly._raw(self.vars, {e: c * e[i] for e, c in self.terms.items() if e[i]})

    def mul_var(self, i: int, power: int = 1) -> "MultiPoly":
        out = {}
        for e, c in self.terms.items():
            ne = list(e)
            ne[i] += power
            out[tuple(ne)] = c
        return MultiPoly._raw(self.vars, out)

    def divide_difference(self, i: int, j: int) -> "MultiPoly":
        """Exact quotient by (x_i - x_j); raises NotDivisibleError otherwise."""
        # group by exponent of x_i; each coefficient lives in the other variables
        by_deg: dict[int, dict] = {}
        for e, c in self.terms.items():
            ne = list(e)
            d = ne[i]
            ne[i] = 0
            by_deg.setdefault(d, {})[tuple(ne)] = c
        if not by_deg:
            return MultiPoly._raw(self.vars, {})
        top = max(by_deg)
        quotient: dict = {}
        carry: dict = {}  # q_d as a polynomial in the other variables
        for d in range(top, 0, -1):
            # q_{d-1} = c_d + x_j * q_d
            nxt = dict(by_deg.get(d, {}))
            for e, c in carry.items():
                ne = list(e)
                ne[j] += 1
                ne = tuple(ne)
                v = nxt.get(ne, 0) + c
                if v:
                    nxt[ne] = v
                else:
                    nxt.pop(ne, None)
            carry = nxt
            for e, c in carry.items():
                ne = list(e)
                ne[i] = d - 1
                quotient[tuple(ne)] = c
        # remainder c_0 + x_j * q_0
        rem = dict(by_deg.get(0, {}))
        for e, c in carry.items():
            ne = list(e)
            ne[j] += 1
            ne = tuple(ne)
            v = rem.get(ne, 0) + c
            if v:
                rem[ne] = v
            else:
                rem.pop(ne, None)
        if rem:
            raise NotDivisibleError(f"{self.vars[i]} - {self.vars[j]} does not divide the polynomial")
        return MultiPoly._raw(self.vars, quotient)

    # evaluation and substitution ---------------------------------------------

    def evaluate(self, point: Sequence) -> Fraction:
        if len(point) != len(self.vars):
            raise ValueError("point arity mismatch")
        pt = [Fraction(x) for x in point]
        total = Fraction(0)
        for e, c in self.terms.items():
            t = c
            for x, a in zip(pt, e):
                if a:
                    t *= x**a
            total += t
        return total

    def substitute_affine(self, i: int, a, b) -> "MultiPoly":
        """Replace x_i by a*x_i + b."""
        lin = MultiPoly.variable(self.vars, i).scale(a) + Fraction(b)
        out = MultiPoly._raw(self.vars, {})
        powers = {0: MultiPoly.constant(self.vars, 1)}
        for e, c in self.terms.items():
            d = e[i]
            if d not in powers:
                powers[d] = lin ** d
            rest = list(e)
            rest[i] = 0
            out = out + MultiPoly._raw(self.vars, {tuple(rest): c}) * powers[d]
        return out

    def swap(self, i: int, j: int) -> "MultiPoly":
        out = {}
        for e, c in self.terms.items():
            ne = list(e)
            ne[i], ne[j] = ne[j], ne[i]
            out[tuple(ne)] = c
        return MultiPoly._raw(self.vars, out)

    def restrict(self, i: int, j: int) -> "MultiPoly":
        """Set x_i = x_j (x_i disappears into x_j)."""
        out: dict = {}
        for e, c in self.terms.items():
            ne = list(e)
            ne[j] += ne[i]
            ne[i] = 0
            ne = tuple(ne)
            v = out.get(ne, 0) + c
            if v:
                out[ne] = v
            else:
                out.pop(ne, None)
        return MultiPoly._raw(self.vars, out)

    # serialization ------------------------------------------------------------

    def sorted_terms(self) -> list[tuple[tuple, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: (-sum(t[0]), tuple(-a for a in t[0])))

    def to_json(self) -> dict:
        from .core import format_rational

        return {
            "vars": list(self.vars),
            "terms": [{"exps": list(e), "coeff": format_rational(c)} for e, c in self.sorted_terms()],
        }

    def to_text(self) -> str:
        from .core import format_rational

        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                v if a == 1 else f"{v}^{a}" for v, a in zip(self.vars, e) if a
            )
            coeff = format_rational(c)
            if not mono:
                parts.append(coeff)
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{coeff}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")
