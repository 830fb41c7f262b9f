"""Named verification suites.

Each suite expands into independent cases.  A case returns ``None`` when it
passes and a witness dict (exact values, rationals as strings) when it fails.
Reports have the shape ``{"suite", "cases", "failures"}``.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import deformed as dfm
from .core import (
    CertificationError,
    ParamContext,
    contains,
    deformed_h,
    draw_generic_params,
    finite_h,
    format_partition,
    format_rational,
    make_context,
    part,
    partitions_upto,
    weight,
)
from .eigenfunctions import (
    ShiftedSample,
    bernoulli_gen,
    binomial_coeffs,
    classical_ode_check,
    eigenvalue,
    expand_in_jacks,
    jacobi,
    jacobi_zero_closed,
    opdam_finite_oracle,
    pie_identity_holds,
    quantum_integral_matrix,
    verify_omega_duality,
    verify_reflection_duality,
    verify_theta_duality,
)
from .interpolation import interpolation_comb, interpolation_norm, interpolation_oracle
from .operators import SYMMETRIES, apply_L, verify_intertwine_deformed, verify_intertwine_finite, verify_symmetry
from .pieri import (
    PHI,
    THETA_PHI,
    SignedShift,
    finite_context,
    generic_vanishing,
    ideal_closure_failures,
    ideal_mismatches,
    lemma_zero_violations,
    pieri_r1_residual,
    van_diejen_residual,
)
from .symfunc import POWER, SymFunc, expand_finite

SUITES = (
    "eigen",
    "pieri-r1",
    "van-diejen",
    "binomial",
    "interpolation",
    "symmetries",
    "intertwine",
    "ideals",
    "super-eval",
    "super-pieri",
    "bispectral",
    "restriction-bernoulli",
    "ode-n1",
    "hc-pie",
)


@dataclass
class SuiteOptions:
    max_weight: int | None = None
    m: int | None = None
    n: int | None = None
    N: int | None = None
    r: int | None = None
    seeds: tuple[int, ...] = (42,)
    trials: int = 3
    jobs: int = 1
    mutate: SignedShift | None = None
    params: tuple | None = None  # explicit (k, p, q, h) instead of seeds
    contexts: list[ParamContext] = field(default_factory=list, init=False)

    def weight_or(self, default: int) -> int:
        return default if self.max_weight is None else self.max_weight


@dataclass(frozen=True)
class Case:
    label: str
    fn: Callable
    args: tuple


def jsonable(x):
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, dict):
        return {str(k) if not isinstance(k, tuple) else format_partition(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, tuple) and all(isinstance(a, int) for a in x):
        return format_partition(x)
    if isinstance(x, (list, tuple)):
        return [jsonable(a) for a in x]
    return str(x)


def _diff_witness(residual, limit: int = 3) -> dict:
    terms = residual.sorted_terms()[:limit]
    return {"residual_terms": [[jsonable(e), jsonable(c)] for e, c in terms]}


def _plabel(lam) -> str:
    return f"({format_partition(lam)})"


def _ctx_label(ctx: ParamContext) -> str:
    return f"k={format_rational(ctx.k)},p={format_rational(ctx.p)},q={format_rational(ctx.q)},h={format_rational(ctx.h)}"


def contexts_for(opts: SuiteOptions, d: int) -> list[ParamContext]:
    if opts.params is not None:
        return [make_context(*opts.params, d)]
    return [draw_generic_params(s, d) for s in opts.seeds]


# ---------------------------------------------------------------------------
# case checks (module level so they can run in worker processes)


def _case_eigen(lam, ctx):
    J = jacobi(lam, ctx)
    lhs, rhs = apply_L(J, ctx), J.scale(eigenvalue(lam, ctx))
    if lhs != rhs:
        return {"check": "eigen", **_diff_witness(lhs - rhs)}
    c0, closed = J.constant_term(), jacobi_zero_closed(lam, ctx)
    if c0 != closed:
        return {"check": "value-at-zero", "constant_term": c0, "closed_form": closed}
    return None


def _case_opdam(lam, N, ctx):
    fctx = finite_context(ctx, N, weight(lam))
    direct = expand_finite(jacobi(lam, fctx), N).constant_term()
    try:
        oracle = opdam_finite_oracle(lam, N, ctx.k, ctx.p, ctx.q)
    except ArithmeticError as exc:
        return {"check": "opdam", "error": str(exc)}
    if direct != oracle:
        return {"check": "opdam", "N": N, "constant_term": direct, "product": oracle}
    return None


def _case_pieri_r1(lam, ctx, mutate):
    res = pieri_r1_residual(lam, ctx, mutate)
    return None if res.is_zero() else {"check": "pieri-r1", **_diff_witness(res)}


def _case_van_diejen(lam, r, N, ctx):
    res = van_diejen_residual(lam, r, N, ctx)
    return None if res.is_zero() else {"check": "van-diejen", "r": r, "N": N, **_diff_witness(res)}


def _case_lemma_zero(lam, r, N, ctx):
    count, bad = lemma_zero_violations(lam, r, N, ctx.k, ctx.p, ctx.q)
    return None if not bad else {"check": "lemma-zero", "r": r, "N": N, "terms": count, "nonzero": [b.label() for b in bad]}


def _case_binomial(lam, ctx):
    got = expand_in_jacks(jacobi(lam, ctx), ctx)
    want = binomial_coeffs(lam, ctx)
    if got != want:
        keys = sorted(set(got) | set(want))
        diff = {mu: (got.get(mu, 0), want.get(mu, 0)) for mu in keys if got.get(mu, 0) != want.get(mu, 0)}
        return {"check": "binomial", "mismatch": diff}
    return None


def _case_interp_oracle(lam, N, ctx):
    a = interpolation_comb(lam, N, ctx.k, ctx.h)
    b = interpolation_oracle(lam, N, ctx.k, ctx.h)
    return None if a == b else {"check": "comb-vs-oracle", "N": N, **_diff_witness(a - b)}


def _case_interp_values(lam, dmax, ctx):
    """Extra vanishing and normalization of the tableau polynomial at partitions."""
    bad = []
    for mu in partitions_upto(dmax):
        N = max(len(lam), len(mu), 1)
        P = interpolation_comb(lam, N, ctx.k, ctx.h)
        val = P.evaluate([Fraction(part(mu, i)) for i in range(1, N + 1)])
        if mu == lam:
            want = interpolation_norm(lam, ctx.k, ctx.h)
        elif not contains(mu, lam):
            want = Fraction(0)
        else:
            continue
        if val != want:
            bad.append({"at": mu, "value": val, "expected": want})
    return {"check": "vanishing/normalization", "points": bad} if bad else None


def _case_symmetry(rel, d, ctx):
    return None if verify_symmetry(rel, d, ctx) else {"check": rel, "max_weight": d}


def _case_duality(lam, ctx):
    bad = [
        name
        for name, fn in (
            ("reflection", verify_reflection_duality),
            ("omega", verify_omega_duality),
            ("theta", verify_theta_duality),
        )
        if not fn(lam, ctx)
    ]
    return {"check": "dualities", "failed": bad} if bad else None


def _case_intertwine_finite(mu, N, ctx):
    fctx = ctx.with_params(h=finite_h(ctx.k, ctx.p, ctx.q, N))
    f = SymFunc(POWER, {mu: 1})
    return None if verify_intertwine_finite(f, N, fctx) else {"check": "intertwine-finite", "N": N, "p": mu}


def _case_intertwine_deformed(mu, m, n, ctx):
    dctx = ctx.with_params(h=deformed_h(ctx.k, ctx.p, ctx.q, m, n))
    f = SymFunc(POWER, {mu: 1})
    ok = verify_intertwine_deformed(f, m, n, dctx)
    return None if ok else {"check": "intertwine-deformed", "m": m, "n": n, "p": mu}


def _case_ideal(m, n, case, dmax, ctx):
    bad = ideal_mismatches(m, n, case, ctx.k, ctx.p, ctx.q, dmax)
    return {"check": f"ideal-{case}", "m": m, "n": n, "mismatches": bad} if bad else None


def _case_generic_vanishing(dmax, ctx):
    hits = generic_vanishing(ctx, dmax)
    return {"check": "generic-no-vanishing", "hits": hits} if hits else None


def _case_ideal_closure(m, n, dmax, ctx):
    bad = ideal_closure_failures(m, n, ctx.k, ctx.p, ctx.q, dmax)
    return {"check": "ideal-closure", "m": m, "n": n, "escapes": bad} if bad else None


def _case_super_eval(lam, m, n, ctx):
    k, p, q = ctx.k, ctx.p, ctx.q
    out = {}
    prod = dfm.super_jacobi_zero_product(lam, m, n, k, p, q)
    direct = dfm.super_jacobi(lam, m, n, k, p, q).constant_term()
    if prod != direct / dfm.b_lambda(lam, n, k):
        out["evaluation"] = {"product": prod, "constant_term": direct, "a": dfm.a_lambda(lam, n, k)}
    if not dfm.highest_term_check(lam, m, n, k, p, q):
        out["highest_term"] = dfm.highest_term_report(lam, m, n, k, p, q)
    if weight(lam) <= 4 and not dfm.super_binomial_residual(lam, m, n, k, p, q).is_zero():
        out["super_binomial"] = _diff_witness(dfm.super_binomial_residual(lam, m, n, k, p, q))
    if weight(lam) <= 5 and not dfm.verify_super_eigen(lam, m, n, k, p, q):
        out["eigen"] = True
    return {"check": "super-eval", **out} if out else None


def _case_super_pieri(lam, m, n, ctx):
    k, p, q = ctx.k, ctx.p, ctx.q
    out = {}
    bad_moves = [
        beta
        for beta in dfm.root_system(m, n, k, p, q).moves()
        if dfm.move(lam, beta, m, n) != dfm.move_by_boxes(lam, beta, m, n)
    ]
    if bad_moves:
        out["admissibility"] = bad_moves
    try:
        res = dfm.deformed_pieri_residual(lam, m, n, k, p, q)
        if not res.is_zero():
            out["pieri"] = _diff_witness(res)
    except ArithmeticError as exc:
        out["error"] = str(exc)
    return {"check": "super-pieri", **out} if out else None


def _random_point(rng: random.Random, size: int) -> list[Fraction]:
    return [Fraction(rng.randint(-10**6, 10**6), rng.randint(10**5, 10**6)) for _ in range(size)]


def _case_bispectral(lam, m, n, ctx, seed):
    rng = random.Random(seed)
    u0, v0 = _random_point(rng, m), _random_point(rng, n)
    ok = dfm.bispectral_check(lam, m, n, ctx.k, ctx.p, ctx.q, u0, v0)
    return None if ok else {"check": "bispectral", "u0": u0, "v0": v0}


def _case_w_forms(m, n, ctx, seed):
    rng = random.Random(seed)
    z = _random_point(rng, m + n)
    R = dfm.root_system(m, n, ctx.k, ctx.p, ctx.q)
    for beta in R.moves():
        a = dfm.koornwinder_weight_roots(z, beta, R)
        b = dfm.koornwinder_weight_explicit(z, beta, R)
        if a != b:
            return {"check": "W-forms", "z": z, "beta": list(beta), "root_form": a, "explicit_form": b}
    return None


def _case_restriction(lam, m, n, ctx):
    bad = [l for l in (1, 2, 3) if not dfm.restriction_matches(l, lam, m, n, ctx)]
    return {"check": "restriction", "l": bad} if bad else None


def _case_quasi_invariance(m, n, ctx, seed):
    rng = random.Random(seed)
    w = [Fraction(rng.randint(0, 9)) for _ in range(m)]
    z = [Fraction(rng.randint(-60, 60), 7) for _ in range(n)]
    for l in (1, 2, 3):
        for i in range(1, m + 1):
            for j in range(1, n + 1):
                gap = dfm.quasi_invariance_gap(l, w, z, i, j, m, n, ctx.k, ctx.h)
                if gap:
                    return {"check": "quasi-invariance", "l": l, "i": i, "j": j, "w": w, "z": z, "gap": gap}
    return None


def _case_ode(deg, ctx):
    c1 = ctx.with_params(h=finite_h(ctx.k, ctx.p, ctx.q, 1))
    return None if classical_ode_check(deg, c1) else {"check": "ode-n1", "degree": deg}


def _case_hc_pie(dmax, sample_weight, N, ctx):
    fctx = finite_context(ctx, N, dmax + 2)
    f = ShiftedSample.from_function(lambda lam: bernoulli_gen(1, lam, fctx), max(dmax, sample_weight), 2, N)
    try:
        a = quantum_integral_matrix(f, dmax, fctx, sample_weight=sample_weight, N=N)
    except ArithmeticError as exc:
        return {"check": "hc-pie", "error": str(exc)}
    if not pie_identity_holds("derived", f, a, dmax, sample_weight, fctx):
        return {"check": "hc-pie", "error": "full-sum identity fails"}
    return None


# ---------------------------------------------------------------------------
# suite builders


def _lams(d: int) -> list:
    return partitions_upto(d)


def build_cases(name: str, opts: SuiteOptions) -> list[Case]:
    cases: list[Case] = []
    add = lambda label, fn, *args: cases.append(Case(label, fn, args))
    if name == "eigen":
        d = opts.weight_or(5)
        for ctx in contexts_for(opts, d):
            for lam in _lams(d):
                add(f"{_ctx_label(ctx)} {_plabel(lam)}", _case_eigen, lam, ctx)
            for lam in _lams(min(d, 5)):
                for N in range(max(len(lam), 1), (opts.N or 4) + 1):
                    add(f"{_ctx_label(ctx)} {_plabel(lam)} N={N}", _case_opdam, lam, N, ctx)
    elif name == "pieri-r1":
        d = opts.weight_or(4)
        for ctx in contexts_for(opts, d + 1):
            for lam in _lams(d):
                add(f"{_ctx_label(ctx)} {_plabel(lam)}", _case_pieri_r1, lam, ctx, opts.mutate)
    elif name == "van-diejen":
        d, rmax, Nmax = opts.weight_or(3), opts.r or 2, opts.N or 4
        for ctx in contexts_for(opts, d + rmax):
            for lam in _lams(d):
                for r in range(1, rmax + 1):
                    for N in range(max(len(lam), r), Nmax + 1):
                        add(f"{_ctx_label(ctx)} {_plabel(lam)} r={r} N={N}", _case_van_diejen, lam, r, N, ctx)
                        if weight(lam) <= 3:
                            add(f"{_ctx_label(ctx)} {_plabel(lam)} r={r} N={N} lemma", _case_lemma_zero, lam, r, N, ctx)
    elif name == "binomial":
        d = opts.weight_or(4)
        for ctx in contexts_for(opts, d):
            for lam in _lams(d):
                add(f"{_ctx_label(ctx)} {_plabel(lam)}", _case_binomial, lam, ctx)
    elif name == "interpolation":
        d, Nmax = opts.weight_or(3), opts.N or 3
        for ctx in contexts_for(opts, d):
            for lam in _lams(d):
                for N in range(max(len(lam), 1), Nmax + 1):
                    add(f"{_ctx_label(ctx)} {_plabel(lam)} N={N}", _case_interp_oracle, lam, N, ctx)
                add(f"{_ctx_label(ctx)} {_plabel(lam)} values", _case_interp_values, lam, d, ctx)
    elif name == "symmetries":
        d = opts.weight_or(4)
        for ctx in contexts_for(opts, d):
            for rel in SYMMETRIES:
                add(f"{_ctx_label(ctx)} {rel}", _case_symmetry, rel, d, ctx)
            for lam in _lams(min(d, 4)):
                add(f"{_ctx_label(ctx)} {_plabel(lam)} dualities", _case_duality, lam, ctx)
    elif name == "intertwine":
        d = opts.weight_or(4)
        pairs = [(opts.m, opts.n)] if opts.m is not None and opts.n is not None else [(1, 1), (2, 1), (1, 2), (2, 2)]
        for ctx in contexts_for(opts, d):
            for mu in _lams(d):
                if not mu:
                    continue
                for N in range(1, (opts.N or 4) + 1):
                    add(f"{_ctx_label(ctx)} p{_plabel(mu)} N={N}", _case_intertwine_finite, mu, N, ctx)
                for m, n in pairs:
                    add(f"{_ctx_label(ctx)} p{_plabel(mu)} m={m} n={n}", _case_intertwine_deformed, mu, m, n, ctx)
    elif name == "ideals":
        d = opts.weight_or(4)
        pairs = [(opts.m, opts.n)] if opts.m is not None and opts.n is not None else [
            (m, n) for m in range(3) for n in range(3) if (m + 1) * (n + 1) <= d + 1
        ]
        for ctx in contexts_for(opts, d):
            for m, n in pairs:
                for case in (PHI, THETA_PHI):
                    add(f"{_ctx_label(ctx)} m={m} n={n} {case}", _case_ideal, m, n, case, d, ctx)
            add(f"{_ctx_label(ctx)} generic", _case_generic_vanishing, min(d, 4), ctx)
            add(f"{_ctx_label(ctx)} closure m=1 n=1", _case_ideal_closure, 1, 1, min(d, 4), ctx)
    elif name in ("super-eval", "super-pieri", "bispectral", "restriction-bernoulli"):
        default_w = {"super-eval": 4, "super-pieri": 3, "bispectral": 3, "restriction-bernoulli": 5}[name]
        d = opts.weight_or(default_w)
        if opts.m is not None and opts.n is not None:
            pairs = [(opts.m, opts.n)]
        else:
            pairs = [(m, n) for m in range(3) for n in range(3) if m + n > 0]
            if name in ("super-pieri", "bispectral"):
                pairs = [(1, 1), (2, 1), (1, 2)]
        for ctx in contexts_for(opts, d + 1):
            for m, n in pairs:
                hooks = [lam for lam in _lams(d) if dfm.in_hook(lam, m, n)]
                tag = f"{_ctx_label(ctx)} m={m} n={n}"
                if name == "super-eval":
                    for lam in hooks:
                        add(f"{tag} {_plabel(lam)}", _case_super_eval, lam, m, n, ctx)
                elif name == "super-pieri":
                    for lam in hooks:
                        add(f"{tag} {_plabel(lam)}", _case_super_pieri, lam, m, n, ctx)
                elif name == "bispectral":
                    for t in range(opts.trials):
                        for lam in hooks:
                            add(f"{tag} {_plabel(lam)} point={t}", _case_bispectral, lam, m, n, ctx, 1000 * t + 17)
                    for t in range(5):
                        add(f"{tag} W-forms point={t}", _case_w_forms, m, n, ctx, 7919 * t + 3)
                else:
                    for lam in hooks:
                        add(f"{tag} {_plabel(lam)}", _case_restriction, lam, m, n, ctx)
                    if m and n:
                        for t in range(opts.trials):
                            add(f"{tag} quasi-invariance point={t}", _case_quasi_invariance, m, n, ctx, 31 * t + 5)
    elif name == "ode-n1":
        d = opts.weight_or(5)
        for ctx in contexts_for(opts, d):
            for deg in range(1, d + 1):
                add(f"{_ctx_label(ctx)} degree={deg}", _case_ode, deg, ctx)
    elif name == "hc-pie":
        for ctx in contexts_for(opts, 5):
            add(f"{_ctx_label(ctx)} f1", _case_hc_pie, 3, opts.weight_or(4), opts.N or 4, ctx)
    else:
        raise ValueError(f"unknown suite {name!r}")
    return cases


def _run_case(case: Case):
    try:
        return case.fn(*case.args)
    except CertificationError:
        raise
    except (ArithmeticError, ValueError) as exc:
        return {"error": f"{type(exc).__name__}: {exc}"}


def run_suite(name: str, opts: SuiteOptions) -> dict:
    cases = build_cases(name, opts)
    if opts.jobs > 1 and len(cases) > 1:
        with ProcessPoolExecutor(max_workers=opts.jobs) as pool:
            results = list(pool.map(_run_case, cases, chunksize=max(1, len(cases) // (4 * opts.jobs))))
    else:
        results = [_run_case(c) for c in cases]
    failures = [{"case": c.label, **jsonable(w)} for c, w in zip(cases, results) if w is not None]
    failures.sort(key=lambda f: f["case"])
    return {"suite": name, "cases": len(cases), "failures": failures}


def run_suites(names, opts: SuiteOptions) -> list[dict]:
    names = SUITES if names in ("all", ["all"], ("all",)) else names
    return [run_suite(n, opts) for n in names]
