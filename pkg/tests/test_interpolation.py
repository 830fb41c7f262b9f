from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jacobisym.core import conjugate, contains, content_product, part, partitions_upto
from jacobisym.interpolation import (
    horizontal_strips,
    interpolation_comb,
    interpolation_norm,
    interpolation_oracle,
    interpolation_value,
)
from jacobisym.poly import MultiPoly
from strategies import CTX6, partitions

K, H = CTX6.k, CTX6.h


def _at(P, mu, N):
    return P.evaluate([Fraction(part(mu, i)) for i in range(1, N + 1)])


def test_one_box_polynomial():
    for N in (1, 2, 3):
        zs = [MultiPoly.variable(tuple(f"z{i}" for i in range(1, N + 1)), i) for i in range(N)]
        want = MultiPoly(tuple(f"z{i}" for i in range(1, N + 1)))
        for i, z in enumerate(zs, start=1):
            want = want + z * (z + (2 * K * i + 2 * H))
        assert interpolation_comb((1,), N, K, H) == want
    assert interpolation_oracle((1,), 2, K, H) == interpolation_comb((1,), 2, K, H)


def test_one_box_normalization():
    assert _at(interpolation_comb((1,), 3, K, H), (1,), 3) == 1 + 2 * K + 2 * H
    assert 1 + 2 * K + 2 * H == content_product("minus", (1,), 1, K) * content_product("plus", (1,), 2 * H - 1, K)


def test_extra_vanishing_example():
    assert _at(interpolation_comb((2,), 2, K, H), (1, 1), 2) == 0


def test_empty_partition():
    assert interpolation_oracle((), 2, K, H) == MultiPoly.constant(("z1", "z2"), 1)
    assert interpolation_value((), (3, 1), K, H) == 1


def test_value_examples():
    assert interpolation_value((1,), (1,), K, H) == 1 + 2 * K + 2 * H
    assert interpolation_value((2,), (1, 1), K, H) == 0
    lam = (2, 1)
    assert interpolation_value(lam, lam, K, H) == content_product("minus", lam, 1, K) * content_product("plus", lam, 2 * H - 1, K)


@pytest.mark.parametrize("lam,N", [(lam, N) for lam in partitions_upto(4) for N in range(max(len(lam), 1), 5)])
def test_tableau_formula_matches_linear_system(lam, N):
    assert interpolation_comb(lam, N, K, H) == interpolation_oracle(lam, N, K, H)


@pytest.mark.parametrize("lam", partitions_upto(5))
def test_vanishing_and_normalization(lam):
    for mu in partitions_upto(5):
        N = max(len(lam), len(mu), 1)
        val = _at(interpolation_comb(lam, N, K, H), mu, N)
        if mu == lam:
            assert val == interpolation_norm(lam, K, H)
        elif not contains(mu, lam):
            assert val == 0


@settings(max_examples=60)
@given(partitions(4), partitions(5), st.integers(0, 2))
def test_values_are_stable_in_the_number_of_variables(lam, mu, extra):
    N = max(len(lam), len(mu), 1) + extra
    assert _at(interpolation_comb(lam, N, K, H), mu, N) == interpolation_value(lam, mu, K, H)


@given(partitions(5))
def test_norm_box_formula(lam):
    lc = conjugate(lam)
    want = Fraction(1)
    for i, a in enumerate(lam, start=1):
        for j in range(1, a + 1):
            want *= (1 + a - j - K * (lc[j - 1] - i)) * (2 * H - 1 + a + j + K * (lc[j - 1] + i))
    assert interpolation_norm(lam, K, H) == want


def test_horizontal_strips():
    assert sorted(horizontal_strips((1,), (2, 1))) == [(1,), (1, 1), (2,), (2, 1)]
    assert sorted(horizontal_strips((2,), (2, 2))) == [(2,), (2, 1), (2, 2)]
    assert (1, 1) not in horizontal_strips((), (2, 2))


def test_too_many_rows():
    with pytest.raises(ValueError):
        interpolation_comb((1, 1, 1), 2, K, H)
