"""Exact arithmetic: rationals, Q(t), dense linear algebra and the t-adic SNF."""
import random

import pytest
from hypothesis import given, settings, strategies as st

from ghfilt.exact import (INF, Mat, Q, RatFunT, contains_span, format_exponent, image, kernel, rat_str,
                          rref, same_span, solve, span_basis, t_adic_snf, t_valuation)
from ghfilt.oracles import (minor_valuations, random_poly_matrix, snf_exponents_from_minors,
                            sorted_exponents)


def test_rational_coercion():
    assert Q("3/2") == Q(3) / 2
    assert Q(" -4/6 ") == Q(-2) / 3
    assert rat_str(Q("-4/6")) == "-2/3"
    with pytest.raises(TypeError):
        Q(0.5)


def test_ratfun_canonical_form():
    f = RatFunT.parse("(t^2+2*t)/(t+1)^2")
    g = RatFunT.parse("t*(t+2)/(t^2+2*t+1)")
    assert f == g
    assert f.canonical() == g.canonical()
    assert RatFunT.parse("2*t/(2*t+2)") == RatFunT.parse("t/(t+1)")


def test_ratfun_valuation_and_value_at_zero():
    assert t_valuation(RatFunT.parse("t^3*(2+t)")) == 3
    assert t_valuation(RatFunT(0)) == INF
    assert RatFunT.parse("(1+t)/(2-t)").at_zero() == Q(1) / 2
    assert (RatFunT(1) / RatFunT.parse("t^2")).valuation() == -2


def test_rref_kernel_image():
    M = Mat([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    K = kernel(M)
    assert K.ncols == 1
    assert (M @ K).is_zero()
    assert image(M).ncols == 2
    R, piv = rref(M)
    assert list(piv) == [0, 1]


def test_solve_and_spans():
    M = Mat([[1, 0], [0, 1], [1, 1]])
    assert solve(M, [2, 3, 5]) == [2, 3]
    assert solve(M, [2, 3, 4]) is None
    A = span_basis([[1, 0, 1], [0, 1, 1]], 3)
    B = span_basis([[1, 1, 2], [1, -1, 0]], 3)
    assert same_span(A, B)
    assert contains_span(A, span_basis([[2, 2, 4]], 3))
    assert not contains_span(span_basis([[2, 2, 4]], 3), A)


def test_inverse_over_Qt():
    t = RatFunT.t()
    M = Mat([[t, RatFunT(1)], [RatFunT(0), t + 1]], "Qt")
    assert (M @ M.inverse()).is_identity()


def test_snf_small_example():
    t = RatFunT.t()
    M = Mat([[t, RatFunT(0)], [RatFunT(0), t * t]], "Qt")
    exps, L, R = t_adic_snf(M)
    assert sorted_exponents(exps) == [1, 2]
    assert format_exponent(INF) == "inf"


def test_snf_kernel_columns_are_infinite():
    t = RatFunT.t()
    M = Mat([[t, t], [RatFunT(1), RatFunT(1)]], "Qt")
    exps, L, R = t_adic_snf(M)
    assert sorted_exponents(exps) == [0, INF]


def test_minor_oracle_on_known_matrix():
    t = RatFunT.t()
    M = Mat([[t, RatFunT(0)], [RatFunT(0), t ** 3]], "Qt")
    assert minor_valuations(M) == [1, 4]
    assert snf_exponents_from_minors(M) == [1, 3]


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 10 ** 6), size=st.integers(2, 4), drop=st.booleans())
def test_snf_matches_minor_oracle(seed, size, drop):
    M = random_poly_matrix(random.Random(seed), size, size, rank_drop=drop)
    exps, L, R = t_adic_snf(M)
    assert sorted_exponents(exps) == snf_exponents_from_minors(M)
    # L and R are invertible over the local ring
    assert L.at_zero().det() != 0 and R.at_zero().det() != 0
