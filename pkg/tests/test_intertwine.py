"""The normalized intertwining operator Delta."""
import pytest

from ghfilt import cases
from ghfilt.exact import Q, RatFunT
from ghfilt.intertwine import (NotStandardInput, SingularNormalization, assert_equivariant, assert_holomorphic,
                               build_delta, inverted_roots, langlands_quotient, specialize_zero)
from ghfilt.modrep import fingerprint, is_irreducible, one_dim_module


@pytest.fixture(scope="module")
def b2_delta():
    return build_delta(cases.b2(), ["alpha"], cases.b2_U(), cases.B2_ETA)


def test_b2_delta_shape(b2_delta):
    assert b2_delta.domain.dim == b2_delta.codomain.dim == 8
    assert b2_delta.w.length == 3
    assert len(b2_delta.normalization) == 3
    assert b2_delta.min_valuation() >= 0


def test_b2_delta_equivariant_and_holomorphic(b2_delta):
    assert_equivariant(b2_delta)
    assert_holomorphic(b2_delta)


def test_inverted_roots(b2):
    w0 = b2.longest()
    assert len(inverted_roots(b2, w0)) == 4


def test_langlands_quotient_b2(b2_delta):
    sp = specialize_zero(b2_delta)
    assert sp.L.dim == 3 and sp.N.dim == 5
    assert is_irreducible(sp.L)


def test_langlands_quotient_a1(a1):
    sp = langlands_quotient(a1, [], one_dim_module(a1, [], (1,)))
    assert sp.L.dim == 1 and sp.N.dim == 1
    assert fingerprint(sp.L).weights != fingerprint(sp.N).weights


def test_a1_chain_element_image():
    d = cases.a1()
    from ghfilt.modrep import chain_module
    D = build_delta(d, [], chain_module(cases.a1_U(), 2, cases.A1_ETA), cases.A1_ETA)
    img = D.matrix.apply(cases.a1_chain_element(D))
    nonzero = [x for x in img if not x.is_zero()]
    assert nonzero == [RatFunT.parse("(t^2+2*t)/(t+1)^2")]


def test_non_tempered_input_rejected(a1):
    with pytest.raises(NotStandardInput):
        build_delta(a1, [], one_dim_module(a1, [], (-1,)), (1,))


def test_singular_normalization(a1):
    with pytest.raises(SingularNormalization):
        build_delta(a1, [], one_dim_module(a1, [], (0,)), (0,), allow_nontempered=True)
