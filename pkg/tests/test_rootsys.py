"""Root data, Weyl groups, parabolic cosets and the Langlands decomposition."""
import pytest

from ghfilt.exact import Q
from ghfilt.rootsys import build_datum, datum_from_json


@pytest.mark.parametrize("kind,order,npos", [("A1", 2, 1), ("A2", 6, 3), ("B2", 8, 4), ("G2", 12, 6),
                                             ("A3", 24, 6), ("B3", 48, 9)])
def test_weyl_group_orders(kind, order, npos):
    d = build_datum(kind, 1)
    assert len(d.W) == order
    assert len(d.positive_roots) == npos
    assert d.longest().length == npos


def test_b2_conventions(b2):
    assert [list(r) for r in b2.P] == [[2, -2], [-1, 2]]
    names = sorted(b2.root_name(r) for r in b2.positive_roots)
    assert names == sorted(["alpha", "beta", "alpha+beta", "2alpha+beta"])


def test_reduced_words_of_longest(b2, a2):
    assert len(b2.reduced_words(b2.longest())) == 2
    assert len(a2.reduced_words(a2.longest())) == 2
    for w in b2.W:
        for word in b2.reduced_words(w):
            assert b2.from_word(word) == w


def test_coset_minima_and_factorisation(b2):
    J = b2.normalize_J(["alpha"])
    reps = b2.coset_minima(J)
    assert len(reps) == 4
    assert [b2.word_str(w) for w in reps][0] in ("e", "")
    for x in b2.W:
        w, sigma = b2.coset_factor(J, x)
        assert w in reps
        assert set(sigma.word) <= set(J)
        assert b2.mul(w, sigma) == x
        assert x.length == w.length + sigma.length


def test_theta_maps_b2(b2):
    m = b2.theta_maps(b2.normalize_J(["alpha"]))
    # -w0 is the identity in B2, so theta(J) = J and phi = w0 w0J fixes alpha
    assert m["theta_of_J"] == (0,)
    assert m["phi"] == {0: 0}
    assert m["phi_elt"].length == 3


def test_langlands_decompose_tempered_weight(b2):
    # the weight (0, 2) of the B2 module: nu = alpha^vee + 2 beta^vee
    J, a, b, nu = b2.langlands_decompose((Q(0), Q(2)))
    assert J == ()
    assert nu == (0, 2)
    # a weight with a strictly negative coroot part on alpha: (-2, 2) -> J = {alpha}
    J2, a2, b2_, nu2 = b2.langlands_decompose((Q(-2), Q(2)))
    assert J2 == (0,) and all(x < 0 for x in a2.values())


def test_dominance_incomparable_pair(b2):
    """In omega^vee coordinates (1,4) and (3,1) are incomparable under dominance."""
    g1 = tuple(Q(x) for x in (1, 4))
    g2 = tuple(Q(x) for x in (3, 1))
    assert not b2.dominance_leq(g1, g2)
    assert not b2.dominance_leq(g2, g1)
    assert b2.dominance_leq(g1, g1)
    assert not b2.dominance_lt(g1, g1)


def test_json_roundtrip(b2):
    d2 = datum_from_json(b2.to_json())
    assert d2.P == b2.P and list(d2.k) == list(b2.k)


def test_custom_pairing_matrix():
    d = build_datum([[2, -1], [-1, 2]], 1)
    assert len(d.W) == 6


def test_fundamental_coweights_of_b2_are_comparable(b2):
    """omega_alpha^vee - omega_beta^vee = alpha^vee / 2, so the pair is comparable."""
    wa, wb = (Q(1), Q(0)), (Q(0), Q(1))
    assert b2.dominance_lt(wb, wa)
    assert not b2.dominance_leq(wa, wb)
