"""The graded Hecke algebra: normal forms and intertwining elements."""
import pytest

from ghfilt.exact import Q
from ghfilt.hecke import AlgebraElement, multiply, push_variable, tau_factor, tau_tilde
from ghfilt.rootsys import build_datum


@pytest.mark.parametrize("kind", ["A1", "A2", "B2", "G2"])
def test_cross_relation(kind):
    """t_s v - s(v) t_s = k <v, alpha^vee> for every simple s and basis vector v."""
    d = build_datum(kind, 2)
    for i in range(d.n):
        ts = AlgebraElement.t(d, d.s(i))
        for j in range(d.n):
            v = AlgebraElement.root(d, j)
            sv = AlgebraElement.vec(d, d.s(i).act([1 if a == j else 0 for a in range(d.n)]))
            lhs = multiply(ts, v) - multiply(sv, ts)
            assert lhs == AlgebraElement.one(d).scale(d.k[i] * d.P[i][j])


@pytest.mark.parametrize("kind", ["A2", "B2", "G2"])
def test_group_relations(kind):
    d = build_datum(kind, 1)
    for i in range(d.n):
        ts = AlgebraElement.t(d, d.s(i))
        assert multiply(ts, ts) == AlgebraElement.one(d)


@pytest.mark.parametrize("kind", ["A2", "B2", "G2"])
def test_tau_tilde_word_independence(kind):
    d = build_datum(kind, 2)
    for w in d.W:
        words = d.reduced_words(w)
        ref = tau_tilde(d, w, words[0])
        assert all(tau_tilde(d, w, word) == ref for word in words[1:])


def test_tau_square_under_stated_relation(a1):
    """With t_s a - s(a) t_s = k<a, a^vee>, tau~_s^2 = k^2 - a^2."""
    d = a1
    tau = tau_factor(d, 0)
    a = AlgebraElement.root(d, 0)
    k = d.k[0]
    assert multiply(tau, tau) == AlgebraElement.one(d).scale(k * k) - multiply(a, a)


def test_tau_intertwines(b2):
    """tau~_w v = w(v) tau~_w."""
    for w in b2.W:
        tau = tau_tilde(b2, w)
        for j in range(b2.n):
            e = [1 if a == j else 0 for a in range(b2.n)]
            lhs = multiply(tau, AlgebraElement.vec(b2, e))
            rhs = multiply(AlgebraElement.vec(b2, w.act(e)), tau)
            assert lhs == rhs


def test_push_variable(a1):
    s = a1.s(0)
    x = push_variable(a1, [1], s)
    assert x == multiply(AlgebraElement.root(a1, 0), AlgebraElement.t(a1, s))
