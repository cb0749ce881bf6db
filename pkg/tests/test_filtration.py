"""Jantzen, radical and socle filtrations; bad directions; Ext^1."""
import pytest

from ghfilt import cases
from ghfilt.exact import INF, Q, same_span
from ghfilt.filtration import (ASSUMED, UNVERIFIED, VERIFIED, bad_space_probe, chain_theorem_check,
                               ext1_cross_dim, ext1_self_dim, is_bad_direction, jantzen, jf,
                               radical_filtration, socle_filtration)
from ghfilt.induce import induce
from ghfilt.modrep import fingerprint, one_dim_module
from ghfilt.oracles import sorted_exponents


@pytest.fixture(scope="module")
def b2_jf():
    return jantzen(cases.b2(), ["alpha"], cases.b2_U(), cases.B2_ETA)


def test_b2_jantzen(b2_jf):
    assert sorted_exponents(b2_jf.snf_exponents) == [0, 0, 0, 1, 2, 3, 3, 3]
    assert b2_jf.layer_dims == (3, 1, 1, 3)
    assert b2_jf.stabilized_tail_dim == 0
    assert jf(b2_jf, 10).ncols == 0


def test_jantzen_with_zero_direction():
    rep = jantzen(cases.b2(), ["alpha"], cases.b2_U(), (0, 0))
    assert rep.layer_dims == (3,)
    assert rep.stabilized_tail_dim == 5


def test_a1_principal_series_jantzen(a1):
    rep = jantzen(a1, [], one_dim_module(a1, [], (1,)), (1,))
    assert rep.layer_dims == (1, 1)


def test_radical_and_socle_b2(b2_jf):
    X = b2_jf.module
    rad = radical_filtration(X)
    soc = socle_filtration(X)
    assert rad.layer_dims == (3, 2, 3)
    assert soc.layer_dims == (3, 2, 3)
    # top of the radical filtration is the Langlands quotient, as for the Jantzen filtration
    assert rad.layers[0].factors == b2_jf.layers[0].factors


def test_radical_of_irreducible_is_single_layer(a1):
    X = induce(a1, [], one_dim_module(a1, [], (3,)))
    assert radical_filtration(X.module).layer_dims == (2,)


def test_a2_directions(a2):
    U = cases.a2_U()
    assert is_bad_direction(a2, [], U, cases.A2_BAD)
    assert not is_bad_direction(a2, [], U, cases.A2_GOOD)


def test_bad_probe_is_closed(a2):
    pr = bad_space_probe(a2, [], cases.a2_U(), [cases.A2_BAD, cases.A2_GOOD, (Q(3), Q(0))])
    assert pr.closure_violations == []
    assert pr.span_dim == 1


def test_ext1_self_statuses(a1, b2):
    res = ext1_self_dim(a1, [], one_dim_module(a1, [], (1,)))
    assert res.status == VERIFIED
    assert res.value == 0
    assert ext1_self_dim(b2, ["alpha"], cases.b2_U()).status == UNVERIFIED
    assumed = ext1_self_dim(b2, ["alpha"], cases.b2_U(), assume=True)
    assert assumed.status == ASSUMED and assumed.value == 0


def test_ext1_cross_b2(b2):
    Y = (b2.normalize_J(["alpha"]), cases.b2_U())
    assert ext1_cross_dim(b2, Y, cases.b2_Z_datum()).value == 1
    assert ext1_cross_dim(b2, Y, cases.b2_Z_datum()).case == "nu2<nu1"


def test_ext1_incomparable_parameters_vanish(b2):
    """Characters with nu = (1,4) and (3,1) (omega^vee coordinates) are incomparable."""
    d1 = ((), one_dim_module(b2, [], (1, 4)))
    d2 = ((), one_dim_module(b2, [], (3, 1)))
    res = ext1_cross_dim(b2, d1, d2)
    assert res.case == "incomparable"
    assert res.value == 0


@pytest.mark.parametrize("r", [2, 3])
def test_chain_check_b2(r):
    rep = chain_theorem_check(cases.b2(), ["alpha"], cases.b2_U(), cases.B2_ETA, r)
    assert rep.passed, rep.parts


def test_chain_check_a1():
    assert chain_theorem_check(cases.a1(), [], cases.a1_U(), cases.A1_ETA, 2).passed
