"""Finite-dimensional modules: relations, weights, Hom spaces, radicals."""
import pytest

from ghfilt import cases
from ghfilt.exact import Mat, Q
from ghfilt.modrep import (NoOneDimModule, NotPerpendicular, RelationViolated, bullet_dual, chain_module,
                           composition_factors, deform, direct_sum, fingerprint, hom_space, is_indecomposable,
                           is_irreducible, is_isomorphic, is_tempered, is_discrete_series, make_module,
                           one_dim_module, radical_series, tensor_with_character, weights)


def test_relations_are_checked(b2):
    with pytest.raises(RelationViolated):
        make_module(b2, ["alpha"], {"alpha": [[1, 0], [0, -1]]}, [[[0, 0], [1, 0]], [[2, 0], [-1, 2]]])


def test_b2_module_is_tempered_indecomposable(b2):
    U = cases.b2_U()
    ok, nu = is_tempered(U)
    assert ok and nu == (0, 2)
    assert is_indecomposable(U)
    assert is_irreducible(U)
    assert not is_discrete_series(U)


def test_weights_with_multiplicity(b2):
    table = weights(cases.b2_U())
    assert table.multiset() == [(("0", "2"), 2)]


def test_one_dim_scalar_condition(b2):
    with pytest.raises(NoOneDimModule):
        one_dim_module(b2, ["alpha"], (1, 0))
    C = one_dim_module(b2, ["alpha"], (-2, 3))
    assert C.refl[0] == Mat([[-1]])


def test_deform_needs_perpendicular_direction(b2):
    with pytest.raises(NotPerpendicular):
        deform(cases.b2_U(), (1, 0))
    Ut = deform(cases.b2_U(), (0, 1))
    assert Ut.field == "Qt"


def test_tensor_with_character_shifts_weights(b2):
    V = tensor_with_character(cases.b2_U(), (0, 1))
    assert weights(V).multiset() == [(("0", "3"), 2)]


def test_chain_module_is_indecomposable(a1):
    U2 = chain_module(cases.a1_U(), 2, cases.A1_ETA)
    assert U2.dim == 2
    assert is_indecomposable(U2)
    assert len(composition_factors(U2)) == 2


def test_hom_space_dimensions(a1):
    U = cases.a1_U()
    assert hom_space(direct_sum(U, U), U).dim == 2
    assert hom_space(U, one_dim_module(a1, [], (2,))).dim == 0
    assert is_isomorphic(U, U.with_label("copy"))


def test_bullet_dual_of_character(b2):
    Z = cases.b2_Z()
    assert is_isomorphic(bullet_dual(Z), Z)


def test_radical_series_of_direct_sum_is_trivial(a1):
    M = direct_sum(cases.a1_U(), one_dim_module(a1, [], (3,)))
    chain, R = radical_series(M)
    assert [B.ncols for B in chain] == [2, 0]


def test_fingerprints_distinguish_T1_and_Z(b2):
    fz, ft = fingerprint(cases.b2_Z()), fingerprint(cases.b2_T1())
    assert fz != ft
    assert fz.dim == ft.dim == 1
