"""Induced modules I(J, U) = H (x)_{H_J} U."""
import pytest

from ghfilt import cases
from ghfilt.exact import Q
from ghfilt.induce import (DimensionTooLarge, expected_census, frobenius_check, induce, restrict_decompose,
                           weight_census)
from ghfilt.modrep import composition_factors, is_indecomposable, is_irreducible, one_dim_module


def test_b2_standard_module_shape(b2):
    X = induce(b2, ["alpha"], cases.b2_U())
    assert X.dim == 8
    assert [b2.word_str(w) for w in X.coset_reps][0] in ("e", "")
    assert X.label_str(0).startswith("t[")
    table = weight_census(X)
    assert len(table) == 4 and all(e.multiplicity == 2 for e in table)


def test_restriction_split(b2):
    X = induce(b2, ["alpha"], cases.b2_U())
    split = restrict_decompose(X)
    assert split.u_block.dim == 2
    assert split.y_block.dim == 6
    assert frobenius_check(X)


@pytest.mark.parametrize("gamma,reducible", [((1,), True), ((-1,), True), ((3,), False), (("1/2",), False)])
def test_a1_principal_series_reducibility(a1, gamma, reducible):
    X = induce(a1, [], one_dim_module(a1, [], gamma))
    assert X.dim == 2
    assert is_irreducible(X.module) != reducible


def test_a2_principal_series(a2):
    X = induce(a2, [], cases.a2_U())
    assert X.dim == 6
    assert is_indecomposable(X.module)
    assert len(composition_factors(X.module)) == 2


def test_dimension_cap(b2, monkeypatch):
    monkeypatch.setenv("GHFILT_MAX_DIM", "4")
    with pytest.raises(DimensionTooLarge):
        induce(b2, ["alpha"], cases.b2_U())


def test_expected_census_matches(b2):
    X = induce(b2, ["alpha"], cases.b2_U())
    assert expected_census(X) == weight_census(X).multiset()
