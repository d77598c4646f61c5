import pytest

from src.services.catalog import (
    ALGEBRA_NAMES,
    algebra_catalog,
    bilinear,
    catalog,
    resolve_system,
)
from src.services.errors import StructureError


def test_s2_constants():
    S2 = resolve_system("S2")
    assert S2.names == ("e", "f")
    assert S2.basis_bracket(0, 1, 0) == {0: 2}
    assert S2.basis_bracket(0, 1, 1) == {1: -2}
    assert S2.basis_bracket(1, 0, 0) == {0: -2}


def test_r2_constants():
    R2 = resolve_system("R2")
    assert R2.basis_bracket(0, 1, 0) == {1: -1}
    assert R2.basis_bracket(0, 1, 1) == {}


def test_so3_from_lie_bracket():
    so3 = resolve_system("so3")
    # [[x,y],x] = [z,x] = y
    assert so3.basis_bracket(0, 1, 0) == {1: 1}
    assert so3.is_lts
    assert not resolve_system("so3-lie").is_lts


def test_bilinear_family():
    T = resolve_system("bilinear(3)")
    assert T.label == "bilinear(3)"
    assert T.names == ("x1", "x2", "x3")
    # [a,b,c] = (a,c)b - (b,c)a
    assert T.basis_bracket(0, 1, 0) == {1: 1}
    assert T.basis_bracket(0, 1, 1) == {0: -1}
    assert T.basis_bracket(0, 1, 2) == {}


def test_bilinear_custom_form_label():
    assert bilinear([[2, 0], [0, 1]]).label == "bilinear(2,custom)"


@pytest.mark.parametrize("form", [[[1, 1], [0, 1]], [[1, 1], [1, 1]], []])
def test_bilinear_rejects_bad_forms(form):
    with pytest.raises(StructureError):
        bilinear(form)


def test_direct_sum_renames_clashes():
    T = resolve_system("direct_sum(abelian(1),abelian(1))")
    assert T.dim == 2
    assert T.names == ("a1", "a1'")
    S = resolve_system("direct_sum(S2,abelian(1))")
    assert S.dim == 3
    assert S.basis_bracket(0, 1, 0) == {0: 2}
    assert S.basis_bracket(0, 2, 0) == {}


def test_catalog_params():
    assert catalog("abelian", {"n": 3}).dim == 3
    assert catalog("bilinear", {"n": 2}).dim == 2
    with pytest.raises(StructureError):
        catalog("direct_sum", {"left": "S2"})


@pytest.mark.parametrize("text", ["nosuch", "bilinear(x)", "abelian(1,2)", "so3)"])
def test_resolve_rejects_unknown(text):
    with pytest.raises(StructureError):
        resolve_system(text)


@pytest.mark.parametrize("name", ALGEBRA_NAMES)
def test_algebras_are_unital(name):
    A = algebra_catalog(name)
    for i in range(A.dim):
        e = A.basis(i)
        assert A.multiply(A.unit, e) == e
        assert A.multiply(e, A.unit) == e


def test_octonions_are_not_associative():
    O = algebra_catalog("octonions")
    e1, e2, e4 = O.basis(1), O.basis(2), O.basis(4)
    assert O.multiply(e1, e2) == {4: 1}
    assert O.associator(e1, e2, O.basis(3))
    assert O.multiply(e4, e4) == {0: -1}


def test_unknown_algebra():
    with pytest.raises(StructureError):
        algebra_catalog("sedenions")
