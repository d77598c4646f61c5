import pytest

from src.models.report import AxiomMode
from src.services.catalog import algebra_catalog
from src.services.errors import PreconditionViolatedError, StructureError
from src.services.lts import SubspaceBasis, check_axioms
from src.services.nucleus_lab import (
    FinAlgebra,
    generated_ideal,
    generated_subalgebra,
    has_no_nilpotents,
    is_nilpotent_subalgebra,
    jc_element,
    ln_alt,
    lnalt_membership_via_tder,
    malcev_system,
    n_alt,
    nuclei,
    theorem_decompose,
)


def _span(A, *vectors):
    return SubspaceBasis(A.dim, [A.vector(v) for v in vectors])


def test_unit_must_act_as_identity():
    with pytest.raises(StructureError):
        FinAlgebra(2, {(0, 0): {0: 1}}, unit=0)


@pytest.mark.parametrize(
    "name, nucleus_dim, center_dim",
    [("cubic", 3, 3), ("FxF", 2, 2), ("matrix2", 4, 1), ("octonions", 1, 1)],
)
def test_nuclei_dimensions(name, nucleus_dim, center_dim):
    found = nuclei(algebra_catalog(name))
    assert found.left.dim == found.middle.dim == found.right.dim == nucleus_dim
    assert found.center.dim == center_dim


def test_octonions_alternative_nuclei_are_everything():
    O = algebra_catalog("octonions")
    subspace, system = ln_alt(O)
    assert subspace.is_full()
    assert n_alt(O).is_full()
    assert check_axioms(system, AxiomMode.LTS).passed


def test_octonion_commutator_algebra_is_malcev():
    M = malcev_system(algebra_catalog("octonions"))
    assert M.dim == 8
    assert check_axioms(M, AxiomMode.MALCEV).passed


def test_lnalt_of_associative_algebra_is_full():
    A = algebra_catalog("matrix2")
    subspace, system = ln_alt(A)
    assert subspace.is_full()
    assert check_axioms(system, AxiomMode.LTS).passed
    assert lnalt_membership_via_tder(A, [0, 1, 0, 0])


@pytest.mark.parametrize(
    "name, v, a_s, a_n",
    [
        ("cubic", [0, 1, 0], [0, 0, 0], [0, 1, 0]),
        ("cubic", [2, 1, 0], [2, 0, 0], [0, 1, 0]),
        ("FxF", [1, -1], [1, -1], [0, 0]),
        ("idempotent", [0, 1], [0, 1], [0, 0]),
    ],
)
def test_jordan_chevalley_parts(name, v, a_s, a_n):
    assert jc_element(algebra_catalog(name), v) == (a_s, a_n)


def test_generated_subspaces_in_cubic():
    A = algebra_catalog("cubic")
    x = A.basis(1)
    assert generated_subalgebra(A, [x]).is_full()
    assert generated_subalgebra(A, [x], unital=False).dim == 2
    ideal = generated_ideal(A, [x])
    assert ideal == _span(A, [0, 1, 0], [0, 0, 1])
    assert is_nilpotent_subalgebra(A, ideal)
    assert not is_nilpotent_subalgebra(A, SubspaceBasis.full(3))


def test_trace_form_detects_nilpotents():
    A = algebra_catalog("cubic")
    assert has_no_nilpotents(A, _span(A, [1, 0, 0]))
    assert not has_no_nilpotents(A, SubspaceBasis.full(3))
    F = algebra_catalog("FxF")
    assert has_no_nilpotents(F, SubspaceBasis.full(2))


def test_decompose_cubic():
    A = algebra_catalog("cubic")
    report = theorem_decompose(A, _span(A, [0, 1, 0]))
    assert report.verdict, [c for c in report.checks if not c.passed]
    assert len(report.q_basis) == 1
    assert len(report.r_basis) == 2
    assert report.q_basis == [[[1, 1], [0, 1], [0, 1]]]


def test_decompose_fxf():
    A = algebra_catalog("FxF")
    report = theorem_decompose(A, _span(A, [1, -1]))
    assert report.verdict
    assert len(report.q_basis) == 2
    assert report.r_basis == []


def test_decompose_reports_failed_hypothesis():
    A = algebra_catalog("matrix2")
    V = _span(A, [0, 1, 0, 0])
    report = theorem_decompose(A, V, strict=False)
    assert not report.verdict
    failed = [c.name for c in report.checks if not c.passed]
    assert failed == ["V-generates-A"]
    assert "V-generates-A" in report.explanation


def test_decompose_strict_raises():
    A = algebra_catalog("matrix2")
    with pytest.raises(PreconditionViolatedError) as info:
        theorem_decompose(A, _span(A, [0, 1, 0, 0]))
    assert info.value.hypothesis == "V-generates-A"
