from fractions import Fraction

import pytest

from src.models.report import CentralizerStrategy
from src.services import identities
from src.services.catalog import resolve_system
from src.services.ideal_lab import (
    check_leading_term,
    commutator_with_generator,
    compare_strategies,
    leading_commutator_prediction,
    lemma_suite,
    so3_condition_det,
    so3_condition_matrix,
    truncated_centralizer,
)
from src.services.lts import TernarySystem
from src.services.star_uea import StarSession


@pytest.mark.parametrize("npq, expected", [((0, 0, 0), 16), ((1, 0, 0), 96), ((0, 1, 0), 96), ((1, 1, 1), 2 * 27 * 16)])
def test_so3_determinant_values(npq, expected):
    _, det, formula = so3_condition_det(*npq)
    assert det == formula == expected


def test_so3_determinant_formula_up_to_degree_eight():
    for n in range(9):
        for p in range(9 - n):
            for q in range(9 - n - p):
                _, det, formula = so3_condition_det(n, p, q)
                assert det == formula, (n, p, q)


def test_so3_condition_matrix_rows():
    M = so3_condition_matrix(0, 0, 0)
    assert M.to_dense() == [[0, 2, 2], [2, 0, 2], [2, 2, 0]]
    with pytest.raises(ValueError):
        so3_condition_det(-1, 0, 0)


def test_commutator_with_generator_in_s2(s2_session):
    # [e^2, f] = 2e
    assert commutator_with_generator(s2_session, (0, 0), 1) == {(0,): 2}
    assert commutator_with_generator(s2_session, (0,), 1) == {}


def test_centralizer_of_abelian_is_everything(sessions):
    report = truncated_centralizer(sessions("abelian(1)"), 3)
    assert report.dim == 4
    assert not report.verdict
    assert report.checks[0].passed


def test_centralizer_of_s2(s2_session):
    report = truncated_centralizer(s2_session, 3)
    assert report.dim == 3
    assert report.verdict
    assert all(u.degree() <= 1 for u in report.basis)
    assert report.note == "bounded-degree evidence, not a proof"


@pytest.mark.parametrize("degree", [2, 3])
def test_centralizer_of_so3(so3_session, degree):
    report = truncated_centralizer(so3_session, degree)
    assert report.dim == 4
    assert report.verdict


@pytest.mark.slow
@pytest.mark.parametrize("degree", [4, 5])
def test_centralizer_of_so3_high_degree(so3_session, degree):
    report = truncated_centralizer(so3_session, degree)
    assert report.dim == 4
    assert report.verdict


def test_centralizer_strategies_agree(s2_session):
    full = truncated_centralizer(s2_session, 2, CentralizerStrategy.FULL)
    assert full.dim == 3
    assert full.unknowns == 6
    assert compare_strategies(s2_session, 2).passed


def test_centralizer_rejects_zero_degree(s2_session):
    with pytest.raises(ValueError):
        truncated_centralizer(s2_session, 0)


def test_leading_term_prediction_in_s2(s2_session):
    # [f, e^2]: 1/2 * 2 * [f, e, e] = -2e
    predicted = leading_commutator_prediction(s2_session, {1: 1}, (0, 0))
    assert predicted == s2_session.generator(0) * -2
    assert leading_commutator_prediction(s2_session, [0, 1], (0, 0)) == predicted


def test_leading_term_check(s2_session, so3_session):
    assert check_leading_term(s2_session, 3).passed
    assert check_leading_term(so3_session, 2).passed


def test_lemma_suite_on_s2(s2_session):
    results = lemma_suite(s2_session, 3, cases=3, seed=1)
    names = [r.name for r in results]
    assert names[0] == "commutator-s2"
    assert "kloop-division" in names
    assert all(r.passed for r in results), [r for r in results if not r.passed]


def test_lemma_suite_skips_s2_only_checks(so3_session):
    names = [r.name for r in lemma_suite(so3_session, 2, cases=2, seed=1)]
    assert "commutator-s2" not in names
    assert names[0] == "bracket-recovery"


def test_lemma_suite_recognises_s2_by_structure_constants():
    T = TernarySystem(2, resolve_system("S2").ternary, names=("u", "v"), label="custom")
    assert identities.s2_basis(T) == (0, 1)
    results = lemma_suite(StarSession(T), 3, cases=2, seed=1)
    assert results[0].name == "commutator-s2"
    assert results[0].passed


@pytest.mark.parametrize("name", ["S2tilde", "R2", "so3", "abelian(2)"])
def test_s2_basis_rejects_other_systems(name):
    assert identities.s2_basis(resolve_system(name)) is None
