from fractions import Fraction

import pytest

from src.services.catalog import resolve_system
from src.services.errors import AmbientMismatchError, NotInSubalgebraError, StructureError
from src.services.identities import check_normalization
from src.services.star_uea import (
    StarSession,
    UVTensor,
    associator,
    delta_map,
    embed_uv_monomial,
    format_uv,
    left_divide,
    q_map,
    r_map,
    right_unit_divide,
    s_automorphism,
    star_product,
    uv_coproduct,
    uv_coproduct_via_envelope,
    uv_counit,
    uv_monomials,
    uv_normalize,
)

# envelope indices inside an S2 session: D_{e,f} = 0, e = 1, f = 2


def test_uv_monomials_order():
    assert uv_monomials(2, 2) == [(), (0,), (1,), (0, 0), (0, 1), (1, 1)]
    assert uv_monomials(2, 2, 2) == [(0, 0), (0, 1), (1, 1)]


def test_session_layout(s2_session):
    assert s2_session.embedding == (1, 2)
    assert s2_session.offset == 1
    # envelope of (V, 4[ , , ])
    assert s2_session.table.basis_bracket(0, 1) == {1: 8}


def test_session_rejects_binary_bracket():
    with pytest.raises(StructureError):
        StarSession(resolve_system("so3-lie"))


def test_q_on_generator_powers(s2_session):
    for n in range(1, 4):
        assert s2_session.q_monomial((1,) * n) == {(1,) * n: 2**n}


def test_r_on_generator_powers(s2_session):
    assert s2_session.r_monomial((1,)) == {(1,): Fraction(1, 2)}
    assert s2_session.r_monomial((1, 1)) == {(1, 1): Fraction(1, 4)}
    assert s2_session.r_monomial(()) == {(): 1}


def test_r_inverts_q(s2_session):
    algebra = s2_session.algebra
    e, f = algebra.generator(1), algebra.generator(2)
    for x in (e * f, f * e * e, algebra.generator(0) * f + e):
        assert r_map(s2_session, q_map(s2_session, x)) == x
        assert q_map(s2_session, r_map(s2_session, x)) == x


def test_star_with_generator_is_symmetrised(s2_session):
    algebra = s2_session.algebra
    e, f = algebra.generator(1), algebra.generator(2)
    assert star_product(s2_session, e, f) == (e * f + f * e) * Fraction(1, 2)


def test_embed_symmetrises(s2_session):
    # e*f = (ef + fe)/2 = ef - [e, f]/2
    assert s2_session.embed_terms((0, 1)) == {(1, 2): 1, (0,): Fraction(-1, 2)}
    assert embed_uv_monomial(s2_session, (0, 0)).terms == {(1, 1): 1}


def test_generators_commute(s2_session):
    e, f = s2_session.generator(0), s2_session.generator(1)
    assert f * e == e * f == s2_session.element({(0, 1): 1})


def test_bracket_is_recovered(s2_session):
    e, f = s2_session.generator(0), s2_session.generator(1)
    # a(bc) - b(ac) = [a, b, c] with [e, f, e] = 2e
    assert e * (f * e) - f * (e * e) == 2 * e


def test_normalize_peel_and_solve_agree(s2_session):
    x = s2_session.element({(0, 0, 1): 2, (1,): Fraction(1, 3), (): -1})
    image = s2_session.embed(x)
    assert uv_normalize(s2_session, image) == x
    assert uv_normalize(s2_session, image, method="peel") == x


def test_normalize_rejects_derivation_generator(s2_session):
    with pytest.raises(NotInSubalgebraError):
        uv_normalize(s2_session, s2_session.envelope_generator(0))
    with pytest.raises(NotInSubalgebraError):
        uv_normalize(s2_session, s2_session.envelope_generator(0), method="peel")
    with pytest.raises(ValueError):
        uv_normalize(s2_session, s2_session.envelope_generator(1), method="guess")


def test_s_automorphism(s2_session):
    e = s2_session.generator(0)
    assert s_automorphism(e) == -e
    assert s_automorphism(e * e + 1) == e * e + 1
    assert right_unit_divide(e + 2) == 2 - e


def test_left_division_undoes_multiplication(s2_session):
    e, f = s2_session.generator(0), s2_session.generator(1)
    assert left_divide(e, s2_session.one()) == -e
    x = e * e + f + 2
    y = f * e + 3
    undo = s2_session.zero()
    for x1, x2, c in uv_coproduct(x).pairs():
        undo = undo + left_divide(x1, x2 * y) * c
    assert undo == y * uv_counit(x)


def test_coproduct_of_square(s2_session):
    e2 = s2_session.power(0, 2)
    expected = UVTensor(s2_session, {((0, 0), ()): 1, ((0,), (0,)): 2, ((), (0, 0)): 1})
    assert uv_coproduct(e2) == expected
    assert uv_coproduct_via_envelope(e2) == expected


def test_coproduct_closed_form_matches_envelope(s2_session):
    x = s2_session.element({(0, 1): 1, (0, 0, 1): -2, (1,): 5})
    assert uv_coproduct(x) == uv_coproduct_via_envelope(x)


def test_counit(s2_session):
    assert uv_counit(s2_session.generator(0) + Fraction(7, 2)) == Fraction(7, 2)


def test_delta_on_generators_is_half_bracket(s2_session):
    e, f = s2_session.generator(0), s2_session.generator(1)
    # delta_{e,f}(e) = [e,f,e]/2 = e = -(e, f, e)
    assert delta_map(e, f, e) == e
    assert delta_map(e, f, e) == -associator(e, f, e)


def test_uv_is_not_associative(s2_session):
    e, f = s2_session.generator(0), s2_session.generator(1)
    assert not associator(e, f, e).is_zero()


def test_abelian_envelope_is_polynomial_ring(sessions):
    session = sessions("abelian(2)")
    a, b = session.generator(0), session.generator(1)
    assert (a * b) * a == a * (b * a) == session.element({(0, 0, 1): 1})
    assert associator(a * a, b, a).is_zero()


def test_format_uv(s2_session):
    x = s2_session.element({(0, 1): 1, (): Fraction(1, 2), (1,): -3})
    assert format_uv(x) == "1/2 + -3 f + e.f"
    assert format_uv(s2_session.zero()) == "0"


def test_elements_of_different_sessions_do_not_mix(s2_session, so3_session):
    with pytest.raises(AmbientMismatchError):
        s2_session.generator(0) * so3_session.generator(0)


def test_monomials_must_be_sorted(s2_session):
    with pytest.raises(StructureError):
        s2_session.element({(1, 0): 1})


@pytest.mark.parametrize(
    "name", ["S2", "S2tilde", "R2", "so3", "bilinear(3)", "abelian(2)", "direct_sum(S2,abelian(1))"]
)
def test_normalization_strategies_agree_on_catalog(sessions, rng, name):
    result = check_normalization(sessions(name), rng, 4, 2)
    assert result.passed, result.witness
