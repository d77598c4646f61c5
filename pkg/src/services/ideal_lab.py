"""Bounded-degree evidence about ideals of U(V): centralizers of V, the
leading term of [a, r], the so(3) determinant and a suite of the basic
identities.
"""

import logging
import random
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from src.models.report import CentralizerReport, CentralizerStrategy, CheckResult
from src.services import identities
from src.services.lie_uea import add_terms
from src.services.linalg import Matrix, as_scalar, determinant, nullspace, sparse_from_dense
from src.services.lts import SubspaceBasis
from src.services.star_uea import StarSession, UVElement, UVKey, uv_monomials
from src.utils.config import config
from src.utils.logger import log_check_result

logger = logging.getLogger(__name__)


def commutator_with_generator(session: StarSession, key: UVKey, i: int) -> Dict[UVKey, Fraction]:
    """[m, a_i] = m a_i - a_i m in UV coordinates."""
    out = session.multiply_monomials(key, (i,))
    add_terms(out, session.multiply_monomials((i,), key), -1)
    return out


def _kernel(session: StarSession, keys: Sequence[UVKey], top_degree: Optional[int] = None) -> List[Dict[UVKey, Fraction]]:
    """Combinations of ``keys`` commuting with every generator; with
    ``top_degree`` only that homogeneous component of the commutator counts."""
    rows: Dict[Tuple[int, UVKey], int] = {}
    columns = []
    for key in keys:
        column = {}
        for i in range(session.dim):
            for k, v in commutator_with_generator(session, key, i).items():
                if top_degree is not None and len(k) != top_degree:
                    continue
                column[rows.setdefault((i, k), len(rows))] = v
        columns.append(column)
    M = Matrix.from_columns(max(len(rows), 1), columns)
    return [
        {key: c for key, c in zip(keys, vector) if c}
        for vector in nullspace(M)
    ]


def truncated_centralizer(
    session: StarSession,
    degree: int,
    strategy: Union[str, CentralizerStrategy] = CentralizerStrategy.GRADED,
) -> CentralizerReport:
    """Basis of {u in U(V) of degree <= N : ua = au for all a in V}.

    The graded strategy walks down from N: since [a, U_n] lies in U_{n-1},
    the top coefficients only meet the degree n-1 part of the commutator.
    Once that homogeneous system has solutions it falls back to the full
    system on everything left.
    """
    if degree < 1:
        raise ValueError("degree bound must be >= 1")
    strategy = CentralizerStrategy(strategy)
    n = session.dim
    top = degree
    if strategy == CentralizerStrategy.GRADED:
        while top >= 1:
            keys = uv_monomials(n, top, top)
            homogeneous = _kernel(session, keys, top_degree=top - 1)
            logger.debug(f"{session.system.label}: degree {top} top-component kernel dim {len(homogeneous)}")
            if homogeneous:
                break
            top -= 1
    keys = uv_monomials(n, max(top, 0))
    basis_terms = _kernel(session, keys) if top >= 1 else [{(): Fraction(1)}]
    basis = [UVElement(session, terms) for terms in basis_terms]

    checks = [_soundness(session, basis)]
    dim = len(basis)
    verdict = dim == 1 + n and all(u.degree() <= 1 for u in basis)
    log_check_result(f"centralizer({session.system.label}, N={degree})", verdict)
    return CentralizerReport(
        system=session.system.label,
        degree=degree,
        dim=dim,
        verdict=verdict,
        strategy=strategy,
        unknowns=len(keys),
        checks=checks,
        basis=basis,
    )


def _soundness(session: StarSession, basis: Sequence[UVElement]) -> CheckResult:
    for index, u in enumerate(basis):
        for i in range(session.dim):
            a = session.generator(i)
            if u * a != a * u:
                return CheckResult(name="centralizer-sound", passed=False, witness=[index, i])
    return CheckResult(name="centralizer-sound", passed=True)


def leading_commutator_prediction(
    session: StarSession, a: Union[Sequence, Mapping[int, object]], key: UVKey
) -> UVElement:
    """1/2 sum_{i,j} [a, x_i, x_j] d_i d_j m with commutative derivatives."""
    T = session.system
    a = {int(k): as_scalar(v) for k, v in a.items()} if isinstance(a, Mapping) else sparse_from_dense(a)
    counts: Dict[int, int] = {}
    for g in key:
        counts[g] = counts.get(g, 0) + 1
    out: Dict[UVKey, Fraction] = {}
    for i, ci in counts.items():
        for j, cj in counts.items():
            if i == j:
                if ci < 2:
                    continue
                coef = ci * (ci - 1)
            else:
                coef = ci * cj
            rest = list(key)
            rest.remove(i)
            rest.remove(j)
            for l, v in T.bracket(a, T.basis(i), T.basis(j)).items():
                add_terms(out, {tuple(sorted(rest + [l])): Fraction(coef) * v / 2})
    return UVElement(session, out)


def leading_term_residual(session: StarSession, i: int, key: UVKey) -> UVElement:
    """(a m - m a) minus the predicted leading term, for a = a_i."""
    a = session.generator(i)
    m = session.element({key: 1})
    actual = a * m - m * a
    return actual - leading_commutator_prediction(session, {i: 1}, key)


def check_leading_term(session: StarSession, max_degree: int) -> CheckResult:
    """The prediction is exact on the two top degrees of every monomial up to ``max_degree``."""
    name = "partial-derivative-leading"
    for key in uv_monomials(session.dim, max_degree, 1):
        for i in range(session.dim):
            residual = leading_term_residual(session, i, key)
            if residual.degree() > len(key) - 2:
                witness = {"a": i, "m": list(key), "residual": repr(residual)}
                log_check_result(name, False, witness)
                return CheckResult(name=name, passed=False, witness=witness)
    log_check_result(name, True)
    return CheckResult(name=name, passed=True, detail=f"monomials of degree <= {max_degree}")


def compare_strategies(session: StarSession, degree: int) -> CheckResult:
    """Graded and full solves span the same centralizer."""
    graded = truncated_centralizer(session, degree, CentralizerStrategy.GRADED)
    full = truncated_centralizer(session, degree, CentralizerStrategy.FULL)
    keys = uv_monomials(session.dim, degree)
    index = {key: i for i, key in enumerate(keys)}

    def span(report: CentralizerReport) -> SubspaceBasis:
        return SubspaceBasis(len(keys), ({index[k]: c for k, c in u.terms.items()} for u in report.basis))

    passed = span(graded) == span(full)
    witness = None if passed else {"graded": graded.dim, "full": full.dim}
    log_check_result("centralizer-strategies", passed, witness)
    return CheckResult(name="centralizer-strategies", passed=passed, witness=witness)


def so3_condition_matrix(n: int, p: int, q: int) -> Matrix:
    return Matrix.from_rows(
        [
            [-(p + q) * (n + 2), (p + 1) * (p + 2), (q + 1) * (q + 2)],
            [(n + 1) * (n + 2), -(n + q) * (p + 2), (q + 1) * (q + 2)],
            [(n + 1) * (n + 2), (p + 1) * (p + 2), -(n + p) * (q + 2)],
        ]
    )


def so3_condition_det(n: int, p: int, q: int) -> Tuple[Matrix, Fraction, Fraction]:
    """Condition matrix on the z^n x^p y^q coefficients, its determinant and
    2(n+2)(p+2)(q+2)(n+p+q+1)^2."""
    if min(n, p, q) < 0:
        raise ValueError("exponents must be nonnegative")
    M = so3_condition_matrix(n, p, q)
    det = determinant(M)
    formula = Fraction(2 * (n + 2) * (p + 2) * (q + 2) * (n + p + q + 1) ** 2)
    if det != formula:
        logger.warning(f"so3 determinant mismatch at {(n, p, q)}: {det} != {formula}")
    return M, det, formula


def lemma_suite(
    session: StarSession,
    bound: int,
    cases: Optional[int] = None,
    seed: Optional[int] = None,
) -> List[CheckResult]:
    """Applicable identity checks for one system up to degree/exponent ``bound``."""
    rng = random.Random(config.RANDOM_SEED if seed is None else seed)
    cases = cases or config.RANDOM_CASES
    degree = min(bound, 3)
    results: List[CheckResult] = []
    pair = identities.s2_basis(session.system)
    if pair is not None:
        results.append(identities.check_commutator_s2(session, bound, pair))
    results.append(identities.check_bracket_recovery(session))
    results.append(identities.check_leftmult_powers(session, rng, cases, min(bound, 6), degree))
    results.append(identities.check_bol_hopf(session, rng, cases, degree))
    results.append(identities.check_left_alternative(session, rng, cases, degree))
    results.append(identities.check_division(session, rng, cases, degree))
    results.append(identities.check_delta_bracket(session, rng, cases, degree))
    return results


