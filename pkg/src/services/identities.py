"""Identity checks on U(V), its Lie envelope and U(L).

Every check returns a ``CheckResult``; a failure carries the first witness
found. Random arguments are drawn from a caller-supplied ``random.Random``
so a run is reproducible from its seed.
"""

import logging
import math
import random
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Dict, List, Optional, Tuple

from src.models.report import CheckResult
from src.services.catalog import s2
from src.services.errors import StructureError
from src.services.lie_uea import Monomial, TensorElement, add_terms, coproduct, counit_terms, identity_terms
from src.services.linalg import Matrix, nullspace, rank
from src.services.lts import SubspaceBasis, TernarySystem
from src.services.star_uea import (
    StarSession,
    UVElement,
    UVKey,
    UVTensor,
    associator,
    delta_map,
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
from src.utils.config import config
from src.utils.helpers import random_assoc_element, random_uv_element
from src.utils.logger import log_check_result

logger = logging.getLogger(__name__)


def _finish(name: str, witness=None, detail: Optional[str] = None) -> CheckResult:
    passed = witness is None
    log_check_result(name, passed, witness)
    return CheckResult(name=name, passed=passed, witness=witness, detail=detail)


def _sample(session: StarSession, rng: random.Random, degree: int) -> UVElement:
    return random_uv_element(session, rng, degree, config.RANDOM_MAX_TERMS)


def _index(session: StarSession, name: str) -> int:
    return list(session.system.names).index(name)


def _generators(session: StarSession) -> List[UVElement]:
    return [session.generator(i) for i in range(session.dim)]


def _tensor(session: StarSession, pairs) -> UVTensor:
    """Sum of c * (u (x) v) over (u, v, c) with u, v in U(V)."""
    out: Dict[Tuple[UVKey, UVKey], Fraction] = {}
    for u, v, c in pairs:
        for l, a in u.terms.items():
            for r, b in v.terms.items():
                add_terms(out, {(l, r): a * b}, c)
    return UVTensor(session, out)


# ------------------------------------------------------------- commutators


def iterated_commutator(x: UVElement, a: UVElement, times: int) -> UVElement:
    """[...[[x, a], a], ..., a] with ``times`` commutations."""
    for _ in range(times):
        x = x * a - a * x
    return x


def iterated_commutator_expectations(label: str, n: int) -> Fraction:
    """Closed-form coefficient of the n-fold commutator in R2 and S2."""
    if label == "R2":
        return Fraction(math.factorial(n), 2**n)
    if label == "S2":
        return Fraction(math.factorial(n) * math.factorial(n - 1))
    raise ValueError(f"no closed form for system '{label}'")


def s2_basis(T: TernarySystem) -> Optional[Tuple[int, int]]:
    """Basis indices (e, f) under which T has the structure constants of S2, or None."""
    if T.dim != 2 or T.binary:
        return None
    reference = s2().ternary
    for relabel in ((0, 1), (1, 0)):
        image = {
            tuple(relabel[i] for i in key): {relabel[l]: c for l, c in vector.items()}
            for key, vector in reference.items()
        }
        if image == T.ternary:
            return relabel
    return None


def _s2_pair(session: StarSession, pair: Optional[Tuple[int, int]]) -> Tuple[int, int]:
    pair = pair or s2_basis(session.system)
    if pair is None:
        raise StructureError(f"{session.system.label} is not isomorphic to S2 by a relabelling of its basis")
    return pair


def commutator_s2_rows(
    session: StarSession, max_n: int, pair: Optional[Tuple[int, int]] = None
) -> List[Tuple[int, UVElement, UVElement]]:
    """(n, [e^n, f], n(n-1) e^(n-1)) for n = 1..max_n."""
    e, f = _s2_pair(session, pair)
    fe = session.generator(f)
    rows = []
    for n in range(1, max_n + 1):
        en = session.power(e, n)
        rows.append((n, en * fe - fe * en, session.power(e, n - 1) * (n * (n - 1))))
    return rows


def check_commutator_s2(session: StarSession, max_n: int, pair: Optional[Tuple[int, int]] = None) -> CheckResult:
    name = "commutator-s2"
    for n, lhs, rhs in commutator_s2_rows(session, max_n, pair):
        if lhs != rhs:
            return _finish(name, witness={"n": n, "lhs": repr(lhs), "rhs": repr(rhs)})
    return _finish(name, detail=f"[e^n, f] = n(n-1) e^(n-1) for n = 1..{max_n}")


def check_iterated_commutator_r2(session: StarSession, max_n: int) -> CheckResult:
    """n commutations of a^n b with a leave n!/2^n b."""
    name = "iterated-commutator-r2"
    a_index, b_index = _index(session, "a"), _index(session, "b")
    a, b = session.generator(a_index), session.generator(b_index)
    for n in range(1, max_n + 1):
        result = iterated_commutator(session.power(a_index, n) * b, a, n)
        expected = b * iterated_commutator_expectations("R2", n)
        if result != expected:
            return _finish(name, witness={"n": n, "result": repr(result), "expected": repr(expected)})
    return _finish(name, detail=f"n = 1..{max_n}")


def check_iterated_commutator_s2(session: StarSession, max_n: int) -> CheckResult:
    name = "iterated-commutator-s2"
    e_index, f_index = _s2_pair(session, None)
    e, f = session.generator(e_index), session.generator(f_index)
    for n in range(1, max_n + 1):
        result = iterated_commutator(session.power(e_index, n), f, n - 1)
        expected = e * iterated_commutator_expectations("S2", n)
        if result != expected:
            return _finish(name, witness={"n": n, "result": repr(result), "expected": repr(expected)})
    return _finish(name, detail=f"n = 1..{max_n}")


def check_bilinear_casimir(session: StarSession) -> CheckResult:
    """sum x_i x_i over an orthonormal basis is not central once dim V >= 2."""
    name = "bilinear-casimir"
    n = session.dim
    casimir = session.element({(i, i): 1 for i in range(n)})
    noncentral = [i for i, a in enumerate(_generators(session)) if casimir * a != a * casimir]
    if n >= 2 and not noncentral:
        return _finish(name, witness={"dim": n}, detail="casimir commutes with every generator")
    return _finish(name, detail=f"fails to commute with generators {noncentral}")


# -------------------------------------------------------- bracket identities


def check_bracket_recovery(session: StarSession) -> CheckResult:
    """ab = ba and a(bc) - b(ac) - c(ab) + c(ba) = [a, b, c] on the basis."""
    name = "bracket-recovery"
    T = session.system
    g = _generators(session)
    n = session.dim
    for i in range(n):
        for j in range(i + 1, n):
            if g[i] * g[j] != g[j] * g[i]:
                return _finish(name, witness=[i, j], detail="generators do not commute")
    for i in range(n):
        for j in range(n):
            for k in range(n):
                lhs = g[i] * (g[j] * g[k]) - g[j] * (g[i] * g[k]) - g[k] * (g[i] * g[j]) + g[k] * (g[j] * g[i])
                if lhs != session.from_vector(T.basis_bracket(i, j, k)):
                    return _finish(name, witness=[i, j, k], detail=repr(lhs))
    return _finish(name)


def check_leftmult_powers(session: StarSession, rng: random.Random, cases: int, max_exp: int, degree: int) -> CheckResult:
    """L_{a^n} L_{a^m} = L_{a^(n+m)} on random x, for every basis a."""
    name = "leftmult"
    if max_exp < 2:
        return _finish(name, detail="exponent bound below 2, nothing to check")
    exponents = [(n, m) for n in range(1, max_exp) for m in range(1, max_exp - n + 1)]
    per_combo = max(1, cases // (len(exponents) * max(session.dim, 1)))
    for i in range(session.dim):
        for n, m in exponents:
            for _ in range(per_combo):
                x = _sample(session, rng, degree)
                lhs = session.power(i, n) * (session.power(i, m) * x)
                rhs = session.power(i, n + m) * x
                if lhs != rhs:
                    return _finish(name, witness={"a": i, "n": n, "m": m, "x": repr(x)})
    return _finish(name, detail=f"n + m <= {max_exp}, x of degree <= {degree}")


def check_bol_hopf(session: StarSession, rng: random.Random, cases: int, degree: int) -> CheckResult:
    """sum a1 (y (a2 z)) = sum (a1 (y a2)) z for basis a."""
    name = "bol-hopf"
    g = _generators(session)
    for case in range(cases):
        i = case % session.dim
        y, z = _sample(session, rng, degree), _sample(session, rng, degree)
        lhs = session.zero()
        rhs = session.zero()
        for a1, a2, c in uv_coproduct(g[i]).pairs():
            lhs = lhs + a1 * (y * (a2 * z)) * c
            rhs = rhs + (a1 * (y * a2)) * z * c
        if lhs != rhs:
            return _finish(name, witness={"a": i, "y": repr(y), "z": repr(z)})
    return _finish(name, detail=f"{cases} cases, degree <= {degree}")


def check_left_alternative(session: StarSession, rng: random.Random, cases: int, degree: int) -> CheckResult:
    name = "left-alternative"
    g = _generators(session)
    for case in range(cases):
        i = case % session.dim
        y, z = _sample(session, rng, degree), _sample(session, rng, degree)
        if associator(g[i], y, z) != -associator(y, g[i], z):
            return _finish(name, witness={"a": i, "y": repr(y), "z": repr(z)})
    return _finish(name, detail=f"{cases} cases, degree <= {degree}")


def check_division(session: StarSession, rng: random.Random, cases: int, degree: int) -> CheckResult:
    """x\\1 = S(x) and both division axioms against the counit."""
    name = "kloop-division"
    one = session.one()
    for _ in range(cases):
        x, y = _sample(session, rng, degree), _sample(session, rng, degree)
        if right_unit_divide(x) != s_automorphism(x) or left_divide(x, one) != s_automorphism(x):
            return _finish(name, witness={"x": repr(x)}, detail="x\\1 differs from S(x)")
        expected = y * uv_counit(x)
        undo = session.zero()
        redo = session.zero()
        for x1, x2, c in uv_coproduct(x).pairs():
            undo = undo + left_divide(x1, x2 * y) * c
            redo = redo + x1 * left_divide(x2, y) * c
        if undo != expected or redo != expected:
            return _finish(name, witness={"x": repr(x), "y": repr(y)})
    return _finish(name, detail=f"{cases} cases, degree <= {degree}")


def check_leftmult_commutator(session: StarSession, rng: random.Random, cases: int, degree: int) -> CheckResult:
    """[L_a, L_b] x = -2 (a, b, x)."""
    name = "leftmult-commutator"
    g = _generators(session)
    for _ in range(cases):
        i, j = rng.randrange(session.dim), rng.randrange(session.dim)
        x = _sample(session, rng, degree)
        lhs = g[i] * (g[j] * x) - g[j] * (g[i] * x)
        if lhs != associator(g[i], g[j], x) * -2:
            return _finish(name, witness={"a": i, "b": j, "x": repr(x)})
    return _finish(name, detail=f"{cases} cases, degree <= {degree}")


def check_filtration_drop(session: StarSession, rng: random.Random, cases: int, degree: int) -> CheckResult:
    name = "commutator-filtration"
    g = _generators(session)
    for case in range(cases):
        i = case % session.dim
        x = _sample(session, rng, degree)
        bracket = g[i] * x - x * g[i]
        if bracket.degree() > x.degree() - 1:
            return _finish(name, witness={"a": i, "x": repr(x), "degree": bracket.degree()})
    return _finish(name, detail=f"{cases} cases, degree <= {degree}")


def check_derivation_commutator(session: StarSession, rng: random.Random, cases: int, degree: int) -> CheckResult:
    """[L_a, L_b] is a derivation of U(V)."""
    name = "leftmult-derivation"
    g = _generators(session)
    for _ in range(cases):
        i, j = rng.randrange(session.dim), rng.randrange(session.dim)

        def D(u: UVElement) -> UVElement:
            return g[i] * (g[j] * u) - g[j] * (g[i] * u)

        x, y = _sample(session, rng, degree), _sample(session, rng, degree)
        if D(x * y) != D(x) * y + x * D(y):
            return _finish(name, witness={"a": i, "b": j, "x": repr(x), "y": repr(y)})
    return _finish(name, detail=f"{cases} cases, degree <= {degree}")


# ------------------------------------------------------------------ deltas


def check_delta_bracket(session: StarSession, rng: random.Random, cases: int, degree: int) -> CheckResult:
    """delta_{a,b}(c) = 1/2 [a, b, c] on the basis and delta_{a,b}(x) = -(a, b, x)."""
    name = "delta-bracket"
    T = session.system
    g = _generators(session)
    n = session.dim
    for i in range(n):
        for j in range(n):
            for k in range(n):
                value = delta_map(g[i], g[j], g[k])
                if value != session.from_vector(T.basis_bracket(i, j, k)) * Fraction(1, 2):
                    return _finish(name, witness=[i, j, k], detail=repr(value))
    for _ in range(cases):
        i, j = rng.randrange(n), rng.randrange(n)
        x = _sample(session, rng, degree)
        if delta_map(g[i], g[j], x) != -associator(g[i], g[j], x):
            return _finish(name, witness={"a": i, "b": j, "x": repr(x)})
    return _finish(name, detail=f"all basis triples, {cases} random cases")


def check_delta_expansion(session: StarSession, rng: random.Random, cases: int, degree: int = 2) -> CheckResult:
    """sum (x1 y1) delta_{x2,y2}(z) = x(yz)."""
    name = "delta-expansion"
    for _ in range(cases):
        x, y, z = (_sample(session, rng, degree) for _ in range(3))
        lhs = session.zero()
        for x1, x2, c in uv_coproduct(x).pairs():
            for y1, y2, d in uv_coproduct(y).pairs():
                lhs = lhs + (x1 * y1) * delta_map(x2, y2, z) * (c * d)
        if lhs != x * (y * z):
            return _finish(name, witness={"x": repr(x), "y": repr(y), "z": repr(z)})
    return _finish(name, detail=f"{cases} cases, degree <= {degree}")


def check_delta_multiplicative(
    session: StarSession, rng: random.Random, cases: int, degree: int, pair_degree: int = 1
) -> CheckResult:
    """delta_{x,y}(wz) = sum delta_{x1,y1}(w) delta_{x2,y2}(z)."""
    name = "delta-multiplicative"
    for _ in range(cases):
        x, y = _sample(session, rng, pair_degree), _sample(session, rng, pair_degree)
        w, z = _sample(session, rng, degree), _sample(session, rng, degree)
        rhs = session.zero()
        for x1, x2, c in uv_coproduct(x).pairs():
            for y1, y2, d in uv_coproduct(y).pairs():
                rhs = rhs + delta_map(x1, y1, w) * delta_map(x2, y2, z) * (c * d)
        if delta_map(x, y, w * z) != rhs:
            return _finish(name, witness={"x": repr(x), "y": repr(y), "w": repr(w), "z": repr(z)})
    return _finish(name, detail=f"{cases} cases")


def check_delta_derivation(session: StarSession, rng: random.Random, cases: int, degree: int) -> CheckResult:
    """delta_{x,a} and delta_{a,x} are filtration-preserving derivations for a in V."""
    name = "delta-derivation"
    g = _generators(session)
    for case in range(cases):
        a = g[case % session.dim]
        x = _sample(session, rng, min(degree, 2))
        w, z = _sample(session, rng, degree), _sample(session, rng, degree)
        for left, right in ((x, a), (a, x)):
            if delta_map(left, right, w * z) != delta_map(left, right, w) * z + w * delta_map(left, right, z):
                return _finish(name, witness={"x": repr(x), "a": case % session.dim, "w": repr(w), "z": repr(z)})
            if delta_map(left, right, z).degree() > z.degree():
                return _finish(name, witness={"x": repr(x), "z": repr(z)}, detail="raises filtration degree")
    return _finish(name, detail=f"{cases} cases")


# ------------------------------------------------------ envelope star product


def check_star_identities(session: StarSession, rng: random.Random, cases: int, degree: int = 2) -> CheckResult:
    """The three star-product identities on U(L).

    a * b = b * a and a * (b * c) - b * (a * c) = 1/4 [[a, b], c] run over all
    envelope generators; the Bol-type identity over random x, y, z.
    """
    name = "star-identities"
    alg = session.algebra
    table = session.table
    g = [alg.generator(i) for i in range(alg.ngens)]

    def star(u, v):
        return star_product(session, u, v)

    for i in range(alg.ngens):
        for j in range(i + 1, alg.ngens):
            if star(g[i], g[j]) != star(g[j], g[i]):
                return _finish(name, witness=[i, j], detail="star product not commutative on generators")
    quarter = Fraction(1, 4)
    for i in range(alg.ngens):
        for j in range(alg.ngens):
            for k in range(alg.ngens):
                lhs = star(g[i], star(g[j], g[k])) - star(g[j], star(g[i], g[k]))
                nested = table.bracket(table.basis_bracket(i, j), {k: Fraction(1)})
                if lhs != alg.from_vector(nested) * quarter:
                    return _finish(name, witness=[i, j, k], detail="double bracket not recovered")
    for _ in range(cases):
        x, y, z = (random_assoc_element(alg, rng, degree, config.RANDOM_MAX_TERMS) for _ in range(3))
        lhs = alg.zero()
        rhs = alg.zero()
        for (p, q), c in coproduct(x).terms.items():
            x1, x2 = alg.element({p: 1}), alg.element({q: 1})
            lhs = lhs + star(x1, star(y, star(x2, z))) * c
            rhs = rhs + star(star(x1, star(y, x2)), z) * c
        if lhs != rhs:
            return _finish(name, witness={"x": repr(x), "y": repr(y), "z": repr(z)})
    return _finish(name, detail=f"all generator triples, {cases} random cases")


def check_coalgebra_r(session: StarSession, max_degree: int) -> CheckResult:
    """r inverts q and Delta(r(m)) = (r (x) r) Delta(m) on PBW monomials."""
    name = "coalgebra-r"
    alg = session.algebra
    for d in range(max_degree + 1):
        for m in combinations_with_replacement(range(alg.ngens), d):
            x = alg.element({m: 1})
            if q_map(session, r_map(session, x)) != x or r_map(session, q_map(session, x)) != x:
                return _finish(name, witness=list(m), detail="r is not inverse to q")
            expected = TensorElement(alg, alg.coproduct_monomial(m)).apply(session.r_monomial, session.r_monomial)
            if coproduct(r_map(session, x)) != expected:
                return _finish(name, witness=list(m))
    return _finish(name, detail=f"PBW monomials of degree <= {max_degree}")


# ------------------------------------------------------------ bounded spaces


def check_pbw_dimension(session: StarSession, max_degree: int) -> CheckResult:
    """Top-degree parts of the embedded monomials of degree n are independent
    and there are C(dim V + n - 1, n) of them."""
    name = "pbw-dimension"
    n = session.dim
    counts = []
    for d in range(max_degree + 1):
        keys = uv_monomials(n, d, d)
        rows: Dict[Tuple[int, ...], int] = {}
        columns = []
        for key in keys:
            column = {}
            for m, c in session.embed_terms(key).items():
                if len(m) == d:
                    column[rows.setdefault(m, len(rows))] = c
            columns.append(column)
        found = rank(Matrix.from_columns(max(len(rows), 1), columns))
        expected = math.comb(n + d - 1, d)
        counts.append(found)
        if found != expected or len(keys) != expected:
            return _finish(name, witness={"degree": d, "rank": found, "expected": expected})
    return _finish(name, detail=f"dimensions {counts}")


def _assoc_terms(session: StarSession, k1: UVKey, k2: UVKey, k3: UVKey) -> Dict[UVKey, Fraction]:
    out: Dict[UVKey, Fraction] = {}
    for key, c in session.multiply_monomials(k1, k2).items():
        add_terms(out, session.multiply_monomials(key, k3), c)
    for key, c in session.multiply_monomials(k2, k3).items():
        add_terms(out, session.multiply_monomials(k1, key), -c)
    return out


def _nucleus_space(session: StarSession, keys: List[UVKey], middle: bool) -> SubspaceBasis:
    rows: Dict[Tuple, int] = {}
    columns = []
    for k in keys:
        column = {}
        for u in keys:
            for v in keys:
                terms = _assoc_terms(session, u, k, v) if middle else _assoc_terms(session, k, u, v)
                for out_key, c in terms.items():
                    column[rows.setdefault((u, v, out_key), len(rows))] = c
        columns.append(column)
    kernel = nullspace(Matrix.from_columns(max(len(rows), 1), columns))
    return SubspaceBasis(len(keys), ({i: c for i, c in enumerate(vector) if c} for vector in kernel))


def check_nucleus_equality(session: StarSession, bound: int) -> CheckResult:
    """Left and middle nucleus conditions cut out the same subspace of U(V)_{<=bound}
    when tested against all monomial pairs of degree <= bound."""
    name = "nucleus-equality"
    keys = uv_monomials(session.dim, bound)
    left = _nucleus_space(session, keys, middle=False)
    middle = _nucleus_space(session, keys, middle=True)
    if left != middle:
        return _finish(name, witness={"left_dim": left.dim, "middle_dim": middle.dim})
    return _finish(name, detail=f"both of dimension {left.dim} at degree <= {bound}")


def check_center_lemma(session: StarSession, bound: int) -> CheckResult:
    """a in V with [L_a, L_b] = 0 on U(V)_{<=bound} commutes and associates
    with every monomial of degree <= bound."""
    name = "center-lemma"
    keys = uv_monomials(session.dim, bound)
    g = _generators(session)
    monomials = [session.element({k: 1}) for k in keys]
    rows: Dict[Tuple, int] = {}
    columns = []
    for i in range(session.dim):
        column = {}
        for j in range(session.dim):
            for k, m in zip(keys, monomials):
                value = g[i] * (g[j] * m) - g[j] * (g[i] * m)
                for out_key, c in value.terms.items():
                    column[rows.setdefault((j, k, out_key), len(rows))] = c
        columns.append(column)
    kernel = nullspace(Matrix.from_columns(max(len(rows), 1), columns))
    for vector in kernel:
        a = session.from_vector({i: c for i, c in enumerate(vector) if c})
        for u in monomials:
            if a * u != u * a:
                return _finish(name, witness={"a": repr(a), "u": repr(u)}, detail="does not commute")
            for v in monomials:
                if not (associator(a, u, v).is_zero() and associator(u, a, v).is_zero() and associator(u, v, a).is_zero()):
                    return _finish(name, witness={"a": repr(a), "u": repr(u), "v": repr(v)}, detail="does not associate")
    return _finish(name, detail=f"{len(kernel)}-dimensional space of such a at degree <= {bound}")


# ------------------------------------------------------------ property suite


def check_pbw_associativity(session: StarSession, rng: random.Random, cases: int, degree: int) -> CheckResult:
    name = "pbw-associativity"
    alg = session.algebra
    for _ in range(cases):
        x, y, z = (random_assoc_element(alg, rng, degree, config.RANDOM_MAX_TERMS) for _ in range(3))
        if (x * y) * z != x * (y * z):
            return _finish(name, witness={"x": repr(x), "y": repr(y), "z": repr(z)})
        if coproduct(x * y) != coproduct(x) * coproduct(y):
            return _finish(name, witness={"x": repr(x), "y": repr(y)}, detail="coproduct not multiplicative")
    return _finish(name, detail=f"{cases} cases")


def check_pbw_coalgebra(session: StarSession, rng: random.Random, cases: int, degree: int) -> CheckResult:
    """Coassociativity, counit and cocommutativity of the coproduct of U(L)."""
    name = "pbw-coalgebra"
    alg = session.algebra
    for _ in range(cases):
        x = random_assoc_element(alg, rng, degree, config.RANDOM_MAX_TERMS)
        delta = coproduct(x)
        left: Dict[Tuple[Monomial, Monomial, Monomial], Fraction] = {}
        right: Dict[Tuple[Monomial, Monomial, Monomial], Fraction] = {}
        for (l, r), c in delta.terms.items():
            for (ll, lr), w in alg.coproduct_monomial(l).items():
                add_terms(left, {(ll, lr, r): c * w})
            for (rl, rr), w in alg.coproduct_monomial(r).items():
                add_terms(right, {(l, rl, rr): c * w})
        if left != right:
            return _finish(name, witness={"x": repr(x)}, detail="not coassociative")
        if delta.apply(counit_terms, identity_terms).terms != {((), m): c for m, c in x.terms.items()}:
            return _finish(name, witness={"x": repr(x)}, detail="left counit fails")
        if delta.apply(identity_terms, counit_terms).terms != {(m, ()): c for m, c in x.terms.items()}:
            return _finish(name, witness={"x": repr(x)}, detail="right counit fails")
        if delta.flip() != delta:
            return _finish(name, witness={"x": repr(x)}, detail="not cocommutative")
    return _finish(name, detail=f"{cases} cases")


def _coassociativity_sides(x: UVElement) -> Tuple[Dict, Dict]:
    session = x.session
    left: Dict[Tuple[UVKey, UVKey, UVKey], Fraction] = {}
    right: Dict[Tuple[UVKey, UVKey, UVKey], Fraction] = {}
    for (l, r), c in uv_coproduct(x).terms.items():
        for (ll, lr), w in uv_coproduct(session.element({l: 1})).terms.items():
            add_terms(left, {(ll, lr, r): c * w})
        for (rl, rr), w in uv_coproduct(session.element({r: 1})).terms.items():
            add_terms(right, {(l, rl, rr): c * w})
    return left, right


def check_coalgebra(session: StarSession, rng: random.Random, cases: int, degree: int) -> CheckResult:
    """Coassociativity and counit of U(V), and the closed-form coproduct
    against the one computed through the envelope."""
    name = "uv-coalgebra"
    for _ in range(cases):
        x = _sample(session, rng, degree)
        left, right = _coassociativity_sides(x)
        if left != right:
            return _finish(name, witness={"x": repr(x)}, detail="not coassociative")
        pairs = uv_coproduct(x).pairs()
        if sum((x2 * (c * uv_counit(x1)) for x1, x2, c in pairs), session.zero()) != x:
            return _finish(name, witness={"x": repr(x)}, detail="left counit fails")
        if sum((x1 * (c * uv_counit(x2)) for x1, x2, c in pairs), session.zero()) != x:
            return _finish(name, witness={"x": repr(x)}, detail="right counit fails")
        if uv_coproduct(x) != uv_coproduct_via_envelope(x):
            return _finish(name, witness={"x": repr(x)}, detail="closed-form coproduct differs from envelope")
    return _finish(name, detail=f"{cases} cases")


def check_coproduct_multiplicative(session: StarSession, rng: random.Random, cases: int, degree: int) -> CheckResult:
    name = "uv-coproduct-multiplicative"
    for _ in range(cases):
        x, y = _sample(session, rng, degree), _sample(session, rng, degree)
        product = _tensor(
            session,
            (
                (x1 * y1, x2 * y2, c * d)
                for x1, x2, c in uv_coproduct(x).pairs()
                for y1, y2, d in uv_coproduct(y).pairs()
            ),
        )
        if uv_coproduct(x * y) != product:
            return _finish(name, witness={"x": repr(x), "y": repr(y)})
    return _finish(name, detail=f"{cases} cases")


def check_s_automorphism(session: StarSession, rng: random.Random, cases: int, degree: int) -> CheckResult:
    name = "s-automorphism"
    for _ in range(cases):
        x, y = _sample(session, rng, degree), _sample(session, rng, degree)
        if s_automorphism(s_automorphism(x)) != x:
            return _finish(name, witness={"x": repr(x)}, detail="not an involution")
        if s_automorphism(x * y) != s_automorphism(x) * s_automorphism(y):
            return _finish(name, witness={"x": repr(x), "y": repr(y)}, detail="not multiplicative")
    return _finish(name, detail=f"{cases} cases")


def check_normalization(session: StarSession, rng: random.Random, cases: int, degree: int) -> CheckResult:
    """Peeling and the linear solve both recover x from its embedding and
    agree on star products of embedded elements."""
    name = "normalization"
    for _ in range(cases):
        x, y = _sample(session, rng, degree), _sample(session, rng, max(degree - 1, 1))
        image = session.embed(x)
        if uv_normalize(session, image) != x or uv_normalize(session, image, method="peel") != x:
            return _finish(name, witness={"x": repr(x)})
        product = star_product(session, image, session.embed(y))
        if uv_normalize(session, product) != uv_normalize(session, product, method="peel"):
            return _finish(name, witness={"x": repr(x), "y": repr(y)}, detail="peel and solve disagree on x*y")
    return _finish(name, detail=f"{cases} cases")


def property_suite(
    session: StarSession,
    cases: Optional[int] = None,
    seed: Optional[int] = None,
    degree: int = 3,
) -> List[CheckResult]:
    """Randomized algebra and coalgebra properties of U(L) and U(V)."""
    rng = random.Random(config.RANDOM_SEED if seed is None else seed)
    cases = cases or config.RANDOM_CASES
    logger.info(f"property suite on {session.system.label}: {cases} cases, degree <= {degree}")
    return [
        check_pbw_associativity(session, rng, cases, min(degree, 2)),
        check_pbw_coalgebra(session, rng, cases, degree),
        check_coalgebra(session, rng, cases, degree),
        check_coproduct_multiplicative(session, rng, cases, min(degree, 2)),
        check_s_automorphism(session, rng, cases, degree),
        check_normalization(session, rng, cases, degree),
    ]
