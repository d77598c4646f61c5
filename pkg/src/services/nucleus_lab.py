"""Finite-dimensional unital algebras: nuclei, generalised alternative nuclei,
ternary derivations, Jordan-Chevalley parts and the Q + R decomposition.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Callable, Dict, Iterable, List, Mapping, NamedTuple, Optional, Sequence, Tuple, Union

from src.models.report import CheckResult, DecompositionReport, SeriesMode
from src.services.errors import (
    InducedBracketNotClosedError,
    JordanChevalleyError,
    PreconditionViolatedError,
    StructureError,
)
from src.services.linalg import (
    Echelon,
    Matrix,
    SparseVector,
    add_scaled,
    as_scalar,
    dense_from_sparse,
    determinant,
    jordan_chevalley,
    nullspace,
    sparse_from_dense,
)
from src.services.lts import SubspaceBasis, TernarySystem, lower_central_series
from src.utils.helpers import fraction_pair
from src.utils.logger import log_check_result

logger = logging.getLogger(__name__)

VectorLike = Union[Sequence, Mapping[int, object]]


class FinAlgebra:
    """Unital algebra by its multiplication table e_i e_j = sum_k c_ijk e_k."""

    def __init__(
        self,
        dim: int,
        table: Mapping[Tuple[int, int], Mapping[int, object]],
        unit: Union[int, Sequence] = 0,
        names: Optional[Sequence[str]] = None,
        label: str = "custom",
    ):
        self.dim = dim
        self.label = label
        self.names = tuple(names) if names is not None else tuple(f"e{i}" for i in range(dim))
        self.table: Dict[Tuple[int, int], SparseVector] = {}
        for (i, j), vector in table.items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise StructureError(f"table index ({i}, {j}) out of range for dim {dim}")
            clean = {}
            for k, v in vector.items():
                if not 0 <= k < dim:
                    raise StructureError(f"product index {k} out of range for dim {dim}")
                v = as_scalar(v)
                if v:
                    clean[k] = v
            if clean:
                self.table[(i, j)] = clean
        if isinstance(unit, int):
            if not 0 <= unit < dim:
                raise StructureError(f"unit index {unit} out of range")
            self.unit: SparseVector = {unit: Fraction(1)}
        else:
            if len(unit) != dim:
                raise StructureError(f"unit vector of length {len(unit)} for dim {dim}")
            self.unit = sparse_from_dense(unit)
        for i in range(dim):
            e = self.basis(i)
            if self.multiply(self.unit, e) != e or self.multiply(e, self.unit) != e:
                raise StructureError(f"the given unit does not act as identity on {self.names[i]}")

    def __repr__(self) -> str:
        return f"FinAlgebra({self.label}, dim={self.dim})"

    def basis(self, i: int) -> SparseVector:
        return {i: Fraction(1)}

    def vector(self, value: VectorLike) -> SparseVector:
        if isinstance(value, Mapping):
            return {int(k): as_scalar(v) for k, v in value.items() if v}
        if len(value) != self.dim:
            raise StructureError(f"vector of length {len(value)} for dim {self.dim}")
        return sparse_from_dense(value)

    def multiply(self, a: Mapping[int, Fraction], b: Mapping[int, Fraction]) -> SparseVector:
        out: SparseVector = {}
        for (i, x), (j, y) in product(a.items(), b.items()):
            value = self.table.get((i, j))
            if value:
                add_scaled(out, value, x * y)
        return out

    def associator(self, a, b, c) -> SparseVector:
        """(a, b, c) = (ab)c - a(bc)."""
        out = self.multiply(self.multiply(a, b), c)
        add_scaled(out, self.multiply(a, self.multiply(b, c)), -1)
        return out

    def commutator(self, a, b) -> SparseVector:
        out = self.multiply(a, b)
        add_scaled(out, self.multiply(b, a), -1)
        return out

    def left_matrix(self, a: Mapping[int, Fraction]) -> Matrix:
        return Matrix.from_columns(self.dim, [self.multiply(a, self.basis(j)) for j in range(self.dim)])

    def right_matrix(self, a: Mapping[int, Fraction]) -> Matrix:
        return Matrix.from_columns(self.dim, [self.multiply(self.basis(j), a) for j in range(self.dim)])

    def induced_bracket(self, a, b, c) -> SparseVector:
        """[a,b,c] = a(bc) - b(ac) - c(ab) + c(ba)."""
        out = self.multiply(a, self.multiply(b, c))
        add_scaled(out, self.multiply(b, self.multiply(a, c)), -1)
        add_scaled(out, self.multiply(c, self.multiply(a, b)), -1)
        add_scaled(out, self.multiply(c, self.multiply(b, a)), 1)
        return out


@dataclass(frozen=True)
class TernaryDerivation:
    d1: Matrix
    d2: Matrix
    d3: Matrix


class Nuclei(NamedTuple):
    left: SubspaceBasis
    middle: SubspaceBasis
    right: SubspaceBasis
    center: SubspaceBasis


def _kernel(A: FinAlgebra, condition: Callable[[SparseVector], List[SparseVector]]) -> SubspaceBasis:
    """Subspace of a with condition(a) = 0; condition is linear in a and
    returns a list of vectors, all of which must vanish."""
    columns = []
    n_conditions = 0
    for i in range(A.dim):
        images = condition(A.basis(i))
        n_conditions = len(images)
        column = {}
        for c, vector in enumerate(images):
            for l, v in vector.items():
                column[c * A.dim + l] = v
        columns.append(column)
    M = Matrix.from_columns(max(n_conditions, 1) * A.dim, columns)
    return SubspaceBasis(A.dim, (sparse_from_dense(v) for v in nullspace(M)))


def _pairs(A: FinAlgebra) -> List[Tuple[SparseVector, SparseVector]]:
    return [(A.basis(y), A.basis(z)) for y, z in product(range(A.dim), repeat=2)]


def nuclei(A: FinAlgebra) -> Nuclei:
    pairs = _pairs(A)
    basis = [A.basis(i) for i in range(A.dim)]

    def left(a):
        return [A.associator(a, y, z) for y, z in pairs]

    def middle(a):
        return [A.associator(y, a, z) for y, z in pairs]

    def right(a):
        return [A.associator(y, z, a) for y, z in pairs]

    def center(a):
        return left(a) + middle(a) + right(a) + [A.commutator(a, y) for y in basis]

    return Nuclei(_kernel(A, left), _kernel(A, middle), _kernel(A, right), _kernel(A, center))


def _lnalt_condition(A: FinAlgebra):
    pairs = _pairs(A)

    def condition(a):
        out = []
        for x, y in pairs:
            v = A.associator(a, x, y)
            add_scaled(v, A.associator(x, a, y), 1)
            out.append(v)
        return out

    return condition


def _restricted_system(
    A: FinAlgebra, subspace: SubspaceBasis, bracket: Callable, arity: int, label: str
) -> TernarySystem:
    vectors = subspace.sparse_vectors
    names = _subspace_names(A, subspace)
    structure = {}
    for indices in product(range(len(vectors)), repeat=arity):
        image = bracket(*(vectors[i] for i in indices))
        coords = subspace.coordinates(image)
        if coords is None:
            raise InducedBracketNotClosedError(
                f"bracket of {[names[i] for i in indices]} leaves the subspace"
            )
        vector = sparse_from_dense(coords)
        if vector:
            structure[indices] = vector
    if arity == 3:
        return TernarySystem(len(vectors), ternary=structure, names=names, label=label)
    return TernarySystem(len(vectors), binary=structure, names=names, label=label)


def _subspace_names(A: FinAlgebra, subspace: SubspaceBasis) -> List[str]:
    names = []
    for row in subspace.sparse_vectors:
        if len(row) == 1:
            (i, v), = row.items()
            names.append(A.names[i] if v == 1 else f"{v}{A.names[i]}")
        else:
            names.append("+".join(f"{v}{A.names[i]}" if v != 1 else A.names[i] for i, v in sorted(row.items())))
    return names


def ln_alt(A: FinAlgebra) -> Tuple[SubspaceBasis, TernarySystem]:
    """LN_alt(A) = {a : (a,x,y) = -(x,a,y)} with its induced L.t.s."""
    subspace = _kernel(A, _lnalt_condition(A))
    system = _restricted_system(A, subspace, A.induced_bracket, 3, f"LN_alt({A.label})")
    return subspace, system


def n_alt(A: FinAlgebra) -> SubspaceBasis:
    """{a : (a,y,z) = -(y,a,z) = (y,z,a)}."""
    pairs = _pairs(A)

    def condition(a):
        out = []
        for y, z in pairs:
            first = A.associator(a, y, z)
            add_scaled(first, A.associator(y, a, z), 1)
            second = A.associator(y, a, z)
            add_scaled(second, A.associator(y, z, a), 1)
            out.extend([first, second])
        return out

    return _kernel(A, condition)


def malcev_system(A: FinAlgebra, subspace: Optional[SubspaceBasis] = None) -> TernarySystem:
    """Binary bracket [a,b] = ab - ba restricted to a subspace (default N_alt)."""
    if subspace is None:
        subspace = n_alt(A)
    return _restricted_system(A, subspace, A.commutator, 2, f"malcev({A.label})")


def restrict_system(A: FinAlgebra, subspace: SubspaceBasis) -> TernarySystem:
    """Induced ternary bracket on a subspace of LN_alt(A)."""
    return _restricted_system(A, subspace, A.induced_bracket, 3, f"sub({A.label})")


def check_tder(A: FinAlgebra, t: TernaryDerivation) -> bool:
    """d1(xy) = d2(x) y + x d3(y) on all basis pairs."""
    for i, j in product(range(A.dim), repeat=2):
        x, y = A.basis(i), A.basis(j)
        lhs = t.d1.apply_sparse(A.multiply(x, y))
        rhs = A.multiply(t.d2.apply_sparse(x), y)
        add_scaled(rhs, A.multiply(x, t.d3.apply_sparse(y)), 1)
        if lhs != rhs:
            return False
    return True


def lnalt_triple(A: FinAlgebra, a: VectorLike) -> TernaryDerivation:
    """(L_a, T_a, -L_a) with T_a = L_a + R_a."""
    a = A.vector(a)
    L = A.left_matrix(a)
    return TernaryDerivation(L, L + A.right_matrix(a), -L)


def lnalt_membership_via_tder(A: FinAlgebra, a: VectorLike) -> bool:
    return check_tder(A, lnalt_triple(A, a))


def jc_element(A: FinAlgebra, a: VectorLike) -> Tuple[List[Fraction], List[Fraction]]:
    """Parts a_s, a_n of a in LN_alt(A) with L_{a_s} = (L_a)_s and L_{a_n} = (L_a)_n."""
    a = A.vector(a)
    if not lnalt_membership_via_tder(A, a):
        raise StructureError("element is not in LN_alt(A)")
    Ms, Mn = jordan_chevalley(A.left_matrix(a))
    a_s = Ms.apply_sparse(A.unit)
    a_n = Mn.apply_sparse(A.unit)
    if A.left_matrix(a_s) != Ms or A.left_matrix(a_n) != Mn:
        raise JordanChevalleyError("left multiplication by a_s or a_n differs from the matrix parts")
    if not (lnalt_membership_via_tder(A, a_s) and lnalt_membership_via_tder(A, a_n)):
        raise JordanChevalleyError("a_s or a_n left LN_alt(A)")
    return dense_from_sparse(a_s, A.dim), dense_from_sparse(a_n, A.dim)


# ------------------------------------------------------------ decomposition


def _closure(A: FinAlgebra, seeds: Iterable[Mapping[int, Fraction]], step: Callable) -> SubspaceBasis:
    """Span of seeds closed under ``step(v, echelon_rows) -> new vectors``."""
    echelon = Echelon()
    pending = []
    for seed in seeds:
        if seed and echelon.add(seed) is not None:
            pending.append(dict(seed))
    while pending:
        v = pending.pop()
        for image in step(v, [row for _, row in echelon.rref_rows()]):
            if image and echelon.add(image) is not None:
                pending.append(image)
    return SubspaceBasis(A.dim, (row for _, row in echelon.rref_rows()))


def generated_subalgebra(A: FinAlgebra, generators: Iterable[Mapping[int, Fraction]], unital: bool = True) -> SubspaceBasis:
    seeds = list(generators)
    if unital:
        seeds.append(A.unit)

    def step(v, rows):
        out = []
        for w in rows:
            out.append(A.multiply(v, w))
            out.append(A.multiply(w, v))
        return out

    return _closure(A, seeds, step)


def generated_ideal(A: FinAlgebra, generators: Iterable[Mapping[int, Fraction]]) -> SubspaceBasis:
    basis = [A.basis(i) for i in range(A.dim)]

    def step(v, rows):
        return [A.multiply(x, v) for x in basis] + [A.multiply(v, x) for x in basis]

    return _closure(A, generators, step)


def is_nilpotent_subalgebra(A: FinAlgebra, S: SubspaceBasis) -> bool:
    """S^k = sum_{i+j=k} S^i S^j reaches zero."""
    powers = {1: S}
    k = 1
    while True:
        if powers[k].is_zero():
            return True
        k += 1
        products = []
        for i in range(1, k):
            for u in powers[i].sparse_vectors:
                for w in powers[k - i].sparse_vectors:
                    products.append(A.multiply(u, w))
        powers[k] = SubspaceBasis(A.dim, products)
        if powers[k] == powers[k - 1] or k > A.dim + 2:
            return powers[k].is_zero()


def has_no_nilpotents(A: FinAlgebra, Q: SubspaceBasis) -> bool:
    """Trace form test for a commutative associative subalgebra Q:
    no nonzero nilpotents iff (x, y) -> tr_Q(L_{xy}) is nondegenerate."""
    vectors = Q.sparse_vectors
    if not vectors:
        return True

    def trace_on_q(z):
        total = Fraction(0)
        for i, q in enumerate(vectors):
            coords = Q.coordinates(A.multiply(z, q))
            if coords is None:
                raise StructureError("Q is not closed under multiplication")
            total += coords[i]
        return total

    form = [[trace_on_q(A.multiply(x, y)) for y in vectors] for x in vectors]
    return determinant(Matrix.from_rows(form)) != 0


def _check(name: str, passed: bool, witness=None, detail: str = None) -> CheckResult:
    log_check_result(name, passed, None if witness is None else str(witness))
    return CheckResult(name=name, passed=passed, witness=witness, detail=detail)


def _pairs_of(vectors: Sequence[SparseVector], dim: int) -> List[List]:
    return [[fraction_pair(c) for c in dense_from_sparse(v, dim)] for v in vectors]


def theorem_decompose(A: FinAlgebra, V: SubspaceBasis, strict: bool = True) -> DecompositionReport:
    """Split A = Q + R for a commuting subsystem V of LN_alt(A) generating A.

    Q is the unital algebra generated by the semisimple parts of V, R the
    ideal generated by the nilpotent parts. With ``strict`` a failed
    hypothesis raises PreconditionViolatedError; otherwise it is reported.
    """
    vectors = V.sparse_vectors
    checks: List[CheckResult] = []

    # hypotheses
    outside = [i for i, v in enumerate(vectors) if not lnalt_membership_via_tder(A, v)]
    checks.append(_check("V-in-LN_alt", not outside, outside or None))
    noncommuting = [
        [i, j]
        for i in range(len(vectors))
        for j in range(i + 1, len(vectors))
        if A.commutator(vectors[i], vectors[j])
    ]
    checks.append(_check("V-commutative", not noncommuting, noncommuting[0] if noncommuting else None))
    generated = generated_subalgebra(A, vectors)
    checks.append(
        _check("V-generates-A", generated.is_full(), None, f"unital subalgebra of dim {generated.dim}/{A.dim}")
    )
    failed = [c.name for c in checks if not c.passed]

    v_nilpotent = None
    if not outside:
        try:
            system = restrict_system(A, V)
            _, v_nilpotent = lower_central_series(system, SeriesMode.NILPOTENCY)
            checks.append(_check("V-nilpotent", v_nilpotent))
        except InducedBracketNotClosedError as exc:
            checks.append(_check("V-subsystem", False, None, str(exc)))
            failed.append("V-subsystem")

    if failed:
        if strict:
            raise PreconditionViolatedError(failed[0], f"failed hypotheses: {', '.join(failed)}")
        explanation = f"hypotheses failed: {', '.join(failed)}"
        if v_nilpotent is False:
            explanation += "; V is not nilpotent, so by the decomposition theorem some hypothesis must fail"
        return DecompositionReport(dim=A.dim, checks=checks, verdict=False, explanation=explanation)

    parts = [jc_element(A, v) for v in vectors]
    semisimple = [sparse_from_dense(s) for s, _ in parts]
    nilpotent = [sparse_from_dense(n) for _, n in parts]
    v_hat = SubspaceBasis(A.dim, semisimple + nilpotent)
    Q = generated_subalgebra(A, semisimple)
    R = generated_ideal(A, nilpotent)
    center = nuclei(A).center

    # consequences for V-hat
    checks.append(_check("V-contained-in-V-hat", v_hat.contains_subspace(V)))
    hat_vectors = v_hat.sparse_vectors
    closed = all(
        v_hat.contains(A.induced_bracket(x, y, z)) for x, y, z in product(hat_vectors, repeat=3)
    )
    checks.append(_check("V-hat-subsystem", closed))
    N = SubspaceBasis(A.dim, nilpotent)
    n_ideal = all(
        N.contains(A.induced_bracket(*args))
        for n in N.sparse_vectors
        for x, y in product(hat_vectors, repeat=2)
        for args in ((n, x, y), (x, n, y), (x, y, n))
    )
    checks.append(_check("nilpotent-parts-ideal", n_ideal))
    central = all(center.contains(sparse_from_dense(jc_element(A, w)[0])) for w in hat_vectors)
    checks.append(_check("semisimple-parts-central", central))
    checks.append(
        _check("nilpotent-parts-subalgebra-nilpotent", is_nilpotent_subalgebra(A, generated_subalgebra(A, nilpotent, unital=False)))
    )

    # the decomposition itself
    direct = Q.dim + R.dim == A.dim and (Q + R).is_full()
    checks.append(_check("direct-sum", direct, None, f"dim Q = {Q.dim}, dim R = {R.dim}"))
    checks.append(_check("R-nilpotent", is_nilpotent_subalgebra(A, R)))
    checks.append(_check("Q-central", center.contains_subspace(Q)))
    checks.append(_check("Q-no-nilpotents", has_no_nilpotents(A, Q)))

    verdict = all(c.passed for c in checks)
    explanation = "A = Q + R with R a nilpotent ideal and Q central without nilpotents" if verdict else (
        "failed: " + ", ".join(c.name for c in checks if not c.passed)
    )
    logger.info(f"decomposition of {A.label}: dim Q = {Q.dim}, dim R = {R.dim}, verdict {verdict}")
    return DecompositionReport(
        dim=A.dim,
        v_hat=_pairs_of(hat_vectors, A.dim),
        q_basis=_pairs_of(Q.sparse_vectors, A.dim),
        r_basis=_pairs_of(R.sparse_vectors, A.dim),
        checks=checks,
        verdict=verdict,
        explanation=explanation,
    )
