"""Lie triple systems, Bol and Malcev algebras given by structure constants.

A ``TernarySystem`` stores ``[e_i, e_j, e_k]`` and ``[e_i, e_j]`` as sparse
vectors. Everything here works on basis tuples and extends by
multilinearity.
"""

import logging
from fractions import Fraction
from itertools import product
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from src.models.report import AxiomMode, AxiomReport, CheckResult, SeriesMode
from src.services.errors import StructureError
from src.services.linalg import (
    Echelon,
    Matrix,
    SparseVector,
    add_scaled,
    as_scalar,
    dense_from_sparse,
    row_reduce,
    solve,
    sparse_from_dense,
)
from src.utils.logger import log_check_result

logger = logging.getLogger(__name__)


def _clean(vector: Mapping[int, object], dim: int, where: str) -> SparseVector:
    out = {}
    for index, value in vector.items():
        if not 0 <= index < dim:
            raise StructureError(f"output index {index} out of range for dim {dim} in {where}")
        value = as_scalar(value)
        if value:
            out[index] = value
    return out


class TernarySystem:
    """Finite-dimensional Bol algebra by structure constants.

    An L.t.s. is the case ``binary == {}``; a Malcev algebra is entered with
    only the binary part and converted by ``malcev_to_bol``.
    """

    def __init__(
        self,
        dim: int,
        ternary: Mapping[Tuple[int, int, int], Mapping[int, object]] = None,
        binary: Mapping[Tuple[int, int], Mapping[int, object]] = None,
        names: Optional[Sequence[str]] = None,
        label: str = "custom",
    ):
        if dim < 0:
            raise StructureError(f"negative dimension {dim}")
        self.dim = dim
        self.label = label
        if names is None:
            names = [f"e{i}" for i in range(dim)]
        if len(names) != dim:
            raise StructureError(f"{len(names)} basis names for dimension {dim}")
        self.names: Tuple[str, ...] = tuple(names)

        self.ternary: Dict[Tuple[int, int, int], SparseVector] = {}
        for key, vector in (ternary or {}).items():
            if len(key) != 3 or not all(0 <= i < dim for i in key):
                raise StructureError(f"ternary index {key} out of range for dim {dim}")
            cleaned = _clean(vector, dim, f"[{key}]")
            if cleaned:
                self.ternary[tuple(key)] = cleaned

        self.binary: Dict[Tuple[int, int], SparseVector] = {}
        for key, vector in (binary or {}).items():
            if len(key) != 2 or not all(0 <= i < dim for i in key):
                raise StructureError(f"binary index {key} out of range for dim {dim}")
            cleaned = _clean(vector, dim, f"[{key}]")
            if cleaned:
                self.binary[tuple(key)] = cleaned

    def __repr__(self) -> str:
        return f"TernarySystem({self.label}, dim={self.dim})"

    @property
    def is_lts(self) -> bool:
        return not self.binary

    def basis(self, i: int) -> SparseVector:
        return {i: Fraction(1)}

    def bracket(self, a: Mapping[int, Fraction], b: Mapping[int, Fraction], c: Mapping[int, Fraction]) -> SparseVector:
        out: SparseVector = {}
        if not self.ternary:
            return out
        for (i, x), (j, y), (k, z) in product(a.items(), b.items(), c.items()):
            value = self.ternary.get((i, j, k))
            if value:
                add_scaled(out, value, x * y * z)
        return out

    def binary_bracket(self, a: Mapping[int, Fraction], b: Mapping[int, Fraction]) -> SparseVector:
        out: SparseVector = {}
        if not self.binary:
            return out
        for (i, x), (j, y) in product(a.items(), b.items()):
            value = self.binary.get((i, j))
            if value:
                add_scaled(out, value, x * y)
        return out

    def basis_bracket(self, i: int, j: int, k: int) -> SparseVector:
        return dict(self.ternary.get((i, j, k), {}))

    def scaled(self, scale) -> "TernarySystem":
        """Same space with the ternary bracket multiplied by ``scale``."""
        scale = as_scalar(scale)
        ternary = {key: {l: scale * v for l, v in vec.items()} for key, vec in self.ternary.items()}
        return TernarySystem(self.dim, ternary, self.binary, self.names, f"{self.label}*{scale}")

    def inner_derivation(self, a: Mapping[int, Fraction], b: Mapping[int, Fraction]) -> Matrix:
        """Matrix of c -> [a, b, c]."""
        columns = [self.bracket(a, b, self.basis(k)) for k in range(self.dim)]
        return Matrix.from_columns(self.dim, columns)


def bracket_eval(T: TernarySystem, a: Sequence, b: Sequence, c: Sequence) -> List[Fraction]:
    """Trilinear evaluation of the ternary bracket on dense vectors."""
    for vector in (a, b, c):
        if len(vector) != T.dim:
            raise StructureError(f"vector of length {len(vector)} for dim {T.dim}")
    result = T.bracket(sparse_from_dense(a), sparse_from_dense(b), sparse_from_dense(c))
    return dense_from_sparse(result, T.dim)


# ---------------------------------------------------------------------- axioms


def _sum(*vectors: Mapping[int, Fraction], signs: Iterable[int] = None) -> SparseVector:
    out: SparseVector = {}
    signs = list(signs) if signs is not None else [1] * len(vectors)
    for vector, sign in zip(vectors, signs):
        add_scaled(out, vector, sign)
    return out


def _first_failure(name: str, tuples: Iterable[tuple], residual) -> CheckResult:
    for indices in tuples:
        if residual(*indices):
            log_check_result(name, False, str(indices))
            return CheckResult(name=name, passed=False, witness=list(indices))
    log_check_result(name, True)
    return CheckResult(name=name, passed=True)


def _ternary_checks(T: TernarySystem) -> List[CheckResult]:
    n = range(T.dim)
    e = T.basis
    br = T.bracket

    def skew(i, j, k):
        return _sum(br(e(i), e(j), e(k)), br(e(j), e(i), e(k)))

    def cyclic(i, j, k):
        return _sum(br(e(i), e(j), e(k)), br(e(j), e(k), e(i)), br(e(k), e(i), e(j)))

    def derivation(x, y, a, b, c):
        lhs = br(e(x), e(y), br(e(a), e(b), e(c)))
        rhs = _sum(
            br(br(e(x), e(y), e(a)), e(b), e(c)),
            br(e(a), br(e(x), e(y), e(b)), e(c)),
            br(e(a), e(b), br(e(x), e(y), e(c))),
        )
        return _sum(lhs, rhs, signs=(1, -1))

    return [
        _first_failure("ternary-skew", product(n, n, n), skew),
        _first_failure("cyclic", product(n, n, n), cyclic),
        _first_failure("ternary-derivation", product(n, repeat=5), derivation),
    ]


def _binary_skew(T: TernarySystem) -> CheckResult:
    n = range(T.dim)
    e = T.basis

    def skew(i, j):
        return _sum(T.binary_bracket(e(i), e(j)), T.binary_bracket(e(j), e(i)))

    return _first_failure("binary-skew", product(n, n), skew)


def _jacobian(T: TernarySystem, a, b, c) -> SparseVector:
    bb = T.binary_bracket
    return _sum(bb(bb(a, b), c), bb(bb(b, c), a), bb(bb(c, a), b))


def check_axioms(T: TernarySystem, mode: AxiomMode = AxiomMode.LTS) -> AxiomReport:
    """Check every axiom of the given structure on all basis tuples."""
    mode = AxiomMode(mode)
    e = T.basis
    n = range(T.dim)
    checks: List[CheckResult] = []

    if mode == AxiomMode.MALCEV:
        if T.ternary:
            raise StructureError("malcev mode expects a system with a binary bracket only")
        checks.append(_binary_skew(T))

        def malcev(a, b, c, d):
            bb = T.binary_bracket
            lhs = _sum(
                bb(_jacobian(T, e(a), e(b), e(c)), e(d)),
                bb(_jacobian(T, e(d), e(b), e(c)), e(a)),
            )
            rhs = _sum(
                _jacobian(T, e(a), e(b), bb(e(d), e(c))),
                _jacobian(T, e(d), e(b), bb(e(a), e(c))),
            )
            return _sum(lhs, rhs, signs=(1, -1))

        checks.append(_first_failure("malcev-identity", product(n, repeat=4), malcev))
        return AxiomReport(mode=mode, dim=T.dim, checks=checks)

    checks.extend(_ternary_checks(T))
    if mode == AxiomMode.LTS:
        zero = not T.binary
        checks.append(
            CheckResult(
                name="binary-zero",
                passed=zero,
                witness=None if zero else list(min(T.binary)),
            )
        )
    else:
        checks.append(_binary_skew(T))

        def bol_binary(a, b, x, y):
            br, bb = T.bracket, T.binary_bracket
            lhs = br(e(a), e(b), bb(e(x), e(y)))
            rhs = _sum(
                bb(br(e(a), e(b), e(x)), e(y)),
                bb(e(x), br(e(a), e(b), e(y))),
                br(e(x), e(y), bb(e(a), e(b))),
                bb(bb(e(a), e(b)), bb(e(x), e(y))),
            )
            return _sum(lhs, rhs, signs=(1, -1))

        checks.append(_first_failure("bol-binary", product(n, repeat=4), bol_binary))

    return AxiomReport(mode=mode, dim=T.dim, checks=checks)


def malcev_to_bol(M: TernarySystem) -> TernarySystem:
    """Bol algebra of a Malcev algebra: [a,b,c] = [[a,b],c] - J(a,b,c)/3."""
    report = check_axioms(M, AxiomMode.MALCEV)
    if not report.passed:
        failure = report.first_failure()
        raise StructureError(f"not a Malcev algebra: {failure.name} fails at {failure.witness}")
    e = M.basis
    ternary = {}
    third = Fraction(1, 3)
    for i, j, k in product(range(M.dim), repeat=3):
        value = _sum(
            M.binary_bracket(M.binary_bracket(e(i), e(j)), e(k)),
            _jacobian(M, e(i), e(j), e(k)),
            signs=(1, -third),
        )
        if value:
            ternary[(i, j, k)] = value
    return TernarySystem(M.dim, ternary, M.binary, M.names, f"bol({M.label})")


# ------------------------------------------------------------------- subspaces


class SubspaceBasis:
    """Subspace of F^n stored as reduced echelon rows; equal spaces compare equal."""

    def __init__(self, ambient_dim: int, vectors: Iterable[Mapping[int, Fraction]] = ()):
        self.ambient_dim = ambient_dim
        reduced = row_reduce(vectors)
        self.pivots: Tuple[int, ...] = tuple(col for col, _ in reduced)
        self._rows: Tuple[SparseVector, ...] = tuple(row for _, row in reduced)

    @classmethod
    def full(cls, ambient_dim: int) -> "SubspaceBasis":
        return cls(ambient_dim, ({i: Fraction(1)} for i in range(ambient_dim)))

    @property
    def dim(self) -> int:
        return len(self._rows)

    @property
    def vectors(self) -> List[List[Fraction]]:
        return [dense_from_sparse(row, self.ambient_dim) for row in self._rows]

    @property
    def sparse_vectors(self) -> List[SparseVector]:
        return [dict(row) for row in self._rows]

    def is_zero(self) -> bool:
        return not self._rows

    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def contains(self, vector: Mapping[int, Fraction]) -> bool:
        residual = dict(vector)
        for col, row in zip(self.pivots, self._rows):
            add_scaled(residual, row, -residual.get(col, 0))
        return not residual

    def contains_subspace(self, other: "SubspaceBasis") -> bool:
        return all(self.contains(v) for v in other._rows)

    def coordinates(self, vector: Mapping[int, Fraction]) -> Optional[List[Fraction]]:
        """Coordinates against the echelon rows, or None when outside."""
        if not self.contains(vector):
            return None
        return [Fraction(vector.get(col, 0)) for col in self.pivots]

    def __add__(self, other: "SubspaceBasis") -> "SubspaceBasis":
        return SubspaceBasis(self.ambient_dim, self._rows + other._rows)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SubspaceBasis):
            return NotImplemented
        return (self.ambient_dim, self._rows) == (other.ambient_dim, other._rows)

    def __hash__(self) -> int:
        return hash((self.ambient_dim, tuple(tuple(sorted(r.items())) for r in self._rows)))

    def __repr__(self) -> str:
        return f"SubspaceBasis(dim={self.dim}/{self.ambient_dim}, {self.vectors})"


def lower_central_series(
    T: TernarySystem, mode: SeriesMode = SeriesMode.NILPOTENCY
) -> Tuple[List[SubspaceBasis], bool]:
    """Chain V^1, V^2, ... until it reaches 0 (verdict True) or repeats."""
    mode = SeriesMode(mode)
    basis = [T.basis(i) for i in range(T.dim)]
    current = SubspaceBasis(
        T.dim, (T.bracket(a, b, c) for a, b, c in product(basis, repeat=3))
    )
    chain = [current]
    for _ in range(T.dim + 1):
        if current.is_zero():
            return chain, True
        vectors = current.sparse_vectors
        if mode == SeriesMode.NILPOTENCY:
            generated = [T.bracket(v, b, c) for v in vectors for b in basis for c in basis]
            generated += [T.bracket(a, b, v) for v in vectors for a in basis for b in basis]
        else:
            generated = [T.bracket(u, v, c) for u in vectors for v in vectors for c in basis]
        following = SubspaceBasis(T.dim, generated)
        if following == current:
            return chain, False
        chain.append(following)
        current = following
    return chain, current.is_zero()


def ideal_closure(T: TernarySystem, S: SubspaceBasis) -> SubspaceBasis:
    """Smallest subspace containing S and stable under brackets in every slot."""
    basis = [T.basis(i) for i in range(T.dim)]
    echelon = Echelon()
    pending = []
    for vector in S.sparse_vectors:
        if echelon.add(vector) is not None:
            pending.append(vector)
    while pending:
        v = pending.pop()
        for x, y in product(basis, basis):
            for image in (T.bracket(v, x, y), T.bracket(x, v, y), T.bracket(x, y, v)):
                if image and echelon.add(image) is not None:
                    pending.append(image)
    return SubspaceBasis(T.dim, (row for _, row in echelon.rref_rows()))


def is_simple(T: TernarySystem) -> bool:
    """Semi-decision: tries the ideals generated by single basis vectors and by pairwise sums."""
    if not T.ternary:
        return False
    seeds = [T.basis(i) for i in range(T.dim)]
    seeds += [{i: Fraction(1), j: Fraction(1)} for i in range(T.dim) for j in range(i + 1, T.dim)]
    for seed in seeds:
        closure = ideal_closure(T, SubspaceBasis(T.dim, [seed]))
        if not (closure.is_zero() or closure.is_full()):
            logger.debug(f"{T.label}: proper ideal of dim {closure.dim} found from seed {seed}")
            return False
    return True


# ---------------------------------------------------------------- lie envelope


class LieAlgebraTable:
    """Lie algebra by binary structure constants with an optional Z2-grading."""

    def __init__(
        self,
        dim: int,
        bracket: Mapping[Tuple[int, int], Mapping[int, object]] = None,
        grading: Optional[Sequence[int]] = None,
        names: Optional[Sequence[str]] = None,
    ):
        self.dim = dim
        self.grading = tuple(grading) if grading is not None else None
        self.names = tuple(names) if names is not None else tuple(f"g{i}" for i in range(dim))
        self._bracket: Dict[Tuple[int, int], SparseVector] = {}
        for (i, j), vector in (bracket or {}).items():
            if i == j:
                continue
            cleaned = _clean(vector, dim, f"[g{i}, g{j}]")
            if not cleaned:
                continue
            self._bracket[(i, j)] = cleaned
            self._bracket[(j, i)] = {k: -v for k, v in cleaned.items()}

    def __repr__(self) -> str:
        return f"LieAlgebraTable(dim={self.dim})"

    def basis_bracket(self, i: int, j: int) -> SparseVector:
        return self._bracket.get((i, j), {})

    def bracket(self, x: Mapping[int, Fraction], y: Mapping[int, Fraction]) -> SparseVector:
        out: SparseVector = {}
        for (i, a), (j, b) in product(x.items(), y.items()):
            value = self._bracket.get((i, j))
            if value:
                add_scaled(out, value, a * b)
        return out


def jacobi_witness(L: LieAlgebraTable) -> Optional[Tuple[int, int, int]]:
    """First basis triple violating the Jacobi identity, or None."""
    e = lambda i: {i: Fraction(1)}
    for i, j, k in product(range(L.dim), repeat=3):
        if i < j < k:
            total = _sum(
                L.bracket(L.bracket(e(i), e(j)), e(k)),
                L.bracket(L.bracket(e(j), e(k)), e(i)),
                L.bracket(L.bracket(e(k), e(i)), e(j)),
            )
            if total:
                return (i, j, k)
    return None


def lie_envelope(T: TernarySystem, scale=1) -> Tuple[LieAlgebraTable, Tuple[int, ...]]:
    """Graded Lie algebra span<D_{a,b}> + V with [a,b] = D_{a,b}.

    D_{a,b} is c -> scale*[a,b,c]. The D basis is the first independent
    D_{e_i,e_j} (i < j, lexicographic); its generators come first, then V.
    Returns the table and the indices of the V basis inside it.
    """
    if not T.is_lts:
        raise StructureError("the Lie envelope needs a Lie triple system (zero binary bracket)")
    scale = as_scalar(scale)
    n = T.dim
    pairs: List[Tuple[int, int]] = []
    matrices: List[Matrix] = []
    echelon = Echelon()
    for i in range(n):
        for j in range(i + 1, n):
            D = T.inner_derivation(T.basis(i), T.basis(j)).scale(scale)
            if not D.is_zero() and echelon.add(D.flatten()) is not None:
                pairs.append((i, j))
                matrices.append(D)
    k = len(matrices)
    span = Matrix.from_columns(n * n, [D.flatten() for D in matrices])

    def d_coordinates(D: Matrix) -> SparseVector:
        x = solve(span, dense_from_sparse(D.flatten(), n * n))
        if x is None:
            raise StructureError("D-span is not closed under commutators; check the L.t.s. axioms")
        return sparse_from_dense(x)

    bracket: Dict[Tuple[int, int], SparseVector] = {}
    for i in range(n):
        for j in range(i + 1, n):
            D = T.inner_derivation(T.basis(i), T.basis(j)).scale(scale)
            if not D.is_zero():
                bracket[(k + i, k + j)] = d_coordinates(D)
    for p, B in enumerate(matrices):
        for j in range(n):
            image = B.column(j)
            if image:
                bracket[(p, k + j)] = {k + l: v for l, v in image.items()}
        for q in range(p + 1, k):
            commutator = B.commutator(matrices[q])
            if not commutator.is_zero():
                bracket[(p, q)] = d_coordinates(commutator)

    names = [f"D({T.names[i]},{T.names[j]})" for i, j in pairs] + list(T.names)
    grading = [1] * k + [-1] * n
    table = LieAlgebraTable(k + n, bracket, grading, names)
    logger.debug(f"Lie envelope of {T.label}: {k} derivation generators + {n} odd generators")
    return table, tuple(range(k, k + n))
