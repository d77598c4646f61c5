"""Exact rational linear algebra: sparse matrices, elimination, minimal
polynomials and the Jordan-Chevalley decomposition over the rationals.

Scalars are ``fractions.Fraction``. Elimination runs on integer rows with
the content divided out after every step, picking the leftmost available
pivot, so results do not depend on anything but the input.
"""

import logging
from fractions import Fraction
from math import gcd, lcm
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from sympy import QQ, Poly, Rational, Symbol

from src.services.errors import StructureError

logger = logging.getLogger(__name__)

Scalar = Fraction
SparseVector = Dict[int, Fraction]

_T = Symbol("t")


def as_scalar(value) -> Fraction:
    """Coerce ints, Fractions, "p/q" strings and (num, den) pairs to Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (tuple, list)) and len(value) == 2:
        return Fraction(int(value[0]), int(value[1]))
    return Fraction(value)


def add_scaled(target: SparseVector, source: Mapping[int, Fraction], coef) -> None:
    """target += coef * source, dropping entries that cancel."""
    if not coef:
        return
    for key, value in source.items():
        new = target.get(key, 0) + coef * value
        if new:
            target[key] = new
        else:
            target.pop(key, None)


def sparse_from_dense(values: Sequence) -> SparseVector:
    scalars = ((i, as_scalar(v)) for i, v in enumerate(values))
    return {i: v for i, v in scalars if v}


def dense_from_sparse(vector: Mapping[int, Fraction], length: int) -> List[Fraction]:
    return [Fraction(vector.get(i, 0)) for i in range(length)]


class Matrix:
    """Immutable sparse rows x cols matrix with Fraction entries."""

    __slots__ = ("rows", "cols", "_rows")

    def __init__(self, rows: int, cols: int, entries: Mapping[Tuple[int, int], object] = None):
        if rows < 0 or cols < 0:
            raise StructureError(f"invalid matrix shape {rows}x{cols}")
        self.rows = rows
        self.cols = cols
        data: Dict[int, SparseVector] = {}
        for (r, c), value in (entries or {}).items():
            if not (0 <= r < rows and 0 <= c < cols):
                raise StructureError(f"entry ({r}, {c}) outside a {rows}x{cols} matrix")
            value = as_scalar(value)
            if value:
                data.setdefault(r, {})[c] = value
        self._rows = data

    @classmethod
    def _from_row_dicts(cls, rows: int, cols: int, data: Dict[int, SparseVector]) -> "Matrix":
        m = cls.__new__(cls)
        m.rows = rows
        m.cols = cols
        m._rows = {r: row for r, row in data.items() if row}
        return m

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "Matrix":
        n_rows = len(rows)
        n_cols = len(rows[0]) if n_rows else 0
        data = {}
        for r, row in enumerate(rows):
            if len(row) != n_cols:
                raise StructureError("ragged rows in matrix literal")
            sparse = sparse_from_dense(row)
            if sparse:
                data[r] = sparse
        return cls._from_row_dicts(n_rows, n_cols, data)

    @classmethod
    def from_columns(cls, rows: int, columns: Sequence[Mapping[int, Fraction]]) -> "Matrix":
        data: Dict[int, SparseVector] = {}
        for c, column in enumerate(columns):
            for r, value in column.items():
                if value:
                    data.setdefault(r, {})[c] = as_scalar(value)
        return cls._from_row_dicts(rows, len(columns), data)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls._from_row_dicts(n, n, {i: {i: Fraction(1)} for i in range(n)})

    @classmethod
    def zero(cls, rows: int, cols: int) -> "Matrix":
        return cls._from_row_dicts(rows, cols, {})

    # ------------------------------------------------------------------ access

    def get(self, r: int, c: int) -> Fraction:
        return self._rows.get(r, {}).get(c, Fraction(0))

    def row(self, r: int) -> SparseVector:
        return dict(self._rows.get(r, {}))

    def column(self, c: int) -> SparseVector:
        return {r: row[c] for r, row in self._rows.items() if c in row}

    def entries(self) -> Dict[Tuple[int, int], Fraction]:
        return {(r, c): v for r, row in self._rows.items() for c, v in row.items()}

    def to_dense(self) -> List[List[Fraction]]:
        return [dense_from_sparse(self._rows.get(r, {}), self.cols) for r in range(self.rows)]

    def flatten(self) -> SparseVector:
        """Row-major vectorisation, used to compare spans of matrices."""
        return {r * self.cols + c: v for r, row in self._rows.items() for c, v in row.items()}

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return not self._rows

    # -------------------------------------------------------------- arithmetic

    def _check_shape(self, other: "Matrix") -> None:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise StructureError(
                f"shape mismatch {self.rows}x{self.cols} vs {other.rows}x{other.cols}"
            )

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_shape(other)
        data = {r: dict(row) for r, row in self._rows.items()}
        for r, row in other._rows.items():
            target = data.setdefault(r, {})
            add_scaled(target, row, 1)
        return Matrix._from_row_dicts(self.rows, self.cols, data)

    def __neg__(self) -> "Matrix":
        return self.scale(-1)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scale(self, coef) -> "Matrix":
        coef = as_scalar(coef)
        if not coef:
            return Matrix.zero(self.rows, self.cols)
        data = {r: {c: coef * v for c, v in row.items()} for r, row in self._rows.items()}
        return Matrix._from_row_dicts(self.rows, self.cols, data)

    def __mul__(self, other):
        if not isinstance(other, Matrix):
            return self.scale(other)
        if self.cols != other.rows:
            raise StructureError(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        data: Dict[int, SparseVector] = {}
        for r, row in self._rows.items():
            acc: SparseVector = {}
            for k, value in row.items():
                other_row = other._rows.get(k)
                if other_row:
                    add_scaled(acc, other_row, value)
            if acc:
                data[r] = acc
        return Matrix._from_row_dicts(self.rows, other.cols, data)

    def __rmul__(self, coef):
        return self.scale(coef)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.rows, self.cols, self._rows) == (other.rows, other.cols, other._rows)

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, frozenset(self.entries().items())))

    def __repr__(self) -> str:
        return f"Matrix({self.rows}x{self.cols}, {self.to_dense()})"

    def transpose(self) -> "Matrix":
        data: Dict[int, SparseVector] = {}
        for r, row in self._rows.items():
            for c, v in row.items():
                data.setdefault(c, {})[r] = v
        return Matrix._from_row_dicts(self.cols, self.rows, data)

    def apply(self, vector: Sequence) -> List[Fraction]:
        """Matrix times a dense column vector."""
        if len(vector) != self.cols:
            raise StructureError(f"vector of length {len(vector)} for {self.cols} columns")
        return dense_from_sparse(self.apply_sparse(sparse_from_dense(vector)), self.rows)

    def apply_sparse(self, vector: Mapping[int, Fraction]) -> SparseVector:
        out: SparseVector = {}
        for r, row in self._rows.items():
            total = sum((v * vector[c] for c, v in row.items() if c in vector), Fraction(0))
            if total:
                out[r] = total
        return out

    def commutator(self, other: "Matrix") -> "Matrix":
        return self * other - other * self

    def power(self, exponent: int) -> "Matrix":
        if not self.is_square:
            raise StructureError("power of a non-square matrix")
        result = Matrix.identity(self.rows)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def is_nilpotent(self) -> bool:
        return self.power(self.rows).is_zero() if self.rows else True


# ------------------------------------------------------------------ elimination


def _integer_row(row: Mapping[int, Fraction]) -> Dict[int, int]:
    """Clear denominators and divide out the content."""
    if not row:
        return {}
    denominator = lcm(*(Fraction(v).denominator for v in row.values()))
    ints = {c: int(Fraction(v) * denominator) for c, v in row.items() if v}
    content = 0
    for v in ints.values():
        content = gcd(content, v)
    if content > 1:
        ints = {c: v // content for c, v in ints.items()}
    return ints


def _eliminate(row: Dict[int, int], pivot: Dict[int, int], col: int) -> Dict[int, int]:
    """Fraction-free: pivot[col] * row - row[col] * pivot, then primitive."""
    p = pivot[col]
    f = row[col]
    out: Dict[int, int] = {c: p * v for c, v in row.items()}
    for c, v in pivot.items():
        new = out.get(c, 0) - f * v
        if new:
            out[c] = new
        else:
            out.pop(c, None)
    content = 0
    for v in out.values():
        content = gcd(content, v)
    if content > 1:
        out = {c: v // content for c, v in out.items()}
    return out


class Echelon:
    """Incremental reduced echelon form over integer rows.

    Every stored pivot row is reduced against every other pivot column, so
    membership and coordinate queries only need a single reduction pass.
    """

    def __init__(self):
        self.pivots: Dict[int, Dict[int, int]] = {}

    def reduce(self, row: Dict[int, int]) -> Dict[int, int]:
        row = dict(row)
        for col in sorted(c for c in row if c in self.pivots):
            if col in row:
                row = _eliminate(row, self.pivots[col], col)
        return row

    def add(self, row: Mapping[int, Fraction]) -> Optional[int]:
        """Insert a row; returns the new pivot column or None if dependent."""
        reduced = self.reduce(_integer_row(row))
        if not reduced:
            return None
        lead = min(reduced)
        for col, pivot_row in list(self.pivots.items()):
            if lead in pivot_row:
                self.pivots[col] = _eliminate(pivot_row, reduced, lead)
        self.pivots[lead] = reduced
        return lead

    def contains(self, row: Mapping[int, Fraction]) -> bool:
        return not self.reduce(_integer_row(row))

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def rref_rows(self) -> List[Tuple[int, SparseVector]]:
        """(pivot column, row normalised to leading 1), sorted by pivot."""
        out = []
        for col in sorted(self.pivots):
            row = self.pivots[col]
            lead = row[col]
            out.append((col, {c: Fraction(v, lead) for c, v in row.items()}))
        return out


def row_reduce(rows: Iterable[Mapping[int, Fraction]]) -> List[Tuple[int, SparseVector]]:
    """Reduced row echelon form of a list of sparse rows (zero rows dropped)."""
    echelon = Echelon()
    for row in rows:
        echelon.add(row)
    return echelon.rref_rows()


def rank(M: Matrix) -> int:
    return len(row_reduce(M.row(r) for r in range(M.rows)))


def solve(M: Matrix, b: Sequence) -> Optional[List[Fraction]]:
    """Some x with Mx = b (free variables set to zero), or None if inconsistent."""
    if M.rows != len(b):
        raise StructureError(f"right-hand side of length {len(b)} for {M.rows} rows")
    rhs_col = M.cols
    rows = []
    for r in range(M.rows):
        row = M.row(r)
        value = as_scalar(b[r])
        if value:
            row[rhs_col] = value
        rows.append(row)
    x = [Fraction(0)] * M.cols
    for col, row in row_reduce(rows):
        if col == rhs_col:
            return None
        x[col] = row.get(rhs_col, Fraction(0))
    return x


def nullspace(M: Matrix) -> List[List[Fraction]]:
    """Basis of {x : Mx = 0}; one vector per free column, free entry 1."""
    reduced = row_reduce(M.row(r) for r in range(M.rows))
    pivot_cols = {col for col, _ in reduced}
    basis = []
    for free in range(M.cols):
        if free in pivot_cols:
            continue
        vector = [Fraction(0)] * M.cols
        vector[free] = Fraction(1)
        for col, row in reduced:
            value = row.get(free)
            if value:
                vector[col] = -value
        basis.append(vector)
    return basis


def determinant(M: Matrix) -> Fraction:
    if not M.is_square:
        raise StructureError("determinant of a non-square matrix")
    n = M.rows
    rows = [dense_from_sparse(M.row(r), n) for r in range(n)]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = -det
        lead = rows[col][col]
        det *= lead
        for r in range(col + 1, n):
            factor = rows[r][col] / lead
            if factor:
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[col])]
    return det


# ------------------------------------------------------------------ polynomials


class Polynomial:
    """Dense univariate polynomial over Q, lowest degree first."""

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Iterable = ()):
        coeffs = [as_scalar(c) for c in coefficients]
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        self.coefficients: Tuple[Fraction, ...] = tuple(coeffs)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return not self.coefficients

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coefficients == other.coefficients

    def __hash__(self) -> int:
        return hash(self.coefficients)

    def __repr__(self) -> str:
        if self.is_zero():
            return "Polynomial(0)"
        terms = [f"{c}*t^{i}" for i, c in enumerate(self.coefficients) if c]
        return "Polynomial(" + " + ".join(terms) + ")"

    def to_sympy(self) -> Poly:
        coeffs = [Rational(c.numerator, c.denominator) for c in reversed(self.coefficients)]
        return Poly(coeffs or [0], _T, domain=QQ)

    @classmethod
    def from_sympy(cls, poly: Poly) -> "Polynomial":
        coeffs = [Fraction(int(c.p), int(c.q)) for c in poly.all_coeffs()]
        return cls(reversed(coeffs))

    def evaluate(self, M: Matrix) -> Matrix:
        """p(M) by Horner's rule."""
        n = M.rows
        result = Matrix.zero(n, n)
        identity = Matrix.identity(n)
        for c in reversed(self.coefficients):
            result = result * M + identity.scale(c)
        return result


def min_poly(M: Matrix) -> Polynomial:
    """Monic minimal polynomial, from the first linear dependency among the
    powers I, M, M^2, ... (Krylov sequence on the vectorised powers)."""
    if not M.is_square:
        raise StructureError("minimal polynomial of a non-square matrix")
    n = M.rows
    if n == 0:
        return Polynomial([1])
    size = n * n
    powers = [Matrix.identity(n)]
    while True:
        current = powers[-1] * M
        columns = [p.flatten() for p in powers]
        target = current.flatten()
        x = solve(Matrix.from_columns(size, columns), dense_from_sparse(target, size))
        if x is not None:
            return Polynomial([-c for c in x] + [1])
        powers.append(current)


def squarefree_part(p: Polynomial) -> Polynomial:
    """p / gcd(p, p'), made monic."""
    if p.is_zero():
        raise StructureError("squarefree part of the zero polynomial")
    f = p.to_sympy()
    g = f.gcd(f.diff(_T))
    return Polynomial.from_sympy(f.exquo(g).monic())


def jordan_chevalley(M: Matrix) -> Tuple[Matrix, Matrix]:
    """(Ms, Mn) with M = Ms + Mn, commuting, Mn nilpotent, Ms semisimple.

    Newton iteration s <- s - f(s)/f'(s) in Q[t]/(m) where m is the minimal
    polynomial and f its squarefree part; s starts at t and ends at the
    polynomial expressing Ms in terms of M.
    """
    if not M.is_square:
        raise StructureError("Jordan-Chevalley decomposition of a non-square matrix")
    m = min_poly(M).to_sympy()
    f = squarefree_part(Polynomial.from_sympy(m)).to_sympy()
    df = f.diff(_T)
    s = Poly(_T, _T, domain=QQ)
    steps = 0
    while True:
        fs = f.compose(s).rem(m)
        if fs.is_zero:
            break
        correction = (fs * df.compose(s).rem(m).invert(m)).rem(m)
        s = (s - correction).rem(m)
        steps += 1
    logger.debug(f"Jordan-Chevalley: {steps} Newton steps, min poly degree {m.degree()}")
    semisimple = Polynomial.from_sympy(s).evaluate(M)
    return semisimple, M - semisimple
