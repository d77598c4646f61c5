"""Associative PBW enveloping algebra U(L) of a ``LieAlgebraTable``.

Monomials are weakly increasing tuples of generator indices; elements are
sparse dicts monomial -> Fraction. Products are rewritten to normal form by
swapping out-of-order neighbours, g h = h g + [g, h].
"""

import logging
import math
from fractions import Fraction
from itertools import product
from typing import Callable, Dict, Iterable, Mapping, Tuple

from src.services.errors import AmbientMismatchError
from src.services.linalg import as_scalar
from src.services.lts import LieAlgebraTable

logger = logging.getLogger(__name__)

Monomial = Tuple[int, ...]
Terms = Dict[Monomial, Fraction]

# degree of the zero element
ZERO_DEGREE = -1


def add_terms(target: Dict, source: Mapping, coef=1) -> None:
    """target += coef * source over any hashable keys."""
    if not coef:
        return
    for key, value in source.items():
        new = target.get(key, 0) + coef * value
        if new:
            target[key] = new
        else:
            target.pop(key, None)


def terms_degree(terms: Mapping[Monomial, Fraction]) -> int:
    return max((len(m) for m in terms), default=ZERO_DEGREE)


def sub_multisets(m: Monomial) -> Iterable[Tuple[Monomial, Monomial, int]]:
    """(sub, complement, multiplicity) over sub-multisets of a sorted monomial.

    Both parts stay sorted; the multiplicity counts the position subsets
    giving the same split.
    """
    groups = []
    for g in m:
        if groups and groups[-1][0] == g:
            groups[-1][1] += 1
        else:
            groups.append([g, 1])
    for choice in product(*(range(count + 1) for _, count in groups)):
        left, right, weight = [], [], 1
        for (g, count), k in zip(groups, choice):
            left.extend([g] * k)
            right.extend([g] * (count - k))
            weight *= math.comb(count, k)
        yield tuple(left), tuple(right), weight


class PBWAlgebra:
    """U(L) with memoised normal-form products.

    Caches hold immutable tuples of items so handing out fresh dicts never
    exposes shared state.
    """

    def __init__(self, table: LieAlgebraTable):
        self.table = table
        self.ngens = table.dim
        self._left_cache: Dict[Tuple[int, Monomial], Tuple] = {}
        self._pair_cache: Dict[Tuple[Monomial, Monomial], Tuple] = {}
        self._coproduct_cache: Dict[Monomial, Tuple] = {}

    def __repr__(self) -> str:
        return f"PBWAlgebra(ngens={self.ngens})"

    def cache_sizes(self) -> Dict[str, int]:
        return {
            "left": len(self._left_cache),
            "pairs": len(self._pair_cache),
            "coproduct": len(self._coproduct_cache),
        }

    # ------------------------------------------------------------- rewriting

    def left_mul(self, g: int, m: Monomial) -> Terms:
        """Normal form of g * m for a generator g."""
        if not m or g <= m[0]:
            return {(g,) + m: Fraction(1)}
        key = (g, m)
        cached = self._left_cache.get(key)
        if cached is not None:
            return dict(cached)
        h, rest = m[0], m[1:]
        out: Terms = {}
        # g h rest = h (g rest) + [g, h] rest
        for term, coef in self.left_mul(g, rest).items():
            add_terms(out, self.left_mul(h, term), coef)
        for k, coef in self.table.basis_bracket(g, h).items():
            add_terms(out, self.left_mul(k, rest), coef)
        self._left_cache[key] = tuple(out.items())
        return out

    def multiply_monomials(self, m1: Monomial, m2: Monomial) -> Terms:
        if not m1:
            return {m2: Fraction(1)}
        if not m2:
            return {m1: Fraction(1)}
        if m1[-1] <= m2[0]:
            return {m1 + m2: Fraction(1)}
        if len(m1) == 1:
            return self.left_mul(m1[0], m2)
        key = (m1, m2)
        cached = self._pair_cache.get(key)
        if cached is not None:
            return dict(cached)
        out: Terms = {}
        for term, coef in self.left_mul(m1[-1], m2).items():
            add_terms(out, self.multiply_monomials(m1[:-1], term), coef)
        self._pair_cache[key] = tuple(out.items())
        return out

    def multiply_terms(self, x: Mapping[Monomial, Fraction], y: Mapping[Monomial, Fraction]) -> Terms:
        out: Terms = {}
        for m1, a in x.items():
            for m2, b in y.items():
                add_terms(out, self.multiply_monomials(m1, m2), a * b)
        return out

    def coproduct_monomial(self, m: Monomial) -> Dict[Tuple[Monomial, Monomial], Fraction]:
        cached = self._coproduct_cache.get(m)
        if cached is None:
            cached = tuple(
                ((left, right), Fraction(weight)) for left, right, weight in sub_multisets(m)
            )
            self._coproduct_cache[m] = cached
        return dict(cached)

    # -------------------------------------------------------------- elements

    def element(self, terms: Mapping[Monomial, object] = None) -> "AssocElement":
        return AssocElement(self, terms or {})

    def one(self) -> "AssocElement":
        return AssocElement(self, {(): 1})

    def zero(self) -> "AssocElement":
        return AssocElement(self, {})

    def generator(self, i: int) -> "AssocElement":
        return AssocElement(self, {(i,): 1})

    def from_vector(self, vector: Mapping[int, Fraction]) -> "AssocElement":
        return AssocElement(self, {(i,): v for i, v in vector.items()})


class AssocElement:
    """Element of U(L) in the PBW basis."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: PBWAlgebra, terms: Mapping[Monomial, object]):
        self.algebra = algebra
        clean: Terms = {}
        for m, c in terms.items():
            c = as_scalar(c)
            if c:
                clean[tuple(m)] = c
        self.terms = clean

    def _check(self, other: "AssocElement") -> None:
        if other.algebra is not self.algebra:
            raise AmbientMismatchError("elements belong to different enveloping algebras")

    def _coerce(self, other) -> "AssocElement":
        if isinstance(other, AssocElement):
            self._check(other)
            return other
        return AssocElement(self.algebra, {(): other})

    def __add__(self, other) -> "AssocElement":
        other = self._coerce(other)
        out = dict(self.terms)
        add_terms(out, other.terms)
        return AssocElement(self.algebra, out)

    __radd__ = __add__

    def __neg__(self) -> "AssocElement":
        return AssocElement(self.algebra, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "AssocElement":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "AssocElement":
        return self._coerce(other) - self

    def __mul__(self, other) -> "AssocElement":
        if isinstance(other, AssocElement):
            return pbw_multiply(self, other)
        coef = as_scalar(other)
        return AssocElement(self.algebra, {m: coef * c for m, c in self.terms.items()})

    def __rmul__(self, scale) -> "AssocElement":
        return self * scale

    def __eq__(self, other) -> bool:
        if isinstance(other, AssocElement):
            return self.algebra is other.algebra and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == AssocElement(self.algebra, {(): other}).terms
        return NotImplemented

    __hash__ = None

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{m}" for m, c in sorted(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return terms_degree(self.terms)

    def homogeneous(self, d: int) -> "AssocElement":
        return AssocElement(self.algebra, {m: c for m, c in self.terms.items() if len(m) == d})

    def map_terms(self, f: Callable[[Monomial], Mapping[Monomial, Fraction]]) -> "AssocElement":
        """Linear extension of a monomial map."""
        out: Terms = {}
        for m, c in self.terms.items():
            add_terms(out, f(m), c)
        return AssocElement(self.algebra, out)


class TensorElement:
    """Element of U(L) (x) U(L) keyed by monomial pairs."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: PBWAlgebra, terms: Mapping[Tuple[Monomial, Monomial], object]):
        self.algebra = algebra
        self.terms = {key: as_scalar(c) for key, c in terms.items() if c}

    def __add__(self, other: "TensorElement") -> "TensorElement":
        out = dict(self.terms)
        add_terms(out, other.terms)
        return TensorElement(self.algebra, out)

    def __sub__(self, other: "TensorElement") -> "TensorElement":
        out = dict(self.terms)
        add_terms(out, other.terms, -1)
        return TensorElement(self.algebra, out)

    def __mul__(self, other: "TensorElement") -> "TensorElement":
        """Componentwise product (x1 (x) x2)(y1 (x) y2) = x1 y1 (x) x2 y2."""
        alg = self.algebra
        out: Dict[Tuple[Monomial, Monomial], Fraction] = {}
        for (a1, a2), c in self.terms.items():
            for (b1, b2), d in other.terms.items():
                left = alg.multiply_monomials(a1, b1)
                right = alg.multiply_monomials(a2, b2)
                for l, u in left.items():
                    for r, v in right.items():
                        add_terms(out, {(l, r): u * v}, c * d)
        return TensorElement(alg, out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.algebra is other.algebra and self.terms == other.terms

    __hash__ = None

    def __repr__(self) -> str:
        return " + ".join(f"{c}*{l}(x){r}" for (l, r), c in sorted(self.terms.items())) or "0"

    def flip(self) -> "TensorElement":
        return TensorElement(self.algebra, {(r, l): c for (l, r), c in self.terms.items()})

    def apply(self, left: Callable, right: Callable) -> "TensorElement":
        """(f (x) g) applied leg-wise; f and g map a monomial to terms."""
        out: Dict[Tuple[Monomial, Monomial], Fraction] = {}
        for (l, r), c in self.terms.items():
            for l2, u in left(l).items():
                for r2, v in right(r).items():
                    add_terms(out, {(l2, r2): u * v}, c)
        return TensorElement(self.algebra, out)


def pbw_multiply(x: AssocElement, y: AssocElement) -> AssocElement:
    x._check(y)
    return AssocElement(x.algebra, x.algebra.multiply_terms(x.terms, y.terms))


def coproduct(x: AssocElement) -> TensorElement:
    out: Dict[Tuple[Monomial, Monomial], Fraction] = {}
    for m, c in x.terms.items():
        add_terms(out, x.algebra.coproduct_monomial(m), c)
    return TensorElement(x.algebra, out)


def counit(x: AssocElement) -> Fraction:
    return x.terms.get((), Fraction(0))


def degree(x: AssocElement) -> int:
    return x.degree()


def identity_terms(m: Monomial) -> Terms:
    return {m: Fraction(1)}


def counit_terms(m: Monomial) -> Terms:
    return {(): Fraction(1)} if not m else {}
