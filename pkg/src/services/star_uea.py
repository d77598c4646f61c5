"""The non-associative enveloping algebra U(V) of a Lie triple system.

U(V) is realised inside U(L), L the Lie envelope, as the subalgebra
generated by V under the star product

    x * y = sum r(x_(1)) y r(x_(2)),

where r inverts q(x) = sum x_(1) x_(2). The session builds the envelope of
(V, 4[ , , ]) so that a(bc) - b(ac) = [a, b, c] holds in U(V) for the
bracket the user supplied. UV monomials are weakly increasing tuples of V
indices and stand for the right-normed products a_i1 * (a_i2 * ( ... )).
"""

import logging
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Dict, List, Mapping, Optional, Tuple

from src.services.errors import AmbientMismatchError, NotInSubalgebraError, StructureError
from src.services.lie_uea import (
    AssocElement,
    Monomial,
    PBWAlgebra,
    Terms,
    add_terms,
    sub_multisets,
    terms_degree,
)
from src.services.linalg import Matrix, as_scalar, solve
from src.services.lts import TernarySystem, lie_envelope
from src.utils.logger import log_session_start

logger = logging.getLogger(__name__)

UVKey = Tuple[int, ...]
TensorKey = Tuple[UVKey, UVKey]

ENVELOPE_SCALE = 4


def uv_monomials(n: int, max_degree: int, min_degree: int = 0) -> List[UVKey]:
    """All weakly increasing keys over n letters, by degree then lexicographically."""
    keys: List[UVKey] = []
    for d in range(min_degree, max_degree + 1):
        keys.extend(combinations_with_replacement(range(n), d))
    return keys


class StarSession:
    """Envelope, star product and U(V) for one Lie triple system.

    All caches are functions of the system alone, so results never depend
    on the order of calls.
    """

    def __init__(self, system: TernarySystem):
        if not system.is_lts:
            raise StructureError(
                "the star-product construction covers Lie triple systems only (nonzero binary bracket given)"
            )
        self.system = system
        self.dim = system.dim
        self.table, self.embedding = lie_envelope(system, scale=ENVELOPE_SCALE)
        self.algebra = PBWAlgebra(self.table)
        self.offset = self.table.dim - self.dim
        self._q_cache: Dict[Monomial, Tuple] = {}
        self._r_cache: Dict[Monomial, Tuple] = {}
        self._delta_r_cache: Dict[Monomial, Tuple] = {}
        self._star_cache: Dict[Tuple[Monomial, Monomial], Tuple] = {}
        self._embed_cache: Dict[UVKey, Tuple] = {(): (((), Fraction(1)),)}
        self._product_cache: Dict[Tuple[UVKey, UVKey], Tuple] = {}
        log_session_start(system.label, self.table.dim)

    def __repr__(self) -> str:
        return f"StarSession({self.system.label}, envelope dim {self.table.dim})"

    def cache_sizes(self) -> Dict[str, int]:
        sizes = self.algebra.cache_sizes()
        sizes.update(
            r=len(self._r_cache),
            star=len(self._star_cache),
            embed=len(self._embed_cache),
            products=len(self._product_cache),
        )
        return sizes

    # ---------------------------------------------------------------- q and r

    def q_monomial(self, m: Monomial) -> Terms:
        cached = self._q_cache.get(m)
        if cached is None:
            out: Terms = {}
            for left, right, weight in sub_multisets(m):
                add_terms(out, self.algebra.multiply_monomials(left, right), weight)
            cached = tuple(out.items())
            self._q_cache[m] = cached
        return dict(cached)

    def r_monomial(self, m: Monomial) -> Terms:
        """r(m) = (m - r(q(m) - 2^d m)) / 2^d; q is 2^d on top degree."""
        if not m:
            return {(): Fraction(1)}
        cached = self._r_cache.get(m)
        if cached is None:
            scale = Fraction(1, 2 ** len(m))
            low = self.q_monomial(m)
            add_terms(low, {m: 1}, -(2 ** len(m)))
            out: Terms = {m: scale}
            for term, coef in low.items():
                add_terms(out, self.r_monomial(term), -coef * scale)
            cached = tuple(out.items())
            self._r_cache[m] = cached
        return dict(cached)

    def _delta_r(self, m: Monomial) -> Tuple:
        """Sweedler pairs of r(m); r is a coalgebra map so this is (r (x) r) of Delta(m)."""
        cached = self._delta_r_cache.get(m)
        if cached is None:
            out: Dict[Tuple[Monomial, Monomial], Fraction] = {}
            for term, coef in self.r_monomial(m).items():
                add_terms(out, self.algebra.coproduct_monomial(term), coef)
            cached = tuple(out.items())
            self._delta_r_cache[m] = cached
        return cached

    def star_monomials(self, m1: Monomial, m2: Monomial) -> Terms:
        if not m1:
            return {m2: Fraction(1)}
        if not m2:
            return {m1: Fraction(1)}
        key = (m1, m2)
        cached = self._star_cache.get(key)
        if cached is None:
            alg = self.algebra
            out: Terms = {}
            for (p, q), coef in self._delta_r(m1):
                for term, c in alg.multiply_monomials(m2, q).items():
                    add_terms(out, alg.multiply_monomials(p, term), coef * c)
            cached = tuple(out.items())
            self._star_cache[key] = cached
        return dict(cached)

    def star_terms(self, x: Mapping[Monomial, Fraction], y: Mapping[Monomial, Fraction]) -> Terms:
        out: Terms = {}
        for m1, a in x.items():
            for m2, b in y.items():
                add_terms(out, self.star_monomials(m1, m2), a * b)
        return out

    # -------------------------------------------------------------- embedding

    def embed_terms(self, key: UVKey) -> Terms:
        cached = self._embed_cache.get(key)
        if cached is None:
            tail = self.embed_terms(key[1:])
            g = self.embedding[key[0]]
            # a * y = (a y + y a) / 2 for a generator a
            out: Terms = {}
            half = Fraction(1, 2)
            for m, c in tail.items():
                add_terms(out, self.algebra.left_mul(g, m), c * half)
                add_terms(out, self.algebra.multiply_monomials(m, (g,)), c * half)
            cached = tuple(out.items())
            self._embed_cache[key] = cached
        return dict(cached)

    def embed(self, u: "UVElement") -> AssocElement:
        self._check(u)
        out: Terms = {}
        for key, c in u.terms.items():
            add_terms(out, self.embed_terms(key), c)
        return AssocElement(self.algebra, out)

    # ---------------------------------------------------------- normalisation

    def _uv_key(self, m: Monomial) -> Optional[UVKey]:
        if m and m[0] < self.offset:
            return None
        return tuple(i - self.offset for i in m)

    def normalize_terms(self, terms: Mapping[Monomial, Fraction]) -> Dict[UVKey, Fraction]:
        """Peel off the top filtration degree until nothing is left."""
        remaining = dict(terms)
        result: Dict[UVKey, Fraction] = {}
        while remaining:
            d = terms_degree(remaining)
            for m in [m for m in remaining if len(m) == d]:
                coef = remaining.get(m)
                if not coef:
                    continue
                key = self._uv_key(m)
                if key is None:
                    raise NotInSubalgebraError(
                        f"top-degree monomial {m} contains an envelope derivation generator"
                    )
                add_terms(result, {key: coef})
                add_terms(remaining, self.embed_terms(key), -coef)
        return result

    def normalize_by_solve(self, terms: Mapping[Monomial, Fraction]) -> Dict[UVKey, Fraction]:
        """Same coordinates from one linear solve against every embedded monomial."""
        if not terms:
            return {}
        keys = uv_monomials(self.dim, terms_degree(terms))
        columns = [self.embed_terms(key) for key in keys]
        rows: Dict[Monomial, int] = {}
        for column in columns:
            for m in column:
                rows.setdefault(m, len(rows))
        for m in terms:
            rows.setdefault(m, len(rows))
        M = Matrix.from_columns(len(rows), [{rows[m]: c for m, c in col.items()} for col in columns])
        b = [Fraction(0)] * len(rows)
        for m, c in terms.items():
            b[rows[m]] = c
        x = solve(M, b)
        if x is None:
            raise NotInSubalgebraError("element is not in the span of the embedded PBW monomials")
        return {key: v for key, v in zip(keys, x) if v}

    # --------------------------------------------------------------- products

    def multiply_monomials(self, k1: UVKey, k2: UVKey) -> Dict[UVKey, Fraction]:
        if not k1:
            return {k2: Fraction(1)}
        if not k2:
            return {k1: Fraction(1)}
        if len(k1) == 1 and k1[0] <= k2[0]:
            return {k1 + k2: Fraction(1)}
        key = (k1, k2)
        cached = self._product_cache.get(key)
        if cached is None:
            product_terms = self.star_terms(self.embed_terms(k1), self.embed_terms(k2))
            cached = tuple(self.normalize_terms(product_terms).items())
            self._product_cache[key] = cached
            if len(self._product_cache) % 500 == 0:
                logger.debug(f"{self.system.label}: {self.cache_sizes()}")
        return dict(cached)

    # --------------------------------------------------------------- elements

    def _check(self, u: "UVElement") -> None:
        if u.session is not self:
            raise AmbientMismatchError("UV elements belong to different sessions")

    def element(self, terms: Mapping[UVKey, object] = None) -> "UVElement":
        return UVElement(self, terms or {})

    def one(self) -> "UVElement":
        return UVElement(self, {(): 1})

    def zero(self) -> "UVElement":
        return UVElement(self, {})

    def generator(self, i: int) -> "UVElement":
        return UVElement(self, {(i,): 1})

    def from_vector(self, vector: Mapping[int, Fraction]) -> "UVElement":
        return UVElement(self, {(i,): c for i, c in vector.items()})

    def power(self, i: int, n: int) -> "UVElement":
        """Right-normed power a_i^n."""
        return UVElement(self, {(i,) * n: 1})

    def envelope_generator(self, i: int) -> AssocElement:
        return self.algebra.generator(i)


class UVElement:
    """Element of U(V) in the right-normed PBW basis."""

    __slots__ = ("session", "terms")

    def __init__(self, session: StarSession, terms: Mapping[UVKey, object]):
        self.session = session
        clean: Dict[UVKey, Fraction] = {}
        for key, c in terms.items():
            key = tuple(key)
            if any(b < a for a, b in zip(key, key[1:])):
                raise StructureError(f"UV monomial {key} is not weakly increasing")
            c = as_scalar(c)
            if c:
                clean[key] = c
        self.terms = clean

    def _coerce(self, other) -> "UVElement":
        if isinstance(other, UVElement):
            self.session._check(other)
            return other
        return UVElement(self.session, {(): other})

    def __add__(self, other) -> "UVElement":
        other = self._coerce(other)
        out = dict(self.terms)
        add_terms(out, other.terms)
        return UVElement(self.session, out)

    __radd__ = __add__

    def __neg__(self) -> "UVElement":
        return UVElement(self.session, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other) -> "UVElement":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "UVElement":
        return self._coerce(other) - self

    def __mul__(self, other) -> "UVElement":
        if isinstance(other, UVElement):
            return uv_multiply(self, other)
        coef = as_scalar(other)
        return UVElement(self.session, {k: coef * c for k, c in self.terms.items()})

    def __rmul__(self, scale) -> "UVElement":
        return self * scale

    def __eq__(self, other) -> bool:
        if isinstance(other, UVElement):
            return self.session is other.session and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == UVElement(self.session, {(): other}).terms
        return NotImplemented

    __hash__ = None

    def __repr__(self) -> str:
        return format_uv(self)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return terms_degree(self.terms)

    def homogeneous(self, d: int) -> "UVElement":
        return UVElement(self.session, {k: c for k, c in self.terms.items() if len(k) == d})


class UVTensor:
    """Element of U(V) (x) U(V) keyed by pairs of UV monomials."""

    __slots__ = ("session", "terms")

    def __init__(self, session: StarSession, terms: Mapping[TensorKey, object]):
        self.session = session
        self.terms = {key: as_scalar(c) for key, c in terms.items() if c}

    def __eq__(self, other) -> bool:
        if not isinstance(other, UVTensor):
            return NotImplemented
        return self.session is other.session and self.terms == other.terms

    __hash__ = None

    def __repr__(self) -> str:
        return " + ".join(f"{c}*{l}(x){r}" for (l, r), c in sorted(self.terms.items())) or "0"

    def pairs(self) -> List[Tuple[UVElement, UVElement, Fraction]]:
        s = self.session
        return [(UVElement(s, {l: 1}), UVElement(s, {r: 1}), c) for (l, r), c in self.terms.items()]


def format_uv(u: UVElement) -> str:
    names = u.session.system.names
    if not u.terms:
        return "0"
    parts = []
    for key, c in sorted(u.terms.items(), key=lambda item: (len(item[0]), item[0])):
        word = ".".join(names[i] for i in key) or "1"
        parts.append(word if c == 1 and key else f"{c} {word}" if key else f"{c}")
    return " + ".join(parts)


# ------------------------------------------------------------------ operations


def q_map(session: StarSession, x: AssocElement) -> AssocElement:
    out: Terms = {}
    for m, c in x.terms.items():
        add_terms(out, session.q_monomial(m), c)
    return AssocElement(session.algebra, out)


def r_map(session: StarSession, x: AssocElement) -> AssocElement:
    out: Terms = {}
    for m, c in x.terms.items():
        add_terms(out, session.r_monomial(m), c)
    return AssocElement(session.algebra, out)


def star_product(session: StarSession, x: AssocElement, y: AssocElement) -> AssocElement:
    if x.algebra is not session.algebra or y.algebra is not session.algebra:
        raise AmbientMismatchError("star product of elements outside this session's envelope")
    return AssocElement(session.algebra, session.star_terms(x.terms, y.terms))


def embed_uv_monomial(session: StarSession, key: UVKey) -> AssocElement:
    return AssocElement(session.algebra, session.embed_terms(tuple(key)))


def uv_normalize(session: StarSession, x: AssocElement, method: str = "solve") -> UVElement:
    """Coordinates of x in the embedded PBW basis; raises NotInSubalgebraError.

    ``solve`` is one linear solve against every embedded monomial up to the
    degree of x. ``peel`` strips the top filtration degree repeatedly; the
    product of U(V) uses it internally and ``check_normalization`` compares
    the two.
    """
    if x.algebra is not session.algebra:
        raise AmbientMismatchError("element lives in a different enveloping algebra")
    if method == "peel":
        terms = session.normalize_terms(x.terms)
    elif method == "solve":
        terms = session.normalize_by_solve(x.terms)
    else:
        raise ValueError(f"unknown normalisation method '{method}'")
    return UVElement(session, terms)


def uv_multiply(u: UVElement, v: UVElement) -> UVElement:
    session = u.session
    session._check(v)
    out: Dict[UVKey, Fraction] = {}
    for k1, a in u.terms.items():
        for k2, b in v.terms.items():
            add_terms(out, session.multiply_monomials(k1, k2), a * b)
    return UVElement(session, out)


def uv_coproduct(u: UVElement) -> UVTensor:
    """Delta on right-normed monomials: every letter is primitive and Delta is
    multiplicative, so a monomial splits over its sub-multisets."""
    out: Dict[TensorKey, Fraction] = {}
    for key, c in u.terms.items():
        for left, right, weight in sub_multisets(key):
            add_terms(out, {(left, right): Fraction(weight)}, c)
    return UVTensor(u.session, out)


def uv_coproduct_via_envelope(u: UVElement) -> UVTensor:
    """Delta computed in U(L) on embed(u), then both legs normalised."""
    session = u.session
    alg = session.algebra
    delta: Dict[Tuple[Monomial, Monomial], Fraction] = {}
    for m, c in session.embed(u).terms.items():
        add_terms(delta, alg.coproduct_monomial(m), c)
    by_left: Dict[Monomial, Terms] = {}
    for (p, q), c in delta.items():
        add_terms(by_left.setdefault(p, {}), {q: c})
    by_right_key: Dict[UVKey, Terms] = {}
    for p, right in by_left.items():
        for key, c in session.normalize_terms(right).items():
            add_terms(by_right_key.setdefault(key, {}), {p: c})
    out: Dict[TensorKey, Fraction] = {}
    for right_key, left in by_right_key.items():
        for left_key, c in session.normalize_terms(left).items():
            add_terms(out, {(left_key, right_key): c})
    return UVTensor(session, out)


def uv_counit(u: UVElement) -> Fraction:
    return u.terms.get((), Fraction(0))


def s_automorphism(u: UVElement) -> UVElement:
    """Extension of a -> -a: sign (-1)^degree on each monomial."""
    return UVElement(u.session, {k: c if len(k) % 2 == 0 else -c for k, c in u.terms.items()})


def left_divide(x: UVElement, y: UVElement) -> UVElement:
    """x \\ y = S(x) y."""
    return uv_multiply(s_automorphism(x), y)


def right_unit_divide(x: UVElement) -> UVElement:
    """x \\ 1 = S(x)."""
    return s_automorphism(x)


def delta_map(x: UVElement, y: UVElement, z: UVElement) -> UVElement:
    """sum (x_(1) y_(1)) \\ (x_(2) (y_(2) z))."""
    session = x.session
    out = session.zero()
    for x1, x2, a in uv_coproduct(x).pairs():
        for y1, y2, b in uv_coproduct(y).pairs():
            out = out + left_divide(x1 * y1, x2 * (y2 * z)) * (a * b)
    return out


def associator(x: UVElement, y: UVElement, z: UVElement) -> UVElement:
    """(x, y, z) = (xy)z - x(yz)."""
    return (x * y) * z - x * (y * z)
