import random
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Any, Dict, List, Sequence, Tuple


def fraction_pair(value) -> List[int]:
    """Exact JSON form [numerator, denominator] of a rational."""
    value = Fraction(value)
    return [value.numerator, value.denominator]


def pair_to_fraction(pair: Sequence[int]) -> Fraction:
    """Inverse of ``fraction_pair``; rejects zero denominators."""
    if len(pair) != 2:
        raise ValueError(f"expected [num, den], got {pair}")
    num, den = int(pair[0]), int(pair[1])
    if den == 0:
        raise ValueError("zero denominator")
    return Fraction(num, den)


def terms_to_json(terms: Dict[Tuple[int, ...], Fraction]) -> List[List[Any]]:
    """Sparse element as a sorted list of [monomial, [num, den]]."""
    ordered = sorted(terms.items(), key=lambda item: (len(item[0]), item[0]))
    return [[list(key), fraction_pair(coef)] for key, coef in ordered]


def random_coefficient(rng: random.Random) -> Fraction:
    """Small nonzero rational, occasionally a half or a third."""
    value = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]))
    if rng.random() < 0.25:
        value /= rng.choice([2, 3])
    return value


def random_terms(
    rng: random.Random, ngens: int, max_degree: int, max_terms: int, min_degree: int = 0
) -> Dict[Tuple[int, ...], Fraction]:
    """Random sparse combination of weakly increasing monomials."""
    if ngens == 0:
        return {(): random_coefficient(rng)}
    keys = [
        key
        for d in range(min_degree, max_degree + 1)
        for key in combinations_with_replacement(range(ngens), d)
    ]
    count = rng.randint(1, max_terms)
    return {rng.choice(keys): random_coefficient(rng) for _ in range(count)}


def random_uv_element(session, rng: random.Random, max_degree: int, max_terms: int = 3, min_degree: int = 0):
    """Random element of U(V) in the given session."""
    return session.element(random_terms(rng, session.dim, max_degree, max_terms, min_degree))


def random_assoc_element(algebra, rng: random.Random, max_degree: int, max_terms: int = 3):
    """Random element of a PBW algebra."""
    return algebra.element(random_terms(rng, algebra.ngens, max_degree, max_terms))


def milliseconds(seconds: float) -> List[int]:
    """Timing as an exact pair of whole milliseconds."""
    return fraction_pair(int(round(seconds * 1000)))
