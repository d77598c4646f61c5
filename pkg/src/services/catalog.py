"""Named example systems and algebras.

Systems: S2, S2tilde, R2, so3 (as an L.t.s.), so3-lie (binary only, for the
Malcev checks), bilinear(G), abelian(n), direct_sum(T1, T2).
Algebras for the nucleus lab: cubic = F[x]/(x^3), FxF, idempotent =
F[x]/(x^2 - x), matrix2 = 2x2 matrices, octonions.
"""

import logging
import re
from fractions import Fraction
from itertools import product
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

from src.services.errors import StructureError
from src.services.linalg import Matrix, as_scalar, determinant
from src.services.lts import TernarySystem
from src.services.nucleus_lab import FinAlgebra

logger = logging.getLogger(__name__)

SYSTEM_NAMES = ("S2", "S2tilde", "R2", "so3", "so3-lie", "bilinear", "abelian", "direct_sum")
ALGEBRA_NAMES = ("cubic", "FxF", "idempotent", "matrix2", "octonions")

_SO3_LIE = {(0, 1): {2: 1}, (1, 2): {0: 1}, (2, 0): {1: 1}}


def _antisymmetric(table: Mapping[Tuple[int, int], Mapping[int, int]]) -> Dict:
    out = {}
    for (i, j), vector in table.items():
        out[(i, j)] = dict(vector)
        out[(j, i)] = {k: -v for k, v in vector.items()}
    return out


def _skew_ternary(table: Mapping[Tuple[int, int, int], Mapping[int, int]]) -> Dict:
    """Complete [a,b,c] = -[b,a,c] from the listed entries."""
    out = {}
    for (i, j, k), vector in table.items():
        out[(i, j, k)] = dict(vector)
        out[(j, i, k)] = {l: -v for l, v in vector.items()}
    return out


def s2() -> TernarySystem:
    ternary = _skew_ternary({(0, 1, 0): {0: 2}, (0, 1, 1): {1: -2}})
    return TernarySystem(2, ternary, names=("e", "f"), label="S2")


def s2_tilde() -> TernarySystem:
    ternary = _skew_ternary({(0, 1, 0): {1: 1}, (0, 1, 1): {0: -1}})
    return TernarySystem(2, ternary, names=("x", "y"), label="S2tilde")


def r2() -> TernarySystem:
    ternary = _skew_ternary({(0, 1, 0): {1: -1}})
    return TernarySystem(2, ternary, names=("a", "b"), label="R2")


def so3_lie() -> TernarySystem:
    return TernarySystem(3, binary=_antisymmetric(_SO3_LIE), names=("x", "y", "z"), label="so3-lie")


def so3() -> TernarySystem:
    """[a,b,c] = [[a,b],c] with [x,y] = z, [y,z] = x, [z,x] = y."""
    lie = so3_lie()
    e = lie.basis
    ternary = {}
    for i, j, k in product(range(3), repeat=3):
        value = lie.binary_bracket(lie.binary_bracket(e(i), e(j)), e(k))
        if value:
            ternary[(i, j, k)] = value
    return TernarySystem(3, ternary, names=lie.names, label="so3")


def bilinear(form: Sequence[Sequence]) -> TernarySystem:
    """[a,b,c] = (a,c)b - (b,c)a for a symmetric nondegenerate form."""
    G = [[as_scalar(v) for v in row] for row in form]
    n = len(G)
    if n == 0 or any(len(row) != n for row in G):
        raise StructureError("bilinear form must be a nonempty square matrix")
    if any(G[i][j] != G[j][i] for i in range(n) for j in range(n)):
        raise StructureError("bilinear form must be symmetric")
    if determinant(Matrix.from_rows(G)) == 0:
        raise StructureError("bilinear form must be nondegenerate")
    ternary = {}
    for i, j, k in product(range(n), repeat=3):
        vector: Dict[int, Fraction] = {}
        if G[i][k]:
            vector[j] = vector.get(j, 0) + G[i][k]
        if G[j][k]:
            vector[i] = vector.get(i, 0) - G[j][k]
        vector = {l: v for l, v in vector.items() if v}
        if vector:
            ternary[(i, j, k)] = vector
    label = f"bilinear({n})" if G == identity_form(n) else f"bilinear({n},custom)"
    return TernarySystem(n, ternary, names=[f"x{i + 1}" for i in range(n)], label=label)


def identity_form(n: int) -> List[List[Fraction]]:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def abelian(n: int) -> TernarySystem:
    if n < 0:
        raise StructureError("abelian system needs n >= 0")
    return TernarySystem(n, names=[f"a{i + 1}" for i in range(n)], label=f"abelian({n})")


def direct_sum(left: TernarySystem, right: TernarySystem) -> TernarySystem:
    shift = left.dim
    ternary = dict(left.ternary)
    for (i, j, k), vector in right.ternary.items():
        ternary[(i + shift, j + shift, k + shift)] = {l + shift: v for l, v in vector.items()}
    binary = dict(left.binary)
    for (i, j), vector in right.binary.items():
        binary[(i + shift, j + shift)] = {l + shift: v for l, v in vector.items()}
    names = list(left.names)
    for name in right.names:
        names.append(name if name not in names else f"{name}'")
    return TernarySystem(
        left.dim + right.dim, ternary, binary, names, f"direct_sum({left.label},{right.label})"
    )


def catalog(name: str, params: Optional[Mapping[str, Any]] = None) -> TernarySystem:
    """Look up a named system; parameterised entries read ``params``."""
    params = dict(params or {})
    builders = {"S2": s2, "S2tilde": s2_tilde, "R2": r2, "so3": so3, "so3-lie": so3_lie}
    if name in builders:
        return builders[name]()
    if name == "bilinear":
        form = params.get("form")
        if form is None:
            form = identity_form(int(params.get("n", 3)))
        return bilinear(form)
    if name == "abelian":
        return abelian(int(params.get("n", 1)))
    if name == "direct_sum":
        left, right = params.get("left"), params.get("right")
        if left is None or right is None:
            raise StructureError("direct_sum needs 'left' and 'right'")
        if isinstance(left, str):
            left = resolve_system(left)
        if isinstance(right, str):
            right = resolve_system(right)
        return direct_sum(left, right)
    raise StructureError(f"unknown catalog system '{name}' (known: {', '.join(SYSTEM_NAMES)})")


def _split_arguments(text: str) -> List[str]:
    parts, depth, current = [], 0, ""
    for char in text:
        if char == "," and depth == 0:
            parts.append(current.strip())
            current = ""
            continue
        depth += (char == "(") - (char == ")")
        current += char
    if current.strip():
        parts.append(current.strip())
    return parts


def resolve_system(text: str) -> TernarySystem:
    """Parse command-line names such as ``so3``, ``bilinear(3)``,
    ``abelian(2)`` or ``direct_sum(S2,abelian(1))``."""
    text = text.strip()
    match = re.fullmatch(r"([A-Za-z0-9_\-]+)\s*(?:\((.*)\))?", text)
    if not match:
        raise StructureError(f"cannot parse system name '{text}'")
    name, inner = match.group(1), match.group(2)
    if inner is None:
        return catalog(name)
    args = _split_arguments(inner)
    if name in ("bilinear", "abelian") and len(args) == 1 and args[0].isdigit():
        return catalog(name, {"n": int(args[0])})
    if name == "direct_sum" and len(args) == 2:
        return catalog(name, {"left": args[0], "right": args[1]})
    raise StructureError(f"bad arguments for catalog system '{text}'")


# -------------------------------------------------------------------- algebras


def cubic() -> FinAlgebra:
    """F[x]/(x^3) on the basis 1, x, x^2."""
    table = {}
    for i, j in product(range(3), repeat=2):
        if i + j < 3:
            table[(i, j)] = {i + j: 1}
    return FinAlgebra(3, table, unit=0, names=("1", "x", "x2"), label="cubic")


def f_times_f() -> FinAlgebra:
    """F x F on the idempotents (1,0), (0,1); the unit is their sum."""
    table = {(0, 0): {0: 1}, (1, 1): {1: 1}}
    return FinAlgebra(2, table, unit=[1, 1], names=("p", "q"), label="FxF")


def idempotent() -> FinAlgebra:
    """F[x]/(x^2 - x) on the basis 1, x."""
    table = {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}, (1, 1): {1: 1}}
    return FinAlgebra(2, table, unit=0, names=("1", "x"), label="idempotent")


def matrix2() -> FinAlgebra:
    """2x2 matrices on E11, E12, E21, E22."""
    units = [(0, 0), (0, 1), (1, 0), (1, 1)]
    table = {}
    for p, (a, b) in enumerate(units):
        for q, (c, d) in enumerate(units):
            if b == c:
                table[(p, q)] = {units.index((a, d)): 1}
    return FinAlgebra(4, table, unit=[1, 0, 0, 1], names=("E11", "E12", "E21", "E22"), label="matrix2")


def octonions() -> FinAlgebra:
    """Octonions on 1, e1..e7 with e_i e_{i+1} = e_{i+3} (indices mod 7)."""
    table: Dict[Tuple[int, int], Dict[int, int]] = {}
    for i in range(8):
        table[(0, i)] = {i: 1}
        table[(i, 0)] = {i: 1}
    for i in range(1, 8):
        table[(i, i)] = {0: -1}
    for t in range(7):
        a, b, c = (t % 7) + 1, ((t + 1) % 7) + 1, ((t + 3) % 7) + 1
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            table[(x, y)] = {z: 1}
            table[(y, x)] = {z: -1}
    names = ["1"] + [f"e{i}" for i in range(1, 8)]
    return FinAlgebra(8, table, unit=0, names=names, label="octonions")


def algebra_catalog(name: str) -> FinAlgebra:
    builders = {
        "cubic": cubic,
        "FxF": f_times_f,
        "idempotent": idempotent,
        "matrix2": matrix2,
        "octonions": octonions,
    }
    if name not in builders:
        raise StructureError(f"unknown catalog algebra '{name}' (known: {', '.join(ALGEBRA_NAMES)})")
    return builders[name]()
