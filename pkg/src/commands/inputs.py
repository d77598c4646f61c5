"""Loading ternary systems, algebras, vectors and U(V) expressions from the command line."""

import json
import logging
import re
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List

from pydantic import ValidationError

from src.models.command import Command
from src.models.schemas import MultiplicationTableFile, StructureConstantsFile
from src.services.catalog import algebra_catalog, resolve_system
from src.services.errors import InputError
from src.services.linalg import SparseVector
from src.services.lts import TernarySystem
from src.services.nucleus_lab import FinAlgebra
from src.services.star_uea import StarSession, UVElement
from src.utils.helpers import pair_to_fraction

logger = logging.getLogger(__name__)


def load_json(path: Path) -> Any:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {path}: {exc.msg}", f"line {exc.lineno} column {exc.colno}") from exc


def _validation_error(path: Path, exc: ValidationError) -> InputError:
    first = exc.errors()[0]
    location = ".".join(str(part) for part in first["loc"]) or "document"
    return InputError(f"invalid {path}: {first['msg']}", location)


def system_from_file(path: Path) -> TernarySystem:
    try:
        parsed = StructureConstantsFile.model_validate(load_json(path))
    except ValidationError as exc:
        raise _validation_error(path, exc) from exc
    ternary: Dict[tuple, Dict[int, Fraction]] = {}
    for i, j, k, l, num, den in parsed.ternary:
        ternary.setdefault((i, j, k), {})[l] = Fraction(num, den)
    binary: Dict[tuple, Dict[int, Fraction]] = {}
    for i, j, l, num, den in parsed.binary:
        binary.setdefault((i, j), {})[l] = Fraction(num, den)
    logger.debug(f"loaded {parsed.label} from {path}: {len(ternary)} ternary, {len(binary)} binary entries")
    return TernarySystem(parsed.dim, ternary, binary, parsed.names, parsed.label)


def algebra_from_file(path: Path) -> FinAlgebra:
    try:
        parsed = MultiplicationTableFile.model_validate(load_json(path))
    except ValidationError as exc:
        raise _validation_error(path, exc) from exc
    table: Dict[tuple, Dict[int, Fraction]] = {}
    for i, j, k, num, den in parsed.table:
        table.setdefault((i, j), {})[k] = Fraction(num, den)
    unit = parsed.unit if isinstance(parsed.unit, int) else [pair_to_fraction(pair) for pair in parsed.unit]
    return FinAlgebra(parsed.dim, table, unit, parsed.names, parsed.label)


def load_system(command: Command) -> TernarySystem:
    if command.file is not None:
        return system_from_file(command.file)
    return resolve_system(command.system)


def load_algebra(command: Command) -> FinAlgebra:
    if command.file is not None:
        return algebra_from_file(command.file)
    return algebra_catalog(command.algebra)


def parse_scalar(text: str, position: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"not a rational number: '{text}'", position) from exc


def parse_vector(text: str, dim: int, position: str = "vector") -> SparseVector:
    """Comma separated coordinates such as ``0,1,-1/2``."""
    parts = [part for part in text.split(",")]
    if len(parts) != dim:
        raise InputError(f"expected {dim} coordinates, got {len(parts)}", position)
    values = [parse_scalar(part, f"{position}[{i}]") for i, part in enumerate(parts)]
    return {i: v for i, v in enumerate(values) if v}


_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_']*")


def parse_uv_expression(session: StarSession, text: str) -> UVElement:
    """Sum of terms ``c x*y*z`` read as right-normed products x*(y*z).

    Coefficients are rationals in front of the word (``1/2 e*f``, ``-e``,
    ``3``); ``.`` also separates letters.
    """
    names: List[str] = list(session.system.names)
    result = session.zero()
    chunks = [chunk for chunk in text.replace("-", "+-").split("+") if chunk.strip()]
    if not chunks:
        raise InputError("empty expression", "expression")
    for position, chunk in enumerate(chunks):
        where = f"expression term {position + 1}"
        coefficient = Fraction(1)
        letters: List[int] = []
        for token in (t for t in re.split(r"[\s*.]+", chunk.strip()) if t):
            if token.startswith("-"):
                coefficient = -coefficient
                token = token[1:]
                if not token:
                    continue
            if _NAME.fullmatch(token):
                if token not in names:
                    raise InputError(f"unknown generator '{token}' (known: {', '.join(names)})", where)
                letters.append(names.index(token))
            elif letters:
                raise InputError(f"coefficient '{token}' after a generator", where)
            else:
                coefficient *= parse_scalar(token, where)
        term = session.one()
        for index in reversed(letters):
            term = session.generator(index) * term
        result = result + term * coefficient
    return result
