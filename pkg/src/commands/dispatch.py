"""Verb handlers and the exit-code convention.

Exit 0: every check passed. Exit 1: a mathematical check failed or a
hypothesis was violated; the report carries the witness. Exit 2: the input
or the command line could not be used.
"""

import logging
import time
from typing import Callable, Dict, List, Tuple

from pydantic import ValidationError

from src.commands.inputs import load_algebra, load_system, parse_uv_expression, parse_vector
from src.commands.render import render, write_report
from src.models.command import Command, Verb
from src.models.report import AxiomMode, CheckResult, Report, SeriesMode
from src.services.catalog import ALGEBRA_NAMES, SYSTEM_NAMES, algebra_catalog, resolve_system
from src.services.errors import (
    InputError,
    LtsEnvelopeError,
    PreconditionViolatedError,
    StructureError,
)
from src.services.ideal_lab import lemma_suite, truncated_centralizer
from src.services.lts import (
    SubspaceBasis,
    check_axioms,
    is_simple,
    jacobi_witness,
    lie_envelope,
    lower_central_series,
    malcev_to_bol,
)
from src.services.nucleus_lab import ln_alt, n_alt, nuclei, theorem_decompose
from src.services.star_uea import StarSession
from src.services.verification import Verifier
from src.utils.config import config
from src.utils.helpers import fraction_pair, milliseconds, terms_to_json
from src.utils.logger import log_error

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2


def _degree(command: Command) -> int:
    degree = command.degree or config.DEFAULT_DEGREE
    if degree > config.MAX_DEGREE:
        raise InputError(f"degree bound {degree} exceeds MAX_DEGREE={config.MAX_DEGREE}", "--degree")
    return degree


def _dense(vectors, dim: int) -> List[List[List[int]]]:
    return [[fraction_pair(v.get(i, 0)) for i in range(dim)] for v in vectors]


# ------------------------------------------------------------------- verbs


def run_axioms(command: Command) -> Report:
    T = load_system(command)
    report = check_axioms(T, command.mode)
    checks = list(report.checks)
    data: Dict = {"dim": T.dim, "mode": command.mode.value}
    if command.mode == AxiomMode.MALCEV and report.passed:
        bol = check_axioms(malcev_to_bol(T), AxiomMode.BOL)
        checks.extend(check.model_copy(update={"name": f"bol:{check.name}"}) for check in bol.checks)
    elif command.mode == AxiomMode.LTS and report.passed:
        chain, nilpotent = lower_central_series(T, SeriesMode.NILPOTENCY)
        derived, solvable = lower_central_series(T, SeriesMode.SOLVABILITY)
        data.update(
            lower_central_dims=[s.dim for s in chain],
            nilpotent=nilpotent,
            derived_dims=[s.dim for s in derived],
            solvable=solvable,
            simple=is_simple(T),
        )
    return Report(command="axioms", system=T.label, checks=checks, data=data)


def run_envelope(command: Command) -> Report:
    T = load_system(command)
    table, embedding = lie_envelope(T, scale=command.scale)
    witness = jacobi_witness(table)
    check = CheckResult(name="jacobi", passed=witness is None, witness=list(witness) if witness else None)
    brackets = [
        [i, j, k, fraction_pair(c)]
        for i in range(table.dim)
        for j in range(i + 1, table.dim)
        for k, c in sorted(table.basis_bracket(i, j).items())
    ]
    data = {
        "dim": table.dim,
        "scale": command.scale,
        "names": list(table.names),
        "grading": list(table.grading or ()),
        "embedding": list(embedding),
        "brackets": brackets,
    }
    return Report(command="envelope", system=T.label, checks=[check], data=data)


def run_mul(command: Command) -> Report:
    if len(command.expressions) != 2:
        raise InputError("mul needs exactly two expressions", "arguments")
    T = load_system(command)
    session = StarSession(T)
    u, v = (parse_uv_expression(session, text) for text in command.expressions)
    product = u * v
    data = {
        "u": repr(u),
        "v": repr(v),
        "product": repr(product),
        "terms": terms_to_json(product.terms),
    }
    return Report(command="mul", system=T.label, data=data)


def run_centralizer(command: Command) -> Report:
    T = load_system(command)
    session = StarSession(T)
    report = truncated_centralizer(session, _degree(command), command.strategy)
    data = {
        "dim": report.dim,
        "verdict": report.verdict,
        "degree": report.degree,
        "strategy": report.strategy.value,
        "unknowns": report.unknowns,
        "basis": [terms_to_json(u.terms) for u in report.basis],
        "note": report.note,
    }
    return Report(command="centralizer", system=T.label, checks=report.checks, data=data)


def run_nuclei(command: Command) -> Report:
    A = load_algebra(command)
    found = nuclei(A)
    lnalt, system = ln_alt(A)
    nalt = n_alt(A)
    axioms = check_axioms(system, AxiomMode.LTS)
    checks = [check.model_copy(update={"name": f"ln_alt:{check.name}"}) for check in axioms.checks]
    data = {"dim": A.dim}
    for name, space in (*found._asdict().items(), ("ln_alt", lnalt), ("n_alt", nalt)):
        data[f"{name}_dim"] = space.dim
        data[name] = _dense(space.sparse_vectors, A.dim)
    return Report(command="nuclei", system=A.label, checks=checks, data=data)


def run_decompose(command: Command) -> Report:
    A = load_algebra(command)
    if not command.vectors:
        raise InputError("decompose needs at least one --vector spanning V", "--vector")
    V = SubspaceBasis(A.dim, [parse_vector(text, A.dim, f"--vector {i + 1}") for i, text in enumerate(command.vectors)])
    try:
        report = theorem_decompose(A, V, strict=command.strict)
    except PreconditionViolatedError as exc:
        check = CheckResult(name=exc.hypothesis, passed=False, witness=exc.hypothesis, detail=exc.detail)
        return Report(command="decompose", system=A.label, checks=[check], data={"dim": A.dim})
    data = report.model_dump(exclude={"checks"})
    return Report(command="decompose", system=A.label, checks=report.checks, data=data)


def run_verify(command: Command) -> Report:
    if not command.target:
        raise InputError("verify needs an identifier", "arguments")
    if command.target == "lemma-suite":
        T = resolve_system(command.system or "S2")
        checks = lemma_suite(StarSession(T), _degree(command), command.cases, command.seed)
        return Report(command="verify lemma-suite", system=T.label, checks=checks, data={"bound": _degree(command)})
    verifier = Verifier(cases=command.cases, seed=command.seed)
    if command.target not in verifier.ids:
        raise InputError(f"unknown verification '{command.target}' (known: {', '.join(verifier.ids)}, lemma-suite)", "arguments")
    checks, data = verifier.run(command.target, max_n=command.max_n, degree=command.degree)
    return Report(command=f"verify {command.target}", checks=checks, data=data)


def run_catalog(command: Command) -> Report:
    if not command.target:
        return Report(command="catalog", data={"systems": list(SYSTEM_NAMES), "algebras": list(ALGEBRA_NAMES)})
    if command.target in ALGEBRA_NAMES:
        A = algebra_catalog(command.target)
        table = [
            [i, j, k, fraction_pair(c)] for (i, j), vector in sorted(A.table.items()) for k, c in sorted(vector.items())
        ]
        data = {"kind": "algebra", "dim": A.dim, "names": list(A.names), "unit": _dense([A.unit], A.dim)[0], "table": table}
        return Report(command="catalog", system=A.label, data=data)
    T = resolve_system(command.target)
    ternary = [
        [i, j, k, l, fraction_pair(c)] for (i, j, k), vector in sorted(T.ternary.items()) for l, c in sorted(vector.items())
    ]
    binary = [[i, j, l, fraction_pair(c)] for (i, j), vector in sorted(T.binary.items()) for l, c in sorted(vector.items())]
    data = {"kind": "system", "dim": T.dim, "names": list(T.names), "ternary": ternary, "binary": binary}
    return Report(command="catalog", system=T.label, data=data)


HANDLERS: Dict[Verb, Callable[[Command], Report]] = {
    Verb.AXIOMS: run_axioms,
    Verb.ENVELOPE: run_envelope,
    Verb.MUL: run_mul,
    Verb.CENTRALIZER: run_centralizer,
    Verb.NUCLEI: run_nuclei,
    Verb.DECOMPOSE: run_decompose,
    Verb.VERIFY: run_verify,
    Verb.CATALOG: run_catalog,
}


def execute(command: Command) -> Tuple[int, Report]:
    """Run a command and map the outcome to an exit code."""
    start = time.perf_counter()
    try:
        report = HANDLERS[command.verb](command)
    except (InputError, StructureError, ValidationError) as exc:
        log_error(str(exc), command.verb.value)
        position = getattr(exc, "position", None)
        error = CheckResult(name="input", passed=False, witness=position, detail=str(exc))
        return EXIT_USAGE, Report(command=command.verb.value, checks=[error], data={"error": str(exc), "position": position})
    except LtsEnvelopeError as exc:
        log_error(str(exc), command.verb.value)
        error = CheckResult(name=type(exc).__name__, passed=False, detail=str(exc))
        return EXIT_CHECK_FAILED, Report(command=command.verb.value, checks=[error], data={"error": str(exc)})
    if command.timing or config.ENABLE_TIMING:
        report.timing_ms = milliseconds(time.perf_counter() - start)
    return (EXIT_OK if report.passed else EXIT_CHECK_FAILED), report


def dispatch(command: Command) -> int:
    """Execute, write the rendered report, return the exit code."""
    code, report = execute(command)
    write_report(render(report, command.output_format), command.output)
    return code
