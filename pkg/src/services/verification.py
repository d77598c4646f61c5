"""Named verification runs: each id bundles the identity checks and the
bounded-degree evidence for one claim, over the catalog systems it concerns.
"""

import logging
import random
import time
from typing import Any, Callable, Dict, List, Optional, Tuple

from src.models.report import AxiomMode, CheckResult
from src.services import identities
from src.services.catalog import algebra_catalog, resolve_system
from src.services.ideal_lab import (
    check_leading_term,
    compare_strategies,
    so3_condition_det,
    truncated_centralizer,
)
from src.services.lts import SubspaceBasis, check_axioms
from src.services.nucleus_lab import jc_element, ln_alt, theorem_decompose
from src.services.star_uea import StarSession
from src.utils.config import config
from src.utils.helpers import fraction_pair
from src.utils.logger import log_computation_complete

logger = logging.getLogger(__name__)

# star-product construction applies to these catalog entries
LTS_CATALOG = ("S2", "S2tilde", "R2", "so3", "bilinear(2)", "abelian(2)")
IDENTITY_SYSTEMS = ("S2", "so3")
CONJECTURE_SYSTEMS = ("so3", "S2tilde", "S2", "bilinear(2)", "bilinear(3)", "bilinear(4)")
PROPERTY_CASES = 200

# (algebra, V spanned by, expected a_s, expected a_n) for the worked tables
WORKED_TABLES = (
    ("cubic", [0, 1, 0], [0, 0, 0], [0, 1, 0]),
    ("FxF", [1, -1], [1, -1], [0, 0]),
    ("idempotent", [0, 1], [0, 1], [0, 0]),
)

Outcome = Tuple[List[CheckResult], Dict[str, Any]]


class Verifier:
    """Runs verification ids; sessions are shared between the runs of one instance."""

    def __init__(self, cases: Optional[int] = None, seed: Optional[int] = None):
        self.cases = cases or config.RANDOM_CASES
        self.seed = config.RANDOM_SEED if seed is None else seed
        self._sessions: Dict[str, StarSession] = {}
        self._runners: Dict[str, Callable[..., Outcome]] = {
            "commutator-s2": self.commutator_s2,
            "leftmult": self.leftmult,
            "bol-hopf": self.bol_hopf,
            "kloop-division": self.kloop_division,
            "delta-bracket": self.delta_bracket,
            "so3-determinant": self.so3_determinant,
            "centralizer-conjecture": self.centralizer_conjecture,
            "partial-derivative-leading": self.partial_derivative_leading,
            "iterated-commutator-r2": self.iterated_commutator_r2,
            "iterated-commutator-s2": self.iterated_commutator_s2,
            "bilinear-casimir": self.bilinear_casimir,
            "star-identities": self.star_identities,
            "pbw-dimension": self.pbw_dimension,
            "nucleus-lab": self.nucleus_lab,
            "properties": self.properties,
        }

    @property
    def ids(self) -> List[str]:
        return list(self._runners)

    def session(self, name: str) -> StarSession:
        if name not in self._sessions:
            self._sessions[name] = StarSession(resolve_system(name))
        return self._sessions[name]

    def rng(self) -> random.Random:
        return random.Random(self.seed)

    def run(self, verify_id: str, max_n: Optional[int] = None, degree: Optional[int] = None) -> Outcome:
        if verify_id not in self._runners:
            raise KeyError(f"unknown verification '{verify_id}' (known: {', '.join(self._runners)})")
        start = time.perf_counter()
        checks, data = self._runners[verify_id](max_n=max_n, degree=degree)
        log_computation_complete(verify_id, time.perf_counter() - start)
        return checks, data

    # ------------------------------------------------------------------ runs

    def commutator_s2(self, max_n=None, degree=None) -> Outcome:
        max_n = max_n or 8
        rows = identities.commutator_s2_rows(self.session("S2"), max_n)
        data = {
            "rows": [
                {"n": n, "lhs": repr(lhs), "rhs": repr(rhs), "equal": lhs == rhs}
                for n, lhs, rhs in rows
            ]
        }
        return [identities.check_commutator_s2(self.session("S2"), max_n)], data

    def leftmult(self, max_n=None, degree=None) -> Outcome:
        max_exp, degree = max_n or 6, degree or 3
        checks = []
        for name in LTS_CATALOG:
            result = identities.check_leftmult_powers(self.session(name), self.rng(), self.cases, max_exp, degree)
            checks.append(_tagged(result, name))
        return checks, {"max_exp": max_exp, "degree": degree}

    def bol_hopf(self, max_n=None, degree=None) -> Outcome:
        degree = degree or 3
        checks = []
        for name in IDENTITY_SYSTEMS:
            session = self.session(name)
            checks.append(_tagged(identities.check_bol_hopf(session, self.rng(), self.cases, degree), name))
            checks.append(_tagged(identities.check_left_alternative(session, self.rng(), self.cases, degree), name))
        return checks, {"cases": self.cases, "degree": degree}

    def kloop_division(self, max_n=None, degree=None) -> Outcome:
        degree = degree or 3
        checks = [
            _tagged(identities.check_division(self.session(name), self.rng(), self.cases, degree), name)
            for name in IDENTITY_SYSTEMS
        ]
        return checks, {"cases": self.cases, "degree": degree}

    def delta_bracket(self, max_n=None, degree=None) -> Outcome:
        degree = degree or 3
        checks = []
        for name in IDENTITY_SYSTEMS:
            session = self.session(name)
            checks.append(_tagged(identities.check_delta_bracket(session, self.rng(), self.cases, degree), name))
            checks.append(_tagged(identities.check_delta_expansion(session, self.rng(), self.cases, min(degree, 2)), name))
            checks.append(_tagged(identities.check_delta_multiplicative(session, self.rng(), self.cases, min(degree, 2)), name))
            checks.append(_tagged(identities.check_delta_derivation(session, self.rng(), self.cases, min(degree, 2)), name))
        return checks, {"cases": self.cases, "degree": degree}

    def so3_determinant(self, max_n=None, degree=None) -> Outcome:
        total = max_n or 8
        rows = []
        witness = None
        for n in range(total + 1):
            for p in range(total + 1 - n):
                for q in range(total + 1 - n - p):
                    _, det, formula = so3_condition_det(n, p, q)
                    rows.append({"npq": [n, p, q], "det": fraction_pair(det), "formula": fraction_pair(formula)})
                    if det != formula and witness is None:
                        witness = [n, p, q]
        check = CheckResult(name="so3-determinant", passed=witness is None, witness=witness, detail=f"n + p + q <= {total}")
        return [check], {"rows": rows}

    def centralizer_conjecture(self, max_n=None, degree=None) -> Outcome:
        top = degree or 5
        checks, rows = [], []
        for name in CONJECTURE_SYSTEMS:
            session = self.session(name)
            failures = []
            for N in range(2, top + 1):
                report = truncated_centralizer(session, N)
                rows.append({"system": name, "N": N, "dim": report.dim, "verdict": report.verdict})
                checks.extend(_tagged(check, name) for check in report.checks)
                if not report.verdict:
                    failures.append(N)
            checks.append(
                CheckResult(
                    name=f"centralizer-conjecture[{name}]",
                    passed=not failures,
                    witness=failures or None,
                    detail=f"span(1) + V at N = 2..{top}; bounded-degree evidence, not a proof",
                )
            )
        checks.append(_tagged(compare_strategies(self.session("S2"), min(top, 3)), "S2"))
        return checks, {"rows": rows}

    def partial_derivative_leading(self, max_n=None, degree=None) -> Outcome:
        degree = degree or 5
        checks = [_tagged(check_leading_term(self.session(name), degree), name) for name in IDENTITY_SYSTEMS]
        return checks, {"degree": degree}

    def iterated_commutator_r2(self, max_n=None, degree=None) -> Outcome:
        max_n = max_n or 6
        return [identities.check_iterated_commutator_r2(self.session("R2"), max_n)], {"max_n": max_n}

    def iterated_commutator_s2(self, max_n=None, degree=None) -> Outcome:
        max_n = max_n or 6
        return [identities.check_iterated_commutator_s2(self.session("S2"), max_n)], {"max_n": max_n}

    def bilinear_casimir(self, max_n=None, degree=None) -> Outcome:
        names = [f"bilinear({n})" for n in range(2, (max_n or 4) + 1)]
        return [_tagged(identities.check_bilinear_casimir(self.session(name)), name) for name in names], {}

    def star_identities(self, max_n=None, degree=None) -> Outcome:
        degree = degree or 2
        checks = []
        for name in LTS_CATALOG:
            session = self.session(name)
            checks.append(_tagged(identities.check_bracket_recovery(session), name))
            checks.append(_tagged(identities.check_star_identities(session, self.rng(), self.cases, degree), name))
            checks.append(_tagged(identities.check_coalgebra_r(session, degree), name))
        return checks, {"degree": degree}

    def pbw_dimension(self, max_n=None, degree=None) -> Outcome:
        degree = degree or 5
        checks = [_tagged(identities.check_pbw_dimension(self.session(name), degree), name) for name in LTS_CATALOG]
        return checks, {"degree": degree}

    def nucleus_lab(self, max_n=None, degree=None) -> Outcome:
        checks, rows = [], []
        for label, v, expected_s, expected_n in WORKED_TABLES:
            A = algebra_catalog(label)
            a_s, a_n = jc_element(A, v)
            passed = [int(c) for c in a_s] == expected_s and [int(c) for c in a_n] == expected_n
            checks.append(
                CheckResult(name=f"jordan-chevalley[{label}]", passed=passed, witness=None if passed else [str(a_s), str(a_n)])
            )
            report = theorem_decompose(A, SubspaceBasis(A.dim, [{i: c for i, c in enumerate(v) if c}]))
            checks.extend(_tagged(check, label) for check in report.checks)
            rows.append({"algebra": label, "q_dim": len(report.q_basis), "r_dim": len(report.r_basis), "verdict": report.verdict})
        octonions = algebra_catalog("octonions")
        subspace, system = ln_alt(octonions)
        checks.append(CheckResult(name="ln-alt-full[octonions]", passed=subspace.is_full()))
        axioms = check_axioms(system, AxiomMode.LTS)
        checks.extend(_tagged(check, "octonions") for check in axioms.checks)
        return checks, {"rows": rows}

    def properties(self, max_n=None, degree=None) -> Outcome:
        degree = degree or 3
        cases = max(self.cases, PROPERTY_CASES)
        checks = []
        for name in LTS_CATALOG:
            checks.extend(_tagged(check, name) for check in check_axioms(self.session(name).system, AxiomMode.LTS).checks)
            checks.extend(
                _tagged(check, name) for check in identities.property_suite(self.session(name), cases, self.seed, degree)
            )
        return checks, {"cases": cases, "degree": degree}


def _tagged(check: CheckResult, system: str) -> CheckResult:
    return check.model_copy(update={"name": f"{check.name}[{system}]"})
