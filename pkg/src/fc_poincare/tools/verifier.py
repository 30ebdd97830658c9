"""
The cross-check battery behind `fcpoincare verify`.

Every check runs in isolation: an exception inside one is logged and reported
as a FAIL for that check, and the battery carries on with the next.
"""
import logging
import random
import time
from typing import Callable, Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel

from ..core.polyring import ONE, Polynomial, eval_int, monomial
from ..core import trimatrix
from ..methods import closedform, fcenum, recur
from ..utils.config_loader import VerifySettings

logger = logging.getLogger(__name__)

CheckOutcome = Tuple[bool, str]

# Saturated gap sums are checked for every b up to this bound, whatever n is.
SATURATED_RANGE = 12


class CheckResult(BaseModel):
    name: str
    status: Literal["PASS", "FAIL"]
    detail: str = ""


METHOD_ORDER = (
    "oracle",
    "permutation",
    "partition",
    "main-recurrence",
    "coefficient-sums",
    "chain",
    "shortcut",
)


def method_callables(
    n: int,
    table: recur.CoeffTable,
    settings: VerifySettings,
    chain_table: Optional[recur.CoeffTable] = None,
    warning_rank: Optional[int] = None,
) -> Dict[str, Optional[Callable[[], Polynomial]]]:
    """
    One zero-argument callable per method, in METHOD_ORDER. Methods that do not
    apply at this n map to None: chain and shortcut below n = 1, permutation
    once S_{n+1} is above the cap. chain_table, when given, feeds the chain
    and shortcut formulas instead of `table`.
    """
    chain_table = chain_table or table
    closed_applies = n >= 1
    return {
        "oracle": lambda: fcenum.oracle_poincare(n),
        "permutation": (
            (lambda: fcenum.inversion_polynomial(n + 1, settings.permutation_cap))
            if n + 1 <= settings.permutation_cap else None
        ),
        "partition": lambda: recur.poincare_by_partition(n),
        "main-recurrence": lambda: recur.poincare_by_main_recurrence(n, table),
        "coefficient-sums": lambda: recur.poincare_by_coefficient_sums(n, table),
        "chain": (
            (lambda: closedform.poincare_chain_formula(n, chain_table, warning_rank))
            if closed_applies else None
        ),
        "shortcut": (
            (lambda: closedform.poincare_shortcut_formula(n, chain_table, warning_rank))
            if closed_applies else None
        ),
    }


def compute_all_methods(n: int, table: recur.CoeffTable, settings: VerifySettings) -> Dict[str, Optional[Polynomial]]:
    """a_n by every method the battery runs at this n; the rest map to None."""
    callables = method_callables(n, table, settings)
    if n > settings.oracle_count_limit:
        callables["oracle"] = None
    if n > settings.chain_warning_rank:
        callables["chain"] = callables["shortcut"] = None
    return {name: (fn() if fn is not None else None) for name, fn in callables.items()}


class VerificationBattery:
    """
    Runs every identity check up to rank n. Coefficient-level checks reach
    j = n + 2, the rows the rank-n identities consume.
    """

    def __init__(self, n: int, settings: Optional[VerifySettings] = None, inject_fault: bool = False):
        self.n = n
        self.settings = settings or VerifySettings()
        self.coeff_bound = n + 2 if n >= 1 else 1
        self.table = recur.build_coeff_table(n + 3, inject_fault=inject_fault)
        self.P = trimatrix.from_table(self.table, self.coeff_bound)
        self._inverse: Optional[trimatrix.UnitriMatrix] = None

    @property
    def inverse(self) -> trimatrix.UnitriMatrix:
        if self._inverse is None:
            self._inverse = trimatrix.invert_unitriangular(self.P)
        return self._inverse

    def checks(self) -> List[Tuple[str, Callable[[], CheckOutcome]]]:
        return [
            ("method agreement", self.check_method_agreement),
            ("catalan counts", self.check_catalan_counts),
            ("catalan triangle", self.check_catalan_triangle),
            ("normal forms vs permutations", self.check_normal_form_bijection),
            ("last generator: direct vs table", self.check_last_generator_routes),
            ("basic recurrence", self.check_basic_recurrence),
            ("closed form b_j^k", self.check_closed_form_table),
            ("B_j^k at q=0 and q=1", self.check_specializations),
            ("B-view recurrence residual", self.check_b_view_residual),
            ("subdiagonal b_j^(j-1)", self.check_subdiagonal),
            ("catalan recurrence", self.check_catalan_recurrence),
            ("saturated gap sums", self.check_saturated_gap_sums),
            ("b(j,k,t) recurrence", self.check_b_small_recurrence),
            ("general solver on random instances", self.check_random_instances),
            ("general solver on the poincare instance", self.check_poincare_instance),
            ("inverse: substitution vs chains", self.check_inverse_routes),
            ("P times its inverse", self.check_inverse_product),
            ("shortcut c_(n+2)^1", self.check_shortcut),
            ("generic relation", self.check_generic_relation),
            ("double shift first column", self.check_double_shift),
        ]

    def run(self) -> List[CheckResult]:
        results = []
        for name, check in self.checks():
            started = time.time()
            try:
                ok, detail = check()
            except Exception as e:
                logger.error(f"Check '{name}' raised: {e}", exc_info=True)
                ok, detail = False, f"{type(e).__name__}: {e}"
            logger.info(f"Check '{name}' finished in {time.time() - started:.2f}s.")
            results.append(CheckResult(name=name, status="PASS" if ok else "FAIL", detail=detail))
        return results

    def check_method_agreement(self) -> CheckOutcome:
        for m in range(0, self.n + 1):
            computed = {k: v for k, v in compute_all_methods(m, self.table, self.settings).items() if v is not None}
            reference = computed["partition"]
            for method, value in computed.items():
                if value != reference:
                    return False, f"n={m}: {method} gives {value}, partition gives {reference}"
        return True, f"all methods agree for 0 <= n <= {self.n}"

    def check_catalan_counts(self) -> CheckOutcome:
        for m in range(0, self.n + 1):
            if eval_int(recur.poincare_by_partition(m), 1) != fcenum.catalan(m + 1):
                return False, f"a_{m}(1) != C_{m + 1}"
        for m in range(0, min(self.n, self.settings.oracle_count_limit) + 1):
            count = sum(1 for _ in fcenum.enumerate_normal_forms(m))
            if count != fcenum.catalan(m + 1):
                return False, f"n={m}: {count} normal forms, expected C_{m + 1} = {fcenum.catalan(m + 1)}"
        return True, f"a_n(1) = C_(n+1) for n <= {self.n}"

    def check_catalan_triangle(self) -> CheckOutcome:
        for m in range(1, min(self.n, self.settings.triangle_oracle_limit) + 1):
            oracle_row = fcenum.oracle_triangle_row(m)
            if oracle_row != recur.last_generator_row(m):
                return False, f"n={m}: recurrence row differs from the enumeration"
            for j, value in enumerate(oracle_row, start=1):
                expected = j * recur.binomial(2 * m - j + 1, m) // (m + 1)
                if eval_int(value, 1) != expected:
                    return False, f"a_{m}^{j}(1) = {eval_int(value, 1)}, formula gives {expected}"
        return True, "q-Catalan triangle matches"

    def check_normal_form_bijection(self) -> CheckOutcome:
        for m in range(0, min(self.n, 8, self.settings.permutation_cap - 1) + 1):
            images = {}
            for form in fcenum.enumerate_normal_forms(m):
                perm = fcenum.normal_form_to_permutation(form, m)
                if perm.inversions != form.length:
                    return False, f"{form.render()}: length {form.length}, inversions {perm.inversions}"
                images[perm.images] = form
            avoiding = {p.images for p in fcenum.enumerate_321_avoiding(m + 1, self.settings.permutation_cap)}
            if set(images) != avoiding:
                return False, f"n={m}: normal forms do not map onto the 321-avoiding permutations"
        return True, ""

    def check_last_generator_routes(self) -> CheckOutcome:
        a = [recur.poincare_by_partition(m) for m in range(0, self.n + 1)]
        for m in range(1, self.n + 1):
            row = recur.last_generator_row(m)
            for j in range(1, m + 1):
                if recur.a_last_via_table(m, j, self.table, a) != row[j - 1]:
                    return False, f"a_{m}^{j} differs between the two recurrences"
        return True, ""

    def check_basic_recurrence(self) -> CheckOutcome:
        for m in range(2, self.n + 1):
            for j in range(2, m + 1):
                if not recur.check_basic_recurrence(m, j):
                    return False, f"fails at n={m}, j={j}"
        return True, ""

    def check_closed_form_table(self) -> CheckOutcome:
        for j in range(1, self.coeff_bound + 1):
            for k in range(1, j + 1):
                if closedform.b_closed(j, k) != self.table.b(j, k):
                    return False, f"first disagreement at (j,k)=({j},{k})"
        return True, f"1 <= k <= j <= {self.coeff_bound}"

    def check_specializations(self) -> CheckOutcome:
        for j in range(1, self.coeff_bound + 1):
            for k in range(1, j + 1):
                if not recur.check_B_at_zero(j, k, self.table):
                    return False, f"B_{j}^{k}(0) != 1"
                if not recur.check_B_at_one(j, k, self.table):
                    return False, f"B_{j}^{k}(1) is not the signed binomial"
        return True, ""

    def check_b_view_residual(self) -> CheckOutcome:
        for j in range(3, self.coeff_bound + 1):
            for k in range(2, j):
                if not recur.b_view_residual(self.table, j, k).is_zero():
                    return False, f"nonzero residual at (j,k)=({j},{k})"
        return True, ""

    def check_subdiagonal(self) -> CheckOutcome:
        for j in range(2, self.coeff_bound + 1):
            if not recur.check_subdiagonal(j, self.table):
                return False, f"b_{j}^{j - 1} != 1 - psi({j - 1})"
        return True, ""

    def check_catalan_recurrence(self) -> CheckOutcome:
        for m in range(1, self.n + 1):
            if not recur.check_catalan_recurrence(m):
                return False, f"fails at n={m}"
        return True, ""

    def check_saturated_gap_sums(self) -> CheckOutcome:
        top = SATURATED_RANGE
        for spec in saturated_specs(top, max_gaps=3):
            if closedform.sigma_pi(spec) != closedform.saturated_monomial(spec):
                return False, f"SigmaPi({spec.a},{spec.b}){list(spec.lengths)} is not the expected monomial"
        return True, f"b <= {top}, u <= 3"

    def check_b_small_recurrence(self) -> CheckOutcome:
        for j in range(4, self.coeff_bound + 1):
            for k in range(2, j - 1):
                for t in range(1, k + 1):
                    if not closedform.check_b_small_recurrence(j, k, t):
                        return False, f"fails at (j,k,t)=({j},{k},{t})"
        return True, ""

    def check_random_instances(self) -> CheckOutcome:
        rng = random.Random(self.settings.random_seed)
        for index in range(self.settings.random_instances):
            N = rng.randint(1, self.settings.random_max_dim)
            inst = trimatrix.random_instance(rng, N, self.settings.random_entry_bound)
            if trimatrix.solve_by_recurrence(inst) != trimatrix.solve_by_chain_formula(inst):
                return False, f"instance {index} (N={N}) disagrees"
        return True, f"{self.settings.random_instances} instances"

    def check_poincare_instance(self) -> CheckOutcome:
        N = self.n + 1
        inst = trimatrix.poincare_instance(self.table, N)
        by_recurrence = trimatrix.solve_by_recurrence(inst)
        by_chains = trimatrix.solve_by_chain_formula(inst)
        for m in range(1, N + 1):
            expected = monomial(m + 1) * recur.poincare_by_partition(m - 1)
            if by_recurrence[m - 1] != expected or by_chains[m - 1] != expected:
                return False, f"u_{m} != q^{m + 1} a_{m - 1}"
        return True, f"N = {N}"

    def check_inverse_routes(self) -> CheckOutcome:
        bound = min(self.coeff_bound, 10)
        for m in range(2, bound + 1):
            for k in range(1, m):
                if trimatrix.c_by_chains(self.P, m, k) != self.inverse.entry(m, k):
                    return False, f"c_{m}^{k} differs"
        return True, ""

    def check_inverse_product(self) -> CheckOutcome:
        product = trimatrix.matmul(self.P.to_dense(), self.inverse.to_dense())
        return trimatrix.is_identity(product), f"N = {self.P.N}"

    def check_shortcut(self) -> CheckOutcome:
        a = [recur.poincare_by_partition(m) for m in range(0, self.n + 1)]
        for m in range(1, self.n + 1):
            if not trimatrix.check_shortcut(m, self.P, a, self.inverse):
                return False, f"fails at n={m}"
        if self.n >= 1:
            seed = self.inverse.entry(3, 1)
            expected = -(monomial(2) * (ONE - monomial(2)))
            if seed != expected:
                return False, f"c_3^1 = {seed}"
        return True, ""

    def check_generic_relation(self) -> CheckOutcome:
        for m in range(1, self.n + 1):
            if not trimatrix.check_generic_relation(m, self.P, self.inverse):
                return False, f"fails at n={m}"
        return True, ""

    def check_double_shift(self) -> CheckOutcome:
        return trimatrix.check_double_shift(self.P, self.inverse), f"N = {self.P.N}"


def saturated_specs(top: int, max_gaps: int):
    """Every GapSpec with b <= top, 1 <= u <= max_gaps, and gaps filling [a, b] exactly."""
    for b in range(1, top + 1):
        for a in range(1, b + 1):
            width = b - a + 1
            for u in range(1, max_gaps + 1):
                for parts in closedform.compositions(width, u):
                    if all(part >= 2 for part in parts):
                        yield closedform.GapSpec(a, b, parts)


def run_verification(n: int, settings: Optional[VerifySettings] = None, inject_fault: bool = False) -> List[CheckResult]:
    logger.info(f"Running verification battery up to n={n}.")
    return VerificationBattery(n, settings, inject_fault).run()
