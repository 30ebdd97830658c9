import argparse
import asyncio
import json
import logging
import sys
import time
from enum import Enum
from typing import Callable, Dict, List, Optional, Sequence

from dotenv import load_dotenv
from pydantic import BaseModel, Field, ValidationError, model_validator

from ..core import trimatrix
from ..core.polyring import Polynomial, eval_int, render_text, to_json
from ..exceptions import CapExceededError, FCPoincareError
from ..methods import closedform, fcenum, recur
from ..tools import exporters
from ..tools.verifier import METHOD_ORDER, CheckResult, method_callables, run_verification
from ..utils.config_loader import VerifySettings, load_verify_settings
from ..utils.logging_setup import configure_logging

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_DISAGREE = 1
EXIT_INVALID = 2

PERMUTATION_RANK_LIMIT = 10
LAST_GENERATOR_METHODS = ("oracle", "partition", "coefficient-sums", "all")


class Command(str, Enum):
    POINCARE = "poincare"
    TABLE = "table"
    BJK = "bjk"
    VERIFY = "verify"
    CATALAN = "catalan"
    FORMS = "forms"
    MATRIX = "matrix"


class Method(str, Enum):
    ORACLE = "oracle"
    PERMUTATION = "permutation"
    PARTITION = "partition"
    MAIN_RECURRENCE = "main-recurrence"
    COEFFICIENT_SUMS = "coefficient-sums"
    CHAIN = "chain"
    SHORTCUT = "shortcut"
    ALL = "all"


class OutputFormat(str, Enum):
    TEXT = "text"
    JSON = "json"
    CSV = "csv"


class RunConfig(BaseModel):
    command: Command
    n: int = Field(ge=0)
    j: Optional[int] = Field(default=None, ge=1)
    method: Method = Method.PARTITION
    format: OutputFormat = OutputFormat.TEXT
    output: Optional[str] = None
    view: str = Field(default="b", pattern="^(b|B)$")
    table_source: str = Field(default="recurrence", pattern="^(recurrence|closed)$")
    inject_fault: bool = False
    inverse: bool = False

    @model_validator(mode="after")
    def check_method_limits(self):
        if self.method == Method.PERMUTATION and self.n > PERMUTATION_RANK_LIMIT:
            raise ValueError(
                f"--method permutation enumerates S_(n+1) and needs n <= {PERMUTATION_RANK_LIMIT}, got {self.n}."
            )
        if self.j is not None and self.j > self.n:
            raise ValueError(f"--j must lie in 1..n, got j={self.j} with n={self.n}.")
        if self.j is not None and self.method.value not in LAST_GENERATOR_METHODS:
            raise ValueError(f"--j supports the methods {list(LAST_GENERATOR_METHODS)}, got {self.method.value}.")
        return self


class CommandFailed(Exception):
    """Raised by a command whose report shows a disagreement; carries the report."""

    def __init__(self, report: str):
        super().__init__("disagreement")
        self.report = report


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, required=True, help="Rank n of W(A_n).")
    common.add_argument("--j", type=int, default=None, help="Restrict to the last generator / row j.")
    common.add_argument("--method", default=Method.PARTITION.value, choices=[m.value for m in Method])
    common.add_argument("--format", default=OutputFormat.TEXT.value, choices=[f.value for f in OutputFormat])
    common.add_argument("--out", dest="output", default=None, help="Write the report to this file.")
    common.add_argument("--view", default="b", choices=["b", "B"], help="Coefficient view for bjk.")
    common.add_argument("--table-source", default="recurrence", choices=["recurrence", "closed"],
                        help="Where the chain and shortcut formulas take b_j^k from.")
    common.add_argument("--inject-fault", action="store_true", help="Corrupt the coefficient table (verify).")
    common.add_argument("--inverse", action="store_true", help="Export P^-1 instead of P (matrix).")
    common.add_argument("--log-level", default=None, help="Overrides FCPOINCARE_LOG_LEVEL.")

    parser = argparse.ArgumentParser(
        prog="fcpoincare",
        description="Poincare polynomials of fully commutative elements of W(A_n).",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    subparsers.add_parser(Command.POINCARE.value, parents=[common], help="Compute a_n (or a_n^j with --j).")
    subparsers.add_parser(Command.TABLE.value, parents=[common], help="The q-Catalan triangle a_n^j.")
    subparsers.add_parser(Command.BJK.value, parents=[common], help="The coefficient table b_j^k.")
    subparsers.add_parser(Command.VERIFY.value, parents=[common], help="Run the cross-check battery.")
    subparsers.add_parser(Command.CATALAN.value, parents=[common], help="Check a_m(1) against Catalan numbers.")
    subparsers.add_parser(Command.FORMS.value, parents=[common], help="List the normal forms of W(A_n).")
    subparsers.add_parser(Command.MATRIX.value, parents=[common], help="Export the unitriangular matrix P.")
    return parser


def _coeff_table(N: int, source: str = "recurrence") -> recur.CoeffTable:
    if source == "closed":
        return closedform.build_closed_table(N)
    return recur.build_coeff_table(N)


async def _run_methods_concurrently(callables: Dict[str, Optional[Callable[[], Polynomial]]]) -> Dict[str, Optional[Polynomial]]:
    loop = asyncio.get_running_loop()
    names = [name for name, fn in callables.items() if fn is not None]
    values = await asyncio.gather(*(loop.run_in_executor(None, callables[name]) for name in names))
    results: Dict[str, Optional[Polynomial]] = {name: None for name in callables}
    results.update(zip(names, values))
    return results


def _poincare_by_last(cfg: RunConfig) -> Dict[str, Optional[Polynomial]]:
    n, j = cfg.n, cfg.j
    table = recur.build_coeff_table(j)
    available = {
        Method.ORACLE.value: lambda: fcenum.oracle_poincare_by_last(n, j),
        Method.PARTITION.value: lambda: recur.last_generator_row(n)[j - 1],
        Method.COEFFICIENT_SUMS.value: lambda: recur.a_last_via_table(
            n, j, table, [recur.poincare_by_partition(m) for m in range(n)]
        ),
    }
    if cfg.method == Method.ALL:
        return {name: fn() for name, fn in available.items()}
    return {cfg.method.value: available[cfg.method.value]()}


def cmd_poincare(cfg: RunConfig, settings: VerifySettings) -> str:
    """a_n (or a_n^j) by the selected method; `all` adds an agreement verdict."""
    if cfg.j is not None:
        results = _poincare_by_last(cfg)
        label = f"a_{cfg.n}^{cfg.j}"
    else:
        table = recur.build_coeff_table(cfg.n + 3)
        chain_table = None
        if cfg.table_source == "closed" and cfg.method in (Method.CHAIN, Method.SHORTCUT, Method.ALL):
            chain_table = closedform.build_closed_table(cfg.n + 3)
        callables = method_callables(cfg.n, table, settings, chain_table, settings.chain_warning_rank)
        if cfg.n > settings.oracle_count_limit:
            if cfg.method == Method.ALL:
                logger.warning(
                    f"Skipping the oracle for n={cfg.n}: it enumerates C_{cfg.n + 1} normal forms, "
                    f"above oracle_count_limit={settings.oracle_count_limit}."
                )
                callables[Method.ORACLE.value] = None
            elif cfg.method == Method.ORACLE:
                logger.warning(
                    f"The oracle enumerates C_{cfg.n + 1} normal forms for n={cfg.n}; "
                    f"this is above oracle_count_limit={settings.oracle_count_limit}."
                )
        if cfg.method == Method.ALL:
            started = time.time()
            results = asyncio.run(_run_methods_concurrently(callables))
            logger.info(f"All methods for n={cfg.n} finished in {time.time() - started:.2f}s.")
        else:
            fn = callables[cfg.method.value]
            if fn is None and cfg.method == Method.PERMUTATION:
                raise CapExceededError(cfg.n + 1, settings.permutation_cap)
            results = {cfg.method.value: fn() if fn is not None else None}
        label = f"a_{cfg.n}"

    if len(results) == 1 and cfg.method != Method.ALL:
        value = next(iter(results.values()))
        if value is None:
            return json.dumps(None) if cfg.format == OutputFormat.JSON else "n/a"
        return _render_single(label, value, cfg.format)

    computed = [value for value in results.values() if value is not None]
    verdict = "AGREE" if all(value == computed[0] for value in computed) else "DISAGREE"
    report = _render_comparison(label, results, verdict, cfg.format)
    if verdict != "AGREE":
        raise CommandFailed(report)
    return report


def _render_single(label: str, value: Polynomial, fmt: OutputFormat) -> str:
    if fmt == OutputFormat.JSON:
        return exporters.polynomial_json(value)
    if fmt == OutputFormat.CSV:
        return exporters.rows_to_csv(["quantity", "polynomial", "value_at_1"],
                                     [[label, render_text(value), eval_int(value, 1)]])
    return render_text(value)


def _render_comparison(label: str, results: Dict[str, Optional[Polynomial]],
                       verdict: str, fmt: OutputFormat) -> str:
    ordered = [name for name in METHOD_ORDER if name in results]
    if fmt == OutputFormat.JSON:
        payload = {
            "quantity": label,
            "methods": {name: (to_json(results[name]) if results[name] is not None else None) for name in ordered},
            "verdict": verdict,
        }
        return json.dumps(payload, indent=2)
    if fmt == OutputFormat.CSV:
        return exporters.rows_to_csv(
            ["method", "polynomial", "value_at_1"],
            [[name, render_text(results[name]), eval_int(results[name], 1)] if results[name] is not None
             else [name, "n/a", ""] for name in ordered],
        )
    width = max(len(name) for name in ordered)
    lines = [f"{label}:"]
    for name in ordered:
        value = results[name]
        lines.append(f"  {name.ljust(width)}  {render_text(value) if value is not None else 'n/a'}")
    lines.append(f"verdict: {verdict}")
    return "\n".join(lines)


def cmd_table(cfg: RunConfig, settings: VerifySettings) -> str:
    """The triangle a_n^j for 1 <= j <= n <= cfg.n, checked at q=1 against the binomial formula."""
    rows = []
    for m in range(1, cfg.n + 1):
        for j, value in enumerate(recur.last_generator_row(m), start=1):
            if cfg.j is not None and j != cfg.j:
                continue
            at_one = eval_int(value, 1)
            formula = j * recur.binomial(2 * m - j + 1, m) // (m + 1)
            rows.append((m, j, value, at_one, formula, at_one == formula))

    if cfg.format == OutputFormat.CSV:
        report = exporters.rows_to_csv(
            ["n", "j", "polynomial", "value_at_1", "binomial_formula", "match"],
            [[m, j, render_text(p), one, formula, str(ok).lower()] for m, j, p, one, formula, ok in rows],
        )
    elif cfg.format == OutputFormat.JSON:
        report = json.dumps([
            {"n": m, "j": j, "polynomial": to_json(p), "value_at_1": str(one),
             "binomial_formula": str(formula), "match": ok}
            for m, j, p, one, formula, ok in rows
        ], indent=2)
    else:
        report = "\n".join(
            f"a_{m}^{j} = {render_text(p)}  [q=1: {one}, formula: {formula}, {'match' if ok else 'MISMATCH'}]"
            for m, j, p, one, formula, ok in rows
        )

    if not all(row[-1] for row in rows):
        raise CommandFailed(report)
    return report


def cmd_bjk(cfg: RunConfig, settings: VerifySettings) -> str:
    """b_j^k (or B_j^k with --view B) for 1 <= k <= j <= n."""
    if cfg.n == 0:
        rows = []
    else:
        table = _coeff_table(cfg.n, cfg.table_source)
        rows = exporters.coeff_table_rows(table, cfg.view)
        if cfg.j is not None:
            rows = [row for row in rows if row[0] == cfg.j]

    if cfg.format == OutputFormat.CSV:
        return exporters.rows_to_csv(["j", "k", "poly"], rows)
    if cfg.format == OutputFormat.JSON:
        return json.dumps([{"j": j, "k": k, "poly": text} for j, k, text in rows], indent=2)
    return "\n".join(f"{cfg.view}_{j}^{k} = {text}" for j, k, text in rows)


def cmd_verify(cfg: RunConfig, settings: VerifySettings) -> str:
    results = run_verification(cfg.n, settings, inject_fault=cfg.inject_fault)
    report = render_checks(results, cfg.format)
    if any(result.status != "PASS" for result in results):
        raise CommandFailed(report)
    return report


def render_checks(results: List[CheckResult], fmt: OutputFormat) -> str:
    if fmt == OutputFormat.JSON:
        return json.dumps([result.model_dump() for result in results], indent=2)
    if fmt == OutputFormat.CSV:
        return exporters.rows_to_csv(["name", "status", "detail"],
                                     [[r.name, r.status, r.detail] for r in results])
    passed = sum(1 for r in results if r.status == "PASS")
    lines = [f"[{r.status}] {r.name}: {r.detail}" if r.detail else f"[{r.status}] {r.name}" for r in results]
    lines.append(f"{passed}/{len(results)} checks passed")
    return "\n".join(lines)


def cmd_catalan(cfg: RunConfig, settings: VerifySettings) -> str:
    """a_m(1) against C_{m+1} for m <= n, plus the alternating Catalan recurrence."""
    rows = []
    for m in range(0, cfg.n + 1):
        at_one = eval_int(recur.poincare_by_partition(m), 1)
        expected = fcenum.catalan(m + 1)
        recurrence = recur.check_catalan_recurrence(m) if m >= 1 else None
        rows.append((m, at_one, expected, at_one == expected, recurrence))

    def flag(value: Optional[bool]) -> str:
        return "n/a" if value is None else str(value).lower()

    if cfg.format == OutputFormat.CSV:
        report = exporters.rows_to_csv(
            ["n", "value_at_1", "catalan", "match", "recurrence"],
            [[m, one, c, flag(ok), flag(rec)] for m, one, c, ok, rec in rows],
        )
    elif cfg.format == OutputFormat.JSON:
        report = json.dumps([
            {"n": m, "value_at_1": str(one), "catalan": str(c), "match": ok, "recurrence": rec}
            for m, one, c, ok, rec in rows
        ], indent=2)
    else:
        report = "\n".join(
            f"a_{m}(1) = {one}, C_{m + 1} = {c}, match: {flag(ok)}, recurrence: {flag(rec)}"
            for m, one, c, ok, rec in rows
        )

    if not all(ok and rec is not False for _, _, _, ok, rec in rows):
        raise CommandFailed(report)
    return report


def cmd_forms(cfg: RunConfig, settings: VerifySettings) -> str:
    forms = list(fcenum.enumerate_normal_forms(cfg.n))
    logger.info(f"Enumerated {len(forms)} normal forms for n={cfg.n}.")
    if cfg.j is not None:
        forms = [form for form in forms if form.last_generator == cfg.j]
    if cfg.format == OutputFormat.CSV:
        return exporters.rows_to_csv(["n", "form", "length"], [[cfg.n, f.render(), f.length] for f in forms])
    if cfg.format == OutputFormat.JSON:
        return json.dumps([{"form": f.render(), "length": f.length} for f in forms], indent=2)
    return "\n".join(f"{f.render()}\t{f.length}" for f in forms)


def cmd_matrix(cfg: RunConfig, settings: VerifySettings) -> str:
    """P with P[n][i] = b_n^i up to size n, or its inverse with --inverse."""
    if cfg.n == 0:
        rows = []
    else:
        P = trimatrix.from_table(_coeff_table(cfg.n, cfg.table_source), cfg.n)
        rows = exporters.matrix_rows(trimatrix.invert_unitriangular(P) if cfg.inverse else P)
    if cfg.format == OutputFormat.JSON:
        return json.dumps([{"row": i, "col": j, "poly": text} for i, j, text in rows], indent=2)
    if cfg.format == OutputFormat.TEXT:
        name = "c" if cfg.inverse else "P"
        return "\n".join(f"{name}[{i}][{j}] = {text}" for i, j, text in rows)
    return exporters.rows_to_csv(["row", "col", "poly"], rows)


COMMANDS = {
    Command.POINCARE: cmd_poincare,
    Command.TABLE: cmd_table,
    Command.BJK: cmd_bjk,
    Command.VERIFY: cmd_verify,
    Command.CATALAN: cmd_catalan,
    Command.FORMS: cmd_forms,
    Command.MATRIX: cmd_matrix,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    load_dotenv()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_INVALID
    configure_logging(args.log_level)

    try:
        cfg = RunConfig(**{k: v for k, v in vars(args).items() if k != "log_level"})
    except ValidationError as e:
        print(f"Invalid arguments: {e}", file=sys.stderr)
        return EXIT_INVALID

    settings = load_verify_settings()

    exit_code = EXIT_OK
    try:
        report = COMMANDS[cfg.command](cfg, settings)
    except CommandFailed as e:
        report, exit_code = e.report, EXIT_DISAGREE
    except CapExceededError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_INVALID
    except FCPoincareError as e:
        logger.error(f"Command '{cfg.command.value}' failed: {e}", exc_info=True)
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_DISAGREE

    exporters.write_output(report, cfg.output)
    return exit_code


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
