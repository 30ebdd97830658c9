"""
The recurrence pipeline for a_n.

a_n^j (fully commutative elements whose normal form ends with s_j) satisfies
a direct recurrence in n, and also a linear expression in a_{n-1}..a_{n-j}
whose coefficients B_j^k depend only on j and k. The B_j^k are stored in the
b-view b_j^k = B_j^{j-k+1}, which is the triangular family the closed formulas
and the matrix view work with.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Sequence

from ..core.polyring import ONE, ZERO, Polynomial, eval_int, exact_div, geometric, monomial, one_minus_q_power
from ..exceptions import IndexOutOfRangeError, TableTooSmallError
from .fcenum import catalan

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CoeffTable:
    """
    Lower-unitriangular table b[j][k], 1 <= k <= j <= N.

    rows[j - 1][k - 1] holds b_j^k.
    """
    rows: tuple[tuple[Polynomial, ...], ...]

    @property
    def N(self) -> int:
        return len(self.rows)

    def require(self, j: int) -> None:
        if j > self.N:
            raise TableTooSmallError(j, self.N)

    def b(self, j: int, k: int) -> Polynomial:
        self.require(j)
        if not 1 <= k <= j:
            raise IndexOutOfRangeError(f"b_{j}^{k} is undefined: need 1 <= k <= j.")
        return self.rows[j - 1][k - 1]

    def B(self, j: int, k: int) -> Polynomial:
        if not 1 <= k <= j:
            raise IndexOutOfRangeError(f"B_{j}^{k} is undefined: need 1 <= k <= j.")
        return self.b(j, j - k + 1)


def build_coeff_table(N: int, inject_fault: bool = False) -> CoeffTable:
    """
    Fill b_j^k row by row:
    b_j^j = 1, b_j^1 = (1-q^2)...(1-q^j), and for 2 <= k <= j-1
    b_j^k = b_{j-1}^{k-1} + (1-q^j) b_{j-1}^k - b_{j-2}^{k-1}.

    inject_fault flips the sign of the last term; it exists only so the
    verification battery can demonstrate that it catches a wrong table.
    """
    if N < 1:
        raise IndexOutOfRangeError(f"Table size must be at least 1, got {N}.")
    if inject_fault:
        logger.warning("Building a deliberately corrupted coefficient table.")
    rows: list[list[Polynomial]] = [[ONE]]
    for j in range(2, N + 1):
        factor = one_minus_q_power(j)
        row = [rows[j - 2][0] * factor if j > 2 else factor]
        for k in range(2, j):
            last = rows[j - 3][k - 2]
            term = rows[j - 2][k - 2] + factor * rows[j - 2][k - 1]
            row.append(term + last if inject_fault else term - last)
        row.append(ONE)
        rows.append(row)
    logger.debug(f"Built coefficient table up to N={N}.")
    return CoeffTable(tuple(tuple(row) for row in rows))


def _prior_value(prior: Sequence[Polynomial], s: int) -> Polynomial:
    # a_{n-1}^0 = 0 and a_{n-1}^s = 0 for s > n-1.
    if s < 1 or s > len(prior):
        return ZERO
    return prior[s - 1]


def a_last_direct(n: int, j: int, prior: Sequence[Polynomial]) -> Polynomial:
    """
    a_n^j = a_{n-1}^{j-1} + q^j (1 + sum_{s=j}^{n-1} a_{n-1}^s).

    prior holds a_{n-1}^1 .. a_{n-1}^{n-1}.
    """
    if not 1 <= j <= n:
        raise IndexOutOfRangeError(f"Generator index j={j} is outside 1..{n}.")
    if len(prior) != n - 1:
        raise IndexOutOfRangeError(f"Expected {n - 1} values a_{n - 1}^s, got {len(prior)}.")
    tail = ONE
    for s in range(j, n):
        tail = tail + _prior_value(prior, s)
    return _prior_value(prior, j - 1) + monomial(j) * tail


@lru_cache(maxsize=None)
def last_generator_row(n: int) -> tuple[Polynomial, ...]:
    """(a_n^1, ..., a_n^n), built bottom-up from the direct recurrence."""
    if n < 0:
        raise IndexOutOfRangeError(f"Rank must be non-negative, got {n}.")
    if n == 0:
        return ()
    prior = last_generator_row(n - 1)
    return tuple(a_last_direct(n, j, prior) for j in range(1, n + 1))


def a_last_via_table(n: int, j: int, table: CoeffTable, a: Sequence[Polynomial]) -> Polynomial:
    """a_n^j = sum_{k=1}^{j} q^{j-k+1} B_j^k a_{n-k}, with a = (a_0, ..., a_{n-1})."""
    if not 1 <= j <= n:
        raise IndexOutOfRangeError(f"Generator index j={j} is outside 1..{n}.")
    table.require(j)
    if len(a) < n:
        raise IndexOutOfRangeError(f"Need a_0..a_{n - 1}, got {len(a)} values.")
    total = ZERO
    for k in range(1, j + 1):
        total = total + monomial(j - k + 1) * table.B(j, k) * a[n - k]
    return total


def poincare_by_partition(n: int) -> Polynomial:
    """a_n = 1 + sum_j a_n^j."""
    total = ONE
    for value in last_generator_row(n):
        total = total + value
    return total


def poincare_sequence_by_main_recurrence(n: int, table: CoeffTable) -> tuple[Polynomial, ...]:
    """
    (a_0, ..., a_n) from the main recurrence, taken at rank r = m+1 for each m:
    q^r a_{r-1} = (q + ... + q^r) - sum_{k=2}^{r} q^{r-k+1} B_r^k a_{r-k}.
    """
    if n < 0:
        raise IndexOutOfRangeError(f"Rank must be non-negative, got {n}.")
    table.require(n + 1)
    a: list[Polynomial] = [ONE]
    for m in range(1, n + 1):
        r = m + 1
        numerator = geometric(1, r)
        for k in range(2, r + 1):
            numerator = numerator - monomial(r - k + 1) * table.B(r, k) * a[r - k]
        a.append(exact_div(numerator, monomial(r)))
    return tuple(a)


def poincare_by_main_recurrence(n: int, table: CoeffTable) -> Polynomial:
    return poincare_sequence_by_main_recurrence(n, table)[n]


def poincare_by_coefficient_sums(n: int, table: CoeffTable) -> Polynomial:
    """a_n = 1 + sum_{k=1}^{n} [sum_{j=k}^{n} q^{j-k+1} B_j^k] a_{n-k}, bottom-up."""
    if n < 0:
        raise IndexOutOfRangeError(f"Rank must be non-negative, got {n}.")
    if n > 0:
        table.require(n)
    a: list[Polynomial] = [ONE]
    for m in range(1, n + 1):
        total = ONE
        for k in range(1, m + 1):
            weight = ZERO
            for j in range(k, m + 1):
                weight = weight + monomial(j - k + 1) * table.B(j, k)
            total = total + weight * a[m - k]
        a.append(total)
    return a[n]


def binomial(x: int, y: int) -> int:
    """binom(x, y), zero whenever y < 0 or y > x."""
    if y < 0 or x < 0 or y > x:
        return 0
    return comb(x, y)


def check_B_at_one(j: int, k: int, table: CoeffTable) -> bool:
    """B_j^k(1) = (-1)^{k-1} binom(j-k, k-1)."""
    expected = (-1) ** (k - 1) * binomial(j - k, k - 1)
    return eval_int(table.B(j, k), 1) == expected


def check_B_at_zero(j: int, k: int, table: CoeffTable) -> bool:
    return eval_int(table.B(j, k), 0) == 1


def check_catalan_recurrence(n: int) -> bool:
    """C_n = n - sum_{k=2}^{n} (-1)^{k-1} binom(n-k, k-1) C_{n-k+1}."""
    if n < 1:
        raise IndexOutOfRangeError(f"The Catalan recurrence starts at n=1, got {n}.")
    rhs = n
    for k in range(2, n + 1):
        rhs -= (-1) ** (k - 1) * binomial(n - k, k - 1) * catalan(n - k + 1)
    return catalan(n) == rhs


def check_basic_recurrence(n: int, j: int) -> bool:
    """a_n^j - q a_n^{j-1} = a_{n-1}^{j-1} - q a_{n-1}^{j-2} - q^j a_{n-1}^{j-1}, 2 <= j <= n."""
    if not 2 <= j <= n:
        raise IndexOutOfRangeError(f"Need 2 <= j <= n, got j={j}, n={n}.")
    current = last_generator_row(n)
    prior = last_generator_row(n - 1)
    lhs = current[j - 1] - monomial(1) * current[j - 2]
    rhs = (
        _prior_value(prior, j - 1)
        - monomial(1) * _prior_value(prior, j - 2)
        - monomial(j) * _prior_value(prior, j - 1)
    )
    return lhs == rhs


def check_subdiagonal(j: int, table: CoeffTable) -> bool:
    """b_j^{j-1} = 1 - psi(j-1) = 1 - q^2 - ... - q^j."""
    if j < 2:
        raise IndexOutOfRangeError(f"b_j^(j-1) needs j >= 2, got {j}.")
    return table.b(j, j - 1) == ONE - geometric(2, j)


def b_view_residual(table: CoeffTable, j: int, k: int) -> Polynomial:
    """B_j^k - B_{j-1}^k - (1-q^j) B_{j-1}^{k-1} + B_{j-2}^{k-1}; zero for 2 <= k <= j-1."""
    if not 2 <= k <= j - 1:
        raise IndexOutOfRangeError(f"Residual needs 2 <= k <= j-1, got j={j}, k={k}.")
    return (
        table.B(j, k)
        - table.B(j - 1, k)
        - one_minus_q_power(j) * table.B(j - 1, k - 1)
        + table.B(j - 2, k - 1)
    )
