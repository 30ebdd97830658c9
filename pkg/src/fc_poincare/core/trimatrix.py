"""
Lower unitriangular matrices and the general solver for recurrences of the
shape u_n = psi(n) - sum_{i<n} b_n^i u_i.

Solving P U = Psi is the same as inverting P. The inverse is computed two
ways: by forward substitution, and through signed sums over strictly
decreasing integer chains n = v_0 > v_1 > ... > v_{s+1} = k.
"""
from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from typing import Any, Callable, Sequence

from ..exceptions import IndexOutOfRangeError, TableTooSmallError
from .polyring import ONE, ZERO, Polynomial, geometric, monomial, one_minus_q_power

logger = logging.getLogger(__name__)


def chain_sum(entry: Callable[[int, int], Any], top: int, bottom: int, zero: Any = 0, one: Any = 1) -> Any:
    """
    sum_{s>=0} (-1)^{s+1} sum_{top = v_0 > ... > v_{s+1} = bottom} prod_u entry(v_u, v_{u+1}).

    Chains are walked by recursive descent so that every prefix product is
    formed once; the cost is one multiplication per chain prefix, 2^(top-bottom-1)
    chains in all.
    """
    if top <= bottom:
        raise IndexOutOfRangeError(f"A chain needs top > bottom, got {top} and {bottom}.")

    def descend(v: int, partial: Any, sign: int) -> Any:
        # partial is the product down to v; sign is (-1)^(steps so far).
        total = zero
        closing = partial * entry(v, bottom)
        total = total + (closing if sign < 0 else -closing)
        for w in range(v - 1, bottom, -1):
            total = total + descend(w, partial * entry(v, w), -sign)
        return total

    return descend(top, one, 1)


@dataclass(frozen=True)
class UnitriMatrix:
    """
    N x N lower unitriangular matrix of polynomials.

    lower[i - 1] holds the strictly-lower entries (i, 1) .. (i, i-1) of row i.
    """
    lower: tuple[tuple[Polynomial, ...], ...]

    def __post_init__(self):
        for i, row in enumerate(self.lower, start=1):
            if len(row) != i - 1:
                raise ValueError(f"Row {i} must hold {i - 1} strictly-lower entries, got {len(row)}.")

    @property
    def N(self) -> int:
        return len(self.lower)

    def require(self, n: int) -> None:
        if n > self.N:
            raise TableTooSmallError(n, self.N)

    def entry(self, i: int, j: int) -> Polynomial:
        self.require(i)
        if not (1 <= i and 1 <= j <= self.N):
            raise IndexOutOfRangeError(f"Entry ({i}, {j}) is outside a {self.N}x{self.N} matrix.")
        if j == i:
            return ONE
        if j > i:
            return ZERO
        return self.lower[i - 1][j - 1]

    def to_dense(self) -> list[list[Polynomial]]:
        return [[self.entry(i, j) for j in range(1, self.N + 1)] for i in range(1, self.N + 1)]


def identity(N: int) -> UnitriMatrix:
    return UnitriMatrix(tuple(tuple(ZERO for _ in range(i - 1)) for i in range(1, N + 1)))


def from_table(table, N: int) -> UnitriMatrix:
    """P with P[n][i] = b_n^i from a coefficient table."""
    table.require(N)
    return UnitriMatrix(tuple(tuple(table.b(n, i) for i in range(1, n)) for n in range(1, N + 1)))


def invert_unitriangular(P: UnitriMatrix) -> UnitriMatrix:
    """Exact inverse; column k solves P x = e_k by forward substitution."""
    N = P.N
    inverse: list[list[Polynomial]] = [[ZERO] * (i - 1) for i in range(1, N + 1)]
    for k in range(1, N + 1):
        column = {k: ONE}
        for n in range(k + 1, N + 1):
            total = ZERO
            for i in range(k, n):
                total = total + P.entry(n, i) * column[i]
            column[n] = -total
            inverse[n - 1][k - 1] = column[n]
    logger.debug(f"Inverted a {N}x{N} unitriangular matrix.")
    return UnitriMatrix(tuple(tuple(row) for row in inverse))


def c_by_chains(P: UnitriMatrix, n: int, k: int) -> Polynomial:
    """Entry (n, k) of P^{-1} as a chain sum over P's entries."""
    if not 1 <= k < n:
        raise IndexOutOfRangeError(f"Need 1 <= k < n, got n={n}, k={k}.")
    P.require(n)
    return chain_sum(P.entry, n, k, ZERO, ONE)


def matmul(A: Sequence[Sequence[Any]], B: Sequence[Sequence[Any]], zero: Any = ZERO) -> list[list[Any]]:
    rows, inner, cols = len(A), len(B), len(B[0]) if B else 0
    result = []
    for i in range(rows):
        result_row = []
        for j in range(cols):
            total = zero
            for t in range(inner):
                total = total + A[i][t] * B[t][j]
            result_row.append(total)
        result.append(result_row)
    return result


def double_shift(N: int) -> list[list[Polynomial]]:
    """S with S[i][i+2] = 1, truncated to N x N."""
    return [[ONE if j == i + 2 else ZERO for j in range(N)] for i in range(N)]


@dataclass(frozen=True)
class GeneralInstance:
    """
    Data of u_n = psi(n) - sum_{i=1}^{n-1} b_n^i u_i over any commutative ring.

    psi[n - 1] is psi(n); b_rows[n - 2][i - 1] is b_n^i for n >= 2.
    """
    psi: tuple[Any, ...]
    b_rows: tuple[tuple[Any, ...], ...]
    zero: Any = 0
    one: Any = 1

    def __post_init__(self):
        if len(self.b_rows) != max(len(self.psi) - 1, 0):
            raise ValueError(f"Expected {len(self.psi) - 1} rows of b for N={len(self.psi)}.")
        for n, row in enumerate(self.b_rows, start=2):
            if len(row) != n - 1:
                raise ValueError(f"Row b_{n} must hold {n - 1} entries, got {len(row)}.")

    @property
    def N(self) -> int:
        return len(self.psi)

    def b(self, n: int, i: int) -> Any:
        return self.b_rows[n - 2][i - 1]


def solve_by_recurrence(inst: GeneralInstance) -> list[Any]:
    """u_1 = psi(1); u_n = psi(n) - sum_{i=1}^{n-1} b_n^i u_i."""
    u: list[Any] = []
    for n in range(1, inst.N + 1):
        value = inst.psi[n - 1]
        for i in range(1, n):
            value = value - inst.b(n, i) * u[i - 1]
        u.append(value)
    return u


def solve_by_chain_formula(inst: GeneralInstance) -> list[Any]:
    """u_n = psi(n) + sum_{i=1}^{n-1} psi(i) * chain_sum(b, n, i)."""
    u: list[Any] = []
    for n in range(1, inst.N + 1):
        value = inst.psi[n - 1]
        for i in range(1, n):
            value = value + inst.psi[i - 1] * chain_sum(inst.b, n, i, inst.zero, inst.one)
        u.append(value)
    return u


def random_instance(rng: random.Random, N: int, bound: int) -> GeneralInstance:
    """Integer instance with entries drawn uniformly from [-bound, bound]."""
    psi = tuple(rng.randint(-bound, bound) for _ in range(N))
    b_rows = tuple(tuple(rng.randint(-bound, bound) for _ in range(n - 1)) for n in range(2, N + 1))
    return GeneralInstance(psi, b_rows)


def poincare_instance(table, N: int) -> GeneralInstance:
    """psi(n) = q^2 + ... + q^{n+1} and b_n^i from the table; then u_n = q^{n+1} a_{n-1}."""
    table.require(N)
    psi = tuple(geometric(2, n + 1) for n in range(1, N + 1))
    b_rows = tuple(tuple(table.b(n, i) for i in range(1, n)) for n in range(2, N + 1))
    return GeneralInstance(psi, b_rows, ZERO, ONE)


def _first_column(inverse: UnitriMatrix, row: int) -> Polynomial:
    return ONE if row == 1 else inverse.entry(row, 1)


def check_shortcut(n: int, P: UnitriMatrix, a: Sequence[Polynomial], inverse: UnitriMatrix | None = None) -> bool:
    """c_{n+2}^1 = -(1-q^2) q^{n+1} a_{n-1}."""
    if n < 1:
        raise IndexOutOfRangeError(f"The shortcut identity starts at n=1, got {n}.")
    P.require(n + 2)
    if len(a) < n:
        raise IndexOutOfRangeError(f"Need a_0..a_{n - 1}, got {len(a)} values.")
    inverse = inverse or invert_unitriangular(P)
    expected = -(one_minus_q_power(2) * monomial(n + 1) * a[n - 1])
    return _first_column(inverse, n + 2) == expected


def check_generic_relation(n: int, P: UnitriMatrix, inverse: UnitriMatrix | None = None) -> bool:
    """sum_{k=1}^{n} b_n^k c_{k+2}^1 = -(1-q^2) psi(n)."""
    if n < 1:
        raise IndexOutOfRangeError(f"The relation starts at n=1, got {n}.")
    P.require(n + 2)
    inverse = inverse or invert_unitriangular(P)
    total = ZERO
    for k in range(1, n + 1):
        total = total + P.entry(n, k) * _first_column(inverse, k + 2)
    return total == -(one_minus_q_power(2) * geometric(2, n + 1))


def check_double_shift(P: UnitriMatrix, inverse: UnitriMatrix | None = None) -> bool:
    """
    First column of P S P^{-1} equals -(1-q^2) Psi on rows 1..N-2, the rows
    whose value does not depend on truncated entries.
    """
    N = P.N
    if N < 3:
        return True
    inverse = inverse or invert_unitriangular(P)
    product = matmul(matmul(P.to_dense(), double_shift(N)), inverse.to_dense())
    factor = one_minus_q_power(2)
    return all(
        product[r - 1][0] == -(factor * geometric(2, r + 1)) for r in range(1, N - 1)
    )


def is_identity(M: Sequence[Sequence[Polynomial]]) -> bool:
    return all(
        value == (ONE if i == j else ZERO)
        for i, row in enumerate(M)
        for j, value in enumerate(row)
    )

