"""
Closed formulas: products Pi(a, b), gap sums SigmaPi(a, b)[l_1, ..., l_u],
the explicit b_j^k, and the two chain-sum formulas for a_n.

Pi(a, b) = (1-q^a)(1-q^{a+1})...(1-q^b). A gap of length l starting at i
replaces the run (1-q^i)...(1-q^{i+l-1}) by the monomial -q^i; SigmaPi sums
over every non-overlapping placement of the gaps, in the given order.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterator, Optional

from ..core.polyring import ONE, ZERO, Polynomial, exact_div, geometric, monomial, one_minus_q_power
from ..core.trimatrix import chain_sum
from ..exceptions import IndexOutOfRangeError, InvalidGapSpecError, InvalidPlacementError
from .recur import CoeffTable

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GapSpec:
    a: int
    b: int
    lengths: tuple[int, ...] = ()

    def __post_init__(self):
        if self.a < 1:
            raise InvalidGapSpecError(f"Range start must be at least 1, got {self.a}.")
        if any(length < 2 for length in self.lengths):
            raise InvalidGapSpecError(f"Gap lengths must be at least 2, got {list(self.lengths)}.")

    def is_nonempty(self) -> bool:
        return self.a + sum(self.lengths) - 1 <= self.b

    def is_saturated(self) -> bool:
        return sum(self.lengths) == self.b - self.a + 1


@dataclass(frozen=True)
class GapPlacement:
    positions: tuple[int, ...]

    def is_valid_for(self, spec: GapSpec) -> bool:
        if len(self.positions) != len(spec.lengths):
            return False
        floor = spec.a
        for start, length in zip(self.positions, spec.lengths):
            if start < floor:
                return False
            floor = start + length
        return not self.positions or floor - 1 <= spec.b


def pi_product(u: int, v: int) -> Polynomial:
    """prod_{t=u}^{v} (1-q^t); 1 when u > v."""
    if u < 1:
        raise IndexOutOfRangeError(f"Pi(u, v) needs u >= 1, got {u}.")
    result = ONE
    for t in range(u, v + 1):
        result = result * one_minus_q_power(t)
    return result


def pi_with_gaps(spec: GapSpec, placement: GapPlacement) -> Polynomial:
    if not placement.is_valid_for(spec):
        raise InvalidPlacementError(
            f"Positions {list(placement.positions)} do not fit gaps {list(spec.lengths)} in [{spec.a}, {spec.b}]."
        )
    gaps = dict(zip(placement.positions, spec.lengths))
    result = ONE
    t = spec.a
    while t <= spec.b:
        if t in gaps:
            result = result * monomial(t, -1)
            t += gaps[t]
        else:
            result = result * one_minus_q_power(t)
            t += 1
    return result


def enumerate_placements(spec: GapSpec) -> Iterator[GapPlacement]:
    """The summation set I: increasing non-overlapping gap starts inside [a, b]."""
    lengths = spec.lengths

    def place(index: int, floor: int, chosen: tuple[int, ...]):
        if index == len(lengths):
            yield GapPlacement(chosen)
            return
        room_needed = sum(lengths[index:])
        for start in range(floor, spec.b - room_needed + 2):
            yield from place(index + 1, start + lengths[index], chosen + (start,))

    yield from place(0, spec.a, ())


def sigma_pi(spec: GapSpec) -> Polynomial:
    """Sum of pi_with_gaps over all placements; zero if there are none."""
    total = ZERO
    for placement in enumerate_placements(spec):
        total = total + pi_with_gaps(spec, placement)
    return total


def saturated_monomial(spec: GapSpec) -> Polynomial:
    """(-1)^u q^{ua + (u-1)l_1 + ... + l_{u-1}}, the value of a saturated gap sum."""
    u = len(spec.lengths)
    exponent = u * spec.a + sum((u - s) * length for s, length in enumerate(spec.lengths[:-1], start=1))
    return monomial(exponent, (-1) ** u)


def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Ordered ways to write total as a sum of `parts` positive integers."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(1, total - parts + 2):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def b_small(j: int, k: int, t: int) -> Polynomial:
    """
    b(j, k, k) = Pi(k+2, j); for t < k the sum, over 1 <= u <= min(j-k-1, k-t)
    and compositions d of k-t into u parts, of SigmaPi(t+2, j)[d_1+1, ..., d_u+1].
    """
    if not 1 <= t <= k <= j - 1:
        raise IndexOutOfRangeError(f"b({j},{k},{t}) needs 1 <= t <= k <= j-1.")
    if t == k:
        return pi_product(k + 2, j)
    total = ZERO
    for u in range(1, min(j - k - 1, k - t) + 1):
        for parts in compositions(k - t, u):
            total = total + sigma_pi(GapSpec(t + 2, j, tuple(d + 1 for d in parts)))
    return total


def _b_small_extended(j: int, k: int, t: int) -> Polynomial:
    # Zero outside the defining range, as the recurrence in t needs.
    if t > k or k > j - 1 or t < 1:
        return ZERO
    return b_small(j, k, t)


def check_b_small_recurrence(j: int, k: int, t: int) -> bool:
    """b(j,k,t) = b(j-1,k-1,t) + (1-q^j) b(j-1,k,t) - b(j-2,k-1,t) for 2 <= k <= j-2."""
    if not 2 <= k <= j - 2:
        raise IndexOutOfRangeError(f"The recurrence needs 2 <= k <= j-2, got j={j}, k={k}.")
    rhs = (
        _b_small_extended(j - 1, k - 1, t)
        + one_minus_q_power(j) * _b_small_extended(j - 1, k, t)
        - _b_small_extended(j - 2, k - 1, t)
    )
    return _b_small_extended(j, k, t) == rhs


def psi(k: int) -> Polynomial:
    return geometric(2, k + 1)


def b_closed(j: int, k: int) -> Polynomial:
    """b_j^k = sum_{t=1}^{k} (1 - psi(t)) b(j, k, t); b_j^j = 1."""
    if not 1 <= k <= j:
        raise IndexOutOfRangeError(f"b_{j}^{k} needs 1 <= k <= j.")
    if k == j:
        return ONE
    total = ZERO
    for t in range(1, k + 1):
        total = total + (ONE - psi(t)) * b_small(j, k, t)
    return total


def build_closed_table(N: int) -> CoeffTable:
    """A coefficient table whose every entry comes from the closed formula."""
    if N < 1:
        raise IndexOutOfRangeError(f"Table size must be at least 1, got {N}.")
    rows = tuple(tuple(b_closed(j, k) for k in range(1, j + 1)) for j in range(1, N + 1))
    logger.debug(f"Built closed-form table up to N={N}.")
    return CoeffTable(rows)


def _warn_if_large(n: int, warning_rank: Optional[int]) -> None:
    if warning_rank is not None and n > warning_rank:
        logger.warning(f"Chain sums at n={n} enumerate about 2^{n} chains; expect a long run.")


def poincare_chain_formula(n: int, table: CoeffTable, warning_rank: Optional[int] = None) -> Polynomial:
    """
    q^{n+2} a_n = psi(n+1) + sum_{i=1}^{n} psi(i) * chain_sum(b, n+1, i),
    divided exactly by q^{n+2}.
    """
    if n < 1:
        raise IndexOutOfRangeError(f"The chain formula starts at n=1, got {n}.")
    table.require(n + 1)
    _warn_if_large(n, warning_rank)
    numerator = psi(n + 1)
    for i in range(1, n + 1):
        numerator = numerator + psi(i) * chain_sum(table.b, n + 1, i, ZERO, ONE)
    return exact_div(numerator, monomial(n + 2))


def poincare_shortcut_formula(n: int, table: CoeffTable, warning_rank: Optional[int] = None) -> Polynomial:
    """a_n = -chain_sum(b, n+3, 1) / (q^{n+2} (1 - q^2))."""
    if n < 1:
        raise IndexOutOfRangeError(f"The shortcut formula starts at n=1, got {n}.")
    table.require(n + 3)
    _warn_if_large(n, warning_rank)
    first_column_entry = chain_sum(table.b, n + 3, 1, ZERO, ONE)
    return exact_div(-first_column_entry, monomial(n + 2) * one_minus_q_power(2))
