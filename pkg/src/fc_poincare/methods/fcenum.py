"""
Brute-force oracles for the Poincare polynomial of fully commutative elements.

Two independent enumerations are provided. The first walks Stembridge normal
forms [i1,j1][i2,j2]... of W(A_n); the second walks 321-avoiding permutations
of S_{n+1} and measures length by inversion count. Both are streams so that
callers can fold over millions of items without materializing them.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from math import comb
from typing import Iterator, Sequence

from ..core.polyring import Polynomial
from ..exceptions import CapExceededError, IndexOutOfRangeError

logger = logging.getLogger(__name__)

DEFAULT_PERMUTATION_CAP = 11


@dataclass(frozen=True)
class NormalForm:
    """A product of interval blocks [i,j] = s_i s_{i+1} ... s_j; no blocks is the identity."""
    blocks: tuple[tuple[int, int], ...] = ()

    @property
    def length(self) -> int:
        return sum(j - i + 1 for i, j in self.blocks)

    @property
    def last_generator(self) -> int:
        """j_p, or 0 for the identity."""
        return self.blocks[-1][1] if self.blocks else 0

    def is_valid(self, n: int) -> bool:
        previous_i, previous_j = n + 1, n + 1
        for i, j in self.blocks:
            if not (1 <= i <= j and i < previous_i and j < previous_j):
                return False
            previous_i, previous_j = i, j
        return True

    def render(self) -> str:
        if not self.blocks:
            return "e"
        return "".join(f"[{i},{j}]" for i, j in self.blocks)


@dataclass(frozen=True)
class Permutation:
    """One-line notation of a bijection of {1..m}."""
    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError(f"{self.images} is not a permutation of 1..{len(self.images)}.")

    @property
    def inversions(self) -> int:
        values = self.images
        return sum(1 for a in range(len(values)) for b in range(a + 1, len(values)) if values[a] > values[b])


def catalan(m: int) -> int:
    return comb(2 * m, m) // (m + 1)


def _blocks_below(j_bound: int, i_bound: int) -> Iterator[tuple[tuple[int, int], ...]]:
    for j in range(j_bound, 0, -1):
        for i in range(min(j, i_bound), 0, -1):
            head = ((i, j),)
            for tail in _blocks_below(j - 1, i - 1):
                yield head + tail
            yield head


def enumerate_normal_forms(n: int) -> Iterator[NormalForm]:
    """
    Every normal form of W(A_n) exactly once, in lexicographically
    descending order of (j1, i1, j2, i2, ...). A form sorts after its
    extensions, so the identity comes last.
    """
    if n < 0:
        raise IndexOutOfRangeError(f"Rank must be non-negative, got {n}.")
    return _normal_forms(n)


def _normal_forms(n: int) -> Iterator[NormalForm]:
    for blocks in _blocks_below(n, n):
        yield NormalForm(blocks)
    yield NormalForm()


def _length_polynomial(lengths: Iterator[int]) -> Polynomial:
    counts: list[int] = []
    for length in lengths:
        if length >= len(counts):
            counts.extend([0] * (length - len(counts) + 1))
        counts[length] += 1
    return Polynomial(counts)


def oracle_poincare(n: int) -> Polynomial:
    """a_n as the sum of q^length over all normal forms."""
    result = _length_polynomial(form.length for form in enumerate_normal_forms(n))
    logger.debug(f"Normal-form oracle for n={n}: degree {result.degree}.")
    return result


def oracle_poincare_by_last(n: int, j: int) -> Polynomial:
    """a_n^j: normal forms whose last block ends with s_j."""
    if not 1 <= j <= n:
        raise IndexOutOfRangeError(f"Generator index j={j} is outside 1..{n}.")
    return _length_polynomial(
        form.length for form in enumerate_normal_forms(n) if form.last_generator == j
    )


def oracle_triangle_row(n: int) -> tuple[Polynomial, ...]:
    """(a_n^1, ..., a_n^n) from a single pass over the normal forms."""
    counts: list[list[int]] = [[] for _ in range(n + 1)]
    for form in enumerate_normal_forms(n):
        bucket = counts[form.last_generator]
        if form.length >= len(bucket):
            bucket.extend([0] * (form.length - len(bucket) + 1))
        bucket[form.length] += 1
    return tuple(Polynomial(counts[j]) for j in range(1, n + 1))


def contains_321(images: Sequence[int]) -> bool:
    """
    O(m) test for a decreasing subsequence of length three.

    A permutation avoids 321 exactly when the values that are not
    left-to-right maxima appear in increasing order.
    """
    running_max = 0
    largest_dominated = 0
    for value in images:
        if value > running_max:
            running_max = value
        elif value < largest_dominated:
            return True
        else:
            largest_dominated = value
    return False


def _check_cap(m: int, cap: int) -> None:
    if m < 1:
        raise IndexOutOfRangeError(f"Permutation size must be at least 1, got {m}.")
    if m > cap:
        raise CapExceededError(m, cap)


def _avoiding_with_inversions(m: int) -> Iterator[tuple[tuple[int, ...], int]]:
    # Depth-first over prefixes; a prefix is abandoned as soon as it holds a 321.
    prefix: list[int] = []
    used = [False] * (m + 1)

    def extend(running_max: int, largest_dominated: int, inversions: int):
        if len(prefix) == m:
            yield tuple(prefix), inversions
            return
        for value in range(1, m + 1):
            if used[value]:
                continue
            if value < running_max and value < largest_dominated:
                continue
            larger_before = sum(1 for v in prefix if v > value)
            used[value] = True
            prefix.append(value)
            if value > running_max:
                yield from extend(value, largest_dominated, inversions + larger_before)
            else:
                yield from extend(running_max, value, inversions + larger_before)
            prefix.pop()
            used[value] = False

    yield from extend(0, 0, 0)


def enumerate_321_avoiding(m: int, cap: int = DEFAULT_PERMUTATION_CAP) -> Iterator[Permutation]:
    """321-avoiding permutations of S_m in lexicographic order. The cap is checked on the call."""
    _check_cap(m, cap)
    return (Permutation(images) for images, _ in _avoiding_with_inversions(m))


def inversion_polynomial(m: int, cap: int = DEFAULT_PERMUTATION_CAP) -> Polynomial:
    """Sum of q^inv over 321-avoiding permutations of S_m; equals a_{m-1}."""
    _check_cap(m, cap)
    result = _length_polynomial(inversions for _, inversions in _avoiding_with_inversions(m))
    logger.debug(f"Permutation oracle for m={m}: {result.degree} is the top degree.")
    return result


def normal_form_to_permutation(form: NormalForm, n: int) -> Permutation:
    """
    The permutation of {1..n+1} represented by a normal form.

    Generators act on positions: right multiplication by s_k swaps the
    entries in positions k and k+1 of the one-line notation.
    """
    if not form.is_valid(n):
        raise IndexOutOfRangeError(f"{form.render()} is not a normal form of rank {n}.")
    line = list(range(1, n + 2))
    for i, j in form.blocks:
        for k in range(i, j + 1):
            line[k - 1], line[k] = line[k], line[k - 1]
    return Permutation(tuple(line))
