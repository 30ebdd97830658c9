"""
Exact dense univariate polynomials in q over the integers.

A polynomial is stored as a tuple of Python ints, constant term first, so
1 - q^2 - q^3 is (1, 0, -1, -1). The zero polynomial is the empty tuple and
has degree -1. Values are immutable; every operation returns a new one.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from ..exceptions import NonExactDivisionError, PolynomialZeroDivisionError

ZERO_DEGREE = -1

Coercible = Union["Polynomial", int]


@dataclass(frozen=True, init=False, eq=False)
class Polynomial:
    """
    A polynomial with arbitrary-precision integer coefficients.

    >>> Polynomial([1, 1]) * Polynomial([1, 1])
    Polynomial('1 + 2*q + q^2')
    """
    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Iterable[int] = ()):
        values = list(coeffs)
        for c in values:
            if not isinstance(c, int):
                raise TypeError(f"Coefficients must be ints, got {type(c).__name__} {c!r}.")
        end = len(values)
        while end >= 1 and values[end - 1] == 0:
            end -= 1
        object.__setattr__(self, "coeffs", tuple(values[:end]))
        assert not self.coeffs or self.coeffs[-1] != 0

    @classmethod
    def coerce(cls, value: Coercible) -> Polynomial:
        if isinstance(value, Polynomial):
            return value
        if isinstance(value, int):
            return cls((value,))
        raise TypeError(f"Cannot interpret {type(value).__name__} as a polynomial.")

    @property
    def degree(self) -> int:
        """Degree of the leading term; ZERO_DEGREE for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int) -> int:
        """Coefficient of q^i; zero above the degree."""
        if i < 0:
            raise IndexError(f"Coefficient index must be non-negative, got {i}.")
        return self.coeffs[i] if i < len(self.coeffs) else 0

    def __add__(self, other: Coercible) -> Polynomial:
        if not isinstance(other, (Polynomial, int)):
            return NotImplemented
        return add(self, Polynomial.coerce(other))

    __radd__ = __add__

    def __sub__(self, other: Coercible) -> Polynomial:
        if not isinstance(other, (Polynomial, int)):
            return NotImplemented
        return sub(self, Polynomial.coerce(other))

    def __rsub__(self, other: Coercible) -> Polynomial:
        if not isinstance(other, (Polynomial, int)):
            return NotImplemented
        return sub(Polynomial.coerce(other), self)

    def __neg__(self) -> Polynomial:
        return neg(self)

    def __mul__(self, other: Coercible) -> Polynomial:
        if isinstance(other, int):
            return scale(self, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> Polynomial:
        if exponent < 0:
            raise ValueError("Negative powers are not polynomials.")
        result = ONE
        base = self
        while exponent:
            if exponent & 1:
                result = mul(result, base)
            base = mul(base, base)
            exponent >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = Polynomial.coerce(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __str__(self) -> str:
        return render_text(self)

    def __repr__(self) -> str:
        return f"Polynomial('{render_text(self)}')"


def add(p: Polynomial, r: Polynomial) -> Polynomial:
    return Polynomial(c + d for c, d in itertools.zip_longest(p.coeffs, r.coeffs, fillvalue=0))


def sub(p: Polynomial, r: Polynomial) -> Polynomial:
    return Polynomial(c - d for c, d in itertools.zip_longest(p.coeffs, r.coeffs, fillvalue=0))


def neg(p: Polynomial) -> Polynomial:
    return Polynomial(-c for c in p.coeffs)


def scale(p: Polynomial, c: int) -> Polynomial:
    return Polynomial(c * a for a in p.coeffs)


def mul(p: Polynomial, r: Polynomial) -> Polynomial:
    """Schoolbook convolution; zero coefficients of either factor are skipped."""
    if p.is_zero() or r.is_zero():
        return ZERO
    result = [0] * (len(p.coeffs) + len(r.coeffs) - 1)
    sparse_r = [(j, d) for j, d in enumerate(r.coeffs) if d]
    for i, c in enumerate(p.coeffs):
        if not c:
            continue
        for j, d in sparse_r:
            result[i + j] += c * d
    return Polynomial(result)


def exact_div(p: Polynomial, d: Polynomial) -> Polynomial:
    """
    Quotient of p by d, which must divide p exactly over the integers.

    Raises PolynomialZeroDivisionError for d = 0 and NonExactDivisionError
    when a remainder would be left.
    """
    if d.is_zero():
        raise PolynomialZeroDivisionError("Division by the zero polynomial.")
    if p.is_zero():
        return ZERO
    if p.degree < d.degree:
        raise NonExactDivisionError(f"({p}) is not divisible by ({d}).")

    remainder = list(p.coeffs)
    lead = d.coeffs[-1]
    shift = d.degree
    quotient = [0] * (p.degree - d.degree + 1)
    for i in range(len(quotient) - 1, -1, -1):
        top = remainder[i + shift]
        if top == 0:
            continue
        if top % lead:
            raise NonExactDivisionError(f"({p}) is not divisible by ({d}).")
        factor = top // lead
        quotient[i] = factor
        for k, c in enumerate(d.coeffs):
            if c:
                remainder[i + k] -= factor * c
    if any(remainder):
        raise NonExactDivisionError(f"({p}) is not divisible by ({d}).")
    return Polynomial(quotient)


def eval_int(p: Polynomial, x: int) -> int:
    """Horner evaluation at an integer point."""
    value = 0
    for c in reversed(p.coeffs):
        value = value * x + c
    return value


def monomial(k: int, c: int = 1) -> Polynomial:
    """c*q^k."""
    if k < 0:
        raise ValueError(f"Monomial exponent must be non-negative, got {k}.")
    return Polynomial([0] * k + [c])


def geometric(lo: int, hi: int) -> Polynomial:
    """q^lo + ... + q^hi, zero for an empty range. psi(k) is geometric(2, k + 1)."""
    if lo < 0:
        raise ValueError(f"Lower exponent must be non-negative, got {lo}.")
    if lo > hi:
        return ZERO
    return Polynomial([0] * lo + [1] * (hi - lo + 1))


def one_minus_q_power(t: int) -> Polynomial:
    """1 - q^t for t >= 1."""
    if t < 1:
        raise ValueError(f"Exponent must be at least 1, got {t}.")
    return Polynomial([1] + [0] * (t - 1) + [-1])


def render_text(p: Polynomial) -> str:
    """Ascending-degree rendering, e.g. '1 - q^2 - q^3 + 2*q^5'."""
    if p.is_zero():
        return "0"
    parts: list[str] = []
    for i, c in enumerate(p.coeffs):
        if c == 0:
            continue
        magnitude = abs(c)
        if i == 0:
            term = str(magnitude)
        else:
            power = "q" if i == 1 else f"q^{i}"
            term = power if magnitude == 1 else f"{magnitude}*{power}"
        if not parts:
            parts.append(term if c > 0 else f"-{term}")
        else:
            parts.append(f" + {term}" if c > 0 else f" - {term}")
    return "".join(parts)


def to_json(p: Polynomial) -> list[str]:
    """Coefficients as decimal strings, index = degree; zero is ["0"]."""
    if p.is_zero():
        return ["0"]
    return [str(c) for c in p.coeffs]


def from_json(values: Sequence[Union[str, int]]) -> Polynomial:
    return Polynomial(int(v) for v in values)


ZERO = Polynomial()
ONE = Polynomial((1,))
Q = Polynomial((0, 1))
