"""Abel multinomial sums by brute force over weak compositions.

    A_N(x_1..x_k; e_1..e_k) = sum_{s_1+...+s_k = N} N!/(s_1!...s_k!) prod_j (x_j + s_j)^(s_j + e_j)

With integer or ``Fraction`` bases the sum is an exact ``Fraction``; with any
float base it is a float. ``0 ** 0`` is taken as 1.
"""
from __future__ import annotations

import enum
from fractions import Fraction
from math import comb, factorial, prod
from numbers import Rational
from typing import Iterator, Sequence, Tuple, Union

from ..errors import BudgetExceededError, ParameterError

Number = Union[float, Fraction]

MAX_COMPOSITIONS = 1_000_000


class AbelCase(enum.Enum):
    ALL_MINUS_ONE = "all-minus-one"
    MINUS_ONE_ZERO = "minus-one-zero"


def compositions(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
    """Weak compositions of ``total`` into ``parts`` nonnegative entries, lexicographic."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def _power(base: Number, exponent: int) -> Number:
    if exponent < 0:
        if base == 0:
            raise ParameterError("zero base raised to a negative exponent")
        if isinstance(base, Fraction):
            return Fraction(1) / base**-exponent
        return base**exponent
    return base**exponent


def abel_A(x: Sequence[Number], pw: Sequence[int], order: int,
           max_compositions: int = MAX_COMPOSITIONS) -> Number:
    k = len(x)
    if k < 1 or len(pw) != k:
        raise ParameterError("x and pw must be nonempty and of equal length")
    if isinstance(order, bool) or not isinstance(order, int) or order < 0:
        raise ParameterError(f"order must be a nonnegative integer, got {order!r}")
    if any(isinstance(e, bool) or not isinstance(e, int) for e in pw):
        raise ParameterError("exponent shifts must be integers")
    if comb(order + k - 1, k - 1) > max_compositions:
        raise BudgetExceededError(f"A_{order} with {k} parts exceeds {max_compositions} compositions")

    exact = all(isinstance(v, Rational) for v in x)
    xs = [Fraction(v) if exact else float(v) for v in x]
    nfact = factorial(order)
    total: Number = Fraction(0) if exact else 0.0
    for s in compositions(order, k):
        coef = nfact // prod(factorial(si) for si in s)
        term: Number = coef
        for xj, sj, ej in zip(xs, s, pw):
            term = term * _power(xj + sj, sj + ej)
        total += term
    return total


def abel_closed_forms(x: Sequence[Number], case: AbelCase, order: int) -> Number:
    """Closed forms of A_N(x; -1,...,-1) and A_N(x; -1,...,-1, 0)."""
    if len(x) < 1:
        raise ParameterError("x must be nonempty")
    if any(v <= 0 for v in x):
        raise ParameterError("closed forms need positive x")
    exact = all(isinstance(v, Rational) for v in x)
    xs = [Fraction(v) if exact else float(v) for v in x]
    px = prod(xs)
    sx = sum(xs)
    if case is AbelCase.ALL_MINUS_ONE:
        return sx * _power(sx + order, order - 1) / px
    if case is AbelCase.MINUS_ONE_ZERO:
        return xs[-1] * _power(sx + order, order) / px
    raise ParameterError(f"unknown case {case!r}")
