"""Exact ground truth for small streets by exhaustive enumeration.

For a fixed preference list the success probability is a polynomial in p:
each surviving leaf of the coin-decision tree contributes p^f (1-p)^b where f
and b count the forward and backward coin reads on that path. The DFS that
finds those leaves does not depend on p, so its result is cached per list and
re-evaluated for every p. Rational p (a ``Fraction``) gives exact answers.
"""
from __future__ import annotations

import itertools
from collections import Counter
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Sequence, Tuple, Union

from .errors import BudgetExceededError
from .protocol import ModelParams, Probability, check_prefs

Number = Union[float, Fraction]

MAX_N = 8
MAX_LISTS = 6**6


@lru_cache(maxsize=1 << 17)
def _leaf_counts(prefs: Tuple[int, ...], n: int) -> Tuple[Tuple[int, int, int], ...]:
    """Successful leaves of the decision tree as (forwards, backwards, count)."""
    tally: Counter = Counter()
    occupied = [False] * (n + 2)
    m = len(prefs)

    def visit(i: int, f: int, b: int) -> None:
        if i == m:
            tally[f, b] += 1
            return
        a = prefs[i]
        if not occupied[a]:
            occupied[a] = True
            visit(i + 1, f, b)
            occupied[a] = False
            return
        # Forward branch first, then backward: fixed order keeps traces reproducible.
        s = a + 1
        while s <= n and occupied[s]:
            s += 1
        if s <= n:
            occupied[s] = True
            visit(i + 1, f + 1, b)
            occupied[s] = False
        s = a - 1
        while s >= 1 and occupied[s]:
            s -= 1
        if s >= 1:
            occupied[s] = True
            visit(i + 1, f, b + 1)
            occupied[s] = False

    visit(0, 0, 0)
    return tuple((f, b, c) for (f, b), c in sorted(tally.items()))


def _evaluate(leaves, p: Probability) -> Number:
    q = 1 - p
    return sum((c * p**f * q**b for f, b, c in leaves), Fraction(0) if isinstance(p, Fraction) else 0.0)


def success_probability(prefs: Sequence[int], params: ModelParams, max_n: int = MAX_N) -> Number:
    """P(all m cars park) for a fixed preference list, by weighted DFS."""
    if params.n > max_n:
        raise BudgetExceededError(f"n={params.n} exceeds the DFS cap max_n={max_n}")
    prefs = check_prefs(prefs, params)
    return _evaluate(_leaf_counts(prefs, params.n), params.p)


def _check_budget(params: ModelParams, max_lists: int) -> None:
    if params.n > MAX_N or params.n**params.m > max_lists:
        raise BudgetExceededError(
            f"enumerating {params.n}^{params.m} preference lists exceeds budget {max_lists}"
        )


def _success_mass_by_last(params: ModelParams, max_lists: int) -> Dict[int, Number]:
    _check_budget(params, max_lists)
    n, p = params.n, params.p
    zero: Number = Fraction(0) if params.exact else 0.0
    mass = {j: zero for j in range(1, n + 1)}
    for prefs in itertools.product(range(1, n + 1), repeat=params.m):
        mass[prefs[-1]] += _evaluate(_leaf_counts(prefs, n), p)
    return mass


def exact_pf_probability(params: ModelParams, max_lists: int = MAX_LISTS) -> Number:
    """Average success probability over all n^m lists."""
    mass = _success_mass_by_last(params, max_lists)
    return sum(mass.values()) / params.n**params.m


def exact_q_distribution(params: ModelParams, max_lists: int = MAX_LISTS) -> Tuple[Number, ...]:
    """Distribution of the last car's preference given that every car parked."""
    mass = _success_mass_by_last(params, max_lists)
    total = sum(mass.values())
    return tuple(mass[j] / total for j in range(1, params.n + 1))


def exact_mean(params: ModelParams, max_lists: int = MAX_LISTS) -> Number:
    q = exact_q_distribution(params, max_lists)
    return sum(j * qj for j, qj in enumerate(q, start=1))
