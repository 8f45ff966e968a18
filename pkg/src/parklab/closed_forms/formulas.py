"""Closed forms for the last car's preference.

Every quantity is a combination of the weights

    w_s = C(m-1, s) (n-s)^(m-s-2) (s+1)^(s-1) / (n+1)^(m-1),   s = 0..m-1,

and the conditional law of a_m is

    Q(j) = lead - [p * sum_{s >= n-j+1} w_s + (1-p) * sum_{s >= j} w_s],
    lead = (n-m+2) / ((n-m+1)(n+1)).

In float mode each w_s is the exponential of a sum of logs; the numerator and
denominator overflow a double long before n = 200. In exact mode (p a
``Fraction``) the same expressions are evaluated in rational arithmetic.
"""
from __future__ import annotations

import math
from fractions import Fraction
from math import comb
from typing import List, Sequence, Tuple, Union

import numpy as np

from ..errors import ParameterError, SelfCheckError
from ..protocol import ModelParams
from ._numerics import suffix_sums

Number = Union[float, Fraction]

CLAMP_TOL = 1e-15
NORM_TOL = 1e-12


def pf_probability_formula(params: ModelParams) -> Number:
    """P(alpha is a parking function) = (n-m+1)(n+1)^(m-1) / n^m, independent of p."""
    m, n = params.m, params.n
    if params.exact:
        return Fraction((n - m + 1) * (n + 1) ** (m - 1), n**m)
    return math.exp(math.log(n - m + 1) + (m - 1) * math.log(n + 1) - m * math.log(n))


def _lead(m: int, n: int, exact: bool) -> Number:
    if exact:
        return Fraction(n - m + 2, (n - m + 1) * (n + 1))
    return (n - m + 2) / ((n - m + 1) * (n + 1))


def log_weights(m: int, n: int) -> np.ndarray:
    s = np.arange(m, dtype=float)
    lg = np.vectorize(math.lgamma, otypes=[float])
    return (
        math.lgamma(m)
        - lg(s + 1.0)
        - lg(m - s)
        + (m - s - 2.0) * np.log(n - s)
        + (s - 1.0) * np.log(s + 1.0)
        - (m - 1.0) * math.log(n + 1.0)
    )


def weights(m: int, n: int) -> np.ndarray:
    return np.exp(log_weights(m, n))


def exact_weights(m: int, n: int) -> List[Fraction]:
    scale = Fraction(n + 1) ** (m - 1)
    return [
        comb(m - 1, s) * Fraction(n - s) ** (m - s - 2) * Fraction(s + 1) ** (s - 1) / scale
        for s in range(m)
    ]


def _validate_j(j: int, n: int) -> None:
    if isinstance(j, bool) or not isinstance(j, int) or not 1 <= j <= n:
        raise ParameterError(f"j must be in 1..{n}, got {j!r}")


def q_last_pref(j: int, params: ModelParams) -> Number:
    """P(a_m = j | every car parks). Empty index ranges contribute zero."""
    m, n, p = params.m, params.n, params.p
    _validate_j(j, n)
    if params.exact:
        w = exact_weights(m, n)
        forward = sum(w[n - j + 1:], Fraction(0))
        backward = sum(w[j:], Fraction(0))
        return _lead(m, n, True) - (p * forward + (1 - p) * backward)
    return float(q_vector(params)[j - 1])


class LastPrefFamily:
    """The pieces of Q(j) that do not depend on p, for reuse across a p grid.

    ``Q_p = lead - (p * forward + (1 - p) * backward)`` so every Q_p is a
    convex combination of Q_0 and Q_1.
    """

    def __init__(self, m: int, n: int):
        ModelParams(m, n)
        self.m, self.n = m, n
        suf = suffix_sums(weights(m, n))  # suf[k] = sum_{s >= k} w_s, zero for k >= m
        j = np.arange(1, n + 1)
        self.lead = _lead(m, n, False)
        self.forward = suf[np.minimum(n - j + 1, m)]
        self.backward = suf[np.minimum(j, m)]

    def q(self, p: float) -> np.ndarray:
        q = self.lead - (p * self.forward + (1.0 - p) * self.backward)
        return check_distribution(q)


def check_distribution(q: np.ndarray) -> np.ndarray:
    """Clamp round-off negatives to zero and verify normalization."""
    low = q.min()
    if low < -CLAMP_TOL:
        raise SelfCheckError(f"probability {low:.3e} below clamp tolerance")
    if low < 0:
        q = np.where(q < 0, 0.0, q)
    total = math.fsum(q.tolist())
    if abs(total - 1.0) > NORM_TOL:
        raise SelfCheckError(f"distribution sums to {total!r}")
    return q


def q_vector(params: ModelParams) -> Union[np.ndarray, Tuple[Fraction, ...]]:
    """Q_{m,n,p} over j = 1..n; a float array, or a tuple of Fractions in exact mode."""
    m, n, p = params.m, params.n, params.p
    if params.exact:
        w = exact_weights(m, n)
        suf = [Fraction(0)] * (m + 1)
        for k in range(m - 1, -1, -1):
            suf[k] = suf[k + 1] + w[k]
        lead = _lead(m, n, True)
        q = tuple(
            lead - (p * suf[min(n - j + 1, m)] + (1 - p) * suf[min(j, m)])
            for j in range(1, n + 1)
        )
        if sum(q) != 1 or min(q) < 0:
            raise SelfCheckError("exact distribution is not a probability vector")
        return q
    return LastPrefFamily(m, n).q(p)


def poisson_factor(m: int, n: int, exact: bool = False) -> Number:
    """e^{n+1} (m-1)! P(Z <= m-1) / (n+1)^{m-1} with Z ~ Poisson(n+1).

    Evaluated as sum_{s<m} (m-1)!/s! (n+1)^{s-m+1}: starting from the s = m-1
    term (which is 1) each smaller s multiplies by s/(n+1), so all terms are
    positive and decreasing and nothing overflows.
    """
    ModelParams(m, n)
    if exact:
        t = Fraction(1)
        total = Fraction(1)
        for s in range(m - 1, 0, -1):
            t = t * s / (n + 1)
            total += t
        return total
    t = 1.0
    terms = [1.0]
    for s in range(m - 1, 0, -1):
        t *= s / (n + 1)
        if t < 1e-18:
            break
        terms.append(t)
    return math.fsum(terms)


def mean_last_pref(params: ModelParams) -> Number:
    """E(a_m | every car parks) = (n + 2p)/2 - (p - 1/2) * poisson_factor."""
    m, n, p = params.m, params.n, params.p
    if params.exact:
        return Fraction(n, 2) + p - (p - Fraction(1, 2)) * poisson_factor(m, n, exact=True)
    return (n + 2.0 * p) / 2.0 - (p - 0.5) * poisson_factor(m, n)


def mean_from_distribution(q: Sequence[Number]) -> Number:
    if isinstance(q[0], Fraction):
        return sum(j * qj for j, qj in enumerate(q, start=1))
    return math.fsum(j * float(qj) for j, qj in enumerate(q, start=1))
