"""Low-level numerics shared by the closed-form evaluators.

The Poisson log-pmf uses Loader's saddle-point decomposition
``log pmf(k; lam) = -stirlerr(k) - bd0(k, lam) - log(2 pi k) / 2``.
It avoids forming ``k log lam - lam - lgamma(k+1)`` as a difference of
numbers near 1e3, which would cost about 1e-13 absolute in the log at k ~ 500.
Relative accuracy of the resulting pmf is a few ulps.
"""
from __future__ import annotations

import math
from typing import Iterable

import numpy as np

_LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)

_S0 = 1.0 / 12
_S1 = 1.0 / 360
_S2 = 1.0 / 1260
_S3 = 1.0 / 1680
_S4 = 1.0 / 1188


def kahan_sum(values: Iterable[float]) -> float:
    """Neumaier-compensated sum; ``math.fsum`` is used where a list is at hand."""
    total = 0.0
    comp = 0.0
    for v in values:
        t = total + v
        if abs(total) >= abs(v):
            comp += (total - t) + v
        else:
            comp += (v - t) + total
        total = t
    return total + comp


def suffix_sums(w: np.ndarray) -> np.ndarray:
    """out[k] = sum(w[k:]) with compensation; out has len(w)+1 entries, out[-1] = 0."""
    out = np.zeros(len(w) + 1)
    total = 0.0
    comp = 0.0
    for k in range(len(w) - 1, -1, -1):
        v = float(w[k])
        t = total + v
        if abs(total) >= abs(v):
            comp += (total - t) + v
        else:
            comp += (v - t) + total
        total = t
        out[k] = total + comp
    return out


def stirlerr(k: int) -> float:
    """log(k!) - log(sqrt(2 pi k) (k/e)^k) for integer k >= 1."""
    if k <= 15:
        return math.lgamma(k + 1.0) - (k + 0.5) * math.log(k) + k - _LOG_SQRT_2PI
    kk = float(k) * k
    if k > 500:
        return (_S0 - _S1 / kk) / k
    if k > 80:
        return (_S0 - (_S1 - _S2 / kk) / kk) / k
    if k > 35:
        return (_S0 - (_S1 - (_S2 - _S3 / kk) / kk) / kk) / k
    return (_S0 - (_S1 - (_S2 - (_S3 - _S4 / kk) / kk) / kk) / kk) / k


def bd0(x: float, mu: float) -> float:
    """x log(x/mu) + mu - x, accurate when x is close to mu."""
    if abs(x - mu) < 0.1 * (x + mu):
        v = (x - mu) / (x + mu)
        s = (x - mu) * v
        ej = 2.0 * x * v
        v2 = v * v
        j = 1
        while True:
            ej *= v2
            s1 = s + ej / (2 * j + 1)
            if s1 == s:
                return s1
            s = s1
            j += 1
    return x * math.log(x / mu) + mu - x


def log_poisson_pmf(k: int, lam: float) -> float:
    if k < 0:
        return -math.inf
    if k == 0:
        return -lam
    return -stirlerr(k) - bd0(float(k), lam) - _LOG_SQRT_2PI - 0.5 * math.log(k)
