"""Poisson CDF and the regularized upper incomplete gamma function.

For integer s the two are the same function, Q(s, x) = P(Poisson(x) <= s-1),
but they are computed along different routes (term-ratio summation vs. the
classical series / Lentz continued fraction) so each can check the other.
"""
from __future__ import annotations

import math

from ..errors import ParameterError
from ._numerics import log_poisson_pmf

_EPS = 2.0**-53
_TINY = 1e-300
_MAX_ITER = 100_000


def poisson_cdf(k: int, lam: float) -> float:
    """P(Z <= k) for Z ~ Poisson(lam), summed from the dominant end by term ratios."""
    if lam <= 0 or not math.isfinite(lam):
        raise ParameterError(f"Poisson rate must be positive and finite, got {lam}")
    if k < -1:
        raise ParameterError(f"need k >= -1, got {k}")
    if k == -1:
        return 0.0
    if k <= lam:
        # Terms decrease going down from k.
        t = math.exp(log_poisson_pmf(k, lam))
        terms = [t]
        for s in range(k, 0, -1):
            t *= s / lam
            terms.append(t)
            if t < _EPS * terms[0] * 1e-3:
                break
        return min(1.0, math.fsum(terms))
    # k > lam: sum the upper tail, which decreases going up from k+1.
    t = math.exp(log_poisson_pmf(k + 1, lam))
    terms = [t]
    s = k + 1
    while t > _EPS * terms[0] * 1e-3 and len(terms) < _MAX_ITER:
        s += 1
        t *= lam / s
        terms.append(t)
    return max(0.0, 1.0 - math.fsum(terms))


def reg_upper_gamma(s: int, x: float) -> float:
    """Q(s, x) = Gamma(s, x) / Gamma(s) for integer s >= 1 and x > 0."""
    if isinstance(s, bool) or not isinstance(s, int) or s < 1:
        raise ParameterError(f"need integer s >= 1, got {s!r}")
    if not x > 0 or not math.isfinite(x):
        raise ParameterError(f"need finite x > 0, got {x}")
    # x^s e^-x / s!  ==  Poisson pmf at s.
    pmf_s = math.exp(log_poisson_pmf(s, x))
    if x <= s + 1:
        # P(s, x) = pmf(s; x) * sum_k x^k / ((s+1)...(s+k))
        term = 1.0
        total = 1.0
        a = float(s)
        for _ in range(_MAX_ITER):
            a += 1.0
            term *= x / a
            total += term
            if term < total * _EPS:
                break
        return max(0.0, 1.0 - pmf_s * total)
    # Modified Lentz on the continued fraction for Gamma(s, x) e^x x^-s.
    b = x + 1.0 - s
    c = 1.0 / _TINY
    d = 1.0 / b
    h = d
    for i in range(1, _MAX_ITER):
        an = -i * (i - s)
        b += 2.0
        d = an * d + b
        if abs(d) < _TINY:
            d = _TINY
        c = b + an / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            break
    # x^s e^-x / Gamma(s) = s * pmf(s; x)
    return min(1.0, s * pmf_s * h)
