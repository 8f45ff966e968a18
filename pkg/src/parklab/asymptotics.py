"""Large-n expansions for m = c n cars.

Two independent routes approximate the Poisson factor
``poisson_factor(m, n) = (m-1)! sum_{s<m} (n+1)^{s-m+1} / s!``:

* a Stirling / large-deviation route, through the left-tail expansion of a
  sum of unit-rate Poissons (``poisson_factor_ld``);
* a tree-function route, through the series F(z) = sum z^s (s+1)^{s-1}/s! and
  G(z) = z F'(z) + F(z) at z = c e^{-c} (``poisson_factor_tree``).

Both agree with the exact factor up to O(n^-2), as does the compact
``cf_ratio``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Sequence

from .closed_forms import mean_last_pref, poisson_cdf, poisson_factor
from .errors import ParameterError
from .protocol import ModelParams

C_MAX = 0.95
_INV_E = math.exp(-1.0)
_SERIES_TOL = 1e-16
_SERIES_MAX_TERMS = 200_000


def _check_c(c: float, cap: float = 1.0) -> None:
    if not 0.0 < c < 1.0:
        raise ParameterError(f"need 0 < c < 1, got c={c}")
    if c > cap:
        raise ParameterError(f"c={c} exceeds the validity guard {cap}; (1-c)^-1 terms dominate")


def cars_for(c: float, n: int) -> int:
    """m = floor(c n); the tiny offset absorbs binary round-off such as 0.29 * 100."""
    return int(math.floor(c * n + 1e-9))


@dataclass(frozen=True)
class LDExpansion:
    """Ingredients of the Poisson(1) left-tail expansion at level c.

    ``tilt`` minimizes e^{-ct} E e^{tX}; tilting by it turns Poisson(1) into
    Poisson(c), whose central moments give the two correction coefficients.
    """

    c: float
    rate: float
    tilt: float
    m_of_c: float
    mu2: float
    mu3: float
    mu4: float
    shape_coeff: float    # mu4/mu2^2 - 3 - 5 mu3^2 / (3 mu2^3)
    lattice_coeff: float  # (-z mu3/mu2 + z (1+z)/(1-z)) / ((1-z) mu2), z = e^tilt
    corr: float

    @classmethod
    def at(cls, c: float) -> "LDExpansion":
        _check_c(c)
        rate = c * math.log(c) - c + 1.0
        tilt = math.log(c)
        z = math.exp(tilt)
        mu2, mu3, mu4 = c, c, 3.0 * c * c + c
        shape = mu4 / mu2**2 - 3.0 - 5.0 * mu3**2 / (3.0 * mu2**3)
        lattice = (-z * mu3 / mu2 + z * (1.0 + z) / (1.0 - z)) / ((1.0 - z) * mu2)
        corr = 1.0 / (12.0 * c) + c / (1.0 - c) ** 2
        return cls(c, rate, tilt, math.exp(-c * math.log(c) + c - 1.0), mu2, mu3, mu4,
                   shape, lattice, corr)

    def psi(self, t: float) -> float:
        """e^{-ct} times the Poisson(1) moment generating function."""
        return math.exp(-self.c * t + math.expm1(t))


def log_ld_left_tail(n: int, c: float) -> float:
    _check_c(c, C_MAX)
    k = cars_for(c, n)
    if k < 1:
        raise ParameterError(f"n c = {n * c} rounds below 1")
    c = k / n
    _check_c(c, C_MAX)
    ld = LDExpansion.at(c)
    one_minus = 1.0 - ld.corr / n
    if one_minus <= 0:
        raise ParameterError(f"n={n} too small for the expansion at c={c}")
    return (-n * ld.rate - 0.5 * math.log(2.0 * math.pi * n * c) - math.log1p(-c)
            + math.log(one_minus))


def ld_left_tail(n: int, c: float) -> float:
    """Expansion of P(X_1 + ... + X_n <= n c) for iid Poisson(1) X_i.

    When n c is not an integer the level is rounded down to k = floor(n c) and
    the expansion is evaluated at c = k / n, matching ``exact_left_tail``.
    """
    return math.exp(log_ld_left_tail(n, c))


def exact_left_tail(n: int, c: float) -> float:
    """P(Poisson(n) <= floor(n c)); the sum of n unit Poissons is Poisson(n)."""
    return poisson_cdf(cars_for(c, n), float(n))


def mean_expansion(n: int, c: float, p: float) -> float:
    _check_c(c)
    if not 0.0 <= p <= 1.0:
        raise ParameterError(f"need 0 <= p <= 1, got {p}")
    skew = 2.0 * p - 1.0
    return ((n + 1) / 2.0 - skew * c / (2.0 * (1.0 - c))
            - skew * (c * c - c - 1.0) / (2.0 * (1.0 - c) ** 3 * n))


def cf_ratio(n: int, c: float) -> float:
    """Two-term expansion of poisson_factor(c n, n)."""
    _check_c(c)
    return (1.0 + (c * c - c - 1.0) / ((1.0 - c) ** 2 * n)) / (1.0 - c)


def _tree_series(z: float, shift: int, derivative: int = 0) -> float:
    """sum_s d^k/dz^k [z^s] (s+1)^(s+shift) / s!, truncated at relative 1e-16."""
    if not 0.0 <= z < _INV_E:
        raise ParameterError(f"tree series needs 0 <= z < 1/e, got z={z}")
    if z == 0.0:
        # only the s = derivative term survives
        return float(derivative + 1) ** (derivative + shift)
    logz = math.log(z)
    terms = []
    total = 0.0
    for s in range(derivative, _SERIES_MAX_TERMS):
        # d^k/dz^k z^s = s!/(s-k)! z^(s-k)
        log_t = ((s - derivative) * logz + (s + shift) * math.log(s + 1.0)
                 - math.lgamma(s - derivative + 1.0))
        t = math.exp(log_t)
        terms.append(t)
        total += t
        if s > derivative + 2 and t < _SERIES_TOL * total:
            break
    return math.fsum(terms)


def tree_F(z: float) -> float:
    """Tree function F(z) = sum_s z^s (s+1)^(s-1)/s! = -W(-z)/z."""
    return _tree_series(z, -1)


def tree_F_prime(z: float) -> float:
    """F'(z) from the term-shifted series sum_{s>=1} z^(s-1) (s+1)^(s-1)/(s-1)!."""
    return _tree_series(z, -1, 1)


def tree_G(z: float) -> float:
    """G(z) = sum_s z^s (s+1)^s / s! = z F'(z) + F(z)."""
    return _tree_series(z, 0)


def tree_G_prime(z: float) -> float:
    return _tree_series(z, 0, 1)


def tree_G_second(z: float) -> float:
    return _tree_series(z, 0, 2)


def poisson_factor_ld(m: int, n: int) -> float:
    """poisson_factor from the left-tail expansion of Poisson(n+1) at level m-1."""
    ModelParams(m, n)
    if m < 2:
        raise ParameterError("the large-deviation route needs m >= 2")
    lam = n + 1
    log_tail = log_ld_left_tail(lam, (m - 1) / lam)
    return math.exp(lam + math.lgamma(m) - (m - 1) * math.log(lam) + log_tail)


def poisson_factor_tree(m: int, n: int) -> float:
    """poisson_factor from the tree-function expansion with c = m / n."""
    ModelParams(m, n)
    c = m / n
    _check_c(c)
    z = c * math.exp(-c)
    a = 1.0 - 1.0 / (2.0 * c)
    b = 1.0 - 1.0 / (2.0 * c) - c / 2.0
    g, g1, g2 = tree_G(z), tree_G_prime(z), tree_G_second(z)
    inner = g + (a * z * g1 + b * (z * z * g2 + z * g1)) / n
    return math.exp((m - 1) * math.log1p(-1.0 / (n + 1))) * inner


@dataclass(frozen=True)
class ExpansionReport:
    n: int
    approx: float
    exact: float
    abs_err: float
    scaled_err: float


def _report(n: int, approx: float, exact: float) -> ExpansionReport:
    err = abs(approx - exact)
    return ExpansionReport(n, approx, exact, err, n * n * err)


def mean_expansion_report(c: float, p: float, ns: Sequence[int]) -> List[ExpansionReport]:
    """Expansion of the mean against the exact mean at m = floor(c n)."""
    return [_report(n, mean_expansion(n, c, p), mean_last_pref(ModelParams(cars_for(c, n), n, p)))
            for n in ns]


def cf_ratio_report(c: float, ns: Sequence[int]) -> List[ExpansionReport]:
    return [_report(n, cf_ratio(n, c), poisson_factor(cars_for(c, n), n)) for n in ns]


def ld_report(c: float, ns: Sequence[int]) -> List[ExpansionReport]:
    """Left-tail expansion against the exact Poisson(n) CDF; scaled_err is n^2 * abs_err."""
    return [_report(n, ld_left_tail(n, c), exact_left_tail(n, c)) for n in ns]


def relative_error(report: ExpansionReport) -> float:
    return report.abs_err / abs(report.exact)
