"""Total-variation distance of the last car's law to Uni_n, and its bounds."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np

from .asymptotics import cars_for
from .closed_forms import LastPrefFamily, poisson_factor, q_vector
from .errors import ParameterError
from .protocol import ModelParams

NORM_TOL = 1e-12
BOUND_TOL = 1e-12


def tv_distance(P: Sequence[float], Q: Sequence[float]) -> float:
    """Half the L1 distance between two probability vectors on the same support."""
    P = np.asarray(P, dtype=float)
    Q = np.asarray(Q, dtype=float)
    if P.shape != Q.shape or P.ndim != 1:
        raise ParameterError(f"shape mismatch: {P.shape} vs {Q.shape}")
    for name, v in (("P", P), ("Q", Q)):
        if abs(math.fsum(v.tolist()) - 1.0) > NORM_TOL or v.min() < 0:
            raise ParameterError(f"{name} is not a probability vector")
    return 0.5 * math.fsum(np.abs(P - Q).tolist())


def uniform(n: int) -> np.ndarray:
    return np.full(n, 1.0 / n)


def tv_to_uniform(params: ModelParams) -> float:
    q = np.asarray(q_vector(params), dtype=float)
    return tv_distance(q, uniform(params.n))


def tv_upper_bound(m: int, n: int) -> float:
    ModelParams(m, n)
    return (m - 1) / ((n + 1) * (n - m + 1))


def tv_lower_bound(params: ModelParams) -> float:
    """|2p-1|/(4n) * |1 - poisson_factor|, with the stable Poisson factor."""
    p = float(params.p)
    return abs(2.0 * p - 1.0) / (4.0 * params.n) * abs(1.0 - poisson_factor(params.m, params.n))


def tv_lower_bound_half(m: int, n: int) -> float:
    """Lower bound specific to p = 1/2, from |Q(1) - 1/n| / 2.

    At m = 1 the expression is identically zero, which matches tv = 0 there.
    """
    ModelParams(m, n)
    ratio = math.exp((m - 2) * math.log(n) - (m - 1) * math.log(n + 1))
    return 0.5 * abs(ratio / 2.0 - (1.0 + (n - 2 * m + 2) / (n * (n - m + 1))) / (2.0 * (n + 1)))


def prop_c_cap(c: float) -> float:
    """n- and p-free upper bound 1 - (1-c) e^{3c/5} for m = c n."""
    if not 0.0 < c < 1.0:
        raise ParameterError(f"need 0 < c < 1, got c={c}")
    return 1.0 - (1.0 - c) * math.exp(0.6 * c)


@dataclass(frozen=True)
class TVReport:
    m: int
    n: int
    p: float
    tv: float
    upper: float
    lower: float
    lower_half: Optional[float] = None
    prop_c_cap: Optional[float] = None

    @property
    def sandwich_ok(self) -> bool:
        lo = self.lower if self.lower_half is None else max(self.lower, self.lower_half)
        return lo - BOUND_TOL <= self.tv <= self.upper + BOUND_TOL and (
            self.prop_c_cap is None or self.tv <= self.prop_c_cap + BOUND_TOL)


def tv_report(params: ModelParams, c: Optional[float] = None) -> TVReport:
    p = float(params.p)
    m, n = params.m, params.n
    return TVReport(
        m=m,
        n=n,
        p=p,
        tv=tv_to_uniform(params),
        upper=tv_upper_bound(m, n),
        lower=tv_lower_bound(params),
        lower_half=tv_lower_bound_half(m, n) if p == 0.5 else None,
        prop_c_cap=prop_c_cap(c) if c is not None else None,
    )


def tv_family(m: int, n: int, ps: Sequence[float]) -> List[float]:
    """tv_to_uniform for several p at once, sharing the p-free pieces."""
    fam = LastPrefFamily(m, n)
    u = uniform(n)
    return [tv_distance(fam.q(p), u) for p in ps]


def sandwich_violations(n_max: int, ps: Sequence[float], m_step: int = 1,
                        n_min: int = 1) -> List[TVReport]:
    """Lattice points where lower <= tv <= upper fails (p = 1/2 uses the dedicated bound)."""
    bad = []
    for n in range(n_min, n_max + 1):
        for m in range(1, n + 1, m_step):
            tvs = tv_family(m, n, ps)
            up = tv_upper_bound(m, n)
            gap = abs(1.0 - poisson_factor(m, n)) / (4.0 * n)
            for p, tv in zip(ps, tvs):
                lo = tv_lower_bound_half(m, n) if p == 0.5 else abs(2.0 * p - 1.0) * gap
                if not (lo - BOUND_TOL <= tv <= up + BOUND_TOL):
                    bad.append(TVReport(m, n, p, tv, up, lo))
    return bad


@dataclass(frozen=True)
class RateRow:
    n: int
    m: int
    tv: float
    scaled: float  # n * tv


def rate_band(c: float, p: float) -> tuple:
    """Band for n * tv from the limiting constants, widened by a factor 2."""
    upper = c / (1.0 - c)
    if p == 0.5:
        # n * tv_lower_bound_half -> (1/2)|e^{-c}/2 - 1/2|
        lower = (1.0 - math.exp(-c)) / 4.0
    else:
        lower = abs(2.0 * p - 1.0) * c / (4.0 * (1.0 - c))
    return lower / 2.0, upper * 2.0


def rate_diagnostic(c: float, p: float, ns: Sequence[int]) -> List[RateRow]:
    if not 0.0 < c < 1.0:
        raise ParameterError(f"need 0 < c < 1, got c={c}")
    rows = []
    for n in ns:
        m = cars_for(c, n)
        if m < 1:
            raise ParameterError(f"c n = {c * n} gives no cars")
        tv = tv_to_uniform(ModelParams(m, n, p))
        rows.append(RateRow(n, m, tv, n * tv))
    return rows


def convexity_check(m: int, n: int, p: float) -> float:
    """Max deviation of Q_p from (1-p) Q_0 + p Q_1."""
    q0 = q_vector(ModelParams(m, n, 0.0))
    q1 = q_vector(ModelParams(m, n, 1.0))
    qp = q_vector(ModelParams(m, n, p))
    return float(np.max(np.abs(qp - (1.0 - p) * q0 - p * q1)))


def reversal_check(m: int, n: int) -> float:
    """Max deviation of Q_1(j) from Q_0(n+1-j)."""
    q0 = q_vector(ModelParams(m, n, 0.0))
    q1 = q_vector(ModelParams(m, n, 1.0))
    return float(np.max(np.abs(q1 - q0[::-1])))


def symmetry_check(m: int, n: int, p: float) -> float:
    """Max deviation of Q_p(j) from Q_{1-p}(n+1-j)."""
    a = q_vector(ModelParams(m, n, p))
    b = q_vector(ModelParams(m, n, 1.0 - p))
    return float(np.max(np.abs(a - b[::-1])))


@dataclass(frozen=True)
class SweepRow:
    c: float
    m: int
    tv: float
    upper_bound: float
    prop_c_cap: float


def sweep_c(n: int = 100, p: float = 1.0, c_start: float = 0.1, c_stop: float = 0.99,
            c_step: float = 0.01) -> List[SweepRow]:
    """TV to uniform along m = floor(c n) for a grid of c values."""
    count = int(round((c_stop - c_start) / c_step)) + 1
    rows = []
    for i in range(count):
        c = round(c_start + i * c_step, 12)
        m = cars_for(c, n)
        if m < 1:
            continue
        rows.append(SweepRow(c, m, tv_to_uniform(ModelParams(m, n, p)), tv_upper_bound(m, n),
                             prop_c_cap(c)))
    return rows
