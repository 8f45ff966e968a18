"""Seeded Monte Carlo for the probabilistic parking protocol.

Random stream layout
--------------------
The generator is numpy's counter-based Philox-4x64, keyed from
``SeedSequence(seed, spawn_key=(stream, chunk))``. Simulations are split into
fixed chunks of ``CHUNK_TRIALS`` trials, chunk ``c`` reading its own substream,
so results depend only on (seed, stream, samples) and never on the worker
count.

Within a substream each trial reads exactly ``2m`` doubles from
``Generator.random``: the first ``m`` give preferences ``floor(u * n) + 1``,
and the next ``m`` are the coin slots of cars 1..m. Car i reads its slot
(FORWARD iff ``u < p``) only when it is bumped. An unread slot is still
consumed, so the stream position after a trial never depends on its history.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numba
import numpy as np

from .errors import ParameterError
from .protocol import Direction, ModelParams, ParkingTrace, run_protocol

CHUNK_TRIALS = 10_000
THREADS_ENV = "PARKLAB_THREADS"

_UINT64 = 1 << 64


@dataclass(frozen=True)
class RngSpec:
    seed: int = 0
    stream: int = 0

    def __post_init__(self) -> None:
        for name in ("seed", "stream"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, int) or not 0 <= v < _UINT64:
                raise ParameterError(f"{name} must be a 64-bit unsigned integer, got {v!r}")

    def generator(self, chunk: int = 0) -> np.random.Generator:
        ss = np.random.SeedSequence(self.seed, spawn_key=(self.stream, chunk))
        return np.random.Generator(np.random.Philox(ss))


@dataclass(frozen=True)
class EstimateWithSE:
    value: float
    std_error: float
    samples: int


@dataclass
class Tally:
    """Raw counts from a batch of trials; tallies merge by addition."""

    n: int
    trials: int = 0
    successes: int = 0
    counts: np.ndarray = field(default=None)  # successes by last preference, index j-1

    def __post_init__(self) -> None:
        if self.counts is None:
            self.counts = np.zeros(self.n, dtype=np.int64)

    def __add__(self, other: "Tally") -> "Tally":
        if other.n != self.n:
            raise ParameterError("cannot merge tallies for different n")
        return Tally(self.n, self.trials + other.trials, self.successes + other.successes,
                     self.counts + other.counts)

    def pf_estimate(self) -> EstimateWithSE:
        v = self.successes / self.trials
        return EstimateWithSE(v, math.sqrt(v * (1.0 - v) / self.trials), self.trials)

    def histogram(self) -> "HistogramResult":
        if self.successes > 0:
            normalized = self.counts / self.successes
        else:
            normalized = np.zeros(self.n)
        return HistogramResult(self.counts.copy(), self.successes, self.trials, normalized)


@dataclass(frozen=True)
class HistogramResult:
    counts: np.ndarray
    total_success: int
    total_trials: int
    normalized: np.ndarray


def sample_preference_list(params: ModelParams, gen: np.random.Generator) -> Tuple[int, ...]:
    """Uniform element of [n]^m; consumes m doubles."""
    u = gen.random(params.m)
    return tuple(int(a) for a in _to_prefs(u, params.n))


def _to_prefs(u: np.ndarray, n: int) -> np.ndarray:
    return np.minimum(np.floor(u * n).astype(np.int64), n - 1) + 1


def run_random_trial(params: ModelParams, gen: np.random.Generator) -> ParkingTrace:
    """One trial: m preference draws, then m coin slots (read only when bumped)."""
    prefs = sample_preference_list(params, gen)
    slots = gen.random(params.m)
    # Reading the coin lazily or eagerly is equivalent: run_protocol looks at
    # coins[i] only for bumped cars.
    coins = [Direction.FORWARD if u < params.p else Direction.BACKWARD for u in slots]
    return run_protocol(params, prefs, coins)


@numba.njit(cache=True, nogil=True)
def _park_batch(prefs, forward, n):
    """Vectorized protocol: returns assigned spots (0 = failed) per trial and car."""
    trials, m = prefs.shape
    assigned = np.zeros((trials, m), dtype=np.int64)
    occupied = np.zeros(n + 2, dtype=np.bool_)
    for t in range(trials):
        occupied[:] = False
        for i in range(m):
            a = prefs[t, i]
            if not occupied[a]:
                occupied[a] = True
                assigned[t, i] = a
                continue
            if forward[t, i]:
                s = a + 1
                while s <= n and occupied[s]:
                    s += 1
                if s <= n:
                    occupied[s] = True
                    assigned[t, i] = s
            else:
                s = a - 1
                while s >= 1 and occupied[s]:
                    s -= 1
                if s >= 1:
                    occupied[s] = True
                    assigned[t, i] = s
    return assigned


def draw_batch(params: ModelParams, gen: np.random.Generator, trials: int):
    """Preferences and coin outcomes for ``trials`` consecutive trials."""
    u = gen.random((trials, 2 * params.m))
    prefs = _to_prefs(u[:, : params.m], params.n)
    forward = u[:, params.m:] < float(params.p)
    return prefs, forward


def simulate_batch(params: ModelParams, gen: np.random.Generator, trials: int) -> np.ndarray:
    prefs, forward = draw_batch(params, gen, trials)
    return _park_batch(prefs, forward, params.n)


def _run_chunk(params: ModelParams, rng: RngSpec, chunk: int, trials: int) -> Tally:
    gen = rng.generator(chunk)
    prefs, forward = draw_batch(params, gen, trials)
    assigned = _park_batch(prefs, forward, params.n)
    ok = (assigned > 0).all(axis=1)
    counts = np.bincount(prefs[ok, -1] - 1, minlength=params.n).astype(np.int64)
    return Tally(params.n, trials, int(ok.sum()), counts)


def default_workers() -> int:
    cap = os.environ.get(THREADS_ENV)
    cpus = os.cpu_count() or 1
    if cap:
        try:
            return max(1, min(cpus, int(cap)))
        except ValueError:
            raise ParameterError(f"{THREADS_ENV} must be an integer, got {cap!r}") from None
    return cpus


def simulate(params: ModelParams, samples: int, rng: RngSpec,
             workers: Optional[int] = None) -> Tally:
    """Run ``samples`` trials split into fixed chunks; merged in chunk order."""
    if isinstance(samples, bool) or not isinstance(samples, int) or samples < 1:
        raise ParameterError(f"samples must be a positive integer, got {samples!r}")
    sizes: List[int] = [CHUNK_TRIALS] * (samples // CHUNK_TRIALS)
    if samples % CHUNK_TRIALS:
        sizes.append(samples % CHUNK_TRIALS)
    workers = default_workers() if workers is None else max(1, workers)
    if workers == 1 or len(sizes) == 1:
        parts = [_run_chunk(params, rng, c, k) for c, k in enumerate(sizes)]
    else:
        with ThreadPoolExecutor(max_workers=min(workers, len(sizes))) as pool:
            parts = list(pool.map(lambda ck: _run_chunk(params, rng, *ck), enumerate(sizes)))
    total = Tally(params.n)
    for part in parts:
        total = total + part
    return total


def estimate_pf_probability(params: ModelParams, samples: int, rng: RngSpec,
                            workers: Optional[int] = None) -> EstimateWithSE:
    return simulate(params, samples, rng, workers).pf_estimate()


def estimate_last_car_histogram(params: ModelParams, samples: int, rng: RngSpec,
                                workers: Optional[int] = None) -> HistogramResult:
    return simulate(params, samples, rng, workers).histogram()
