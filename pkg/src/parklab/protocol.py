"""The parking street and the single-run probabilistic parking protocol.

Spots are numbered 1..n. Cars arrive in order 1..m. A car whose preferred spot
is free parks there without touching its coin. Otherwise it reads its coin
exactly once: FORWARD scans n-ward, BACKWARD scans 1-ward, and it takes the
first free spot it meets. Leaving the street is a failure; the car is dropped
and the remaining cars are still processed so a full trace always exists.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple, Union

from .errors import ParameterError

Probability = Union[float, Fraction]


class Direction(enum.Enum):
    FORWARD = "F"
    BACKWARD = "B"


@dataclass(frozen=True)
class ModelParams:
    """Model configuration: ``m`` cars, ``n`` spots, forward probability ``p``.

    ``p`` is kept as a :class:`~fractions.Fraction` when one is given, which
    switches the oracle and the closed forms to exact rational arithmetic.
    Any other number is stored as a float.
    """

    m: int
    n: int
    p: Probability = 0.5

    def __post_init__(self) -> None:
        for name in ("m", "n"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, int):
                raise ParameterError(f"{name} must be an integer, got {v!r}")
        if self.m < 1:
            raise ParameterError(f"need m >= 1, got m={self.m}")
        if self.m > self.n:
            raise ParameterError(f"need m <= n, got m={self.m}, n={self.n}")
        p = self.p
        if not isinstance(p, Fraction):
            try:
                p = float(p)
            except (TypeError, ValueError):
                raise ParameterError(f"p must be a number, got {self.p!r}") from None
            object.__setattr__(self, "p", p)
        if not 0 <= p <= 1:
            raise ParameterError(f"need 0 <= p <= 1, got p={self.p}")

    @property
    def exact(self) -> bool:
        return isinstance(self.p, Fraction)

    def with_p(self, p: Probability) -> "ModelParams":
        return ModelParams(self.m, self.n, p)


@dataclass(frozen=True)
class ParkingTrace:
    """Outcome of one protocol run.

    ``assigned[i]`` is the spot of car ``i+1``, or ``None`` if it left the
    street. ``coin_used[i]`` records whether the car found its preference taken.
    """

    assigned: Tuple[Optional[int], ...]
    coin_used: Tuple[bool, ...]

    @property
    def success(self) -> bool:
        return all(a is not None for a in self.assigned)


def check_prefs(prefs: Sequence[int], params: ModelParams) -> Tuple[int, ...]:
    prefs = tuple(prefs)
    if len(prefs) != params.m:
        raise ParameterError(f"preference list has length {len(prefs)}, expected m={params.m}")
    for a in prefs:
        if isinstance(a, bool) or not isinstance(a, int) or not 1 <= a <= params.n:
            raise ParameterError(f"preference {a!r} not in 1..{params.n}")
    return prefs


def run_protocol(
    params: ModelParams, prefs: Sequence[int], coins: Sequence[Direction]
) -> ParkingTrace:
    """Run the protocol for explicit preferences and coin outcomes.

    ``coins[i]`` is only read when car ``i+1`` is bumped; entries for cars that
    park at their preference may hold anything, typically ``None``.
    """
    prefs = check_prefs(prefs, params)
    coins = tuple(coins)
    if len(coins) != params.m:
        raise ParameterError(f"coin list has length {len(coins)}, expected m={params.m}")

    n = params.n
    occupied = [False] * (n + 2)  # sentinels at 0 and n+1 stay free but are off-street
    assigned = []
    used = []
    for a, coin in zip(prefs, coins):
        if not occupied[a]:
            occupied[a] = True
            assigned.append(a)
            used.append(False)
            continue
        used.append(True)
        if coin is Direction.FORWARD:
            step, stop = 1, n + 1
        elif coin is Direction.BACKWARD:
            step, stop = -1, 0
        else:
            raise ParameterError(f"car with preference {a} needs a Direction, got {coin!r}")
        s = a + step
        while s != stop and occupied[s]:
            s += step
        if s == stop:
            assigned.append(None)
        else:
            occupied[s] = True
            assigned.append(s)
    return ParkingTrace(tuple(assigned), tuple(used))


def classical_is_parking_function(prefs: Sequence[int], params: ModelParams) -> bool:
    """(m, n)-parking function test by the sorted criterion b_i <= n - m + i."""
    prefs = check_prefs(prefs, params)
    shift = params.n - params.m
    return all(b <= shift + i for i, b in enumerate(sorted(prefs), start=1))


def parks_forward_only(prefs: Sequence[int], params: ModelParams) -> bool:
    """Same question answered by simulating the all-forward protocol."""
    coins = (Direction.FORWARD,) * params.m
    return run_protocol(params, prefs, coins).success
