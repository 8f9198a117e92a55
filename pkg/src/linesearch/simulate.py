"""Independent verification of strategies: costs and exact worst-case ratios.

Nothing here knows how a strategy was produced.  Costs follow the turn-by-turn
walk; the worst-case ratio is evaluated analytically at breakpoint limits, so
it is exact rather than sampled.  A geometric grid sweep is kept alongside as
a deliberately dumb second opinion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .optimal import Strategy

LEFT = "left"
RIGHT = "right"


class UnreachableTargetError(ValueError):
    """The target distance exceeds the strategy's terminal reach."""


class IncompleteStrategyError(ValueError):
    """The strategy cannot cover all of [lambda, Lambda]."""


@dataclass(frozen=True)
class TargetSpec:
    """A concrete target: distance plus side ('left'/'right') or ray index."""

    distance: float
    side: str | int | None = None

    def __post_init__(self) -> None:
        if not (self.distance > 0.0 and math.isfinite(self.distance)):
            raise ValueError(f"target distance must be positive and finite, got {self.distance}")


@dataclass(frozen=True)
class RatioReport:
    """Per-interval suprema of cost/distance and their overall maximum."""

    sup_ratio: float
    argmax_interval: int
    per_interval: tuple[tuple[tuple[float, float], float], ...]


def _distance_of(target: TargetSpec | float) -> float:
    if isinstance(target, TargetSpec):
        return target.distance
    d = float(target)
    if not (d > 0.0 and math.isfinite(d)):
        raise ValueError(f"target distance must be positive and finite, got {d}")
    return d


def _first_reaching(strategy: Strategy, d: float) -> int:
    """Smallest iteration j with f(j) >= d; the tail makes this total."""
    for j, t in enumerate(strategy.turns):
        if t >= d:
            return j
    return len(strategy.turns)


def cost(strategy: Strategy, target: TargetSpec | float) -> float:
    """Worst-case-orientation cost 2 sum_{i<=j} f(i) + D with j = f^{-1}(D).

    The searcher that first reaches depth D at iteration j only finds a
    target on the unlucky side during iteration j+1, after paying full
    round trips through iteration j.
    """
    d = _distance_of(target)
    if d > strategy.terminal * (1.0 + 1e-12):
        raise UnreachableTargetError(
            f"target at {d} is beyond the terminal distance {strategy.terminal}"
        )
    j = _first_reaching(strategy, d)
    return 2.0 * (sum(strategy.turns[: j + 1]) + (strategy.terminal if j == strategy.n else 0.0)) + d


def walk_cost(strategy: Strategy, target: TargetSpec) -> float:
    """Orientation-resolved travel: iteration 0 goes right, then alternate."""
    if target.side not in (LEFT, RIGHT, 0, 1):
        raise ValueError(f"side must be 'left', 'right', 0 or 1, got {target.side!r}")
    d = target.distance
    if d > strategy.terminal * (1.0 + 1e-12):
        raise UnreachableTargetError(
            f"target at {d} is beyond the terminal distance {strategy.terminal}"
        )
    parity = 0 if target.side in (RIGHT, 0) else 1
    total = 0.0
    i = 0
    while True:
        reach = strategy.f(i)
        if i % 2 == parity and reach >= d:
            return total + d
        total += 2.0 * reach
        i += 1


def _checked_bounds(strategy: Strategy, lam: float | None, Lam: float | None) -> tuple[float, float]:
    lam = strategy.lambda_ if lam is None else lam
    Lam = strategy.terminal if Lam is None else Lam
    if not (0.0 < lam <= Lam):
        raise ValueError(f"need 0 < lambda <= Lambda, got {lam}, {Lam}")
    if strategy.terminal < Lam * (1.0 - 1e-12):
        raise IncompleteStrategyError(
            f"terminal {strategy.terminal} does not cover Lambda = {Lam}"
        )
    strategy.validate()
    return lam, Lam


def worst_case_ratio(
    strategy: Strategy, lam: float | None = None, Lam: float | None = None
) -> RatioReport:
    """Exact supremum of cost/D over D in [lam, Lam].

    On half-open intervals between breakpoints the ratio decreases in D, so
    each supremum sits at the interval's lower end: attained at D = lam for
    the first interval, and as a limit D -> b+ at each later breakpoint b.
    These closed forms make the verifier exact.
    """
    lam, Lam = _checked_bounds(strategy, lam, Lam)
    turns = strategy.turns
    prefix = []  # prefix[i] = 2 * sum of f(0..i)
    acc = 0.0
    for t in turns:
        acc += 2.0 * t
        prefix.append(acc)
    prefix.append(acc + 2.0 * strategy.terminal)  # through the terminal pass

    def ratio_from(d: float, j: int) -> float:
        return prefix[j] / d + 1.0

    entries: list[tuple[tuple[float, float], float]] = []
    # Breakpoints strictly inside [lam, Lam), preceded by the closed point lam.
    inner = sorted({t for t in turns if lam <= t < Lam})
    uppers = inner[1:] + [Lam]
    j = _first_reaching(strategy, lam)
    first_hi = inner[0] if inner and inner[0] > lam else (uppers[0] if inner else Lam)
    entries.append(((lam, first_hi), ratio_from(lam, j)))
    k = 0
    for b, hi in zip(inner, uppers):
        # First index with f(j) > b serves every D just above b.
        while k < len(turns) and turns[k] <= b:
            k += 1
        entries.append(((b, hi), ratio_from(b, k)))
    best = max(range(len(entries)), key=lambda i: entries[i][1])
    return RatioReport(
        sup_ratio=entries[best][1],
        argmax_interval=best,
        per_interval=tuple(entries),
    )


def grid_sweep_ratio(
    strategy: Strategy,
    lam: float | None = None,
    Lam: float | None = None,
    points: int = 100_000,
) -> float:
    """Max of cost/D over a geometric grid of D values; a lower bound on the sup.

    The grid is geometric because ratio extrema cluster at breakpoints whose
    spacing is multiplicative.  Converges to the exact supremum as points grow.
    """
    if points < 2:
        raise ValueError(f"need at least 2 grid points, got {points}")
    lam, Lam = _checked_bounds(strategy, lam, Lam)
    ds = np.geomspace(lam, Lam, points)
    reach = np.asarray(list(strategy.turns) + [strategy.terminal])
    pref = 2.0 * np.cumsum(reach)
    idx = np.searchsorted(reach, ds, side="left")
    idx = np.minimum(idx, len(reach) - 1)
    ratios = pref[idx] / ds + 1.0
    return float(ratios.max())


_BASELINES = ("power_of_two", "f_infinity", "los_sqrt", "single_shot")


def baselines(name: str, lam: float, Lam: float) -> Strategy:
    """Named reference strategies, truncated at the first index reaching Lam.

    power_of_two: 2^i lam.  f_infinity: (2i+4) 2^i lam.  los_sqrt:
    sqrt(1 + i/2) 2^i lam.  single_shot: straight to Lam both ways.
    """
    if not 0.0 < lam <= Lam:
        raise ValueError(f"need 0 < lambda <= Lambda, got {lam}, {Lam}")
    if name == "power_of_two":
        gen = lambda i: math.ldexp(lam, i)
    elif name == "f_infinity":
        gen = lambda i: (2.0 * i + 4.0) * math.ldexp(lam, i)
    elif name == "los_sqrt":
        gen = lambda i: math.sqrt(1.0 + 0.5 * i) * math.ldexp(lam, i)
    elif name == "single_shot":
        return Strategy(turns=(), terminal=Lam, lambda_=lam)
    else:
        raise ValueError(f"unknown baseline {name!r}; expected one of {_BASELINES}")
    turns = []
    i = 0
    while (v := gen(i)) < Lam:
        turns.append(v)
        i += 1
    return Strategy(turns=tuple(turns), terminal=Lam, lambda_=lam)
