"""Maximal reach: the largest Lambda searchable within a given ratio budget.

Inverting CR = 2 a0 + 1 gives a0 = (R - 1)/2 directly, the iteration count
follows from which root bracket contains a0, and the reach is Lambda =
p_n(a0) * lambda together with the witnessing strategy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .optimal import Strategy, expand_sequence
from .polynomials import alpha, eval_p


class UnboundedReachError(ValueError):
    """R >= 9 allows arbitrarily distant targets; there is no finite reach."""


class InfeasibleRatioError(ValueError):
    """R < 3 is unachievable even when the distance is known exactly."""


@dataclass(frozen=True)
class ReachQuery:
    """Ratio budget R and lower distance bound for the reach problem."""

    ratio: float
    lambda_: float = 1.0

    def __post_init__(self) -> None:
        if not (self.lambda_ > 0.0 and math.isfinite(self.lambda_)):
            raise ValueError(f"lambda must be positive and finite, got {self.lambda_}")
        if self.ratio < 3.0:
            raise InfeasibleRatioError(
                f"ratio budget {self.ratio} is below 3, the cost of a known distance"
            )
        if self.ratio >= 9.0:
            raise UnboundedReachError(
                f"ratio budget {self.ratio} >= 9 gives unbounded reach"
            )


@dataclass(frozen=True)
class ReachResult:
    Lambda: float
    n: int
    strategy: Strategy
    a0: float


def _iterations_for(a0: float) -> int:
    """The n with alpha_{n+1} <= a0 < alpha_{n+2}.

    Starts from n = floor(pi / arccos(sqrt(a0)/2)) - 3 and nudges by one
    when floating-point floor lands on the wrong side of an integer
    boundary, validating directly against the root brackets.
    """
    n = int(math.floor(math.pi / math.acos(math.sqrt(a0) / 2.0))) - 3
    n = max(n, 0)
    # A budget landing exactly on a bracket edge belongs to the larger n;
    # the fuzz absorbs the few-ulp noise of the closed-form alphas.
    tol = 8.0 * math.ulp(4.0)
    while n > 0 and a0 < alpha(n + 1) - tol:
        n -= 1
    while a0 >= alpha(n + 2) - tol:
        n += 1
    return n


def maximal_reach(query: ReachQuery) -> ReachResult:
    """Largest Lambda coverable with competitive ratio <= query.ratio."""
    a0 = 0.5 * (query.ratio - 1.0)
    n = _iterations_for(a0)
    rho = eval_p(n, a0).to_float()
    Lambda = rho * query.lambda_
    if not math.isfinite(Lambda):
        raise OverflowError("reach exceeds double range; raise the ratio margin below 9")
    turns = tuple(r * query.lambda_ for r in expand_sequence(a0, n))
    strategy = Strategy(turns=turns, terminal=Lambda, lambda_=query.lambda_)
    return ReachResult(Lambda=Lambda, n=n, strategy=strategy, a0=a0)
