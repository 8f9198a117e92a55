"""End-to-end computation of the optimal bounded line search strategy.

Given distance bounds 0 < lambda <= D <= Lambda, the optimal strategy turns
at distances a_0 lambda, ..., a_{n-1} lambda and then at Lambda, where the
number of growing turns n is picked in O(1) from rho = Lambda/lambda, a_0
solves p_n(x) = rho on [alpha_{n+1}, alpha_{n+2}), the later ratios follow
the recurrence a_i = a_0 (a_{i-1} - a_{i-2}), and the achieved competitive
ratio is exactly 2 a_0 + 1.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

from . import solve as _solve
from .polynomials import log2_p_at_alpha_next, log2_p_at_alpha_next2
from .solve import (
    MODE_LIMIT,
    SolveResult,
    cr_error_bound_limit,
    limit_mode_threshold,
)

logger = logging.getLogger("linesearch.optimal")


@dataclass(frozen=True)
class SearchProblem:
    """A bounded search instance: target distance lies in [lambda_, Lambda]."""

    lambda_: float
    Lambda: float
    epsilon: float = 1e-9

    def __post_init__(self) -> None:
        if not (self.lambda_ > 0.0 and math.isfinite(self.lambda_)):
            raise ValueError(f"lambda must be positive and finite, got {self.lambda_}")
        if not (self.Lambda >= self.lambda_ and math.isfinite(self.Lambda)):
            raise ValueError(
                f"Lambda must satisfy lambda <= Lambda < inf, got {self.Lambda}"
            )
        if not (self.epsilon > 0.0):
            raise ValueError(f"epsilon must be positive, got {self.epsilon}")

    @property
    def rho(self) -> float:
        return self.Lambda / self.lambda_

    @property
    def log2_rho(self) -> float:
        return math.log2(self.Lambda) - math.log2(self.lambda_)

    @classmethod
    def from_log2_rho(
        cls, log2_rho: float, lambda_: float = 1.0, epsilon: float = 1e-9
    ) -> "SearchProblem":
        """Build an instance from log2(rho); rejects Lambda beyond float range."""
        if log2_rho < 0.0:
            raise ValueError(f"log2_rho must be non-negative, got {log2_rho}")
        if not (lambda_ > 0.0 and math.isfinite(lambda_)):
            raise ValueError(f"lambda must be positive and finite, got {lambda_}")
        if log2_rho + math.log2(lambda_) >= 1023.9:
            raise OverflowError(
                "Lambda exceeds double range; turn distances cannot be materialized"
            )
        return cls(lambda_=lambda_, Lambda=lambda_ * 2.0**log2_rho, epsilon=epsilon)


@dataclass(frozen=True)
class Strategy:
    """Turn distances of a periodic monotone strategy.

    ``turns`` holds f(0..n-1) in absolute distance units; every later
    iteration goes to ``terminal`` (= Lambda), so a consumer wanting the
    two closing passes at Lambda applies the tail rule f(i) = terminal
    for i >= n.
    """

    turns: tuple[float, ...]
    terminal: float
    lambda_: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "turns", tuple(self.turns))

    def f(self, i: int) -> float:
        """Turn distance of iteration i, including the constant tail."""
        if i < 0:
            raise IndexError("iteration index must be non-negative")
        return self.turns[i] if i < len(self.turns) else self.terminal

    @property
    def n(self) -> int:
        return len(self.turns)

    def scaled(self, c: float) -> "Strategy":
        """The same strategy with all distances multiplied by c > 0."""
        if c <= 0:
            raise ValueError("scale factor must be positive")
        return Strategy(
            turns=tuple(t * c for t in self.turns),
            terminal=self.terminal * c,
            lambda_=self.lambda_ * c,
        )

    def validate(self, rel_tol: float = 1e-9) -> None:
        """Check monotonicity, the lower bound on turns, and the terminal."""
        slack = rel_tol * self.terminal
        prev = self.lambda_ - rel_tol * self.lambda_
        for i, t in enumerate(self.turns):
            if t < prev - slack:
                raise ValueError(f"turn {i} breaks monotonicity: {t} < {prev}")
            prev = t
        if self.turns and self.turns[-1] > self.terminal + slack:
            raise ValueError("last turn exceeds the terminal distance")


@dataclass(frozen=True)
class StrategyReport:
    """Everything optimize() knows about the strategy it produced."""

    strategy: Strategy
    n: int
    a0: float
    cr: float
    mode: str
    cr_error_bound: float
    residual: float = math.nan
    bracket_width: float = 0.0
    solve_result: SolveResult | None = field(default=None, repr=False)


def optimal_n(rho: float | None = None, log2_rho: float | None = None) -> int:
    """The unique iteration count n whose bracket contains rho.

    n satisfies p_n(alpha_{n+1}) <= rho < p_n(alpha_{n+2}) and always lies
    in {floor(log2 rho) - 1, floor(log2 rho)}.  Computed from the candidate
    n = floor(log2 rho) by testing n+1 > log_gamma(rho) with
    gamma = 2 cos(pi/(n+3)); near-ties are settled by checking the bracket
    inequalities for both candidates directly.
    """
    if (rho is None) == (log2_rho is None):
        raise ValueError("provide exactly one of rho or log2_rho")
    if log2_rho is None:
        if not (rho >= 1.0):
            raise ValueError(f"rho must be at least 1, got {rho}")
        log2_rho = math.log2(rho)
    elif log2_rho < 0.0:
        raise ValueError(f"log2_rho must be non-negative, got {log2_rho}")

    n = math.floor(log2_rho)
    if n == 0:
        return 0
    # gamma^(n+1) = p_n(alpha_{n+1}): the lower edge of candidate n's bracket.
    lower_edge = log2_p_at_alpha_next(n)
    fuzz = 1e-12 * max(1.0, abs(log2_rho))
    if abs(lower_edge - log2_rho) <= fuzz:
        # On the boundary the half-open bracket assigns rho to the larger n.
        return n if _bracket_holds(n, log2_rho, fuzz) else n - 1
    return n if lower_edge < log2_rho else n - 1


def _bracket_holds(n: int, log2_rho: float, fuzz: float) -> bool:
    lo = log2_p_at_alpha_next(n)
    hi = log2_p_at_alpha_next2(n)
    return lo - fuzz <= log2_rho < hi - fuzz


def eq7_certificate(n: int, log2_rho: float) -> tuple[float, float]:
    """log2 of the bracket edges (p_n(alpha_{n+1}), p_n(alpha_{n+2})).

    Useful to certify 2^n <= p_n(alpha_{n+1}) <= rho < p_n(alpha_{n+2}) <= 2^{n+2}
    without evaluating anything that could overflow.
    """
    return log2_p_at_alpha_next(n), log2_p_at_alpha_next2(n)


def expand_sequence(a0: float, n: int, scale: float = 1.0) -> list[float]:
    """The turn ratios a_0 .. a_{n-1} grown by a_i = a_0 (a_{i-1} - a_{i-2}).

    Equal to p_i(a0) for each i; empty for n = 0.  With a scale the same
    recurrence runs directly in absolute distance units (seeded by scale
    and a0*scale), which stays finite even when the dimensionless ratios
    alone would overflow.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return []
    seq = [a0 * scale]
    prev2, prev1 = scale, a0 * scale  # a_{-1} = 1 seeds a_1 = a_0 (a_0 - 1)
    for _ in range(1, n):
        nxt = a0 * (prev1 - prev2)
        seq.append(nxt)
        prev2, prev1 = prev1, nxt
    return seq


def f_infinity(i: int, lambda_: float = 1.0) -> float:
    """Turn distance (2i+4) 2^i lambda of the canonical unbounded strategy."""
    if i < 0:
        raise ValueError("iteration index must be non-negative")
    return (2.0 * i + 4.0) * math.ldexp(lambda_, i)


def optimize(problem: SearchProblem) -> StrategyReport:
    """Compute the unique optimal strategy and its exact competitive ratio.

    Dispatch: closed forms for n <= 3; the alpha_{n+2} limit approximation
    once n >= 7 eps^{-1/3} - 4 (ratio error below eps by construction);
    bracketed numeric solving with tolerance eps/2 in a0 otherwise, which
    bounds the ratio error by eps since CR = 2 a0 + 1.
    """
    rho = problem.rho  # may overflow to inf when Lambda/lambda_ exceeds doubles
    eps = problem.epsilon
    n = optimal_n(log2_rho=problem.log2_rho)
    if n <= 3:
        sol = _solve.solve_exact(n, rho)
        bound = 0.0
    elif n >= limit_mode_threshold(eps):
        sol = _solve.solve_limit(n, rho if math.isfinite(rho) else None)
        bound = cr_error_bound_limit(n)
    elif math.isfinite(rho):
        sol = _solve.solve_numeric(n, rho, tol_a0=eps / 2.0)
        bound = eps
    else:
        sol = _solve.solve_numeric(n, log2_rho=problem.log2_rho, tol_a0=eps / 2.0)
        bound = eps
    turns = expand_sequence(sol.a0, n, scale=problem.lambda_)
    if sol.mode == MODE_LIMIT:
        # The limit point can overshoot rho in its top turns; capping at
        # Lambda keeps the strategy monotone and inside [lambda, Lambda]
        # while only reducing travel, so the reported ratio bound holds.
        turns = [min(t, problem.Lambda) for t in turns]
    turns = tuple(turns)
    strategy = Strategy(turns=turns, terminal=problem.Lambda, lambda_=problem.lambda_)
    cr = 2.0 * sol.a0 + 1.0
    logger.info(
        "optimize rho=%.6g -> n=%d mode=%s a0=%.17g cr=%.17g", rho, n, sol.mode, sol.a0, cr
    )
    return StrategyReport(
        strategy=strategy,
        n=n,
        a0=sol.a0,
        cr=cr,
        mode=sol.mode,
        cr_error_bound=bound,
        residual=sol.residual,
        bracket_width=sol.bracket_width,
        solve_result=sol,
    )
