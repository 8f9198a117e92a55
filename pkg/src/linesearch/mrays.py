"""Searching m concurrent rays: the optimal family, its costs and bounds.

For m >= 2 rays visited cyclically, every member of the family

    f_{a,b}(i) = (a i + b) (m/(m-1))^i lambda

is optimal in the unbounded setting provided (a, b) lies in the feasible
region: a >= 0 and sup{1, m a} <= b <= ((M - m^2) a + M m/(m-1)) / (M - m)
with M = m^m / (m-1)^(m-1).  The worst-case ratio of any feasible member
approaches the optimal 1 + 2M and never leaves [1 + 2(m-1), 1 + 2M].

The multivariate recurrence p_n over the first m-1 turn ratios generalizes
the univariate family; the table of its simultaneous root points for small
n and m is verified here by direct substitution (the general solution of
that root system is open, so no solver is provided).
"""

from __future__ import annotations

import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass

from .simulate import TargetSpec


class InfeasibleParamsError(ValueError):
    """(a, b) violates the family's feasibility region.

    Carries the valid b interval for the given (m, a) as ``interval``.
    """

    def __init__(self, message: str, interval: tuple[float, float]):
        super().__init__(message)
        self.interval = interval


@dataclass(frozen=True)
class MultiPoint:
    """A point x = (x_0, ..., x_{m-2}) in the turn-ratio coordinates."""

    coords: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coords", tuple(float(c) for c in self.coords))

    @property
    def total(self) -> float:
        """The coordinate sum |x| driving the recurrence."""
        return sum(self.coords)

    def is_ordered(self, tol: float = 0.0) -> bool:
        """Whether 0 <= x_0 <= x_1 <= ... holds (the root-point constraint)."""
        prev = 0.0
        for c in self.coords:
            if c < prev - tol:
                return False
            prev = c
        return True


def growth_base(m: int) -> float:
    return m / (m - 1.0)


def optimal_cost_coefficient(m: int) -> float:
    """M = m^m / (m-1)^(m-1); the optimal unbounded ratio is 1 + 2M."""
    return m**m / (m - 1.0) ** (m - 1)


def feasible_b_interval(m: int, a: float) -> tuple[float, float]:
    """The closed interval of b values making f_{a,b} optimal."""
    if m < 2:
        raise ValueError(f"need at least 2 rays, got m={m}")
    if a < 0.0:
        raise ValueError(f"slope a must be non-negative, got {a}")
    big_m = optimal_cost_coefficient(m)
    lo = max(1.0, m * a)
    hi = ((big_m - m * m) * a + growth_base(m) * big_m) / (big_m - m)
    return lo, hi


@dataclass(frozen=True)
class RayFamilyParams:
    """Parameters (m, a, b) of a family member, scaled by lambda_."""

    m: int
    a: float
    b: float
    lambda_: float = 1.0

    def __post_init__(self) -> None:
        if self.m < 2:
            raise ValueError(f"need at least 2 rays, got m={self.m}")
        if self.lambda_ <= 0.0:
            raise ValueError(f"lambda must be positive, got {self.lambda_}")
        lo, hi = feasible_b_interval(self.m, self.a)
        tol = 1e-12 * max(1.0, hi)
        if not (lo - tol <= self.b <= hi + tol):
            raise InfeasibleParamsError(
                f"b={self.b} infeasible for m={self.m}, a={self.a}; "
                f"valid interval is [{lo:.12g}, {hi:.12g}]",
                interval=(lo, hi),
            )

    def f(self, i: int) -> float:
        return (self.a * i + self.b) * growth_base(self.m) ** i * self.lambda_


def family_strategy(params: RayFamilyParams, count: int) -> list[float]:
    """First ``count`` turn distances of f_{a,b}."""
    if count < 1:
        raise ValueError(f"count must be at least 1, got {count}")
    return [params.f(i) for i in range(count)]


def _accessor(f: Callable[[int], float] | Sequence[float]) -> Callable[[int], float]:
    if callable(f):
        return f
    seq = f
    return lambda i: seq[i]


def mray_cost(
    f: Callable[[int], float] | Sequence[float], m: int, target: TargetSpec | float
) -> float:
    """Worst-case cost of finding a target at distance D on one of m rays.

    With f(j) <= D < f(j+1), the unluckiest ray placement forces full round
    trips through iteration j + m - 1 before the target is reached:
    2 sum_{i=0}^{j+m-1} f(i) + D.  For D below f(0) the searcher still
    clears the first m-1 rays.  At D = f(j) exactly this keeps the
    conservative limit-from-above value (the supremum convention) rather
    than crediting the exact touch as a find.
    """
    if m < 2:
        raise ValueError(f"need at least 2 rays, got m={m}")
    fx = _accessor(f)
    d = target.distance if isinstance(target, TargetSpec) else float(target)
    if d <= 0.0:
        raise ValueError(f"target distance must be positive, got {d}")
    if fx(0) > d:
        total = sum(fx(i) for i in range(m - 1))
        return 2.0 * total + d
    j = 0
    while fx(j + 1) <= d:
        j += 1
        if j > 10_000_000:
            raise ArithmeticError("strategy never overtakes the target distance")
    total = sum(fx(i) for i in range(j + m))
    return 2.0 * total + d


def breakpoint_ratios(
    f: Callable[[int], float] | Sequence[float], m: int, lam: float, horizon: int
) -> list[float]:
    """Supremum of cost/D on each breakpoint interval of an m-ray strategy.

    Entry 0 is the D -> lam limit; entry j+1 the D -> f(j)+ limit.  Works
    for any increasing turn sequence, feasible or not, which is what makes
    infeasibility observable as a ratio leaving the optimal band.
    """
    if m < 2:
        raise ValueError(f"need at least 2 rays, got m={m}")
    if horizon < m:
        raise ValueError(f"horizon must be at least m={m}, got {horizon}")
    fx = _accessor(f)
    values = [fx(i) for i in range(horizon + m)]
    acc = 2.0 * sum(values[: m - 1])
    ratios = [1.0 + acc / lam]
    for j in range(horizon):
        acc += 2.0 * values[j + m - 1]
        ratios.append(1.0 + acc / values[j])
    return ratios


def mray_breakpoint_ratios(params: RayFamilyParams, horizon: int) -> list[float]:
    """Breakpoint ratio suprema of a family member, up to f(horizon)."""
    return breakpoint_ratios(params.f, params.m, params.lambda_, horizon)


def mray_worst_ratio(params: RayFamilyParams, horizon: int = 200) -> float:
    """Supremum of the worst-case ratio over D up to f(horizon).

    For feasible parameters this is sandwiched in
    [1 + 2(m-1), 1 + 2 m^m/(m-1)^(m-1)] and approaches the upper value as
    the horizon grows; the remaining gap decays geometrically.
    """
    return max(mray_breakpoint_ratios(params, horizon))


def multi_p(n: int, point: MultiPoint | Sequence[float], m: int) -> float:
    """The multivariate recurrence over the first m-1 turn ratios.

    p_n = x_n for n <= m-2; p_{m-1} = |x|(x_0 - 1);
    p_n = |x|(p_{n-(m-1)} - p_{n-m}) for n >= m, where |x| sums the coords.
    Reduces to the univariate family when m = 2.
    """
    if m < 2:
        raise ValueError(f"need at least 2 rays, got m={m}")
    coords = list(point.coords) if isinstance(point, MultiPoint) else [float(c) for c in point]
    if len(coords) != m - 1:
        raise ValueError(f"point must have m-1 = {m - 1} coordinates, got {len(coords)}")
    if n < 0:
        raise ValueError(f"index must be non-negative, got {n}")
    total = sum(coords)
    vals = list(coords)  # p_0 .. p_{m-2}
    if n <= m - 2:
        return vals[n]
    vals.append(total * (coords[0] - 1.0))  # p_{m-1}
    for k in range(m, n + 1):
        vals.append(total * (vals[k - (m - 1)] - vals[k - m]))
    return vals[n]


# Simultaneous root points of p_n .. p_{n+m-2} with ordered non-negative
# coordinates and maximal coordinate sum, for 2 <= m <= 5 and 0 <= n <= 6.
_S2 = math.sqrt(2.0)
_S3 = math.sqrt(3.0)
_S5 = math.sqrt(5.0)
_S6 = math.sqrt(6.0)
_S13 = math.sqrt(13.0)
_S21 = math.sqrt(21.0)

ALPHA_TABLE: dict[tuple[int, int], tuple[float, ...]] = {
    (2, 0): (0.0,),
    (2, 1): (1.0,),
    (2, 2): (2.0,),
    (2, 3): ((3.0 + _S5) / 2.0,),
    (2, 4): (3.0,),
    (2, 5): (4.0 * math.cos(math.pi / 7.0) ** 2,),
    (2, 6): (2.0 + _S2,),
    (3, 0): (0.0, 0.0),
    (3, 1): (0.0, 0.0),
    (3, 2): (1.0, 1.0),
    (3, 3): (1.5, 1.5),
    (3, 4): ((3.0 + _S3) / 3.0, (3.0 + 2.0 * _S3) / 3.0),
    (3, 5): ((7.0 + _S13) / 6.0, (4.0 + _S13) / 3.0),
    (3, 6): ((15.0 + 3.0 * _S3) / 11.0, (18.0 + 8.0 * _S3) / 11.0),
    (4, 0): (0.0, 0.0, 0.0),
    (4, 1): (0.0, 0.0, 0.0),
    (4, 2): (0.0, 0.0, 0.0),
    (4, 3): (1.0, 1.0, 1.0),
    (4, 4): (4.0 / 3.0, 4.0 / 3.0, 4.0 / 3.0),
    (4, 5): ((9.0 + _S21) / 10.0, (4.0 + _S21) / 5.0, (4.0 + _S21) / 5.0),
    (4, 6): ((6.0 + _S6) / 6.0, (3.0 + _S6) / 3.0, (2.0 + _S6) / 2.0),
    (5, 0): (0.0, 0.0, 0.0, 0.0),
    (5, 1): (0.0, 0.0, 0.0, 0.0),
    (5, 2): (0.0, 0.0, 0.0, 0.0),
    (5, 3): (0.0, 0.0, 0.0, 0.0),
    (5, 4): (1.0, 1.0, 1.0, 1.0),
    (5, 5): (1.25, 1.25, 1.25, 1.25),
    (5, 6): (
        (6.0 + 2.0 * _S2) / 7.0,
        (5.0 + 4.0 * _S2) / 7.0,
        (5.0 + 4.0 * _S2) / 7.0,
        (5.0 + 4.0 * _S2) / 7.0,
    ),
}


def verify_alpha_table(m: int, n: int, tol: float = 1e-10) -> bool:
    """Substitute the tabulated root point into p_n .. p_{n+m-2} and check zeros.

    Also checks the ordering constraint 0 <= x_0 <= ... <= x_{m-2}.
    """
    key = (m, n)
    if key not in ALPHA_TABLE:
        raise ValueError(f"table covers 2 <= m <= 5 and 0 <= n <= 6, got m={m}, n={n}")
    point = MultiPoint(ALPHA_TABLE[key])
    if not point.is_ordered(tol):
        return False
    return all(abs(multi_p(k, point, m)) <= tol for k in range(n, n + m - 1))


def limit_family_params(m: int, lambda_: float = 1.0) -> RayFamilyParams:
    """The family member with a and b at their largest allowed values.

    a = m/(m-1)^2 is where the upper b constraint meets b = m a; for m = 2
    this is the (a, b) = (2, 4) strategy that the bounded optimum tends to
    as Lambda grows.
    """
    a = m / (m - 1.0) ** 2
    return RayFamilyParams(m=m, a=a, b=m * a, lambda_=lambda_)


def f_infinity_fixed_point(m: int, n: int, rel_tol: float = 1e-9) -> bool:
    """Check p_n(f_inf(0), ..., f_inf(m-2)) = f_inf(n) for the limit member."""
    params = limit_family_params(m)
    point = [params.f(i) for i in range(m - 1)]
    lhs = multi_p(n, point, m)
    rhs = params.f(n)
    return abs(lhs - rhs) <= rel_tol * max(abs(lhs), abs(rhs), 1.0)
