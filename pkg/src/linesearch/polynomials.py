"""Polynomial family driving the bounded line search optimum.

The family is defined by the three-term recurrence

    p_0(x) = x,   p_1(x) = x(x - 1),   p_i(x) = x(p_{i-1}(x) - p_{i-2}(x)),

so p_n has degree n + 1.  Its largest real root is alpha_n = 4 cos^2(pi/(n+2)),
and on the solving bracket [alpha_{n+1}, alpha_{n+2}) every p_n is positive and
strictly increasing.  Values grow like 2^n near x = 4, so evaluation carries an
explicit base-2 exponent (:class:`PolyEval`) instead of a bare float; that keeps
p_n finite for n well past 10**6.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

# Degree index of the family; must be a non-negative int.
PolyIndex = int


@dataclass(frozen=True)
class PolyEval:
    """A real number stored as ``mantissa * 2**exp2``.

    The mantissa is normalized to [1, 2) or (-2, -1], with mantissa == 0
    (and exp2 == 0) representing zero exactly.
    """

    mantissa: float
    exp2: int

    @staticmethod
    def from_float(value: float) -> "PolyEval":
        if value == 0.0:
            return PolyEval(0.0, 0)
        m, e = math.frexp(value)  # value = m * 2**e, 0.5 <= |m| < 1
        return PolyEval(2.0 * m, e - 1)

    @staticmethod
    def from_log2(log2_value: float, negative: bool = False) -> "PolyEval":
        """Build 2**log2_value (optionally negated) without overflow."""
        e = math.floor(log2_value)
        m = 2.0 ** (log2_value - e)
        if m >= 2.0:  # frac rounding can land exactly on 2.0
            m /= 2.0
            e += 1
        return PolyEval(-m if negative else m, e)

    def is_zero(self) -> bool:
        return self.mantissa == 0.0

    def sign(self) -> int:
        if self.mantissa > 0.0:
            return 1
        if self.mantissa < 0.0:
            return -1
        return 0

    def log2_abs(self) -> float:
        """log2 of the absolute value; -inf for zero."""
        if self.mantissa == 0.0:
            return -math.inf
        return self.exp2 + math.log2(abs(self.mantissa))

    def to_float(self) -> float:
        """Collapse to a plain float; overflows to +-inf, underflows to 0."""
        if self.mantissa == 0.0:
            return 0.0
        if self.exp2 >= 1024:  # |value| >= 2^1024 exceeds doubles
            return math.inf if self.mantissa > 0 else -math.inf
        return math.ldexp(self.mantissa, self.exp2)  # underflow is silent


    def compare(self, other: "PolyEval") -> int:
        """Sign of self - other, computed without leaving the representation."""
        d = _sub(self, other)
        return d.sign()

    def __float__(self) -> float:
        return self.to_float()


def _sub(a: PolyEval, b: PolyEval) -> PolyEval:
    """a - b with exponent alignment; exact up to one float subtraction."""
    if a.is_zero():
        return PolyEval(-b.mantissa, b.exp2)
    if b.is_zero():
        return a
    e = max(a.exp2, b.exp2)
    # Shifts are <= 0 so ldexp can only underflow (harmlessly) to zero.
    d = math.ldexp(a.mantissa, a.exp2 - e) - math.ldexp(b.mantissa, b.exp2 - e)
    if d == 0.0:
        return PolyEval(0.0, 0)
    m, ex = math.frexp(d)
    return PolyEval(2.0 * m, ex - 1 + e)


def _check_index(n: int) -> None:
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise ValueError(f"polynomial index must be a non-negative integer, got {n!r}")


def _diff_aligned(m1: float, e1: int, m2: float, e2: int) -> tuple[float, int]:
    """(m1 2^e1) - (m2 2^e2) as an unnormalized (value, exponent) pair.

    Alignment always shifts toward the larger exponent, so ldexp can only
    underflow (harmlessly) to zero, never overflow.
    """
    if m1 == 0.0:
        return -m2, e2
    if m2 == 0.0:
        return m1, e1
    if e1 >= e2:
        return m1 - math.ldexp(m2, e2 - e1), e1
    return math.ldexp(m1, e1 - e2) - m2, e2


def _pack(m: float, e: int) -> PolyEval:
    if m == 0.0:
        return PolyEval(0.0, 0)
    mm, ee = math.frexp(m)
    return PolyEval(2.0 * mm, ee - 1 + e)


def eval_p(n: PolyIndex, x: float) -> PolyEval:
    """Evaluate p_n(x) through the recurrence with exponent tracking.

    Total on finite input.  Inside the solving bracket the recurrence terms
    are all positive and increasing, so no catastrophic cancellation occurs
    where accuracy matters; outside it the result is still correct to the
    usual forward-error of a three-term recurrence.  The loop carries raw
    (mantissa, exponent) pairs in frexp normalization; n = 10^6 runs in
    about a second without any overflow.
    """
    _check_index(n)
    if not math.isfinite(x):
        raise ValueError(f"x must be finite, got {x!r}")
    if n == 0:
        return PolyEval.from_float(x)
    m2, e2 = math.frexp(x)  # p_0
    m1, e1 = math.frexp(x * (x - 1.0))  # p_1
    frexp = math.frexp
    for _ in range(2, n + 1):
        if m1 == 0.0 and m2 == 0.0:
            break
        d, eref = _diff_aligned(m1, e1, m2, e2)
        m2, e2 = m1, e1
        v = x * d
        if v == 0.0:
            m1, e1 = 0.0, 0
        else:
            m1, e1 = frexp(v)
            e1 += eref
    return _pack(m1, e1)


def eval_p_and_derivative(n: PolyIndex, x: float) -> tuple[PolyEval, PolyEval]:
    """p_n(x) and p_n'(x) together, both exponent tracked.

    The derivative follows the differentiated recurrence
    p_i' = (p_{i-1} - p_{i-2}) + x (p_{i-1}' - p_{i-2}').
    """
    _check_index(n)
    if not math.isfinite(x):
        raise ValueError(f"x must be finite, got {x!r}")
    if n == 0:
        return PolyEval.from_float(x), PolyEval.from_float(1.0)
    pm2, pe2 = math.frexp(x)
    dm2, de2 = math.frexp(1.0)
    pm1, pe1 = math.frexp(x * (x - 1.0))
    dm1, de1 = math.frexp(2.0 * x - 1.0)
    frexp = math.frexp
    ldexp = math.ldexp
    for _ in range(2, n + 1):
        pd, pref = _diff_aligned(pm1, pe1, pm2, pe2)
        dd, dref = _diff_aligned(dm1, de1, dm2, de2)
        pm2, pe2, dm2, de2 = pm1, pe1, dm1, de1
        v = x * pd
        if v == 0.0:
            pm1, pe1 = 0.0, 0
        else:
            pm1, pe1 = frexp(v)
            pe1 += pref
        # d_i = pdiff + x * ddiff, aligned to the larger exponent.
        xdd = x * dd
        if pd == 0.0 and xdd == 0.0:
            dm1, de1 = 0.0, 0
        else:
            if pd == 0.0:
                s, sref = xdd, dref
            elif xdd == 0.0:
                s, sref = pd, pref
            elif pref >= dref:
                s, sref = pd + ldexp(xdd, dref - pref), pref
            else:
                s, sref = ldexp(pd, pref - dref) + xdd, dref
            if s == 0.0:
                dm1, de1 = 0.0, 0
            else:
                dm1, de1 = frexp(s)
                de1 += sref
    return _pack(pm1, pe1), _pack(dm1, de1)


def alpha(n: PolyIndex) -> float:
    """Largest real root of p_n: 4 cos^2(pi/(n+2)).

    Strictly increasing in n and bounded above by 4.
    """
    _check_index(n)
    if n == 0:  # cos(pi/2) would leave 1e-32 noise
        return 0.0
    c = math.cos(math.pi / (n + 2))
    return 4.0 * c * c


def log2_p_at_alpha_next(n: PolyIndex) -> float:
    """log2 of p_n(alpha_{n+1}) via the closed form alpha_{n+1}^{(n+1)/2}."""
    _check_index(n)
    return 0.5 * (n + 1) * math.log2(alpha(n + 1))


def log2_p_at_alpha_next2(n: PolyIndex) -> float:
    """log2 of p_n(alpha_{n+2}) via the closed form alpha_{n+2}^{(n+2)/2}."""
    _check_index(n)
    return 0.5 * (n + 2) * math.log2(alpha(n + 2))


def p_at_alpha(n: PolyIndex) -> PolyEval:
    """p_n evaluated at alpha_{n+1}, in closed form rather than recurrence."""
    return PolyEval.from_log2(log2_p_at_alpha_next(n))


def p_at_alpha2(n: PolyIndex) -> PolyEval:
    """p_n evaluated at alpha_{n+2}, in closed form rather than recurrence."""
    return PolyEval.from_log2(log2_p_at_alpha_next2(n))


def roots_of_p(n: PolyIndex) -> list[float]:
    """All real roots of p_n with multiplicity, sorted ascending.

    These are the analytic closed forms: zero repeated floor((n+1)/2) times,
    plus 4 cos^2(k pi/(n+2)) for 1 <= k <= floor((n+2)/2).  (For even n the
    k = (n+2)/2 factor contributes one more zero.)
    """
    _check_index(n)
    out = [0.0] * ((n + 1) // 2)
    for k in range((n + 2) // 2, 0, -1):
        if 2 * k == n + 2:  # cos(pi/2): an exact zero, not 1e-32 noise
            out.append(0.0)
            continue
        c = math.cos(k * math.pi / (n + 2))
        out.append(4.0 * c * c)
    return out
