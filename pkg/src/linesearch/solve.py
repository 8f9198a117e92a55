"""Solvers for a0, the first turn ratio: the root of p_n(x) = rho.

Three routes, matching how hard the equation is:

* ``solve_exact``   -- n <= 3, closed forms by radicals (square and cube
  roots only; the quartic goes through its resolvent cubic in real
  trigonometric form).
* ``solve_numeric`` -- bisection safeguarded Newton on the bracket
  [alpha_{n+1}, alpha_{n+2}], where p_n is strictly increasing and the
  bracket width is at most 7^3 (n+4)^-3 / 2.
* ``solve_limit``   -- a0 = alpha_{n+2}, valid once n >= 7 eps^{-1/3} - 4;
  the induced competitive-ratio error is at most 7^3 (n+4)^-3.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

from .polynomials import (
    PolyEval,
    alpha,
    eval_p,
    eval_p_and_derivative,
    log2_p_at_alpha_next,
    log2_p_at_alpha_next2,
)

logger = logging.getLogger("linesearch.solve")

MODE_EXACT = "exact"
MODE_NUMERIC = "numeric"
MODE_LIMIT = "limit_approx"

# Solving below ~4 ulps of the bracket scale is meaningless in doubles.
_TOL_FLOOR = 4.0 * math.ulp(4.0)


@dataclass(frozen=True)
class SolveResult:
    """Root report: a0 with how it was obtained and how good it is."""

    a0: float
    mode: str
    residual: float  # |p_n(a0) - rho|; NaN when rho was not supplied
    bracket_width: float


class BracketError(ValueError):
    """rho is outside [p_n(alpha_{n+1}), p_n(alpha_{n+2})) for this n."""


def _residual(n: int, a0: float, rho: float | None) -> float:
    if rho is None:
        return math.nan
    val = eval_p(n, a0).to_float()
    if math.isinf(val):
        return math.inf
    return abs(val - rho)


def _cbrt(v: float) -> float:
    return math.copysign(abs(v) ** (1.0 / 3.0), v)


def real_roots_cubic(b: float, c: float, d: float) -> list[float]:
    """Real roots of the monic cubic z^3 + b z^2 + c z + d, ascending.

    Three-real-root cases use the trigonometric form so no complex
    arithmetic is ever needed.
    """
    # Depress: z = t - b/3  ->  t^3 + p t + q
    p = c - b * b / 3.0
    q = 2.0 * b**3 / 27.0 - b * c / 3.0 + d
    shift = -b / 3.0
    if p == 0.0 and q == 0.0:
        return [shift]
    disc = -4.0 * p**3 - 27.0 * q * q
    if disc >= 0.0 and p < 0.0:
        # Three real roots (possibly repeated).
        m = 2.0 * math.sqrt(-p / 3.0)
        arg = 3.0 * q / (p * m)
        arg = min(1.0, max(-1.0, arg))
        theta = math.acos(arg)
        roots = [m * math.cos((theta - 2.0 * math.pi * k) / 3.0) + shift for k in range(3)]
        return sorted(roots)
    # One real root: Cardano with real cube roots.
    half_q = q / 2.0
    rad = math.sqrt(half_q * half_q + p**3 / 27.0)
    t = _cbrt(-half_q + rad) + _cbrt(-half_q - rad)
    return [t + shift]


def _largest_root_quartic_n3(rho: float) -> float:
    """Largest real root of x^4 - 3x^3 + x^2 - rho = 0 by radicals."""
    # Depress with x = y + 3/4.
    p = -19.0 / 8.0
    q = -15.0 / 8.0
    r = -rho - 99.0 / 256.0
    # Resolvent cubic z^3 + 2p z^2 + (p^2 - 4r) z - q^2; any positive root
    # splits the quartic into two real quadratics.  Use the largest for a
    # well conditioned q/s division.
    zs = [z for z in real_roots_cubic(2.0 * p, p * p - 4.0 * r, -q * q) if z > 0.0]
    if not zs:
        raise ArithmeticError("resolvent cubic has no positive root")
    s = math.sqrt(max(zs))
    u = 0.5 * (p + s * s - q / s)
    v = 0.5 * (p + s * s + q / s)
    best = -math.inf
    for sgn, const in ((1.0, u), (-1.0, v)):
        # Quadratic y^2 + sgn*s*y + const
        disc = s * s - 4.0 * const
        if disc < 0.0:
            continue
        root = math.sqrt(disc)
        for pm in (root, -root):
            y = 0.5 * (-sgn * s + pm)
            best = max(best, y + 0.75)
    if not math.isfinite(best):
        raise ArithmeticError("quartic produced no real root")
    return best


def _polish(n: int, x: float, rho: float, lo: float, hi: float, steps: int = 2) -> float:
    """A couple of guarded Newton corrections to scrub radical round-off."""
    for _ in range(steps):
        pe, dpe = eval_p_and_derivative(n, x)
        num = pe.compare(PolyEval.from_float(rho))
        if num == 0 or dpe.is_zero():
            return x
        delta = (pe.to_float() - rho) / dpe.to_float()
        x_new = x - delta
        if not (lo <= x_new <= hi) or not math.isfinite(x_new):
            return x
        x = x_new
    return x


def solve_exact(n: int, rho: float) -> SolveResult:
    """Closed-form largest real root of p_n(x) = rho for n <= 3.

    Accepts any rho >= 1 (not only the rho range where this n is optimal),
    so that boundary ties between consecutive n can be checked directly.
    """
    if not 0 <= n <= 3:
        raise ValueError(f"solve_exact handles n in 0..3 only, got {n}")
    if rho < 1.0:
        raise ValueError(f"rho must be at least 1, got {rho}")
    if n == 0:
        a0 = rho
    elif n == 1:
        a0 = 0.5 * (1.0 + math.sqrt(1.0 + 4.0 * rho))
    elif n == 2:
        # Largest root of a0^3 - 2 a0^2 = rho.
        c = _cbrt(8.0 + 13.5 * rho + 1.5 * math.sqrt(3.0) * math.sqrt(rho * (32.0 + 27.0 * rho)))
        a0 = (2.0 + 4.0 / c + c) / 3.0
    else:
        a0 = _largest_root_quartic_n3(rho)
    if n >= 2:
        a0 = _polish(n, a0, rho, alpha(n) * (1.0 + 1e-12), 8.0 + rho)
    return SolveResult(a0=a0, mode=MODE_EXACT, residual=_residual(n, a0, rho), bracket_width=0.0)


def _newton_step(x: float, pe: PolyEval, dpe: PolyEval, rho_pe: PolyEval) -> float | None:
    """x - (p(x) - rho)/p'(x) in exponent-tracked arithmetic, or None."""
    if dpe.is_zero():
        return None
    shift = pe.exp2 - rho_pe.exp2
    if abs(shift) >= 512:
        return None
    num = math.ldexp(pe.mantissa, shift) - rho_pe.mantissa
    delta = math.ldexp(num / dpe.mantissa, rho_pe.exp2 - dpe.exp2)
    cand = x - delta
    return cand if math.isfinite(cand) else None


def _bracket_bisect_newton(
    n: int, rho_pe: PolyEval, lo: float, hi: float, tol: float
) -> tuple[float, float]:
    """Root of p_n = rho on [lo, hi] with p_n increasing; returns (a0, width).

    The probe point is the Newton estimate clamped to the middle half of
    the bracket, so every evaluation shrinks the bracket by at least 25%;
    convergence is guaranteed and near the root Newton does the cutting.
    """
    probe = 0.5 * (lo + hi)
    for _ in range(300):
        if hi - lo <= 2.0 * tol:
            break
        pe, dpe = eval_p_and_derivative(n, probe)
        cmp = pe.compare(rho_pe)
        if cmp == 0:
            return probe, hi - lo
        if cmp < 0:
            lo = probe
        else:
            hi = probe
        width = hi - lo
        if width <= 2.0 * tol:
            break
        cand = _newton_step(probe, pe, dpe, rho_pe)
        if cand is None:
            probe = lo + 0.5 * width
        else:
            probe = min(max(cand, lo + 0.25 * width), hi - 0.25 * width)
        if not (lo < probe < hi):
            probe = lo + 0.5 * width
    return 0.5 * (lo + hi), hi - lo


def solve_numeric(
    n: int,
    rho: float | None = None,
    tol_a0: float = 1e-12,
    log2_rho: float | None = None,
) -> SolveResult:
    """Solve p_n(a0) = rho on [alpha_{n+1}, alpha_{n+2}] to |a0 - a0*| <= tol_a0.

    rho may be given directly or as log2_rho for magnitudes beyond float
    range.  rho must satisfy p_n(alpha_{n+1}) <= rho < p_n(alpha_{n+2});
    anything else raises :class:`BracketError`.
    """
    if tol_a0 <= 0.0:
        raise ValueError(f"tol_a0 must be positive, got {tol_a0}")
    if (rho is None) == (log2_rho is None):
        raise ValueError("provide exactly one of rho or log2_rho")
    if log2_rho is None:
        if rho < 1.0:
            raise ValueError(f"rho must be at least 1, got {rho}")
        rho_pe = PolyEval.from_float(rho)
        l2rho = math.log2(rho)
    else:
        rho_pe = PolyEval.from_log2(log2_rho)
        l2rho = log2_rho

    lo, hi = alpha(n + 1), alpha(n + 2)
    l2_lo, l2_hi = log2_p_at_alpha_next(n), log2_p_at_alpha_next2(n)
    fuzz = 1e-12 * max(1.0, abs(l2rho))
    if l2rho < l2_lo - fuzz or l2rho >= l2_hi + fuzz:
        raise BracketError(
            f"rho (log2 {l2rho:.6g}) outside [p_{n}(alpha_{n + 1}), p_{n}(alpha_{n + 2})) "
            f"= [2^{l2_lo:.6g}, 2^{l2_hi:.6g})"
        )
    # Boundary grace: land exactly on an endpoint when rho sits on it.
    if l2rho <= l2_lo + fuzz and eval_p(n, lo).compare(rho_pe) >= 0:
        a0, width = lo, 0.0
    elif l2rho >= l2_hi - fuzz and eval_p(n, hi).compare(rho_pe) <= 0:
        a0, width = hi, 0.0
    else:
        # Refine to the ulp floor regardless of the asked tolerance: the
        # contract is still honoured, it costs only a few Newton cuts, and
        # p_n steepens like (n+4)^3 on the bracket, so x-space slack gets
        # amplified badly in residual terms at large n.
        a0, width = _bracket_bisect_newton(n, rho_pe, lo, hi, _TOL_FLOOR)
    rho_f = rho if rho is not None else rho_pe.to_float()
    res = _residual(n, a0, rho_f) if math.isfinite(rho_f) else math.inf
    logger.debug("solve_numeric n=%d log2rho=%.6f a0=%.17g width=%.3g", n, l2rho, a0, width)
    return SolveResult(a0=a0, mode=MODE_NUMERIC, residual=res, bracket_width=width)


def solve_limit(n: int, rho: float | None = None) -> SolveResult:
    """Approximation a0 = alpha_{n+2}; apt once n >= 7 eps^{-1/3} - 4.

    The resulting strategy's competitive ratio is within 7^3 (n+4)^-3 of
    the optimum (see :func:`cr_error_bound_limit`).
    """
    a0 = alpha(n + 2)
    return SolveResult(
        a0=a0,
        mode=MODE_LIMIT,
        residual=_residual(n, a0, rho),
        bracket_width=alpha(n + 2) - alpha(n + 1),
    )


def cr_error_bound_limit(n: int) -> float:
    """Competitive-ratio error bound 7^3 (n+4)^-3 of the limit approximation."""
    return 343.0 / float(n + 4) ** 3


def limit_mode_threshold(epsilon: float) -> float:
    """Smallest n (as a real) for which the limit approximation meets epsilon."""
    return 7.0 * epsilon ** (-1.0 / 3.0) - 4.0


def solve_beyond_alpha(n: int, rho: float, tol_a0: float = 1e-13) -> SolveResult:
    """Unique root of p_n(x) = rho with x > alpha_n, for any n >= 0.

    Unlike :func:`solve_numeric` this does not require (n, rho) to satisfy
    the optimality bracket; it is the workhorse for comparing competing
    iteration counts on equal footing.
    """
    if rho < 1.0:
        raise ValueError(f"rho must be at least 1, got {rho}")
    if n == 0:
        return SolveResult(a0=rho, mode=MODE_NUMERIC, residual=0.0, bracket_width=0.0)
    rho_pe = PolyEval.from_float(rho)
    lo = alpha(n) + 1e-9
    while eval_p(n, lo).compare(rho_pe) > 0:  # squeeze toward alpha_n if needed
        lo = alpha(n) + (lo - alpha(n)) / 16.0
    hi = max(alpha(n + 2), 4.5)
    while eval_p(n, hi).compare(rho_pe) < 0:
        hi *= 1.5
        if hi > 1e160:
            raise ArithmeticError("failed to bracket root")
    tol_eff = max(min(tol_a0, 1e-13), _TOL_FLOOR * max(1.0, hi / 4.0))
    a0, width = _bracket_bisect_newton(n, rho_pe, lo, hi, tol_eff)
    return SolveResult(a0=a0, mode=MODE_NUMERIC, residual=_residual(n, a0, rho), bracket_width=width)
