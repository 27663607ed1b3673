"""Certified elementary numerics.

Everything downstream rests on four small primitives: the exact floor of
n*log(n) (certified by interval arithmetic when the value sits too close to
an integer), distance-to-nearest-integer, the unit exponential e(y), and the
inverse y(t) of y*log(y) = t together with its reciprocal-log weight
1/(1 + log y(t)).  Natural logarithm throughout.

All functions here are pure; the returned dataclasses are frozen, so values
can be shared freely between threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import gmpy2
import numpy as np

from .errors import EscalationError

# Escalate the floor computation whenever the double-precision value lies
# within GUARD_ULPS ulps of an integer.  libm's log is good to ~1 ulp, so
# anything outside the band is certain; anything inside goes to directed
# rounding at the precisions below (double-double class first, then 256-bit).
GUARD_ULPS = 1_000_000
ESCALATION_BITS = (107, 256)

# Residual tolerance |y log y - t| <= SOLVER_RTOL * max(1, t) for the inverse.
SOLVER_RTOL = 1e-12
SOLVER_MAX_ITER = 200


@dataclass(frozen=True)
class CertifiedFloor:
    """Floor of n*log(n) with a certified margin to the unit-interval ends.

    ``slack`` is a proven lower bound on the distance from n*log(n) to the
    nearest integer; it is 0 only for n = 1, where the value is exactly 0.
    """

    n: int
    value: int
    slack: float


@dataclass(frozen=True)
class InverseLogPoint:
    """Solution y >= 1 of y*log(y) = t with its achieved residual."""

    t: float
    y: float
    residual: float


def _interval_floor(n: int, bits: int) -> tuple[int, float] | None:
    """Certified floor of n*log(n) via directed rounding at ``bits`` precision.

    Returns (floor, slack) when the enclosing interval lies strictly inside
    one unit interval and strictly away from both ends, else None.
    """
    with gmpy2.context(precision=bits, round=gmpy2.RoundDown):
        lo = gmpy2.mpfr(n) * gmpy2.log(n)
    with gmpy2.context(precision=bits, round=gmpy2.RoundUp):
        hi = gmpy2.mpfr(n) * gmpy2.log(n)
    with gmpy2.context(precision=bits):
        # the integer part carries far fewer than ``bits`` bits, so floor
        # inside this context is exact (mpz()/int() would round-to-nearest)
        f_lo = gmpy2.floor(lo)
        f_hi = gmpy2.floor(hi)
    if f_lo != f_hi:
        return None
    with gmpy2.context(precision=bits, round=gmpy2.RoundDown):
        slack = min(lo - f_lo, (f_lo + 1) - hi)
    slack_f = float(slack)
    if slack_f <= 0.0:
        return None
    return int(f_lo), slack_f


def floor_nlogn(n: int) -> CertifiedFloor:
    """Exact floor of n*log(n) for integer n >= 1.

    Fast path is hardware floating point; values inside the guard band are
    re-evaluated with interval arithmetic until the enclosure excludes every
    integer.  Raises EscalationError if the highest precision still straddles
    (never guesses).
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if n == 1:
        return CertifiedFloor(1, 0, 0.0)
    v = n * math.log(n)
    d = abs(v - round(v))
    if d >= GUARD_ULPS * math.ulp(v):
        # true value within a few ulp of v, far from any integer
        return CertifiedFloor(n, math.floor(v), d - 4.0 * math.ulp(v))
    for bits in ESCALATION_BITS:
        res = _interval_floor(n, bits)
        if res is not None:
            return CertifiedFloor(n, res[0], res[1])
    raise EscalationError(
        f"floor({n}*log({n})) not certified at {ESCALATION_BITS[-1]} bits"
    )


def floor_nlogn_bulk(ns: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized floor_nlogn over an int array; returns (values, slacks).

    Same guard-band logic as the scalar path; only the (rare) near-integer
    hits fall back to interval arithmetic.
    """
    ns = np.asarray(ns, dtype=np.int64)
    if ns.size and int(ns.min()) < 1:
        raise ValueError("all n must be >= 1")
    nf = ns.astype(np.float64)
    with np.errstate(divide="ignore", invalid="ignore"):
        v = nf * np.log(nf)
    v = np.where(ns == 1, 0.0, v)
    d = np.abs(v - np.rint(v))
    ulps = np.spacing(np.abs(v))
    values = np.floor(v).astype(np.int64)
    slacks = d - 4.0 * ulps
    escalate = d < GUARD_ULPS * ulps
    for i in np.flatnonzero(escalate | (ns == 1)):
        cf = floor_nlogn(int(ns[i]))
        values[i] = cf.value
        slacks[i] = cf.slack
    return values, slacks


def dist_to_int(t: float) -> float:
    """Distance from t to the nearest integer, in [0, 1/2]."""
    if not math.isfinite(t):
        raise ValueError(f"t must be finite, got {t}")
    frac = t % 1.0
    return min(frac, 1.0 - frac)


def unit_exp(y: float) -> complex:
    """The unit exponential e(y) = exp(2*pi*i*y)."""
    if not math.isfinite(y):
        raise ValueError(f"y must be finite, got {y}")
    r = math.remainder(y, 1.0)  # exact reduction; keeps phase accurate for large y
    return complex(math.cos(2.0 * math.pi * r), math.sin(2.0 * math.pi * r))


def solve_ylogy(t: float) -> InverseLogPoint:
    """Invert y*log(y) = t on the branch y >= 1.

    Safeguarded Newton iteration (the map y -> (y+t)/(1+log y)) with a
    maintained bracket and bisection fallback; y*log(y) is strictly
    increasing and convex on [1, inf), so convergence is unconditional.
    """
    if t < 0:
        raise ValueError(f"t must be >= 0, got {t}")
    if t == 0.0:
        return InverseLogPoint(0.0, 1.0, 0.0)
    lo, hi = 1.0, 1.0 + t  # (1+t)*log(1+t) >= t for t >= 0
    tol = SOLVER_RTOL * max(1.0, t)
    y = min(max(t / max(1.0, math.log(max(t, 2.0))), lo), hi)
    g = y * math.log(y) - t
    for _ in range(SOLVER_MAX_ITER):
        if abs(g) <= tol:
            break
        if g < 0:
            lo = y
        else:
            hi = y
        y_next = (y + t) / (1.0 + math.log(y))
        if not lo < y_next < hi:
            y_next = 0.5 * (lo + hi)
        y = y_next
        g = y * math.log(y) - t
    return InverseLogPoint(t, y, abs(g))


def solve_ylogy_bulk(ts: np.ndarray) -> np.ndarray:
    """Vectorized inverse of y*log(y) = t; returns the y array.

    Straggler elements that miss the residual tolerance after the vector
    sweep are re-solved with the scalar safeguarded iteration.
    """
    ts = np.asarray(ts, dtype=np.float64)
    if ts.size and float(ts.min()) < 0:
        raise ValueError("all t must be >= 0")
    y = np.maximum(1.0, ts / np.maximum(1.0, np.log(np.maximum(ts, 2.0))))
    tol = SOLVER_RTOL * np.maximum(1.0, ts)
    for _ in range(60):
        resid = np.abs(y * np.log(y) - ts)
        if bool(np.all(resid <= tol)):
            break
        y = (y + ts) / (1.0 + np.log(y))
    y[ts == 0.0] = 1.0
    resid = np.abs(y * np.log(y) - ts)
    for i in np.flatnonzero(resid > tol):
        y[i] = solve_ylogy(float(ts[i])).y
    return y


def weight_at(t: float) -> float:
    """The reciprocal-log weight 1/(1 + log y(t)), in (0, 1]."""
    return 1.0 / (1.0 + math.log(solve_ylogy(t).y))
