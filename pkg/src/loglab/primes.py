"""Prime generation and the classical log-weights attached to primes.

A segmented, odd-only sieve of Eratosthenes feeds an immutable PrimeTable;
Chebyshev's theta is a compensated (pairwise) partial sum over its weights,
and the von Mangoldt function is provided both pointwise and as the support
array needed by exponential-sum scans.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import CapacityError

DEFAULT_BUDGET_BYTES = 1 << 30
_SEGMENT_ODDS = 1 << 20  # odds per segment; keeps the working set cache-sized


@dataclass(frozen=True)
class PrimeTable:
    """All primes <= xmax, ascending, with aligned natural-log weights."""

    xmax: int
    primes: np.ndarray
    logweights: np.ndarray

    def __post_init__(self):
        self.primes.setflags(write=False)
        self.logweights.setflags(write=False)


def _estimated_bytes(xmax: int) -> int:
    # bitmap segments + output arrays (int64 primes, float64 weights)
    pi_est = int(xmax / max(math.log(xmax) - 1.1, 1.0)) + 16
    return _SEGMENT_ODDS + 16 * pi_est


def sieve(xmax: int, *, max_bytes: int = DEFAULT_BUDGET_BYTES) -> PrimeTable:
    """Sieve of Eratosthenes up to xmax inclusive; complete and exact."""
    if xmax < 2:
        raise ValueError(f"xmax must be >= 2, got {xmax}")
    if _estimated_bytes(xmax) > max_bytes:
        raise CapacityError(
            f"sieve({xmax}) needs ~{_estimated_bytes(xmax)} bytes, budget {max_bytes}"
        )

    # base primes up to sqrt(xmax) by a dense sieve
    root = math.isqrt(xmax)
    base = np.ones(root + 1, dtype=bool)
    base[:2] = False
    for p in range(2, math.isqrt(root) + 1):
        if base[p]:
            base[p * p :: p] = False
    base_primes = np.flatnonzero(base)
    odd_base = base_primes[base_primes > 2]

    chunks = [np.array([2], dtype=np.int64)] if xmax >= 2 else []
    lo = 3
    while lo <= xmax:
        hi = min(lo + 2 * _SEGMENT_ODDS - 1, xmax)  # odds in [lo, hi]
        count = (hi - lo) // 2 + 1
        mask = np.ones(count, dtype=bool)
        for p in odd_base:
            p = int(p)
            start = max(p * p, ((lo + p - 1) // p) * p)
            if start > hi:
                continue
            if start % 2 == 0:
                start += p
            if start > hi:
                continue
            mask[(start - lo) // 2 :: p] = False
        chunks.append((lo + 2 * np.flatnonzero(mask)).astype(np.int64))
        lo = hi + 2
    primes = np.concatenate(chunks)
    return PrimeTable(xmax=xmax, primes=primes, logweights=np.log(primes.astype(np.float64)))


def chebyshev_theta(table: PrimeTable, x: float) -> float:
    """Chebyshev's theta(x) = sum of log p over primes p <= x."""
    if x > table.xmax:
        raise ValueError(f"x = {x} exceeds table.xmax = {table.xmax}")
    k = int(np.searchsorted(table.primes, math.floor(x), side="right"))
    return float(np.sum(table.logweights[:k]))  # pairwise: deterministic, compensated


def mangoldt(n: int) -> float:
    """Von Mangoldt's function: log p if n = p^k, else 0."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if n == 1:
        return 0.0
    for p in range(2, math.isqrt(n) + 1):
        if n % p == 0:
            while n % p == 0:
                n //= p
            return math.log(p) if n == 1 else 0.0
    return math.log(n)  # n itself prime


def mangoldt_support(xmax: int) -> tuple[np.ndarray, np.ndarray]:
    """Prime powers p^k <= xmax with weights log p, ascending.

    This is the support of the von Mangoldt function; scans over
    sum_{n<=X} Lambda(n) e(...) only need these entries.
    """
    table = sieve(xmax)
    ns: list[int] = []
    ws: list[float] = []
    for p, lp in zip(table.primes.tolist(), table.logweights.tolist()):
        q = p
        while q <= xmax:
            ns.append(q)
            ws.append(lp)
            q *= p
    order = np.argsort(np.array(ns, dtype=np.int64), kind="stable")
    return (
        np.array(ns, dtype=np.int64)[order],
        np.array(ws, dtype=np.float64)[order],
    )
