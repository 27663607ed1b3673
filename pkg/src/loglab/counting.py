"""Representation counting for the ternary equation and its smooth model.

gamma_brute enumerates ordered prime triples directly (two loops plus a
lookup on the third coordinate); gamma_all_fast gets every N at once from a
cubed FFT of the floored-image coefficients and is gated by a brute-force
spot check.  psi_k is the k-fold self-convolution of the reciprocal-log
weights, and main_term is the X^2/(1 + log X) scale that Gamma and Psi_3
are measured against.

Counting is over ORDERED triples throughout, so sum_N R(N) = pi(xmax)^3 and
sum_N Gamma(N) = theta(xmax)^3 hold exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.fft import irfft, rfft

from .errors import CoverageError, PrecisionError
from .numeric import solve_ylogy, solve_ylogy_bulk
from .sequences import FlooredImage, WeightSeries

# Fast/brute disagreement gate for the FFT backend.
CONV_CHECK_COUNT = 32
CONV_RTOL = 1e-6
# Rounded counts must sit this close to integers or the transform is rejected.
COUNT_ROUND_TOL = 0.01


@dataclass(frozen=True)
class RepReport:
    """Counts for one N: R ordered triples, their log-weighted sum, and the
    smooth main term X^2/(1 + log X) at X = y(N)."""

    N: int
    R: int
    gamma: float
    mainterm: float
    ratio: float


def main_term(N: float) -> float:
    """X^2/(1 + log X) where X solves X log X = N."""
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    x = solve_ylogy(float(N)).y
    return x * x / (1.0 + math.log(x))


def main_term_bulk(ns: np.ndarray) -> np.ndarray:
    x = solve_ylogy_bulk(np.asarray(ns, dtype=np.float64))
    return x * x / (1.0 + np.log(x))


def _dense_coeffs(image: FlooredImage) -> tuple[np.ndarray, np.ndarray]:
    """a_w[f] = sum of log p over primes with that floor; a_r likewise 0/1."""
    m = image.maxfreq
    a_w = np.zeros(m + 1)
    a_r = np.zeros(m + 1)
    np.add.at(a_w, image.f, image.w)
    np.add.at(a_r, image.f, 1.0)
    return a_w, a_r


def gamma_brute(N: int, image: FlooredImage, *, restricted: bool = False) -> RepReport:
    """Exact R(N) and Gamma(N) by direct enumeration.

    Two nested loops over image entries with an array lookup resolving the
    third coordinate.  With restricted=False (the default) the image must
    contain every prime that could participate, i.e. maxfreq >= N - 2;
    restricted=True counts within the image as given (the convention used
    when checking the transform identities on a truncated prime range).
    """
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    if not restricted and image.covered < N - 2:
        raise CoverageError(
            f"image covered through f = {image.covered} < N - 2 = {N - 2}: "
            "an admissible prime may be missing"
        )
    a_w, a_r = _dense_coeffs(image)
    m = image.maxfreq
    gamma = 0.0
    count = 0.0
    for f1, w1 in zip(image.f.tolist(), image.w.tolist()):
        if f1 > N - 2:
            break
        rem = N - f1 - image.f
        ok = (rem >= 1) & (rem <= m)
        if not ok.any():
            continue
        idx = rem[ok]
        gamma += w1 * float(np.sum(image.w[ok] * a_w[idx]))
        count += float(np.sum(a_r[idx]))
    r = int(round(count))
    mt = main_term(N)
    return RepReport(N=N, R=r, gamma=gamma, mainterm=mt, ratio=gamma / mt)


def gamma_all_fast(
    image: FlooredImage,
    nmax: int | None = None,
    *,
    check: bool = True,
    seed: int = 42,
) -> list[RepReport]:
    """R(N) and Gamma(N) for every N = 1..nmax by cubed FFT.

    The transform length is the next power of two past 3*maxfreq, so the
    cyclic convolution equals the linear one everywhere.  When check=True a
    brute-force comparison on up to CONV_CHECK_COUNT seeded-random N gates
    the result (PrecisionError on disagreement), as does integrality of the
    rounded counts.
    """
    m = image.maxfreq
    if nmax is None:
        nmax = 3 * m
    if not 1 <= nmax <= 3 * m:
        raise ValueError(f"nmax must be in [1, 3*maxfreq = {3 * m}], got {nmax}")
    a_w, a_r = _dense_coeffs(image)
    length = 1 << (3 * m + 1).bit_length()
    gam = irfft(rfft(a_w, length) ** 3, length)[: nmax + 1]
    cnt = irfft(rfft(a_r, length) ** 3, length)[: nmax + 1]
    rounded = np.rint(cnt)
    if float(np.max(np.abs(cnt - rounded))) > COUNT_ROUND_TOL:
        raise PrecisionError("triple counts failed to round to integers")
    gam[gam < 0] = 0.0  # FFT noise on empty coefficients

    if check:
        rng = np.random.default_rng(seed)
        candidates = np.arange(3, nmax + 1)
        picks = rng.choice(candidates, size=min(CONV_CHECK_COUNT, len(candidates)), replace=False)
        for n in picks:
            ref = gamma_brute(int(n), image, restricted=True)
            if abs(gam[n] - ref.gamma) > CONV_RTOL * max(1.0, abs(ref.gamma)):
                raise PrecisionError(
                    f"convolution residual at N={n}: fast={gam[n]!r} brute={ref.gamma!r}"
                )
            if int(rounded[n]) != ref.R:
                raise PrecisionError(f"count mismatch at N={n}")

    mains = main_term_bulk(np.arange(1, nmax + 1))
    return [
        RepReport(
            N=n,
            R=int(rounded[n]),
            gamma=float(gam[n]),
            mainterm=float(mains[n - 1]),
            ratio=float(gam[n] / mains[n - 1]),
        )
        for n in range(1, nmax + 1)
    ]


def psi_k_all(weights: WeightSeries, k: int, upto: int) -> np.ndarray:
    """Psi_k(n) for n = 0..upto: the k-fold convolution of the weights.

    Entries with m > upto - (k - 1) cannot contribute, so the series is
    truncated there and the transform padded past k times that support.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if not 1 <= upto <= weights.nmax * k:
        raise ValueError(f"upto must be in [1, k*nmax], got {upto}")
    trunc = min(weights.nmax, upto - (k - 1))
    if trunc < 1:
        return np.zeros(upto + 1)
    a = weights.w[: trunc + 1]
    if k == 1:
        out = np.zeros(upto + 1)
        out[: trunc + 1] = a
        return out
    length = 1 << (k * trunc + 1).bit_length()
    conv = irfft(rfft(a, length) ** k, length)[: upto + 1]
    conv[conv < 0] = 0.0
    return conv


def psi_k(weights: WeightSeries, k: int, N: int) -> float:
    """Psi_k(N) = sum over m_1 + ... + m_k = N (m_i >= 1) of prod w(m_i)."""
    if not 1 <= N <= weights.nmax:
        raise ValueError(f"N must be in [1, nmax = {weights.nmax}], got {N}")
    if k == 1:
        return float(weights.w[N])
    return float(psi_k_all(weights, k, N)[N])


def binary_scan(image: FlooredImage, nmax: int) -> list[int]:
    """All N in [2, nmax] with no representation f(p) + f(q) = N, ascending."""
    if nmax < 2:
        raise ValueError(f"nmax must be >= 2, got {nmax}")
    if image.covered < nmax - 1:
        raise CoverageError(
            f"image covered through f = {image.covered} < nmax - 1 = {nmax - 1}: "
            "an admissible prime may be missing"
        )
    _, a_r = _dense_coeffs(image)
    length = 1 << (2 * image.maxfreq + 1).bit_length()
    pairs = irfft(rfft(a_r, length) ** 2, length)[: nmax + 1]
    rounded = np.rint(pairs)
    if float(np.max(np.abs(pairs - rounded))) > COUNT_ROUND_TOL:
        raise PrecisionError("pair counts failed to round to integers")
    return [n for n in range(2, nmax + 1) if rounded[n] < 1]
