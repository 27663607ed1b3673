"""Shared fixtures and the independent oracles the tests check against.

The oracles deliberately avoid the package's own code paths: plain interval
bisection for the y log y = t inverse, mpmath arbitrary precision for floors,
and a literal three-deep loop for triple counts.
"""

import math

import mpmath
import numpy as np
import pytest

from loglab import build_floored_image, build_weight_series, image_covering, sieve


def bisect_ylogy(t: float, iters: int = 200) -> float:
    """Bisection solve of y*log(y) = t on [1, 2 + t]; independent oracle."""
    lo, hi = 1.0, 2.0 + float(t)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if mid * math.log(mid) < t:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def mp_floor_nlogn(n: int, prec: int = 256) -> int:
    """Floor of n*log(n) via mpmath; cross-checked at a higher precision."""
    with mpmath.workprec(prec):
        first = int(mpmath.floor(mpmath.mpf(n) * mpmath.log(n)))
    with mpmath.workprec(prec + 64):
        second = int(mpmath.floor(mpmath.mpf(n) * mpmath.log(n)))
    assert first == second, f"oracle unstable at n={n}"
    return first


def enumerate_triples(image, nmax: int):
    """R(N), Gamma(N) for N <= nmax by a literal loop over ordered triples."""
    counts = np.zeros(nmax + 1, dtype=np.int64)
    gammas = np.zeros(nmax + 1)
    fs = image.f.tolist()
    ws = image.w.tolist()
    for f1, w1 in zip(fs, ws):
        if f1 > nmax:
            break
        for f2, w2 in zip(fs, ws):
            if f1 + f2 > nmax:
                break
            for f3, w3 in zip(fs, ws):
                n = f1 + f2 + f3
                if n > nmax:
                    break
                counts[n] += 1
                gammas[n] += w1 * w2 * w3
    return counts, gammas


@pytest.fixture(scope="session")
def table200():
    return sieve(200)


@pytest.fixture(scope="session")
def image200(table200):
    return build_floored_image(table200)


@pytest.fixture(scope="session")
def image10():
    return build_floored_image(sieve(10))


@pytest.fixture(scope="session")
def image_cov100():
    return image_covering(100)


@pytest.fixture(scope="session")
def weights2000():
    return build_weight_series(2000)
