import math

import numpy as np
import pytest

from loglab import (
    binary_scan,
    build_floored_image,
    build_weight_series,
    gamma_all_fast,
    gamma_brute,
    image_covering,
    main_term,
    psi_k,
    psi_k_all,
    sieve,
)
from loglab.errors import CoverageError

from conftest import bisect_ylogy, enumerate_triples


# ------------------------------------------------------------- gamma_brute

def test_brute_examples(image_cov100):
    r3 = gamma_brute(3, image_cov100)
    assert r3.R == 1  # (2,2,2) only
    assert r3.gamma == pytest.approx(math.log(2) ** 3, rel=1e-12)

    r5 = gamma_brute(5, image_cov100)
    assert r5.R == 3  # permutations of (2,2,3)
    assert r5.gamma == pytest.approx(3 * math.log(2) ** 2 * math.log(3), rel=1e-12)

    r2 = gamma_brute(2, image_cov100)
    assert (r2.R, r2.gamma, r2.ratio) == (0, 0.0, 0.0)


def test_brute_gamma_zero_iff_r_zero(image_cov100):
    for n in range(1, 80):
        rep = gamma_brute(n, image_cov100)
        assert (rep.R == 0) == (rep.gamma == 0.0)
        assert rep.gamma <= rep.R * math.log(image_cov100.p[-1]) ** 3 + 1e-12


def test_brute_coverage_error(image10):
    with pytest.raises(CoverageError):
        gamma_brute(100, image10)
    # restricted counting skips the guard
    assert gamma_brute(100, image10, restricted=True).R >= 0


def test_brute_matches_literal_enumeration(image200):
    counts, gammas = enumerate_triples(image200, 300)
    for n in (3, 5, 17, 100, 299, 300):
        rep = gamma_brute(n, image200, restricted=True)
        assert rep.R == counts[n]
        assert rep.gamma == pytest.approx(gammas[n], rel=1e-9, abs=1e-12)


# ---------------------------------------------------------- gamma_all_fast

def test_fast_matches_brute_exhaustive_500():
    image = build_floored_image(sieve(500))
    reports = gamma_all_fast(image)
    for rep in reports:
        ref = gamma_brute(rep.N, image, restricted=True)
        assert rep.R == ref.R
        assert abs(rep.gamma - ref.gamma) <= 1e-6 * max(1.0, ref.gamma)


def test_fast_mass_identities():
    for xmax in (100, 1000):
        table = sieve(xmax)
        image = build_floored_image(table)
        reports = gamma_all_fast(image)
        assert sum(r.R for r in reports) == len(table.primes) ** 3
        theta3 = math.fsum(table.logweights.tolist()) ** 3
        assert math.fsum(r.gamma for r in reports) == pytest.approx(theta3, rel=1e-9)


def test_fast_permutation_recombination(image200):
    # ordered counts recombine from sorted-triple multiplicities
    fs = image200.f.tolist()
    ws = image200.w.tolist()
    nmax = 3 * image200.maxfreq
    distinct = np.zeros(nmax + 1)
    two_equal = np.zeros(nmax + 1)
    all_equal = np.zeros(nmax + 1)
    for i, (f1, w1) in enumerate(zip(fs, ws)):
        for j in range(i, len(fs)):
            f2, w2 = fs[j], ws[j]
            for k in range(j, len(fs)):
                n = f1 + f2 + fs[k]
                if n > nmax:
                    break
                g = w1 * w2 * ws[k]
                if i == j == k:
                    all_equal[n] += g
                elif i == j or j == k:
                    two_equal[n] += g
                else:
                    distinct[n] += g
    recombined = 6 * distinct + 3 * two_equal + all_equal
    fast = np.zeros(nmax + 1)
    for rep in gamma_all_fast(image200):
        fast[rep.N] = rep.gamma
    assert np.allclose(fast[3:], recombined[3:], rtol=1e-9, atol=1e-9)


def test_fast_rejects_overlong_range(image10):
    with pytest.raises(ValueError):
        gamma_all_fast(image10, nmax=3 * image10.maxfreq + 1)


# -------------------------------------------------------------- main_term

def test_main_term_examples():
    assert main_term(math.e) == pytest.approx(math.e**2 / 2.0, rel=1e-12)
    # frozen from the bisection oracle
    assert main_term(100) == pytest.approx(198.92481941911097, rel=1e-10)
    assert main_term(10**6) == pytest.approx(623190426.7149842, rel=1e-10)


def test_main_term_against_fresh_bisection():
    for n in (10, 1234, 10**6):
        x = bisect_ylogy(float(n))
        assert main_term(n) == pytest.approx(x * x / (1 + math.log(x)), rel=1e-10)


# ------------------------------------------------------------------ psi_k

def test_psi1_is_weight(weights2000):
    for n in (1, 2, 777, 2000):
        assert psi_k(weights2000, 1, n) == weights2000.w[n]


def test_psi2_example(weights2000):
    # only decomposition of 2 is 1 + 1
    assert psi_k(weights2000, 2, 2) == pytest.approx(weights2000.w[1] ** 2, rel=1e-12)


def test_psi_matches_direct_convolution(weights2000):
    w = weights2000.w
    for n in (2, 3, 10, 60):
        direct2 = math.fsum(w[m] * w[n - m] for m in range(1, n))
        assert psi_k(weights2000, 2, n) == pytest.approx(direct2, rel=1e-10, abs=1e-12)
        direct3 = math.fsum(
            w[m1] * w[m2] * w[n - m1 - m2]
            for m1 in range(1, n)
            for m2 in range(1, n - m1)
        )
        assert psi_k(weights2000, 3, n) == pytest.approx(direct3, rel=1e-10, abs=1e-12)


def test_psi_recursion_consistency(weights2000):
    # Psi_{k+1}(N) = sum_{m<N} w(m) Psi_k(N - m)
    w = weights2000.w
    for k in (1, 2, 3):
        upto = 400
        pk = psi_k_all(weights2000, k, upto)
        pk1 = psi_k_all(weights2000, k + 1, upto)
        for n in (50, 200, 400):
            recursed = math.fsum(w[m] * pk[n - m] for m in range(1, n))
            assert pk1[n] == pytest.approx(recursed, rel=1e-10, abs=1e-12)


def test_psi_positive_and_monotone(weights2000):
    for k in (2, 3):
        vals = psi_k_all(weights2000, k, 1500)[k:]
        assert np.all(vals > 0)
        assert np.all(np.diff(vals) > 0)


def test_psi_range_errors(weights2000):
    with pytest.raises(ValueError):
        psi_k(weights2000, 3, 2001)
    with pytest.raises(ValueError):
        psi_k(weights2000, 0, 10)


# ------------------------------------------------------------- binary_scan

def test_binary_examples():
    image = image_covering(999)
    misses = binary_scan(image, 1000)
    assert 2 not in misses  # 1 + 1
    assert 4 not in misses  # 1 + 3
    assert misses[0] == 3  # nothing in {1,3,8,13,...} pairs to 3
    assert misses == sorted(misses)


def test_binary_matches_direct_pairs():
    image = image_covering(199)
    misses = set(binary_scan(image, 200))
    fs = set(image.f.tolist())
    for n in range(2, 201):
        representable = any(n - f in fs for f in fs)
        assert (n not in misses) == representable


def test_binary_coverage_error(image10):
    with pytest.raises(CoverageError):
        binary_scan(image10, 1000)
