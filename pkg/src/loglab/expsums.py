"""Exponential sums, the arc decomposition, and the lemma-level measurements.

S(alpha) runs over the floored prime image with log-p weights; Theta(alpha)
is its smooth model over the reciprocal-log weights.  The counting integral
is realized exactly on a uniform Fourier grid: S^3 is a trigonometric
polynomial of degree 3*maxfreq, so averaging over any grid with more points
than the degree reproduces the integral; splitting the grid at tau gives the
major/minor-arc parts with no quadrature ambiguity.

The remaining functions measure, never prove: the truncated sawtooth
expansion residual, the sup of the von-Mangoldt-weighted sum on the minor
range, the capped reciprocal-distance sum, the van der Corput ratio, and the
sum-versus-integral residual for slowly varying phases.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import gmpy2
import numpy as np
from scipy.fft import fft, ifft

from .errors import GridError, PoleError
from .numeric import GUARD_ULPS
from .primes import mangoldt_support
from .sequences import FlooredImage, WeightSeries

# tau < 1/2 requires X^(23/25) > 2; everything below this scale is degenerate.
MIN_ARC_SCALE = 2.0 ** (25.0 / 23.0)


@dataclass(frozen=True)
class ArcPartition:
    """Arc geometry at scale X: tau = X^(-23/25), H = X^(1/25), and the
    uniform grid size used for the exact circle identity."""

    X: float
    tau: float
    H: float
    gridsize: int

    @classmethod
    def from_scale(cls, X: float, gridsize: int) -> "ArcPartition":
        if X < MIN_ARC_SCALE:
            raise ValueError(f"X must be >= {MIN_ARC_SCALE:.4f} so that tau < 1/2, got {X}")
        if gridsize < 1:
            raise ValueError(f"gridsize must be >= 1, got {gridsize}")
        return cls(X=float(X), tau=X ** (-23.0 / 25.0), H=X ** (1.0 / 25.0), gridsize=gridsize)


@dataclass(frozen=True)
class SpectrumSample:
    alpha: float
    svalue: complex
    thetavalue: complex


@dataclass(frozen=True)
class DeviationReport:
    """Max of |S - Theta| over a symmetric grid in [-tau, tau]."""

    X: float
    tau: float
    samples: int
    max_dev: float
    normalized: float
    alpha_at_max: float


def _phase_sum(weights: np.ndarray, freqs: np.ndarray, alpha: float) -> complex:
    """sum w * e(alpha * freq) with reduced phases and pairwise summation."""
    ph = 2.0 * np.pi * np.mod(alpha * freqs, 1.0)
    return complex(np.sum(weights * np.cos(ph)), np.sum(weights * np.sin(ph)))


def s_alpha(alpha: float, image: FlooredImage) -> complex:
    """S(alpha) = sum over primes of log p * e(alpha * floor(p log p))."""
    return _phase_sum(image.w, image.f.astype(np.float64), alpha)


def theta_alpha(alpha: float, weights: WeightSeries) -> complex:
    """Theta(alpha) = sum over m = 1..nmax of w(m) * e(m alpha)."""
    m = np.arange(0, weights.nmax + 1, dtype=np.float64)
    return _phase_sum(weights.w, m, alpha)


def major_arc_deviation(
    X: float, image: FlooredImage, weights: WeightSeries, samples: int
) -> DeviationReport:
    """Max of |S(alpha) - Theta(alpha)| over a ``samples``-point grid on
    [-tau, tau], reported raw and normalized by X.

    The grid is symmetric and the deviation is even in alpha, so only the
    nonnegative half is evaluated; an odd sample count places a point at 0.
    """
    if samples < 3:
        raise ValueError(f"samples must be >= 3, got {samples}")
    tau = X ** (-23.0 / 25.0)
    alphas = np.linspace(-tau, tau, samples)
    freqs = image.f.astype(np.float64)
    m = np.arange(0, weights.nmax + 1, dtype=np.float64)
    best, arg = -1.0, 0.0
    for alpha in alphas[alphas >= 0.0]:
        dev = abs(_phase_sum(image.w, freqs, alpha) - _phase_sum(weights.w, m, alpha))
        if dev > best:
            best, arg = dev, float(alpha)
    return DeviationReport(
        X=float(X), tau=tau, samples=samples, max_dev=best, normalized=best / X, alpha_at_max=arg
    )


def _grid_svalues(image: FlooredImage, gridsize: int) -> np.ndarray:
    """S at alpha_j = j/Q for all j, via an inverse DFT of the coefficients."""
    a_w = np.zeros(image.maxfreq + 1)
    np.add.at(a_w, image.f, image.w)
    return ifft(a_w, n=gridsize) * gridsize


def circle_integrals(
    N: int, image: FlooredImage, partition: ArcPartition
) -> tuple[complex, complex]:
    """(Gamma_1, Gamma_2): the major/minor split of the counting integral.

    Both parts are grid averages of S^3(alpha_j) e(-N alpha_j) over the
    uniform grid alpha_j = j/Q; the split assigns a point to the major arc
    iff min(j, Q-j)/Q <= tau (ties major, deterministically).  With
    Q >= 3*maxfreq + 1 the sum of the parts equals Gamma(N) exactly up to
    rounding, because S^3 is a trigonometric polynomial of degree 3*maxfreq.
    """
    g1, g2 = circle_integrals_all(image, partition, N)
    return complex(g1[N]), complex(g2[N])


def circle_integrals_all(
    image: FlooredImage, partition: ArcPartition, nmax: int
) -> tuple[np.ndarray, np.ndarray]:
    """Gamma_1(N), Gamma_2(N) arrays for N = 0..nmax on the partition grid."""
    q = partition.gridsize
    if q < 3 * image.maxfreq + 1:
        raise GridError(f"gridsize {q} < 3*maxfreq + 1 = {3 * image.maxfreq + 1}")
    if not 0 <= nmax < q:
        raise ValueError(f"nmax must be in [0, gridsize), got {nmax}")
    cubed = _grid_svalues(image, q) ** 3
    j = np.arange(q)
    major = np.minimum(j, q - j) <= partition.tau * q
    # (1/Q) sum_j V_j e(-2 pi i j N / Q) is a forward DFT coefficient
    g1 = fft(np.where(major, cubed, 0.0)) / q
    g2 = fft(np.where(major, 0.0, cubed)) / q
    return g1[: nmax + 1], g2[: nmax + 1]


def fourier_coeff_ch(x: float, h: int) -> complex:
    """c_h(x) = (1 - e(-x)) / (2 pi i (h + x)); pole at h + x = 0."""
    if h + x == 0:
        raise PoleError(f"c_h pole: h + x = 0 at h={h}, x={x}")
    num = 1.0 - complex(math.cos(2.0 * math.pi * x), -math.sin(2.0 * math.pi * x))
    return num / (2.0j * math.pi * (h + x))


def buriev_expansion_residual(x: float, y: float, H: int) -> float:
    """|e(-x {y}) - sum over |h| <= H of c_h(x) e(h y)|.

    At x = 0 every coefficient vanishes except the h = 0 term, whose
    removable singularity is filled by continuity with 1, so the residual is
    exactly 0 there.  Integer x with |x| <= H hits a pole and raises.
    """
    if H < 3:
        raise ValueError(f"H must be >= 3, got {H}")
    if x == 0.0:
        return 0.0
    if x == int(x) and abs(int(x)) <= H:
        raise PoleError(f"expansion pole: h = {-int(x)} within |h| <= {H}")
    frac = y - math.floor(y)
    lhs = complex(math.cos(-2.0 * math.pi * x * frac), math.sin(-2.0 * math.pi * x * frac))
    hs = np.arange(-H, H + 1, dtype=np.float64)
    coeffs = (1.0 - np.exp(-2.0j * np.pi * x)) / (2.0j * np.pi * (hs + x))
    series = complex(np.sum(coeffs * np.exp(2.0j * np.pi * hs * y)))
    return abs(lhs - series)


def _dist_to_int_certified(ns: np.ndarray) -> np.ndarray:
    """||n log n|| per entry, escalating guard-band hits to 256-bit arithmetic."""
    nf = ns.astype(np.float64)
    with np.errstate(divide="ignore", invalid="ignore"):
        v = np.where(ns == 1, 0.0, nf * np.log(nf))
    d = np.abs(v - np.rint(v))
    ulps = np.spacing(np.abs(v))
    for i in np.flatnonzero((d < GUARD_ULPS * ulps) & (ns > 1)):
        with gmpy2.context(precision=256):
            exact = gmpy2.mpfr(int(ns[i])) * gmpy2.log(int(ns[i]))
            frac = exact - gmpy2.floor(exact)
            d[i] = float(min(frac, 1 - frac))
    return d


def s2_sum(X: int, H: float) -> float:
    """sum over n <= X of min(1, 1/(H ||n log n||)), with certified distances.

    The n = 1 term has ||0|| = 0 and is capped at 1 by the min.
    """
    if X < 2:
        raise ValueError(f"X must be >= 2, got {X}")
    if H < 1:
        raise ValueError(f"H must be >= 1, got {H}")
    ns = np.arange(1, X + 1, dtype=np.int64)
    d = _dist_to_int_certified(ns)
    terms = np.ones(len(ns))
    big = H * d > 1.0
    np.divide(1.0, H * d, out=terms, where=big)
    return float(np.sum(terms))


def s1_sup(X: int, H: float, gridpoints: int = 1024, *, tau: float | None = None) -> float:
    """max over a grid on [tau, H+1] of |sum_{n<=X} Lambda(n) e(alpha n log n)|.

    The phase argument is alpha * n log n itself, not its floor.  The grid
    includes both endpoints; tau defaults to X^(-23/25).
    """
    if X < 2:
        raise ValueError(f"X must be >= 2, got {X}")
    if gridpoints < 1000:
        raise ValueError(f"gridpoints must be >= 1000, got {gridpoints}")
    if tau is None:
        tau = float(X) ** (-23.0 / 25.0)
    ns, ws = mangoldt_support(X)
    v = ns.astype(np.float64) * np.log(ns.astype(np.float64))
    best = 0.0
    for alpha in np.linspace(tau, H + 1.0, gridpoints):
        best = max(best, abs(_phase_sum(ws, v, float(alpha))))
    return best


def vdc_ratio(a: int, b: int, h: int) -> float:
    """|sum_{a<n<=b} e(h n log n)| / ((b-a) lambda^(1/2) + lambda^(-1/2)).

    The phase h*n*log n has second derivative h/n, so lambda = |h|/a on
    [a, b]; b <= 2a is required to keep |f''| within a constant of lambda.
    """
    if not 2 <= a < b:
        raise ValueError(f"need 2 <= a < b, got a={a}, b={b}")
    if b > 2 * a:
        raise ValueError(f"need b <= 2a for lambda = |h|/a to hold, got a={a}, b={b}")
    if h == 0:
        raise ValueError("h must be nonzero")
    ns = np.arange(math.floor(a) + 1, math.floor(b) + 1, dtype=np.float64)
    num = abs(_phase_sum(np.ones(len(ns)), h * ns * np.log(ns), 1.0))
    lam = abs(h) / a
    return num / ((b - a) * math.sqrt(lam) + 1.0 / math.sqrt(lam))


def sum_vs_integral_residual(alpha: float, ymax: float) -> float:
    """|sum_{1<m<=y} e(m alpha) - integral from 1 to y of e(alpha t) dt|.

    Requires |alpha| < 1 (the phase derivative must stay below 1).  At
    alpha = 0 the residual is exactly the fractional part of y.
    """
    if abs(alpha) >= 1:
        raise ValueError(f"|alpha| must be < 1, got {alpha}")
    if ymax < 2:
        raise ValueError(f"ymax must be >= 2, got {ymax}")
    ms = np.arange(2, math.floor(ymax) + 1, dtype=np.float64)
    total = _phase_sum(np.ones(len(ms)), ms, alpha)
    if alpha == 0.0:
        integral = complex(ymax - 1.0)
    else:
        two_pi_i = 2.0j * math.pi
        integral = (np.exp(two_pi_i * alpha * ymax) - np.exp(two_pi_i * alpha)) / (
            two_pi_i * alpha
        )
    return abs(total - integral)
