"""Desk-scale numerical laboratory for the ternary additive equation
N = [p1 log p1] + [p2 log p2] + [p3 log p3] over primes: certified floors,
exponential sums and their smooth model, the exact grid realization of the
counting integral, and empirical ledgers for the supporting estimates."""

__version__ = "0.1.0"

from .counting import (
    RepReport,
    binary_scan,
    gamma_all_fast,
    gamma_brute,
    main_term,
    psi_k,
    psi_k_all,
)
from .errors import (
    CacheError,
    CapacityError,
    CoverageError,
    EscalationError,
    GridError,
    LoglabError,
    PoleError,
    PrecisionError,
)
from .expsums import (
    ArcPartition,
    DeviationReport,
    SpectrumSample,
    buriev_expansion_residual,
    circle_integrals,
    circle_integrals_all,
    fourier_coeff_ch,
    major_arc_deviation,
    s1_sup,
    s2_sum,
    s_alpha,
    sum_vs_integral_residual,
    theta_alpha,
    vdc_ratio,
)
from .numeric import (
    CertifiedFloor,
    InverseLogPoint,
    dist_to_int,
    floor_nlogn,
    floor_nlogn_bulk,
    solve_ylogy,
    solve_ylogy_bulk,
    unit_exp,
    weight_at,
)
from .primes import PrimeTable, chebyshev_theta, mangoldt, mangoldt_support, sieve
from .sequences import (
    FlooredImage,
    WeightSeries,
    build_floored_image,
    build_weight_series,
    image_covering,
    load_cache,
    save_cache,
)
