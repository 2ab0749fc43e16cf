"""Salem number certification and power-polynomial statistics."""

from .intpoly import IntPolynomial, cyclotomic, cyclotomic_free, is_reciprocal, is_squarefree
from .powerpoly import BigIntMatrix, char_poly, companion, mat_pow, power_min_poly
from .rootcount import count_real_roots, count_roots_above_one, trace_transform, unimodular_root_count
from .salem import (
    CertificateReport,
    Verdict,
    certify_direct,
    certify_power_criterion,
    detect_cyclotomic_by_periodicity,
    theorem2_checks,
    vieira_condition,
)
from .probability import empirical_frequency, prob_d4, prob_d6_integral, prob_grid

__version__ = "0.1.0"
