"""Directivity and robustness measures.

Directivity factor Q and white-noise gain (WNG) in the modal closed
forms, plus integral/coefficient-domain variants that serve as
independent cross-checks.
"""

from dataclasses import dataclass

import numpy as np

from . import sphmath
from .radiation import Medium, radial_far

__all__ = [
    "MetricReport",
    "directivity_factor",
    "directivity_factor_integral",
    "directivity_index",
    "wng",
    "wng_coefficients",
    "report",
]


@dataclass(frozen=True)
class MetricReport:
    """Directivity factor/index and WNG for one design at one frequency."""

    q: float
    di_db: float
    wng: float
    wng_db: float
    k: float | None = None
    r0: float | None = None
    unit_weight_norm: float | None = None  # sum |w_l|^2, supplementary


def _dvec(d):
    d = np.asarray(getattr(d, "d", d), dtype=complex)
    if not np.any(d):
        raise ValueError("modal weights must be nonzero")
    return d


def directivity_factor(d):
    """Q = |sum_n d_n (2n+1)|^2 / sum_n |d_n|^2 (2n+1)."""
    d = _dvec(d)
    a = 2 * np.arange(d.size) + 1
    return float(np.abs(np.sum(d * a)) ** 2 / np.sum(np.abs(d) ** 2 * a))


def directivity_factor_integral(look_value, values, weights):
    """Directivity factor from pattern samples on a quadrature grid.

    Q = |B(look)|^2 / ((1/4pi) sum_j a_j |B(Omega_j)|^2).  The grid must
    integrate |B|^2 exactly, i.e. its order must be >= 2N.
    """
    values = np.asarray(values)
    weights = np.asarray(weights, dtype=float)
    mean_sq = np.sum(weights * np.abs(values) ** 2) / (4 * np.pi)
    if mean_sq == 0.0:
        raise ValueError("pattern is identically zero on the grid")
    return float(np.abs(look_value) ** 2 / mean_sq)


def directivity_index(q):
    """DI = 10 log10 Q, in dB."""
    return float(10.0 * np.log10(q))


def wng(d, k, r0, medium=Medium()):
    """White-noise gain of modal weights at wavenumber k.

    WNG = |sum_n d_n (2n+1)|^2 / sum_n (|d_n|^2 / |b_n(k r0)|^2)(2n+1).
    """
    d = _dvec(d)
    n = np.arange(d.size)
    a = 2 * n + 1
    b2 = np.abs(radial_far(n, k, r0, medium)) ** 2
    denom = np.sum(np.abs(d) ** 2 / b2 * a)
    if denom == 0.0:
        raise ValueError("degenerate weights: zero WNG denominator")
    return float(np.abs(np.sum(d * a)) ** 2 / denom)


def wng_coefficients(w_nm, look, k, r0, medium=Medium()):
    """WNG from steered coefficients w_nm (coefficient-domain form).

    WNG = 4 pi |sum_{n,m} b_n w_nm Y_n^m(look)|^2 / sum_{n,m} |w_nm|^2.
    The 4 pi keeps the addition-theorem reduction consistent with the
    modal form of :func:`wng`, with which this agrees for weights built
    by axis-symmetric steering.
    """
    orders = np.arange(w_nm.order + 1)
    b = np.repeat(radial_far(orders, k, r0, medium), 2 * orders + 1)
    ylook = sphmath.sh_matrix(w_nm.order, look[0], look[1])[0]
    num = 4 * np.pi * np.abs(np.sum(b * w_nm.coeffs * ylook)) ** 2
    denom = np.sum(np.abs(w_nm.coeffs) ** 2)
    if denom == 0.0:
        raise ValueError("zero steered weights")
    return float(num / denom)


def report(d, k, r0, medium=Medium(), unit_weight_norm=None):
    """Assemble a :class:`MetricReport` for modal weights at wavenumber k."""
    q = directivity_factor(d)
    w = wng(d, k, r0, medium)
    return MetricReport(
        q=q,
        di_db=directivity_index(q),
        wng=w,
        wng_db=directivity_index(w),
        k=k,
        r0=r0,
        unit_weight_norm=unit_weight_norm,
    )
