"""Weight synthesis: steering modal weights into spherical-harmonic
coefficients and mapping them to per-loudspeaker driving weights.

The steered coefficients are w_nm = (d_n / b_n) [Y_n^m(look)]* and the
per-unit weights solve G Y w = w_nm in the minimum-norm sense via an
SVD pseudo-inverse.
"""

from dataclasses import dataclass

import numpy as np

from . import sphmath
from .radiation import ArrayGeometry, Medium, SHVector, _cap_gain_diag, radial_far

__all__ = [
    "SteeredWeights",
    "TransformMatrices",
    "UnitWeights",
    "steer",
    "build_transform",
    "unit_weights",
    "forward_weights",
]

_SV_CUTOFF = 1e-10  # relative singular-value truncation for the pseudo-inverse


@dataclass(frozen=True)
class SteeredWeights:
    """Spherical-harmonic beamforming coefficients with steering metadata."""

    coeffs: SHVector
    look: tuple
    k: float
    r0: float

    @property
    def order(self):
        return self.coeffs.order


@dataclass(frozen=True)
class TransformMatrices:
    """Y (conjugated SH at the cap directions, (N+1)^2 x L) and the
    diagonal of G (g_n with multiplicity 2n+1)."""

    ymat: np.ndarray
    g_diag: np.ndarray

    @property
    def order(self):
        return int(np.sqrt(self.ymat.shape[0])) - 1

    @property
    def num_caps(self):
        return self.ymat.shape[1]


@dataclass(frozen=True)
class UnitWeights:
    """Per-loudspeaker complex driving weights w_l, l = 1..L."""

    w: np.ndarray
    geometry: ArrayGeometry | None = None

    def __post_init__(self):
        object.__setattr__(self, "w", np.asarray(self.w, dtype=complex))


def _steer_coeffs(d, look, per_order_divisor):
    """w_nm = (d_n / divisor_n) [Y_n^m(look)]* in packed form."""
    order = d.size - 1
    reps = [2 * n + 1 for n in range(order + 1)]
    ylook = sphmath.sh_matrix(order, look[0], look[1])[0]
    coeffs = np.repeat(d / per_order_divisor, reps) * ylook.conj()
    return SHVector(order=order, coeffs=coeffs)


def steer(d, look, k, r0, medium=Medium()):
    """Steer modal weights d_n to a look direction.

    w_nm = (d_n / b_n(k r0)) [Y_n^m(theta0, phi0)]*.  Raises if any
    b_n vanishes at this k r0.
    """
    dv = np.asarray(getattr(d, "d", d), dtype=complex)
    b = radial_far(np.arange(dv.size), k, r0, medium)
    bad = np.nonzero(np.abs(b) < 1e-300)[0]
    if bad.size:
        raise ArithmeticError(f"radial function b_n vanishes for n={bad.tolist()} at kr0={k * r0}")
    return SteeredWeights(coeffs=_steer_coeffs(dv, look, b), look=tuple(look), k=k, r0=r0)


def build_transform(geom, order):
    """Build the G and Y matrices of the cap-to-coefficient transform.

    Requires (N+1)^2 <= L; reports rank deficiency of Y, which occurs
    for poorly spread cap layouts.
    """
    ncoef = sphmath.num_coeffs(order)
    if ncoef > geom.num_caps:
        raise ValueError(
            f"(N+1)^2 = {ncoef} coefficients exceed L = {geom.num_caps} caps; "
            f"only L spherical harmonics can be controlled"
        )
    ymat = sphmath.sh_matrix(order, geom.cap_dirs[:, 0], geom.cap_dirs[:, 1]).conj().T
    sv = np.linalg.svd(ymat, compute_uv=False)
    if sv[-1] < _SV_CUTOFF * sv[0]:
        raise ArithmeticError(
            f"spherical-harmonic matrix is rank deficient for this cap layout "
            f"(sigma_min/sigma_max = {sv[-1] / sv[0]:.2e})"
        )
    return TransformMatrices(ymat=ymat, g_diag=_cap_gain_diag(order, geom.alpha))


def unit_weights(steered, transform, geometry=None):
    """Per-unit weights w = Y^+ G^{-1} w_nm (minimum-norm solution of
    G Y w = w_nm).

    ``steered`` may be a SteeredWeights or a bare SHVector.
    """
    coeffs = getattr(steered, "coeffs", steered)
    if isinstance(coeffs, SHVector):
        coeffs = coeffs.coeffs
    if coeffs.shape != (transform.ymat.shape[0],):
        raise ValueError("coefficient length does not match transform order")
    ypinv = np.linalg.pinv(transform.ymat, rcond=_SV_CUTOFF)
    return UnitWeights(w=ypinv @ (coeffs / transform.g_diag), geometry=geometry)


def forward_weights(w, transform):
    """Forward transform w_nm = G Y w from per-unit weights."""
    wv = np.asarray(getattr(w, "w", w), dtype=complex)
    if wv.shape != (transform.num_caps,):
        raise ValueError(f"expected {transform.num_caps} unit weights, got {wv.shape}")
    return SHVector(order=transform.order, coeffs=transform.g_diag * (transform.ymat @ wv))
