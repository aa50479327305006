"""Rigid-sphere-with-caps radiation model.

A spherical source is a rigid sphere of radius r0 carrying L vibrating
spherical caps of aperture angle alpha.  This module provides the cap
gains g_n, the modal surface velocity, the radiated pressure at finite
radius, the far-field radial functions b_n, and axis-symmetric beam
pattern evaluation in both the full-field and modal forms.
"""

from dataclasses import dataclass, field

import numpy as np

from . import sphmath

__all__ = [
    "Medium",
    "ArrayGeometry",
    "SHVector",
    "BeamPattern",
    "dodecahedron",
    "cap_gain",
    "velocity_coeffs",
    "radial_near",
    "radial_far",
    "pressure_field",
    "great_circle_angle",
    "beam_pattern_modal",
    "beam_pattern_field",
]


@dataclass(frozen=True)
class Medium:
    """Acoustic medium: air density rho0 (kg/m^3) and speed of sound c (m/s)."""

    rho0: float = 1.21
    c: float = 343.0

    def __post_init__(self):
        if self.rho0 <= 0 or self.c <= 0:
            raise ValueError("medium parameters must be positive")


@dataclass(frozen=True)
class ArrayGeometry:
    """Rigid sphere of radius r0 with L caps at directions (theta_l, phi_l).

    ``cap_dirs`` has shape (L, 2) with polar angle in column 0 and
    azimuth in column 1, both in radians.  ``alpha`` is the aperture
    angle of each cap.
    """

    r0: float
    alpha: float
    cap_dirs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "cap_dirs", np.atleast_2d(np.asarray(self.cap_dirs, dtype=float)))
        if self.r0 <= 0:
            raise ValueError("sphere radius r0 must be positive")
        if not 0 < self.alpha < np.pi / 2:
            raise ValueError("cap aperture alpha must lie in (0, pi/2)")
        if self.cap_dirs.ndim != 2 or self.cap_dirs.shape[1] != 2 or self.cap_dirs.shape[0] < 1:
            raise ValueError("cap_dirs must have shape (L, 2) with L >= 1")
        if np.any(self.cap_dirs[:, 0] < 0) or np.any(self.cap_dirs[:, 0] > np.pi):
            raise ValueError("cap polar angles must lie in [0, pi]")

    @property
    def num_caps(self):
        return self.cap_dirs.shape[0]


@dataclass(frozen=True)
class SHVector:
    """Packed complex spherical-harmonic coefficient vector.

    Entry q holds the coefficient of Y_n^m with q = n^2 + n + m.
    """

    order: int
    coeffs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coeffs", np.asarray(self.coeffs, dtype=complex))
        if self.coeffs.shape != (sphmath.num_coeffs(self.order),):
            raise ValueError(
                f"expected {sphmath.num_coeffs(self.order)} coefficients for "
                f"order {self.order}, got {self.coeffs.shape}"
            )

    def __getitem__(self, nm):
        n, m = nm
        return self.coeffs[sphmath.sh_index(n, m)]


@dataclass(frozen=True)
class BeamPattern:
    """Complex directivity samples on a direction set."""

    directions: np.ndarray  # (M, 2) theta, phi in radians
    values: np.ndarray  # (M,) complex
    look: tuple  # (theta0, phi0)
    k: float = field(default=0.0)

    def __post_init__(self):
        if len(self.values) != len(self.directions):
            raise ValueError("one value per direction required")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("beam pattern values must be finite")


_GOLDEN = (1.0 + np.sqrt(5.0)) / 2.0


def dodecahedron(r0, alpha):
    """Dodecahedron cap arrangement: the 12 face centers of a regular
    dodecahedron, i.e. the vertices of a regular icosahedron.

    Uses the golden-ratio vertex construction (0, +-1, +-g) and cyclic
    permutations; no particular orientation relative to the z-axis is
    implied.
    """
    v = []
    for s1 in (1.0, -1.0):
        for s2 in (1.0, -1.0):
            v += [(0.0, s1, s2 * _GOLDEN), (s1, s2 * _GOLDEN, 0.0), (s1 * _GOLDEN, 0.0, s2)]
    v = np.asarray(v) / np.sqrt(1.0 + _GOLDEN**2)
    dirs = np.column_stack([np.arccos(v[:, 2]), np.mod(np.arctan2(v[:, 1], v[:, 0]), 2 * np.pi)])
    return ArrayGeometry(r0=r0, alpha=alpha, cap_dirs=dirs)


def cap_gain(n, alpha):
    """Cap gain g_n = 4 pi^2 / (2n+1) [P_{n-1}(cos a) - P_{n+1}(cos a)]."""
    if n < 0:
        raise ValueError(f"order must be >= 0, got {n}")
    if not 0 < alpha < np.pi:
        raise ValueError("alpha must lie in (0, pi)")
    ca = np.cos(alpha)
    return (
        4 * np.pi**2 / (2 * n + 1) * (sphmath.legendre(n - 1, ca) - sphmath.legendre(n + 1, ca))
    )


def _cap_gain_diag(order, alpha):
    """g_n repeated 2n+1 times, aligned with packed SH indexing."""
    g = np.array([cap_gain(n, alpha) for n in range(order + 1)])
    return np.repeat(g, [2 * n + 1 for n in range(order + 1)])


def velocity_coeffs(geom, v, order):
    """Modal surface velocity u_nm = g_n sum_l v_l [Y_n^m(theta_l, phi_l)]*.

    ``v`` holds one complex velocity per cap.
    """
    v = np.asarray(v, dtype=complex)
    if v.shape != (geom.num_caps,):
        raise ValueError(f"expected {geom.num_caps} cap velocities, got {v.shape}")
    ymat = sphmath.sh_matrix(order, geom.cap_dirs[:, 0], geom.cap_dirs[:, 1])
    coeffs = _cap_gain_diag(order, geom.alpha) * (ymat.conj().T @ v)
    return SHVector(order=order, coeffs=coeffs)


def radial_near(n, k, r, r0, medium=Medium()):
    """Radial propagator i rho0 c h_n(kr) / h'_n(k r0) for r > r0.

    Multiplying the modal surface velocity u_nm by this term gives the
    pressure coefficient p_nm at radius r.  Vectorized over n.
    """
    if k <= 0:
        raise ValueError("wavenumber k must be positive")
    if not r > r0 > 0:
        raise ValueError("evaluation radius must satisfy r > r0 > 0")
    hn, _ = sphmath.sph_hankel1(n, k * r)
    _, dhn0 = sphmath.sph_hankel1(n, k * r0)
    return 1j * medium.rho0 * medium.c * hn / dhn0


def radial_far(n, k, r0, medium=Medium()):
    """Far-field radial function b_n(k r0).

    Defined as the limit of r e^{-ikr} radial_near(n, k, r, r0) for
    r -> infinity, which fixes the overall sign convention:

        b_n = i rho0 c (-i)^{n+1} / (k h'_n(k r0))

    Beam patterns are invariant to this global convention because the
    design divides by b_n and the pattern evaluation multiplies by it.
    Vectorized over n.
    """
    if k <= 0 or r0 <= 0:
        raise ValueError("k and r0 must be positive")
    n = np.asarray(n)
    _, dhn0 = sphmath.sph_hankel1(n, k * r0)
    return 1j * medium.rho0 * medium.c * (-1j) ** (n + 1) / (k * dhn0)


def pressure_field(u, k, r, dirs, geom, medium=Medium(), max_order=None):
    """Radiated pressure at radius r for modal surface velocity u.

    p(theta, phi) = sum_{n,m} radial_near(n) u_nm Y_n^m(theta, phi),
    summed over all orders carried by ``u`` (or up to ``max_order``,
    which must be >= u.order -- the coefficients above u.order are zero
    so the series terminates exactly).
    """
    if max_order is None:
        max_order = u.order
    if max_order < u.order:
        raise ValueError(f"max_order {max_order} < coefficient order {u.order}")
    dirs = np.atleast_2d(np.asarray(dirs, dtype=float))
    orders = np.arange(u.order + 1)
    rad = np.repeat(radial_near(orders, k, r, geom.r0, medium), 2 * orders + 1)
    ymat = sphmath.sh_matrix(u.order, dirs[:, 0], dirs[:, 1])
    return ymat @ (rad * u.coeffs)


def great_circle_angle(look, dirs):
    """Angle Theta between the look direction and each direction in dirs.

    cos Theta = cos t0 cos t + cos(p0 - p) sin t0 sin t.
    """
    t0, p0 = look
    dirs = np.atleast_2d(np.asarray(dirs, dtype=float))
    t, p = dirs[:, 0], dirs[:, 1]
    ct = np.cos(t0) * np.cos(t) + np.cos(p0 - p) * np.sin(t0) * np.sin(t)
    return np.arccos(np.clip(ct, -1.0, 1.0))


def beam_pattern_modal(d, theta_gc):
    """Axis-symmetric beam pattern B(Theta) = sum_n d_n (2n+1)/(4 pi) P_n(cos Theta).

    ``d`` is the per-order weight vector d_0..d_N; ``theta_gc`` the angle
    from the look direction (scalar or array, radians).
    """
    d = np.asarray(d)
    x = np.cos(np.asarray(theta_gc, dtype=float))
    out = np.zeros_like(x, dtype=complex)
    for n, dn in enumerate(d):
        out = out + dn * (2 * n + 1) / (4 * np.pi) * sphmath.legendre(n, x)
    return out


def beam_pattern_field(w_nm, k, r0, dirs, medium=Medium()):
    """Far-field beam pattern B(theta, phi) = sum_{n,m} b_n w_nm Y_n^m.

    Full spherical-harmonic route; equals :func:`beam_pattern_modal`
    evaluated at the great-circle angle when w_nm comes from
    axis-symmetric steering.
    """
    dirs = np.atleast_2d(np.asarray(dirs, dtype=float))
    orders = np.arange(w_nm.order + 1)
    b = np.repeat(radial_far(orders, k, r0, medium), 2 * orders + 1)
    ymat = sphmath.sh_matrix(w_nm.order, dirs[:, 0], dirs[:, 1])
    return ymat @ (b * w_nm.coeffs)
