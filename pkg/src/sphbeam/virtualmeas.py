"""Virtual (simulated) measurement of a spherical loudspeaker array.

Builds a Gaussian microphone grid around the source, computes the
per-unit transfer matrix from the radiation model, performs the discrete
spherical Fourier transform of the sampled pressure, and compares the
measured beam pattern against the designed one.  Near-field compensated
steering accounts for the finite analysis radius.

The transfer matrix is evaluated to an order well above the analysis
order, so the uncontrollable high-order cap harmonics are present in the
virtual measurement just as they are in a physical one.
"""

from dataclasses import dataclass

import numpy as np

from . import sphmath
from .radiation import Medium, SHVector, _cap_gain_diag, radial_near
from .synthesis import SteeredWeights, _steer_coeffs

__all__ = [
    "SamplingGrid",
    "TransferMatrix",
    "gaussian_grid",
    "transfer_matrix",
    "perturb_transfer",
    "discrete_sft",
    "near_field_steer",
    "virtual_measure",
    "measured_pattern",
    "pattern_error",
]

SIM_ORDER_MARGIN = 15  # default N_sim = N_a + margin; tail-converged for kr0 < ~7


@dataclass(frozen=True)
class SamplingGrid:
    """Directions and quadrature weights on a sphere of radius r.

    Gaussian scheme: exact integration of spherical-harmonic products up
    to the grid order; sum of weights is 4 pi.
    """

    order: int
    radius: float
    directions: np.ndarray  # (M, 2) theta, phi
    weights: np.ndarray  # (M,)

    @property
    def num_points(self):
        return self.directions.shape[0]


@dataclass(frozen=True)
class TransferMatrix:
    """Pressure at each grid microphone per unit velocity of each cap."""

    values: np.ndarray  # (M, L) complex
    k: float
    grid: SamplingGrid
    sim_order: int


def gaussian_grid(order, radius):
    """Gaussian sampling grid of a given analysis order.

    (order+1) Gauss-Legendre elevations times 2(order+1) uniform
    azimuths, with product quadrature weights; 2(order+1)^2 nodes.
    """
    if order < 0 or radius <= 0:
        raise ValueError("order must be >= 0 and radius positive")
    x, wx = np.polynomial.legendre.leggauss(order + 1)
    theta = np.arccos(x)
    nphi = 2 * (order + 1)
    phi = 2 * np.pi * np.arange(nphi) / nphi
    tt, pp = np.meshgrid(theta, phi, indexing="ij")
    dirs = np.column_stack([tt.ravel(), pp.ravel()])
    weights = np.repeat(wx, nphi) * (np.pi / (order + 1))
    return SamplingGrid(order=order, radius=radius, directions=dirs, weights=weights)


def transfer_matrix(geom, grid, k, medium=Medium(), sim_order=None):
    """Transfer matrix H[j, l]: pressure at mic j per unit velocity of cap l.

    Column l equals the pressure field of the single-cap velocity
    pattern (v_l = 1, others 0) summed to ``sim_order`` (default
    grid.order + SIM_ORDER_MARGIN), so content above the analysis order
    is included.
    """
    if grid.radius <= geom.r0:
        raise ValueError("grid radius must exceed the source radius")
    if sim_order is None:
        sim_order = grid.order + SIM_ORDER_MARGIN
    orders = np.arange(sim_order + 1)
    rad = np.repeat(radial_near(orders, k, grid.radius, geom.r0, medium), 2 * orders + 1)
    g = _cap_gain_diag(sim_order, geom.alpha)
    ygrid = sphmath.sh_matrix(sim_order, grid.directions[:, 0], grid.directions[:, 1])
    ycaps = sphmath.sh_matrix(sim_order, geom.cap_dirs[:, 0], geom.cap_dirs[:, 1])
    h = (ygrid * (rad * g)) @ ycaps.conj().T
    return TransferMatrix(values=h, k=k, grid=grid, sim_order=sim_order)


def perturb_transfer(transfer, gain_db=0.0, phase_deg=0.0, noise=0.0, seed=0):
    """Apply per-unit gain/phase errors and additive microphone noise.

    Emulates transducer mismatch and measurement noise; gain errors are
    normally distributed in dB, phase errors in degrees, and ``noise``
    is the standard deviation of complex additive noise per entry.
    """
    rng = np.random.default_rng(seed)
    h = transfer.values.copy()
    num_caps = h.shape[1]
    gains = 10.0 ** (rng.normal(0.0, gain_db, num_caps) / 20.0)
    phases = np.deg2rad(rng.normal(0.0, phase_deg, num_caps))
    h = h * (gains * np.exp(1j * phases))
    if noise > 0.0:
        h = h + noise * (rng.standard_normal(h.shape) + 1j * rng.standard_normal(h.shape))
    return TransferMatrix(values=h, k=transfer.k, grid=transfer.grid, sim_order=transfer.sim_order)


def discrete_sft(samples, grid, order):
    """Discrete spherical Fourier transform on a Gaussian grid.

    f_nm = sum_j a_j f(Omega_j) [Y_n^m(Omega_j)]*, exact for functions
    band-limited to the grid order.
    """
    if order > grid.order:
        raise ValueError(f"analysis order {order} exceeds grid order {grid.order}")
    samples = np.asarray(samples)
    if samples.shape != (grid.num_points,):
        raise ValueError("one sample per grid point required")
    ymat = sphmath.sh_matrix(order, grid.directions[:, 0], grid.directions[:, 1])
    return SHVector(order=order, coeffs=ymat.conj().T @ (grid.weights * samples))


def near_field_steer(d, look, k, r, r0, medium=Medium()):
    """Steering with exact near-field compensation at analysis radius r.

    Replaces b_n in the steering by the exact radius-r radial term
    r e^{-ikr} radial_near(n, k, r, r0), so the pattern on the radius-r
    sphere equals the designed far-field pattern.  Converges to
    :func:`synthesis.steer` for k r >> N.
    """
    dv = np.asarray(getattr(d, "d", d), dtype=complex)
    rad = r * np.exp(-1j * k * r) * radial_near(np.arange(dv.size), k, r, r0, medium)
    if np.any(np.abs(rad) < 1e-300):
        raise ArithmeticError("near-field radial term vanishes")
    return SteeredWeights(coeffs=_steer_coeffs(dv, look, rad), look=tuple(look), k=k, r0=r0)


def virtual_measure(w, transfer):
    """Sampled pressure p_j = sum_l H[j, l] w_l of a driven array."""
    wv = np.asarray(getattr(w, "w", w), dtype=complex)
    if wv.shape != (transfer.values.shape[1],):
        raise ValueError(f"expected {transfer.values.shape[1]} unit weights, got {wv.shape}")
    return transfer.values @ wv


def measured_pattern(samples, grid, order):
    """Order-limited beam pattern extracted from sampled pressure.

    Spherical Fourier analysis to the stated order followed by synthesis
    back onto the grid directions: the measured counterpart of the
    designed pattern, free of the uncontrolled harmonics above ``order``
    (up to quadrature aliasing).  The overall complex scale of the
    result is that of the pressure samples.
    """
    pnm = discrete_sft(samples, grid, order)
    ymat = sphmath.sh_matrix(order, grid.directions[:, 0], grid.directions[:, 1])
    return ymat @ pnm.coeffs


def pattern_error(measured, reference, weights):
    """Scale-aligned relative L2 error between two sampled patterns.

    ||m - rho r|| / ||rho r|| under the quadrature inner product, with
    rho the least-squares complex scale aligning m to r.
    """
    m = np.asarray(measured)
    r = np.asarray(reference)
    a = np.asarray(weights, dtype=float)
    ref_sq = np.sum(a * np.abs(r) ** 2)
    if ref_sq == 0.0:
        raise ValueError("reference pattern has zero norm")
    rho = np.sum(a * np.conj(r) * m) / ref_sq
    return float(np.sqrt(np.sum(a * np.abs(m - rho * r) ** 2) / ref_sq))
