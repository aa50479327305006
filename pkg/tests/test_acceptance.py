"""Acceptance suite: one test per criterion, each printing a PASS/FAIL
line (run with ``pytest -s tests/test_acceptance.py`` to see them)."""

import time

import numpy as np

from sphbeam import sphmath
from sphbeam.design import (
    dolph_chebyshev_weights,
    max_directivity_weights,
    max_wng_weights,
)
from sphbeam.metrics import (
    directivity_factor,
    directivity_factor_integral,
    directivity_index,
    wng,
    wng_coefficients,
)
from sphbeam.radiation import (
    Medium,
    beam_pattern_field,
    beam_pattern_modal,
    dodecahedron,
    great_circle_angle,
)
from sphbeam.synthesis import build_transform, forward_weights, steer, unit_weights
from sphbeam.virtualmeas import (
    gaussian_grid,
    measured_pattern,
    near_field_steer,
    pattern_error,
    transfer_matrix,
    virtual_measure,
)

MEDIUM = Medium()
R0 = 0.15
RADIUS = 0.57
GEOM = dodecahedron(r0=R0, alpha=0.3)


def _check(num, description, condition):
    print(f"{'PASS' if condition else 'FAIL'} criterion {num}: {description}")
    assert condition, f"criterion {num}: {description}"


def test_criterion_1_maximum_directivity():
    start = time.perf_counter()
    ok = all(
        abs(directivity_factor(max_directivity_weights(order)) - (order + 1) ** 2) < 1e-9
        for order in range(6)
    )
    di = directivity_index(directivity_factor(max_directivity_weights(2)))
    ok &= abs(di - 9.5424) < 1e-4
    elapsed = time.perf_counter() - start
    _check(1, f"Q = (N+1)^2 for N=0..5 and DI(N=2) = 9.5424 dB ({elapsed:.2f}s)",
           ok and elapsed < 1.0)


def test_criterion_2_wronskian():
    start = time.perf_counter()
    worst = 0.0
    for x in (0.5, 1.0, 2.0, 5.0, 10.0, 20.0):
        for n in range(16):
            jn, djn = sphmath.sph_bessel_j(n, x)
            hn, dhn = sphmath.sph_hankel1(n, x)
            worst = max(worst, abs(x**2 * (jn * dhn - djn * hn) - 1j))
    elapsed = time.perf_counter() - start
    _check(2, f"Wronskian residual {worst:.1e} < 1e-10 for n<=15 ({elapsed:.2f}s)",
           worst < 1e-10 and elapsed < 1.0)


def test_criterion_3_modal_integral_equivalence():
    start = time.perf_counter()
    rng = np.random.default_rng(1234)
    k = 1.1 / R0
    worst_q = worst_w = 0.0
    for _ in range(100):
        order = rng.integers(0, 5)
        d = rng.standard_normal(order + 1) + 1j * rng.standard_normal(order + 1)
        look = (rng.uniform(0, np.pi), rng.uniform(0, 2 * np.pi))
        grid = gaussian_grid(2 * order + 2, 1.0)
        vals = beam_pattern_modal(d, great_circle_angle(look, grid.directions))
        q_int = directivity_factor_integral(beam_pattern_modal(d, 0.0), vals, grid.weights)
        worst_q = max(worst_q, abs(q_int - directivity_factor(d)) / directivity_factor(d))
        sw = steer(d, look, k, R0, MEDIUM)
        w_coef = wng_coefficients(sw.coeffs, look, k, R0, MEDIUM)
        worst_w = max(worst_w, abs(w_coef - wng(d, k, R0, MEDIUM)) / wng(d, k, R0, MEDIUM))
    elapsed = time.perf_counter() - start
    _check(3, f"Q and WNG modal/integral routes agree (worst {worst_q:.1e}, {worst_w:.1e}) "
              f"({elapsed:.2f}s)",
           worst_q < 1e-6 and worst_w < 1e-6 and elapsed < 10.0)


def test_criterion_4_optimality():
    start = time.perf_counter()
    rng = np.random.default_rng(4321)
    order = 3
    ok = True
    q_opt = directivity_factor(max_directivity_weights(order))
    for kr0 in (0.5, 1.1, 2.75):
        k = kr0 / R0
        wng_opt = wng(max_wng_weights(order, k, R0, MEDIUM), k, R0, MEDIUM)
        for _ in range(1000):
            d = rng.standard_normal(order + 1) + 1j * rng.standard_normal(order + 1)
            ok &= directivity_factor(d) <= q_opt + 1e-9
            ok &= wng(d, k, R0, MEDIUM) <= wng_opt * (1 + 1e-9)
    elapsed = time.perf_counter() - start
    _check(4, f"max-DI and max-WNG beat 1000 random designs at kr0 in {{0.5, 1.1, 2.75}} "
              f"({elapsed:.2f}s)", ok and elapsed < 30.0)


def test_criterion_5_kr_reproduction():
    quoted = {(400.0, R0): 1.1, (400.0, RADIUS): 4.2, (1000.0, R0): 2.75, (1000.0, RADIUS): 10.45}
    worst = max(
        abs(2 * np.pi * f / MEDIUM.c * r - ref) / ref for (f, r), ref in quoted.items()
    )
    _check(5, f"kr values at 400/1000 Hz within 1% of quoted (worst {worst:.2%})", worst < 0.01)


def test_criterion_6_end_to_end_replication():
    start = time.perf_counter()
    look = (np.pi / 2, 0.0)
    grid = gaussian_grid(10, RADIUS)
    assert grid.num_points == 242
    transform = build_transform(GEOM, 2)
    errs = {}
    for f, factory in ((400.0, lambda k: max_wng_weights(2, k, R0, MEDIUM)),
                       (1000.0, lambda k: max_directivity_weights(2))):
        k = 2 * np.pi * f / MEDIUM.c
        d = factory(k)
        sw = near_field_steer(d.d, look, k, RADIUS, R0, MEDIUM)
        w = unit_weights(sw, transform)
        samples = virtual_measure(w, transfer_matrix(GEOM, grid, k))
        measured = measured_pattern(samples, grid, 2)
        designed = beam_pattern_modal(d.d, great_circle_angle(look, grid.directions))
        errs[f] = pattern_error(measured, designed, grid.weights)
    elapsed = time.perf_counter() - start
    _check(6, f"virtual-measured vs designed pattern errors {errs[400.0]:.1e} (400 Hz), "
              f"{errs[1000.0]:.1e} (1000 Hz) < 1e-3 ({elapsed:.2f}s)",
           max(errs.values()) < 1e-3 and elapsed < 60.0)


def test_criterion_7_steering_independence():
    rng = np.random.default_rng(777)
    k = 1.1 / R0
    d = rng.standard_normal(3) + 1j * rng.standard_normal(3)
    theta_gc = np.linspace(0, np.pi, 25)
    ref = beam_pattern_modal(d, theta_gc)
    worst = 0.0
    for _ in range(20):
        look = (rng.uniform(0, np.pi), rng.uniform(0, 2 * np.pi))
        sw = steer(d, look, k, R0, MEDIUM)
        dirs = _dirs_at_angles(look, theta_gc, rng)
        vals = beam_pattern_field(sw.coeffs, k, R0, dirs, MEDIUM)
        worst = max(worst, np.max(np.abs(vals - ref)))
    _check(7, f"20 random look directions give identical B(Theta) profiles "
              f"(max deviation {worst:.1e})", worst < 1e-8)


def _dirs_at_angles(look, theta_gc, rng):
    t0, p0 = look
    axis = np.array([np.sin(t0) * np.cos(p0), np.sin(t0) * np.sin(p0), np.cos(t0)])
    helper = np.array([0.0, 0.0, 1.0]) if abs(axis[2]) < 0.9 else np.array([1.0, 0.0, 0.0])
    e1 = np.cross(axis, helper)
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(axis, e1)
    azi = rng.uniform(0, 2 * np.pi)
    pts = np.cos(theta_gc)[:, None] * axis + np.sin(theta_gc)[:, None] * (
        np.cos(azi) * e1 + np.sin(azi) * e2
    )
    return np.column_stack(
        [np.arccos(np.clip(pts[:, 2], -1, 1)), np.mod(np.arctan2(pts[:, 1], pts[:, 0]), 2 * np.pi)]
    )


def test_criterion_8_dolph_chebyshev():
    worst = 0.0
    for order in (2, 3, 4):
        for sidelobe_db in (20.0, 25.0, 30.0):
            d = dolph_chebyshev_weights(order, sidelobe_db)
            ratio = 10.0 ** (-sidelobe_db / 20.0)
            x0 = np.cosh(np.arccosh(1.0 / ratio) / (2 * order))
            theta = np.linspace(2 * np.arccos(1 / x0), np.pi, 40001)
            mag = np.abs(beam_pattern_modal(d.d, theta))
            b0 = abs(beam_pattern_modal(d.d, 0.0))
            interior = (mag[1:-1] > mag[:-2]) & (mag[1:-1] > mag[2:])
            ripples = np.append(mag[1:-1][interior], mag[-1])
            worst = max(worst, np.max(np.abs(ripples - ratio * b0)) / (ratio * b0))
    _check(8, f"equi-ripple sidelobes at requested level, worst deviation {worst:.1e}",
           worst < 1e-6)


def test_criterion_9_synthesis_round_trip():
    transform = build_transform(GEOM, 2)
    rng = np.random.default_rng(99)
    d = rng.standard_normal(3) + 1j * rng.standard_normal(3)
    sw = steer(d, (0.8, 2.5), 1.1 / R0, R0, MEDIUM)
    w = unit_weights(sw, transform)
    back = forward_weights(w, transform)
    resid = np.max(np.abs(back.coeffs - sw.coeffs.coeffs))
    _, _, vh = np.linalg.svd(transform.ymat)
    null = vh[9:].conj().T
    min_norm = all(
        np.sum(np.abs(w.w + null @ (rng.standard_normal(3) + 1j * rng.standard_normal(3))) ** 2)
        >= np.sum(np.abs(w.w) ** 2) - 1e-12
        for _ in range(50)
    )
    _check(9, f"G Y w reconstructs w_nm (residual {resid:.1e}) and w is minimum-norm",
           resid < 1e-9 and min_norm)
