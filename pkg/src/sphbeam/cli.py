"""Command-line front end.

Subcommands: design, steer, synthesize, simulate, metrics, grid.
Angles are degrees at the CLI boundary and radians internally.
Coefficient files are JSON; pattern grids and cross-sections are CSV
with columns theta_deg, phi_deg, re, im, abs, db.  Identical inputs
produce bit-identical outputs; every file carries the config hash.

Exit codes: 0 success, 2 configuration error, 3 numerical failure.
"""

from __future__ import annotations

import hashlib
import json
import sys
from pathlib import Path

import click
import numpy as np

from . import design as designs
from . import metrics as metricsmod
from . import sphmath, synthesis, virtualmeas
from .radiation import ArrayGeometry, Medium, beam_pattern_modal, dodecahedron, great_circle_angle

METHODS = ("max-di", "max-wng", "dolph-chebyshev")
DEFAULT_R0 = 0.15
DEFAULT_ALPHA = 0.3
BALLOON_STEP_DEG = 2.0


# ---------------------------------------------------------------------------
# config handling


def _config_hash(cfg: dict) -> str:
    return hashlib.sha256(json.dumps(cfg, sort_keys=True).encode()).hexdigest()[:16]


def load_geometry(spec: str) -> tuple[ArrayGeometry, dict]:
    """Resolve a geometry spec: a JSON file path, or a builtin name like
    'dodecahedron' / 'dodecahedron:r0=0.15,alpha=0.3'."""
    if spec.split(":")[0] == "dodecahedron":
        params = {"r0": DEFAULT_R0, "alpha": DEFAULT_ALPHA}
        if ":" in spec:
            for item in spec.split(":", 1)[1].split(","):
                key, _, val = item.partition("=")
                if key not in params:
                    raise ValueError(f"geometry: unknown dodecahedron parameter {key!r}")
                params[key] = float(val)
        geom = dodecahedron(**params)
        return geom, {"builtin": "dodecahedron", **params}
    path = Path(spec)
    if not path.exists():
        raise ValueError(f"geometry: file not found: {spec}")
    data = json.loads(path.read_text())
    try:
        caps = np.deg2rad(np.asarray(data["caps_deg"], dtype=float))
        geom = ArrayGeometry(r0=float(data["r0"]), alpha=float(data["alpha"]), cap_dirs=caps)
    except (KeyError, TypeError) as exc:
        raise ValueError(f"geometry.{exc}: expected fields r0, alpha, caps_deg") from exc
    return geom, data


def parse_look(text: str) -> tuple[float, float]:
    try:
        theta, phi = (float(v) for v in text.split(","))
    except ValueError as exc:
        raise ValueError("look: expected THETA,PHI in degrees") from exc
    if not 0.0 <= theta <= 180.0:
        raise ValueError("look.theta: must lie in [0, 180] degrees")
    return np.deg2rad(theta), np.deg2rad(phi)


def parse_freqs(text: str) -> list[float]:
    freqs = [float(v) for v in text.split(",")]
    if any(f <= 0 for f in freqs):
        raise ValueError("freq: frequencies must be positive")
    return freqs


def parse_perturb(text: str) -> dict:
    allowed = {"gain_db": 0.0, "phase_deg": 0.0, "noise": 0.0, "seed": 0}
    for item in filter(None, text.split(",")):
        key, _, val = item.partition("=")
        if key not in allowed:
            raise ValueError(f"perturb.{key}: unknown field")
        allowed[key] = int(val) if key == "seed" else float(val)
    return allowed


def _design_weights(method, order, sidelobe_db, k, r0, medium):
    if method == "max-di":
        return designs.max_directivity_weights(order)
    if method == "max-wng":
        return designs.max_wng_weights(order, k, r0, medium)
    if sidelobe_db is None:
        raise ValueError("sidelobe: required for method dolph-chebyshev")
    return designs.dolph_chebyshev_weights(order, sidelobe_db)


# ---------------------------------------------------------------------------
# serialization


def _c2l(values) -> list:
    return [[float(v.real), float(v.imag)] for v in np.asarray(values, dtype=complex)]


def _l2c(pairs) -> np.ndarray:
    arr = np.asarray(pairs, dtype=float)
    return arr[:, 0] + 1j * arr[:, 1]


def write_json(path: Path, kind: str, cfg_hash: str, payload: dict):
    doc = {"kind": kind, "config_hash": cfg_hash, **payload}
    path.write_text(json.dumps(doc, sort_keys=True, indent=2) + "\n")


def read_json(path: Path, kind: str) -> dict:
    data = json.loads(Path(path).read_text())
    if data.get("kind") != kind:
        raise ValueError(f"{path}: expected a {kind!r} file, got {data.get('kind')!r}")
    return data


def write_pattern_csv(path: Path, cfg_hash: str, dirs_rad, values, look_value):
    """Pattern CSV: angles in degrees, dB relative to the look direction."""
    if not (np.all(np.isfinite(values)) and np.isfinite(look_value)):
        raise ArithmeticError(f"{path}: non-finite pattern values")
    scale = abs(look_value)
    lines = [
        f"# config_hash: {cfg_hash}",
        "# units: theta_deg, phi_deg [degrees]; re, im, abs [pattern units]; "
        "db [20*log10(|B|/|B(look)|)]",
        "theta_deg,phi_deg,re,im,abs,db",
    ]
    mags = np.abs(values)
    dbs = 20.0 * np.log10(np.maximum(mags, 1e-300) / scale)
    for (theta, phi), val, mag, db in zip(np.rad2deg(dirs_rad), values, mags, dbs):
        lines.append(f"{theta:.6f},{phi:.6f},{val.real:.12e},{val.imag:.12e},{mag:.12e},{db:.6f}")
    path.write_text("\n".join(lines) + "\n")


def _balloon_dirs() -> np.ndarray:
    theta = np.deg2rad(np.arange(0.0, 180.0 + BALLOON_STEP_DEG, BALLOON_STEP_DEG))
    phi = np.deg2rad(np.arange(0.0, 360.0, BALLOON_STEP_DEG))
    tt, pp = np.meshgrid(theta, phi, indexing="ij")
    return np.column_stack([tt.ravel(), pp.ravel()])


def _cross_section_dirs() -> np.ndarray:
    phi = np.deg2rad(np.arange(0.0, 360.0, 1.0))
    return np.column_stack([np.full_like(phi, np.pi / 2), phi])


# ---------------------------------------------------------------------------
# commands


class _Failure(click.ClickException):
    def __init__(self, message, exit_code):
        super().__init__(message)
        self.exit_code = exit_code


def _run(fn):
    """Map library errors onto the documented exit codes."""

    def wrapper(*args, **kwargs):
        try:
            fn(*args, **kwargs)
        except (ValueError, KeyError, json.JSONDecodeError) as exc:
            raise _Failure(f"config error: {exc}", 2) from exc
        except (ArithmeticError, np.linalg.LinAlgError) as exc:
            raise _Failure(f"numerical failure: {exc}", 3) from exc

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


geometry_opt = click.option("--geometry", default="dodecahedron", show_default=True,
                            help="Geometry JSON path or builtin spec.")
out_opt = click.option("--out", type=click.Path(file_okay=False, path_type=Path),
                       default=Path("."), show_default=True, help="Output directory.")
format_opt = click.option("--format", "fmt", type=click.Choice(["json", "csv"]),
                          default="json", show_default=True)


@click.group()
def main():
    """Model-based beamforming for spherical loudspeaker arrays."""


@main.command("design")
@geometry_opt
@click.option("--method", type=click.Choice(METHODS), required=True)
@click.option("--order", "-N", type=int, required=True, help="Design order N.")
@click.option("--freq", required=True, help="Frequency list in Hz, comma separated.")
@click.option("--look", default="0,0", show_default=True, help="Look direction THETA,PHI in degrees.")
@click.option("--sidelobe", type=float, default=None, help="Sidelobe level in dB (dolph-chebyshev).")
@click.option("--near-field", is_flag=True, help="Compensate steering for a finite analysis radius.")
@click.option("--radius", type=float, default=0.57, show_default=True,
              help="Analysis radius in m (with --near-field).")
@out_opt
@_run
def cmd_design(geometry, method, order, freq, look, sidelobe, near_field, radius, out):
    """Design modal weights, steer, synthesize unit weights, and report metrics."""
    geom, geom_doc = load_geometry(geometry)
    look_rad = parse_look(look)
    freqs = parse_freqs(freq)
    if sphmath.num_coeffs(order) > geom.num_caps:
        raise ValueError(
            f"order {order}: (N+1)^2 = {sphmath.num_coeffs(order)} exceeds "
            f"L = {geom.num_caps} caps; the controllable order bound requires (N+1)^2 <= L"
        )
    medium = Medium()
    cfg = {
        "command": "design", "geometry": geom_doc, "method": method, "order": order,
        "frequencies_hz": freqs, "look_deg": sorted_look(look), "sidelobe_db": sidelobe,
        "near_field": near_field, "radius_m": radius,
        "medium": {"rho0": medium.rho0, "c": medium.c},
    }
    cfg_hash = _config_hash(cfg)
    out.mkdir(parents=True, exist_ok=True)
    transform = synthesis.build_transform(geom, order)

    for f in freqs:
        k = 2 * np.pi * f / medium.c
        d = _design_weights(method, order, sidelobe, k, geom.r0, medium)
        if near_field:
            steered = virtualmeas.near_field_steer(d, look_rad, k, radius, geom.r0, medium)
        else:
            steered = synthesis.steer(d, look_rad, k, geom.r0, medium)
        w = synthesis.unit_weights(steered, transform, geometry=geom)
        rep = metricsmod.report(d, k, geom.r0, medium,
                                unit_weight_norm=float(np.sum(np.abs(w.w) ** 2)))
        tag = f"{f:g}Hz"
        write_json(out / f"modal_weights_{tag}.json", "modal_weights", cfg_hash, {
            "method": method, "order": order, "frequency_hz": f, "k_per_m": k,
            "r0_m": geom.r0, "d": _c2l(d.d),
        })
        write_json(out / f"steered_weights_{tag}.json", "steered_weights", cfg_hash, {
            "order": order, "frequency_hz": f, "k_per_m": k, "look_deg": cfg["look_deg"],
            "near_field_radius_m": radius if near_field else None,
            "coeffs": _c2l(steered.coeffs.coeffs),
        })
        write_json(out / f"unit_weights_{tag}.json", "unit_weights", cfg_hash, {
            "frequency_hz": f, "num_caps": geom.num_caps, "w": _c2l(w.w),
        })
        write_json(out / f"metrics_{tag}.json", "metrics", cfg_hash, _report_doc(rep, f))
        click.echo(f"{tag}: Q={rep.q:.6g} DI={rep.di_db:.4f} dB "
                   f"WNG={rep.wng:.6g} ({rep.wng_db:.4f} dB)")


def sorted_look(look: str) -> list[float]:
    theta, phi = parse_look(look)
    return [float(np.rad2deg(theta)), float(np.rad2deg(phi))]


def _report_doc(rep, f):
    return {
        "frequency_hz": f, "q": rep.q, "di_db": rep.di_db, "wng": rep.wng,
        "wng_db": rep.wng_db, "k_per_m": rep.k, "r0_m": rep.r0,
        "unit_weight_norm": rep.unit_weight_norm,
    }


@main.command("steer")
@click.argument("weights_file", type=click.Path(exists=True, path_type=Path))
@geometry_opt
@click.option("--look", required=True, help="Look direction THETA,PHI in degrees.")
@click.option("--near-field", is_flag=True)
@click.option("--radius", type=float, default=0.57, show_default=True)
@out_opt
@_run
def cmd_steer(weights_file, geometry, look, near_field, radius, out):
    """Steer modal weights from a design file to a new look direction."""
    geom, geom_doc = load_geometry(geometry)
    look_rad = parse_look(look)
    data = read_json(weights_file, "modal_weights")
    d = designs.ModalWeights(d=_l2c(data["d"]), k=data["k_per_m"])
    medium = Medium()
    if near_field:
        steered = virtualmeas.near_field_steer(d, look_rad, d.k, radius, geom.r0, medium)
    else:
        steered = synthesis.steer(d, look_rad, d.k, geom.r0, medium)
    cfg = {"command": "steer", "geometry": geom_doc, "source": data["config_hash"],
           "look_deg": sorted_look(look), "near_field": near_field, "radius_m": radius}
    out.mkdir(parents=True, exist_ok=True)
    tag = f"{data['frequency_hz']:g}Hz"
    write_json(out / f"steered_weights_{tag}.json", "steered_weights", _config_hash(cfg), {
        "order": d.order, "frequency_hz": data["frequency_hz"], "k_per_m": d.k,
        "look_deg": cfg["look_deg"],
        "near_field_radius_m": radius if near_field else None,
        "coeffs": _c2l(steered.coeffs.coeffs),
    })
    click.echo(f"steered order-{d.order} weights to look {look} deg")


@main.command("synthesize")
@click.argument("steered_file", type=click.Path(exists=True, path_type=Path))
@geometry_opt
@out_opt
@_run
def cmd_synthesize(steered_file, geometry, out):
    """Compute per-loudspeaker weights from steered coefficients."""
    geom, geom_doc = load_geometry(geometry)
    data = read_json(steered_file, "steered_weights")
    coeffs = _l2c(data["coeffs"])
    transform = synthesis.build_transform(geom, data["order"])
    w = synthesis.unit_weights(
        synthesis.SteeredWeights(
            coeffs=virtualmeas.SHVector(order=data["order"], coeffs=coeffs),
            look=tuple(np.deg2rad(data["look_deg"])), k=data["k_per_m"], r0=geom.r0),
        transform, geometry=geom)
    cfg = {"command": "synthesize", "geometry": geom_doc, "source": data["config_hash"]}
    out.mkdir(parents=True, exist_ok=True)
    tag = f"{data['frequency_hz']:g}Hz"
    write_json(out / f"unit_weights_{tag}.json", "unit_weights", _config_hash(cfg), {
        "frequency_hz": data["frequency_hz"], "num_caps": geom.num_caps, "w": _c2l(w.w),
    })
    click.echo(f"synthesized {geom.num_caps} unit weights")


@main.command("metrics")
@click.argument("weights_file", type=click.Path(exists=True, path_type=Path))
@geometry_opt
@out_opt
@format_opt
@_run
def cmd_metrics(weights_file, geometry, out, fmt):
    """Directivity factor/index and WNG of a modal weights file."""
    geom, geom_doc = load_geometry(geometry)
    data = read_json(weights_file, "modal_weights")
    d = designs.ModalWeights(d=_l2c(data["d"]), k=data["k_per_m"])
    rep = metricsmod.report(d, d.k, geom.r0)
    cfg = {"command": "metrics", "geometry": geom_doc, "source": data["config_hash"]}
    cfg_hash = _config_hash(cfg)
    out.mkdir(parents=True, exist_ok=True)
    tag = f"{data['frequency_hz']:g}Hz"
    doc = _report_doc(rep, data["frequency_hz"])
    if fmt == "json":
        write_json(out / f"metrics_{tag}.json", "metrics", cfg_hash, doc)
    else:
        keys = sorted(doc)
        lines = [f"# config_hash: {cfg_hash}", ",".join(keys),
                 ",".join("" if doc[k] is None else f"{doc[k]:.12g}" for k in keys)]
        (out / f"metrics_{tag}.csv").write_text("\n".join(lines) + "\n")
    click.echo(f"Q={rep.q:.6g} DI={rep.di_db:.4f} dB WNG={rep.wng:.6g}")


@main.command("grid")
@click.option("--analysis-order", type=int, required=True)
@click.option("--radius", type=float, required=True, help="Grid radius in m.")
@out_opt
@_run
def cmd_grid(analysis_order, radius, out):
    """Export a Gaussian sampling grid (directions and quadrature weights)."""
    grid = virtualmeas.gaussian_grid(analysis_order, radius)
    cfg = {"command": "grid", "analysis_order": analysis_order, "radius_m": radius}
    out.mkdir(parents=True, exist_ok=True)
    write_json(out / f"grid_N{analysis_order}.json", "sampling_grid", _config_hash(cfg), {
        "analysis_order": analysis_order, "radius_m": radius,
        "num_points": grid.num_points,
        "theta_deg": [float(v) for v in np.rad2deg(grid.directions[:, 0])],
        "phi_deg": [float(v) for v in np.rad2deg(grid.directions[:, 1])],
        "weights_sr": [float(v) for v in grid.weights],
    })
    click.echo(f"wrote {grid.num_points}-point Gaussian grid of order {analysis_order}")


@main.command("simulate")
@click.argument("modal_file", type=click.Path(exists=True, path_type=Path))
@click.argument("unit_file", type=click.Path(exists=True, path_type=Path))
@geometry_opt
@click.option("--analysis-order", type=int, default=10, show_default=True)
@click.option("--radius", type=float, default=0.57, show_default=True,
              help="Virtual microphone radius in m.")
@click.option("--look", default="0,0", show_default=True,
              help="Look direction THETA,PHI in degrees; must match the steering.")
@click.option("--perturb", default="", help="Perturbation spec, e.g. "
                                            "'gain_db=0.5,phase_deg=2,noise=1e-4,seed=1'.")
@out_opt
@_run
def cmd_simulate(modal_file, unit_file, geometry, analysis_order, radius, look, perturb, out):
    """Virtually measure a synthesized design and export designed and
    measured balloon grids and cross-sections."""
    geom, geom_doc = load_geometry(geometry)
    modal = read_json(modal_file, "modal_weights")
    unit = read_json(unit_file, "unit_weights")
    if modal["frequency_hz"] != unit["frequency_hz"]:
        raise ValueError("modal and unit weight files are for different frequencies")
    if unit["num_caps"] != geom.num_caps:
        raise ValueError(f"unit weights for {unit['num_caps']} caps, geometry has {geom.num_caps}")
    d = _l2c(modal["d"])
    order = modal["order"]
    k = modal["k_per_m"]
    look_rad = parse_look(look)
    perturbation = parse_perturb(perturb)

    cfg = {"command": "simulate", "geometry": geom_doc, "source": modal["config_hash"],
           "analysis_order": analysis_order, "radius_m": radius,
           "look_deg": [float(np.rad2deg(a)) for a in look_rad], "perturb": perturbation}
    cfg_hash = _config_hash(cfg)
    out.mkdir(parents=True, exist_ok=True)
    tag = f"{modal['frequency_hz']:g}Hz"

    grid = virtualmeas.gaussian_grid(analysis_order, radius)
    transfer = virtualmeas.transfer_matrix(geom, grid, k)
    if any(perturbation[key] for key in ("gain_db", "phase_deg", "noise")):
        transfer = virtualmeas.perturb_transfer(transfer, **perturbation)
    samples = virtualmeas.virtual_measure(_l2c(unit["w"]), transfer)
    measured_nm = virtualmeas.discrete_sft(samples, grid, order)

    balloon = _balloon_dirs()
    cross = _cross_section_dirs()
    for name, dirs in (("balloon", balloon), ("cross_section", cross)):
        theta_gc = great_circle_angle(look_rad, dirs)
        designed = beam_pattern_modal(d, theta_gc)
        designed_look = beam_pattern_modal(d, 0.0)
        ymat = sphmath.sh_matrix(order, dirs[:, 0], dirs[:, 1])
        measured = ymat @ measured_nm.coeffs
        ylook = sphmath.sh_matrix(order, look_rad[0], look_rad[1])[0]
        measured_look = ylook @ measured_nm.coeffs
        write_pattern_csv(out / f"{name}_designed_{tag}.csv", cfg_hash, dirs, designed,
                          designed_look)
        write_pattern_csv(out / f"{name}_measured_{tag}.csv", cfg_hash, dirs, measured,
                          measured_look)

    # error between designed and measured patterns on the analysis grid
    designed_grid = beam_pattern_modal(d, great_circle_angle(look_rad, grid.directions))
    measured_grid = virtualmeas.measured_pattern(samples, grid, order)
    err = virtualmeas.pattern_error(measured_grid, designed_grid, grid.weights)
    write_json(out / f"simulation_{tag}.json", "simulation_report", cfg_hash, {
        "frequency_hz": modal["frequency_hz"], "analysis_order": analysis_order,
        "radius_m": radius, "sim_order": transfer.sim_order,
        "pattern_error": err,
    })
    click.echo(f"{tag}: pattern_error={err:.3e}")


if __name__ == "__main__":
    main()
