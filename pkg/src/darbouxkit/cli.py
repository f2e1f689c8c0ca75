"""Command-line front end.

Subcommands: verify-pullback, soliton-profile, geodesic, curvature, ciriza,
defect, suite.  Model arguments accept a path to a JSON descriptor file,
inline JSON, or the shorthand "kind:n" (e.g. "cigar:2", "soliton:3",
"poly:2").  Relative output paths land in the directory named by the
DARBOUXKIT_OUTDIR environment variable (default: current directory).  All
numeric output is full double-precision decimal.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click
import numpy as np

from .curvature import curvature_at, curvature_symmetry_residual, holomorphic_sectional
from .darboux import DarbouxMap
from .potentials import model_from_descriptor
from .reporting import (
    OUTDIR_ENV,
    RunConfig,
    emit_plot_data,
    pullback_report,
    run_suite,
    suite_passed,
)
from .soliton import SolitonProfile, profile_table
from .submanifolds import (
    HoloCurvePair,
    PhaseBlockEmbedding,
    a_obstruction,
    ciriza_image_check,
    curvature_defect,
)

__all__ = ["main"]


def _parse_complex(text: str) -> complex:
    cleaned = text.strip().replace(" ", "").replace("i", "j")
    try:
        return complex(cleaned)
    except ValueError as err:
        raise click.BadParameter(f"cannot parse complex number {text!r}") from err


def _parse_cvector(text: str) -> np.ndarray:
    return np.array([_parse_complex(part) for part in text.split(",")], dtype=complex)


def _load_model(value: str):
    path = Path(value)
    if path.is_file():
        try:
            desc = json.loads(path.read_text())
        except json.JSONDecodeError as err:
            raise click.BadParameter(
                f"{value}: line {err.lineno} column {err.colno}: {err.msg}"
            ) from err
        return model_from_descriptor(desc)
    stripped = value.strip()
    if stripped.startswith("{"):
        return model_from_descriptor(json.loads(stripped))
    if ":" in stripped:
        kind, _, n = stripped.partition(":")
        return model_from_descriptor({"kind": kind, "n": int(n)})
    raise click.BadParameter(
        f"model {value!r} is neither a file, inline JSON, nor 'kind:n' shorthand"
    )


def _write_json(payload: dict, out: str | None, default_name: str) -> Path | None:
    if out is None:
        return None
    path = Path(out)
    if not path.is_absolute():
        import os

        base = os.environ.get(OUTDIR_ENV)
        if base:
            path = Path(base) / path
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    return path


@click.group()
def main() -> None:
    """Global Darboux coordinates for rotation-invariant Kahler metrics."""


@main.command("verify-pullback")
@click.option("--model", "model_arg", required=True, help="descriptor file, inline JSON, or kind:n")
@click.option("--points", default=100, show_default=True, type=int)
@click.option("--radius", default=5.0, show_default=True, type=float)
@click.option("--seed", default=20260814, show_default=True, type=int)
@click.option("--tolerance", default=1e-8, show_default=True, type=float)
@click.option("--method", default="analytic", type=click.Choice(["analytic", "fd"]), show_default=True)
@click.option("--out", default=None, help="write the JSON report here")
def verify_pullback_cmd(model_arg, points, radius, seed, tolerance, method, out) -> None:
    """Check the symplectic pullback identity at random points."""
    model = _load_model(model_arg)
    report = pullback_report(
        model, points=points, radius=radius, seed=seed, tolerance=tolerance, method=method
    )
    click.echo(json.dumps(report, sort_keys=True, indent=2))
    path = _write_json(report, out, "pullback.json")
    if path:
        click.echo(f"wrote {path}")
    sys.exit(0 if report["pass"] else 1)


@main.command("soliton-profile")
@click.option("--n", default=2, show_default=True, type=int)
@click.option("--t-min", default=-10.0, show_default=True, type=float)
@click.option("--t-max", default=10.0, show_default=True, type=float)
@click.option("--count", default=200, show_default=True, type=int)
@click.option("--out", default=None, help="CSV path (default profile-n<N>.csv)")
def soliton_profile_cmd(n, t_min, t_max, count, out) -> None:
    """Tabulate the soliton profile derivatives and the ODE residual."""
    path = emit_plot_data(
        "profile", {"n": n, "t_min": t_min, "t_max": t_max, "count": count}, out
    )
    rows = profile_table(SolitonProfile(n), t_min, t_max, count)
    click.echo(f"max ode residual on [{t_min!r}, {t_max!r}]: {float(np.max(rows[:, 3]))!r}")
    click.echo(f"wrote {path}")


@main.command("geodesic")
@click.option("--model", "model_arg", required=True)
@click.option("--start", required=True, help="comma-separated complex coordinates")
@click.option("--vel", required=True, help="comma-separated complex velocity")
@click.option("--length", default=10.0, show_default=True, type=float)
@click.option("--steps", default=None, type=int)
@click.option("--out", default=None, help="CSV path for the trajectory")
def geodesic_cmd(model_arg, start, vel, length, steps, out) -> None:
    """Integrate a geodesic and dump (tau, coordinates, energy drift)."""
    model = _load_model(model_arg)
    z0 = _parse_cvector(start)
    v0 = _parse_cvector(vel)
    for name, vec in (("--start", z0), ("--vel", v0)):
        if vec.shape != (model.n,):
            raise click.BadParameter(
                f"{name} has {vec.size} coordinates, model {model.name} needs {model.n}"
            )
    params = {
        "model": model.descriptor(),
        "start": z0,
        "vel": v0,
        "length": length,
    }
    if steps is not None:
        params["steps"] = steps
    path = emit_plot_data("geodesic", params, out)
    click.echo(f"wrote {path}")


@main.command("curvature")
@click.option("--model", "model_arg", required=True)
@click.option("--point", required=True, help="comma-separated complex coordinates")
@click.option("--method", default="analytic", type=click.Choice(["analytic", "fd"]), show_default=True)
@click.option("--out", default=None, help="write the tensor as JSON here")
def curvature_cmd(model_arg, point, method, out) -> None:
    """Evaluate the curvature tensor at one point."""
    model = _load_model(model_arg)
    z = _parse_cvector(point)
    if len(z) != model.n:
        raise click.BadParameter(f"point has {len(z)} coordinates, model has n={model.n}")
    r = curvature_at(model, z, method=method)
    v = np.zeros(model.n, dtype=complex)
    v[0] = 1.0
    payload = {
        "model": model.name,
        "n": model.n,
        "point": [str(c) for c in z],
        "method": method,
        "tensor_re": r.real.tolist(),
        "tensor_im": r.imag.tolist(),
        "symmetry_residual": curvature_symmetry_residual(r),
        "sectional_first_axis": holomorphic_sectional(model, z, v),
    }
    click.echo(
        json.dumps(
            {k: payload[k] for k in ("model", "n", "point", "method", "symmetry_residual", "sectional_first_axis")},
            sort_keys=True,
            indent=2,
        )
    )
    path = _write_json(payload, out, "tensor.json")
    if path:
        click.echo(f"wrote {path}")


def _parse_embedding_spec(n: int, spec: str) -> PhaseBlockEmbedding:
    if "alpha=" not in spec or not spec.startswith("sigma="):
        raise click.BadParameter("spec must look like sigma=1,1,alpha=1,i")
    sigma_part, _, alpha_part = spec.partition("alpha=")
    sigma_part = sigma_part[len("sigma="):].rstrip(",")
    sigma = tuple(int(s) for s in sigma_part.split(","))
    phases = tuple(_parse_complex(p) for p in alpha_part.split(","))
    if len(phases) < n:
        phases = phases + (1.0 + 0.0j,) * (n - len(phases))
    return PhaseBlockEmbedding(n, sigma, phases)


@main.command("ciriza")
@click.option("--n", default=2, show_default=True, type=int)
@click.option("--spec", required=True, help="sigma=<list>,alpha=<list>; sigma entry 0 means the coordinate is identically zero")
@click.option("--samples", default=50, show_default=True, type=int)
@click.option("--kind", default="cigar", type=click.Choice(["cigar", "soliton"]), show_default=True)
@click.option("--seed", default=202614, show_default=True, type=int)
@click.option("--tolerance", default=1e-9, show_default=True, type=float)
@click.option("--out", default=None, help="write the JSON report here")
def ciriza_cmd(n, spec, samples, kind, seed, tolerance, out) -> None:
    """Check that the coordinate map sends a phase-block subspace to a
    complex-linear subspace."""
    embedding = _parse_embedding_spec(n, spec)
    dm = DarbouxMap(model_from_descriptor({"kind": kind, "n": n}))
    report = ciriza_image_check(
        dm, embedding, samples=samples, seed=seed, tolerance=tolerance
    )
    click.echo(json.dumps(report.as_dict(), sort_keys=True, indent=2))
    path = _write_json(report.as_dict(), out, "ciriza.json")
    if path:
        click.echo(f"wrote {path}")
    sys.exit(0 if report.passed else 1)


@main.command("defect")
@click.option("--f1", required=True, help="ascending coefficients from the linear term, e.g. '1' is z")
@click.option("--f2", required=True, help="e.g. '0,1' is z^2")
@click.option("--points", default=50, show_default=True, type=int)
@click.option("--radius", default=1.5, show_default=True, type=float)
@click.option("--seed", default=202616, show_default=True, type=int)
@click.option("--at", "at_point", default=None, help="also print A and both defect routes at this complex point")
def defect_cmd(f1, f2, points, radius, seed, at_point) -> None:
    """Compare both routes to the curvature defect of a holomorphic curve."""
    pair = HoloCurvePair(
        [_parse_complex(c) for c in f1.split(",")],
        [_parse_complex(c) for c in f2.split(",")],
    )
    rng = np.random.default_rng(seed)
    zs = radius * np.sqrt(rng.uniform(size=points)) * np.exp(2j * np.pi * rng.uniform(size=points))
    max_gap = 0.0
    max_direct = -np.inf
    for z in zs:
        direct, via_a = curvature_defect(pair, complex(z))
        max_gap = max(max_gap, abs(direct - via_a) / max(1.0, abs(direct)))
        max_direct = max(max_direct, direct)
    payload = {
        "f1": f1,
        "f2": f2,
        "points": points,
        "max_relative_gap": max_gap,
        "max_direct_defect": max_direct,
        "pass": bool(max_gap <= 1e-8),
    }
    if at_point is not None:
        z0 = _parse_complex(at_point)
        direct, via_a = curvature_defect(pair, z0)
        payload["at"] = {
            "z": str(z0),
            "a_obstruction": str(a_obstruction(pair, z0)),
            "direct": direct,
            "viaA": via_a,
        }
    click.echo(json.dumps(payload, sort_keys=True, indent=2))
    sys.exit(0 if payload["pass"] else 1)


@main.command("suite")
@click.option("--config", "config_path", default=None, help="JSON RunConfig file")
@click.option("--seed", default=None, type=int, help="override the config seed")
@click.option("--points", default=None, type=int)
@click.option("--claims", default=None, help="comma-separated subset of claim ids")
@click.option("--out", default=None, help="write the combined JSON report here")
@click.option("--outdir", default=None, help="output directory (else $DARBOUXKIT_OUTDIR)")
def suite_cmd(config_path, seed, points, claims, out, outdir) -> None:
    """Run every verification claim and exit 0 only if all pass."""
    try:
        cfg = RunConfig.from_json(config_path) if config_path else RunConfig()
        overrides = {}
        if seed is not None:
            overrides["seed"] = seed
        if points is not None:
            overrides["points"] = points
        if claims is not None:
            overrides["claims"] = tuple(c.strip() for c in claims.split(","))
        if outdir is not None:
            overrides["outdir"] = outdir
        if overrides:
            data = {
                "seed": cfg.seed,
                "points": cfg.points,
                "radius": cfg.radius,
                "rays": cfg.rays,
                "properness_threshold": cfg.properness_threshold,
                "geodesic_length": cfg.geodesic_length,
                "tolerances": dict(cfg.tolerances),
                "claims": cfg.claims,
                "model_file": cfg.model_file,
                "outdir": cfg.outdir,
            }
            data.update(overrides)
            cfg = RunConfig.from_dict(data)
    except (ValueError, OSError) as err:
        raise click.ClickException(str(err)) from err
    reports = run_suite(cfg)
    for report in reports:
        click.echo(report.summary_line())
    all_passed = suite_passed(reports)
    total = sum(r.wall_time_s for r in reports)
    click.echo(f"{'ALL PASS' if all_passed else 'FAILURES PRESENT'} ({total:.1f}s)")
    payload = {
        "pass": all_passed,
        "reports": [r.as_dict() for r in reports],
    }
    path = _write_json(payload, out, "suite.json")
    if path:
        click.echo(f"wrote {path}")
    sys.exit(0 if all_passed else 1)


if __name__ == "__main__":
    main()
