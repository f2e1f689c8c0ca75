"""Verification claims, deterministic suite runner, and data emission.

Each claim bundles one headline property of the construction into a
``VerificationReport`` with a residual and a tolerance (pass iff residual <=
tolerance).  Claims with several bounded parts are normalized: every part
contributes (observed / bound), the report's residual is the worst ratio, and
the tolerance is 1.0 — the raw numbers and their bounds live in ``details``.

Determinism contract: a fixed ``RunConfig`` produces byte-identical report
bodies (wall time is carried separately and never enters the body).  Every
claim draws from its own generator seeded by (config seed, crc32(claim id)),
so claims are independent and order-insensitive.
"""

from __future__ import annotations

import csv
import json
import os
import time
import zlib
from dataclasses import dataclass, field
from math import exp, log1p
from pathlib import Path
from typing import Callable, Mapping, Sequence

import numpy as np

from .curvature import curvature_at, curvature_symmetry_residual
from .darboux import DarbouxMap, properness_auto_scan, unit_directions
from .potentials import (
    CigarProductPotential,
    PotentialModel,
    SampleRegion,
    SolitonPotential,
    cond0_scan,
    model_from_descriptor,
    poly_test_model,
    radial_coords,
    shipped_models,
)
from .soliton import SolitonProfile, profile_table
from .submanifolds import (
    HoloCurvePair,
    a_obstruction,
    ciriza_image_check,
    curvature_defect,
    curve_geodesy_residual,
    curve_image_rank,
    graph_counterexample_pair,
    standard_catalog,
    total_geodesy_residual,
)
from .geodesics import GeodesicState, geodesic_integrate

__all__ = [
    "RunConfig",
    "VerificationReport",
    "CLAIM_IDS",
    "run_claim",
    "run_suite",
    "suite_passed",
    "pullback_report",
    "emit_plot_data",
    "OUTDIR_ENV",
]

OUTDIR_ENV = "DARBOUXKIT_OUTDIR"


# ---------------------------------------------------------------------------
# configuration
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RunConfig:
    """Suite configuration; every field has a sensible default.

    ``tolerances`` overrides the final pass tolerance per claim id (values
    must be positive).  ``claims`` restricts which claims run (default all).
    """

    seed: int = 20260814
    points: int = 100
    radius: float = 5.0
    rays: int = 8
    properness_threshold: float = 1e3
    geodesic_length: float = 10.0
    tolerances: Mapping[str, float] = field(default_factory=dict)
    claims: tuple[str, ...] | None = None
    model_file: str | None = None
    outdir: str | None = None

    def __post_init__(self) -> None:
        if self.points < 1:
            raise ValueError("config error: points must be >= 1")
        if self.radius <= 0.0:
            raise ValueError("config error: radius must be > 0")
        if self.rays < 1:
            raise ValueError("config error: rays must be >= 1")
        if self.properness_threshold <= 0.0:
            raise ValueError("config error: properness_threshold must be > 0")
        if self.geodesic_length <= 0.0:
            raise ValueError("config error: geodesic_length must be > 0")
        for claim, tol in dict(self.tolerances).items():
            if not tol > 0.0:
                raise ValueError(f"config error: tolerance for {claim!r} must be > 0")
            if claim not in CLAIM_IDS:
                raise ValueError(f"config error: unknown claim id {claim!r}")
        if self.claims is not None:
            for claim in self.claims:
                if claim not in CLAIM_IDS:
                    raise ValueError(f"config error: unknown claim id {claim!r}")

    @classmethod
    def from_dict(cls, data: Mapping) -> "RunConfig":
        known = {
            "seed",
            "points",
            "radius",
            "rays",
            "properness_threshold",
            "geodesic_length",
            "tolerances",
            "claims",
            "model_file",
            "outdir",
        }
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"config error: unknown keys {sorted(unknown)}")
        kwargs = dict(data)
        if "claims" in kwargs and kwargs["claims"] is not None:
            kwargs["claims"] = tuple(kwargs["claims"])
        return cls(**kwargs)

    @classmethod
    def from_json(cls, path: str | Path) -> "RunConfig":
        text = Path(path).read_text()
        try:
            data = json.loads(text)
        except json.JSONDecodeError as err:
            raise ValueError(
                f"config error: {path}: line {err.lineno} column {err.colno}: {err.msg}"
            ) from err
        if not isinstance(data, dict):
            raise ValueError(f"config error: {path}: top level must be an object")
        return cls.from_dict(data)

    def tolerance_for(self, claim: str, default: float) -> float:
        return float(self.tolerances.get(claim, default))

    def rng_for(self, claim: str) -> np.random.Generator:
        return np.random.default_rng((self.seed, zlib.crc32(claim.encode())))

    def resolve_outdir(self) -> Path:
        base = self.outdir or os.environ.get(OUTDIR_ENV) or "."
        path = Path(base)
        path.mkdir(parents=True, exist_ok=True)
        return path


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------


def _jsonable(value):
    if isinstance(value, (np.floating, float)):
        return float(value)
    if isinstance(value, (np.integer, int)):
        return int(value)
    if isinstance(value, (np.bool_, bool)):
        return bool(value)
    if isinstance(value, np.ndarray):
        return [_jsonable(v) for v in value.tolist()]
    if isinstance(value, complex):
        return str(value)
    if isinstance(value, Mapping):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of one claim: pass iff max_residual <= tolerance."""

    claim: str
    model: object
    samples: int
    seed: int
    max_residual: float
    tolerance: float
    details: Mapping = field(default_factory=dict)
    wall_time_s: float = 0.0

    @property
    def passed(self) -> bool:
        return bool(self.max_residual <= self.tolerance)

    def body(self) -> str:
        """Canonical JSON body; excludes wall time so reruns match bytewise."""
        payload = {
            "claim": self.claim,
            "model": _jsonable(self.model),
            "samples": int(self.samples),
            "seed": int(self.seed),
            "max_residual": _jsonable(self.max_residual),
            "tolerance": _jsonable(self.tolerance),
            "pass": self.passed,
            "details": _jsonable(self.details),
        }
        return json.dumps(payload, sort_keys=True)

    def as_dict(self, include_wall_time: bool = True) -> dict:
        data = json.loads(self.body())
        if include_wall_time:
            data["wall_time_s"] = self.wall_time_s
        return data

    def summary_line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (
            f"{status}  {self.claim:<22} residual={self.max_residual:.3e} "
            f"tolerance={self.tolerance:.3e}"
        )


# ---------------------------------------------------------------------------
# shared helpers
# ---------------------------------------------------------------------------


def _sample_points(rng: np.random.Generator, count: int, n: int, radius: float) -> np.ndarray:
    region = SampleRegion(radius=radius, count=count, include_origin=False)
    return region.sample(n, rng=rng)


def _pullback_part(
    cfg: RunConfig, rng: np.random.Generator, models: Sequence[PotentialModel]
) -> tuple[float, dict]:
    analytic_bound, fd_bound = 1e-8, 1e-5
    per_model = {}
    worst = 0.0
    for model in models:
        dm = DarbouxMap(model)
        pts = _sample_points(rng, cfg.points, model.n, cfg.radius)
        analytic = max(dm.pullback_residual(z) for z in pts)
        fd = max(dm.pullback_residual(z, method="fd") for z in pts)
        per_model[model.name] = {"analytic": analytic, "fd": fd}
        worst = max(worst, analytic / analytic_bound, fd / fd_bound)
    details = {
        "bounds": {"analytic": analytic_bound, "fd": fd_bound},
        "per_model": per_model,
        "radius": cfg.radius,
    }
    return worst, details


def _report(
    cfg: RunConfig,
    claim: str,
    models: object,
    samples: int,
    residual: float,
    tolerance: float,
    details: Mapping,
) -> VerificationReport:
    return VerificationReport(
        claim=claim,
        model=models,
        samples=samples,
        seed=cfg.seed,
        max_residual=float(residual),
        tolerance=float(tolerance),
        details=details,
    )


def _descriptors(models: Sequence[PotentialModel]) -> list[dict]:
    return [m.descriptor() for m in models]


# ---------------------------------------------------------------------------
# the claims
# ---------------------------------------------------------------------------


def _claim_soliton_pullback(cfg: RunConfig) -> VerificationReport:
    claim = "soliton-pullback"
    rng = cfg.rng_for(claim)
    models = [SolitonPotential(SolitonProfile(n)) for n in (1, 2, 3)]
    worst, details = _pullback_part(cfg, rng, models)
    tol = cfg.tolerance_for(claim, 1.0)
    return _report(cfg, claim, _descriptors(models), cfg.points, worst, tol, details)


def _claim_cigar_pullback(cfg: RunConfig) -> VerificationReport:
    claim = "cigar-pullback"
    rng = cfg.rng_for(claim)
    models = [CigarProductPotential(n) for n in (1, 2, 3, 4)]
    models.append(poly_test_model())
    worst, details = _pullback_part(cfg, rng, models)
    tol = cfg.tolerance_for(claim, 1.0)
    return _report(cfg, claim, _descriptors(models), cfg.points, worst, tol, details)


def _claim_profile_ode(cfg: RunConfig) -> VerificationReport:
    claim = "profile-ode"
    grid = np.linspace(-10.0, 10.0, 200)
    per_n = {}
    worst = 0.0
    for n in (1, 2, 3):
        profile = SolitonProfile(n)
        resid = max(profile.ode_residual(t) for t in grid)
        inv = max(profile.inversion_residual(t) for t in (-25.0, -5.0, 0.0, 5.0, 25.0, 400.0))
        per_n[f"n={n}"] = {"ode_residual": resid, "inversion_residual": inv}
        worst = max(worst, resid)
    tol = cfg.tolerance_for(claim, 1e-9)
    details = {"grid": [-10.0, 10.0, 200], "per_n": per_n}
    return _report(cfg, claim, [{"kind": "soliton", "n": n} for n in (1, 2, 3)], 200, worst, tol, details)


def _claim_profile_closed_form(cfg: RunConfig) -> VerificationReport:
    claim = "profile-closed-form"
    profile = SolitonProfile(1)
    grid = np.linspace(-20.0, 20.0, 200)
    gap_prime = max(abs(profile.u_prime(t) - log1p(exp(t))) for t in grid)
    gap_second = max(
        abs(profile.u_second(t) - exp(t) / (1.0 + exp(t))) for t in grid
    )
    tol = cfg.tolerance_for(claim, 1e-10)
    details = {
        "grid": [-20.0, 20.0, 200],
        "max_gap_u_prime": gap_prime,
        "max_gap_u_second": gap_second,
    }
    return _report(cfg, claim, {"kind": "soliton", "n": 1}, 200, gap_prime, tol, details)


def _claim_profile_limits(cfg: RunConfig) -> VerificationReport:
    claim = "profile-limits"
    checkpoints = (50.0, 100.0, 200.0)
    per_n = {}
    worst = 0.0
    for n in (1, 2, 3):
        profile = SolitonProfile(n)
        slope_gaps = [abs(profile.u_prime(t) / t - n) for t in checkpoints]
        second_gaps = [abs(profile.u_second(t) - n) for t in checkpoints]
        slope_part = slope_gaps[-1] / (0.05 * n)
        second_part = second_gaps[-1] / 0.05
        # gaps below the solver-noise floor count as converged: their ups and
        # downs are roundoff, not a monotonicity signal
        floor = 1e-9
        mono_violation = max(
            max(np.diff(np.maximum(slope_gaps, floor))),
            max(np.diff(np.maximum(second_gaps, floor))),
        )
        mono_part = 0.0 if mono_violation <= 1e-12 else 1.0 + mono_violation
        per_n[f"n={n}"] = {
            "slope_gaps": slope_gaps,
            "second_gaps": second_gaps,
            "bounds": {"slope": 0.05 * n, "second": 0.05},
        }
        worst = max(worst, slope_part, second_part, mono_part)
    tol = cfg.tolerance_for(claim, 1.0)
    details = {"checkpoints": list(checkpoints), "per_n": per_n}
    return _report(cfg, claim, [{"kind": "soliton", "n": n} for n in (1, 2, 3)], len(checkpoints), worst, tol, details)


def _claim_cigar_curvature(cfg: RunConfig) -> VerificationReport:
    claim = "cigar-curvature"
    rng = cfg.rng_for(claim)
    identity_bound, mixed_bound, fd_bound = 1e-8, 1e-8, 1e-5
    per_model = {}
    worst = 0.0
    for n in (1, 2, 3):
        model = CigarProductPotential(n)
        pts = _sample_points(rng, cfg.points, n, cfg.radius)
        identity_res = 0.0
        mixed_res = 0.0
        symmetry_res = 0.0
        for z in pts:
            r = curvature_at(model, z)
            t = radial_coords(z)
            for j in range(n):
                identity_res = max(
                    identity_res, abs(r[j, j, j, j].real * (1.0 + t[j]) ** 3 - 1.0)
                )
            mask = np.ones((n,) * 4, dtype=bool)
            idx = np.arange(n)
            mask[idx, idx, idx, idx] = False
            mixed_res = max(mixed_res, float(np.max(np.abs(r[mask]), initial=0.0)))
            symmetry_res = max(symmetry_res, curvature_symmetry_residual(r))
        fd_res = 0.0
        for z in pts[:25]:
            r = curvature_at(model, z)
            r_fd = curvature_at(model, z, method="fd")
            fd_res = max(fd_res, float(np.max(np.abs(r - r_fd))))
        per_model[model.name] = {
            "identity": identity_res,
            "mixed": mixed_res,
            "fd_agreement": fd_res,
            "symmetry": symmetry_res,
        }
        worst = max(
            worst, identity_res / identity_bound, mixed_res / mixed_bound, fd_res / fd_bound
        )
    tol = cfg.tolerance_for(claim, 1.0)
    details = {
        "bounds": {"identity": identity_bound, "mixed": mixed_bound, "fd": fd_bound},
        "per_model": per_model,
    }
    return _report(cfg, claim, [{"kind": "cigar", "n": n} for n in (1, 2, 3)], cfg.points, worst, tol, details)


def _random_pair(rng: np.random.Generator) -> HoloCurvePair:
    def coeffs() -> np.ndarray:
        return 0.7 * (rng.standard_normal(3) + 1j * rng.standard_normal(3))

    return HoloCurvePair(coeffs(), coeffs())


def _claim_defect_identity(cfg: RunConfig) -> VerificationReport:
    claim = "defect-identity"
    rng = cfg.rng_for(claim)
    agree_bound, phase_bound, sign_bound = 1e-8, 1e-12, 1e-12
    agree_res = 0.0
    sign_res = 0.0
    for _ in range(20):
        pair = _random_pair(rng)
        pts = 1.5 * np.sqrt(rng.uniform(size=50)) * np.exp(
            2j * np.pi * rng.uniform(size=50)
        )
        for z in pts:
            direct, via_a = curvature_defect(pair, complex(z))
            agree_res = max(agree_res, abs(direct - via_a) / max(1.0, abs(direct)))
            sign_res = max(sign_res, direct)
    phase_res = 0.0
    identity_pair_coeffs = (1.0,)
    for _ in range(20):
        theta = rng.uniform(0.0, 2.0 * np.pi)
        alpha = complex(np.cos(theta), np.sin(theta))
        pair = HoloCurvePair(identity_pair_coeffs, (alpha,))
        for z in 1.5 * np.sqrt(rng.uniform(size=10)) * np.exp(
            2j * np.pi * rng.uniform(size=10)
        ):
            phase_res = max(phase_res, abs(a_obstruction(pair, complex(z))))
    worst = max(
        agree_res / agree_bound, phase_res / phase_bound, max(sign_res, 0.0) / sign_bound
    )
    tol = cfg.tolerance_for(claim, 1.0)
    details = {
        "bounds": {"agreement": agree_bound, "phase_curves": phase_bound, "sign": sign_bound},
        "agreement": agree_res,
        "phase_curves": phase_res,
        "max_direct_defect": sign_res,
        "pairs": 20,
        "points_per_pair": 50,
    }
    return _report(cfg, claim, {"kind": "cigar", "n": 2}, 20 * 50, worst, tol, details)


def _claim_total_geodesy(cfg: RunConfig) -> VerificationReport:
    claim = "total-geodesy"
    rng = cfg.rng_for(claim)
    catalog_bound, counter_bound = 1e-7, 1e-2
    catalog_res = 0.0
    per_embedding = {}
    for n in (2, 3):
        model = CigarProductPotential(n)
        for i, emb in enumerate(standard_catalog(n, seed=cfg.seed % 1000)):
            p = 0.8 * (rng.standard_normal(emb.k) + 1j * rng.standard_normal(emb.k))
            q = rng.standard_normal(emb.k) + 1j * rng.standard_normal(emb.k)
            res = total_geodesy_residual(
                model, emb, emb.embed(p), emb.matrix @ q, cfg.geodesic_length
            )
            per_embedding[f"cigar-n{n}/{i}:sigma={emb.sigma}"] = res
            catalog_res = max(catalog_res, res)
    soliton = SolitonPotential(SolitonProfile(2))
    for i, emb in enumerate(standard_catalog(2, seed=cfg.seed % 1000)):
        p = 0.8 * (rng.standard_normal(emb.k) + 1j * rng.standard_normal(emb.k))
        q = rng.standard_normal(emb.k) + 1j * rng.standard_normal(emb.k)
        res = total_geodesy_residual(
            soliton, emb, emb.embed(p), emb.matrix @ q, cfg.geodesic_length
        )
        per_embedding[f"soliton-n2/{i}:sigma={emb.sigma}"] = res
        catalog_res = max(catalog_res, res)
    pair = graph_counterexample_pair()
    departure = max(
        curve_geodesy_residual(CigarProductPotential(2), pair, w0, cfg.geodesic_length)
        for w0 in (0.5, 0.9)
    )
    worst = max(catalog_res / catalog_bound, counter_bound / departure)
    tol = cfg.tolerance_for(claim, 1.0)
    details = {
        "bounds": {"catalog": catalog_bound, "counterexample_min": counter_bound},
        "catalog_max_residual": catalog_res,
        "counterexample_departure": departure,
        "per_embedding": per_embedding,
        "arclength": cfg.geodesic_length,
    }
    return _report(
        cfg,
        claim,
        [{"kind": "cigar", "n": 2}, {"kind": "cigar", "n": 3}, {"kind": "soliton", "n": 2}],
        len(per_embedding),
        worst,
        tol,
        details,
    )


def _claim_ciriza(cfg: RunConfig) -> VerificationReport:
    claim = "ciriza-linearity"
    rng = cfg.rng_for(claim)
    residual_bound = 1e-9
    worst = 0.0
    per_embedding = {}
    for n in (2, 3, 4):
        dm = DarbouxMap(CigarProductPotential(n))
        for i, emb in enumerate(standard_catalog(n, seed=cfg.seed % 1000)):
            report = ciriza_image_check(
                dm, emb, samples=50, radius=2.0, seed=int(rng.integers(2**31))
            )
            per_embedding[f"cigar-n{n}/{i}:sigma={emb.sigma}"] = {
                "residual": report.max_residual,
                "rank": report.rank,
                "k": report.expected_rank,
            }
            worst = max(worst, report.max_residual / residual_bound)
            if report.rank != report.expected_rank:
                worst = max(worst, 2.0)
    dm2 = DarbouxMap(CigarProductPotential(2))
    counter_rank = curve_image_rank(dm2, graph_counterexample_pair(), seed=int(rng.integers(2**31)))
    if counter_rank < 2:
        worst = max(worst, 2.0)
    tol = cfg.tolerance_for(claim, 1.0)
    details = {
        "bounds": {"residual": residual_bound},
        "per_embedding": per_embedding,
        "counterexample_rank": counter_rank,
        "samples_per_embedding": 50,
    }
    return _report(
        cfg,
        claim,
        [{"kind": "cigar", "n": n} for n in (2, 3, 4)],
        50,
        worst,
        tol,
        details,
    )


def _claim_side_conditions(cfg: RunConfig) -> VerificationReport:
    claim = "map-side-conditions"
    rng = cfg.rng_for(claim)
    per_model = {}
    worst = 0.0
    for model in shipped_models():
        region = SampleRegion(
            radius=cfg.radius, count=cfg.points, seed=int(rng.integers(2**31))
        )
        cond0 = cond0_scan(model, region)
        dm = DarbouxMap(model)
        directions = unit_directions(model.n, cfg.rays, rng)
        properness = properness_auto_scan(dm, directions, cfg.properness_threshold)
        cond0_part = 0.0 if cond0.min_value >= 0.0 else 1.0 + abs(cond0.min_value)
        eig_part = 0.0 if cond0.min_metric_eigenvalue > 0.0 else 1.0 + abs(
            cond0.min_metric_eigenvalue
        )
        proper_part = 0.0 if properness.passed else 1.0
        per_model[model.name] = {
            "min_first_deriv": cond0.min_value,
            "min_metric_eigenvalue": cond0.min_metric_eigenvalue,
            "properness_pass": properness.passed,
            "final_log_growth": [float(v) for v in properness.final_log_values],
            "top_radius": properness.radii[-1],
        }
        worst = max(worst, cond0_part, eig_part, proper_part)
    tol = cfg.tolerance_for(claim, 1.0)
    details = {
        "per_model": per_model,
        "rays": cfg.rays,
        "threshold": cfg.properness_threshold,
    }
    return _report(
        cfg,
        claim,
        [m.descriptor() for m in shipped_models()],
        cfg.points,
        worst,
        tol,
        details,
    )


_CLAIM_FUNCTIONS: dict[str, Callable[[RunConfig], VerificationReport]] = {
    "soliton-pullback": _claim_soliton_pullback,
    "cigar-pullback": _claim_cigar_pullback,
    "profile-ode": _claim_profile_ode,
    "profile-closed-form": _claim_profile_closed_form,
    "profile-limits": _claim_profile_limits,
    "cigar-curvature": _claim_cigar_curvature,
    "defect-identity": _claim_defect_identity,
    "total-geodesy": _claim_total_geodesy,
    "ciriza-linearity": _claim_ciriza,
    "map-side-conditions": _claim_side_conditions,
}

CLAIM_IDS: tuple[str, ...] = tuple(sorted(_CLAIM_FUNCTIONS))


def run_claim(claim: str, cfg: RunConfig) -> VerificationReport:
    """Run one claim; solver failures become failed reports, not crashes."""
    if claim not in _CLAIM_FUNCTIONS:
        raise ValueError(f"unknown claim id {claim!r}")
    start = time.perf_counter()
    try:
        report = _CLAIM_FUNCTIONS[claim](cfg)
    except Exception as err:  # noqa: BLE001 - failures must surface as reports
        report = VerificationReport(
            claim=claim,
            model=None,
            samples=0,
            seed=cfg.seed,
            max_residual=float("inf"),
            tolerance=cfg.tolerance_for(claim, 1.0),
            details={"error": f"{type(err).__name__}: {err}"},
        )
    elapsed = time.perf_counter() - start
    return VerificationReport(
        claim=report.claim,
        model=report.model,
        samples=report.samples,
        seed=report.seed,
        max_residual=report.max_residual,
        tolerance=report.tolerance,
        details=report.details,
        wall_time_s=elapsed,
    )


def run_suite(cfg: RunConfig) -> list[VerificationReport]:
    """Run every enabled claim, ordered by claim id."""
    enabled = cfg.claims if cfg.claims is not None else CLAIM_IDS
    return [run_claim(claim, cfg) for claim in sorted(enabled)]


def suite_passed(reports: Sequence[VerificationReport]) -> bool:
    return all(r.passed for r in reports)


# ---------------------------------------------------------------------------
# one-shot pullback report (CLI schema)
# ---------------------------------------------------------------------------


def pullback_report(
    model: PotentialModel,
    points: int = 100,
    radius: float = 5.0,
    seed: int = 20260814,
    tolerance: float = 1e-8,
    method: str = "analytic",
) -> dict:
    """The fixed five-key JSON report for the pullback identity check."""
    rng = np.random.default_rng(seed)
    dm = DarbouxMap(model)
    pts = _sample_points(rng, points, model.n, radius)
    residual = max(dm.pullback_residual(z, method=method) for z in pts)
    return {
        "model": model.name,
        "n": model.n,
        "max_residual": float(residual),
        "points_checked": int(points),
        "pass": bool(residual <= tolerance),
    }


# ---------------------------------------------------------------------------
# plot-data emission
# ---------------------------------------------------------------------------


def _resolve_out(out: str | Path | None, default_name: str, outdir: str | None = None) -> Path:
    if out is not None:
        path = Path(out)
        if not path.is_absolute() and (outdir or os.environ.get(OUTDIR_ENV)):
            path = Path(outdir or os.environ[OUTDIR_ENV]) / path
    else:
        path = Path(outdir or os.environ.get(OUTDIR_ENV) or ".") / default_name
    path.parent.mkdir(parents=True, exist_ok=True)
    return path


def _write_csv(path: Path, header: Sequence[str], rows) -> Path:
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([repr(float(v)) for v in row])
    return path


def emit_plot_data(
    kind: str, params: Mapping | None = None, out: str | Path | None = None
) -> Path:
    """Write one CSV data file; returns its path.

    Kinds: "profile" (t, u_prime, u_second, ode_residual), "geodesic"
    (tau, coordinates, energy drift), "residual-heatmap" (x, y, pullback
    residual over a complex-plane slice).  Relative outputs land in the
    directory named by the DARBOUXKIT_OUTDIR environment variable.
    """
    params = dict(params or {})
    outdir = params.pop("outdir", None)
    if kind == "profile":
        n = int(params.pop("n", 2))
        t_min = float(params.pop("t_min", -10.0))
        t_max = float(params.pop("t_max", 10.0))
        count = int(params.pop("count", 200))
        _reject_extras(kind, params)
        rows = profile_table(SolitonProfile(n), t_min, t_max, count)
        path = _resolve_out(out, f"profile-n{n}.csv", outdir)
        return _write_csv(path, ["t", "u_prime", "u_second", "ode_residual"], rows)
    if kind == "geodesic":
        desc = params.pop("model", {"kind": "cigar", "n": 2})
        model = model_from_descriptor(desc)
        start = np.asarray(params.pop("start", [0.0] * model.n), dtype=complex)
        vel = np.asarray(params.pop("vel", [1.0] + [0.0] * (model.n - 1)), dtype=complex)
        length = float(params.pop("length", 10.0))
        steps = params.pop("steps", None)
        _reject_extras(kind, params)
        trajectory = geodesic_integrate(
            model, GeodesicState(start, vel), length, steps=int(steps) if steps else None
        )
        e0 = trajectory.energies[0]
        drift = np.abs(trajectory.energies - e0) / (abs(e0) if e0 != 0.0 else 1.0)
        header = ["tau"]
        for j in range(model.n):
            header += [f"re_z{j + 1}", f"im_z{j + 1}"]
        header.append("energy_drift")
        rows = []
        for i, tau in enumerate(trajectory.times):
            row = [tau]
            for j in range(model.n):
                row += [trajectory.points[i, j].real, trajectory.points[i, j].imag]
            row.append(drift[i])
            rows.append(row)
        path = _resolve_out(out, f"geodesic-{model.name}.csv", outdir)
        return _write_csv(path, header, rows)
    if kind == "residual-heatmap":
        desc = params.pop("model", {"kind": "cigar", "n": 1})
        model = model_from_descriptor(desc)
        radius = float(params.pop("radius", 3.0))
        count = int(params.pop("count", 41))
        _reject_extras(kind, params)
        dm = DarbouxMap(model)
        axis = np.linspace(-radius, radius, count)
        rows = []
        for x in axis:
            for y in axis:
                z = np.zeros(model.n, dtype=complex)
                z[0] = complex(x, y)
                rows.append([x, y, dm.pullback_residual(z)])
        path = _resolve_out(out, f"residual-heatmap-{model.name}.csv", outdir)
        return _write_csv(path, ["x", "y", "residual"], rows)
    raise ValueError(f"unknown plot-data kind {kind!r}")


def _reject_extras(kind: str, params: Mapping) -> None:
    if params:
        raise ValueError(f"unknown parameters for {kind!r}: {sorted(params)}")
