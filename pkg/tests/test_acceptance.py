"""Acceptance gate: every shipped guarantee, one test per criterion.

Each test pins the exact tolerance the package promises; pytest -v shows one
pass/fail line per criterion.  Sampling is seeded so the gate is reproducible.
"""

import time

import numpy as np
import pytest

from darbouxkit import (
    CigarProductPotential,
    DarbouxMap,
    HoloCurvePair,
    RunConfig,
    SampleRegion,
    SolitonProfile,
    a_obstruction,
    ciriza_image_check,
    cond0_scan,
    curvature_at,
    curvature_defect,
    curve_geodesy_residual,
    curve_image_rank,
    graph_counterexample_pair,
    poly_test_model,
    properness_auto_scan,
    radial_coords,
    run_suite,
    shipped_models,
    soliton_potential,
    standard_catalog,
    total_geodesy_residual,
    unit_directions,
)

RADIUS = 5.0
POINTS = 100
SEED = 20260814


def _sample(n, count=POINTS, radius=RADIUS, seed=SEED):
    return SampleRegion(radius=radius, count=count, seed=seed).sample(n)


def _pullback_bounds(models):
    worst_analytic = 0.0
    worst_fd = 0.0
    for model in models:
        dm = DarbouxMap(model)
        for z in _sample(model.n):
            worst_analytic = max(worst_analytic, dm.pullback_residual(z))
        for z in _sample(model.n)[:POINTS]:
            worst_fd = max(worst_fd, dm.pullback_residual(z, method="fd"))
    return worst_analytic, worst_fd


def test_criterion_01_soliton_pullback():
    models = [soliton_potential(SolitonProfile(n)) for n in (1, 2, 3)]
    analytic, fd = _pullback_bounds(models)
    assert analytic <= 1e-8
    assert fd <= 1e-5


def test_criterion_02_cigar_and_poly_pullback():
    models = [CigarProductPotential(n) for n in (1, 2, 3, 4)] + [poly_test_model()]
    analytic, fd = _pullback_bounds(models)
    assert analytic <= 1e-8
    assert fd <= 1e-5


def test_criterion_03_profile_ode_and_closed_form():
    for n in (1, 2, 3):
        profile = SolitonProfile(n)
        worst = max(abs(profile.ode_residual(t)) for t in np.linspace(-10.0, 10.0, 200))
        assert worst <= 1e-9, f"n={n}"
    p1 = SolitonProfile(1)
    gap = max(
        abs(p1.u_prime(t) - np.logaddexp(0.0, t)) for t in np.linspace(-20.0, 20.0, 200)
    )
    assert gap <= 1e-10


def test_criterion_04_profile_limits():
    checkpoints = (50.0, 100.0, 200.0)
    floor = 1e-9  # below this the gaps are solver noise, treated as converged
    for n in (1, 2, 3):
        profile = SolitonProfile(n)
        slope_gaps = [abs(profile.u_prime(t) / t - n) for t in checkpoints]
        second_gaps = [abs(profile.u_second(t) - n) for t in checkpoints]
        assert slope_gaps[-1] <= 0.05 * n, f"n={n}"
        assert second_gaps[-1] <= 0.05, f"n={n}"
        for gaps in (slope_gaps, second_gaps):
            clipped = np.maximum(gaps, floor)
            assert np.all(np.diff(clipped) <= 1e-12), f"n={n} gaps={gaps}"


def test_criterion_05_cigar_curvature():
    for n in (1, 2, 3):
        model = CigarProductPotential(n)
        pts = _sample(n)
        mask = np.ones((n,) * 4, dtype=bool)
        idx = np.arange(n)
        mask[idx, idx, idx, idx] = False
        for z in pts:
            r = curvature_at(model, z)
            t = radial_coords(z)
            for j in range(n):
                assert abs(r[j, j, j, j].real * (1.0 + t[j]) ** 3 - 1.0) <= 1e-8
            assert np.max(np.abs(r[mask]), initial=0.0) <= 1e-8
        for z in pts[:25]:
            ra = curvature_at(model, z, method="analytic")
            rf = curvature_at(model, z, method="fd")
            assert np.max(np.abs(ra - rf)) <= 1e-5


def test_criterion_06_defect_identity():
    rng = np.random.default_rng(SEED)
    for _ in range(20):
        coeffs = 0.7 * (rng.standard_normal((2, 3)) + 1j * rng.standard_normal((2, 3)))
        pair = HoloCurvePair(tuple(coeffs[0]), tuple(coeffs[1]))
        radii = 1.5 * np.sqrt(rng.uniform(size=50))
        angles = rng.uniform(0.0, 2.0 * np.pi, size=50)
        for z in radii * np.exp(1j * angles):
            try:
                direct, via = curvature_defect(pair, z)
            except ValueError:
                continue  # degenerate tangent at isolated points
            assert abs(direct - via) / max(1.0, abs(direct)) <= 1e-8
    for _ in range(20):
        theta = rng.uniform(0.0, 2.0 * np.pi)
        alpha = complex(np.cos(theta), np.sin(theta))
        pair = HoloCurvePair((1.0,), (alpha,))
        for z in 1.5 * (rng.standard_normal(5) + 1j * rng.standard_normal(5)):
            assert abs(a_obstruction(pair, z)) <= 1e-12


def test_criterion_07_total_geodesy():
    rng = np.random.default_rng(SEED)
    cases = [
        (CigarProductPotential(2), standard_catalog(2)),
        (CigarProductPotential(3), standard_catalog(3)),
        (soliton_potential(SolitonProfile(2)), standard_catalog(2)),
    ]
    for model, catalog in cases:
        for emb in catalog:
            p = 0.8 * (rng.standard_normal(emb.k) + 1j * rng.standard_normal(emb.k))
            q = rng.standard_normal(emb.k) + 1j * rng.standard_normal(emb.k)
            res = total_geodesy_residual(model, emb, emb.embed(p), emb.matrix @ q, 10.0)
            assert res <= 1e-7, (model.name, emb.sigma, res)
    model = CigarProductPotential(2)
    pair = graph_counterexample_pair()
    departures = [curve_geodesy_residual(model, pair, w0, 10.0) for w0 in (0.5, 0.9)]
    assert max(departures) > 1e-2


def test_criterion_08_image_linearity():
    for n in (2, 3, 4):
        dm = DarbouxMap(CigarProductPotential(n))
        for emb in standard_catalog(n):
            rep = ciriza_image_check(dm, emb, samples=50)
            assert rep.max_residual <= 1e-9, (n, emb.sigma)
            assert rep.rank == emb.k, (n, emb.sigma)
    for n in (2, 3):
        dm = DarbouxMap(soliton_potential(SolitonProfile(n)))
        for emb in standard_catalog(n):
            rep = ciriza_image_check(dm, emb, samples=50)
            assert rep.passed, (n, emb.sigma)
    dm = DarbouxMap(CigarProductPotential(2))
    assert curve_image_rank(dm, graph_counterexample_pair()) > 1


def test_criterion_09_side_conditions():
    rng = np.random.default_rng(SEED)
    for model in shipped_models():
        cond0 = cond0_scan(model, SampleRegion(radius=RADIUS, count=POINTS))
        assert cond0.passed, model.name
        assert min(cond0.min_first_derivs) >= 0.0, model.name
        dm = DarbouxMap(model)
        prop = properness_auto_scan(dm, unit_directions(model.n, 8, rng), threshold=1e3)
        assert prop.passed, model.name
        assert np.all(prop.strictly_increasing), model.name
        assert np.all(prop.final_log_values > np.log(1e3)), model.name


def test_criterion_10_determinism_and_wall_time():
    cfg = RunConfig()
    start = time.perf_counter()
    first = run_suite(cfg)
    elapsed = time.perf_counter() - start
    assert elapsed < 120.0, f"suite took {elapsed:.1f}s"
    second = run_suite(cfg)
    assert all(r.passed for r in first), [r.summary_line() for r in first]
    for a, b in zip(first, second):
        assert a.body() == b.body(), a.claim
