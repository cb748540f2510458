"""Tests for link sampling, arc deformation, tangency fitting, and the
foliation property checks.

Numeric expectations were computed independently before being frozen here:
power-law contact orders from hand-built curves, deviation scaling from the
first-order theory (deviation linear in the deformation scale), and the
obstruction-locus geometry of the z^5 + x^15 + x*y^7 family (singular locus
the y-axis, so its link is the circle (0, e^{i*theta}, 0)).
"""

from __future__ import annotations

import csv
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from germlab.foliation import (
    DEFAULT_T_GRID,
    LinkSample,
    deform_arc,
    sample_link,
    sigma_link_cloud,
    tangency_exponent,
    verify_foliation,
    write_arc_csv,
)
from germlab.germ import germ_system

from conftest import P, F


@pytest.fixture(scope="module")
def sphere():
    return germ_system(
        ["x", "y", "z"],
        [P("x^2 + y^2 + z^2")],
        [P("z^3")],
        [F(1, 2), F(1, 2), F(1, 2)],
    )


@pytest.fixture(scope="module")
def briancon_speder():
    return germ_system(
        ["x", "y", "z"],
        [P("z^5 + x^15 + x*y^7")],
        [P("z*y^6")],
        [F(1, 15), F(2, 15), F(3, 15)],
    )


# ---------------------------------------------------------------------------
# link sampling


def test_link_samples_lie_on_link(sphere):
    samples = sample_link(sphere, 10, seed=0)
    assert len(samples) == 10
    for s in samples:
        assert s.residual < 1e-12
        norm = math.sqrt(sum(abs(c) ** 2 for c in s.s))
        assert abs(norm - 1.0) < 1e-10
        value = sphere.principal[0].evaluate_numeric(s.s)
        assert abs(value) < 1e-12


def test_link_sampling_is_deterministic(sphere):
    a = sample_link(sphere, 5, seed=3)
    b = sample_link(sphere, 5, seed=3)
    assert a == b
    c = sample_link(sphere, 5, seed=4)
    assert a != c


def test_link_sampling_accepts_bare_equations():
    # A hyperplane is not a valid germ system (it is smooth of order 1),
    # but its link can still be sampled from the raw equation.
    samples = sample_link([P("x")], 6, seed=0)
    assert len(samples) == 6
    for s in samples:
        assert abs(s.s[0]) < 1e-10


def test_link_sampling_warns_when_link_is_empty():
    # |x^2 + y^2 + z^2| <= |x|^2 + |y|^2 + |z|^2 = 1 < 5 on the unit
    # sphere, so this affine variety misses the sphere entirely.
    with pytest.warns(UserWarning, match="link may be empty"):
        out = sample_link([P("x^2 + y^2 + z^2 + 5")], 3, seed=0, max_attempt_factor=5)
    assert out == []


def test_link_sampling_rejects_constant_equations():
    with pytest.raises(ValueError):
        sample_link([P("3")], 2, seed=0)
    with pytest.raises(ValueError):
        sample_link(sphere, -1, seed=0) if False else sample_link([P("x")], -1, seed=0)


def test_sigma_cloud_fills_distances(sphere, briancon_speder):
    # The sphere germ has isolated singularity: empty cloud, inf distances.
    assert sigma_link_cloud(sphere, count=20, seed=0) == []
    plain = sample_link(sphere, 3, seed=0)
    assert all(s.distance_to_sigma == math.inf for s in plain)

    cloud = sigma_link_cloud(briancon_speder, count=30, seed=0)
    assert len(cloud) == 30
    samples = sample_link(briancon_speder, 3, seed=0, sigma_cloud=cloud)
    assert all(math.isfinite(s.distance_to_sigma) for s in samples)


def test_sigma_link_cloud_lands_on_singular_circle(briancon_speder):
    # Sing of z^5 + x^15 + x*y^7 is the y-axis; its link is the circle
    # (0, e^{i*theta}, 0).
    cloud = sigma_link_cloud(briancon_speder, count=40, seed=0)
    assert len(cloud) == 40
    arr = np.array(cloud)
    assert np.max(np.abs(arr[:, 0])) < 1e-8
    assert np.max(np.abs(arr[:, 2])) < 1e-4
    assert np.max(np.abs(np.abs(arr[:, 1]) - 1.0)) < 1e-8


# ---------------------------------------------------------------------------
# arc deformation


def test_zero_epsilon_arc_is_the_exact_power_law(sphere):
    samples = sample_link(sphere, 4, seed=1)
    w = np.array([float(wi) for wi in sphere.weights])
    for s in samples:
        arc = deform_arc(sphere, 0.0, s)
        assert arc.t_grid == DEFAULT_T_GRID
        assert all(arc.converged)
        assert all(z == (0j,) for z in arc.z_values)
        assert arc.iteration_residuals == ((),) * len(DEFAULT_T_GRID)
        for t, point in zip(arc.t_grid, arc.points):
            expected = (t**w) * np.asarray(s.s, dtype=complex)
            assert np.array_equal(np.asarray(point), expected)


def test_perturbed_sphere_arc_converges_on_the_full_grid(sphere):
    samples = sample_link(sphere, 10, seed=0)
    arc = deform_arc(sphere, 0.5, samples[0])
    assert all(arc.converged)
    assert max(arc.residuals) < 1e-10
    assert arc.gram_determinant == pytest.approx(4.0, abs=1e-9)


def test_arc_residual_matches_direct_evaluation(sphere):
    eps = 0.5
    s = sample_link(sphere, 1, seed=2)[0]
    arc = deform_arc(sphere, eps, s)
    f = sphere.principal[0]
    q = sphere.perturbation[0]
    for t, point, reported in zip(arc.t_grid, arc.points, arc.residuals):
        value = f.evaluate_numeric(point) + eps * q.evaluate_numeric(point)
        assert abs(value) / t == pytest.approx(reported, rel=1e-9, abs=1e-15)


def test_newton_runs_are_short_and_quadratic(sphere):
    s = sample_link(sphere, 1, seed=0)[0]
    arc = deform_arc(sphere, 0.5, s)
    lengths = [len(h) for h in arc.iteration_residuals]
    assert max(lengths) <= 5  # warm starts keep every run short
    assert lengths[-1] <= lengths[0]
    first = arc.iteration_residuals[0]
    assert all(b < a for a, b in zip(first, first[1:]))
    # quadratic contraction once inside the basin
    for a, b in zip(first, first[1:]):
        assert b <= 10.0 * a * a


def test_arc_deviation_scales_linearly_with_epsilon(sphere):
    t_grid = tuple(0.5**k for k in range(1, 9))
    s = sample_link(sphere, 1, seed=0)[0]
    reference = deform_arc(sphere, 0.0, s, t_grid)
    deviations = []
    for eps in (0.08, 0.04, 0.02, 0.01):
        arc = deform_arc(sphere, eps, s, t_grid)
        deviations.append(
            max(
                np.linalg.norm(np.asarray(p) - np.asarray(q)) / np.linalg.norm(np.asarray(q))
                for p, q in zip(arc.points, reference.points)
            )
        )
    assert all(b < a for a, b in zip(deviations, deviations[1:]))
    for a, b in zip(deviations, deviations[1:]):
        assert a / b == pytest.approx(2.0, abs=0.15)


def test_grid_validation(sphere):
    s = sample_link(sphere, 1, seed=0)[0]
    for bad in ([], [0.5, 0.5], [0.25, 0.5], [0.5, -0.25], [0.0]):
        with pytest.raises(ValueError, match="decreasing"):
            deform_arc(sphere, 0.5, s, bad)


def test_same_order_epsilon_cap(briancon_speder):
    s = sample_link(briancon_speder, 1, seed=0)[0]
    assert briancon_speder.is_same_order()
    with pytest.raises(ValueError, match="same-order cap"):
        deform_arc(briancon_speder, 0.5, s)
    arc = deform_arc(briancon_speder, 0.5, s, allow_large_epsilon=True)
    assert arc.epsilon == 0.5
    # at or below the cap no override is needed
    deform_arc(briancon_speder, 0.1, s)


def test_sigma_exclusion_radius(briancon_speder):
    near = LinkSample(s=(0j, 1 + 0j, 0j), residual=0.0, distance_to_sigma=0.01)
    with pytest.raises(ValueError, match="exclusion radius"):
        deform_arc(briancon_speder, 0.1, near, min_sigma_distance=0.05)
    # without the exclusion the call is allowed
    deform_arc(briancon_speder, 0.1, near)


def test_coordinate_plane_membership_is_bitwise(briancon_speder):
    # (0, 1, 0) lies on the link (the equation and the perturbation both
    # vanish on the y-axis); the deformed arc must stay in V(x, z) exactly.
    plane = LinkSample(s=(0j, 1 + 0j, 0j), residual=0.0)
    arc = deform_arc(briancon_speder, 0.1, plane)
    points = np.array(arc.points)
    assert np.all(points[:, 0] == 0.0)
    assert np.all(points[:, 2] == 0.0)
    assert all(arc.converged)
    # the gradient certificate degenerates on the singular axis
    assert arc.gram_determinant == 0.0


def _bs_link_point_near_axis(system, eta):
    """An exact point of the principal link at distance ~ (eta)^(1/5)
    from the singular circle (0, e^{i*theta}, 0), built by hand."""
    y = 1.0
    z = 0.0
    for _ in range(60):
        z = -((eta**15 + eta * y**7) ** (1 / 5))
        y = math.sqrt(1.0 - eta * eta - z * z)
    s = (eta + 0j, y + 0j, z + 0j)
    residual = abs(system.principal[0].evaluate_numeric(s))
    assert residual < 1e-12
    return LinkSample(s=s, residual=residual, distance_to_sigma=math.hypot(eta, z))


def test_divergence_near_the_obstruction_locus(briancon_speder):
    near = _bs_link_point_near_axis(briancon_speder, 1e-10)
    assert near.distance_to_sigma < 0.02
    arc = deform_arc(briancon_speder, 0.1, near)
    # the Newton continuation escapes past the iterate cap: non-convergence
    # across the grid is the numerical signature of the shrinking
    # convergence radius near the obstruction locus
    assert not any(arc.converged)
    assert max(max(abs(c) for c in z) for z in arc.z_values) > 1e3

    cloud = sigma_link_cloud(briancon_speder, count=200, seed=0)
    far = [
        s
        for s in sample_link(briancon_speder, 6, seed=0, sigma_cloud=cloud)
        if s.distance_to_sigma > 0.5
    ]
    assert far
    arc_far = deform_arc(briancon_speder, 0.1, far[0])
    assert all(arc_far.converged)
    assert max(arc_far.residuals) < 1e-10


def test_failure_marks_all_smaller_t(briancon_speder):
    near = _bs_link_point_near_axis(briancon_speder, 1e-10)
    arc = deform_arc(briancon_speder, 0.1, near)
    seen_failure = False
    for ok in arc.converged:
        if not ok:
            seen_failure = True
        assert not (seen_failure and ok)


# ---------------------------------------------------------------------------
# tangency exponents


def _power_law_pair(alpha, k_max=14):
    t = tuple(0.5**k for k in range(1, k_max + 1))
    a = [(ti, ti**alpha) for ti in t]
    b = [(ti, 0.0) for ti in t]
    return (t, a), (t, b)


def test_tangency_of_synthetic_power_law_curves():
    a, b = _power_law_pair(2.0)
    est = tangency_exponent(a, b)
    assert est.alpha == pytest.approx(2.0, abs=0.05)
    assert est.r2 > 0.999
    assert est.window[0] < est.window[1] <= 0.5


@settings(max_examples=30, deadline=None)
@given(st.floats(min_value=1.2, max_value=3.0, allow_nan=False))
def test_tangency_recovers_random_exponents(alpha):
    a, b = _power_law_pair(alpha)
    est = tangency_exponent(a, b)
    assert est.alpha == pytest.approx(alpha, abs=0.08)


def test_tangency_of_identical_arcs_is_infinite(sphere):
    s = sample_link(sphere, 1, seed=0)[0]
    arc = deform_arc(sphere, 0.5, s)
    est = tangency_exponent(arc, arc)
    assert est.alpha == math.inf
    assert est.r2 == 1.0


def test_tangency_grid_and_count_validation(sphere):
    a, _ = _power_law_pair(2.0)
    t_short = tuple(0.5**k for k in range(1, 11))
    b_short = (t_short, [(ti, 0.0) for ti in t_short])
    with pytest.raises(ValueError, match="common t-grid"):
        tangency_exponent(a, b_short)
    tiny, tiny2 = _power_law_pair(2.0, k_max=4)
    with pytest.raises(ValueError, match="insufficient converged points"):
        tangency_exponent(tiny, tiny2)


def test_perturbed_arc_contacts_its_reference_at_the_predicted_order(sphere):
    # delta = 3/2 - 1 = 1/2 and the largest weight is 1/2, so the deformed
    # arc should contact the unperturbed one at order 1 + delta/w = 2.
    s = sample_link(sphere, 1, seed=0)[0]
    perturbed = deform_arc(sphere, 0.5, s)
    reference = deform_arc(sphere, 0.0, s)
    est = tangency_exponent(perturbed, reference)
    assert est.alpha == pytest.approx(2.0, abs=0.05)
    assert est.r2 > 0.999


# ---------------------------------------------------------------------------
# the foliation report


def test_verify_foliation_on_the_perturbed_sphere(sphere):
    samples = sample_link(sphere, 12, seed=0)
    report = verify_foliation(sphere, 0.5, samples, DEFAULT_T_GRID, seed=0)
    assert report.passed
    assert report.failures == ()
    assert report.converged_fraction == 1.0
    assert report.separation_ok
    assert report.coordinate_planes_ok
    assert report.min_separation > 0.1
    assert len(report.arcs) == len(report.reference_arcs) == 12
    assert 0 < len(report.dichotomy) <= 60
    for pair in report.dichotomy:
        assert pair.ok
        # generic link points are pairwise transverse: contact order 1
        assert pair.unperturbed.alpha == pytest.approx(1.0, abs=0.05)
        assert pair.perturbed.alpha == pytest.approx(1.0, abs=0.1)


def test_verify_foliation_is_deterministic(sphere):
    samples = sample_link(sphere, 6, seed=5)
    a = verify_foliation(sphere, 0.5, samples, DEFAULT_T_GRID, seed=1)
    b = verify_foliation(sphere, 0.5, samples, DEFAULT_T_GRID, seed=1)
    assert a == b


def test_verify_foliation_needs_two_samples(sphere):
    samples = sample_link(sphere, 1, seed=0)
    with pytest.raises(ValueError, match="at least 2"):
        verify_foliation(sphere, 0.5, samples)


# ---------------------------------------------------------------------------
# CSV export


def test_write_arc_csv_layout(tmp_path, sphere):
    samples = sample_link(sphere, 2, seed=0)
    arcs = [deform_arc(sphere, 0.5, s) for s in samples]
    path = tmp_path / "arcs.csv"
    write_arc_csv(path, arcs, seed=7)
    rows = list(csv.reader(path.open()))
    assert rows[0] == [
        "seed",
        "s0_re", "s0_im", "s1_re", "s1_im", "s2_re", "s2_im",
        "epsilon_re", "epsilon_im",
        "t",
        "x0_re", "x0_im", "x1_re", "x1_im", "x2_re", "x2_im",
        "residual", "converged",
    ]
    assert len(rows) == 1 + 2 * len(DEFAULT_T_GRID)
    first = rows[1]
    assert first[0] == "7"
    assert float(first[7]) == 0.5 and float(first[8]) == 0.0
    assert float(first[9]) == 0.5  # largest grid point first
    assert first[-1] == "1"
    # values round-trip through repr: the recorded point matches the arc
    point = complex(float(first[10]), float(first[11]))
    assert point == arcs[0].points[0][0]
