"""Numerical arc deformation for perturbed weighted-homogeneous germs.

The weighted-homogeneous arcs ``gamma_s(t) = t^w * s`` through link points
``s`` of the principal variety are deformed onto the perturbed variety as

    gamma_{eps,s}(t) = t^w * (s + eps * h(z(t))),   h(z) = conj(G)^T @ z,

where ``G`` is the rescaled gradient matrix of the principal part at ``s``
(:func:`rescaled_gradient`) and ``z(t)`` in C^r solves the scaled condition

    F(z) = t^{-p} * (f_p + eps * f_{>p})(t^w * (s + eps * h(z))) = 0.

The solver is Newton's method on ``F`` directly, warm-started down a
geometric t-grid (initial ``z = 0`` at the largest t).  The determinant of
the Gram matrix ``G @ conj(G)^T`` — by Cauchy–Binet the sum of the squared
absolute r×r minors of ``G`` — is logged with every arc as the theoretical
invertibility certificate: it vanishes exactly over the obstruction locus
Sigma, and its smallness predicts non-convergence, which is reported (the
radius of convergence shrinks to zero near Link[Sigma]), never hidden.

Everything here is sampled pointwise in floating point; no symbolic Puiseux
expansion is constructed.  Exactness claims are limited to coordinate-plane
preservation: when a link sample has its first block of coordinates exactly
zero, the ansatz forces the matching arc coordinates to stay bitwise zero.
"""

from __future__ import annotations

import csv
import itertools
import math
import random
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Sequence

import numpy as np

from germlab.germ import (
    Budget,
    GermSystem,
    ObstructionLocus,
    sigma,
    weight_splitting,
)
from germlab.poly import Poly

__all__ = [
    "LINK_TOLERANCE",
    "NEWTON_TOLERANCE",
    "FIT_TOLERANCE",
    "SAME_ORDER_EPSILON_CAP",
    "DEFAULT_T_GRID",
    "LinkSample",
    "ArcSample",
    "TangencyEstimate",
    "PairDichotomy",
    "FoliationReport",
    "sample_link",
    "sigma_link_cloud",
    "rescaled_gradient",
    "deform_arc",
    "tangency_exponent",
    "verify_foliation",
    "write_arc_csv",
]


#: residual bound for accepting a projected link point, max_i |f_p_i(s)|.
LINK_TOLERANCE = 1e-10
#: absolute bound on the scaled arc residual max_i |F_i(z)|.
NEWTON_TOLERANCE = 1e-11
#: slack allowed on fitted tangency exponents.
FIT_TOLERANCE = 0.05
#: default |eps| cap for same-order perturbations (overridable).
SAME_ORDER_EPSILON_CAP = 0.1
#: geometric grid 2^-1, 2^-2, ..., 2^-20 (decreasing).
DEFAULT_T_GRID: tuple[float, ...] = tuple(0.5**k for k in range(1, 21))


# ---------------------------------------------------------------------------
# domain types


@dataclass(frozen=True)
class LinkSample:
    """A point of the link of the principal variety: ``s`` on the unit
    sphere with ``f_p(s) = 0`` at tolerance.

    ``distance_to_sigma`` is the distance to a numerically sampled link of
    the obstruction locus, ``inf`` when that locus is the origin alone (or
    no cloud was supplied)."""

    s: tuple[complex, ...]
    residual: float
    distance_to_sigma: float = math.inf


@dataclass(frozen=True)
class ArcSample:
    """One deformed arc, tabulated on a decreasing t-grid.

    ``z_values[k]`` is the ansatz unknown at ``t_grid[k]``, ``points[k]``
    the arc point ``t^w * (s + eps*h(z))``, ``residuals[k]`` the scaled
    residual ``max_i |F_i|`` and ``converged[k]`` whether the solver met
    tolerance there.  After the first failure the solver stops: smaller-t
    entries reuse the last iterate (their residual is reported honestly,
    converged stays False).  ``gram_determinant`` is the invertibility
    certificate det(G conj(G)^T); ``iteration_residuals[k]`` logs the
    per-iteration residuals of the Newton run at ``t_grid[k]``."""

    s: LinkSample
    epsilon: complex
    t_grid: tuple[float, ...]
    z_values: tuple[tuple[complex, ...], ...]
    points: tuple[tuple[complex, ...], ...]
    residuals: tuple[float, ...]
    converged: tuple[bool, ...]
    gram_determinant: float
    iteration_residuals: tuple[tuple[float, ...], ...]


@dataclass(frozen=True)
class TangencyEstimate:
    """Least-squares contact order of two arcs.

    ``alpha`` is the slope of log|a(t)-b(t)| against the log of the arcs'
    distance scale (the mean of the two norms), so that generically
    transverse arc pairs sit at alpha = 1 regardless of the weights;
    ``window = (t_min, t_max)`` is the t-range actually fitted."""

    alpha: float
    r2: float
    window: tuple[float, float]


@dataclass(frozen=True)
class PairDichotomy:
    """Tangency-preservation check for one sample pair (by index)."""

    pair: tuple[int, int]
    unperturbed: TangencyEstimate
    perturbed: TangencyEstimate
    ok: bool


@dataclass(frozen=True)
class FoliationReport:
    """Sample-resolution property checks for one deformation scale.

    ``passed`` requires every dichotomy pair to keep its contact class,
    every distinct pair of arcs to stay separated at the smallest common
    converged t (relative distance above the collision floor), and
    coordinate-plane membership to be preserved bitwise."""

    passed: bool
    failures: tuple[str, ...]
    dichotomy: tuple[PairDichotomy, ...]
    min_separation: float
    separation_ok: bool
    coordinate_planes_ok: bool
    converged_fraction: float
    arcs: tuple[ArcSample, ...]
    reference_arcs: tuple[ArcSample, ...]


# ---------------------------------------------------------------------------
# link sampling


def _evaluate_all(polys: Sequence[Poly], point: np.ndarray) -> np.ndarray:
    values = [p.evaluate_numeric(list(point)) for p in polys]
    return np.asarray(values, dtype=complex)


def _partials_matrix(polys: Sequence[Poly], nvars: int) -> list[list[Poly]]:
    return [[p.partial(j) for j in range(nvars)] for p in polys]


def _gauss_newton_project(
    polys: Sequence[Poly],
    partials: Sequence[Sequence[Poly]],
    start: np.ndarray,
    tolerance: float,
    max_iterations: int = 60,
) -> tuple[np.ndarray, float, bool]:
    """Project ``start`` onto {f = 0} ∩ {|x| = 1} by damped Gauss-Newton on
    the real form of the augmented system.  Returns (point, max |f_i|, ok);
    ok additionally demands | |x|^2 - 1 | <= 1e-12."""
    x = np.asarray(start, dtype=complex)
    nvars = x.shape[0]
    for _ in range(max_iterations):
        vals = _evaluate_all(polys, x)
        sphere = float(np.vdot(x, x).real) - 1.0
        residual = float(np.max(np.abs(vals))) if len(vals) else 0.0
        if residual <= tolerance and abs(sphere) <= 1e-12:
            return x, residual, True
        res_real = np.concatenate([vals.real, vals.imag, [sphere]])
        jac = np.empty((len(vals), nvars), dtype=complex)
        for i, row in enumerate(partials):
            jac[i] = _evaluate_all(row, x)
        jac_real = np.zeros((2 * len(vals) + 1, 2 * nvars))
        jac_real[: len(vals), :nvars] = jac.real
        jac_real[: len(vals), nvars:] = -jac.imag
        jac_real[len(vals) : 2 * len(vals), :nvars] = jac.imag
        jac_real[len(vals) : 2 * len(vals), nvars:] = jac.real
        jac_real[-1, :nvars] = 2.0 * x.real
        jac_real[-1, nvars:] = 2.0 * x.imag
        step, *_ = np.linalg.lstsq(jac_real, -res_real, rcond=None)
        delta = step[:nvars] + 1j * step[nvars:]
        norm_old = float(np.linalg.norm(res_real))
        lam = 1.0
        accepted = False
        while lam >= 2.0**-20:
            x_try = x + lam * delta
            vals_try = _evaluate_all(polys, x_try)
            sphere_try = float(np.vdot(x_try, x_try).real) - 1.0
            norm_try = float(
                np.linalg.norm(
                    np.concatenate([vals_try.real, vals_try.imag, [sphere_try]])
                )
            )
            if norm_try < norm_old or norm_try <= tolerance:
                x = x_try
                accepted = True
                break
            lam /= 2.0
        if not accepted:
            break
    vals = _evaluate_all(polys, x)
    sphere = float(np.vdot(x, x).real) - 1.0
    residual = float(np.max(np.abs(vals))) if len(vals) else 0.0
    return x, residual, residual <= tolerance and abs(sphere) <= 1e-12


def _distance_to_cloud(
    point: np.ndarray, cloud: Sequence[Sequence[complex]] | None
) -> float:
    if not cloud:
        return math.inf
    best = math.inf
    for q in cloud:
        best = min(best, float(np.linalg.norm(point - np.asarray(q, dtype=complex))))
    return best


def sample_link(
    system: GermSystem | Sequence[Poly],
    count: int,
    seed: int,
    *,
    sigma_cloud: Sequence[Sequence[complex]] | None = None,
    tolerance: float = LINK_TOLERANCE,
    max_attempt_factor: int = 100,
) -> list[LinkSample]:
    """``count`` random points of Link[X0] = {f_p = 0} ∩ {|s| = 1}.

    Random complex unit vectors are projected by damped Gauss-Newton on the
    augmented system (f_p = 0, |s|^2 = 1); failed projections are discarded
    and resampled.  Each attempt draws from its own generator seeded by
    (seed, attempt), so results are deterministic under a fixed seed and
    independent of scheduling.  If fewer than ``count`` projections succeed
    after ``max_attempt_factor * count`` attempts (e.g. an empty link at
    this tolerance), the partial list is returned with a warning.

    In place of a germ system a bare equation list is accepted (any
    nonconstant polynomials — e.g. a hyperplane, which the germ constructor
    would reject); arcs still require a full system.

    ``sigma_cloud`` (from :func:`sigma_link_cloud`) fills in
    ``distance_to_sigma``; without it the distance is reported as inf."""
    if count < 0:
        raise ValueError("count must be >= 0")
    if count == 0:
        return []
    if isinstance(system, GermSystem):
        principal = list(system.principal)
        nvars = system.nvars
    else:
        principal = list(system)
        if not principal or any(p.total_degree() < 1 for p in principal):
            raise ValueError("link sampling needs nonconstant equations")
        nvars = principal[0].nvars
    partials = _partials_matrix(principal, nvars)
    samples: list[LinkSample] = []
    attempts = 0
    limit = max_attempt_factor * count
    while len(samples) < count and attempts < limit:
        rng = np.random.default_rng([seed, attempts])
        attempts += 1
        start = rng.standard_normal(nvars) + 1j * rng.standard_normal(nvars)
        start /= np.linalg.norm(start)
        point, residual, ok = _gauss_newton_project(
            principal, partials, start, tolerance
        )
        if not ok:
            continue
        samples.append(
            LinkSample(
                s=tuple(complex(v) for v in point),
                residual=residual,
                distance_to_sigma=_distance_to_cloud(point, sigma_cloud),
            )
        )
    if len(samples) < count:
        warnings.warn(
            f"link sampling produced {len(samples)}/{count} points after "
            f"{attempts} attempts; the link may be empty at tolerance "
            f"{tolerance:g}",
            stacklevel=2,
        )
    return samples


def sigma_link_cloud(
    system: GermSystem,
    *,
    count: int = 200,
    seed: int = 0,
    budget: Budget | None = None,
    locus: ObstructionLocus | None = None,
) -> list[tuple[complex, ...]]:
    """A numeric point cloud on Link[Sigma], for distance estimates.

    Positive-dimensional components of the obstruction locus are sampled by
    the same Gauss-Newton projection as :func:`sample_link`, onto
    {component generators = 0} ∩ {|x| = 1}.  Components of dimension <= 0
    (the origin) have empty link and contribute nothing; an empty return
    therefore means Sigma = {o} as far as the computed components go.
    A heuristic cloud: density is not certified, and generator multiplicity
    can slow the projection (iterations are capped)."""
    locus = locus if locus is not None else sigma(system, budget)
    positive = [
        comp
        for comp in locus.components
        if comp.status == "computed" and comp.dimension is not None and comp.dimension >= 1
    ]
    if not positive:
        return []
    nvars = system.nvars
    per_component = max(1, -(-count // len(positive)))
    cloud: list[tuple[complex, ...]] = []
    for comp_index, comp in enumerate(positive):
        gens = list(comp.basis.generators) if comp.basis is not None else comp.generators
        partials = _partials_matrix(gens, nvars)
        found = 0
        attempts = 0
        while found < per_component and attempts < 20 * per_component:
            rng = np.random.default_rng([seed, comp_index, attempts])
            attempts += 1
            start = rng.standard_normal(nvars) + 1j * rng.standard_normal(nvars)
            start /= np.linalg.norm(start)
            point, _, ok = _gauss_newton_project(
                gens, partials, start, LINK_TOLERANCE, max_iterations=80
            )
            if ok:
                cloud.append(tuple(complex(v) for v in point))
                found += 1
    return cloud


# ---------------------------------------------------------------------------
# the rescaled-gradient ansatz


def _block_scales(system: GermSystem, s: np.ndarray) -> np.ndarray:
    """Per-variable factors sqrt(sum_{i <= r_l} |s_i|^2), where r_l is the
    weight-splitting boundary of the variable's block.  The sums are
    cumulative from the first coordinate, so a sample with its whole first
    block at exactly zero gets exactly-zero factors there."""
    splitting = weight_splitting(list(system.weights))
    cumulative = np.cumsum(np.abs(s) ** 2)
    scales = np.empty(system.nvars)
    for j in range(system.nvars):
        boundary = next(b for b in splitting.breakpoints if b >= j + 1)
        block = s[:boundary]
        if np.all(block == 0.0):
            scales[j] = 0.0
        else:
            scales[j] = math.sqrt(float(cumulative[boundary - 1]))
    return scales


def rescaled_gradient(system: GermSystem, s: Sequence[complex]) -> np.ndarray:
    """The r×N gradient of the principal part at ``s`` with column j
    multiplied by sqrt(sum_{i <= r_l} |s_i|^2) for j's block boundary r_l.

    With all weights equal this is the plain gradient times |s| (= 1 on the
    unit sphere); a sample with its first block exactly zero gets exactly
    zero columns there, which is what forces coordinate-plane preservation
    of the deformed arcs."""
    s_arr = np.asarray(s, dtype=complex)
    scales = _block_scales(system, s_arr)
    grad = np.empty((system.c, system.nvars), dtype=complex)
    for i, f in enumerate(system.principal):
        for j in range(system.nvars):
            grad[i, j] = f.partial(j).evaluate_numeric(list(s_arr))
    return grad * scales[np.newaxis, :]


# ---------------------------------------------------------------------------
# arc deformation


def _coerce_sample(system: GermSystem, s: LinkSample | Sequence[complex]) -> LinkSample:
    if isinstance(s, LinkSample):
        return s
    arr = np.asarray(s, dtype=complex)
    residual = float(np.max(np.abs(_evaluate_all(list(system.principal), arr))))
    return LinkSample(s=tuple(complex(v) for v in arr), residual=residual)


def deform_arc(
    system: GermSystem,
    epsilon: complex,
    s: LinkSample | Sequence[complex],
    t_grid: Sequence[float] = DEFAULT_T_GRID,
    *,
    tolerance: float = NEWTON_TOLERANCE,
    max_iterations: int = 40,
    z_cap: float = 1e3,
    min_sigma_distance: float = 0.0,
    allow_large_epsilon: bool = False,
) -> ArcSample:
    """Solve the deformed arc through ``s`` at scale ``epsilon`` on
    ``t_grid`` (decreasing), warm-starting each Newton run from the
    previous, larger t (initial z = 0 at the largest t).

    ``epsilon = 0`` returns the weighted-homogeneous arc t^w * s exactly
    (z = 0, converged by construction; the reported residual equals the
    link sample's own).  Newton divergence at some t marks that t and all
    smaller ones non-converged and stops solving — expected behaviour near
    the obstruction locus, where the logged ``gram_determinant``
    degenerates.  Divergence covers iterates escaping past ``z_cap``: the
    implicit-function branch through z = 0 is bounded on compact regions
    away from the obstruction locus, so an exploding iterate means the
    continuation left the perturbative regime (the numerical signature of
    the convergence radius shrinking to zero), even when a distant root of
    the scaled condition would still be reachable.  Same-order
    perturbations enforce |epsilon| <= ``SAME_ORDER_EPSILON_CAP`` unless
    ``allow_large_epsilon`` is set."""
    sample = _coerce_sample(system, s)
    epsilon = complex(epsilon)
    if (
        system.is_same_order()
        and abs(epsilon) > SAME_ORDER_EPSILON_CAP
        and not allow_large_epsilon
    ):
        raise ValueError(
            f"|epsilon| = {abs(epsilon):g} exceeds the same-order cap "
            f"{SAME_ORDER_EPSILON_CAP}; pass allow_large_epsilon=True to override"
        )
    if min_sigma_distance > 0.0 and sample.distance_to_sigma < min_sigma_distance:
        raise ValueError(
            "sample lies inside the exclusion radius around the obstruction locus "
            f"(distance {sample.distance_to_sigma:g} < {min_sigma_distance:g})"
        )
    grid = [float(t) for t in t_grid]
    if not grid or any(t <= 0.0 for t in grid) or any(
        later >= earlier for later, earlier in zip(grid[1:], grid)
    ):
        raise ValueError("t_grid must be a decreasing sequence of positive reals")

    nvars = system.nvars
    r = system.c
    s_arr = np.asarray(sample.s, dtype=complex)
    w_float = np.array([float(w) for w in system.weights])
    p_float = np.array([float(d) for d in system.degrees])
    grad = rescaled_gradient(system, s_arr)
    gram = grad @ grad.conj().T
    gram_determinant = float(np.linalg.det(gram).real)
    conj_t = grad.conj().T  # N x r
    zero_rows = np.all(conj_t == 0.0, axis=1)

    principal = list(system.principal)
    perturbation = list(system.perturbation)
    partials_p = _partials_matrix(principal, nvars)
    partials_q = _partials_matrix(perturbation, nvars)

    def arc_point(t_pow: np.ndarray, z: np.ndarray) -> np.ndarray:
        h = conj_t @ z
        h[zero_rows] = 0.0
        return t_pow * (s_arr + epsilon * h)

    def scaled_residual(
        t_neg: np.ndarray, t_pow: np.ndarray, z: np.ndarray
    ) -> tuple[np.ndarray, np.ndarray, float]:
        x = arc_point(t_pow, z)
        values = _evaluate_all(principal, x) + epsilon * _evaluate_all(perturbation, x)
        f_scaled = t_neg * values
        return x, f_scaled, float(np.max(np.abs(f_scaled)))

    z_rows: list[tuple[complex, ...]] = []
    point_rows: list[tuple[complex, ...]] = []
    residual_rows: list[float] = []
    converged_rows: list[bool] = []
    history_rows: list[tuple[float, ...]] = []

    if epsilon == 0:
        z0 = np.zeros(r, dtype=complex)
        for t in grid:
            t_pow = t**w_float
            t_neg = t ** (-p_float)
            x, _, resid = scaled_residual(t_neg, t_pow, z0)
            z_rows.append(tuple(complex(v) for v in z0))
            point_rows.append(tuple(complex(v) for v in x))
            residual_rows.append(resid)
            converged_rows.append(True)
            history_rows.append(())
        return ArcSample(
            s=sample,
            epsilon=epsilon,
            t_grid=tuple(grid),
            z_values=tuple(z_rows),
            points=tuple(point_rows),
            residuals=tuple(residual_rows),
            converged=tuple(converged_rows),
            gram_determinant=gram_determinant,
            iteration_residuals=tuple(history_rows),
        )

    z = np.zeros(r, dtype=complex)
    failed = False
    for t in grid:
        t_pow = t**w_float
        t_neg = t ** (-p_float)
        if failed:
            x, _, resid = scaled_residual(t_neg, t_pow, z)
            z_rows.append(tuple(complex(v) for v in z))
            point_rows.append(tuple(complex(v) for v in x))
            residual_rows.append(resid)
            converged_rows.append(False)
            history_rows.append(())
            continue
        history: list[float] = []
        x, f_scaled, resid = scaled_residual(t_neg, t_pow, z)
        history.append(resid)
        within_cap = bool(np.all(np.isfinite(z)) and np.max(np.abs(z), initial=0.0) <= z_cap)
        ok = resid <= tolerance and within_cap
        for _ in range(max_iterations):
            if ok or not within_cap:
                break
            jac = np.empty((r, nvars), dtype=complex)
            for i in range(r):
                jac[i] = _evaluate_all(partials_p[i], x) + epsilon * _evaluate_all(
                    partials_q[i], x
                )
            j_z = (t_neg[:, np.newaxis] * (jac * t_pow[np.newaxis, :])) @ (
                epsilon * conj_t
            )
            try:
                delta = np.linalg.solve(j_z, -f_scaled)
            except np.linalg.LinAlgError:
                delta, *_ = np.linalg.lstsq(j_z, -f_scaled, rcond=None)
            lam = 1.0
            accepted = False
            while lam >= 2.0**-16:
                z_try = z + lam * delta
                if not np.all(np.isfinite(z_try)):
                    lam /= 2.0
                    continue
                x_try, f_try, resid_try = scaled_residual(t_neg, t_pow, z_try)
                if resid_try < resid or resid_try <= tolerance:
                    z, x, f_scaled, resid = z_try, x_try, f_try, resid_try
                    accepted = True
                    break
                lam /= 2.0
            history.append(resid)
            if not accepted:
                break
            within_cap = bool(
                np.all(np.isfinite(z)) and np.max(np.abs(z), initial=0.0) <= z_cap
            )
            ok = resid <= tolerance and within_cap
        z_rows.append(tuple(complex(v) for v in z))
        point_rows.append(tuple(complex(v) for v in x))
        residual_rows.append(resid)
        converged_rows.append(ok)
        history_rows.append(tuple(history))
        if not ok:
            failed = True

    return ArcSample(
        s=sample,
        epsilon=epsilon,
        t_grid=tuple(grid),
        z_values=tuple(z_rows),
        points=tuple(point_rows),
        residuals=tuple(residual_rows),
        converged=tuple(converged_rows),
        gram_determinant=gram_determinant,
        iteration_residuals=tuple(history_rows),
    )


# ---------------------------------------------------------------------------
# tangency exponents


def _arc_curve(
    arc: ArcSample | tuple[Sequence[float], Sequence[Sequence[complex]]],
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    if isinstance(arc, ArcSample):
        t = np.asarray(arc.t_grid)
        pts = np.asarray(arc.points, dtype=complex)
        mask = np.asarray(arc.converged, dtype=bool)
        return t, pts, mask
    t_raw, pts_raw = arc
    t = np.asarray(t_raw, dtype=float)
    pts = np.asarray(pts_raw, dtype=complex)
    return t, pts, np.ones(len(t), dtype=bool)


def tangency_exponent(
    a: ArcSample | tuple[Sequence[float], Sequence[Sequence[complex]]],
    b: ArcSample | tuple[Sequence[float], Sequence[Sequence[complex]]],
    *,
    min_points: int = 6,
) -> TangencyEstimate:
    """Fitted contact order of two arcs on a common t-grid.

    Least-squares slope of log|a(t) - b(t)| against the log of the distance
    scale (mean of the two arc norms) over the smallest-t window of commonly
    converged points — at least ``min_points``, at most half the available
    ones.  Raw arcs may be passed as ``(t_grid, points)`` pairs (all points
    trusted).  Identical arcs over the window report alpha = inf.  Raises
    ValueError on mismatched grids or fewer than ``min_points`` usable
    points."""
    t_a, pts_a, mask_a = _arc_curve(a)
    t_b, pts_b, mask_b = _arc_curve(b)
    if len(t_a) != len(t_b) or not np.array_equal(t_a, t_b):
        raise ValueError("tangency fit needs a common t-grid")
    mask = mask_a & mask_b
    if int(mask.sum()) < min_points:
        raise ValueError(
            f"insufficient converged points for a tangency fit "
            f"({int(mask.sum())} < {min_points})"
        )
    t = t_a[mask]
    order = np.argsort(t)
    t = t[order]
    diff = np.linalg.norm(pts_a[mask][order] - pts_b[mask][order], axis=1)
    scale = 0.5 * (
        np.linalg.norm(pts_a[mask][order], axis=1)
        + np.linalg.norm(pts_b[mask][order], axis=1)
    )
    window_count = min(len(t), max(min_points, -(-len(t) // 2)))
    t = t[:window_count]
    diff = diff[:window_count]
    scale = scale[:window_count]
    window = (float(t[0]), float(t[-1]))
    if np.all(diff == 0.0):
        return TangencyEstimate(alpha=math.inf, r2=1.0, window=window)
    keep = diff > 0.0
    if int(keep.sum()) < min_points:
        raise ValueError(
            "arcs coincide at some grid points but not others; "
            "not enough nonzero separations to fit"
        )
    x = np.log(scale[keep])
    y = np.log(diff[keep])
    slope, intercept = np.polyfit(x, y, 1)
    ss_res = float(np.sum((y - (slope * x + intercept)) ** 2))
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 if ss_tot == 0.0 and ss_res <= 1e-30 else (
        0.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    )
    return TangencyEstimate(alpha=float(slope), r2=r2, window=window)


# ---------------------------------------------------------------------------
# property verification


def verify_foliation(
    system: GermSystem,
    epsilon: complex,
    samples: Sequence[LinkSample],
    t_grid: Sequence[float] = DEFAULT_T_GRID,
    *,
    margin: float = 0.1,
    seed: int = 0,
    max_pairs: int = 60,
    tolerance: float = NEWTON_TOLERANCE,
    fit_tolerance: float = FIT_TOLERANCE,
    separation_floor: float = 1e-8,
    allow_large_epsilon: bool = False,
) -> FoliationReport:
    """Check the deformed family over ``samples`` at scale ``epsilon``.

    Three sample-resolution checks: (1) tangency dichotomy preservation on
    random pairs — a pair with unperturbed contact order <= 1 + ``margin``
    must stay below it (up to ``fit_tolerance``), a pair above must stay
    above; (2) pairwise separation at the smallest commonly converged t
    (relative distance above ``separation_floor``); (3) bitwise
    coordinate-plane preservation for samples whose leading weight block
    vanishes exactly.  Any failure names the offending pair or sample."""
    if len(samples) < 2:
        raise ValueError("verify_foliation needs at least 2 samples")
    arcs = tuple(
        deform_arc(
            system,
            epsilon,
            s,
            t_grid,
            tolerance=tolerance,
            allow_large_epsilon=allow_large_epsilon,
        )
        for s in samples
    )
    reference = tuple(deform_arc(system, 0.0, s, t_grid) for s in samples)
    failures: list[str] = []

    total = sum(len(a.converged) for a in arcs)
    converged_fraction = (
        sum(sum(a.converged) for a in arcs) / total if total else 0.0
    )

    all_pairs = list(itertools.combinations(range(len(samples)), 2))
    if len(all_pairs) > max_pairs:
        picker = random.Random(seed)
        fit_pairs = sorted(picker.sample(all_pairs, max_pairs))
    else:
        fit_pairs = all_pairs

    dichotomy: list[PairDichotomy] = []
    for i, j in fit_pairs:
        try:
            alpha_0 = tangency_exponent(reference[i], reference[j])
            alpha_e = tangency_exponent(arcs[i], arcs[j])
        except ValueError as exc:
            failures.append(f"dichotomy pair ({i}, {j}): {exc}")
            continue
        if alpha_0.alpha <= 1.0 + margin:
            ok = alpha_e.alpha <= 1.0 + margin + fit_tolerance
        else:
            ok = alpha_e.alpha >= 1.0 + margin - fit_tolerance
        dichotomy.append(PairDichotomy((i, j), alpha_0, alpha_e, ok))
        if not ok:
            failures.append(
                f"dichotomy pair ({i}, {j}): unperturbed contact "
                f"{alpha_0.alpha:.4f}, perturbed {alpha_e.alpha:.4f}"
            )

    min_separation = math.inf
    separation_ok = True
    for i, j in all_pairs:
        common = [
            k
            for k in range(len(t_grid))
            if arcs[i].converged[k] and arcs[j].converged[k]
        ]
        if not common:
            failures.append(f"separation pair ({i}, {j}): no common converged t")
            separation_ok = False
            continue
        k = max(common)  # grid is decreasing: largest index = smallest t
        x_i = np.asarray(arcs[i].points[k], dtype=complex)
        x_j = np.asarray(arcs[j].points[k], dtype=complex)
        denom = max(float(np.linalg.norm(x_i)), float(np.linalg.norm(x_j)))
        rel = float(np.linalg.norm(x_i - x_j)) / denom if denom > 0.0 else 0.0
        min_separation = min(min_separation, rel)
        if rel < separation_floor:
            separation_ok = False
            failures.append(
                f"separation pair ({i}, {j}): relative distance {rel:.3e} "
                f"below {separation_floor:g} at t = {t_grid[k]:g}"
            )

    splitting = weight_splitting(list(system.weights))
    coordinate_planes_ok = True
    for idx, arc in enumerate(arcs):
        s_arr = np.asarray(arc.s.s, dtype=complex)
        for boundary in splitting.breakpoints:
            if boundary >= system.nvars:
                continue
            if not np.all(s_arr[:boundary] == 0.0):
                continue
            for k, point in enumerate(arc.points):
                if not arc.converged[k]:
                    continue
                if any(point[j] != 0.0 for j in range(boundary)):
                    coordinate_planes_ok = False
                    failures.append(
                        f"sample {idx}: coordinate plane V(x_1..x_{boundary}) "
                        f"not preserved at t = {arc.t_grid[k]:g}"
                    )
                    break

    return FoliationReport(
        passed=not failures,
        failures=tuple(failures),
        dichotomy=tuple(dichotomy),
        min_separation=min_separation,
        separation_ok=separation_ok,
        coordinate_planes_ok=coordinate_planes_ok,
        converged_fraction=converged_fraction,
        arcs=arcs,
        reference_arcs=reference,
    )


# ---------------------------------------------------------------------------
# CSV dump


def write_arc_csv(
    destination: str | Path | IO[str], arcs: Sequence[ArcSample], seed: int
) -> None:
    """Tabulate arcs as CSV: one row per (arc, t) with columns seed, the
    sample coordinates (re/im), epsilon (re/im), t, the arc point (re/im),
    the scaled residual, and converged as 0/1."""
    if not arcs:
        raise ValueError("no arcs to write")
    nvars = len(arcs[0].s.s)
    header = ["seed"]
    header += [f"s{i}_{part}" for i in range(nvars) for part in ("re", "im")]
    header += ["epsilon_re", "epsilon_im", "t"]
    header += [f"x{i}_{part}" for i in range(nvars) for part in ("re", "im")]
    header += ["residual", "converged"]

    def emit(handle: IO[str]) -> None:
        writer = csv.writer(handle)
        writer.writerow(header)
        for arc in arcs:
            s_cols = [part for v in arc.s.s for part in (repr(v.real), repr(v.imag))]
            for k, t in enumerate(arc.t_grid):
                row = [str(seed)]
                row += s_cols
                row += [repr(arc.epsilon.real), repr(arc.epsilon.imag), repr(t)]
                row += [
                    part
                    for v in arc.points[k]
                    for part in (repr(v.real), repr(v.imag))
                ]
                row += [repr(arc.residuals[k]), str(int(arc.converged[k]))]
                writer.writerow(row)

    if isinstance(destination, (str, Path)):
        with open(destination, "w", newline="") as handle:
            emit(handle)
    else:
        emit(destination)
