"""Newton polyhedra over the exponent lattice: compact boundary faces with
certified primitive inner normals, face restrictions, convenience, and torus
non-degeneracy of face polynomials.

The face enumeration is exact and complete for arbitrary (also
non-convenient) supports.  Route: enumerate ALL facets of the polyhedron
``conv(support) + R_{>=0}^N`` by brute force over candidate hyperplanes
spanned by support points and coordinate directions (facet normals are
automatically componentwise >= 0 because the recession cone is the positive
orthant); every proper face is an intersection of facets, so the point sets
of compact faces live in the intersection closure of the facet point sets;
for each candidate point set the sum of the normals of all facets containing
it lies in the relative interior of its normal cone, hence is strictly
positive exactly when the face is compact and then exposes precisely that
face.  Each reported face therefore carries an explicit normal certificate
that is re-checked against every support point."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd

from germlab.exact import nullspace, primitive_integer_vector, rref
from germlab.groebner import DEFAULT_BUDGET, Budget, BudgetExhausted, saturation
from germlab.poly import Monomial, Poly
from germlab.qi import QI

__all__ = [
    "Face",
    "NewtonDiagram",
    "NondegeneracyReport",
    "newton_diagram",
    "face_restriction",
    "is_newton_nondegenerate",
    "face_weight_report",
]


def _dot(a: tuple[int, ...], b: tuple[int, ...]) -> int:
    return sum(x * y for x, y in zip(a, b))


def _linear_rank(vectors: list[tuple]) -> int:
    if not vectors:
        return 0
    rows = [[Fraction(x) for x in v] for v in vectors]
    return len(rref(rows)[1])


@dataclass(frozen=True)
class Face:
    """A compact face of the Newton boundary.

    ``vertices`` holds every support point lying on the face (not only the
    extreme ones - downstream consumers want the full face support).  The
    inner normal is primitive, strictly positive, and satisfies
    <normal, v> = level on the face and >= level on all support points."""

    dim: int
    vertices: tuple[Monomial, ...]
    inner_normal: tuple[int, ...]
    level: int

    @property
    def weights(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.level) for c in self.inner_normal)

    @property
    def is_top(self) -> bool:
        return self.dim == len(self.inner_normal) - 1


@dataclass(frozen=True)
class NewtonDiagram:
    ambient_dim: int
    support: tuple[Monomial, ...]
    faces: tuple[Face, ...]
    convenient: bool

    def top_faces(self) -> list[Face]:
        return [f for f in self.faces if f.is_top]

    def faces_by_dim(self) -> dict[int, list[Face]]:
        out: dict[int, list[Face]] = {}
        for f in self.faces:
            out.setdefault(f.dim, []).append(f)
        return out


def _facet_data(support: list[Monomial], nvars: int) -> list[tuple[tuple[int, ...], frozenset]]:
    """All facets of conv(support) + positive orthant, as (normal, point set).

    Candidate hyperplanes are spanned by an affinely independent tuple of
    support points plus a completing set of coordinate directions; a
    candidate is a facet when its normal is componentwise nonnegative and its
    face (support argmin plus the rays of its zero coordinates) has affine
    dimension nvars - 1."""
    pts = sorted(support)
    unit = [tuple(1 if k == j else 0 for k in range(nvars)) for j in range(nvars)]
    normals: set[tuple[int, ...]] = set()
    for tsize in range(1, min(len(pts), nvars) + 1):
        esize = nvars - tsize
        for T in combinations(pts, tsize):
            diffs = [tuple(a - b for a, b in zip(t, T[0])) for t in T[1:]]
            if _linear_rank(diffs) != tsize - 1:
                continue  # affinely dependent tuple; a smaller one covers it
            for E in combinations(range(nvars), esize):
                rows = [[Fraction(x) for x in d] for d in diffs]
                rows += [[Fraction(x) for x in unit[j]] for j in E]
                kernel = nullspace(rows, nvars)
                if len(kernel) != 1:
                    continue
                nu = tuple(primitive_integer_vector(kernel[0]))
                if all(c <= 0 for c in nu):
                    nu = tuple(-c for c in nu)
                if any(c < 0 for c in nu):
                    continue
                normals.add(nu)
    facets = []
    for nu in sorted(normals):
        level = min(_dot(nu, p) for p in pts)
        arg = [p for p in pts if _dot(nu, p) == level]
        rays = [unit[j] for j in range(nvars) if nu[j] == 0]
        span = [tuple(a - b for a, b in zip(p, arg[0])) for p in arg[1:]] + rays
        if _linear_rank(span) == nvars - 1:
            facets.append((nu, frozenset(arg)))
    return facets


def _affine_dim(points: list[Monomial]) -> int:
    diffs = [tuple(a - b for a, b in zip(p, points[0])) for p in points[1:]]
    return _linear_rank(diffs)


def newton_diagram(f: Poly) -> NewtonDiagram:
    """All compact faces of the Newton polyhedron of f, each with a
    certified primitive strictly positive inner normal."""
    if f.is_zero():
        raise ValueError("zero polynomial has no Newton diagram")
    if not f.constant_term().is_zero():
        raise ValueError("polynomial must vanish at the origin")
    nvars = f.nvars
    support = sorted(f.terms)
    facets = _facet_data(support, nvars)

    # intersection closure of the facet point sets = all candidate face
    # supports (every face of a polyhedron is the intersection of the facets
    # containing it)
    lattice: set[frozenset] = {ps for _, ps in facets}
    frontier = set(lattice)
    while frontier:
        fresh: set[frozenset] = set()
        for a in frontier:
            for _, b in facets:
                c = a & b
                if c and c not in lattice:
                    fresh.add(c)
        lattice |= fresh
        frontier = fresh

    faces: list[Face] = []
    for cand in lattice:
        containing = [nu for nu, ps in facets if cand <= ps]
        sigma = tuple(sum(col) for col in zip(*containing))
        if any(c == 0 for c in sigma):
            continue  # exposed face is unbounded: not a compact face
        level = min(_dot(sigma, p) for p in support)
        arg = frozenset(p for p in support if _dot(sigma, p) == level)
        if arg != cand:
            continue  # candidate set is not itself a face
        g = 0
        for c in sigma:
            g = gcd(g, c)
        nu = tuple(c // g for c in sigma)
        pts = sorted(cand)
        faces.append(Face(_affine_dim(pts), tuple(pts), nu, min(_dot(nu, p) for p in support)))

    faces.sort(key=lambda fc: (-fc.dim, fc.inner_normal, fc.vertices))
    convenient = all(
        any(m[j] > 0 and all(e == 0 for k, e in enumerate(m) if k != j) for m in support)
        for j in range(nvars)
    )
    return NewtonDiagram(nvars, tuple(support), tuple(faces), convenient)


def face_restriction(f: Poly, face: Face) -> Poly:
    """The sum of the terms of f lying on the face hyperplane."""
    if len(face.inner_normal) != f.nvars:
        raise ValueError("face does not match the polynomial's variable count")
    kept = {m: c for m, c in f.terms.items() if _dot(face.inner_normal, m) == face.level}
    if set(face.vertices) - set(kept):
        raise ValueError("face does not belong to this polynomial's diagram")
    return Poly(f.nvars, kept)


@dataclass
class NondegeneracyReport:
    """Per-face torus criticality verdicts.

    status per face: "nondegenerate" | "degenerate" | "undetermined";
    method per face: "exact" | "probabilistic".  ``overall`` is True when all
    faces are nondegenerate, False when some face is degenerate, None when
    any face is undetermined and none is degenerate."""

    faces: list[Face]
    statuses: list[str]
    methods: list[str]

    @property
    def overall(self) -> bool | None:
        if any(s == "degenerate" for s in self.statuses):
            return False
        if any(s == "undetermined" for s in self.statuses):
            return None
        return True


def _torus_search(f_sigma: Poly, seed: int = 0, attempts: int = 40) -> bool:
    """Monte-Carlo fallback: hunt for a torus critical point of a face
    polynomial by damped Newton from random torus starts.  Returns True when
    a convincing critical point with all coordinates away from zero is found
    (certifying degeneracy up to float error)."""
    import numpy as np

    nvars = f_sigma.nvars
    partials = [f_sigma.partial(j) for j in range(nvars)]
    rng = np.random.default_rng(seed)
    for _ in range(attempts):
        radius = rng.uniform(0.4, 1.8, size=nvars)
        phase = rng.uniform(0.0, 2.0 * np.pi, size=nvars)
        x = radius * np.exp(1j * phase)
        for _ in range(60):
            val = np.array([p.evaluate_numeric(tuple(x)) for p in partials])
            if np.max(np.abs(val)) < 1e-12:
                break
            jac = np.array(
                [[p.partial(j).evaluate_numeric(tuple(x)) for j in range(nvars)] for p in partials]
            )
            step, *_ = np.linalg.lstsq(jac, -val, rcond=None)
            if not np.all(np.isfinite(step)):
                break
            # damped update, keeps the iteration from shooting off to 0/inf
            scale = 1.0
            if np.max(np.abs(step)) > 1.0:
                scale = 1.0 / np.max(np.abs(step))
            x = x + scale * step
        val = np.array([p.evaluate_numeric(tuple(x)) for p in partials])
        if np.max(np.abs(val)) < 1e-10 and np.min(np.abs(x)) > 5e-2 and np.max(np.abs(x)) < 1e3:
            return True
    return False


def is_newton_nondegenerate(
    f: Poly,
    budget: Budget | None = None,
    probabilistic: bool = False,
    seed: int = 0,
) -> NondegeneracyReport:
    """Check, per compact face, that the face polynomial has no critical
    point on the torus: exactly, via saturation of its partial derivatives by
    the product of the variables (unit ideal <=> empty torus critical locus).

    Budget exhaustion on a face marks it "undetermined" unless
    ``probabilistic`` is set, in which case a random torus search substitutes
    and the face is marked with method "probabilistic" (search finds a
    critical point -> degenerate; finds none -> nondegenerate by sampling
    only)."""
    diagram = newton_diagram(f)
    if not diagram.convenient:
        raise ValueError("non-degeneracy check requires a convenient diagram")
    torus = Poly(f.nvars, {tuple(1 for _ in range(f.nvars)): QI.one()})
    statuses: list[str] = []
    methods: list[str] = []
    for k, face in enumerate(diagram.faces):
        f_sigma = face_restriction(f, face)
        partials = []
        for j in range(f.nvars):
            p = f_sigma.partial(j)
            if not p.is_zero():
                partials.append(p)
        remaining = (budget.limit - budget.used) if budget is not None else DEFAULT_BUDGET
        sub = Budget(max(remaining, 0))
        try:
            sat = saturation(partials, torus, sub)
            statuses.append("nondegenerate" if sat.generators[0].is_constant() else "degenerate")
            methods.append("exact")
        except BudgetExhausted:
            if probabilistic:
                found = _torus_search(f_sigma, seed=seed + k)
                statuses.append("degenerate" if found else "nondegenerate")
                methods.append("probabilistic")
            else:
                statuses.append("undetermined")
                methods.append("exact")
        if budget is not None:
            # book the spent steps without tripping the parent's exception
            budget.used = min(budget.used + sub.used, budget.limit)
    return NondegeneracyReport(list(diagram.faces), statuses, methods)


@dataclass(frozen=True)
class FaceWeightSummary:
    face: Face
    sorted_weights: tuple[Fraction, ...]
    min_multiplicity: int
    two_lowest_coincide: bool


def face_weight_report(diagram: NewtonDiagram) -> list[FaceWeightSummary]:
    """Per top face: ascending weights, multiplicity of the minimum, and
    whether the two lowest weights coincide."""
    tops = diagram.top_faces()
    if not tops:
        raise ValueError("diagram has no top-dimensional face")
    out = []
    for face in tops:
        ws = tuple(sorted(face.weights))
        mult = sum(1 for w in ws if w == ws[0])
        out.append(FaceWeightSummary(face, ws, mult, len(ws) >= 2 and ws[0] == ws[1]))
    return out
