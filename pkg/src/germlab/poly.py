"""Sparse multivariate polynomials over Q(i), exact.

Monomials are plain ``tuple[int, ...]`` exponent vectors of a fixed length
``nvars``; a polynomial is an immutable-by-convention wrapper around a dict
``{monomial: QI}`` with no zero coefficients.  Term dicts are rebuilt in a
canonical (descending tuple) order on construction so that every iteration in
the package is deterministic.

Weighted structure: for a positive rational weight vector ω, the weighted
order of f is min over monomials of ⟨ω, a⟩ (None for f = 0, read as +∞), and
the weighted part at degree d collects the monomials with ⟨ω, a⟩ = d.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from germlab.exact import nullspace, primitive_integer_vector
from germlab.qi import QI

Monomial = tuple[int, ...]
Weights = Sequence[Fraction]


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial | None:
    """a / b, or None when b does not divide a."""
    out = []
    for x, y in zip(a, b):
        if x < y:
            return None
        out.append(x - y)
    return tuple(out)


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_coprime(a: Monomial, b: Monomial) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def mono_degree(a: Monomial) -> int:
    return sum(a)


def mono_weighted_degree(a: Monomial, weights: Weights) -> Fraction:
    return sum((w * e for w, e in zip(weights, a)), Fraction(0))


class Poly:
    """A sparse polynomial with QI coefficients and a fixed variable count."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Monomial, QI] | None = None):
        clean: dict[Monomial, QI] = {}
        if terms:
            for mono in sorted(terms, reverse=True):
                c = terms[mono]
                if len(mono) != nvars:
                    raise ValueError("monomial length does not match nvars")
                if not c.is_zero():
                    clean[mono] = c
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Poly values are immutable")

    # -- constructors --------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls(nvars, {})

    @classmethod
    def constant(cls, nvars: int, c: QI | int | Fraction) -> "Poly":
        return cls(nvars, {(0,) * nvars: QI.coerce(c)})

    @classmethod
    def variable(cls, nvars: int, index: int) -> "Poly":
        """The ``index``-th variable (0-based) as a polynomial."""
        mono = tuple(int(j == index) for j in range(nvars))
        return cls(nvars, {mono: QI.one()})

    @classmethod
    def from_terms(cls, nvars: int, pairs: Iterable[tuple[Monomial, QI]]) -> "Poly":
        acc: dict[Monomial, QI] = {}
        for mono, c in pairs:
            prev = acc.get(mono)
            acc[mono] = c if prev is None else prev + c
        return cls(nvars, acc)

    # -- predicates ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and (0,) * self.nvars in self.terms)

    def constant_term(self) -> QI:
        return self.terms.get((0,) * self.nvars, QI.zero())

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.nvars, tuple(self.terms.items())))

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        acc = dict(self.terms)
        for mono, c in other.terms.items():
            prev = acc.get(mono)
            acc[mono] = c if prev is None else prev + c
        return Poly(self.nvars, acc)

    def __neg__(self) -> "Poly":
        return Poly(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        self._check(other)
        acc: dict[Monomial, QI] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = mono_mul(m1, m2)
                prod = c1 * c2
                prev = acc.get(mono)
                acc[mono] = prod if prev is None else prev + prod
        return Poly(self.nvars, acc)

    def scale(self, c: QI | int | Fraction) -> "Poly":
        c = QI.coerce(c)
        if c.is_zero():
            return Poly.zero(self.nvars)
        return Poly(self.nvars, {m: c * v for m, v in self.terms.items()})

    def mul_monomial(self, mono: Monomial, coeff: QI) -> "Poly":
        return Poly(self.nvars, {mono_mul(m, mono): coeff * c for m, c in self.terms.items()})

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = Poly.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def _check(self, other: "Poly") -> None:
        if self.nvars != other.nvars:
            raise ValueError("polynomials over different variable counts")

    # -- calculus ------------------------------------------------------

    def partial(self, index: int) -> "Poly":
        """Formal partial derivative with respect to variable ``index``."""
        acc: dict[Monomial, QI] = {}
        for mono, c in self.terms.items():
            e = mono[index]
            if e == 0:
                continue
            lowered = mono[:index] + (e - 1,) + mono[index + 1:]
            contrib = c * e
            prev = acc.get(lowered)
            acc[lowered] = contrib if prev is None else prev + contrib
        return Poly(self.nvars, acc)

    # -- degrees and weighted structure --------------------------------

    def total_degree(self) -> int:
        """Maximal total degree (-1 for the zero polynomial)."""
        if not self.terms:
            return -1
        return max(mono_degree(m) for m in self.terms)

    def order(self) -> int | None:
        """Minimal total degree of a term (None for 0, read as +infinity)."""
        if not self.terms:
            return None
        return min(mono_degree(m) for m in self.terms)

    def weighted_order(self, weights: Weights) -> Fraction | None:
        """min ⟨ω, a⟩ over the support; None (+infinity) for the zero poly."""
        if not self.terms:
            return None
        return min(mono_weighted_degree(m, weights) for m in self.terms)

    def weighted_part(self, weights: Weights, degree: Fraction) -> "Poly":
        return Poly(
            self.nvars,
            {m: c for m, c in self.terms.items() if mono_weighted_degree(m, weights) == degree},
        )

    def split_by_weight(self, weights: Weights) -> tuple["Poly", "Poly"]:
        """Split into (principal, higher): the part at the minimal weighted
        degree, and everything strictly above it.  The zero polynomial has
        no minimal order and is rejected."""
        if not self.terms:
            raise ValueError("cannot split the zero polynomial by weight")
        d = self.weighted_order(weights)
        principal: dict[Monomial, QI] = {}
        higher: dict[Monomial, QI] = {}
        for m, c in self.terms.items():
            (principal if mono_weighted_degree(m, weights) == d else higher)[m] = c
        return Poly(self.nvars, principal), Poly(self.nvars, higher)

    def is_weighted_homogeneous(self, weights: Weights) -> bool:
        if not self.terms:
            return True
        degs = {mono_weighted_degree(m, weights) for m in self.terms}
        return len(degs) == 1

    # -- substitutions and variable plumbing ---------------------------

    def substitute_constant(self, index: int, value: QI) -> "Poly":
        """Set variable ``index`` to an exact constant; the variable slot stays
        in the ring (exponent becomes 0)."""
        acc: dict[Monomial, QI] = {}
        for mono, c in self.terms.items():
            e = mono[index]
            coeff = c
            if e:
                if value.is_zero():
                    continue
                coeff = c * (_qi_pow(value, e))
            new = mono[:index] + (0,) + mono[index + 1:]
            prev = acc.get(new)
            acc[new] = coeff if prev is None else prev + coeff
        return Poly(self.nvars, acc)

    def drop_variable(self, index: int) -> "Poly":
        """Remove a variable slot that no term uses."""
        acc: dict[Monomial, QI] = {}
        for mono, c in self.terms.items():
            if mono[index] != 0:
                raise ValueError("variable still occurs; substitute first")
            acc[mono[:index] + mono[index + 1:]] = c
        return Poly(self.nvars - 1, acc)

    def insert_variable(self, index: int) -> "Poly":
        """Add a fresh unused variable slot at position ``index``."""
        acc = {m[:index] + (0,) + m[index:]: c for m, c in self.terms.items()}
        return Poly(self.nvars + 1, acc)

    def permute_variables(self, perm: Sequence[int]) -> "Poly":
        """Reindex variables: new exponent j comes from old position perm[j]."""
        if sorted(perm) != list(range(self.nvars)):
            raise ValueError("not a permutation")
        acc = {tuple(m[p] for p in perm): c for m, c in self.terms.items()}
        return Poly(self.nvars, acc)

    # -- evaluation ----------------------------------------------------

    def evaluate_exact(self, point: Sequence[QI]) -> QI:
        total = QI.zero()
        for mono, c in self.terms.items():
            v = c
            for e, x in zip(mono, point):
                if e:
                    v = v * _qi_pow(x, e)
            total = total + v
        return total

    def evaluate_numeric(self, point: Sequence[complex]) -> complex:
        """Reference numeric evaluation (term-by-term Horner-free sum).

        Deliberately simple and independent of the compiled fast paths used by
        the numeric foliation layer, so the two can audit each other."""
        total = 0j
        for mono, c in self.terms.items():
            v = c.to_complex()
            for e, x in zip(mono, point):
                if e:
                    v *= x ** e
            total += v
        return total

    def __repr__(self) -> str:
        from germlab.parse import poly_to_string

        names = [f"x{j+1}" for j in range(self.nvars)]
        return f"Poly({poly_to_string(self, names)})"


def _qi_pow(base: QI, e: int) -> QI:
    out = QI.one()
    for _ in range(e):
        out = out * base
    return out


def jacobian(polys: Sequence[Poly]) -> list[list[Poly]]:
    """Jacobian matrix: rows follow the input order, columns the variables.

    Satisfies the product rule by construction; the property-test suite checks
    jacobian(f*g) = f*jacobian(g) + g*jacobian(f) on random inputs.
    """
    if not polys:
        return []
    nvars = polys[0].nvars
    return [[f.partial(j) for j in range(nvars)] for f in polys]


class WeightInference:
    """Outcome of weight inference on a claimed weighted-homogeneous system."""

    __slots__ = ("status", "weights", "degrees", "free_variables")

    def __init__(self, status: str, weights=None, degrees=None, free_variables=None):
        self.status = status  # "unique" | "underdetermined" | "not_weighted_homogeneous"
        self.weights = weights
        self.degrees = degrees
        self.free_variables = free_variables or []

    def __repr__(self) -> str:
        return f"WeightInference({self.status}, weights={self.weights})"


def infer_weights(polys: Sequence[Poly], variable_names: Sequence[str]) -> WeightInference:
    """Solve ⟨ω, a⟩ = p_i over all supports for positive rational weights.

    Per equation the unknown degree p_i is eliminated by differencing all
    exponents against a base monomial, leaving a homogeneous linear system in
    ω alone.  Outcomes:

    * a 1-dimensional solution space whose spanning vector can be scaled
      positive → "unique", weights normalized so that min_i p_i = 1;
    * solution space of dimension ≥ 2 → "underdetermined" with the non-pivot
      variable names reported (caller must supply weights);
    * only the trivial solution, or a spanning vector that cannot be made
      strictly positive → "not_weighted_homogeneous".
    """
    nvars = polys[0].nvars
    rows: list[list[Fraction]] = []
    bases: list[Monomial] = []
    for f in polys:
        if f.is_zero():
            raise ValueError("cannot infer weights from a zero equation")
        monos = list(f.terms)
        base = monos[0]
        bases.append(base)
        for m in monos[1:]:
            rows.append([Fraction(m[j] - base[j]) for j in range(nvars)])
    basis = nullspace(rows, nvars)
    if not basis:
        return WeightInference("not_weighted_homogeneous")
    if len(basis) > 1:
        # Report the truly undetermined weights: fix the overall scale by
        # pinning the first base monomial to degree 1, then the non-pivot
        # columns are exactly the weights the caller must supply.
        from germlab.exact import rref

        norm_row = [Fraction(bases[0][j]) for j in range(nvars)]
        aug = rows + ([norm_row] if any(norm_row) else [])
        _, pivots = rref(aug) if aug else ([], [])
        free = [variable_names[j] for j in range(nvars) if j not in pivots]
        return WeightInference("underdetermined", free_variables=free)
    vec = basis[0]
    if any(x == 0 for x in vec):
        return WeightInference("not_weighted_homogeneous")
    if all(x < 0 for x in vec):
        vec = [-x for x in vec]
    if any(x < 0 for x in vec):
        return WeightInference("not_weighted_homogeneous")
    degrees = [mono_weighted_degree(b, vec) for b in bases]
    if any(d <= 0 for d in degrees):
        return WeightInference("not_weighted_homogeneous")
    scale = min(degrees)
    weights = [x / scale for x in vec]
    degrees = [d / scale for d in degrees]
    return WeightInference("unique", weights=weights, degrees=degrees)


def normalize_weights(weights: Sequence[Fraction], degrees: Sequence[Fraction]):
    """Rescale (ω, p) so min p_i = 1; also return the primitive integer form."""
    scale = min(degrees)
    w = [Fraction(x) / scale for x in weights]
    d = [Fraction(x) / scale for x in degrees]
    prim = primitive_integer_vector(w)
    prim_deg = primitive_integer_vector(d)
    return w, d, prim, prim_deg
