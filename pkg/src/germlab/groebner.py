"""Buchberger engine over Q(i): global bases, dimensions, saturation, and
local standard bases via homogenization; Milnor numbers on top.

Design points, fixed by the package contract:

* deterministic: the pair queue uses the normal selection strategy (minimal
  lcm total degree, ties by pair index); output bases are interreduced, monic,
  and sorted by descending leading monomial, so identical inputs give
  identical bases, always;
* both classical Buchberger criteria (coprime leading monomials; chain
  criterion) are applied before any reduction;
* every long-running loop draws from an explicit step budget and raises
  :class:`BudgetExhausted` instead of spinning - callers convert that into an
  "undetermined" report entry, never into a silent wrong answer;
* local (anti-graded) leading data comes from bases computed on the
  h-homogenized side with a global order whose leading terms dehomogenize to
  the local ones; returned local bases are minimal and monic but their tails
  are not normal-formed (termination of local division is not needed anywhere:
  consumers only read leading terms).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from germlab.orders import (
    MonomialOrder,
    eliminate_last,
    grevlex,
    homogenized_local,
    local_antigraded,
)
from germlab.poly import Monomial, Poly, mono_coprime, mono_div, mono_lcm
from germlab.qi import QI

DEFAULT_BUDGET = 10 ** 6


class BudgetExhausted(RuntimeError):
    """Raised when an exact computation hits its step budget."""

    def __init__(self, context: str, used: int):
        super().__init__(f"budget exhausted during {context} (steps used: {used})")
        self.context = context
        self.used = used


class Budget:
    """A mutable step counter shared across one logical computation."""

    __slots__ = ("limit", "used", "context")

    def __init__(self, limit: int = DEFAULT_BUDGET):
        self.limit = limit
        self.used = 0
        self.context = "computation"

    def charge(self, n: int = 1) -> None:
        self.used += n
        if self.used > self.limit:
            raise BudgetExhausted(self.context, self.used)


@dataclass
class GroebnerBasis:
    generators: list[Poly]
    order: MonomialOrder
    stats: dict = field(default_factory=dict)

    def leading_monomials(self) -> list[Monomial]:
        return [leading_monomial(g, self.order) for g in self.generators]

    def is_unit_ideal(self) -> bool:
        return len(self.generators) == 1 and self.generators[0].is_constant() and bool(self.generators[0])


def leading_monomial(f: Poly, order: MonomialOrder) -> Monomial:
    if f.is_zero():
        raise ValueError("zero polynomial has no leading monomial")
    return max(f.terms, key=order.key)


def leading_term(f: Poly, order: MonomialOrder) -> tuple[Monomial, QI]:
    m = leading_monomial(f, order)
    return m, f.terms[m]


def make_monic(f: Poly, order: MonomialOrder) -> Poly:
    _, c = leading_term(f, order)
    if c == QI.one():
        return f
    return f.scale(c.inverse())


def division(
    f: Poly,
    divisors: list[Poly],
    order: MonomialOrder,
    budget: Budget | None = None,
) -> tuple[list[Poly], Poly]:
    """Multivariate division: f = sum q_k * divisors[k] + r, no term of r
    divisible by any divisor's leading monomial.  Divisors are tried in list
    order, so the outcome is deterministic.  Requires a global order."""
    if not order.is_global:
        raise ValueError("division requires a global monomial order")
    budget = budget or Budget()
    nvars = f.nvars
    lts = [leading_term(d, order) for d in divisors]
    quotients = [Poly.zero(nvars) for _ in divisors]
    remainder_terms: dict[Monomial, QI] = {}
    work = f
    while not work.is_zero():
        budget.charge()
        wm, wc = leading_term(work, order)
        for k, (dm, dc) in enumerate(lts):
            q = mono_div(wm, dm)
            if q is not None:
                coeff = wc / dc
                work = work - divisors[k].mul_monomial(q, coeff)
                quotients[k] = quotients[k] + Poly(nvars, {q: coeff})
                break
        else:
            remainder_terms[wm] = wc
            work = Poly(nvars, {m: c for m, c in work.terms.items() if m != wm})
    return quotients, Poly(nvars, remainder_terms)


def normal_form(f: Poly, basis: list[Poly], order: MonomialOrder, budget: Budget | None = None) -> Poly:
    return division(f, basis, order, budget)[1]


def s_polynomial(f: Poly, g: Poly, order: MonomialOrder) -> Poly:
    fm, fc = leading_term(f, order)
    gm, gc = leading_term(g, order)
    lcm = mono_lcm(fm, gm)
    return f.mul_monomial(mono_div(lcm, fm), fc.inverse()) - g.mul_monomial(
        mono_div(lcm, gm), gc.inverse()
    )


def buchberger(
    gens: list[Poly],
    order: MonomialOrder | None = None,
    budget: Budget | None = None,
) -> GroebnerBasis:
    """Buchberger with the normal strategy and both classical criteria.

    Returns the reduced basis: interreduced, monic, generators sorted by
    descending leading monomial.  The unit ideal comes back as ``[1]``."""
    if not gens:
        raise ValueError("empty generator list (the zero ideal has no basis here)")
    nvars = gens[0].nvars
    order = order or grevlex(nvars)
    if not order.is_global:
        raise ValueError("buchberger requires a global order; use local_standard_basis")
    budget = budget or Budget()
    budget.context = "buchberger"

    basis: list[Poly] = []
    for f in gens:
        if f.is_zero():
            continue
        basis.append(make_monic(f, order))
    if not basis:
        raise ValueError("all generators are zero")
    stats = {"s_pairs": 0, "reductions_to_zero": 0, "skip_coprime": 0, "skip_chain": 0}

    one = Poly.constant(nvars, 1)
    if any(g.is_constant() for g in basis):
        return GroebnerBasis([one], order, stats)

    lt = [leading_monomial(g, order) for g in basis]
    pairs: set[tuple[int, int]] = {(i, j) for j in range(len(basis)) for i in range(j)}
    done: set[tuple[int, int]] = set()

    def pair_sort_key(p: tuple[int, int]):
        lcm = mono_lcm(lt[p[0]], lt[p[1]])
        return (sum(lcm), p[0], p[1])

    while pairs:
        pair = min(pairs, key=pair_sort_key)
        pairs.discard(pair)
        done.add(pair)
        i, j = pair
        if mono_coprime(lt[i], lt[j]):
            stats["skip_coprime"] += 1
            continue
        lcm_ij = mono_lcm(lt[i], lt[j])
        chain = False
        for k in range(len(basis)):
            if k == i or k == j:
                continue
            if mono_div(lcm_ij, lt[k]) is None:
                continue
            pik = (min(i, k), max(i, k))
            pjk = (min(j, k), max(j, k))
            if pik in done and pjk in done:
                chain = True
                break
        if chain:
            stats["skip_chain"] += 1
            continue
        budget.charge()
        stats["s_pairs"] += 1
        s = s_polynomial(basis[i], basis[j], order)
        _, r = division(s, basis, order, budget)
        if r.is_zero():
            stats["reductions_to_zero"] += 1
            continue
        if r.is_constant():
            return GroebnerBasis([one], order, stats)
        r = make_monic(r, order)
        basis.append(r)
        lt.append(leading_monomial(r, order))
        new = len(basis) - 1
        for k in range(new):
            pairs.add((k, new))

    reduced = _interreduce(_minimalize(basis, order), order, budget)
    reduced.sort(key=lambda g: order.key(leading_monomial(g, order)), reverse=True)
    return GroebnerBasis(reduced, order, stats)


def _minimalize(basis: list[Poly], order: MonomialOrder) -> list[Poly]:
    # A leading monomial survives iff no surviving leading monomial divides
    # it; processing in increasing order keeps the minimal ones first.
    lts = [(leading_monomial(g, order), g) for g in basis]
    lts_sorted = sorted(lts, key=lambda t: order.key(t[0]))
    survivors: list[tuple[Monomial, Poly]] = []
    for m, g in lts_sorted:
        if not any(mono_div(m, sm) is not None for sm, _ in survivors):
            survivors.append((m, g))
    return [g for _, g in survivors]


def _interreduce(basis: list[Poly], order: MonomialOrder, budget: Budget) -> list[Poly]:
    out = list(basis)
    for k in range(len(out)):
        others = out[:k] + out[k + 1:]
        if not others:
            out[k] = make_monic(out[k], order)
            continue
        _, r = division(out[k], others, order, budget)
        if r.is_zero():
            # cannot happen on a minimal basis, but keep the guard honest
            continue
        out[k] = make_monic(r, order)
    return out


def is_groebner_basis(basis: list[Poly], order: MonomialOrder, budget: Budget | None = None) -> bool:
    """Audit: every S-polynomial of basis pairs reduces to zero."""
    budget = budget or Budget()
    for i, j in combinations(range(len(basis)), 2):
        s = s_polynomial(basis[i], basis[j], order)
        if not normal_form(s, basis, order, budget).is_zero():
            return False
    return True


def ideal_membership(f: Poly, gb: GroebnerBasis, budget: Budget | None = None) -> bool:
    """f in the ideal iff its normal form vanishes (global bases only)."""
    if not gb.order.is_global:
        raise ValueError("membership is implemented for global bases only")
    if f.is_zero():
        return True
    return normal_form(f, gb.generators, gb.order, budget).is_zero()


# ---------------------------------------------------------------------------
# combinatorial dimension theory on leading ideals


def krull_dimension(gb: GroebnerBasis) -> int:
    """Krull dimension of R/I from the leading ideal: the maximal size of a
    variable subset S such that no leading monomial has support inside S.

    Computed as nvars minus a minimum hitting set of the leading supports
    (branch and bound).  -1 for the unit ideal.  The test suite cross-checks
    against an exhaustive subset oracle on monomial ideals."""
    if gb.is_unit_ideal():
        return -1
    nvars = gb.order.nvars
    supports = sorted(
        {frozenset(j for j, e in enumerate(m) if e) for m in gb.leading_monomials()},
        key=lambda s: (len(s), sorted(s)),
    )
    if any(not s for s in supports):
        return -1  # a unit leading term
    # prune supports that contain another support (hitting the smaller one
    # hits the larger one for free)
    minimal: list[frozenset] = []
    for s in supports:
        if not any(t <= s for t in minimal):
            minimal.append(s)
    if not minimal:
        return nvars

    best = nvars + 1

    def branch(remaining: tuple[frozenset, ...], chosen: int) -> None:
        nonlocal best
        if chosen >= best:
            return
        if not remaining:
            best = chosen
            return
        pivot = min(remaining, key=lambda s: (len(s), sorted(s)))
        for var in sorted(pivot):
            rest = tuple(s for s in remaining if var not in s)
            branch(rest, chosen + 1)

    branch(tuple(minimal), 0)
    return nvars - best


def quotient_dimension(gb: GroebnerBasis, budget: Budget | None = None) -> int | None:
    """Number of standard monomials (the staircase) of the leading ideal, or
    None when infinite.  Finite iff the leading ideal contains a pure power of
    every variable; that test decides both the global and the local case."""
    if gb.is_unit_ideal():
        return 0
    budget = budget or Budget()
    budget.context = "staircase count"
    nvars = gb.order.nvars
    lts = gb.leading_monomials()
    for j in range(nvars):
        if not any(all(e == 0 for k, e in enumerate(m) if k != j) and m[j] > 0 for m in lts):
            return None
    count = 0
    seen: set[Monomial] = set()
    stack: list[Monomial] = [(0,) * nvars]
    while stack:
        mono = stack.pop()
        if mono in seen:
            continue
        seen.add(mono)
        if any(mono_div(mono, lm) is not None for lm in lts):
            continue
        budget.charge()
        count += 1
        for j in range(nvars):
            stack.append(mono[:j] + (mono[j] + 1,) + mono[j + 1:])
    return count


# ---------------------------------------------------------------------------
# saturation by elimination


def saturation(gens: list[Poly], g: Poly, budget: Budget | None = None) -> GroebnerBasis:
    """Groebner basis (grevlex) of the saturation (gens) : g^infinity, via the
    extra-variable trick: eliminate t from gens + (1 - t*g)."""
    if g.is_zero():
        raise ValueError("cannot saturate by zero")
    budget = budget or Budget()
    nvars = gens[0].nvars
    ext = [f.insert_variable(nvars) for f in gens]
    g_ext = g.insert_variable(nvars)
    t = Poly.variable(nvars + 1, nvars)
    ext.append(Poly.constant(nvars + 1, 1) - t * g_ext)
    gb = buchberger(ext, eliminate_last(nvars + 1), budget)
    kept = []
    for f in gb.generators:
        if all(m[nvars] == 0 for m in f.terms):
            kept.append(f.substitute_constant(nvars, QI.one()).drop_variable(nvars))
    if not kept:
        raise ValueError("saturation produced no generators; inconsistent input")
    out = grevlex(nvars)
    kept.sort(key=lambda f: out.key(leading_monomial(f, out)), reverse=True)
    return GroebnerBasis(kept, out, dict(gb.stats))


# ---------------------------------------------------------------------------
# determinants and minors


def determinant(matrix: list[list[Poly]]) -> Poly:
    """Exact determinant by cofactor expansion along the first row."""
    size = len(matrix)
    if size == 0:
        raise ValueError("empty matrix")
    nvars = matrix[0][0].nvars
    if size == 1:
        return matrix[0][0]
    total = Poly.zero(nvars)
    for c in range(size):
        entry = matrix[0][c]
        if entry.is_zero():
            continue
        sub = [[row[k] for k in range(size) if k != c] for row in matrix[1:]]
        cofactor = entry * determinant(sub)
        total = total + (cofactor if c % 2 == 0 else -cofactor)
    return total


def minors(matrix: list[list[Poly]], size: int) -> list[Poly]:
    """All size x size minors, row/column subsets in lexicographic order.
    Zero minors are kept out; an empty list means no such minors exist."""
    if not matrix:
        return []
    nrows, ncols = len(matrix), len(matrix[0])
    if size > nrows or size > ncols:
        return []
    out: list[Poly] = []
    for rows in combinations(range(nrows), size):
        for cols in combinations(range(ncols), size):
            d = determinant([[matrix[r][c] for c in cols] for r in rows])
            if not d.is_zero():
                out.append(d)
    return out


# ---------------------------------------------------------------------------
# local standard bases via homogenization


def homogenize(f: Poly) -> Poly:
    """Total-degree homogenization with a fresh LAST variable."""
    deg = f.total_degree()
    nvars = f.nvars
    acc = {}
    for m, c in f.terms.items():
        acc[m + (deg - sum(m),)] = c
    return Poly(nvars + 1, acc)


def dehomogenize(f: Poly) -> Poly:
    return f.substitute_constant(f.nvars - 1, QI.one()).drop_variable(f.nvars - 1)


def local_standard_basis(gens: list[Poly], budget: Budget | None = None) -> GroebnerBasis:
    """Standard basis of the ideal in the localization at the origin, with
    respect to the anti-graded revlex order.

    Route: homogenize the generators with a fresh variable, run Buchberger in
    the global homogenized order (whose leading terms dehomogenize to the
    local ones), set the new variable to 1, and minimalize.  Units
    short-circuit to the unit ideal.  The returned basis is minimal and monic;
    tails are NOT normal-formed (reduced normal forms under a local order
    would need Mora division, and nothing downstream reads tails)."""
    if not gens:
        raise ValueError("empty generator list")
    nvars = gens[0].nvars
    local = local_antigraded(nvars)
    nonzero = [f for f in gens if not f.is_zero()]
    if not nonzero:
        raise ValueError("all generators are zero")
    if any(not f.constant_term().is_zero() for f in nonzero):
        return GroebnerBasis([Poly.constant(nvars, 1)], local, {"unit": True})
    budget = budget or Budget()
    budget.context = "local standard basis"
    hom = [homogenize(f) for f in nonzero]
    gb = buchberger(hom, homogenized_local(nvars + 1), budget)
    if gb.is_unit_ideal():
        # only reachable when the homogenized ideal is the whole ring, which
        # the constant-term shortcut above has already ruled out
        return GroebnerBasis([Poly.constant(nvars, 1)], local, dict(gb.stats))
    deh = [dehomogenize(f) for f in gb.generators]
    lts = [(leading_monomial(f, local), f) for f in deh]
    survivors: list[tuple[Monomial, Poly]] = []
    for m, g in sorted(lts, key=lambda t: (sum(t[0]), t[0])):
        if not any(mono_div(m, sm) is not None for sm, _ in survivors):
            survivors.append((m, make_monic(g, local)))
    result = [g for _, g in survivors]
    result.sort(key=lambda f: local.key(leading_monomial(f, local)), reverse=True)
    return GroebnerBasis(result, local, dict(gb.stats))


def milnor_number(f: Poly, budget: Budget | None = None) -> int | None:
    """Milnor number of a hypersurface germ: the local quotient dimension of
    the Jacobian ideal.  None means the singularity is not isolated."""
    if f.is_zero():
        raise ValueError("zero polynomial has no Milnor number")
    if not f.constant_term().is_zero():
        raise ValueError("germ must vanish at the origin")
    partials = [f.partial(j) for j in range(f.nvars)]
    if all(p.is_zero() for p in partials):
        return None
    budget = budget or Budget()
    basis = local_standard_basis([p for p in partials if not p.is_zero()], budget)
    return quotient_dimension(basis, budget)
