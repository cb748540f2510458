"""Sparse exact multivariate polynomials: arithmetic, weighted structure,
weight inference, and variable surgery."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from germlab.poly import Poly, infer_weights, mono_div, mono_lcm, mono_weighted_degree
from germlab.qi import QI

from conftest import F, P


# -- monomial helpers -------------------------------------------------------


def test_monomial_helpers():
    assert mono_div((3, 1), (1, 1)) == (2, 0)
    assert mono_div((1, 0), (0, 1)) is None
    assert mono_lcm((3, 0), (1, 2)) == (3, 2)
    assert mono_weighted_degree((2, 1), [F("1/2"), F("1/3")]) == F("4/3")


# -- ring operations --------------------------------------------------------


def test_arithmetic_matches_hand_expansion():
    f = P("x + y", "x y")
    assert f * f == P("x^2 + 2*x*y + y^2", "x y")
    assert f**3 == P("x^3 + 3*x^2*y + 3*x*y^2 + y^3", "x y")
    assert f - f == Poly.zero(2)
    assert P("(1/2 + 3*i)*x", "x y") == P("1/2*x + 3*i*x", "x y")


def test_zero_terms_are_dropped():
    f = P("x + y", "x y") - P("y", "x y")
    assert f.terms == {(1, 0): QI.one()}


def test_partial_derivatives():
    f = P("x^2*y + 3*y^4")
    assert f.partial(0) == P("2*x*y")
    assert f.partial(1) == P("x^2 + 12*y^3")
    assert f.partial(2) == Poly.zero(3)


def test_orders_and_degrees():
    f = P("x^2 + y^5")
    assert f.total_degree() == 5
    assert f.order() == 2
    assert Poly.zero(3).order() is None
    w = [F("1/2"), F("1/2"), F("1/3")]
    assert f.weighted_order(w) == 1
    assert P("z^3").weighted_order(w) == 1


# -- weighted splitting (the f_p + f_{>p} decomposition) --------------------


def test_split_by_weight_examples():
    w = [F("1/2"), F("1/2"), F("1/3")]
    f = P("x^2 + y^2 + z^3 + y^5")
    principal, rest = f.split_by_weight(w)
    assert principal == P("x^2 + y^2 + z^3")
    assert rest == P("y^5")

    g = P("x^2 + y^2 + z^3")
    principal, rest = g.split_by_weight(w)
    assert principal == g and rest.is_zero()

    h = P("x^2 + x^3 + x^4", "x")
    principal, rest = h.split_by_weight([F("1/2")])
    assert principal == P("x^2", "x")
    assert rest == P("x^3 + x^4", "x")


def test_split_by_weight_rejects_zero():
    with pytest.raises(ValueError):
        Poly.zero(2).split_by_weight([F(1), F(1)])


def test_weighted_homogeneity():
    w = [F("1/2"), F("1/2"), F("1/3")]
    assert P("x^2 + y^2 + z^3").is_weighted_homogeneous(w)
    assert not P("x^2 + z^2").is_weighted_homogeneous(w)
    assert Poly.zero(3).is_weighted_homogeneous(w)


# -- weight inference -------------------------------------------------------


def test_infer_weights_unique_cases():
    inf = infer_weights([P("x^2 + y^2 + z^3")], ["x", "y", "z"])
    assert inf.status == "unique"
    assert inf.weights == [F("1/2"), F("1/2"), F("1/3")]
    assert inf.degrees == [F(1)]

    inf = infer_weights([P("z^5 + x^15 + x*y^7")], ["x", "y", "z"])
    assert inf.status == "unique"
    assert inf.weights == [F("1/15"), F("2/15"), F("3/15")]
    assert inf.degrees == [F(1)]


def test_infer_weights_inconsistent():
    # 2w_x = 2w_y = p forces w_x + 3w_y = 2p != p
    inf = infer_weights([P("x^2 + x*y^3 + y^2", "x y")], ["x", "y"])
    assert inf.status == "not_weighted_homogeneous"


def test_infer_weights_underdetermined_reports_free_variables():
    inf = infer_weights([P("x^2", "x y")], ["x", "y"])
    assert inf.status == "underdetermined"
    assert inf.free_variables == ["y"]


@given(
    st.lists(st.integers(min_value=0, max_value=3), min_size=3, max_size=3).filter(any),
    st.lists(st.integers(min_value=0, max_value=3), min_size=3, max_size=3).filter(any),
)
def test_inferred_weights_reproduce_the_polynomial(e1, e2):
    w = [F("1/2"), F("1/3"), F("1/5")]
    d1 = mono_weighted_degree(tuple(e1), w)
    d2 = mono_weighted_degree(tuple(e2), w)
    f = Poly.from_terms(3, [(tuple(e1), QI.one()), (tuple(e2), QI(2))])
    if d1 == d2:
        # weighted-homogeneous for *some* weights; the inferred ones must work
        inf = infer_weights([f], ["x", "y", "z"])
        if inf.status == "unique":
            assert f.is_weighted_homogeneous(inf.weights)
            assert f.weighted_order(inf.weights) == inf.degrees[0]


# -- evaluation and substitution --------------------------------------------


def test_evaluate_exact_and_numeric_agree():
    f = P("x^2*y - 3*z + 1/2")
    point = [QI(1, 1), QI(Fraction(1, 2)), QI(0, 2)]
    exact = f.evaluate_exact(point)
    numeric = f.evaluate_numeric([p.to_complex() for p in point])
    assert abs(exact.to_complex() - numeric) < 1e-12


def test_substitute_and_drop():
    f = P("x^2 + x*y + z")
    g = f.substitute_constant(0, QI(2))
    assert g == P("2*y + z + 4")
    assert g.drop_variable(0) == P("2*x + y + 4", "x y")  # names shift down


def test_insert_variable():
    f = P("x*y", "x y")
    assert f.insert_variable(1) == Poly.from_terms(3, [((1, 0, 1), QI.one())])


def test_permute_variables_semantics():
    # new slot j reads from old slot perm[j]
    f = P("x^2 + y^3 + z^5")
    perm = [2, 0, 1]  # new order (z, x, y)
    g = f.permute_variables(perm)
    assert g == P("x^5 + y^2 + z^3")


@settings(max_examples=60)
@given(
    st.lists(
        st.tuples(
            st.tuples(*[st.integers(min_value=0, max_value=4)] * 2),
            st.fractions(min_value=-3, max_value=3, max_denominator=4),
        ),
        max_size=5,
    )
)
def test_split_reassembles(pairs):
    f = Poly.from_terms(2, [(m, QI(c)) for m, c in pairs])
    if f.is_zero():
        return
    w = [F("1/2"), F("1/3")]
    principal, rest = f.split_by_weight(w)
    assert principal + rest == f
    if not rest.is_zero():
        assert rest.weighted_order(w) > principal.weighted_order(w)
    assert principal.is_weighted_homogeneous(w)
