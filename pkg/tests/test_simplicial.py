from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from diffmv.simplicial import (
    CoeffRing,
    Cochain,
    CoverError,
    DecompositionError,
    GlueMismatch,
    GradedCoefficients,
    SimplicialComplex,
    glue_cochain,
    model,
    restrict_cochain,
    validate_decomposition,
    zero_extend,
)

TRIANGLE = [(0, 1), (1, 2), (0, 2)]
SPHERE = [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]


def test_face_closure_and_counts():
    X = SimplicialComplex(SPHERE)
    assert [X.count(j) for j in range(3)] == [4, 6, 4]
    assert X.euler_characteristic() == 2
    assert (0, 2) in X and (0, 4) not in X
    assert sorted(X.maximal_simplices()) == sorted(SPHERE)


def test_vertex_order_is_irrelevant():
    assert SimplicialComplex([(2, 1, 0)]) == SimplicialComplex([(0, 1, 2)])


def test_decomposition_of_circle():
    dec = validate_decomposition(SimplicialComplex(TRIANGLE), [(0, 1), (1, 2)], [(0, 2)])
    assert dec.D.simplices() == ((0,), (2,))
    assert dec.piece("A") is dec.A


def test_cover_error_names_missing_simplex():
    with pytest.raises(CoverError) as exc:
        validate_decomposition(SimplicialComplex(TRIANGLE), [(0, 1)], [(0, 2)])
    assert "[1, 2]" in str(exc.value)


def test_piece_outside_x_is_rejected():
    with pytest.raises(DecompositionError):
        validate_decomposition(SimplicialComplex(TRIANGLE), TRIANGLE + [(0, 3)], [])


def test_coefficient_degree_collision():
    with pytest.raises(ValueError):
        GradedCoefficients([(0, 1, ()), (0, 2, ())])


def test_torsion_coefficients_are_resolved():
    G = GradedCoefficients([(0, 1, (2,))])
    kinds = sorted((s.shift, s.kind) for s in G.slots)
    assert kinds == [(-1, "rel"), (0, "free"), (0, "tor")]
    assert str(G) == "G0=Z + Z/2"


@pytest.mark.parametrize(
    "coeffs",
    [GradedCoefficients.integers(), GradedCoefficients([(0, 1, (2,))]), GradedCoefficients([(0, 1, ()), (1, 0, (3,))])],
)
def test_coboundary_squares_to_zero(coeffs):
    m = model(SimplicialComplex(SPHERE), coeffs)
    for k in range(m.min_degree - 1, m.max_degree + 1):
        d1, d0 = m.coboundary(k + 1), m.coboundary(k)
        if d1.ncols and d0.ncols and d1.nrows:
            assert (d1 @ d0).is_zero()


def test_cochain_arithmetic_and_rings():
    m = model(SimplicialComplex(TRIANGLE), GradedCoefficients.integers())
    a = Cochain(m, 0, [1, 2, 3])
    b = Cochain(m, 0, [Fraction(1, 2), 0, 0], CoeffRing.RAT)
    s = a + b
    assert s.ring is CoeffRing.RAT and s.values[0] == Fraction(3, 2)
    assert (a - a).is_zero()
    assert a.coboundary().values == (1, 2, 1)


def test_ratmod_values_reduce_mod_one():
    m = model(SimplicialComplex(TRIANGLE), GradedCoefficients.integers())
    u = Cochain(m, 0, [Fraction(3, 2), Fraction(-1, 3), 2], CoeffRing.RATMOD)
    assert u.values == (Fraction(1, 2), Fraction(2, 3), 0)


def test_glue_cochain_trivial_example():
    X = SimplicialComplex(TRIANGLE)
    dec = validate_decomposition(X, [(0, 1), (1, 2)], [(0, 2)])
    G = GradedCoefficients.integers()
    a = Cochain(model(dec.A, G), 0, [1, 0, 0])
    b = Cochain(model(dec.B, G), 0, [1, 0])
    g = glue_cochain(a, b, dec)
    assert g.values == (1, 0, 0)


def test_glue_cochain_mismatch():
    dec = validate_decomposition(SimplicialComplex(TRIANGLE), [(0, 1), (1, 2)], [(0, 2)])
    G = GradedCoefficients.integers()
    a = Cochain(model(dec.A, G), 0, [1, 0, 0])
    b = Cochain(model(dec.B, G), 0, [0, 0])
    with pytest.raises(GlueMismatch):
        glue_cochain(a, b, dec)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-9, 9), min_size=6, max_size=6))
def test_restriction_commutes_with_coboundary(vals):
    X = SimplicialComplex(SPHERE)
    A = SimplicialComplex([(0, 1, 2), (0, 1, 3)])
    m = model(X, GradedCoefficients.integers())
    c = Cochain(m, 1, vals)
    assert restrict_cochain(c.coboundary(), A) == restrict_cochain(c, A).coboundary()


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-9, 9), min_size=6, max_size=6))
def test_glue_of_restrictions_is_identity(vals):
    X = SimplicialComplex(SPHERE)
    dec = validate_decomposition(X, [(0, 1, 2), (0, 1, 3)], [(0, 2, 3), (1, 2, 3)])
    c = Cochain(model(X, GradedCoefficients.integers()), 1, vals)
    assert glue_cochain(c.restrict(dec.A), c.restrict(dec.B), dec) == c
    assert zero_extend(c.restrict(dec.A), X).restrict(dec.A) == c.restrict(dec.A)
