import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from diffmv.cohomology import NotACocycle, bockstein, cohomology_group
from diffmv.diffcoh import (
    DiffClass,
    FlatClass,
    NonzeroCharacteristicClass,
    Sampler,
    delta1,
    delta2,
    diff_equal,
    diff_make,
    diff_zero,
    i1,
    i2,
    i2_preimage,
    in_lattice,
    relation,
    restrict_class,
    verify_diagram1,
)
from diffmv.simplicial import CoeffRing, Cochain, GradedCoefficients, SimplicialComplex, model

Z, Q, M = CoeffRing.INT, CoeffRing.RAT, CoeffRing.RATMOD


@pytest.fixture(scope="module")
def point():
    return model(SimplicialComplex([(0,)]), GradedCoefficients.integers())


def point_class(m, h):
    return diff_make(Cochain(m, 1), Cochain(m, 0, [Fraction(h)], Q))


def test_point_model_is_q_mod_z(point):
    zero = diff_zero(point, 1)
    assert not diff_equal(point_class(point, Fraction(1, 2)), zero)
    assert diff_equal(point_class(point, 1), zero)
    assert diff_equal(point_class(point, Fraction(7, 3)), point_class(point, Fraction(1, 3)))
    assert diff_equal(point_class(point, Fraction(1, 3)) + point_class(point, Fraction(2, 3)), zero)


@settings(max_examples=50, deadline=None)
@given(st.fractions(max_denominator=12), st.fractions(max_denominator=12))
def test_point_classes_compare_mod_one(a, b):
    m = model(SimplicialComplex([(0,)]), GradedCoefficients.integers())
    assert diff_equal(point_class(m, a), point_class(m, b)) == ((a - b).denominator == 1)


def test_i2_of_a_half_on_a_point_has_order_two(point):
    half = Cochain(point, 0, [Fraction(1, 2)], Q)
    f = i2(half)
    zero = diff_zero(point, 1)
    assert not diff_equal(f, zero) and diff_equal(f + f, zero)


def test_diff_make_rejects_non_cocycles(scenes):
    m = scenes["circle"].model()
    with pytest.raises(NotACocycle):
        diff_make(Cochain(m, 0, [1, 0, 0]))


@pytest.mark.parametrize("name,k", [("circle", 1), ("sphere", 2), ("torus", 1), ("rp2", 2), ("circle-torsion", 1)])
def test_group_laws_and_relation(scenes, name, k):
    m = scenes[name].model()
    S = Sampler(m, random.Random(7))
    zero = diff_zero(m, k)
    for _ in range(20):
        f, g = S.diff_class(k), S.diff_class(k)
        assert diff_equal(f, f)
        assert diff_equal(f + (-f), zero)
        assert diff_equal(f + g, g + f)
        b = S.int_cochain(k - 1)
        assert diff_equal(relation(b), zero)
        assert diff_equal(f + relation(b, S.rat_cochain(k - 2)), f)
        assert delta1(f + g) == delta1(f) + delta1(g)
        assert delta2(f + g) == delta2(f) + delta2(g)


def test_i2_kills_lattice_forms(scenes):
    m = scenes["torus"].model()
    S = Sampler(m, random.Random(3))
    for _ in range(20):
        lam = S.lattice_form(1)
        assert in_lattice(lam)
        assert diff_equal(i2(lam), diff_zero(m, 2))


def test_i2_preimage_round_trip_and_explicit_solve(scenes):
    s = scenes["circle"]
    mA = s.model("A")
    b = Cochain(mA, 0, [1, 0, 0])
    f = DiffClass(b.coboundary(), Cochain(mA, 0, None, Q))
    alpha = i2_preimage(f)
    # the answer is ρ(b) modulo Λ_J^0 (integer constants on the arc)
    assert diff_equal(i2(alpha), f)
    assert in_lattice(alpha - b.as_ring(Q))
    assert i2_preimage(diff_zero(mA, 1)).is_zero()


def test_i2_preimage_needs_vanishing_characteristic_class(scenes):
    s = scenes["circle"]
    m = s.model()
    H = cohomology_group(m, 1, Z)
    with pytest.raises(NonzeroCharacteristicClass):
        i2_preimage(diff_make(H.cocycle((1,))))


def test_rp2_flat_generator_has_nontrivial_characteristic_class(scenes):
    m = scenes["rp2"].model()
    F = cohomology_group(m, 1, M)
    H2 = cohomology_group(m, 2, Z)
    u = F.class_of(F.torsion_section[0])
    f = i1(FlatClass(u))
    assert delta2(f) == H2.generators()[0] == bockstein(u)
    assert delta1(f).is_zero()


def test_monopole_curvature_and_restriction(scenes):
    s = scenes["sphere"]
    _, f = s.classes["monopole"]
    c = f.c
    g = diff_make(c)
    assert delta1(g) == c.as_ring(Q)
    assert delta2(f) == delta2(g)
    assert not delta2(f).is_zero()
    assert delta2(restrict_class(f, s.dec.A)).is_zero()
    assert diff_equal(restrict_class(f, s.X), f)


@pytest.mark.parametrize("name,k", [("circle", 1), ("sphere", 2), ("rp2", 1), ("rp2", 2)])
def test_naturality_under_restriction(scenes, name, k):
    s = scenes[name]
    S = Sampler(s.model(), random.Random(11))
    for _ in range(15):
        f = S.diff_class(k)
        fA = restrict_class(f, s.dec.A)
        assert delta1(fA) == delta1(f).restrict(s.dec.A)
        assert delta2(fA) == cohomology_group(s.model("A"), k, Z).class_of(f.c.restrict(s.dec.A))
        a = S.rat_cochain(k - 1)
        assert diff_equal(restrict_class(i2(a), s.dec.A), i2(a.restrict(s.dec.A)))


@pytest.mark.parametrize("name", ["point", "circle", "rp2", "circle-torsion"])
@pytest.mark.parametrize("k", [1, 2])
def test_diagram1_passes(scenes, name, k):
    s = scenes[name]
    rep = verify_diagram1(s.X, k, s.coeffs, samples=30, seed=1)
    assert rep.passed, rep.to_text()


@pytest.mark.parametrize("fault", ["drop_rho", "flip_sign"])
def test_diagram1_faults_are_detected(scenes, fault):
    s = scenes["circle"]
    rep = verify_diagram1(s.X, 1, s.coeffs, samples=30, fault=fault)
    assert not rep.passed


def test_diagram1_is_deterministic(scenes):
    s = scenes["rp2"]
    a = verify_diagram1(s.X, 2, s.coeffs, samples=10, seed=5).to_dict()
    b = verify_diagram1(s.X, 2, s.coeffs, samples=10, seed=5).to_dict()
    assert a == b
