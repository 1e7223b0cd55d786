from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from oracles import group_string, integral_cohomology

from diffmv.cohomology import (
    NotACocycle,
    bockstein,
    ch,
    cohomology_group,
    compute_cohomology,
    consistent_sign,
    lattice_data,
    mayer_vietoris,
    mod_lattice_p,
    verify_diagram2,
)
from diffmv.exactalg import FgAbGroup, hom_kernel_image, rational_rank, subgroups_equal
from diffmv.simplicial import CoeffRing, Cochain, GradedCoefficients, SimplicialComplex, model

Z, Q, M = CoeffRing.INT, CoeffRing.RAT, CoeffRing.RATMOD


@pytest.mark.parametrize("name", ["point", "circle", "sphere", "rp2", "torus"])
@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_integral_groups_match_oracle(scenes, name, k):
    s = scenes[name]
    assert str(cohomology_group(s.model(), k, Z)) == group_string(*integral_cohomology(s.raw["complex"], k))


@pytest.mark.parametrize("name", ["point", "circle", "sphere", "rp2", "torus"])
@pytest.mark.parametrize("k", [0, 1, 2])
def test_rational_dimension_is_free_rank(scenes, name, k):
    s = scenes[name]
    assert cohomology_group(s.model(), k, Q).dim == integral_cohomology(s.raw["complex"], k)[0]


def test_compute_cohomology_on_circle():
    X = SimplicialComplex([(0, 1), (1, 2), (0, 2)])
    assert str(compute_cohomology(X, 1, GradedCoefficients.integers())) == "Z"


def test_rp2_flat_groups(scenes):
    m = scenes["rp2"].model()
    F = [cohomology_group(m, k, M) for k in range(3)]
    assert F[0].divisible_rank == 1 and F[0].finite_part.order == 1
    assert F[1].divisible_rank == 0 and str(F[1].finite_part) == "Z/2"
    assert F[2].divisible_rank == 0 and F[2].finite_part.order == 1


def test_circle_with_torsion_coefficients(scenes):
    # H^k(S^1; Z + Z/2) = H^k(S^1; Z) + H^k(S^1; Z/2)
    m = scenes["circle-torsion"].model()
    assert [str(cohomology_group(m, k, Z)) for k in range(3)] == ["Z + Z/2", "Z + Z/2", "0"]
    assert [cohomology_group(m, k, Q).dim for k in range(3)] == [1, 1, 0]


def test_class_of_rejects_non_cocycles(scenes):
    m = scenes["circle"].model()
    with pytest.raises(NotACocycle):
        cohomology_group(m, 0, Z).class_of(Cochain(m, 0, [1, 0, 0]))


def test_rp2_bockstein_hits_the_torsion_generator(scenes):
    m = scenes["rp2"].model()
    F1 = cohomology_group(m, 1, M)
    H2 = cohomology_group(m, 2, Z)
    (u,) = F1.torsion_section
    x = bockstein(F1.class_of(u))
    assert x == H2.generators()[0]
    assert not x.is_zero()


def test_ch_kills_torsion_and_p_kills_lattice(scenes):
    m = scenes["circle-torsion"].model()
    H1 = cohomology_group(m, 1, Z)
    for x in H1.generators():
        if H1.group.element_order(x.coords) is not None:
            assert ch(x).is_zero()
        assert mod_lattice_p(ch(x)).is_zero()


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-5, 5), min_size=2, max_size=2))
def test_cohomology_classes_form_a_group(scenes, coords):
    H = cohomology_group(scenes["torus"].model(), 1, Z)
    x = H.element(coords)
    y = H.generators()[0]
    assert (x + y) - y == x
    assert (x - x).is_zero()
    assert H.class_of(x.representative()) == x


def test_lattice_of_two_points(scenes):
    s = scenes["circle"]
    L = lattice_data(model(s.dec.D, s.coeffs), 0)
    assert L.rank == 2
    one = Cochain(L.rational.model, 0, [1, 0], Q)
    half = Cochain(L.rational.model, 0, [Fraction(1, 2), 0], Q)
    assert L.in_lattice(one) and not L.in_lattice(half)


def test_moebius_band_lattice(scenes):
    s = scenes["rp2"]
    assert str(cohomology_group(s.model("A"), 1, Z)) == "Z"
    assert lattice_data(s.model("A"), 1).rank == 1


def test_circle_delta_image_is_diagonal(scenes):
    s = scenes["circle"]
    mv = mayer_vietoris(s.dec, s.coeffs)
    maps = mv.int_maps(0)
    _, (_, img) = hom_kernel_image(maps.delta)
    HD = mv.group("D", 0)
    assert str(HD) == "Z^2"
    # constant functions 1 on A and 0 on B restrict to the constant 1 on D
    ones = HD.coords(Cochain(mv.models["D"], 0, [1, 1]))
    assert subgroups_equal(HD.group, img.matrix.columns(), [ones])
    assert mv.int_maps(0).dstar.is_surjective()


def test_sphere_rational_dstar_is_an_isomorphism(scenes):
    s = scenes["sphere"]
    d = mayer_vietoris(s.dec, s.coeffs).rat_maps(1).dstar
    assert d.shape == (1, 1) and rational_rank(d) == 1


@pytest.mark.parametrize("name", ["circle", "sphere", "rp2", "torus", "circle-torsion"])
@pytest.mark.parametrize("ring", [Z, Q, M])
def test_mayer_vietoris_rows_are_exact(scenes, name, ring):
    s = scenes[name]
    rows = mayer_vietoris(s.dec, s.coeffs).exactness(ring, 0, 2)
    assert rows and all(ok for _, ok in rows), rows


@pytest.mark.parametrize("name,k", [("circle", 1), ("rp2", 2), ("torus", 2), ("circle-torsion", 1)])
def test_diagram2_passes_with_recorded_signs(scenes, name, k):
    s = scenes[name]
    rep = verify_diagram2(s.dec, k, s.coeffs)
    assert rep.passed, rep.to_text()
    assert set(rep.facts["signs"].values()) <= {1, -1}
    assert len(rep.facts["signs"]) == 6


def test_diagram2_detects_a_flipped_delta(scenes):
    s = scenes["circle"]
    rep = verify_diagram2(s.dec, 1, s.coeffs, fault="flip_delta")
    assert rep.facts["fault_applied"]
    assert not rep.passed


def test_consistent_sign():
    assert consistent_sign([(1, 1), (2, 2)]) == 1
    assert consistent_sign([(1, -1), (-2, 2)]) == -1
    assert consistent_sign([(1, 1), (1, -1)]) is None


def test_group_strings():
    assert str(FgAbGroup.from_invariants((2, 4), 1)) == "Z + Z/2 + Z/4"
