from fractions import Fraction
from itertools import combinations
from math import gcd
import random

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from diffmv.exactalg import (
    AbHom,
    FgAbGroup,
    IllDefinedHomomorphism,
    IntegerSolver,
    IntMatrix,
    RatMatrix,
    RationalSolver,
    exact_at,
    invariant_factors,
    preimage_solve,
    quotient_group,
    rational_rank,
    smith_normal_form,
    subgroups_equal,
    torsion_subgroup,
)


def determinantal_factors(rows):
    """Invariant factors from gcds of minors (d_k = D_k / D_(k-1))."""
    M = sympy.Matrix(rows)
    m, n = M.shape
    out = []
    prev = 1
    for k in range(1, min(m, n) + 1):
        g = 0
        for r in combinations(range(m), k):
            for c in combinations(range(n), k):
                g = gcd(g, int(M.extract(list(r), list(c)).det()))
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return tuple(abs(d) for d in out)


small_matrices = st.integers(1, 4).flatmap(
    lambda m: st.integers(1, 4).flatmap(
        lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=m, max_size=m)
    )
)


@settings(max_examples=150, deadline=None)
@given(small_matrices)
def test_snf_matches_determinantal_divisors(rows):
    assert invariant_factors(rows) == determinantal_factors(rows)


@settings(max_examples=150, deadline=None)
@given(small_matrices)
def test_snf_is_a_unimodular_diagonalization(rows):
    M = IntMatrix(rows)
    U, S, V = smith_normal_form(M)
    assert U @ M @ V == S
    assert U.is_unimodular() and V.is_unimodular()
    diag = [S[i, i] for i in range(min(S.shape)) if S[i, i]]
    assert all(b % a == 0 for a, b in zip(diag, diag[1:]))
    assert all(S[i, j] == 0 for i in range(S.nrows) for j in range(S.ncols) if i != j)


def test_snf_docstring_example():
    _, S, _ = smith_normal_form([[2, 4], [6, 8]])
    assert S.tolist() == [[2, 0], [0, 4]]


def test_snf_of_zero_and_empty():
    assert invariant_factors([[0, 0], [0, 0]]) == ()
    assert invariant_factors(IntMatrix.zeros(3, 0)) == ()


@settings(max_examples=100, deadline=None)
@given(small_matrices, st.lists(st.integers(-5, 5), min_size=4, max_size=4), st.integers(0, 10**6))
def test_integer_solver_finds_solutions_of_consistent_systems(rows, x, seed):
    M = IntMatrix(rows)
    x = tuple(x[: M.ncols])
    b = M @ x
    s = IntegerSolver(M)
    for rng in (None, random.Random(seed)):
        y = s.solve(b, rng=rng)
        assert y is not None and M @ y == b


def test_integer_solver_rejects_non_integral_systems():
    s = IntegerSolver([[2, 0], [0, 3]])
    assert s.solve((1, 0)) is None
    assert s.solve_rational((1, 0)) == (Fraction(1, 2), 0)


@settings(max_examples=100, deadline=None)
@given(small_matrices)
def test_rational_rank_agrees_with_sympy(rows):
    assert rational_rank(IntMatrix(rows)) == sympy.Matrix(rows).rank()


@settings(max_examples=100, deadline=None)
@given(small_matrices)
def test_rational_kernel_is_kernel(rows):
    M = RatMatrix(rows)
    ker = RationalSolver(M).kernel_basis
    assert len(ker) == M.ncols - rational_rank(M)
    for v in ker:
        assert not any(M @ v)


invariants = st.lists(st.integers(2, 12), max_size=3)


@settings(max_examples=80, deadline=None)
@given(invariants, st.integers(0, 2))
def test_group_from_invariants_has_expected_order(tor, rank):
    G = FgAbGroup.from_invariants(tor, rank)
    expected = FgAbGroup.from_invariants(determinantal_factors([[t if i == j else 0 for j in range(len(tor))] for i, t in enumerate(tor)]) if tor else ())
    assert G.free_rank == rank
    assert G.invariant_factors == expected.invariant_factors
    if rank == 0:
        prod = 1
        for t in tor:
            prod *= t
        assert G.order == prod


def test_group_printing_and_normal_form():
    G = FgAbGroup(2, [[2], [0]])
    assert str(G) == "Z + Z/2"
    assert G.is_zero(G.normal_form((2, 0)))
    assert G.equal((1, 5), (3, 5))
    assert G.element_order((1, 0)) == 2
    assert G.element_order((0, 1)) is None


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=2, max_size=2), st.lists(st.integers(-4, 4), min_size=2, max_size=2))
def test_homomorphism_is_additive(x, y):
    G = FgAbGroup.from_invariants((6,), 1)
    H = FgAbGroup.from_invariants((3,), 1)
    f = AbHom(G, H, [[1, 0], [0, 2]])
    s = tuple(a + b for a, b in zip(x, y))
    assert H.equal(f(s), tuple(a + b for a, b in zip(f(x), f(y))))


def test_ill_defined_homomorphism_is_rejected():
    Z2 = FgAbGroup.from_invariants((2,))
    Z3 = FgAbGroup.from_invariants((3,))
    with pytest.raises(IllDefinedHomomorphism):
        AbHom(Z2, Z3, [[1]])


def test_kernel_image_and_exactness():
    Z = FgAbGroup.free(1)
    Z2 = FgAbGroup.from_invariants((2,))
    times2 = AbHom(Z, Z, [[2]])
    proj = AbHom(Z, Z2, [[1]])
    assert exact_at(times2, proj)
    assert not exact_at(AbHom(Z, Z, [[4]]), proj)
    assert times2.is_injective() and not times2.is_surjective()
    assert proj.is_surjective()


def test_quotient_and_torsion_subgroup():
    G = FgAbGroup.from_invariants((4,), 1)
    Q, _ = quotient_group(G, [(2, 0)])
    assert str(Q) == "Z + Z/2"
    T, incl = torsion_subgroup(G)
    assert T.order == 4
    assert subgroups_equal(G, incl.matrix.columns(), [(1, 0)])


def test_preimage_solve():
    Z = FgAbGroup.free(2)
    f = AbHom(Z, Z, [[1, 1], [0, 2]])
    x = preimage_solve(f, (3, 4))
    assert f(x) == (3, 4)
    assert preimage_solve(f, (0, 1)) is None
