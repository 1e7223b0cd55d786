"""Cohomology of a graded cochain complex with Z, Q and Q/Z coefficients."""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from ..exactalg import FgAbGroup, IntegerSolver, IntMatrix, RatMatrix, RationalSolver, smith_decomposition
from ..simplicial import CoeffRing, Cochain, model as _model


class NotACocycle(ValueError):
    pass


class NotInLattice(ValueError):
    pass


def _integer_subquotient(d_prev, d_next):
    """``ker d_next / im d_prev`` over Z.

    Returns ``(group, reps, P)``: the group in canonical diagonal form,
    integer representative vectors of its canonical generators, and an
    integer matrix ``P`` with ``P @ c`` the (unreduced) canonical coordinates
    of any ``c`` in ``ker d_next``.
    """
    n = d_next.ncols
    s1 = smith_decomposition(d_next)
    r = s1.rank
    z = n - r
    Zb = s1.V.select_cols(range(r, n))
    Zc = s1.Vinv.select_rows(range(r, n))
    Bz = Zc @ d_prev if d_prev.ncols else IntMatrix.zeros(z, 0)
    s2 = smith_decomposition(Bz)
    diag = s2.diagonal
    units = sum(1 for e in diag if e == 1)
    torsion = diag[units:]
    keep = range(units, z)
    reps = [Zb @ s2.Uinv.col(i) for i in keep]
    P = (s2.U @ Zc).select_rows(keep) if z else IntMatrix.zeros(0, n)
    group = FgAbGroup.from_invariants(torsion, z - len(diag))
    return group, reps, P


@dataclass(frozen=True)
class CohClass:
    """Element of a cohomology group, in the group's canonical coordinates."""

    group: object
    coords: tuple
    rep: Cochain = field(default=None, compare=False, repr=False)

    def __add__(self, other):
        self._same(other)
        return self.group.element(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return self.group.element(tuple(-a for a in self.coords))

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, n):
        return self.group.element(tuple(n * a for a in self.coords))

    def _same(self, other):
        if other.group is not self.group:
            raise ValueError("classes live in different groups")

    def is_zero(self):
        return not any(self.coords)

    def representative(self):
        return self.rep if self.rep is not None else self.group.cocycle(self.coords)


class _CohBase:
    ring = None

    def __init__(self, model, degree):
        self.model = model
        self.degree = degree

    def _check_cochain(self, c):
        if c.model is not self.model or c.degree != self.degree:
            raise ValueError(
                f"cochain of degree {c.degree} on {c.model.complex!r} does not belong to "
                f"H^{self.degree} of {self.model.complex!r}"
            )

    def class_of(self, c):
        return CohClass(self, self.coords(c), c)

    def element(self, coords):
        return CohClass(self, self.reduce(coords))

    def zero(self):
        return self.element((0,) * self.ncoords)

    def generators(self):
        out = []
        for i in range(self.ncoords):
            coords = tuple(int(i == j) for j in range(self.ncoords))
            out.append(CohClass(self, self.reduce(coords), self.cocycle(coords)))
        return out


class IntCohomology(_CohBase):
    """``H^k(K; Z)`` in canonical form with cocycle representatives."""

    ring = CoeffRing.INT

    def __init__(self, model, degree):
        super().__init__(model, degree)
        group, reps, P = _integer_subquotient(model.coboundary(degree - 1), model.coboundary(degree))
        self.group = group
        self.reps = [Cochain(model, degree, r) for r in reps]
        self._P = P

    @property
    def ncoords(self):
        return self.group.ncoords

    @property
    def torsion(self):
        return self.group.invariant_factors

    @property
    def free_rank(self):
        return self.group.free_rank

    @property
    def n_torsion(self):
        return len(self.group.invariant_factors)

    def reduce(self, coords):
        coords = tuple(int(c) for c in coords)
        tor = self.group.invariant_factors
        return tuple(c % d for c, d in zip(coords, tor)) + coords[len(tor):]

    def coords(self, c):
        self._check_cochain(c)
        if c.ring is not CoeffRing.INT and not c.is_integral():
            raise ValueError("integral cohomology needs an integer cochain")
        vals = tuple(int(v) for v in c.values)
        if any(self.model.coboundary(self.degree) @ vals):
            raise NotACocycle(f"cochain is not a cocycle in degree {self.degree}")
        return self.reduce(self._P @ vals)

    def cocycle(self, coords):
        vals = [0] * self.model.dim(self.degree)
        for a, rep in zip(coords, self.reps):
            if a:
                vals = [v + a * x for v, x in zip(vals, rep.values)]
        return Cochain(self.model, self.degree, vals)

    def free_part(self, coords):
        return tuple(coords[self.n_torsion:])

    def torsion_part(self, coords):
        return tuple(coords[: self.n_torsion])

    def __str__(self):
        return str(self.group)


class RatCohomology(_CohBase):
    """``H^k(K ⊗ Q)`` with a basis found by Gauss-Jordan elimination.

    Deliberately independent of the SNF path used for integral cohomology,
    so that ``ch`` is a nontrivial matrix and lattice checks mean something.
    """

    ring = CoeffRing.RAT

    def __init__(self, model, degree):
        super().__init__(model, degree)
        d_prev = model.coboundary(degree - 1)
        d_next = model.coboundary(degree)
        n = d_next.ncols
        ker = RationalSolver(d_next)
        free = ker.free
        basis = ker.kernel_basis
        z = len(free)
        bcoords = [tuple(col[f] for f in free) for col in d_prev.columns()]
        aug = RatMatrix.from_columns(bcoords + [tuple(int(i == j) for i in range(z)) for j in range(z)], z)
        pivots = RationalSolver(aug).pivots
        p = len(bcoords)
        b_piv = [c for c in pivots if c < p]
        comp = [c - p for c in pivots if c >= p]
        self.dim = len(comp)
        M = RatMatrix.from_columns([bcoords[c] for c in b_piv] + [tuple(int(i == j) for i in range(z)) for j in comp], z)
        inv = _inverse(M)
        tail = inv.select_rows(range(len(b_piv), z))
        sel = RatMatrix([[int(j == f) for j in range(n)] for f in free], n)
        self._P = tail @ sel if z else RatMatrix.zeros(0, n)
        self.reps = [Cochain(model, degree, basis[j], CoeffRing.RAT) for j in comp]

    @property
    def ncoords(self):
        return self.dim

    def reduce(self, coords):
        return tuple(Fraction(c) for c in coords)

    def coords(self, c):
        self._check_cochain(c)
        vals = tuple(Fraction(v) for v in c.values)
        if any(self.model.coboundary(self.degree) @ vals):
            raise NotACocycle(f"rational cochain is not closed in degree {self.degree}")
        return self._P @ vals

    def cocycle(self, coords):
        vals = [Fraction(0)] * self.model.dim(self.degree)
        for a, rep in zip(coords, self.reps):
            if a:
                vals = [v + a * x for v, x in zip(vals, rep.values)]
        return Cochain(self.model, self.degree, vals, CoeffRing.RAT)

    def __str__(self):
        return "0" if not self.dim else ("Q" if self.dim == 1 else f"Q^{self.dim}")


def _inverse(M):
    n = M.nrows
    solver = RationalSolver(M)
    cols = [solver.solve(tuple(int(i == j) for i in range(n))) for j in range(n)]
    if any(c is None for c in cols):
        raise ValueError("matrix is singular")
    return RatMatrix.from_columns(cols, n) if n else RatMatrix.zeros(0, 0)


class DualHomology:
    """``H_k`` of the dual chain complex ``Hom(K, Z)``, the Pontryagin dual of ``H^k(K; Q/Z)``."""

    def __init__(self, model, degree):
        self.model = model
        self.degree = degree
        d_prev = model.coboundary(degree).T
        d_next = model.coboundary(degree - 1).T
        self.group, reps, self._P = _integer_subquotient(d_prev, d_next)
        self.cycles = reps

    def coords(self, chain):
        chain = tuple(chain)
        if any(self.model.coboundary(self.degree - 1).T @ chain):
            raise NotACocycle("chain is not a cycle")
        vals = self._P @ chain
        tor = self.group.invariant_factors
        return tuple(c % d for c, d in zip(vals, tor)) + tuple(vals[len(tor):])


class FlatCohomology(_CohBase):
    """``H^k(K ⊗ Q/Z)``: rational cochains ``u`` with ``δu`` integral, modulo
    integer cochains and rational coboundaries.

    Coordinates are the pairings of a representative with the canonical
    generators of the dual homology, taken mod 1; by universal coefficients
    this identifies the group with ``Hom(H_k(K^∨), Q/Z)``, i.e. a divisible part
    of rank ``rank H^k(K; Q)`` plus a finite part isomorphic to the torsion of
    ``H^(k+1)(K; Z)``.
    """

    ring = CoeffRing.RATMOD

    def __init__(self, model, degree):
        super().__init__(model, degree)
        self.dual = DualHomology(model, degree)

    @property
    def ncoords(self):
        return self.dual.group.ncoords

    @property
    def divisible_rank(self):
        return self.dual.group.free_rank

    @property
    def finite_part(self):
        return FgAbGroup.from_invariants(self.dual.group.invariant_factors)

    def reduce(self, coords):
        return tuple(Fraction(c) % 1 for c in coords)

    def lift_values(self, c):
        self._check_cochain(c)
        vals = tuple(Fraction(v) for v in c.values)
        if any(Fraction(x).denominator != 1 for x in self.model.coboundary(self.degree) @ vals):
            raise NotACocycle(f"δu is not integral in degree {self.degree}")
        return vals

    def coords(self, c):
        vals = self.lift_values(c)
        return self.reduce(tuple(sum(a * b for a, b in zip(vals, z) if b) for z in self.dual.cycles))

    def class_of(self, c):
        return CohClass(self, self.coords(c), c.as_ring(CoeffRing.RAT))

    @cached_property
    def _int_next(self):
        return IntCohomology(self.model, self.degree + 1)

    @cached_property
    def _rat(self):
        return RatCohomology(self.model, self.degree)

    @cached_property
    def torsion_section(self):
        """Cochains ``s_i`` with Bockstein ``b(s_i)`` the i-th torsion generator of ``H^(k+1)(Z)``."""
        H = self._int_next
        solver = IntegerSolver(self.model.coboundary(self.degree))
        out = []
        for i, t in enumerate(H.torsion):
            tau = H.reps[i]
            y = solver.solve(tuple(t * v for v in tau.values))
            if y is None:
                raise AssertionError("torsion representative has no integral primitive of its multiple")
            out.append(Cochain(self.model, self.degree, [Fraction(-v, t) for v in y], CoeffRing.RAT))
        return out

    def divisible_elements(self, denominators=(2, 3, 7)):
        out = []
        for rep in self._rat.reps:
            for n in denominators:
                out.append(Fraction(1, n) * rep)
        return out

    def generators(self):
        """Finite-part section elements, then sampled divisible elements."""
        return [self.class_of(c) for c in self.torsion_section + self.divisible_elements()]

    def cocycle(self, coords):
        """A rational representative whose coordinates are ``coords`` (mod 1)."""
        coords = self.reduce(coords)
        ntor = len(self.dual.group.invariant_factors)
        section = self.torsion_section
        # finite part: choose integer multiples of the section elements
        pair = [self.coords(s) for s in section]
        if ntor:
            tor = self.dual.group.invariant_factors
            rows = []
            rhs = []
            for l, t in enumerate(tor):
                rows.append([int(p[l] * t) for p in pair] + [t if m == l else 0 for m in range(ntor)])
                rhs.append(int(coords[l] * t))
            sol = IntegerSolver(IntMatrix(rows, len(section) + ntor)).solve(rhs)
            if sol is None:
                raise AssertionError("section elements do not span the finite part")
            n = sol[: len(section)]
        else:
            n = ()
        vals = [Fraction(0)] * self.model.dim(self.degree)
        for a, s in zip(n, section):
            if a:
                vals = [v + a * x for v, x in zip(vals, s.values)]
        u = Cochain(self.model, self.degree, vals, CoeffRing.RAT)
        have = self.coords(u)
        free_cycles = self.dual.cycles[ntor:]
        reps = self._rat.reps
        if free_cycles:
            A = RatMatrix([[sum(a * b for a, b in zip(r.values, z)) for r in reps] for z in free_cycles], len(reps))
            want = [coords[ntor + m] - have[ntor + m] for m in range(len(free_cycles))]
            q = RationalSolver(A).solve(want)
            for a, r in zip(q, reps):
                if a:
                    u = u + a * r
        return u

    def __str__(self):
        parts = []
        if self.divisible_rank:
            parts.append("Q/Z" if self.divisible_rank == 1 else f"(Q/Z)^{self.divisible_rank}")
        parts.extend(f"Z/{d}" for d in self.dual.group.invariant_factors)
        return " + ".join(parts) if parts else "0"


class LatticeData:
    """Rational cohomology basis plus the lattice ``Im(ch)`` inside it.

    ``ch_matrix`` has one column per free generator of ``H^k(Z)``: the
    rational coordinates of that generator.  ``Im(ch)`` has full rank, so the
    matrix is square and invertible.
    """

    def __init__(self, model, degree):
        self.model = model
        self.degree = degree
        self.rational = cohomology_group(model, degree, CoeffRing.RAT)
        self.integral = cohomology_group(model, degree, CoeffRing.INT)
        H = self.integral
        cols = [self.rational.coords(rep.as_ring(CoeffRing.RAT)) for rep in H.reps[H.n_torsion:]]
        n = self.rational.dim
        self.ch_matrix = RatMatrix.from_columns(cols, n) if cols else RatMatrix.zeros(n, 0)
        if self.ch_matrix.ncols != n:
            raise AssertionError("Im(ch) is not full rank in rational cohomology")
        self._inv = _inverse(self.ch_matrix)

    @property
    def rank(self):
        return self.ch_matrix.ncols

    def lattice_coords(self, rational_coords):
        """Coordinates with respect to the ``ch`` generators (rational in general)."""
        return self._inv @ tuple(rational_coords)

    def in_lattice(self, c):
        """Whether a rational cochain is closed with de Rham class in ``Im(ch)``."""
        try:
            q = self.rational.coords(c.as_ring(CoeffRing.RAT) if c.ring is CoeffRing.INT else c)
        except NotACocycle:
            return False
        return all(x.denominator == 1 for x in self.lattice_coords(q))

    def integral_lattice_coords(self, c):
        q = self.rational.coords(c)
        n = self.lattice_coords(q)
        if any(x.denominator != 1 for x in n):
            raise NotInLattice(f"class has non-integral lattice coordinates {[str(x) for x in n]}")
        return tuple(int(x) for x in n)

    def lattice_cocycle(self, n):
        """Integral cocycle with lattice coordinates ``n``."""
        H = self.integral
        coords = (0,) * H.n_torsion + tuple(n)
        return H.cocycle(coords).as_ring(CoeffRing.RAT)


def cohomology_group(model, k, ring=CoeffRing.INT):
    """``H^k`` of a graded cochain complex in the given ring (cached per complex)."""
    ring = CoeffRing(ring) if not isinstance(ring, CoeffRing) else ring
    cache = model.__dict__.setdefault("_coh_cache", {})
    key = (k, ring)
    if key not in cache:
        cls = {CoeffRing.INT: IntCohomology, CoeffRing.RAT: RatCohomology, CoeffRing.RATMOD: FlatCohomology}[ring]
        cache[key] = cls(model, k)
    return cache[key]


def lattice_data(model, k):
    cache = model.__dict__.setdefault("_coh_cache", {})
    key = (k, "lattice")
    if key not in cache:
        cache[key] = LatticeData(model, k)
    return cache[key]


def compute_cohomology(complex, k, coeffs, ring=CoeffRing.INT):
    return cohomology_group(_model(complex, coeffs), k, ring)


def ch(x):
    """``J^k(Z) -> H^k(Q)``: the same representative cocycle read rationally."""
    if x.group.ring is not CoeffRing.INT:
        raise ValueError("ch takes an integral class")
    Q = cohomology_group(x.group.model, x.group.degree, CoeffRing.RAT)
    rep = x.representative().as_ring(CoeffRing.RAT)
    return Q.class_of(rep)


def bockstein(u):
    """``J^k(Q/Z) -> J^(k+1)(Z)``, ``u -> [-δū]`` for a rational lift ``ū``.

    The sign makes ``b = δ2 ∘ i1`` hold on the nose for ``i1(u) = (-δū, ū)``.
    """
    if u.group.ring is not CoeffRing.RATMOD:
        raise ValueError("the Bockstein takes a Q/Z class")
    lift = u.representative().as_ring(CoeffRing.RAT)
    d = lift.coboundary()
    c = Cochain(d.model, d.degree, [-int(v) for v in d.values])
    return cohomology_group(u.group.model, u.group.degree + 1, CoeffRing.INT).class_of(c)


def mod_lattice_p(s):
    """``p: H^k(Q) -> J^k(Q/Z)``, reduction of the representative mod 1."""
    if s.group.ring is not CoeffRing.RAT:
        raise ValueError("p takes a rational class")
    F = cohomology_group(s.group.model, s.group.degree, CoeffRing.RATMOD)
    return F.class_of(s.representative())
