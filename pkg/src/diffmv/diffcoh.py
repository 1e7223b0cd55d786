"""Differential cohomology as differential cochain pairs.

A class of degree ``k`` is a pair ``(c, h)``: ``c`` an integer cocycle of
degree ``k`` and ``h`` a rational cochain of degree ``k-1``, modulo

    (c, h) ~ (c + δb, h - b + δs)

for integer ``b`` and rational ``s``.  Curvature is ``δ1(c, h) = c + δh``
and the characteristic class is ``δ2(c, h) = [c]``.
"""

import random
from dataclasses import dataclass
from fractions import Fraction

from .cohomology import (
    CohClass,
    NotACocycle,
    bockstein,
    ch,
    cohomology_group,
    lattice_data,
    mod_lattice_p,
)
from .exactalg import IntegerSolver, RatMatrix, RationalSolver
from .report import Report
from .simplicial import CoeffRing, Cochain, GradedCochainComplex, model as _model

INT, RAT, RATMOD = CoeffRing.INT, CoeffRing.RAT, CoeffRing.RATMOD


class NonzeroCharacteristicClass(ValueError):
    """``i2_preimage`` was asked for a class with ``δ2 != 0``."""


@dataclass(frozen=True, eq=False)
class DiffClass:
    c: Cochain
    h: Cochain

    @property
    def model(self):
        return self.c.model

    @property
    def degree(self):
        return self.c.degree

    @property
    def complex(self):
        return self.c.model.complex

    @property
    def coeffs(self):
        return self.c.model.coeffs

    def __add__(self, other):
        return diff_add(self, other)

    def __neg__(self):
        return diff_neg(self)

    def __sub__(self, other):
        return diff_add(self, diff_neg(other))

    def __repr__(self):
        return f"DiffClass(k={self.degree}, c={self.c!r}, h={self.h!r})"


@dataclass(frozen=True)
class FlatClass:
    """A Q/Z cohomology class in degree ``k-1``, the source of ``i1``."""

    coh: CohClass

    @property
    def degree(self):
        return self.coh.group.degree + 1


# solvers cached per graded complex


def _cache(m):
    return m.__dict__.setdefault("_diff_cache", {})


def _int_solver(m, k):
    """Integer solver for ``δ: K^k -> K^(k+1)``."""
    key = ("int", k)
    cache = _cache(m)
    if key not in cache:
        cache[key] = IntegerSolver(m.coboundary(k))
    return cache[key]


def _rat_solver(m, k):
    key = ("rat", k)
    cache = _cache(m)
    if key not in cache:
        cache[key] = RationalSolver(m.coboundary(k))
    return cache[key]


def _lattice_system(m, j):
    """``(L, solver, P, Zb)`` deciding whether a closed rational ``e`` of degree
    ``j`` becomes exact after adding an integer cocycle.

    ``Zb`` spans the integer cocycles, ``P`` projects closed cochains to
    rational cohomology coordinates; we integer-solve ``L P Zb m = -L P e``.
    """
    key = ("lattice", j)
    cache = _cache(m)
    if key not in cache:
        Zb = _int_solver(m, j).kernel_basis
        P = cohomology_group(m, j, RAT)._P
        n = m.dim(j)
        Zmat = RatMatrix.from_columns(Zb, n) if Zb else RatMatrix.zeros(n, 0)
        PZ = P @ Zmat
        L, PZi = PZ.scaled_to_int()
        cache[key] = (L, IntegerSolver(PZi), P, Zb)
    return cache[key]


def diff_make(c, h=None):
    """The class of ``(c, h)``; ``h`` defaults to zero."""
    if c.ring is not INT:
        if not c.is_integral():
            raise ValueError("c must be an integer cochain")
        c = c.as_ring(INT)
    if not c.is_cocycle():
        raise NotACocycle(f"c is not a cocycle in degree {c.degree}")
    if h is None:
        h = Cochain(c.model, c.degree - 1, None, RAT)
    if h.model is not c.model or h.degree != c.degree - 1:
        raise ValueError("h must be a cochain of degree k-1 on the same complex")
    return DiffClass(c, h.as_ring(RAT))


def diff_zero(m, k):
    return DiffClass(Cochain(m, k), Cochain(m, k - 1, None, RAT))


def _same(f, g):
    if f.model is not g.model or f.degree != g.degree:
        raise ValueError("differential classes live on different complexes or degrees")


def diff_add(f, g):
    _same(f, g)
    return DiffClass(f.c + g.c, f.h + g.h)


def diff_neg(f):
    return DiffClass(-f.c, -f.h)


def relation(b, s=None):
    """The trivial class ``(δb, -b + δs)`` of the defining relation."""
    h = -(b.as_ring(RAT))
    if s is not None:
        h = h + s.coboundary()
    return DiffClass(b.as_ring(INT).coboundary(), h)


def diff_equal(f, g, drop_rho=False):
    """Decide ``f ~ g``: is there integer ``b`` and rational ``s`` with
    ``δb = c_f - c_g`` and ``δs - b = h_f - h_g``?

    ``b`` is found up to integer cocycles by one integer solve; the remaining
    freedom is decided by a second integer solve in rational cohomology.
    ``drop_rho=True`` removes the ``-b`` term (a deliberate fault).
    """
    _same(f, g)
    m, k = f.model, f.degree
    dc = f.c - g.c
    dh = f.h - g.h
    b0 = _int_solver(m, k - 1).solve(dc.values)
    if b0 is None:
        return False
    if drop_rho:
        return _rat_solver(m, k - 2).solve(dh.values) is not None
    e = tuple(x + y for x, y in zip(dh.values, b0))
    if any(m.coboundary(k - 1) @ e):
        return False
    L, solver, P, _ = _lattice_system(m, k - 1)
    rhs = [-L * x for x in P @ e]
    if any(Fraction(x).denominator != 1 for x in rhs):
        # the left side L P Zb m is integral for every integer m
        return False
    return solver.solve([int(x) for x in rhs]) is not None


def i2(alpha):
    """``Λ^(k-1) / Λ_J^(k-1) -> Ĵ^k``, ``α -> (0, α)``."""
    return DiffClass(Cochain(alpha.model, alpha.degree + 1), alpha.as_ring(RAT))


def i1(u):
    """``J^(k-1)(Q/Z) -> Ĵ^k``, ``u -> (-δū, ū)`` for a rational lift ``ū``."""
    coh = u.coh if isinstance(u, FlatClass) else u
    if coh.group.ring is not RATMOD:
        raise ValueError("i1 takes a Q/Z class")
    lift = coh.representative().as_ring(RAT)
    d = lift.coboundary()
    c = Cochain(lift.model, lift.degree + 1, [-int(x) for x in d.values])
    return DiffClass(c, lift)


def delta1(f):
    """Curvature ``c + δh``, a closed rational cochain in ``Λ_J^k``."""
    return f.c.as_ring(RAT) + f.h.coboundary()


def delta2(f):
    """Characteristic class ``[c]`` in ``J^k(Z)``."""
    return cohomology_group(f.model, f.degree, INT).class_of(f.c)


def i2_preimage(f, rng=None):
    """A form ``α`` with ``i2(α) ~ f``; requires ``δ2(f) = 0``.

    Solves ``c = δb`` over the integers and returns ``h + b``.  The answer is
    well defined modulo ``Λ_J^(k-1)``; ``rng`` varies the choice of ``b``.
    """
    b = _int_solver(f.model, f.degree - 1).solve(f.c.values, rng=rng)
    if b is None:
        raise NonzeroCharacteristicClass("δ2(f) is nonzero, so f is not in the image of i2")
    return f.h + Cochain(f.model, f.degree - 1, b).as_ring(RAT)


def forms_equal_mod_lattice(a, b):
    """Equality in ``Λ^j / Λ_J^j``."""
    return lattice_data(a.model, a.degree).in_lattice(a - b)


def in_lattice(form):
    """Membership in ``Λ_J``: closed with class in ``Im(ch)``."""
    return lattice_data(form.model, form.degree).in_lattice(form)


def restrict_class(f, sub):
    return DiffClass(f.c.restrict(sub), f.h.restrict(sub))


def flat_class(u):
    """Wrap a Q/Z rational cochain (with integral coboundary) as a :class:`FlatClass`."""
    return FlatClass(cohomology_group(u.model, u.degree, RATMOD).class_of(u))


def exact_primitive(form):
    """Rational ``s`` with ``δs = form``, or ``None``."""
    sol = _rat_solver(form.model, form.degree - 1).solve(form.values)
    return None if sol is None else Cochain(form.model, form.degree - 1, sol, RAT)


def curvature_preimage(omega):
    """A class with curvature ``omega`` for ``omega`` in ``Λ_J^k``."""
    L = lattice_data(omega.model, omega.degree)
    n = L.integral_lattice_coords(omega)
    c = L.lattice_cocycle(n)
    h = exact_primitive(omega - c)
    if h is None:
        raise AssertionError("curvature minus its lattice cocycle is not exact")
    return diff_make(c.as_ring(INT), h)


# random elements for the verifiers


class Sampler:
    """Seeded random cochains, forms and classes on one graded complex."""

    def __init__(self, m, rng):
        self.m = m
        self.rng = rng

    def _rat(self):
        r = self.rng
        return Fraction(r.randint(-4, 4), r.choice((1, 1, 2, 3, 4, 6)))

    def int_cochain(self, j, density=0.5):
        r = self.rng
        vals = [r.randint(-2, 2) if r.random() < density else 0 for _ in range(self.m.dim(j))]
        return Cochain(self.m, j, vals)

    def rat_cochain(self, j, density=0.5):
        r = self.rng
        vals = [self._rat() if r.random() < density else Fraction(0) for _ in range(self.m.dim(j))]
        return Cochain(self.m, j, vals, RAT)

    def int_cocycle(self, j):
        H = cohomology_group(self.m, j, INT)
        coords = [self.rng.randint(-3, 3) for _ in range(H.ncoords)]
        return H.cocycle(coords) + self.int_cochain(j - 1).coboundary()

    def lattice_form(self, j):
        """Closed rational cochain with lattice class: integral cocycle plus exact form."""
        return self.int_cocycle(j).as_ring(RAT) + self.rat_cochain(j - 1).coboundary()

    def closed_form(self, j):
        Q = cohomology_group(self.m, j, RAT)
        z = Q.cocycle([self._rat() for _ in range(Q.dim)])
        return z + self.rat_cochain(j - 1).coboundary()

    def diff_class(self, k):
        return diff_make(self.int_cocycle(k), self.rat_cochain(k - 1))

    def flat_lift(self, j):
        """Random rational cochain with integral coboundary (a Q/Z cocycle lift)."""
        F = cohomology_group(self.m, j, RATMOD)
        u = Cochain(self.m, j, None, RAT)
        for s in F.torsion_section:
            u = u + self.rng.randint(-3, 3) * s
        for rep in cohomology_group(self.m, j, RAT).reps:
            u = u + self._rat() * rep
        return u + self.int_cochain(j).as_ring(RAT) + self.rat_cochain(j - 1).coboundary()

    def flat_noise(self, j):
        """A lift of the zero Q/Z class."""
        return self.int_cochain(j).as_ring(RAT) + self.rat_cochain(j - 1).coboundary()

    def trivial_class(self, k):
        return relation(self.int_cochain(k - 1), self.rat_cochain(k - 2))


def _as_model(space, coeffs):
    if isinstance(space, GradedCochainComplex):
        return space
    return _model(space, coeffs)


DIAGRAM1_FAULTS = (None, "drop_rho", "flip_sign")


def _flipped_i1(u):
    # deliberate fault: (+δū, ū) instead of (-δū, ū)
    f = i1(u)
    return DiffClass(-f.c, f.h)


def verify_diagram1(space, k, coeffs=None, samples=100, seed=0, drop_rho=False, fault=None):
    """Check every arrow and exactness statement of the differential hexagon.

    Each identity is checked on generators and on ``samples`` seeded random
    elements.  Negative controls: ``fault="drop_rho"`` (or ``drop_rho=True``)
    removes the ``-b`` term from the equivalence relation, and
    ``fault="flip_sign"`` flips the sign of the integral part of ``i1``.
    """
    if fault not in DIAGRAM1_FAULTS:
        raise ValueError(f"unknown fault {fault!r}")
    drop_rho = drop_rho or fault == "drop_rho"
    fault = "drop_rho" if drop_rho else fault
    i1 = _flipped_i1 if fault == "flip_sign" else globals()["i1"]
    m = _as_model(space, coeffs)
    rng = random.Random(seed)
    S = Sampler(m, rng)
    eq = lambda f, g: diff_equal(f, g, drop_rho=drop_rho)  # noqa: E731
    rep = Report(f"diagram1 k={k}")
    rep.facts.update({"samples": samples, "seed": seed, "fault": fault})
    HZ = cohomology_group(m, k, INT)
    HQ1 = cohomology_group(m, k - 1, RAT)
    F = cohomology_group(m, k - 1, RATMOD)
    L1 = lattice_data(m, k - 1)
    rep.facts["J^k(Z)"] = str(HZ)
    rep.facts["J^(k-1)(Q/Z)"] = str(F)
    N = samples
    zero = diff_zero(m, k)

    def run(name, trials):
        bad = 0
        for t in trials:
            if not t():
                bad += 1
        rep.add(name, bad == 0, None if not bad else {"failed": bad})

    # i2 well defined on the quotient and injective from it
    def wd():
        a = S.rat_cochain(k - 1)
        lam = S.lattice_form(k - 1)
        return eq(i2(a + lam), i2(a))

    run("i2 well-defined on Λ/Λ_J", [wd] * N)

    def inj2():
        a = S.rat_cochain(k - 1) if rng.random() < 0.5 else S.lattice_form(k - 1)
        if rng.random() < 0.3:
            a = a + Fraction(1, 2) * S.lattice_form(k - 1)
        return eq(i2(a), zero) == L1.in_lattice(a)

    run("i2 injective on Λ/Λ_J", [inj2] * N)

    # δ2 surjective with witness (c, 0)
    def surj2(x):
        return delta2(diff_make(x.representative())) == x

    gens = HZ.generators()
    rand_x = [HZ.element([rng.randint(-5, 5) for _ in range(HZ.ncoords)]) for _ in range(N)]
    run("δ2 surjective", [lambda x=x: surj2(x) for x in gens + rand_x])

    # ker δ2 = im i2, constructively
    def kernel2():
        f = S.trivial_class(k) + i2(S.rat_cochain(k - 1))
        if not delta2(f).is_zero():
            return False
        a = i2_preimage(f, rng=rng)
        return eq(i2(a), f) and delta2(i2(S.rat_cochain(k - 1))).is_zero()

    run("ker δ2 = im i2", [kernel2] * N)

    def not_in_image():
        f = S.diff_class(k)
        try:
            i2_preimage(f)
            return delta2(f).is_zero()
        except NonzeroCharacteristicClass:
            return not delta2(f).is_zero()

    run("i2_preimage exists iff δ2 = 0", [not_in_image] * N)

    # i1 well defined, injective
    def wd1():
        u = S.flat_lift(k - 1)
        v = u + S.flat_noise(k - 1)
        return eq(i1(F.class_of(u)), i1(F.class_of(v)))

    run("i1 independent of lift", [wd1] * N)

    def inj1():
        u = S.flat_noise(k - 1) if rng.random() < 0.4 else S.flat_lift(k - 1)
        x = F.class_of(u)
        return eq(i1(x), zero) == x.is_zero()

    run("i1 injective", [lambda g=g: (eq(i1(g), zero) == g.is_zero()) for g in F.generators()] + [inj1] * N)

    # δ1 onto Λ_J^k and lands in Λ_J^k
    def onto1():
        w = S.lattice_form(k)
        return delta1(curvature_preimage(w)) == w

    run("δ1 onto Λ_J", [onto1] * N)
    run("δ1 lands in Λ_J", [lambda: in_lattice(delta1(S.diff_class(k)))] * N)

    # ker δ1 = im i1, with preimage u = h mod Z
    def kernel1():
        u = S.flat_lift(k - 1)
        c = Cochain(m, k, [-int(x) for x in u.coboundary().values])
        f = DiffClass(c, u) + S.trivial_class(k)
        if not delta1(f).is_zero():
            return False
        pre = F.element(F.class_of(f.h).coords)
        return eq(i1(pre), f)

    run("ker δ1 = im i1", [kernel1] * N)

    def flat_is_flat():
        return delta1(i1(F.class_of(S.flat_lift(k - 1)))).is_zero()

    run("δ1∘i1 = 0", [flat_is_flat] * N)

    # b = δ2∘i1
    def b_eq():
        x = F.class_of(S.flat_lift(k - 1))
        return bockstein(x) == delta2(i1(x))

    run("b = δ2∘i1", [lambda g=g: bockstein(g) == delta2(i1(g)) for g in F.generators()] + [b_eq] * N)

    # δ1∘i2 = d
    def d_eq():
        a = S.rat_cochain(k - 1)
        return delta1(i2(a)) == a.coboundary()

    run("δ1∘i2 = d", [d_eq] * N)

    # four-term sequence H^(k-1)(Q) -> Λ^(k-1)/Λ_J -> Λ_J^k -> H^k(Q)
    HQ = cohomology_group(m, k, RAT)
    run("d∘(class -> form) = 0", [lambda r=r: r.coboundary().is_zero() for r in HQ1.reps])

    def closed_in_image():
        a = S.closed_form(k - 1)
        q = HQ1.coords(a)
        return exact_primitive(a - HQ1.cocycle(q)) is not None

    run("exact at Λ^(k-1)/Λ_J", [closed_in_image] * N)

    def exact_at_lattice():
        w = S.lattice_form(k)
        if HQ.class_of(w).is_zero():
            return exact_primitive(w) is not None
        return exact_primitive(w) is None

    def exact_lattice_forced():
        w = S.rat_cochain(k - 1).coboundary()
        return HQ.class_of(w).is_zero() and in_lattice(w)

    run("exact at Λ_J^k", [exact_at_lattice] * N + [exact_lattice_forced] * N)

    # four-term sequence H^(k-1)(Q) -> J^(k-1)(Q/Z) -> J^k(Z) -> H^k(Q)
    run("b∘p = 0", [lambda: bockstein(mod_lattice_p(HQ1.class_of(S.closed_form(k - 1)))).is_zero()] * N)

    def ker_b():
        if rng.random() < 0.5:
            u = S.flat_lift(k - 1)
        else:
            u = S.closed_form(k - 1) + S.flat_noise(k - 1)
        x = F.class_of(u)
        if not bockstein(x).is_zero():
            return True
        y = _int_solver(m, k - 1).solve(tuple(-int(v) for v in u.coboundary().values))
        closed = u + Cochain(m, k - 1, y).as_ring(RAT)
        return mod_lattice_p(HQ1.class_of(closed)) == x

    run("exact at J^(k-1)(Q/Z)", [ker_b] * N)
    run("ch∘b = 0", [lambda: ch(bockstein(F.class_of(S.flat_lift(k - 1)))).is_zero()] * N)

    def ker_ch():
        x = HZ.element([rng.randint(-4, 4) for _ in range(HZ.ncoords)])
        if not ch(x).is_zero():
            return not x.is_zero() and HZ.free_part(x.coords) != (0,) * HZ.free_rank
        coords = HZ.torsion_part(x.coords)
        u = Cochain(m, k - 1, None, RAT)
        for a, s in zip(coords, F.torsion_section):
            u = u + a * s
        return bockstein(F.class_of(u)) == x

    run("exact at J^k(Z)", [ker_ch] * N)
    return rep
