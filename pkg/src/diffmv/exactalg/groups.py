"""Finitely generated abelian groups given by presentations, and their homomorphisms.

A group is ``Z^ngens / (column span of relations)``.  Elements are integer
vectors on the generators; :meth:`FgAbGroup.normal_form` maps them to
canonical coordinates (torsion coordinates reduced modulo their invariant
factors, followed by free coordinates) so equality is syntactic.
"""

from functools import cached_property

from .matrix import IntMatrix, as_int_matrix
from .snf import IntegerSolver, smith_decomposition


class IllDefinedHomomorphism(ValueError):
    """A matrix does not carry domain relations into the codomain relations."""


class FgAbGroup:
    __slots__ = ("ngens", "relations", "__dict__")

    def __init__(self, ngens, relations=None):
        self.ngens = ngens
        if relations is None:
            relations = IntMatrix.zeros(ngens, 0)
        relations = as_int_matrix(relations, 0 if not relations else None)
        if relations.nrows != ngens:
            if relations.nrows == 0 and relations.ncols == 0:
                relations = IntMatrix.zeros(ngens, 0)
            else:
                raise ValueError(f"relation matrix has {relations.nrows} rows, expected {ngens}")
        self.relations = relations

    @classmethod
    def from_invariants(cls, torsion=(), rank=0):
        """``Z/t_1 + ... + Z/t_s + Z^rank`` in canonical diagonal form."""
        torsion = [t for t in torsion if t != 1]
        if any(t <= 0 for t in torsion):
            raise ValueError("torsion orders must be positive")
        n = len(torsion) + rank
        rel = IntMatrix.from_columns(
            [tuple(t if i == j else 0 for i in range(n)) for j, t in enumerate(torsion)], n
        )
        return cls(n, rel)

    @classmethod
    def trivial(cls):
        return cls(0)

    @classmethod
    def free(cls, rank):
        return cls(rank)

    @cached_property
    def _snf(self):
        return smith_decomposition(self.relations)

    @cached_property
    def _solver(self):
        return IntegerSolver(self.relations)

    @cached_property
    def _layout(self):
        # positions in the SNF basis: units (dropped), torsion, free
        diag = self._snf.diagonal
        units = sum(1 for d in diag if d == 1)
        torsion = tuple(d for d in diag if d != 1)
        free = self.ngens - len(diag)
        return units, torsion, free

    @property
    def invariant_factors(self):
        """Torsion invariant factors ``d_1 | d_2 | ...``, each at least 2."""
        return self._layout[1]

    @property
    def free_rank(self):
        return self._layout[2]

    @property
    def is_finite(self):
        return self.free_rank == 0

    @property
    def order(self):
        """Group order, or ``None`` for infinite groups."""
        if not self.is_finite:
            return None
        n = 1
        for d in self.invariant_factors:
            n *= d
        return n

    @property
    def is_trivial(self):
        return self.free_rank == 0 and not self.invariant_factors

    @property
    def ncoords(self):
        return len(self.invariant_factors) + self.free_rank

    def same_isomorphism_type(self, other):
        return (self.invariant_factors, self.free_rank) == (other.invariant_factors, other.free_rank)

    def _check(self, x):
        x = tuple(x)
        if len(x) != self.ngens:
            raise ValueError(f"element has {len(x)} coordinates, group has {self.ngens} generators")
        return x

    def normal_form(self, x):
        """Canonical coordinates of ``x``: reduced torsion part, then free part."""
        x = self._check(x)
        units, torsion, _ = self._layout
        y = self._snf.U @ x
        out = [y[units + i] % d for i, d in enumerate(torsion)]
        out.extend(y[units + len(torsion):])
        return tuple(out)

    def lift(self, coords):
        """Generator vector whose normal form is ``coords``."""
        coords = tuple(coords)
        if len(coords) != self.ncoords:
            raise ValueError(f"expected {self.ncoords} canonical coordinates")
        units = self._layout[0]
        y = (0,) * units + coords
        return self._snf.Uinv @ y

    @cached_property
    def canonical_generators(self):
        """Generator vectors of the canonical cyclic summands (torsion first)."""
        return [self.lift(tuple(int(i == j) for i in range(self.ncoords))) for j in range(self.ncoords)]

    def zero(self):
        return (0,) * self.ngens

    def is_zero(self, x):
        return not any(self.normal_form(x))

    def equal(self, x, y):
        return self.normal_form(x) == self.normal_form(y)

    def element_order(self, x):
        """Order of ``x``; ``None`` for infinite order."""
        units, torsion, free = self._layout
        c = self.normal_form(x)
        if any(c[len(torsion):]):
            return None
        n = 1
        for ci, d in zip(c, torsion):
            if ci:
                k = d // _gcd(ci, d)
                n = n * k // _gcd(n, k)
        return n

    def elements(self):
        """Enumerate canonical coordinates of a finite group."""
        if not self.is_finite:
            raise ValueError("cannot enumerate an infinite group")
        out = [()]
        for d in self.invariant_factors:
            out = [c + (i,) for c in out for i in range(d)]
        return out

    def __str__(self):
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.invariant_factors)
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"FgAbGroup<{self}>"

    def describe(self):
        return {"free_rank": self.free_rank, "torsion": list(self.invariant_factors)}


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


class AbHom:
    """Homomorphism given by an integer matrix on generators.

    Column ``j`` of ``matrix`` is the image of domain generator ``j``.
    Well-definedness is checked at construction unless ``check=False``.
    """

    __slots__ = ("domain", "codomain", "matrix", "__dict__")

    def __init__(self, domain, codomain, matrix, check=True):
        matrix = as_int_matrix(matrix, domain.ngens)
        if matrix.shape == (0, domain.ngens) and codomain.ngens:
            matrix = IntMatrix.zeros(codomain.ngens, domain.ngens)
        if matrix.shape != (codomain.ngens, domain.ngens):
            raise ValueError(
                f"matrix shape {matrix.shape} does not fit {codomain.ngens}x{domain.ngens}"
            )
        self.domain = domain
        self.codomain = codomain
        self.matrix = matrix
        if check:
            image_of_relations = matrix @ domain.relations
            for j in range(image_of_relations.ncols):
                if not codomain.is_zero(image_of_relations.col(j)):
                    raise IllDefinedHomomorphism(
                        f"domain relation {j} maps to a nonzero element"
                    )

    def __call__(self, x):
        return self.matrix @ tuple(x)

    def compose(self, inner):
        """``self ∘ inner``."""
        return AbHom(inner.domain, self.codomain, self.matrix @ inner.matrix, check=False)

    def is_zero(self):
        return all(self.codomain.is_zero(c) for c in self.matrix.columns())

    @cached_property
    def _kernel_image(self):
        return hom_kernel_image(self)

    @property
    def kernel(self):
        return self._kernel_image[0]

    @property
    def image(self):
        return self._kernel_image[1]

    def is_injective(self):
        return self.kernel[0].is_trivial

    def is_surjective(self):
        return all(preimage_solve(self, g) is not None for g in _unit_vectors(self.codomain.ngens))

    def is_isomorphism(self):
        return self.is_injective() and self.is_surjective()


def _unit_vectors(n):
    return [tuple(int(i == j) for i in range(n)) for j in range(n)]


def zero_hom(domain, codomain):
    return AbHom(domain, codomain, IntMatrix.zeros(codomain.ngens, domain.ngens), check=False)


def cokernel_presentation(M):
    """``Z^rows / column span of M``.

    >>> str(cokernel_presentation([[2, 4], [6, 8]]))
    'Z/2 + Z/4'
    """
    M = as_int_matrix(M)
    return FgAbGroup(M.nrows, M)


def subgroup(G, gens):
    """Subgroup of ``G`` generated by ``gens``, with its inclusion into ``G``.

    The presentation is ``Z^m / {a : sum a_i g_i = 0 in G}``.
    """
    gens = [G._check(g) for g in gens]
    m = len(gens)
    H = IntMatrix.from_columns(gens, G.ngens) if gens else IntMatrix.zeros(G.ngens, 0)
    big = H.hstack(G.relations)
    rel_cols = [v[:m] for v in IntegerSolver(big).kernel_basis]
    rel = IntMatrix.from_columns(rel_cols, m) if rel_cols else IntMatrix.zeros(m, 0)
    S = FgAbGroup(m, rel)
    return S, AbHom(S, G, H, check=False)


def direct_sum(*groups):
    n = sum(g.ngens for g in groups)
    cols = []
    offset = 0
    for g in groups:
        for c in g.relations.columns():
            cols.append((0,) * offset + tuple(c) + (0,) * (n - offset - g.ngens))
        offset += g.ngens
    rel = IntMatrix.from_columns(cols, n) if cols else IntMatrix.zeros(n, 0)
    return FgAbGroup(n, rel)


def hom_kernel_image(f):
    """Kernel and image of ``f`` as presented subgroups with inclusions.

    Returns ``((K, K -> domain), (I, I -> codomain))``.
    """
    if not isinstance(f, AbHom):
        raise TypeError("expected an AbHom")
    n1 = f.domain.ngens
    big = f.matrix.hstack(f.codomain.relations)
    lattice = [v[:n1] for v in IntegerSolver(big).kernel_basis]
    kernel = subgroup(f.domain, lattice)
    image = subgroup(f.codomain, f.matrix.columns())
    return kernel, image


def quotient_group(G, gens):
    """``G / <gens>`` with the projection (identity on generators)."""
    gens = [G._check(g) for g in gens]
    extra = IntMatrix.from_columns(gens, G.ngens) if gens else IntMatrix.zeros(G.ngens, 0)
    Q = FgAbGroup(G.ngens, G.relations.hstack(extra))
    return Q, AbHom(G, Q, IntMatrix.identity(G.ngens), check=False)


def torsion_subgroup(G):
    """Full torsion subgroup of ``G`` with its inclusion."""
    units, torsion, _ = G._layout
    gens = [G._snf.Uinv.col(units + i) for i in range(len(torsion))]
    T = FgAbGroup.from_invariants(torsion, 0)
    H = IntMatrix.from_columns(gens, G.ngens) if gens else IntMatrix.zeros(G.ngens, 0)
    return T, AbHom(T, G, H, check=False)


def preimage_solve(f, y, rng=None):
    """A domain element ``x`` with ``f(x) == y`` in the codomain, or ``None``."""
    y = f.codomain._check(y)
    n1 = f.domain.ngens
    big = f.matrix.hstack(f.codomain.relations)
    sol = _cached_solver(f, big).solve(y, rng=rng)
    if sol is None:
        return None
    return tuple(sol[:n1])


def _cached_solver(f, big):
    solver = f.__dict__.get("_preimage_solver")
    if solver is None:
        solver = IntegerSolver(big)
        f.__dict__["_preimage_solver"] = solver
    return solver


def in_subgroup(G, gens, x):
    """Whether ``x`` lies in the subgroup of ``G`` generated by ``gens``."""
    x = G._check(x)
    gens = [G._check(g) for g in gens]
    H = IntMatrix.from_columns(gens, G.ngens) if gens else IntMatrix.zeros(G.ngens, 0)
    return IntegerSolver(H.hstack(G.relations)).solve(x) is not None


def subgroup_contains(G, gens_big, gens_small):
    """Whether ``<gens_small>`` is contained in ``<gens_big>`` inside ``G``."""
    gens_big = [G._check(g) for g in gens_big]
    H = IntMatrix.from_columns(gens_big, G.ngens) if gens_big else IntMatrix.zeros(G.ngens, 0)
    solver = IntegerSolver(H.hstack(G.relations))
    return all(solver.solve(G._check(x)) is not None for x in gens_small)


def subgroups_equal(G, gens1, gens2):
    return subgroup_contains(G, gens1, gens2) and subgroup_contains(G, gens2, gens1)


def exact_at(f, g):
    """Exactness of ``A --f--> B --g--> C`` at ``B``: ``g∘f = 0`` and ``ker g ⊆ im f``."""
    if f.codomain is not g.domain and f.codomain.ngens != g.domain.ngens:
        raise ValueError("homomorphisms are not composable")
    composite_zero = g.compose(f).is_zero()
    (K, incl), _ = hom_kernel_image(g)
    contained = subgroup_contains(f.codomain, f.matrix.columns(), incl.matrix.columns())
    return composite_zero and contained
