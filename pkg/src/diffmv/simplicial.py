"""Finite simplicial complexes, two-piece covers, and graded cochains.

Cochains take values in a graded coefficient group ``G = (G_d)``.  A torsion
summand ``Z/t`` of ``G_d`` is carried by its free resolution ``Z --t--> Z``:
a *relation slot* in degree ``d - 1`` whose coboundary hits ``t`` times the
*torsion slot* in degree ``d``.  The resulting graded cochain complex ``K`` is
free over ``Z`` in every degree, ``H(K) = H(X; G)``, ``H(K ⊗ Q) = H(X; G ⊗ Q)``
and ``0 -> K -> K⊗Q -> K⊗Q/Z -> 0`` is exact, which is what the Bockstein
and the differential-cochain model need.
"""

import enum
import functools
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .exactalg import FgAbGroup, IntMatrix, RatMatrix


class DecompositionError(ValueError):
    pass


class CoverError(DecompositionError):
    def __init__(self, missing):
        self.missing = missing
        super().__init__(f"A ∪ B does not cover X: simplex {list(missing)} is in neither piece")


class GlueMismatch(ValueError):
    def __init__(self, simplex, slot, a, b):
        self.simplex, self.slot = simplex, slot
        super().__init__(
            f"cochains disagree on D at simplex {list(simplex)} ({slot}): {a} != {b}"
        )


def _label_key(v):
    return (type(v).__name__, v) if not isinstance(v, (int, float)) else ("", v)


class SimplicialComplex:
    """Face-closed set of simplices, each a sorted tuple of vertex labels."""

    def __init__(self, simplices=()):
        closed = set()
        for s in simplices:
            s = tuple(sorted(set(s), key=_label_key))
            if not s:
                continue
            if s in closed:
                continue
            for r in range(1, len(s) + 1):
                closed.update(combinations(s, r))
        self._simplices = frozenset(closed)
        by_dim = {}
        for s in closed:
            by_dim.setdefault(len(s) - 1, []).append(s)
        self._by_dim = {
            j: tuple(sorted(v, key=lambda s: tuple(_label_key(x) for x in s)))
            for j, v in by_dim.items()
        }
        self._index = {j: {s: i for i, s in enumerate(v)} for j, v in self._by_dim.items()}
        self._hash = hash(self._simplices)

    @classmethod
    def from_maximal(cls, maximal):
        return cls(maximal)

    @property
    def dimension(self):
        return max(self._by_dim, default=-1)

    @property
    def vertices(self):
        return tuple(s[0] for s in self.simplices(0))

    def simplices(self, j=None):
        if j is None:
            return tuple(s for d in sorted(self._by_dim) for s in self._by_dim[d])
        return self._by_dim.get(j, ())

    def index(self, simplex):
        return self._index[len(simplex) - 1][simplex]

    def count(self, j):
        return len(self._by_dim.get(j, ()))

    def __contains__(self, simplex):
        return tuple(simplex) in self._simplices

    def __iter__(self):
        return iter(self.simplices())

    def __len__(self):
        return len(self._simplices)

    def __eq__(self, other):
        return isinstance(other, SimplicialComplex) and self._simplices == other._simplices

    def __hash__(self):
        return self._hash

    def __le__(self, other):
        return self._simplices <= other._simplices

    def __repr__(self):
        maximal = self.maximal_simplices()
        return f"SimplicialComplex({[list(s) for s in maximal]})"

    def maximal_simplices(self):
        out = []
        for s in self.simplices():
            if not any(len(t) == len(s) + 1 and set(s) <= set(t) for t in self.simplices(len(s))):
                out.append(s)
        return out

    def intersection(self, other):
        return SimplicialComplex(self._simplices & other._simplices)

    def union(self, other):
        return SimplicialComplex(self._simplices | other._simplices)

    def euler_characteristic(self):
        return sum((-1) ** j * len(v) for j, v in self._by_dim.items())

    @functools.cached_property
    def _cofaces(self):
        # simplex -> [(coface, sign)] with sign = (-1)^i, i the removed vertex position
        out = {s: [] for s in self._simplices}
        for t in self._simplices:
            if len(t) < 2:
                continue
            for i in range(len(t)):
                face = t[:i] + t[i + 1:]
                out[face].append((t, -1 if i % 2 else 1))
        return out

    def cofaces(self, simplex):
        return self._cofaces[simplex]


@dataclass(frozen=True)
class Decomposition:
    """``X = A ∪ B`` with ``D = A ∩ B``; ``A``, ``B`` subcomplexes of ``X``."""

    X: SimplicialComplex
    A: SimplicialComplex
    B: SimplicialComplex
    D: SimplicialComplex

    def piece(self, name):
        return {"X": self.X, "A": self.A, "B": self.B, "D": self.D}[name]


def validate_decomposition(X, A_simplices, B_simplices):
    """Face-close ``A`` and ``B``, check they are subcomplexes covering ``X``.

    >>> X = SimplicialComplex([(0, 1), (1, 2), (0, 2)])
    >>> dec = validate_decomposition(X, [(0, 1), (1, 2)], [(0, 2)])
    >>> dec.D.simplices()
    ((0,), (2,))
    """
    if not isinstance(X, SimplicialComplex):
        X = SimplicialComplex(X)
    A = A_simplices if isinstance(A_simplices, SimplicialComplex) else SimplicialComplex(A_simplices)
    B = B_simplices if isinstance(B_simplices, SimplicialComplex) else SimplicialComplex(B_simplices)
    for name, piece in (("A", A), ("B", B)):
        for s in piece:
            if s not in X:
                raise DecompositionError(f"piece {name} contains {list(s)}, which is not a simplex of X")
    for s in X:
        if s not in A and s not in B:
            raise CoverError(s)
    return Decomposition(X, A, B, A.intersection(B))


@dataclass(frozen=True, order=True)
class Slot:
    """One basis direction of the resolved coefficient group.

    ``kind`` is ``"free"``, ``"tor"`` (generator of a ``Z/order`` summand) or
    ``"rel"`` (the relation generator resolving it).  ``shift`` is the
    total-degree offset contributed by the slot.
    """

    shift: int
    degree: int
    kind_rank: int
    index: int
    order: int = 0

    @property
    def kind(self):
        return ("free", "tor", "rel")[self.kind_rank]

    def __str__(self):
        if self.kind == "free":
            return f"G{self.degree}.z{self.index}"
        return f"G{self.degree}.{self.kind}{self.index}(mod {self.order})"


@dataclass(frozen=True)
class GradedCoefficients:
    """Graded coefficient group: degree -> ``Z^rank + Z/t_1 + ...``.

    ``components`` is a sorted tuple of ``(degree, rank, torsion)``.
    """

    components: tuple

    def __init__(self, components=((0, 1, ()),)):
        if isinstance(components, dict):
            items = [(d, g[0], tuple(g[1])) for d, g in components.items()]
        else:
            items = [(int(d), int(r), tuple(int(t) for t in tor)) for d, r, tor in components]
        seen = set()
        for d, r, tor in items:
            if d in seen:
                raise ValueError(f"coefficient degree {d} given twice")
            seen.add(d)
            if r < 0 or any(t < 2 for t in tor):
                raise ValueError(f"invalid coefficient group in degree {d}")
        items = [(d, r, tuple(FgAbGroup.from_invariants(tor).invariant_factors)) for d, r, tor in items]
        object.__setattr__(self, "components", tuple(sorted(items)))

    @classmethod
    def integers(cls):
        return cls(((0, 1, ()),))

    def group(self, d):
        for deg, r, tor in self.components:
            if deg == d:
                return FgAbGroup.from_invariants(tor, r)
        return FgAbGroup.trivial()

    @functools.cached_property
    def slots(self):
        out = []
        for d, r, tor in self.components:
            out.extend(Slot(d, d, 0, i) for i in range(r))
            out.extend(Slot(d, d, 1, i, t) for i, t in enumerate(tor))
            out.extend(Slot(d - 1, d, 2, i, t) for i, t in enumerate(tor))
        return tuple(sorted(out))

    def slots_with_shift(self, shift):
        return tuple(s for s in self.slots if s.shift == shift)

    def torsion_partner(self, slot):
        return Slot(slot.degree, slot.degree, 1, slot.index, slot.order)

    def __str__(self):
        parts = [f"G{d}={FgAbGroup.from_invariants(t, r)}" for d, r, t in self.components]
        return ", ".join(parts) if parts else "0"


class CoeffRing(enum.Enum):
    INT = "int"
    RAT = "rat"
    RATMOD = "ratmod"

    def normalize(self, x):
        if self is CoeffRing.INT:
            if isinstance(x, Fraction):
                if x.denominator != 1:
                    raise ValueError(f"{x} is not an integer")
                return x.numerator
            return int(x)
        x = Fraction(x)
        if self is CoeffRing.RATMOD:
            return x - (x.numerator // x.denominator)
        return x

    @property
    def zero(self):
        return 0 if self is CoeffRing.INT else Fraction(0)


def as_ring(ring):
    return ring if isinstance(ring, CoeffRing) else CoeffRing(ring)


class GradedCochainComplex:
    """Based free cochain complex ``K^*(X; G)``; basis elements are ``(simplex, slot)``."""

    def __init__(self, complex, coeffs):
        self.complex = complex
        self.coeffs = coeffs
        self._basis = {}
        self._index = {}
        self._coboundary = {}
        shifts = sorted({s.shift for s in coeffs.slots})
        if complex.dimension < 0 or not shifts:
            self.min_degree, self.max_degree = 0, -1
        else:
            self.min_degree = shifts[0]
            self.max_degree = shifts[-1] + complex.dimension

    @staticmethod
    @functools.lru_cache(maxsize=None)
    def of(complex, coeffs):
        return GradedCochainComplex(complex, coeffs)

    def basis(self, k):
        if k not in self._basis:
            out = []
            for j in range(0, self.complex.dimension + 1):
                for slot in self.coeffs.slots_with_shift(k - j):
                    out.extend((s, slot) for s in self.complex.simplices(j))
            self._basis[k] = tuple(out)
            self._index[k] = {b: i for i, b in enumerate(out)}
        return self._basis[k]

    def index(self, k):
        self.basis(k)
        return self._index[k]

    def dim(self, k):
        return len(self.basis(k))

    def coboundary(self, k):
        """Integer matrix of ``δ: K^k -> K^(k+1)``."""
        if k in self._coboundary:
            return self._coboundary[k]
        src = self.basis(k)
        dst_index = self.index(k + 1)
        rows = [[0] * len(src) for _ in range(self.dim(k + 1))]
        for p, (s, slot) in enumerate(src):
            for t, sign in self.complex.cofaces(s):
                rows[dst_index[(t, slot)]][p] += sign
            if slot.kind == "rel":
                j = len(s) - 1
                partner = self.coeffs.torsion_partner(slot)
                rows[dst_index[(s, partner)]][p] += (-1) ** j * slot.order
        M = IntMatrix(rows, len(src))
        self._coboundary[k] = M
        return M

    def restriction(self, sub, k):
        """0/1 matrix of restriction ``K^k(X) -> K^k(sub)``."""
        own = self.index(k)
        sb = sub.basis(k)
        rows = [[0] * self.dim(k) for _ in sb]
        for i, b in enumerate(sb):
            rows[i][own[b]] = 1
        return IntMatrix(rows, self.dim(k))

    def selection(self, sub, k):
        """Positions in this basis of the basis elements of ``sub``."""
        own = self.index(k)
        return tuple(own[b] for b in sub.basis(k))

    def __repr__(self):
        return f"GradedCochainComplex({self.complex!r}, {self.coeffs})"


def model(complex, coeffs):
    return GradedCochainComplex.of(complex, coeffs)


class Cochain:
    """Graded cochain of total degree ``k`` with values in one coefficient ring."""

    __slots__ = ("model", "degree", "ring", "values")

    def __init__(self, model, degree, values=None, ring=CoeffRing.INT):
        ring = as_ring(ring)
        n = model.dim(degree)
        if values is None:
            values = (ring.zero,) * n
        elif isinstance(values, dict):
            idx = model.index(degree)
            vals = [ring.zero] * n
            for key, v in values.items():
                vals[idx[key]] = v
            values = vals
        values = tuple(ring.normalize(v) for v in values)
        if len(values) != n:
            raise ValueError(f"expected {n} values in degree {degree}, got {len(values)}")
        self.model = model
        self.degree = degree
        self.ring = ring
        self.values = values

    @property
    def complex(self):
        return self.model.complex

    def _compatible(self, other):
        if self.model is not other.model or self.degree != other.degree:
            raise ValueError("cochains live on different complexes or degrees")

    def __add__(self, other):
        self._compatible(other)
        ring = _join(self.ring, other.ring)
        return Cochain(self.model, self.degree, [a + b for a, b in zip(self.values, other.values)], ring)

    def __neg__(self):
        return Cochain(self.model, self.degree, [-a for a in self.values], self.ring)

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, s):
        ring = self.ring if isinstance(s, int) else _join(self.ring, CoeffRing.RAT)
        return Cochain(self.model, self.degree, [s * a for a in self.values], ring)

    def __eq__(self, other):
        return (
            isinstance(other, Cochain)
            and self.model is other.model
            and self.degree == other.degree
            and self.ring == other.ring
            and self.values == other.values
        )

    def __hash__(self):
        return hash((id(self.model), self.degree, self.ring, self.values))

    def __repr__(self):
        nz = {f"{list(s)}:{slot}": str(v) for (s, slot), v in zip(self.model.basis(self.degree), self.values) if v}
        return f"Cochain(deg={self.degree}, ring={self.ring.value}, {nz})"

    def as_ring(self, ring):
        return Cochain(self.model, self.degree, self.values, ring)

    def is_zero(self):
        return not any(self.values)

    def coboundary(self):
        vals = self.model.coboundary(self.degree) @ self.values
        return Cochain(self.model, self.degree + 1, vals, self.ring)

    def is_cocycle(self):
        return self.coboundary().is_zero()

    def restrict(self, sub):
        return restrict_cochain(self, sub)

    def items(self):
        return zip(self.model.basis(self.degree), self.values)

    def to_dict(self):
        return {b: v for b, v in self.items() if v}

    def is_integral(self):
        return all(Fraction(v).denominator == 1 for v in self.values)


def _join(r1, r2):
    if CoeffRing.RATMOD in (r1, r2):
        return CoeffRing.RATMOD
    if CoeffRing.RAT in (r1, r2):
        return CoeffRing.RAT
    return CoeffRing.INT


def _sub_model(c, sub):
    if isinstance(sub, GradedCochainComplex):
        return sub
    return model(sub, c.model.coeffs)


def restrict_cochain(c, sub):
    """Values of ``c`` on the simplices of the subcomplex ``sub`` only."""
    sm = _sub_model(c, sub)
    if sm.coeffs != c.model.coeffs:
        raise ValueError("restriction across different coefficient systems")
    if not sm.complex <= c.complex:
        raise DecompositionError("restriction target is not a subcomplex")
    sel = c.model.selection(sm, c.degree)
    return Cochain(sm, c.degree, [c.values[i] for i in sel], c.ring)


def zero_extend(c, big):
    """Extend ``c`` from a subcomplex to ``big`` by zero (not a cochain map)."""
    bm = _sub_model(c, big)
    sel = bm.selection(c.model, c.degree)
    vals = [c.ring.zero] * bm.dim(c.degree)
    for i, v in zip(sel, c.values):
        vals[i] = v
    return Cochain(bm, c.degree, vals, c.ring)


def glue_cochain(a, b, dec):
    """The unique cochain on ``X`` restricting to ``a`` on ``A`` and ``b`` on ``B``.

    Raises :class:`GlueMismatch` naming the first basis element of ``D`` where
    ``a`` and ``b`` disagree.
    """
    if a.degree != b.degree:
        raise ValueError("cannot glue cochains of different degrees")
    coeffs = a.model.coeffs
    if a.model.complex != dec.A or b.model.complex != dec.B:
        raise ValueError("cochains must live on the pieces A and B of the decomposition")
    ring = _join(a.ring, b.ring)
    k = a.degree
    Xm = model(dec.X, coeffs)
    ia, ib = a.model.index(k), b.model.index(k)
    vals = []
    for key in Xm.basis(k):
        va = ia.get(key)
        vb = ib.get(key)
        if va is not None and vb is not None:
            x, y = ring.normalize(a.values[va]), ring.normalize(b.values[vb])
            if x != y:
                raise GlueMismatch(key[0], key[1], x, y)
            vals.append(x)
        elif va is not None:
            vals.append(a.values[va])
        else:
            vals.append(b.values[vb])
    return Cochain(Xm, k, vals, ring)


def coboundary_matrix(X, j, ring="int"):
    """Simplicial coboundary ``C^j(X) -> C^(j+1)(X)`` with alternating face signs.

    Entry ``(τ, σ)`` is ``(-1)^i`` when ``σ`` is ``τ`` with its ``i``-th vertex
    removed.

    >>> coboundary_matrix(SimplicialComplex([(0, 1)]), 0).tolist()
    [[-1, 1]]
    """
    src, dst = X.simplices(j), X.simplices(j + 1)
    rows = [[0] * len(src) for _ in dst]
    for p, s in enumerate(src):
        for t, sign in X.cofaces(s):
            rows[X.index(t)][p] = sign
    M = IntMatrix(rows, len(src))
    if as_ring(ring) is CoeffRing.INT:
        return M
    return RatMatrix(M.rows, M.ncols)
