"""Mayer-Vietoris sequences for a decomposition ``X = A ∪ B``, in all three rings.

Cochain level: ``Σ(c) = (c|A, c|B)``, ``Δ(a, b) = a|D - b|D`` and the
connecting map ``d*(z) = E(δ ext_A z)``, where ``ext_A`` extends by zero and
``E`` keeps the values on basis elements of ``A`` that are not in ``B``.  The
same integer matrices serve for Z, Q and Q/Z coefficients.

For Q/Z, the group-level maps are handled through the dual homology groups:
the Q/Z row is exact iff the transposed row of dual homology is.
"""

from dataclasses import dataclass
from fractions import Fraction

from ..exactalg import AbHom, IntMatrix, RatMatrix, direct_sum, exact_at, rational_rank
from ..simplicial import CoeffRing, Cochain, model
from .groups import CohClass, cohomology_group

PIECES = ("X", "A", "B", "D")


@dataclass
class MvMaps:
    """``Σ^k``, ``Δ^k`` and ``d*^k`` for one ring.

    For ``ring == INT`` the maps are :class:`AbHom` on canonical coordinates;
    for ``RAT`` they are rational matrices on coordinates; for ``RATMOD`` they
    are the dual homomorphisms (``sigma`` goes ``P_A ⊕ P_B -> P_X`` and so on,
    arrows reversed).  ``system`` gives cochain-level witnesses for all rings.
    """

    system: object
    ring: CoeffRing
    degree: int
    sigma: object
    delta: object
    dstar: object


class MayerVietoris:
    """All Mayer-Vietoris data of one decomposition and coefficient system."""

    def __init__(self, dec, coeffs):
        self.dec = dec
        self.coeffs = coeffs
        self.models = {p: model(dec.piece(p), coeffs) for p in PIECES}
        self._cache = {}

    def group(self, piece, k, ring=CoeffRing.INT):
        return cohomology_group(self.models[piece], k, ring)

    def _memo(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    # cochain level

    def restriction(self, src, dst, k):
        return self._memo(("R", src, dst, k), lambda: self.models[src].restriction(self.models[dst], k))

    def sigma_matrix(self, k):
        return self._memo(("S", k), lambda: self.restriction("X", "A", k).vstack(self.restriction("X", "B", k)))

    def delta_matrix(self, k):
        return self._memo(("D", k), lambda: self.restriction("A", "D", k).hstack(-self.restriction("B", "D", k)))

    def dstar_matrix(self, k):
        """``K^k(D) -> K^(k+1)(X)``."""

        def build():
            mX, mA, mB = self.models["X"], self.models["A"], self.models["B"]
            ext = self.restriction("A", "D", k).T
            dA = mA.coboundary(k)
            idxA = mA.index(k + 1)
            idxB = mB.index(k + 1)
            rows = []
            for b in mX.basis(k + 1):
                row = [0] * mA.dim(k + 1)
                if b in idxA and b not in idxB:
                    row[idxA[b]] = 1
                rows.append(row)
            E = IntMatrix(rows, mA.dim(k + 1))
            return E @ dA @ ext

        return self._memo(("d*", k), build)

    def sigma(self, c):
        k = c.degree
        A = Cochain(self.models["A"], k, self.restriction("X", "A", k) @ c.values, c.ring)
        B = Cochain(self.models["B"], k, self.restriction("X", "B", k) @ c.values, c.ring)
        return A, B

    def delta(self, a, b):
        k = a.degree
        vals = self.delta_matrix(k) @ (tuple(a.values) + tuple(b.values))
        ring = a.ring if a.ring is b.ring else CoeffRing.RAT
        return Cochain(self.models["D"], k, vals, ring)

    def dstar(self, z):
        k = z.degree
        return Cochain(self.models["X"], k + 1, self.dstar_matrix(k) @ z.values, z.ring)

    # class level

    def ab_group(self, k):
        return self._memo(("AB", k), lambda: direct_sum(self.group("A", k).group, self.group("B", k).group))

    def split_ab(self, k, coords):
        n = self.group("A", k).ncoords
        return tuple(coords[:n]), tuple(coords[n:])

    def int_maps(self, k):
        def build():
            HX, HA, HB, HD, HX1 = (
                self.group("X", k), self.group("A", k), self.group("B", k), self.group("D", k), self.group("X", k + 1)
            )
            AB = self.ab_group(k)
            s_cols = []
            for rep in HX.reps:
                a, b = self.sigma(rep)
                s_cols.append(HA.coords(a) + HB.coords(b))
            d_cols = []
            for rep in HA.reps:
                d_cols.append(HD.coords(self.delta(rep, Cochain(self.models["B"], k))))
            for rep in HB.reps:
                d_cols.append(HD.coords(self.delta(Cochain(self.models["A"], k), rep)))
            x_cols = [HX1.coords(self.dstar(rep)) for rep in HD.reps]
            sigma = AbHom(HX.group, AB, _cols(s_cols, AB.ngens))
            delta = AbHom(AB, HD.group, _cols(d_cols, HD.group.ngens))
            dstar = AbHom(HD.group, HX1.group, _cols(x_cols, HX1.group.ngens))
            return MvMaps(self, CoeffRing.INT, k, sigma, delta, dstar)

        return self._memo(("int", k), build)

    def rat_maps(self, k):
        def build():
            Q = CoeffRing.RAT
            HX, HA, HB, HD, HX1 = (
                self.group("X", k, Q), self.group("A", k, Q), self.group("B", k, Q), self.group("D", k, Q),
                self.group("X", k + 1, Q),
            )
            s_cols = []
            for rep in HX.reps:
                a, b = self.sigma(rep)
                s_cols.append(HA.coords(a) + HB.coords(b))
            zA = Cochain(self.models["A"], k, None, Q)
            zB = Cochain(self.models["B"], k, None, Q)
            d_cols = [HD.coords(self.delta(r, zB)) for r in HA.reps] + [HD.coords(self.delta(zA, r)) for r in HB.reps]
            x_cols = [HX1.coords(self.dstar(r)) for r in HD.reps]
            sigma = _rcols(s_cols, HA.dim + HB.dim)
            delta = _rcols(d_cols, HD.dim)
            dstar = _rcols(x_cols, HX1.dim)
            return MvMaps(self, Q, k, sigma, delta, dstar)

        return self._memo(("rat", k), build)

    def dual_maps(self, k):
        """Dual homology maps ``Σ^∨: P_A ⊕ P_B -> P_X``, ``Δ^∨: P_D -> P_A ⊕ P_B``, ``d*^∨: P_X(k+1) -> P_D``."""

        def build():
            M = CoeffRing.RATMOD
            PX, PA, PB, PD = (self.group(p, k, M).dual for p in PIECES)
            PX1 = self.group("X", k + 1, M).dual
            AB = direct_sum(PA.group, PB.group)
            RA, RB = self.restriction("X", "A", k), self.restriction("X", "B", k)
            s_cols = [PX.coords(RA.T @ z) for z in PA.cycles] + [PX.coords(RB.T @ z) for z in PB.cycles]
            RAD, RBD = self.restriction("A", "D", k), self.restriction("B", "D", k)
            d_cols = [PA.coords(RAD.T @ z) + PB.coords(tuple(-x for x in RBD.T @ z)) for z in PD.cycles]
            F = self.dstar_matrix(k)
            x_cols = [PD.coords(F.T @ z) for z in PX1.cycles]
            sigma = AbHom(AB, PX.group, _cols(s_cols, PX.group.ngens))
            delta = AbHom(PD.group, AB, _cols(d_cols, AB.ngens))
            dstar = AbHom(PX1.group, PD.group, _cols(x_cols, PD.group.ngens))
            return MvMaps(self, M, k, sigma, delta, dstar)

        return self._memo(("dual", k), build)

    def maps(self, k, ring):
        ring = CoeffRing(ring) if not isinstance(ring, CoeffRing) else ring
        return {CoeffRing.INT: self.int_maps, CoeffRing.RAT: self.rat_maps, CoeffRing.RATMOD: self.dual_maps}[ring](k)

    # element level, any ring, through cochain witnesses

    def sigma_class(self, x):
        a, b = self.sigma(x.representative())
        ring = x.group.ring
        return self.group("A", x.group.degree, ring).class_of(a), self.group("B", x.group.degree, ring).class_of(b)

    def delta_class(self, xa, xb):
        d = self.delta(xa.representative(), xb.representative())
        return self.group("D", xa.group.degree, xa.group.ring).class_of(d)

    def dstar_class(self, z):
        x = self.dstar(z.representative())
        return self.group("X", z.group.degree + 1, z.group.ring).class_of(x)

    def exactness(self, ring, lo, hi):
        """Exactness of the row at every interior position between degrees ``lo`` and ``hi``.

        The row is ``... -> X^j -> AB^j -> D^j -> X^(j+1) -> ...`` for
        ``lo <= j <= hi``, closed on the left by ``d*^(lo-1)`` and on the right
        by ``Δ^hi``.  Returns a list of ``(position, passed)`` pairs.
        """
        ring = CoeffRing(ring) if not isinstance(ring, CoeffRing) else ring
        seq = [("d*", lo - 1)]
        for j in range(lo, hi + 1):
            seq += [("Σ", j), ("Δ", j), ("d*", j)]
        seq = seq[:-1]
        labels = {"Σ": "AB", "Δ": "D", "d*": "X"}
        out = []
        for (n1, j1), (n2, j2) in zip(seq, seq[1:]):
            pos = f"{labels[n1]}^{j1 + 1 if n1 == 'd*' else j1}"
            f = self._map(ring, n1, j1)
            g = self._map(ring, n2, j2)
            if ring is CoeffRing.INT:
                ok = exact_at(f, g)
            elif ring is CoeffRing.RAT:
                ok = _rat_exact(f, g)
            else:
                ok = exact_at(g, f)
            out.append((pos, ok))
        return out

    def _map(self, ring, name, j):
        m = self.maps(j, ring)
        return {"Σ": m.sigma, "Δ": m.delta, "d*": m.dstar}[name]


def _cols(cols, nrows):
    return IntMatrix.from_columns(cols, nrows) if cols else IntMatrix.zeros(nrows, 0)


def _rcols(cols, nrows):
    return RatMatrix.from_columns(cols, nrows) if cols else RatMatrix.zeros(nrows, 0)


def _rat_exact(f, g):
    if g.ncols != f.nrows:
        raise ValueError("maps are not composable")
    if f.ncols and g.nrows and not (g @ f).is_zero():
        return False
    return rational_rank(f) + rational_rank(g) == f.nrows


def mayer_vietoris(dec, coeffs):
    """Cached :class:`MayerVietoris` for ``(dec, coeffs)``."""
    key = (dec, coeffs)
    mv = _MV_CACHE.get(key)
    if mv is None:
        mv = _MV_CACHE[key] = MayerVietoris(dec, coeffs)
    return mv


_MV_CACHE = {}


def mv_maps(dec, k, coeffs, ring=CoeffRing.INT):
    """``Σ^k``, ``Δ^k`` and ``d*^k: H^k(D) -> H^(k+1)(X)`` in the given ring."""
    return mayer_vietoris(dec, coeffs).maps(k, ring)


def int_class(group, coords):
    return CohClass(group, group.reduce(coords))


def rat_apply(matrix, coords):
    return tuple(Fraction(x) for x in matrix @ tuple(coords))
