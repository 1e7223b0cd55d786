"""Verifier for the three-row Mayer-Vietoris diagram linked by ``b`` and ``ch``.

Rows: Q/Z coefficients shifted down one degree, Z, and Q.  Vertical maps are
the Bockstein ``b`` (Q/Z -> Z) and ``ch`` (Z -> Q).  The Z and Q horizontal
maps are applied through their group-level matrices, the vertical maps and
the Q/Z horizontal maps through cochain representatives, so a wrong matrix
shows up as a failed square.
"""

from fractions import Fraction

from ..exactalg import AbHom, IntMatrix, exact_at
from ..report import Report
from ..simplicial import CoeffRing
from .groups import bockstein, ch, mod_lattice_p
from .mv import MvMaps, mayer_vietoris, rat_apply

FAULTS = (None, "flip_delta")


def _flip_first(hom):
    rows = [list(r) for r in hom.matrix.rows]
    for r in rows:
        for j, x in enumerate(r):
            if x:
                r[j] = -x
                return AbHom(hom.domain, hom.codomain, IntMatrix(rows, hom.matrix.ncols), check=False), True
    return hom, False


def consistent_sign(pairs):
    """The sign ``e`` in ``{+1, -1}`` with ``lhs == e * rhs`` for every pair, else ``None``.

    ``+1`` is preferred when both work (all pairs zero or 2-torsion).
    """
    for e in (1, -1):
        if all(l == (r if e == 1 else -r) for l, r in pairs):
            return e
    return None


class _Diagram:
    def __init__(self, dec, k, coeffs, fault=None):
        if fault not in FAULTS:
            raise ValueError(f"unknown fault {fault!r}")
        self.mv = mayer_vietoris(dec, coeffs)
        self.k = k
        z = self.mv.int_maps(k - 1)
        self.fault_applied = False
        if fault == "flip_delta":
            delta, self.fault_applied = _flip_first(z.delta)
            z = MvMaps(z.system, z.ring, z.degree, z.sigma, delta, z.dstar)
        self.z_lo = z
        self.z_hi = self.mv.int_maps(k)
        self.z_prev = self.mv.int_maps(k - 2)
        self.q_lo = self.mv.rat_maps(k - 1)
        self.q_hi = self.mv.rat_maps(k)

    # Z-row horizontal maps on classes, via matrices

    def z_delta(self, xa, xb):
        j = xa.group.degree
        hom = self.z_lo.delta if j == self.k - 1 else self.mv.int_maps(j).delta
        HD = self.mv.group("D", j)
        return HD.element(hom(xa.coords + xb.coords))

    def z_dstar(self, z):
        j = z.group.degree
        hom = self.z_lo.dstar if j == self.k - 1 else self.mv.int_maps(j).dstar
        return self.mv.group("X", j + 1).element(hom(z.coords))

    def z_sigma(self, x):
        j = x.group.degree
        hom = self.z_hi.sigma if j == self.k else self.mv.int_maps(j).sigma
        a, b = self.mv.split_ab(j, hom(x.coords))
        return self.mv.group("A", j).element(a), self.mv.group("B", j).element(b)

    # Q-row horizontal maps on classes, via matrices

    def q_delta(self, sa, sb):
        j = sa.group.degree
        HD = self.mv.group("D", j, CoeffRing.RAT)
        return HD.element(rat_apply(self.mv.rat_maps(j).delta, sa.coords + sb.coords))

    def q_dstar(self, s):
        j = s.group.degree
        return self.mv.group("X", j + 1, CoeffRing.RAT).element(rat_apply(self.mv.rat_maps(j).dstar, s.coords))

    def q_sigma(self, s):
        j = s.group.degree
        HA = self.mv.group("A", j, CoeffRing.RAT)
        HB = self.mv.group("B", j, CoeffRing.RAT)
        v = rat_apply(self.mv.rat_maps(j).sigma, s.coords)
        return HA.element(v[: HA.dim]), HB.element(v[HA.dim:])


def verify_diagram2(dec, k, coeffs, fault=None):
    """Row exactness and square commutativity (with recorded signs) around degree ``k``.

    ``fault="flip_delta"`` negates the first nonzero entry of the integral
    ``Δ`` in degree ``k-1`` before checking, as a negative control.
    """
    d = _Diagram(dec, k, coeffs, fault)
    mv = d.mv
    rep = Report(f"diagram2 k={k}")
    rep.facts["fault"] = fault
    if fault:
        rep.facts["fault_applied"] = d.fault_applied

    # exactness of the rows
    for pos, ok in mv.exactness(CoeffRing.RATMOD, k - 2, k - 1):
        rep.add(f"exact Q/Z row at {pos}", ok)
    for ring, name in ((CoeffRing.INT, "Z"), (CoeffRing.RAT, "Q")):
        for pos, ok in _exactness_with(d, ring, k - 1, k):
            rep.add(f"exact {name} row at {pos}", ok)

    M, Z, Q = CoeffRing.RATMOD, CoeffRing.INT, CoeffRing.RAT
    signs = {}

    # b-squares: Q/Z row (degree j) over Z row (degree j + 1)
    j = k - 2
    FA, FB, FD, FX1 = mv.group("A", j, M), mv.group("B", j, M), mv.group("D", j, M), mv.group("X", j + 1, M)
    pairs = []
    for ua, ub in _ab_pairs(FA, FB):
        lhs = bockstein(mv.delta_class(ua, ub))
        rhs = d.z_delta(bockstein(ua), bockstein(ub))
        pairs.append((lhs, rhs))
    _square(rep, signs, "b∘Δ vs Δ∘b", pairs)
    pairs = []
    for u in FD.generators():
        pairs.append((bockstein(mv.dstar_class(u)), d.z_dstar(bockstein(u))))
    _square(rep, signs, "b∘d* vs d*∘b", pairs)
    pairs = []
    for u in FX1.generators():
        ua, ub = mv.sigma_class(u)
        xa, xb = d.z_sigma(bockstein(u))
        pairs.append((_pair(bockstein(ua), bockstein(ub)), _pair(xa, xb)))
    _square(rep, signs, "b∘Σ vs Σ∘b", pairs)

    # ch-squares: Z row (degree k - 1) over Q row
    j = k - 1
    HA, HB, HD, HX1 = mv.group("A", j, Z), mv.group("B", j, Z), mv.group("D", j, Z), mv.group("X", j + 1, Z)
    pairs = []
    for xa, xb in _ab_pairs(HA, HB):
        pairs.append((ch(d.z_delta(xa, xb)), d.q_delta(ch(xa), ch(xb))))
    _square(rep, signs, "ch∘Δ vs Δ∘ch", pairs)
    pairs = [(ch(d.z_dstar(x)), d.q_dstar(ch(x))) for x in HD.generators()]
    _square(rep, signs, "ch∘d* vs d*∘ch", pairs)
    pairs = []
    for x in HX1.generators():
        xa, xb = d.z_sigma(x)
        sa, sb = d.q_sigma(ch(x))
        pairs.append((_pair(ch(xa), ch(xb)), _pair(sa, sb)))
    _square(rep, signs, "ch∘Σ vs Σ∘ch", pairs)

    # coefficient identities on X in degree k
    HX = mv.group("X", k, Z)
    QX = mv.group("X", k, Q)
    rep.add("p∘ch = 0", all(mod_lattice_p(ch(x)).is_zero() for x in HX.generators()))
    rep.add("b∘p = 0", all(bockstein(mod_lattice_p(s)).is_zero() for s in _rat_samples(QX)))
    tors = HX.generators()[: HX.n_torsion]
    rep.add("ch kills torsion", all(ch(x).is_zero() for x in tors))
    rep.facts["signs"] = signs
    return rep


def _exactness_with(d, ring, lo, hi):
    if ring is not CoeffRing.INT or not d.fault_applied:
        return d.mv.exactness(ring, lo, hi)
    # recompute the integral row with the faulty Δ substituted
    seq = [d.mv.int_maps(lo - 1).dstar]
    names = [("d*", lo - 1)]
    for j in range(lo, hi + 1):
        m = d.z_lo if j == d.k - 1 else d.mv.int_maps(j)
        seq += [m.sigma, m.delta, m.dstar]
        names += [("Σ", j), ("Δ", j), ("d*", j)]
    seq, names = seq[:-1], names[:-1]
    labels = {"Σ": "AB", "Δ": "D", "d*": "X"}
    out = []
    for (f, (n1, j1)), g in zip(zip(seq, names), seq[1:]):
        pos = f"{labels[n1]}^{j1 + 1 if n1 == 'd*' else j1}"
        out.append((pos, exact_at(f, g)))
    return out


class _pair(tuple):
    def __new__(cls, a, b):
        return super().__new__(cls, (a, b))

    def __neg__(self):
        return _pair(-self[0], -self[1])


def _ab_pairs(GA, GB):
    out = [(g, GB.zero()) for g in GA.generators()]
    out += [(GA.zero(), g) for g in GB.generators()]
    return [(_with_rep(a), _with_rep(b)) for a, b in out]


def _with_rep(x):
    return x if x.rep is not None else type(x)(x.group, x.coords, x.group.cocycle(x.coords))


def _rat_samples(Q):
    out = []
    for r in Q.reps:
        for q in (Fraction(1, 2), Fraction(2, 3), Fraction(5)):
            out.append(Q.class_of(q * r))
    return out


def _square(rep, signs, name, pairs):
    e = consistent_sign(pairs)
    signs[name] = e
    rep.add(f"square {name}", e is not None, None if e is not None else {"samples": len(pairs)})
