"""Smith normal form with unimodular transforms, and the solvers built on it."""

from fractions import Fraction

from .matrix import IntMatrix, RatMatrix, as_int_matrix, as_rat_matrix


class SmithForm:
    """Result of :func:`smith_decomposition`: ``U @ M @ V == S``.

    ``Uinv`` and ``Vinv`` are the exact inverses of ``U`` and ``V``; ``diagonal``
    holds the nonzero invariant factors ``d_1 | d_2 | ... | d_rank``.
    """

    __slots__ = ("M", "U", "S", "V", "Uinv", "Vinv", "diagonal", "rank")

    def __init__(self, M, U, S, V, Uinv, Vinv, diagonal):
        self.M = M
        self.U, self.S, self.V = U, S, V
        self.Uinv, self.Vinv = Uinv, Vinv
        self.diagonal = tuple(diagonal)
        self.rank = len(diagonal)

    def __iter__(self):
        return iter((self.U, self.S, self.V))


def _identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def smith_decomposition(M):
    M = as_int_matrix(M)
    m, n = M.shape
    A = [list(r) for r in M.rows]
    U, Ui, V, Vi = _identity(m), _identity(m), _identity(n), _identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]
        for r in Ui:
            r[i], r[j] = r[j], r[i]

    def swap_cols(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        ra, rs = A[dst], A[src]
        for c in range(n):
            if rs[c]:
                ra[c] += q * rs[c]
        ua, us = U[dst], U[src]
        for c in range(m):
            if us[c]:
                ua[c] += q * us[c]
        for r in Ui:
            if r[dst]:
                r[src] -= q * r[dst]

    def add_col(dst, src, q):
        # col_dst += q * col_src
        for r in A:
            if r[src]:
                r[dst] += q * r[src]
        for r in V:
            if r[src]:
                r[dst] += q * r[src]
        va, vs = Vi[src], Vi[dst]
        for c in range(n):
            if vs[c]:
                va[c] -= q * vs[c]

    diagonal = []
    t = 0
    while t < min(m, n):
        while True:
            best = None
            for i in range(t, m):
                row = A[i]
                for j in range(t, n):
                    a = row[j]
                    if a and (best is None or abs(a) < best[0]):
                        best = (abs(a), i, j)
                        if best[0] == 1:
                            break
                if best is not None and best[0] == 1:
                    break
            if best is None:
                break
            _, i, j = best
            if i != t:
                swap_rows(t, i)
            if j != t:
                swap_cols(t, j)
            p = A[t][t]
            clean = True
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
                    if A[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
                    if A[t][j]:
                        clean = False
            if not clean:
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if A[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if best is None:
            break
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
            for r in Ui:
                r[t] = -r[t]
        diagonal.append(A[t][t])
        t += 1

    return SmithForm(
        M,
        IntMatrix(U, m),
        IntMatrix(A, n),
        IntMatrix(V, n),
        IntMatrix(Ui, m),
        IntMatrix(Vi, n),
        diagonal,
    )


def smith_normal_form(M):
    """Return ``(U, S, V)`` with ``U @ M @ V == S``, ``U`` and ``V`` unimodular.

    ``S`` is diagonal with each diagonal entry dividing the next.  Pivots are
    chosen as the smallest nonzero absolute value, ties broken by lowest row
    then lowest column, so the output is a deterministic function of ``M``.

    >>> U, S, V = smith_normal_form([[2, 4], [6, 8]])
    >>> S.tolist()
    [[2, 0], [0, 4]]
    """
    return tuple(smith_decomposition(M))


def invariant_factors(M):
    return smith_decomposition(M).diagonal


class IntegerSolver:
    """Solves ``M x = b`` over the integers for a fixed ``M`` via its SNF."""

    def __init__(self, M):
        self.M = as_int_matrix(M)
        self.snf = smith_decomposition(self.M)

    @property
    def kernel_basis(self):
        """Columns spanning the integer kernel (a saturated lattice basis)."""
        V, r = self.snf.V, self.snf.rank
        return [V.col(j) for j in range(r, V.ncols)]

    def solve(self, b, rng=None):
        """Return an integer solution or ``None``.

        With ``rng`` given, a random kernel element is added, so different
        seeds give different (equally valid) solutions.
        """
        b = tuple(b)
        m, n = self.M.shape
        if len(b) != m:
            raise ValueError(f"right-hand side has length {len(b)}, expected {m}")
        snf = self.snf
        y = snf.U @ b
        z = [0] * n
        for i, d in enumerate(snf.diagonal):
            q, rem = divmod(y[i], d)
            if rem:
                return None
            z[i] = q
        if any(y[snf.rank:]):
            return None
        if rng is not None:
            for i in range(snf.rank, n):
                z[i] = rng.randint(-3, 3)
        return snf.V @ z

    def solve_rational(self, b):
        b = tuple(Fraction(x) for x in b)
        m, n = self.M.shape
        if len(b) != m:
            raise ValueError(f"right-hand side has length {len(b)}, expected {m}")
        snf = self.snf
        y = snf.U @ b
        if any(y[snf.rank:]):
            return None
        z = [Fraction(0)] * n
        for i, d in enumerate(snf.diagonal):
            z[i] = y[i] / d
        return snf.V @ z


class RationalSolver:
    """Gauss-Jordan elimination over the rationals for a fixed matrix.

    Independent of the SNF code path; rational cohomology bases and
    rational solves go through here.
    """

    def __init__(self, M):
        self.M = as_rat_matrix(M)
        m, n = self.M.shape
        R = [list(r) for r in self.M.rows]
        E = [[Fraction(int(i == j)) for j in range(m)] for i in range(m)]
        pivots = []
        row = 0
        for col in range(n):
            piv = next((i for i in range(row, m) if R[i][col] != 0), None)
            if piv is None:
                continue
            R[row], R[piv] = R[piv], R[row]
            E[row], E[piv] = E[piv], E[row]
            inv = 1 / Fraction(R[row][col])
            R[row] = [x * inv for x in R[row]]
            E[row] = [x * inv for x in E[row]]
            for i in range(m):
                if i != row and R[i][col] != 0:
                    f = R[i][col]
                    R[i] = [a - f * b for a, b in zip(R[i], R[row])]
                    E[i] = [a - f * b for a, b in zip(E[i], E[row])]
            pivots.append(col)
            row += 1
            if row == m:
                break
        self.rref = RatMatrix(R, n)
        self.E = RatMatrix(E, m)
        self.pivots = tuple(pivots)
        self.rank = len(pivots)
        self.free = tuple(j for j in range(n) if j not in set(pivots))

    def solve(self, b):
        b = tuple(b)
        m, n = self.M.shape
        if len(b) != m:
            raise ValueError(f"right-hand side has length {len(b)}, expected {m}")
        c = self.E @ b
        if any(c[self.rank:]):
            return None
        x = [Fraction(0)] * n
        for i, col in enumerate(self.pivots):
            x[col] = Fraction(c[i])
        return tuple(x)

    @property
    def kernel_basis(self):
        """One kernel vector per free column: 1 there, RREF-determined at pivots."""
        n = self.M.ncols
        out = []
        for f in self.free:
            v = [Fraction(0)] * n
            v[f] = Fraction(1)
            for i, col in enumerate(self.pivots):
                v[col] = -self.rref.rows[i][f]
            out.append(tuple(v))
        return out


def solve_linear(M, b, ring="integer"):
    """Solve ``M x = b`` in the requested ring; ``None`` when unsolvable.

    >>> solve_linear([[2]], [4])
    (2,)
    >>> solve_linear([[2]], [3]) is None
    True
    >>> solve_linear([[2]], [3], ring="rational")
    (Fraction(3, 2),)
    """
    if ring == "integer":
        return IntegerSolver(M).solve(b)
    if ring == "rational":
        return RationalSolver(M).solve(b)
    raise ValueError(f"unknown ring {ring!r}")


def integer_kernel(M):
    return IntegerSolver(M).kernel_basis


def rational_rank(M):
    return RationalSolver(M).rank
