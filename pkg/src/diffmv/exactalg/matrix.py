"""Immutable exact matrices over the integers and the rationals."""

from fractions import Fraction
from numbers import Rational


def _as_int(x):
    if isinstance(x, bool):
        return int(x)
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    raise TypeError(f"expected an integer entry, got {x!r}")


def _as_rat(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"expected a rational entry, got {x!r}")


class _Matrix:
    __slots__ = ("rows", "nrows", "ncols")
    _coerce = staticmethod(lambda x: x)

    def __init__(self, rows=(), ncols=None):
        rows = tuple(tuple(self._coerce(x) for x in row) for row in rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        for row in rows:
            if len(row) != ncols:
                raise ValueError("ragged matrix rows")
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = ncols

    @classmethod
    def _raw(cls, rows, nrows, ncols):
        obj = object.__new__(cls)
        obj.rows = rows
        obj.nrows = nrows
        obj.ncols = ncols
        return obj

    @classmethod
    def zeros(cls, nrows, ncols):
        return cls._raw(tuple((0,) * ncols for _ in range(nrows)), nrows, ncols)

    @classmethod
    def identity(cls, n):
        return cls._raw(
            tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)), n, n
        )

    @classmethod
    def from_columns(cls, columns, nrows=None):
        columns = [tuple(cls._coerce(x) for x in c) for c in columns]
        if nrows is None:
            if not columns:
                raise ValueError("nrows is required for an empty column list")
            nrows = len(columns[0])
        for c in columns:
            if len(c) != nrows:
                raise ValueError("ragged columns")
        rows = tuple(tuple(c[i] for c in columns) for i in range(nrows))
        return cls._raw(rows, nrows, len(columns))

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def row(self, i):
        return self.rows[i]

    def col(self, j):
        return tuple(r[j] for r in self.rows)

    def columns(self):
        return [self.col(j) for j in range(self.ncols)]

    @property
    def T(self):
        rows = tuple(tuple(r[j] for r in self.rows) for j in range(self.ncols))
        return type(self)._raw(rows, self.ncols, self.nrows)

    def __matmul__(self, other):
        if isinstance(other, _Matrix):
            if self.ncols != other.nrows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            cls = RatMatrix if RatMatrix in (type(self), type(other)) else type(self)
            ocols = other.T.rows
            rows = tuple(
                tuple(sum(a * b for a, b in zip(r, c) if a and b) for c in ocols) for r in self.rows
            )
            return cls._raw(rows, self.nrows, other.ncols)
        vec = tuple(other)
        if len(vec) != self.ncols:
            raise ValueError(f"vector length {len(vec)} does not match {self.ncols} columns")
        return tuple(sum(a * b for a, b in zip(r, vec) if a and b) for r in self.rows)

    def __neg__(self):
        return type(self)._raw(tuple(tuple(-x for x in r) for r in self.rows), self.nrows, self.ncols)

    def __add__(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        cls = RatMatrix if RatMatrix in (type(self), type(other)) else type(self)
        return cls._raw(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)),
            self.nrows,
            self.ncols,
        )

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        return isinstance(other, _Matrix) and self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.shape, self.rows))

    def __repr__(self):
        return f"{type(self).__name__}({[list(r) for r in self.rows]!r})"

    def hstack(self, *others):
        out = [list(r) for r in self.rows]
        ncols = self.ncols
        for o in others:
            if o.nrows != self.nrows:
                raise ValueError("hstack row mismatch")
            for r, orow in zip(out, o.rows):
                r.extend(orow)
            ncols += o.ncols
        cls = RatMatrix if any(isinstance(m, RatMatrix) for m in (self, *others)) else type(self)
        return cls(out, ncols)

    def vstack(self, *others):
        rows = list(self.rows)
        for o in others:
            if o.ncols != self.ncols:
                raise ValueError("vstack column mismatch")
            rows.extend(o.rows)
        cls = RatMatrix if any(isinstance(m, RatMatrix) for m in (self, *others)) else type(self)
        return cls(rows, self.ncols)

    def select_rows(self, idx):
        return type(self)._raw(tuple(self.rows[i] for i in idx), len(idx), self.ncols)

    def select_cols(self, idx):
        return type(self)._raw(tuple(tuple(r[j] for j in idx) for r in self.rows), self.nrows, len(idx))

    def is_zero(self):
        return all(not x for r in self.rows for x in r)

    def tolist(self):
        return [list(r) for r in self.rows]


class IntMatrix(_Matrix):
    """Matrix with arbitrary-precision integer entries."""

    __slots__ = ()
    _coerce = staticmethod(_as_int)

    def det(self):
        """Determinant by fraction-free (Bareiss) elimination."""
        n = self.nrows
        if n != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        if n == 0:
            return 1
        a = [list(r) for r in self.rows]
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k]:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def is_unimodular(self):
        return self.nrows == self.ncols and abs(self.det()) == 1

    def to_rational(self):
        return RatMatrix._raw(
            tuple(tuple(Fraction(x) for x in r) for r in self.rows), self.nrows, self.ncols
        )


class RatMatrix(_Matrix):
    """Matrix with exact rational entries, each stored in lowest terms."""

    __slots__ = ()
    _coerce = staticmethod(_as_rat)

    def common_denominator(self):
        den = 1
        for r in self.rows:
            for x in r:
                den = den * x.denominator // _gcd(den, x.denominator)
        return den

    def scaled_to_int(self):
        """Return ``(L, M)`` with ``L * self == M`` and ``M`` integral."""
        den = self.common_denominator()
        return den, IntMatrix._raw(
            tuple(tuple(int(x * den) for x in r) for r in self.rows), self.nrows, self.ncols
        )


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


def as_int_matrix(m, ncols=None):
    if isinstance(m, IntMatrix):
        return m
    if isinstance(m, _Matrix):
        return IntMatrix(m.rows, m.ncols)
    return IntMatrix(m, ncols)


def as_rat_matrix(m, ncols=None):
    if isinstance(m, RatMatrix):
        return m
    if isinstance(m, _Matrix):
        return RatMatrix(m.rows, m.ncols)
    return RatMatrix(m, ncols)


def vec_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def vec_scale(s, a):
    return tuple(s * x for x in a)


def vec_is_zero(a):
    return not any(a)
