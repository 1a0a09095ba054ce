"""Dense exact linear algebra over :class:`~qsinglet.scalar.FieldScalar`.

Matrices here are tiny (at most 12 x 8 in practice, 10-column constraint
systems for the metric search), so everything is plain Python lists of
field elements with Gauss-Jordan elimination.  Pivots are the first nonzero
entry of each column; exact arithmetic needs no magnitude pivoting and this
keeps kernel bases deterministic.
"""
from __future__ import annotations

import json
from typing import Iterable, Optional, Sequence

from .errors import BasisMismatch, DimensionMismatch, SingularMatrix
from .scalar import ONE, ZERO, FieldScalar

__all__ = [
    "Matrix",
    "StateVector",
    "matmul",
    "kron",
    "commutator",
    "invert",
    "kernel",
    "left_kernel",
    "rank",
    "conjugate",
    "charpoly",
    "unit",
    "load_matrix",
    "dump_matrix",
    "SINGLE_SITE",
    "TWO_SITE",
]

#: basis tags; a two-site tag is the Kronecker product of two single-site tags
SINGLE_SITE = "ud"
TWO_SITE = "ud*ud"


def _combine_tags(a: Optional[str], b: Optional[str]) -> Optional[str]:
    if a is None or b is None:
        return None
    return f"{a}*{b}"


def _check_tags(a: Optional[str], b: Optional[str]) -> Optional[str]:
    if a is not None and b is not None and a != b:
        raise BasisMismatch(f"basis {a!r} does not match {b!r}")
    return a if a is not None else b


class Matrix:
    """Immutable dense matrix of field elements.

    Entries are coerced with :meth:`FieldScalar.coerce`, so ints, Fractions
    and strings such as ``"s - s^-1"`` are all accepted.
    """

    __slots__ = ("rows", "cols", "_data", "basis")

    def __init__(self, rows: Iterable[Iterable], basis: Optional[str] = None):
        data = tuple(tuple(FieldScalar.coerce(x) for x in row) for row in rows)
        if not data:
            raise DimensionMismatch("matrix needs at least one row")
        width = len(data[0])
        if width == 0 or any(len(r) != width for r in data):
            raise DimensionMismatch("ragged or empty rows")
        self._data = data
        self.rows = len(data)
        self.cols = width
        self.basis = basis

    @classmethod
    def _wrap(cls, data, basis=None) -> "Matrix":
        obj = cls.__new__(cls)
        obj._data = tuple(tuple(r) for r in data)
        obj.rows = len(obj._data)
        obj.cols = len(obj._data[0])
        obj.basis = basis
        return obj

    @classmethod
    def identity(cls, n: int, basis: Optional[str] = None) -> "Matrix":
        return cls._wrap([[ONE if i == j else ZERO for j in range(n)] for i in range(n)], basis)

    @classmethod
    def zeros(cls, rows: int, cols: Optional[int] = None, basis: Optional[str] = None) -> "Matrix":
        return cls._wrap([[ZERO] * (cols or rows) for _ in range(rows)], basis)

    @classmethod
    def diag(cls, entries: Sequence, basis: Optional[str] = None) -> "Matrix":
        vals = [FieldScalar.coerce(x) for x in entries]
        n = len(vals)
        return cls._wrap([[vals[i] if i == j else ZERO for j in range(n)] for i in range(n)], basis)

    # -- access ------------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, idx) -> FieldScalar:
        i, j = idx
        return self._data[i][j]

    def row(self, i: int) -> tuple:
        return self._data[i]

    def tolist(self) -> list[list[FieldScalar]]:
        return [list(r) for r in self._data]

    def entries(self):
        """Iterate over ``(i, j, value)`` in row-major order."""
        for i, r in enumerate(self._data):
            for j, x in enumerate(r):
                yield i, j, x

    def with_basis(self, basis: Optional[str]) -> "Matrix":
        return Matrix._wrap(self._data, basis)

    @property
    def T(self) -> "Matrix":
        return Matrix._wrap(list(zip(*self._data)), self.basis)

    def is_zero(self) -> bool:
        return all(x.is_zero() for r in self._data for x in r)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def map(self, fn) -> "Matrix":
        return Matrix._wrap([[fn(x) for x in r] for r in self._data], self.basis)

    def evaluate(self, s0):
        """Exact rational entries at ``s = s0`` as a nested list."""
        return [[x.evaluate(s0) for x in r] for r in self._data]

    def to_float(self, q: float):
        import numpy as np

        return np.array([[x.to_float(q) for x in r] for r in self._data], dtype=float)

    def to_strings(self, var: str = "s") -> list[list[str]]:
        return [[x.to_string(var) for x in r] for r in self._data]

    # -- arithmetic --------------------------------------------------------
    def _same_shape(self, other: "Matrix"):
        if self.shape != other.shape:
            raise DimensionMismatch(f"shapes {self.shape} and {other.shape} differ")
        return _check_tags(self.basis, other.basis)

    def __add__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        tag = self._same_shape(other)
        return Matrix._wrap([[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self._data, other._data)], tag)

    def __sub__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        tag = self._same_shape(other)
        return Matrix._wrap([[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self._data, other._data)], tag)

    def __neg__(self) -> "Matrix":
        return self.map(lambda x: -x)

    def __mul__(self, c) -> "Matrix":
        if isinstance(c, Matrix):
            return NotImplemented
        c = FieldScalar.coerce(c)
        return self.map(lambda x: x * c)

    __rmul__ = __mul__

    def __truediv__(self, c) -> "Matrix":
        c = FieldScalar.coerce(c)
        return self.map(lambda x: x / c)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            return matmul(self, other)
        if isinstance(other, StateVector):
            if other.dim != self.cols:
                raise DimensionMismatch(f"{self.shape} matrix times length-{other.dim} vector")
            tag = _check_tags(self.basis, other.basis)
            return StateVector([_dot(r, other.entries) for r in self._data], tag)
        return NotImplemented

    def __pow__(self, n: int) -> "Matrix":
        if n < 0:
            return invert(self) ** (-n)
        result = Matrix.identity(self.rows, self.basis)
        for _ in range(n):
            result = result @ self
        return result

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self._data == other._data

    def __hash__(self):
        return hash(self._data)

    def __repr__(self):
        body = ",\n       ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self._data)
        return f"Matrix([{body}])"


def _dot(a: Sequence[FieldScalar], b: Sequence[FieldScalar]) -> FieldScalar:
    acc = ZERO
    for x, y in zip(a, b):
        if x.is_zero() or y.is_zero():
            continue
        acc = acc + x * y
    return acc


class StateVector:
    """Column (or, for covectors, row) vector of field elements.

    ``norm_squared`` is the plain sum of squares: complex conjugation is the
    identity on the real field used here.
    """

    __slots__ = ("entries", "basis", "_norm_sq")

    def __init__(self, entries: Iterable, basis: Optional[str] = None):
        self.entries = tuple(FieldScalar.coerce(x) for x in entries)
        self.basis = basis
        self._norm_sq = None

    @property
    def dim(self) -> int:
        return len(self.entries)

    @property
    def norm_squared(self) -> FieldScalar:
        if self._norm_sq is None:
            self._norm_sq = _dot(self.entries, self.entries)
        return self._norm_sq

    def __getitem__(self, i) -> FieldScalar:
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def is_zero(self) -> bool:
        return all(x.is_zero() for x in self.entries)

    def dot(self, other: "StateVector") -> FieldScalar:
        if other.dim != self.dim:
            raise DimensionMismatch("vector lengths differ")
        return _dot(self.entries, other.entries)

    def scaled(self, c) -> "StateVector":
        c = FieldScalar.coerce(c)
        return StateVector([x * c for x in self.entries], self.basis)

    def normalized_to_first(self) -> "StateVector":
        """Rescale so that the first nonzero entry equals 1."""
        for x in self.entries:
            if not x.is_zero():
                return self.scaled(x.inverse())
        return self

    def as_column(self) -> Matrix:
        return Matrix._wrap([[x] for x in self.entries], self.basis)

    def as_row(self) -> Matrix:
        return Matrix._wrap([list(self.entries)], self.basis)

    def evaluate(self, s0):
        return [x.evaluate(s0) for x in self.entries]

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if other.rows != self.dim:
                raise DimensionMismatch("covector length does not match matrix rows")
            tag = _check_tags(self.basis, other.basis)
            cols = list(zip(*[other.row(i) for i in range(other.rows)]))
            return StateVector([_dot(self.entries, c) for c in cols], tag)
        if isinstance(other, StateVector):
            return self.dot(other)
        return NotImplemented

    def __add__(self, other: "StateVector") -> "StateVector":
        return StateVector([a + b for a, b in zip(self.entries, other.entries)], _check_tags(self.basis, other.basis))

    def __sub__(self, other: "StateVector") -> "StateVector":
        return StateVector([a - b for a, b in zip(self.entries, other.entries)], _check_tags(self.basis, other.basis))

    def __eq__(self, other):
        if not isinstance(other, StateVector):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return "StateVector([" + ", ".join(str(x) for x in self.entries) + "])"


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------

def matmul(a: Matrix, b: Matrix) -> Matrix:
    if a.cols != b.rows:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    tag = _check_tags(a.basis, b.basis)
    bcols = list(zip(*[b.row(i) for i in range(b.rows)]))
    return Matrix._wrap([[_dot(r, c) for c in bcols] for r in (a.row(i) for i in range(a.rows))], tag)


def kron(a: Matrix, b: Matrix) -> Matrix:
    """Kronecker product; the first factor indexes the slower (left) slot."""
    out = []
    for i in range(a.rows):
        for k in range(b.rows):
            out.append([a[i, j] * b[k, l] for j in range(a.cols) for l in range(b.cols)])
    return Matrix._wrap(out, _combine_tags(a.basis, b.basis))


def commutator(a: Matrix, b: Matrix) -> Matrix:
    if not (a.is_square() and a.shape == b.shape):
        raise DimensionMismatch(f"commutator needs equal square shapes, got {a.shape} and {b.shape}")
    return a @ b - b @ a


def _rref(rows: list[list[FieldScalar]], ncols: int) -> tuple[list[list[FieldScalar]], list[int]]:
    """Reduced row echelon form in place; returns the rows and pivot columns."""
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if not rows[i][c].is_zero()), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(nrows):
            if i != r and not rows[i][c].is_zero():
                f = rows[i][c]
                rows[i] = [x - f * y if not y.is_zero() else x for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return rows, pivots


def rank(a: Matrix) -> int:
    _, piv = _rref(a.tolist(), a.cols)
    return len(piv)


def invert(a: Matrix) -> Matrix:
    """Exact inverse by Gauss-Jordan elimination on ``[A | I]``."""
    if not a.is_square():
        raise DimensionMismatch(f"cannot invert a {a.shape} matrix")
    n = a.rows
    aug = [list(a.row(i)) + [ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    aug, piv = _rref(aug, n)
    if piv != list(range(n)):
        raise SingularMatrix("matrix is singular")
    return Matrix._wrap([r[n:] for r in aug], a.basis)


def kernel(a: Matrix) -> list[StateVector]:
    """Basis of ``{v : A v = 0}``.

    One vector per free column, taken left to right, with that free entry set
    to 1 and the other free entries 0.  Vectors are not normalized.
    """
    rows, piv = _rref(a.tolist(), a.cols)
    free = [c for c in range(a.cols) if c not in piv]
    basis = []
    for f in free:
        v = [ZERO] * a.cols
        v[f] = ONE
        for r, pc in enumerate(piv):
            v[pc] = -rows[r][f]
        basis.append(StateVector(v, a.basis))
    return basis


def left_kernel(a: Matrix) -> list[StateVector]:
    """Basis of ``{u : u A = 0}``, returned as row vectors."""
    return kernel(a.T)


def conjugate(g: Matrix, x: Matrix) -> Matrix:
    """``G X G^-1``."""
    if g.shape != x.shape:
        raise DimensionMismatch(f"cannot conjugate {x.shape} by {g.shape}")
    return g @ x @ invert(g)


def charpoly(a: Matrix) -> list[FieldScalar]:
    """Characteristic polynomial ``det(t I - A)`` by Faddeev-LeVerrier.

    Returns ascending coefficients ``[c_0, ..., c_n]`` with ``c_n = 1``.
    """
    if not a.is_square():
        raise DimensionMismatch("characteristic polynomial needs a square matrix")
    n = a.rows
    coeffs = [ZERO] * (n + 1)
    coeffs[n] = ONE
    ident = Matrix.identity(n, a.basis)
    m = Matrix.zeros(n, n, a.basis)
    for k in range(1, n + 1):
        m = a @ m + ident * coeffs[n - k + 1]
        am = a @ m
        trace = ZERO
        for i in range(n):
            trace = trace + am[i, i]
        coeffs[n - k] = trace * FieldScalar(-1) / k
    return coeffs


def unit(n: int, i: int, j: int, basis: Optional[str] = None) -> Matrix:
    """Matrix unit ``E_ij`` with 1-based row ``i`` and column ``j``."""
    return Matrix._wrap([[ONE if (r, c) == (i - 1, j - 1) else ZERO for c in range(n)] for r in range(n)], basis)


def dump_matrix(m: Matrix, var: str = "s") -> str:
    """Serialize as a JSON array of rows of scalar strings."""
    return json.dumps(m.to_strings(var))


def load_matrix(text: str, shape: Optional[tuple[int, int]] = None, basis: Optional[str] = None) -> Matrix:
    """Inverse of :func:`dump_matrix`; validates rectangularity and ``shape``."""
    data = json.loads(text)
    if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
        raise DimensionMismatch("matrix fixture must be a list of rows")
    for r in data:
        for x in r:
            if not isinstance(x, (str, int)):
                raise DimensionMismatch(f"matrix entries must be strings, got {x!r}")
    m = Matrix([[str(x) for x in r] for r in data], basis)
    if shape is not None and m.shape != tuple(shape):
        raise DimensionMismatch(f"fixture has shape {m.shape}, expected {tuple(shape)}")
    return m
