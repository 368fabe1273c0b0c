"""Exact linear algebra over Q.

``QMatrix`` is a sparse dict-of-rows matrix; module generators are mostly
zero and stay block-sparse under the level recursion.  Subspaces are kept as
reduced row echelon bases (lists of tuples) with their pivot columns.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .scalar import ONE, ZERO, Polynomial, Q, fmt_q


class QMatrix:
    """Immutable sparse rational matrix acting on column vectors."""

    __slots__ = ("shape", "_rows")

    def __init__(self, shape: tuple, rows: dict | None = None):
        self.shape = (int(shape[0]), int(shape[1]))
        # rows[i][j] holds only nonzero entries
        self._rows = rows if rows is not None else {}

    # construction -------------------------------------------------------
    @classmethod
    def zeros(cls, n: int, m: int | None = None) -> "QMatrix":
        return cls((n, n if m is None else m))

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls((n, n), {i: {i: ONE} for i in range(n)})

    @classmethod
    def diag(cls, values: Sequence) -> "QMatrix":
        n = len(values)
        rows = {}
        for i, v in enumerate(values):
            v = Q(v)
            if v:
                rows[i] = {i: v}
        return cls((n, n), rows)

    @classmethod
    def from_entries(cls, shape: tuple, entries: dict) -> "QMatrix":
        rows: dict = {}
        for (i, j), v in entries.items():
            v = Q(v)
            if v:
                rows.setdefault(i, {})[j] = v
        return cls(shape, rows)

    @classmethod
    def from_dense(cls, data: Sequence[Sequence]) -> "QMatrix":
        n = len(data)
        m = len(data[0]) if n else 0
        rows = {}
        for i, row in enumerate(data):
            if len(row) != m:
                raise ValueError("ragged matrix")
            r = {j: Q(v) for j, v in enumerate(row) if Q(v)}
            if r:
                rows[i] = r
        return cls((n, m), rows)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], n: int) -> "QMatrix":
        rows: dict = {}
        for j, col in enumerate(cols):
            for i, v in enumerate(col):
                if v:
                    rows.setdefault(i, {})[j] = v
        return cls((n, len(cols)), rows)

    # access ---------------------------------------------------------------
    def __getitem__(self, ij):
        i, j = ij
        return self._rows.get(i, {}).get(j, ZERO)

    def items(self):
        for i, row in self._rows.items():
            for j, v in row.items():
                yield (i, j), v

    @property
    def nnz(self) -> int:
        return sum(len(r) for r in self._rows.values())

    def is_zero(self) -> bool:
        return not self._rows

    def to_dense(self) -> list:
        n, m = self.shape
        out = [[ZERO] * m for _ in range(n)]
        for (i, j), v in self.items():
            out[i][j] = v
        return out

    def column(self, j: int) -> tuple:
        return tuple(self._rows.get(i, {}).get(j, ZERO) for i in range(self.shape[0]))

    def diagonal(self) -> list:
        return [self[i, i] for i in range(min(self.shape))]

    def is_diagonal(self) -> bool:
        return all(set(r) <= {i} for i, r in self._rows.items())

    # arithmetic -------------------------------------------------------------
    def _combine(self, other: "QMatrix", sign: int) -> "QMatrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        rows = {i: dict(r) for i, r in self._rows.items()}
        for i, orow in other._rows.items():
            row = rows.setdefault(i, {})
            for j, v in orow.items():
                s = row.get(j, ZERO) + (v if sign > 0 else -v)
                if s:
                    row[j] = s
                else:
                    row.pop(j, None)
            if not row:
                del rows[i]
        return QMatrix(self.shape, rows)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return QMatrix(self.shape, {i: {j: -v for j, v in r.items()} for i, r in self._rows.items()})

    def __mul__(self, c):
        if isinstance(c, QMatrix):
            raise TypeError("use @ for matrix products")
        c = Q(c)
        if not c:
            return QMatrix(self.shape)
        return QMatrix(self.shape, {i: {j: v * c for j, v in r.items()} for i, r in self._rows.items()})

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, QMatrix):
            if self.shape[1] != other.shape[0]:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            orows = other._rows
            rows = {}
            for i, row in self._rows.items():
                acc: dict = {}
                for k, a in row.items():
                    brow = orows.get(k)
                    if brow is None:
                        continue
                    for j, b in brow.items():
                        acc[j] = acc.get(j, ZERO) + a * b
                acc = {j: v for j, v in acc.items() if v}
                if acc:
                    rows[i] = acc
            return QMatrix((self.shape[0], other.shape[1]), rows)
        return self.apply(other)

    def apply(self, v: Sequence) -> tuple:
        if len(v) != self.shape[1]:
            raise ValueError("vector length mismatch")
        out = [ZERO] * self.shape[0]
        for i, row in self._rows.items():
            acc = ZERO
            for j, a in row.items():
                x = v[j]
                if x:
                    acc += a * x
            out[i] = acc
        return tuple(out)

    @property
    def T(self) -> "QMatrix":
        rows: dict = {}
        for (i, j), v in self.items():
            rows.setdefault(j, {})[i] = v
        return QMatrix((self.shape[1], self.shape[0]), rows)

    def kron(self, other: "QMatrix") -> "QMatrix":
        """Kronecker product; the left factor's index varies slowest."""
        n2, m2 = other.shape
        rows: dict = {}
        for (i, j), a in self.items():
            for (k, l), b in other.items():
                rows.setdefault(i * n2 + k, {})[j * m2 + l] = a * b
        return QMatrix((self.shape[0] * n2, self.shape[1] * m2), rows)

    def __eq__(self, other):
        if not isinstance(other, QMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    __hash__ = None

    def __repr__(self):
        return f"QMatrix({self.shape}, nnz={self.nnz})"

    def to_json(self) -> list:
        return [[fmt_q(v) for v in row] for row in self.to_dense()]

    @classmethod
    def from_json(cls, data) -> "QMatrix":
        return cls.from_dense([[Q(v) for v in row] for row in data])


def commutator(a: QMatrix, b: QMatrix) -> QMatrix:
    return a @ b - b @ a


def anticommutator(a: QMatrix, b: QMatrix) -> QMatrix:
    return a @ b + b @ a


# --- dense vectors and echelon forms --------------------------------------

def vec(values: Iterable) -> tuple:
    return tuple(Q(v) for v in values)


def unit_vector(n: int, i: int) -> tuple:
    return tuple(ONE if k == i else ZERO for k in range(n))


def kron_vec(a: Sequence, b: Sequence) -> tuple:
    return tuple(x * y for x in a for y in b)


def normalize_first(v: Sequence) -> tuple:
    """Scale so that the first nonzero coordinate is 1."""
    for x in v:
        if x:
            inv = 1 / x
            return tuple(y * inv for y in v)
    raise ValueError("zero vector")


def rref(rows: Iterable[Sequence]) -> tuple[list, list]:
    """Reduced row echelon basis of the span of ``rows`` and its pivot columns."""
    mat = [list(r) for r in rows]
    if not mat:
        return [], []
    ncols = len(mat[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = 1 / mat[r][c]
        prow = [x * inv for x in mat[r]]
        mat[r] = prow
        nz = [j for j in range(c, ncols) if prow[j]]
        for i in range(len(mat)):
            if i != r:
                f = mat[i][c]
                if f:
                    row = mat[i]
                    for j in nz:
                        row[j] -= f * prow[j]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return [tuple(row) for row in mat[:r]], pivots


def reduce_vector(v: Sequence, basis: Sequence[Sequence], pivots: Sequence[int]) -> tuple:
    """Residual of ``v`` after eliminating the pivot coordinates of an rref basis."""
    out = list(v)
    for row, p in zip(basis, pivots):
        f = out[p]
        if f:
            for j, x in enumerate(row):
                if x:
                    out[j] -= f * x
    return tuple(out)


def in_span(v: Sequence, basis, pivots) -> bool:
    return not any(reduce_vector(v, basis, pivots))


def coordinates(v: Sequence, basis, pivots) -> tuple:
    """Coefficients of ``v`` in an rref basis (``v`` must lie in the span)."""
    return tuple(v[p] for p in pivots)


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> list:
    """Basis of {x : A x = 0} for a dense matrix given by its rows."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    red, pivots = rref(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        x = [ZERO] * ncols
        x[f] = ONE
        for row, p in zip(red, pivots):
            x[p] = -row[f]
        basis.append(tuple(x))
    return basis


def matrix_nullspace(m: QMatrix) -> list:
    return nullspace(m.to_dense(), m.shape[1])


def solve(rows: Sequence[Sequence], rhs: Sequence, unique: bool = False):
    """One solution of A x = b, or None if inconsistent (or singular with ``unique``)."""
    n = len(rows[0]) if rows else 0
    aug = [list(r) + [Q(b)] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug)
    if n in pivots:
        return None
    if unique and len(pivots) < n:
        return None
    x = [ZERO] * n
    for row, p in zip(red, pivots):
        x[p] = row[n]
    return tuple(x)


def restrict(m: QMatrix, basis: Sequence[Sequence], pivots: Sequence[int]) -> list:
    """Matrix (dense, rows) of ``m`` on an invariant subspace with rref basis."""
    k = len(basis)
    cols = [coordinates(m.apply(b), basis, pivots) for b in basis]
    return [[cols[j][i] for j in range(k)] for i in range(k)]


def dense_matmul(a, b) -> list:
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    out = [[ZERO] * m for _ in range(n)]
    for i in range(n):
        ai, oi = a[i], out[i]
        for t in range(k):
            x = ai[t]
            if x:
                bt = b[t]
                for j in range(m):
                    if bt[j]:
                        oi[j] += x * bt[j]
    return out


def charpoly(a: Sequence[Sequence]) -> Polynomial:
    """Characteristic polynomial det(x I - A) by the Faddeev-LeVerrier recursion."""
    n = len(a)
    if n == 0:
        return Polynomial((1,))
    coeffs = [ZERO] * (n + 1)
    coeffs[n] = ONE
    mk = [[ZERO] * n for _ in range(n)]
    for k in range(1, n + 1):
        prev = coeffs[n - k + 1]
        for i in range(n):
            mk[i][i] += prev
        am = dense_matmul(a, mk)
        coeffs[n - k] = -sum((am[i][i] for i in range(n)), ZERO) / k
        mk = am
    return Polynomial(coeffs)


def is_upper_or_lower_triangular(a) -> bool:
    n = len(a)
    upper = all(not a[i][j] for i in range(n) for j in range(i))
    lower = all(not a[i][j] for i in range(n) for j in range(i + 1, n))
    return upper or lower


__all__ = [
    "QMatrix",
    "commutator",
    "anticommutator",
    "vec",
    "unit_vector",
    "kron_vec",
    "normalize_first",
    "rref",
    "reduce_vector",
    "in_span",
    "coordinates",
    "nullspace",
    "matrix_nullspace",
    "solve",
    "restrict",
    "charpoly",
    "dense_matmul",
]
