"""Exact dense linear algebra over the rationals.

Every linear map of the represented derivator lives here.  Entries are
``gmpy2.mpq`` values; there is no floating point anywhere in the package.
Zero-row and zero-column matrices are legal and stand for the maps to and
from the zero space.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from gmpy2 import mpq

MAX_DIM = 512

ZERO = mpq(0)
ONE = mpq(1)


class LinalgError(ValueError):
    pass


def rational(x) -> mpq:
    """Coerce an int, Fraction, mpq or ``"num/den"`` string to ``mpq``."""
    if isinstance(x, str):
        x = x.strip()
        if "/" in x:
            num, den = x.split("/")
            if int(den) == 0:
                raise LinalgError(f"zero denominator in {x!r}")
            return mpq(int(num), int(den))
        return mpq(int(x))
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, float):
        raise LinalgError("floating point entries are not allowed")
    return mpq(x)


def format_rational(x: mpq) -> str:
    return f"{int(x.numerator)}/{int(x.denominator)}"


class Matrix:
    """Immutable dense matrix with rational entries, stored row-major."""

    __slots__ = ("rows", "cols", "data", "_hash")

    def __init__(self, rows: int, cols: int, data: Sequence[Sequence] = ()):
        if rows < 0 or cols < 0:
            raise LinalgError("negative dimension")
        if rows > MAX_DIM or cols > MAX_DIM:
            raise LinalgError(f"matrix {rows}x{cols} exceeds the {MAX_DIM} cap")
        if rows and len(data) != rows:
            raise LinalgError(f"expected {rows} rows, got {len(data)}")
        body = []
        for row in data:
            if len(row) != cols:
                raise LinalgError(f"expected rows of length {cols}, got {len(row)}")
            body.append(tuple(x if type(x) is type(ZERO) else rational(x) for x in row))
        self.rows = rows
        self.cols = cols
        self.data = tuple(body)
        self._hash = None

    @classmethod
    def _raw(cls, rows: int, cols: int, data: tuple) -> "Matrix":
        # trusted constructor for internal results; skips coercion
        m = object.__new__(cls)
        m.rows, m.cols, m.data, m._hash = rows, cols, data, None
        return m

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if cols is None:
            if not rows:
                raise LinalgError("cannot infer column count of an empty row list")
            cols = len(rows[0])
        return cls(len(rows), cols, rows)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls._raw(rows, cols, tuple((ZERO,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls._raw(
            n, n, tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))
        )

    @classmethod
    def column(cls, values: Sequence) -> "Matrix":
        return cls(len(values), 1, [[v] for v in values])

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.rows == other.rows and self.cols == other.cols and self.data == other.data

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self.data))
        return self._hash

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in row) for row in self.data)
        return f"Matrix({self.rows}x{self.cols} [{body}])"

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise LinalgError(f"cannot multiply {self.shape} by {other.shape}")
        ocols = other.cols
        cols_of_other = list(zip(*other.data)) if other.rows else [()] * ocols
        out = []
        for row in self.data:
            nz = [(k, a) for k, a in enumerate(row) if a]
            out.append(
                tuple(sum((a * col[k] for k, a in nz), ZERO) for col in cols_of_other)
            )
        return Matrix._raw(self.rows, ocols, tuple(out))

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix._raw(
            self.rows,
            self.cols,
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.data, other.data)),
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix._raw(
            self.rows,
            self.cols,
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.data, other.data)),
        )

    def __neg__(self) -> "Matrix":
        return Matrix._raw(self.rows, self.cols, tuple(tuple(-a for a in r) for r in self.data))

    def scale(self, c) -> "Matrix":
        c = rational(c)
        return Matrix._raw(self.rows, self.cols, tuple(tuple(c * a for a in r) for r in self.data))

    def _same_shape(self, other: "Matrix"):
        if self.shape != other.shape:
            raise LinalgError(f"shape mismatch {self.shape} vs {other.shape}")

    def transpose(self) -> "Matrix":
        if self.rows == 0:
            return Matrix.zeros(self.cols, 0)
        return Matrix._raw(self.cols, self.rows, tuple(zip(*self.data)))

    @property
    def T(self) -> "Matrix":
        return self.transpose()

    def is_zero(self) -> bool:
        return all(not a for row in self.data for a in row)

    def is_identity(self) -> bool:
        return self.rows == self.cols and self == Matrix.identity(self.rows)

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> "Matrix":
        rows, cols = list(rows), list(cols)
        return Matrix._raw(
            len(rows), len(cols), tuple(tuple(self.data[i][j] for j in cols) for i in rows)
        )

    def row_block(self, start: int, stop: int) -> "Matrix":
        return Matrix._raw(stop - start, self.cols, self.data[start:stop])

    def col_block(self, start: int, stop: int) -> "Matrix":
        return Matrix._raw(self.rows, stop - start, tuple(r[start:stop] for r in self.data))

    def kron(self, other: "Matrix") -> "Matrix":
        rows = []
        for r in self.data:
            for s in other.data:
                rows.append(tuple(a * b for a in r for b in s))
        return Matrix._raw(self.rows * other.rows, self.cols * other.cols, tuple(rows))

    def rank(self) -> int:
        return rref(self)[2]

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.rank() == self.rows

    def inverse(self) -> "Matrix":
        if self.rows != self.cols:
            raise LinalgError(f"non-square matrix {self.shape} has no inverse")
        x = solve(self, Matrix.identity(self.rows))
        if x is None or self.rank() != self.rows:
            raise LinalgError("matrix is singular")
        return x

    def to_strings(self) -> list[list[str]]:
        return [[format_rational(a) for a in row] for row in self.data]

    @classmethod
    def from_strings(cls, rows: int, cols: int, data: Sequence[Sequence[str]]) -> "Matrix":
        return cls(rows, cols, [[rational(x) for x in row] for row in data])


def hstack(blocks: Sequence[Matrix], rows: int | None = None) -> Matrix:
    if not blocks:
        return Matrix.zeros(rows or 0, 0)
    r = blocks[0].rows
    if any(b.rows != r for b in blocks):
        raise LinalgError("hstack row mismatch")
    data = tuple(tuple(x for b in blocks for x in b.data[i]) for i in range(r))
    return Matrix._raw(r, sum(b.cols for b in blocks), data)


def vstack(blocks: Sequence[Matrix], cols: int | None = None) -> Matrix:
    if not blocks:
        return Matrix.zeros(0, cols or 0)
    c = blocks[0].cols
    if any(b.cols != c for b in blocks):
        raise LinalgError("vstack column mismatch")
    return Matrix._raw(sum(b.rows for b in blocks), c, tuple(r for b in blocks for r in b.data))


def block_diag(blocks: Sequence[Matrix]) -> Matrix:
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    out = []
    offset = 0
    for b in blocks:
        for r in b.data:
            out.append((ZERO,) * offset + r + (ZERO,) * (cols - offset - b.cols))
        offset += b.cols
    return Matrix._raw(rows, cols, tuple(out))


def rref(m: Matrix) -> tuple[Matrix, tuple[int, ...], int]:
    """Reduced row echelon form, pivot columns and rank."""
    a = [list(r) for r in m.data]
    nrows, ncols = m.rows, m.cols
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if a[i][c]), None)
        if p is None:
            continue
        if p != r:
            a[r], a[p] = a[p], a[r]
        pr = a[r]
        inv = ONE / pr[c]
        if inv != ONE:
            pr = a[r] = [x * inv for x in pr]
        nz = [j for j in range(c, ncols) if pr[j]]
        for i in range(nrows):
            if i != r:
                f = a[i][c]
                if f:
                    row = a[i]
                    for j in nz:
                        row[j] -= f * pr[j]
        pivots.append(c)
        r += 1
    return Matrix._raw(nrows, ncols, tuple(tuple(row) for row in a)), tuple(pivots), r


def kernel_basis(m: Matrix) -> Matrix:
    """Columns form a basis of ker m; one column per free variable of rref(m)."""
    return kernel_with_free(m)[0]


def kernel_with_free(m: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    """Kernel basis plus its free coordinates, on which the basis is the identity."""
    red, pivots, rank = rref(m)
    free = [c for c in range(m.cols) if c not in set(pivots)]
    cols = []
    for f in free:
        v = [ZERO] * m.cols
        v[f] = ONE
        for i, p in enumerate(pivots):
            v[p] = -red.data[i][f]
        cols.append(v)
    if not cols:
        return Matrix.zeros(m.cols, 0), ()
    return Matrix._raw(m.cols, len(cols), tuple(zip(*cols))), tuple(free)


def cokernel(m: Matrix) -> tuple[Matrix, int]:
    """Projection P onto coker m with P @ m == 0.

    The quotient basis is the set of coordinates that are not pivots of
    rref(m^T); a vector is reduced modulo im m by clearing its pivot
    coordinates with the rows of rref(m^T).
    """
    proj, keep = cokernel_with_keep(m)
    return proj, len(keep)


def cokernel_with_keep(m: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    """Cokernel projection plus its quotient coordinates, on which it is the identity."""
    n = m.rows
    red, pivots, rank = rref(m.transpose())
    pivset = set(pivots)
    keep = [a for a in range(n) if a not in pivset]
    rows = []
    for a in keep:
        row = [ZERO] * n
        row[a] = ONE
        for i, p in enumerate(pivots):
            row[p] = -red.data[i][a]
        rows.append(tuple(row))
    return Matrix._raw(len(keep), n, tuple(rows)), tuple(keep)


def solve(m: Matrix, b: Matrix) -> Matrix | None:
    """A solution X of m @ X == b, or None when the system is inconsistent.

    Free variables are set to zero, so the answer is the canonical one
    read off the reduced augmented system.
    """
    if m.rows != b.rows:
        raise LinalgError(f"row mismatch: {m.shape} vs {b.shape}")
    aug = hstack([m, b]) if m.rows else Matrix.zeros(0, m.cols + b.cols)
    red, pivots, rank = rref(aug)
    if any(p >= m.cols for p in pivots):
        return None
    out = [[ZERO] * b.cols for _ in range(m.cols)]
    for i, p in enumerate(pivots):
        row = red.data[i]
        out[p] = list(row[m.cols:])
    return Matrix(m.cols, b.cols, out)


def rank(m: Matrix) -> int:
    return rref(m)[2]
