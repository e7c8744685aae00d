"""Exact dense linear algebra over Q and odd prime fields.

Thin immutable wrapper around python-flint matrices.  All representation
maps, signed forms and linear systems in the package go through `Mat`.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from flint import fmpq, fmpq_mat, fmpq_poly, fmpz, nmod, nmod_mat, nmod_poly


class LinalgError(ValueError):
    pass


@dataclass(frozen=True)
class Field:
    """Q when p == 0, else the prime field F_p (p odd)."""

    p: int = 0

    @property
    def name(self) -> str:
        return "QQ" if self.p == 0 else f"GF({self.p})"

    @property
    def is_rational(self) -> bool:
        return self.p == 0

    def __call__(self, x):
        if self.p == 0:
            if isinstance(x, fmpq):
                return x
            if isinstance(x, str):
                x = Fraction(x)
            if isinstance(x, Fraction):
                return fmpq(x.numerator, x.denominator)
            return fmpq(int(x)) if not isinstance(x, fmpz) else fmpq(x)
        if isinstance(x, nmod):
            return x
        if isinstance(x, str):
            x = Fraction(x)
        if isinstance(x, (Fraction, fmpq)):
            num, den = int(x.numerator if isinstance(x, Fraction) else x.p), int(
                x.denominator if isinstance(x, Fraction) else x.q)
            if den % self.p == 0:
                raise LinalgError(f"denominator {den} vanishes in {self.name}")
            return nmod(num, self.p) / nmod(den, self.p)
        return nmod(int(x), self.p)

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def _flint_mat(self, rows: int, cols: int, entries=None):
        if self.p == 0:
            if entries is None:
                return fmpq_mat(rows, cols)
            return fmpq_mat(rows, cols, [self(e) for e in entries])
        if entries is None:
            return nmod_mat(rows, cols, self.p)
        return nmod_mat(rows, cols, [int(self(e)) for e in entries], self.p)

    def poly(self, coeffs):
        """Polynomial from low-to-high coefficients."""
        if self.p == 0:
            return fmpq_poly([self(c) for c in coeffs])
        return nmod_poly([int(self(c)) for c in coeffs], self.p)

    def to_python(self, x):
        """Fraction for Q, int in [0, p) for F_p."""
        if self.p == 0:
            return Fraction(int(x.p), int(x.q))
        return int(x)


QQ = Field(0)


@lru_cache(maxsize=None)
def GF(p: int) -> Field:
    if p < 3 or p % 2 == 0 or not fmpz(p).is_prime():
        raise LinalgError(f"GF needs an odd prime, got {p}")
    return Field(p)


def format_scalar(x) -> str:
    if isinstance(x, fmpq):
        return str(int(x.p)) if x.q == 1 else f"{int(x.p)}/{int(x.q)}"
    return str(int(x))


class Mat:
    """Immutable matrix over a `Field`."""

    __slots__ = ("field", "_m", "_hash")

    def __init__(self, field: Field, rows: int, cols: int, entries=None):
        if entries is not None:
            entries = list(entries)
            if len(entries) != rows * cols:
                raise LinalgError(f"{rows}x{cols} matrix needs {rows * cols} entries, got {len(entries)}")
        self.field = field
        self._m = field._flint_mat(rows, cols, entries)
        self._hash = None

    @classmethod
    def _wrap(cls, field: Field, m) -> Mat:
        out = cls.__new__(cls)
        out.field = field
        out._m = m
        out._hash = None
        return out

    @classmethod
    def from_rows(cls, rows, field: Field = QQ) -> Mat:
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise LinalgError("ragged rows")
        return cls(field, len(rows), ncols, [e for r in rows for e in r])

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> Mat:
        return cls(field, rows, cols)

    @classmethod
    def identity(cls, field: Field, n: int) -> Mat:
        return cls(field, n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    @classmethod
    def column(cls, field: Field, values) -> Mat:
        values = list(values)
        return cls(field, len(values), 1, values)

    @classmethod
    def scalar(cls, field: Field, n: int, c) -> Mat:
        return cls(field, n, n, [c if i == j else 0 for i in range(n) for j in range(n)])

    # -- shape and access ---------------------------------------------------
    @property
    def rows(self) -> int:
        return self._m.nrows()

    @property
    def cols(self) -> int:
        return self._m.ncols()

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self._m[i, j]

    def entries(self) -> list:
        return [self._m[i, j] for i in range(self.rows) for j in range(self.cols)]

    def tolist(self) -> list[list]:
        return [[self._m[i, j] for j in range(self.cols)] for i in range(self.rows)]

    def to_python(self) -> list[list]:
        f = self.field.to_python
        return [[f(self._m[i, j]) for j in range(self.cols)] for i in range(self.rows)]

    def __repr__(self) -> str:
        body = "; ".join(" ".join(format_scalar(x) for x in row) for row in self.tolist())
        return f"Mat[{self.rows}x{self.cols}]({body})"

    # -- arithmetic ---------------------------------------------------------
    def _check(self, other: Mat):
        if not isinstance(other, Mat) or other.field != self.field:
            raise LinalgError("field mismatch")

    def __add__(self, other: Mat) -> Mat:
        self._check(other)
        if self.shape != other.shape:
            raise LinalgError(f"shape mismatch {self.shape} + {other.shape}")
        return Mat._wrap(self.field, self._m + other._m)

    def __sub__(self, other: Mat) -> Mat:
        self._check(other)
        if self.shape != other.shape:
            raise LinalgError(f"shape mismatch {self.shape} - {other.shape}")
        return Mat._wrap(self.field, self._m - other._m)

    def __neg__(self) -> Mat:
        return Mat._wrap(self.field, -self._m)

    def __mul__(self, c) -> Mat:
        if isinstance(c, Mat):
            return self @ c
        c = self.field(c)
        if self.rows == 0 or self.cols == 0:
            return self
        return Mat._wrap(self.field, self._m * c)

    __rmul__ = __mul__

    def __matmul__(self, other: Mat) -> Mat:
        self._check(other)
        if self.cols != other.rows:
            raise LinalgError(f"cannot multiply {self.shape} by {other.shape}")
        if self.rows == 0 or other.cols == 0 or self.cols == 0:
            return Mat.zeros(self.field, self.rows, other.cols)
        return Mat._wrap(self.field, self._m * other._m)

    def __pow__(self, k: int) -> Mat:
        if not self.is_square or k < 0:
            raise LinalgError("power needs a square matrix and k >= 0")
        out = Mat.identity(self.field, self.rows)
        base = self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, Mat):
            return NotImplemented
        return self.field == other.field and self.shape == other.shape and (
            self.rows == 0 or self.cols == 0 or self._m == other._m)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.field, self.shape, tuple(str(x) for x in self.entries())))
        return self._hash

    @property
    def T(self) -> Mat:
        if self.rows == 0 or self.cols == 0:
            return Mat.zeros(self.field, self.cols, self.rows)
        return Mat._wrap(self.field, self._m.transpose())

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.entries())

    def trace(self):
        if not self.is_square:
            raise LinalgError("trace of non-square matrix")
        t = self.field.zero
        for i in range(self.rows):
            t += self._m[i, i]
        return t

    # -- elimination ----------------------------------------------------------
    def rref(self) -> tuple[Mat, list[int]]:
        """Reduced row echelon form and pivot columns."""
        if self.rows == 0 or self.cols == 0:
            return self, []
        r, rank = self._m.rref()
        pivots = []
        for i in range(rank):
            j = pivots[-1] + 1 if pivots else 0
            while r[i, j] == 0:
                j += 1
            pivots.append(j)
        return Mat._wrap(self.field, r), pivots

    def rank(self) -> int:
        if self.rows == 0 or self.cols == 0:
            return 0
        return self._m.rref()[1]

    def det(self):
        return matrix_det(self)

    def is_invertible(self) -> bool:
        return self.is_square and (self.rows == 0 or self._m.det() != 0)

    def inverse(self) -> Mat:
        if not self.is_square:
            raise LinalgError("inverse of non-square matrix")
        if self.rows == 0:
            return self
        if self._m.det() == 0:
            raise LinalgError("singular matrix")
        return Mat._wrap(self.field, self._m.inv())

    # -- block helpers ---------------------------------------------------------
    def submatrix(self, rows, cols) -> Mat:
        rows, cols = list(rows), list(cols)
        return Mat(self.field, len(rows), len(cols), [self._m[i, j] for i in rows for j in cols])

    def col(self, j: int) -> Mat:
        return self.submatrix(range(self.rows), [j])

    def columns(self) -> list[Mat]:
        return [self.col(j) for j in range(self.cols)]


def _need_square(m: Mat):
    if not m.is_square:
        raise LinalgError(f"expected a square matrix, got {m.rows}x{m.cols}")


def hstack(field: Field, blocks, rows: int | None = None) -> Mat:
    blocks = list(blocks)
    if rows is None:
        if not blocks:
            raise LinalgError("hstack of nothing needs a row count")
        rows = blocks[0].rows
    if any(b.rows != rows for b in blocks):
        raise LinalgError("hstack row mismatch")
    cols = sum(b.cols for b in blocks)
    entries = []
    for i in range(rows):
        for b in blocks:
            entries.extend(b._m[i, j] for j in range(b.cols))
    return Mat(field, rows, cols, entries)


def vstack(field: Field, blocks, cols: int | None = None) -> Mat:
    blocks = list(blocks)
    if cols is None:
        if not blocks:
            raise LinalgError("vstack of nothing needs a column count")
        cols = blocks[0].cols
    if any(b.cols != cols for b in blocks):
        raise LinalgError("vstack column mismatch")
    entries = []
    for b in blocks:
        entries.extend(b.entries())
    return Mat(field, sum(b.rows for b in blocks), cols, entries)


def block_diag(field: Field, blocks) -> Mat:
    blocks = list(blocks)
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    out = field._flint_mat(rows, cols)
    r0 = c0 = 0
    for b in blocks:
        for i in range(b.rows):
            for j in range(b.cols):
                out[r0 + i, c0 + j] = b._m[i, j]
        r0 += b.rows
        c0 += b.cols
    return Mat._wrap(field, out)


def block_matrix(field: Field, grid) -> Mat:
    """Assemble from a 2D list of blocks with consistent shapes."""
    return vstack(field, [hstack(field, row) for row in grid])


# -- kernels and solving --------------------------------------------------------
def kernel_matrix(m: Mat) -> Mat:
    """Columns form a basis of the right kernel of m."""
    n = m.cols
    if m.rows == 0:
        return Mat.identity(m.field, n)
    r, pivots = m.rref()
    free = [j for j in range(n) if j not in set(pivots)]
    out = m.field._flint_mat(n, len(free))
    for k, f in enumerate(free):
        out[f, k] = m.field.one
        for i, pc in enumerate(pivots):
            out[pc, k] = -r[i, f]
    return Mat._wrap(m.field, out)


def matrix_kernel(m: Mat) -> list[Mat]:
    return kernel_matrix(m).columns()


def matrix_det(m: Mat):
    _need_square(m)
    if m.rows == 0:
        return m.field.one
    return m._m.det()


def column_basis(m: Mat) -> Mat:
    """Independent columns of m spanning its column space (pivot columns)."""
    _, pivots = m.rref()
    return m.submatrix(range(m.rows), pivots)


def solve(a: Mat, b: Mat) -> Mat | None:
    """Some X with a X = b, or None when inconsistent."""
    if a.rows != b.rows:
        raise LinalgError("solve: row mismatch")
    aug = hstack(a.field, [a, b], rows=a.rows)
    r, pivots = aug.rref()
    if any(p >= a.cols for p in pivots):
        return None
    x = a.field._flint_mat(a.cols, b.cols)
    for i, pc in enumerate(pivots):
        for j in range(b.cols):
            x[pc, j] = r[i, a.cols + j]
    return Mat._wrap(a.field, x)


def in_span(a: Mat, b: Mat) -> bool:
    """Whether every column of b lies in the column span of a."""
    return solve(a, b) is not None


# -- polynomials ------------------------------------------------------------------
def minimal_polynomial(m: Mat):
    _need_square(m)
    if m.rows == 0:
        return m.field.poly([1])
    return m._m.minpoly()


def poly_at(p, m: Mat) -> Mat:
    """Evaluate polynomial p at square matrix m (Horner)."""
    _need_square(m)
    coeffs = [m.field(c) for c in p.coeffs()]
    out = Mat.zeros(m.field, m.rows, m.rows)
    eye = Mat.identity(m.field, m.rows)
    for c in reversed(coeffs):
        out = out @ m + eye * c
    return out


def coprime_factor_split(p) -> list:
    """Pairwise coprime factors of p via squarefree parts and rational roots."""
    if p.degree() < 1:
        raise LinalgError("coprime_factor_split needs a nonconstant polynomial")
    const, sqfree = p.factor_squarefree()
    x = type(p)([0, 1]) if isinstance(p, fmpq_poly) else nmod_poly([0, 1], p.modulus())
    pieces = []
    for f, e in sqfree:
        rest = f
        for r, _ in f.roots():
            lin = x - r
            pieces.append(lin ** e)
            rest = rest // lin
        if rest.degree() > 0:
            pieces.append(rest ** e)
    pieces[0] = pieces[0] * const
    return pieces
