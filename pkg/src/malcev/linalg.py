"""Exact rational linear algebra: dense matrices, RREF, kernels and canonical
subspaces over the field of fractions.

Subspaces are stored as reduced row-echelon bases, so two equal subspaces have
identical basis grids and value equality is grid equality.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import DimensionError

ZERO = Fraction(0)
ONE = Fraction(1)


def to_fraction(value) -> Fraction:
    """Coerce int/str/Fraction to Fraction. Floats are rejected: arithmetic here
    is exact and a float would smuggle in rounding."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot build an exact rational from {type(value).__name__}")


def rational_str(q: Fraction) -> str:
    # "p/q" with the sign on the numerator, or plain "p" when q == 1
    return str(q)


class Matrix:
    """Immutable dense matrix of Fractions."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Iterable[Iterable], cols: Optional[int] = None):
        grid = tuple(tuple(to_fraction(e) for e in row) for row in entries)
        if grid:
            width = len(grid[0])
            if cols is not None and cols != width:
                raise DimensionError(f"declared {cols} columns, rows have {width}")
            if any(len(r) != width for r in grid):
                raise DimensionError("ragged rows")
            cols = width
        elif cols is None:
            cols = 0
        object.__setattr__(self, "rows", len(grid))
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", grid)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def zero(cls, rows: int, cols: int) -> "Matrix":
        return cls([[ZERO] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def vstack(cls, mats: Sequence["Matrix"]) -> "Matrix":
        if not mats:
            raise DimensionError("vstack of nothing")
        cols = mats[0].cols
        if any(m.cols != cols for m in mats):
            raise DimensionError("vstack column mismatch")
        rows = []
        for m in mats:
            rows.extend(m.entries)
        return cls(rows, cols=cols)

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def _same_shape(self, other: "Matrix"):
        if not isinstance(other, Matrix):
            raise TypeError("expected a Matrix")
        if self.rows != other.rows or self.cols != other.cols:
            raise DimensionError(
                f"shape mismatch: {self.rows}x{self.cols} vs {other.rows}x{other.cols}"
            )

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.cols, self.entries))

    def __repr__(self):
        body = "; ".join(" ".join(rational_str(e) for e in row) for row in self.entries)
        return f"Matrix({self.rows}x{self.cols}: {body})"

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)],
            cols=self.cols,
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(
            [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)],
            cols=self.cols,
        )

    def __neg__(self) -> "Matrix":
        return Matrix([[-a for a in row] for row in self.entries], cols=self.cols)

    def scale(self, s) -> "Matrix":
        s = to_fraction(s)
        return Matrix([[s * a for a in row] for row in self.entries], cols=self.cols)

    def __mul__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.cols != other.rows:
            raise DimensionError(f"{self.rows}x{self.cols} times {other.rows}x{other.cols}")
        cols = tuple(zip(*other.entries)) if other.entries else ()
        return Matrix(
            [[sum((a * b for a, b in zip(row, col)), ZERO) for col in cols] for row in self.entries],
            cols=other.cols,
        )

    def apply(self, vec: Sequence[Fraction]) -> tuple:
        """Matrix times column vector."""
        if len(vec) != self.cols:
            raise DimensionError(f"vector of length {len(vec)} against {self.cols} columns")
        return tuple(sum((a * v for a, v in zip(row, vec) if v), ZERO) for row in self.entries)

    def transpose(self) -> "Matrix":
        return Matrix(list(zip(*self.entries)) if self.entries else [], cols=self.rows)

    def is_zero(self) -> bool:
        return all(not e for row in self.entries for e in row)

    @property
    def rank(self) -> int:
        return rref(self)[1]


def _rref_rows(rows, cols):
    """Gauss-Jordan over Fractions. Returns (reduced row list, pivot column list)."""
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    nrows = len(m)
    for c in range(cols):
        pivot_row = None
        for i in range(r, nrows):
            if m[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        lead = m[r][c]
        if lead != 1:
            m[r] = [e / lead for e in m[r]]
        for i in range(nrows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m, pivots


def rref(m: Matrix) -> tuple[Matrix, int]:
    """Unique reduced row-echelon form and rank."""
    reduced, pivots = _rref_rows(m.entries, m.cols)
    return Matrix(reduced, cols=m.cols), len(pivots)


def solve(m: Matrix, rhs: Sequence[Fraction]) -> Optional[tuple]:
    """One exact solution of m.x = rhs (free variables set to 0), or None."""
    if len(rhs) != m.rows:
        raise DimensionError("right-hand side length mismatch")
    augmented = [list(row) + [to_fraction(b)] for row, b in zip(m.entries, rhs)]
    reduced, pivots = _rref_rows(augmented, m.cols + 1)
    if m.cols in pivots:
        return None
    x = [ZERO] * m.cols
    for r, p in enumerate(pivots):
        x[p] = reduced[r][m.cols]
    return tuple(x)


def kernel(m: Matrix) -> "Subspace":
    """Null space {x : m.x = 0} as a canonical subspace of dimension cols - rank."""
    reduced, pivots = _rref_rows(m.entries, m.cols)
    pivot_set = set(pivots)
    basis = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        vec = [ZERO] * m.cols
        vec[free] = ONE
        for r, p in enumerate(pivots):
            vec[p] = -reduced[r][free]
        basis.append(vec)
    return Subspace(m.cols, basis)


class Subspace:
    """Subspace of Q^n held as a canonical RREF basis (zero subspace: no rows)."""

    __slots__ = ("ambient_dim", "basis", "pivots")

    def __init__(self, ambient_dim: int, rows: Iterable[Iterable] = ()):
        grid = [[to_fraction(e) for e in row] for row in rows]
        if any(len(r) != ambient_dim for r in grid):
            raise DimensionError("row length differs from ambient dimension")
        reduced, pivots = _rref_rows(grid, ambient_dim)
        basis = tuple(tuple(row) for row in reduced[: len(pivots)])
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "basis", Matrix(basis, cols=ambient_dim))
        object.__setattr__(self, "pivots", tuple(pivots))

    def __setattr__(self, name, value):
        raise AttributeError("Subspace is immutable")

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim)

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, Matrix.identity(ambient_dim).entries)

    @property
    def dim(self) -> int:
        return self.basis.rows

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.ambient_dim == other.ambient_dim
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return f"Subspace(dim {self.dim} of {self.ambient_dim})"

    def _check_ambient(self, other: "Subspace"):
        if self.ambient_dim != other.ambient_dim:
            raise DimensionError(
                f"ambient dimensions differ: {self.ambient_dim} vs {other.ambient_dim}"
            )

    def reduce(self, vec: Sequence[Fraction]) -> tuple:
        """Remainder of vec after subtracting its projection onto the basis rows."""
        if len(vec) != self.ambient_dim:
            raise DimensionError("vector length differs from ambient dimension")
        v = [to_fraction(e) for e in vec]
        for row, p in zip(self.basis.entries, self.pivots):
            f = v[p]
            if f:
                v = [a - f * b for a, b in zip(v, row)]
        return tuple(v)

    def contains(self, vec: Sequence[Fraction]) -> bool:
        return not any(self.reduce(vec))

    def coordinates(self, vec: Sequence[Fraction]) -> Optional[tuple]:
        """Coefficients of vec in the RREF basis, or None if outside. The basis
        rows are pivots of an RREF grid, so the coefficient of row r is vec[pivot_r]."""
        if len(vec) != self.ambient_dim:
            raise DimensionError("vector length differs from ambient dimension")
        coeffs = tuple(to_fraction(vec[p]) for p in self.pivots)
        residual = list(vec)
        for f, row in zip(coeffs, self.basis.entries):
            if f:
                residual = [a - f * b for a, b in zip(residual, row)]
        if any(residual):
            return None
        return coeffs

    def contains_subspace(self, other: "Subspace") -> bool:
        self._check_ambient(other)
        return all(self.contains(row) for row in other.basis.entries)

    def sum(self, other: "Subspace") -> "Subspace":
        self._check_ambient(other)
        return Subspace(self.ambient_dim, self.basis.entries + other.basis.entries)

    def intersection(self, other: "Subspace") -> "Subspace":
        """Zassenhaus: RREF of [[A A],[B 0]]; rows with zero left half carry an
        intersection basis in the right half."""
        self._check_ambient(other)
        n = self.ambient_dim
        block = [list(row) + list(row) for row in self.basis.entries]
        block += [list(row) + [ZERO] * n for row in other.basis.entries]
        reduced, pivots = _rref_rows(block, 2 * n)
        rows = []
        for r in range(len(pivots)):
            left, right = reduced[r][:n], reduced[r][n:]
            if not any(left) and any(right):
                rows.append(right)
        return Subspace(n, rows)

    def to_rows(self) -> list[list[str]]:
        """Basis rows as "p/q" strings (the JSON wire form)."""
        return [[rational_str(e) for e in row] for row in self.basis.entries]
