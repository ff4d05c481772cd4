"""Structure-constant algebras over the rationals.

An Algebra is a named basis plus the dense tensor c[i][j] giving each product
of basis elements as a coordinate vector. Everything downstream (identity
scans, decompositions, constructions) reads this one representation.

Sign convention used throughout: products and module actions are written on
the right, m*a, and printed tables are read as row times column.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import (
    DimensionError,
    ForeignElementError,
    IdealError,
    SchemaError,
)
from .linalg import Matrix, Subspace, ZERO, kernel, rational_str, solve, to_fraction


class Algebra:
    """Finite-dimensional algebra given by structure constants.

    The anticommutative flag is a promise checked at construction time:
    c[i][i] = 0 and c[i][j] = -c[j][i] for all basis pairs.
    """

    def __init__(self, name: str, basis_names: Sequence[str], tensor, anticommutative: bool = False):
        names = tuple(basis_names)
        if len(set(names)) != len(names):
            raise SchemaError("duplicate basis name")
        dim = len(names)
        c = tuple(tuple(tuple(to_fraction(e) for e in cell) for cell in row) for row in tensor)
        if len(c) != dim or any(len(row) != dim for row in c):
            raise SchemaError("structure tensor shape differs from basis size")
        if any(len(cell) != dim for row in c for cell in row):
            raise SchemaError("structure tensor entry of wrong length")
        if anticommutative:
            for i in range(dim):
                if any(c[i][i]):
                    raise SchemaError(f"anticommutativity contradiction at ({names[i]}, {names[i]})")
                for j in range(i + 1, dim):
                    if any(a + b for a, b in zip(c[i][j], c[j][i])):
                        raise SchemaError(
                            f"anticommutativity contradiction at ({names[i]}, {names[j]})"
                        )
        self.name = str(name)
        self.dim = dim
        self.basis_names = names
        self.c = c
        self.anticommutative = bool(anticommutative)
        self._index = {n: i for i, n in enumerate(names)}
        self._rmul_cache: dict[int, Matrix] = {}
        self._scan_engine = None  # filled lazily by the scan module

    # -- equality ignores the display name: same basis labels + same tensor --
    def __eq__(self, other):
        return (
            isinstance(other, Algebra)
            and self.basis_names == other.basis_names
            and self.anticommutative == other.anticommutative
            and self.c == other.c
        )

    def __hash__(self):
        return hash((self.basis_names, self.anticommutative))

    def __repr__(self):
        return f"Algebra({self.name!r}, dim {self.dim})"

    def index_of(self, basis_name: str) -> int:
        try:
            return self._index[basis_name]
        except KeyError:
            raise SchemaError(f"unknown basis name {basis_name!r} in {self.name}") from None

    # ------------------------------------------------------------------ elements
    def element(self, coords: Iterable) -> "Element":
        return Element(self, tuple(to_fraction(e) for e in coords))

    def element_from_dict(self, coeffs: dict) -> "Element":
        vec = [ZERO] * self.dim
        for name, value in coeffs.items():
            vec[self.index_of(name)] += to_fraction(value)
        return Element(self, tuple(vec))

    def basis_element(self, i: int) -> "Element":
        vec = [ZERO] * self.dim
        vec[i] = Fraction(1)
        return Element(self, tuple(vec))

    def basis_elements(self) -> list["Element"]:
        return [self.basis_element(i) for i in range(self.dim)]

    def zero(self) -> "Element":
        return Element(self, (ZERO,) * self.dim)

    def _own(self, x: "Element"):
        if x.algebra is not self and x.algebra != self:
            raise ForeignElementError(
                f"element of {x.algebra.name!r} used in {self.name!r}"
            )

    def multiply(self, x: "Element", y: "Element") -> "Element":
        """Bilinear extension of the structure tensor."""
        self._own(x)
        self._own(y)
        out = [ZERO] * self.dim
        for i, xi in enumerate(x.coords):
            if not xi:
                continue
            row = self.c[i]
            for j, yj in enumerate(y.coords):
                if not yj:
                    continue
                s = xi * yj
                for k, ck in enumerate(row[j]):
                    if ck:
                        out[k] += s * ck
        return Element(self, tuple(out))

    def right_mult_matrix(self, i: int) -> Matrix:
        """Matrix of x -> x * b_i in column convention (result = M @ coords)."""
        cached = self._rmul_cache.get(i)
        if cached is None:
            cached = Matrix(
                [[self.c[a][i][m] for a in range(self.dim)] for m in range(self.dim)],
                cols=self.dim,
            )
            self._rmul_cache[i] = cached
        return cached

    def right_mult_by(self, y: "Element") -> Matrix:
        self._own(y)
        out = Matrix.zero(self.dim, self.dim)
        for i, yi in enumerate(y.coords):
            if yi:
                out = out + self.right_mult_matrix(i).scale(yi)
        return out

    # ------------------------------------------------------------------ documents
    def to_document(self) -> dict:
        products = []
        for i in range(self.dim):
            j_start = i + 1 if self.anticommutative else 0
            for j in range(j_start, self.dim):
                cell = self.c[i][j]
                if not any(cell):
                    continue
                result = {
                    self.basis_names[k]: rational_str(v) for k, v in enumerate(cell) if v
                }
                products.append(
                    {"left": self.basis_names[i], "right": self.basis_names[j], "result": result}
                )
        return {
            "name": self.name,
            "dim": self.dim,
            "basis": list(self.basis_names),
            "anticommutative": self.anticommutative,
            "products": products,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_document(), sort_keys=True, separators=(",", ":")) + "\n"


class Element:
    """Coordinate vector in a fixed algebra.

    Element * Element is the algebra product; int/Fraction scalars multiply
    coordinates. Equality is exact coordinate equality, no tolerances anywhere.
    """

    __slots__ = ("algebra", "coords")

    def __init__(self, algebra: Algebra, coords: tuple):
        if len(coords) != algebra.dim:
            raise DimensionError("coordinate length differs from algebra dimension")
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "coords", coords)

    def __setattr__(self, name, value):
        raise AttributeError("Element is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, Element)
            and self.coords == other.coords
            and (self.algebra is other.algebra or self.algebra == other.algebra)
        )

    def __hash__(self):
        return hash(self.coords)

    def __add__(self, other: "Element") -> "Element":
        self.algebra._own(other)
        return Element(self.algebra, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Element") -> "Element":
        self.algebra._own(other)
        return Element(self.algebra, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Element":
        return Element(self.algebra, tuple(-a for a in self.coords))

    def scale(self, s) -> "Element":
        s = to_fraction(s)
        return Element(self.algebra, tuple(s * a for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, Element):
            return self.algebra.multiply(self, other)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(1) / to_fraction(other))
        return NotImplemented

    def is_zero(self) -> bool:
        return not any(self.coords)

    def coords_dict(self) -> dict:
        """Nonzero coordinates keyed by basis name, values as "p/q" strings."""
        return {
            self.algebra.basis_names[i]: rational_str(v)
            for i, v in enumerate(self.coords)
            if v
        }

    def __repr__(self):
        if self.is_zero():
            return "0"
        parts = []
        for i, v in enumerate(self.coords):
            if not v:
                continue
            name = self.algebra.basis_names[i]
            if v == 1:
                parts.append(name)
            elif v == -1:
                parts.append(f"-{name}")
            else:
                parts.append(f"{rational_str(v)}*{name}")
        return " + ".join(parts).replace("+ -", "- ")


@dataclass(frozen=True)
class LinearMap:
    """Linear map between algebras, matrix in column convention
    (rows = codomain dim, cols = domain dim)."""

    domain: Algebra
    codomain: Algebra
    matrix: Matrix

    def __post_init__(self):
        if self.matrix.rows != self.codomain.dim or self.matrix.cols != self.domain.dim:
            raise DimensionError("linear map shape differs from the two algebras")

    @classmethod
    def identity(cls, algebra: Algebra) -> "LinearMap":
        return cls(algebra, algebra, Matrix.identity(algebra.dim))

    @classmethod
    def from_columns(cls, domain: Algebra, codomain: Algebra, columns: Sequence[Element]) -> "LinearMap":
        if len(columns) != domain.dim:
            raise DimensionError("need one image column per domain basis element")
        rows = [[col.coords[m] for col in columns] for m in range(codomain.dim)]
        return cls(domain, codomain, Matrix(rows, cols=domain.dim))

    def apply(self, x: Element) -> Element:
        self.domain._own(x)
        return Element(self.codomain, self.matrix.apply(x.coords))

    def compose(self, inner: "LinearMap") -> "LinearMap":
        """self after inner."""
        if inner.codomain != self.domain and inner.codomain is not self.domain:
            raise DimensionError("composition domain mismatch")
        return LinearMap(inner.domain, self.codomain, self.matrix * inner.matrix)


@dataclass(frozen=True)
class ModuleAction:
    """Right action of an algebra on a module: v * b_i = matrices[i] @ v."""

    algebra: Algebra
    module_dim: int
    matrices: tuple
    names: tuple

    def __post_init__(self):
        if len(self.matrices) != self.algebra.dim:
            raise DimensionError("need one action matrix per algebra basis element")
        for m in self.matrices:
            if m.rows != self.module_dim or m.cols != self.module_dim:
                raise DimensionError("action matrix is not square of the module dimension")
        if len(self.names) != self.module_dim:
            raise DimensionError("need one name per module basis vector")


# --------------------------------------------------------------------- loading

_DOC_KEYS = {"name", "dim", "basis", "anticommutative", "products"}


def load_algebra(doc: dict) -> Algebra:
    """Build an Algebra from an interchange document (see to_document for the
    shape). Omitted basis pairs multiply to zero; with the anticommutative flag
    only left-index < right-index entries may appear and mirrors are synthesized."""
    if not isinstance(doc, dict):
        raise SchemaError("document must be a JSON object")
    extra = set(doc) - _DOC_KEYS
    if extra:
        raise SchemaError(f"unknown document keys: {sorted(extra)}")
    for key in ("name", "dim", "basis"):
        if key not in doc:
            raise SchemaError(f"missing document key {key!r}")
    name = doc["name"]
    if not isinstance(name, str):
        raise SchemaError("name must be a string")
    dim = doc["dim"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 0:
        raise SchemaError("dim must be a nonnegative integer")
    basis = doc["basis"]
    if not isinstance(basis, list) or any(not isinstance(b, str) for b in basis):
        raise SchemaError("basis must be a list of strings")
    if len(basis) != dim:
        raise SchemaError("basis length differs from dim")
    if len(set(basis)) != dim:
        raise SchemaError("duplicate basis name")
    anticommutative = doc.get("anticommutative", False)
    if not isinstance(anticommutative, bool):
        raise SchemaError("anticommutative must be a boolean")
    products = doc.get("products", [])
    if not isinstance(products, list):
        raise SchemaError("products must be a list")

    index = {b: i for i, b in enumerate(basis)}
    tensor = [[[ZERO] * dim for _ in range(dim)] for _ in range(dim)]
    seen = set()
    for entry in products:
        if not isinstance(entry, dict) or set(entry) != {"left", "right", "result"}:
            raise SchemaError("each product needs exactly the keys left/right/result")
        left, right, result = entry["left"], entry["right"], entry["result"]
        for side in (left, right):
            if side not in index:
                raise SchemaError(f"unknown basis name {side!r}")
        i, j = index[left], index[right]
        if (i, j) in seen:
            raise SchemaError(f"duplicate product entry for ({left}, {right})")
        seen.add((i, j))
        if anticommutative and i >= j:
            raise SchemaError(
                f"anticommutative document may only list left-index < right-index pairs, got ({left}, {right})"
            )
        if not isinstance(result, dict):
            raise SchemaError("product result must be an object of coordinates")
        cell = tensor[i][j]
        for bname, value in result.items():
            if bname not in index:
                raise SchemaError(f"result references unknown basis name {bname!r}")
            if not isinstance(value, str):
                raise SchemaError("coordinates must be strings like \"p/q\"")
            try:
                cell[index[bname]] = to_fraction(value)
            except (ValueError, ZeroDivisionError) as exc:
                raise SchemaError(f"bad rational {value!r}: {exc}") from None
        if anticommutative:
            tensor[j][i] = [-v for v in cell]
    return Algebra(name, basis, tensor, anticommutative=anticommutative)


def load_algebra_json(text: str) -> Algebra:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from None
    return load_algebra(doc)


# ------------------------------------------------------------------ operations

def multiply(a: Algebra, x: Element, y: Element) -> Element:
    return a.multiply(x, y)


def product_span(a: Algebra, s: Subspace, t: Subspace) -> Subspace:
    """Subspace spanned by all products of s-basis rows with t-basis rows."""
    rows = []
    for u in s.basis.entries:
        xu = a.element(u)
        for v in t.basis.entries:
            rows.append(a.multiply(xu, a.element(v)).coords)
    return Subspace(a.dim, rows)


def quotient_by_ideal(a: Algebra, s: Subspace) -> tuple[Algebra, LinearMap]:
    """Quotient of a by a verified two-sided ideal, plus the projection map.

    The complement is spanned by the non-pivot coordinates of s, so quotient
    basis names are the original names of those coordinates.
    """
    if s.ambient_dim != a.dim:
        raise DimensionError("ideal lives in a different ambient space")
    basis = a.basis_elements()
    for r, row in enumerate(s.basis.entries):
        v = a.element(row)
        for i, b in enumerate(basis):
            if not s.contains((v * b).coords):
                raise IdealError(
                    f"not an ideal: (row {r}) * {a.basis_names[i]} leaves the subspace"
                )
            if not s.contains((b * v).coords):
                raise IdealError(
                    f"not an ideal: {a.basis_names[i]} * (row {r}) leaves the subspace"
                )
    pivots = set(s.pivots)
    kept = [i for i in range(a.dim) if i not in pivots]

    def project(vec) -> tuple:
        reduced = s.reduce(vec)
        return tuple(reduced[i] for i in kept)

    qdim = len(kept)
    names = [a.basis_names[i] for i in kept]
    tensor = [[None] * qdim for _ in range(qdim)]
    for qi, i in enumerate(kept):
        for qj, j in enumerate(kept):
            tensor[qi][qj] = project(a.c[i][j])
    quotient = Algebra(f"{a.name}/ideal", names, tensor, anticommutative=a.anticommutative)
    proj_rows = [[ZERO] * a.dim for _ in range(qdim)]
    for col in range(a.dim):
        unit = [ZERO] * a.dim
        unit[col] = Fraction(1)
        image = project(unit)
        for r in range(qdim):
            proj_rows[r][col] = image[r]
    projection = LinearMap(a, quotient, Matrix(proj_rows, cols=a.dim))
    # canonical projection must be multiplicative on basis pairs
    for i, bi in enumerate(basis):
        for bj in basis:
            lhs = projection.apply(bi * bj)
            rhs = projection.apply(bi) * projection.apply(bj)
            if lhs != rhs:
                raise IdealError("projection failed to be a homomorphism")
    return quotient, projection


def split_null_extension(l: Algebra, act: ModuleAction) -> Algebra:
    """Algebra on L + V with (x+v)(y+w) = xy + (ρ_y(v) - ρ_x(w)) and V·V = 0."""
    if act.algebra is not l and act.algebra != l:
        raise DimensionError("module action belongs to a different algebra")
    n, m = l.dim, act.module_dim
    dim = n + m
    names = list(l.basis_names) + list(act.names)
    if len(set(names)) != dim:
        raise SchemaError("module names collide with algebra basis names")
    tensor = [[[ZERO] * dim for _ in range(dim)] for _ in range(dim)]
    for i in range(n):
        for j in range(n):
            cell = l.c[i][j]
            for k, v in enumerate(cell):
                tensor[i][j][k] = v
    for i in range(n):
        mat = act.matrices[i]
        for j in range(m):
            col = [mat.entries[r][j] for r in range(m)]
            for r, v in enumerate(col):
                tensor[n + j][i][n + r] = v       # v * b_i = rho_i(v)
                tensor[i][n + j][n + r] = -v      # b_i * v = -rho_i(v)
    return Algebra(
        f"{l.name}+module", names, tensor, anticommutative=l.anticommutative
    )


def direct_sum(a: Algebra, b: Algebra, name: Optional[str] = None) -> Algebra:
    names = list(a.basis_names) + list(b.basis_names)
    if len(set(names)) != len(names):
        raise SchemaError("basis names collide in direct sum")
    dim = a.dim + b.dim
    tensor = [[[ZERO] * dim for _ in range(dim)] for _ in range(dim)]
    for i in range(a.dim):
        for j in range(a.dim):
            for k, v in enumerate(a.c[i][j]):
                tensor[i][j][k] = v
    off = a.dim
    for i in range(b.dim):
        for j in range(b.dim):
            for k, v in enumerate(b.c[i][j]):
                tensor[off + i][off + j][off + k] = v
    return Algebra(
        name or f"{a.name}(+){b.name}",
        names,
        tensor,
        anticommutative=a.anticommutative and b.anticommutative,
    )


def find_unit(a: Algebra) -> Optional[Element]:
    """Two-sided unit if one exists: solve the left-unit system, verify both sides."""
    if a.dim == 0:
        return None
    rows = []
    rhs = []
    for j in range(a.dim):
        for m in range(a.dim):
            rows.append([a.c[i][j][m] for i in range(a.dim)])
            rhs.append(Fraction(1) if j == m else ZERO)
    sol = solve(Matrix(rows, cols=a.dim), rhs)
    if sol is None:
        return None
    unit = a.element(sol)
    for b in a.basis_elements():
        if unit * b != b or b * unit != b:
            return None
    return unit


def annihilator_kernel(a: Algebra, elements: Sequence[Element]) -> Subspace:
    """Common kernel of right multiplication by the given elements."""
    mats = [a.right_mult_by(x) for x in elements]
    if not mats:
        return Subspace.full(a.dim)
    return kernel(Matrix.vstack(mats))
