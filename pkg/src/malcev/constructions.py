"""Forward constructions: trace-zero matrix algebras over a commutative base,
the extension of the Lie part by a paired non-Lie part, the 5- and 7-dimensional
tabled algebras, the odd-block matrix models with and without a scaling
parameter, and the determinant/Pluecker machinery.

Block ordering is fixed and relied on by the isomorphism module:
  sl2-type carriers:    E*b0..E*bK, H*b0.., F*b0..
  extension carriers:   sl2 blocks, then u0*b(1).., u1*b(1).., then the (2) blocks
  matrix-model carriers: sl2 blocks, then v11*b.., v12*b.., v21*b.., v22*b..
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .core import Algebra, Element, load_algebra
from .errors import PairingError, ScalarAlgebraError
from .linalg import ZERO, rational_str, to_fraction
from .sl2 import SL2_PRODUCT, PairingForm

_SL2_NAMES = ("E", "H", "F")


@dataclass(frozen=True)
class CommutativeScalarAlgebra:
    """Commutative associative unital algebra, verified at construction."""

    algebra: Algebra
    unit: Element

    @property
    def dim(self) -> int:
        return self.algebra.dim


def verify_scalar_algebra(a: Algebra, unit: Element) -> CommutativeScalarAlgebra:
    """Scan commutativity on pairs, associativity on triples and the unit on the
    basis; the raised error names the failing axiom and witness tuple."""
    a._own(unit)
    names = a.basis_names
    basis = a.basis_elements()
    for i in range(a.dim):
        for j in range(i + 1, a.dim):
            if a.c[i][j] != a.c[j][i]:
                raise ScalarAlgebraError(f"commutativity fails at ({names[i]}, {names[j]})")
    for i, bi in enumerate(basis):
        for j, bj in enumerate(basis):
            left = bi * bj
            for k, bk in enumerate(basis):
                if left * bk != bi * (bj * bk):
                    raise ScalarAlgebraError(
                        f"associativity fails at ({names[i]}, {names[j]}, {names[k]})"
                    )
    for i, bi in enumerate(basis):
        if unit * bi != bi or bi * unit != bi:
            raise ScalarAlgebraError(f"unit fails at ({names[i]},)")
    return CommutativeScalarAlgebra(a, unit)


def rational_scalars() -> CommutativeScalarAlgebra:
    a = Algebra("Q", ("1",), (((Fraction(1),),),))
    return CommutativeScalarAlgebra(a, a.basis_element(0))


def dual_number_scalars() -> CommutativeScalarAlgebra:
    """Q[t]/(t^2)."""
    a = load_algebra(
        {
            "name": "Q[t]/(t^2)",
            "dim": 2,
            "basis": ["1", "t"],
            "anticommutative": False,
            "products": [
                {"left": "1", "right": "1", "result": {"1": "1"}},
                {"left": "1", "right": "t", "result": {"t": "1"}},
                {"left": "t", "right": "1", "result": {"t": "1"}},
            ],
        }
    )
    return CommutativeScalarAlgebra(a, a.basis_element(0))


def pair_scalars() -> CommutativeScalarAlgebra:
    """Q x Q on the idempotent basis."""
    a = load_algebra(
        {
            "name": "QxQ",
            "dim": 2,
            "basis": ["e1", "e2"],
            "anticommutative": False,
            "products": [
                {"left": "e1", "right": "e1", "result": {"e1": "1"}},
                {"left": "e2", "right": "e2", "result": {"e2": "1"}},
            ],
        }
    )
    return CommutativeScalarAlgebra(a, a.element((Fraction(1), Fraction(1))))


# -------------------------------------------------------------------- sl2 of B

def sl2_of(b: CommutativeScalarAlgebra) -> Algebra:
    """Trace-zero 2x2 matrices over the base: (X ⊗ β)(Y ⊗ γ) = XY ⊗ βγ."""
    base = b.algebra
    k = base.dim
    dim = 3 * k
    names = [f"{x}*{bn}" for x in _SL2_NAMES for bn in base.basis_names]
    tensor = [[[ZERO] * dim for _ in range(dim)] for _ in range(dim)]
    for xi in range(3):
        for i in range(k):
            for yi in range(3):
                for j in range(k):
                    bprod = base.c[i][j]
                    cell = tensor[xi * k + i][yi * k + j]
                    for zi, coeff in enumerate(SL2_PRODUCT[(xi, yi)]):
                        if coeff:
                            for m, v in enumerate(bprod):
                                if v:
                                    cell[zi * k + m] += coeff * v
    return Algebra(f"sl2({base.name})", names, tensor, anticommutative=True)


# ---------------------------------------------------------------- the extension

def _check_cyclic_relation(b: CommutativeScalarAlgebra, pairing: PairingForm):
    """w<u,v> + u<v,w> + v<w,u> = 0 on a free module: for generator triples the
    equation lives slot by slot."""
    r = pairing.v_rank
    zero = b.algebra.zero()
    for i in range(r):
        for j in range(r):
            for k in range(r):
                slots = [zero] * r
                slots[k] = slots[k] + pairing.entries[i][j]
                slots[i] = slots[i] + pairing.entries[j][k]
                slots[j] = slots[j] + pairing.entries[k][i]
                if any(not s.is_zero() for s in slots):
                    raise PairingError(
                        f"cyclic pairing relation fails on generators ({i},{j},{k}); refusing to build"
                    )


def build_extension(b: CommutativeScalarAlgebra, pairing: PairingForm) -> Algebra:
    """Algebra on sl2(B) + V(1) + V(2) for the free module V = B^r.

    Lie bracket on the sl2 block, weight rules for the mixed blocks, and the
    pairing block (1)(1) -> F<.,.>, (1)(2) and (2)(1) -> H<.,.>/2,
    (2)(2) -> E<.,.>. The pairing must be skew (enforced by PairingForm) and
    satisfy the cyclic relation above, else the build is refused.
    """
    base = b.algebra
    if pairing.algebra != base:
        raise PairingError("pairing entries live in a different scalar algebra")
    _check_cyclic_relation(b, pairing)
    r = pairing.v_rank
    k = base.dim
    dim = 3 * k + 2 * r * k
    names = [f"{x}*{bn}" for x in _SL2_NAMES for bn in base.basis_names]
    for part in (1, 2):
        names += [f"u{a}*{bn}({part})" for a in range(r) for bn in base.basis_names]

    def sl2_index(xi, i):
        return xi * k + i

    def v_index(part, a, i):
        return 3 * k + (part - 1) * r * k + a * k + i

    tensor = [[[ZERO] * dim for _ in range(dim)] for _ in range(dim)]

    def add_sl2(cell, coeffs_ehf, scalar: Element):
        for zi, coeff in enumerate(coeffs_ehf):
            if coeff:
                for m, v in enumerate(scalar.coords):
                    if v:
                        cell[sl2_index(zi, m)] += coeff * v

    def add_v(cell, part, a, scalar_coords, sign=1):
        for m, v in enumerate(scalar_coords):
            if v:
                cell[v_index(part, a, m)] += sign * v

    # V x sl2 weight rules: (part, acting sl2 index) -> (target part, sign)
    weight_rules = {
        (1, 0): (2, 1),    # w(1)E = w(2)
        (1, 1): (1, 1),    # w(1)H = w(1)
        (2, 1): (2, -1),   # w(2)H = -w(2)
        (2, 2): (1, -1),   # w(2)F = -w(1)
    }
    for i in range(k):
        for j in range(k):
            bprod = base.c[i][j]
            # sl2 x sl2
            for xi in range(3):
                for yi in range(3):
                    add_sl2(
                        tensor[sl2_index(xi, i)][sl2_index(yi, j)],
                        SL2_PRODUCT[(xi, yi)],
                        base.element(bprod),
                    )
            for a in range(r):
                # V x sl2 by the weight rules, sl2 x V as the negative
                for (part, yi), (tgt, sign) in weight_rules.items():
                    add_v(tensor[v_index(part, a, i)][sl2_index(yi, j)], tgt, a, bprod, sign)
                    add_v(tensor[sl2_index(yi, j)][v_index(part, a, i)], tgt, a, bprod, -sign)
            # V x V through the pairing
            for a in range(r):
                for c in range(r):
                    value = pairing.entries[a][c] * base.element(bprod)
                    if value.is_zero():
                        continue
                    add_sl2(tensor[v_index(1, a, i)][v_index(1, c, j)], (0, 0, 1), value)
                    add_sl2(tensor[v_index(1, a, i)][v_index(2, c, j)], (0, Fraction(1, 2), 0), value)
                    add_sl2(tensor[v_index(2, a, i)][v_index(1, c, j)], (0, Fraction(1, 2), 0), value)
                    add_sl2(tensor[v_index(2, a, i)][v_index(2, c, j)], (1, 0, 0), value)
    return Algebra(
        f"ext({base.name},rank{r})", names, tensor, anticommutative=True
    )


def det_pairing(b: CommutativeScalarAlgebra, alpha: Optional[Element] = None) -> PairingForm:
    """Rank-2 pairing <(1,0),(0,1)> = -4*alpha (alpha defaults to the unit)."""
    alpha = b.unit if alpha is None else alpha
    b.algebra._own(alpha)
    zero = b.algebra.zero()
    top = (-4) * alpha
    return PairingForm(b.algebra, ((zero, top), (-top, zero)))


# ------------------------------------------------- matrix models of the 7K case

def symplectic_star(m):
    """((a,b),(c,d)) -> ((d,-b),(-c,a)) on any 2x2 grid with negation."""
    (a, bb), (c, d) = m
    return ((d, -bb), (-c, a))


def _mat_mul(base: Algebra, m, n):
    return tuple(
        tuple(
            base.multiply(m[r][0], n[0][c]) + base.multiply(m[r][1], n[1][c])
            for c in range(2)
        )
        for r in range(2)
    )


def _mat_sub(m, n):
    return tuple(tuple(m[r][c] - n[r][c] for c in range(2)) for r in range(2))


def _sl2_matrix(base: Algebra, xi: int, beta: Element):
    zero = base.zero()
    half = beta / 2
    if xi == 0:                       # E
        return ((zero, zero), (half, zero))
    if xi == 1:                       # H
        return ((half, zero), (zero, -half))
    return ((zero, -half), (zero, zero))  # F


def _unit_matrix(base: Algebra, rc: int, beta: Element):
    zero = base.zero()
    grid = [[zero, zero], [zero, zero]]
    grid[rc // 2][rc % 2] = beta
    return tuple(tuple(row) for row in grid)


def _sl2_coords(base: Algebra, m, dest, k, sign=1):
    # traceless matrix -> coefficients on the E, H, F blocks
    if not (m[0][0] + m[1][1]).is_zero():
        raise ScalarAlgebraError("internal: expected a trace-zero matrix")
    for zi, value in enumerate((2 * m[1][0], 2 * m[0][0], (-2) * m[0][1])):
        for i, v in enumerate(value.coords):
            if v:
                dest[zi * k + i] += sign * v


def _v_coords(m, dest, k, offset, sign=1):
    for rc in range(4):
        value = m[rc // 2][rc % 2]
        for i, v in enumerate(value.coords):
            if v:
                dest[offset + rc * k + i] += sign * v


def _matrix_model(b: CommutativeScalarAlgebra, alpha: Optional[Element], name: str) -> Algebra:
    """Shared builder for the 7K-dimensional matrix models: carrier
    sl2(B) + v M2(B) with A.B = AB - BA, A.vB = v(A*B - AB) and
    vA.vB = BA* - AB*, the last block scaled by alpha when given."""
    base = b.algebra
    k = base.dim
    dim = 7 * k
    voff = 3 * k
    names = [f"{x}*{bn}" for x in _SL2_NAMES for bn in base.basis_names]
    names += [f"v{rc}*{bn}" for rc in ("11", "12", "21", "22") for bn in base.basis_names]
    sl2_basis = [
        (xi, i, _sl2_matrix(base, xi, base.basis_element(i)))
        for xi in range(3)
        for i in range(k)
    ]
    v_basis = [
        (rc, i, _unit_matrix(base, rc, base.basis_element(i)))
        for rc in range(4)
        for i in range(k)
    ]
    tensor = [[[ZERO] * dim for _ in range(dim)] for _ in range(dim)]

    def scale(m):
        if alpha is None:
            return m
        return tuple(tuple(base.multiply(alpha, x) for x in row) for row in m)

    for xi, i, am in sl2_basis:
        row = xi * k + i
        for yi, j, bm in sl2_basis:
            col = yi * k + j
            _sl2_coords(base, _mat_sub(_mat_mul(base, am, bm), _mat_mul(base, bm, am)),
                        tensor[row][col], k)
        astar = symplectic_star(am)
        for rc, j, bm in v_basis:
            col = voff + rc * k + j
            prod = _mat_sub(_mat_mul(base, astar, bm), _mat_mul(base, am, bm))
            _v_coords(prod, tensor[row][col], k, voff)
            _v_coords(prod, tensor[col][row], k, voff, sign=-1)
    for rc, i, am in v_basis:
        row = voff + rc * k + i
        astar = symplectic_star(am)
        for rc2, j, bm in v_basis:
            col = voff + rc2 * k + j
            prod = _mat_sub(_mat_mul(base, bm, astar), _mat_mul(base, am, symplectic_star(bm)))
            _sl2_coords(base, scale(prod), tensor[row][col], k)
    return Algebra(name, names, tensor, anticommutative=True)


def m7_of(b: CommutativeScalarAlgebra) -> Algebra:
    """The exceptional 7K-dimensional algebra over the base, odd block unscaled."""
    return _matrix_model(b, None, f"M7({b.algebra.name})")


def m_tilde(b: CommutativeScalarAlgebra, alpha: Element) -> Algebra:
    """One-parameter version of m7_of: the odd-times-odd block is scaled by alpha."""
    b.algebra._own(alpha)
    return _matrix_model(b, alpha, f"Mtilde({b.algebra.name},{alpha!r})")


# --------------------------------------------------------------- tabled algebras

def m5_document() -> dict:
    return {
        "name": "M5",
        "dim": 5,
        "basis": ["E", "F", "H", "u(1)", "u(2)"],
        "anticommutative": True,
        "products": [
            {"left": "E", "right": "F", "result": {"H": "1/2"}},
            {"left": "E", "right": "H", "result": {"E": "1"}},
            {"left": "E", "right": "u(1)", "result": {"u(2)": "-1"}},
            {"left": "F", "right": "H", "result": {"F": "-1"}},
            {"left": "F", "right": "u(2)", "result": {"u(1)": "1"}},
            {"left": "H", "right": "u(1)", "result": {"u(1)": "-1"}},
            {"left": "H", "right": "u(2)", "result": {"u(2)": "1"}},
        ],
    }


def m5() -> Algebra:
    """The non-Lie 5-dimensional table on basis E, F, H, u(1), u(2)."""
    return load_algebra(m5_document())


def m7_scalar_document(lam) -> dict:
    lam = to_fraction(lam)
    half = rational_str(lam / 2)
    products = [
        {"left": "E", "right": "F", "result": {"H": "1/2"}},
        {"left": "E", "right": "H", "result": {"E": "1"}},
        {"left": "E", "right": "u(1)", "result": {"u(2)": "-1"}},
        {"left": "E", "right": "v(1)", "result": {"v(2)": "-1"}},
        {"left": "F", "right": "H", "result": {"F": "-1"}},
        {"left": "F", "right": "u(2)", "result": {"u(1)": "1"}},
        {"left": "F", "right": "v(2)", "result": {"v(1)": "1"}},
        {"left": "H", "right": "u(1)", "result": {"u(1)": "-1"}},
        {"left": "H", "right": "u(2)", "result": {"u(2)": "1"}},
        {"left": "H", "right": "v(1)", "result": {"v(1)": "-1"}},
        {"left": "H", "right": "v(2)", "result": {"v(2)": "1"}},
    ]
    if lam:
        products += [
            {"left": "u(1)", "right": "v(1)", "result": {"F": rational_str(lam)}},
            {"left": "u(1)", "right": "v(2)", "result": {"H": half}},
            {"left": "u(2)", "right": "v(1)", "result": {"H": half}},
            {"left": "u(2)", "right": "v(2)", "result": {"E": rational_str(lam)}},
        ]
    return {
        "name": f"M7({rational_str(lam)})",
        "dim": 7,
        "basis": ["E", "F", "H", "u(1)", "u(2)", "v(1)", "v(2)"],
        "anticommutative": True,
        "products": products,
    }


def m7_scalar(lam) -> Algebra:
    """The 7-dimensional table with scalar pairing <u,v> = lam."""
    return load_algebra(m7_scalar_document(lam))


# ------------------------------------------------------------------- polynomials

class SparsePoly:
    """Multivariate polynomial over the rationals: exponent tuple -> coefficient,
    zero coefficients never stored, graded-lex canonical term order."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Optional[dict] = None):
        clean = {}
        for exp, coeff in (terms or {}).items():
            coeff = to_fraction(coeff)
            if not coeff:
                continue
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars or any(e < 0 for e in exp):
                raise ValueError("bad exponent vector")
            clean[exp] = coeff
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("SparsePoly is immutable")

    @classmethod
    def zero(cls, nvars: int) -> "SparsePoly":
        return cls(nvars)

    @classmethod
    def constant(cls, nvars: int, value) -> "SparsePoly":
        return cls(nvars, {(0,) * nvars: value})

    @classmethod
    def variable(cls, nvars: int, index: int) -> "SparsePoly":
        exp = [0] * nvars
        exp[index] = 1
        return cls(nvars, {tuple(exp): 1})

    def _like(self, other: "SparsePoly"):
        if not isinstance(other, SparsePoly) or other.nvars != self.nvars:
            raise ValueError("polynomials over different variable sets")

    def __add__(self, other: "SparsePoly") -> "SparsePoly":
        self._like(other)
        terms = dict(self.terms)
        for exp, coeff in other.terms.items():
            terms[exp] = terms.get(exp, ZERO) + coeff
        return SparsePoly(self.nvars, terms)

    def __neg__(self) -> "SparsePoly":
        return SparsePoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "SparsePoly") -> "SparsePoly":
        return self + (-other)

    def __mul__(self, other: "SparsePoly") -> "SparsePoly":
        self._like(other)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                terms[exp] = terms.get(exp, ZERO) + c1 * c2
        return SparsePoly(self.nvars, terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, SparsePoly)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def terms_sorted(self):
        return sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]), reverse=True)

    def evaluate(self, values: Sequence) -> Fraction:
        total = ZERO
        for exp, coeff in self.terms.items():
            term = coeff
            for v, e in zip(values, exp):
                term *= to_fraction(v) ** e
            total += term
        return total

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for exp, coeff in self.terms_sorted():
            mono = "*".join(
                f"x{i}" if e == 1 else f"x{i}^{e}" for i, e in enumerate(exp) if e
            )
            parts.append(f"{rational_str(coeff)}{'*' + mono if mono else ''}")
        return " + ".join(parts)


# ------------------------------------------------------------------- Pluecker

def plucker_check(entries, identity: str = "plucker"):
    """Skewness and the three-term relation
    e[i][j]e[k][l] + e[i][k]e[l][j] + e[i][l]e[j][k] = 0 over all index
    quadruples. Entries may be scalar-algebra elements or sparse polynomials;
    anything with +, *, unary - and is_zero works.
    """
    from .identities import IdentityReport  # local import avoids a cycle

    grid = [list(row) for row in entries]
    n = len(grid)
    if any(len(row) != n for row in grid):
        raise ValueError("grid must be square")
    checked = 0
    for i in range(n):
        for j in range(i, n):
            checked += 1
            residual = grid[i][j] + grid[j][i] if i != j else grid[i][i]
            if not residual.is_zero():
                return IdentityReport(identity, False, (i, j), residual, checked)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    checked += 1
                    residual = (
                        grid[i][j] * grid[k][l]
                        + grid[i][k] * grid[l][j]
                        + grid[i][l] * grid[j][k]
                    )
                    if not residual.is_zero():
                        return IdentityReport(identity, False, (i, j, k, l), residual, checked)
    return IdentityReport(identity, True, None, None, checked)


def det_plucker_generators(n: int):
    """Check the relations on the 2x2 determinants a_ij = x_i y_j - x_j y_i
    inside the polynomial ring on x_1..x_n, y_1..y_n."""
    if n < 2:
        raise ValueError("need at least two columns")
    nvars = 2 * n
    xs = [SparsePoly.variable(nvars, i) for i in range(n)]
    ys = [SparsePoly.variable(nvars, n + i) for i in range(n)]
    grid = [[xs[i] * ys[j] - xs[j] * ys[i] for j in range(n)] for i in range(n)]
    return plucker_check(grid, identity="plucker")
