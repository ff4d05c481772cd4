"""Verified sl2 triples, the annihilator/Lie/non-Lie decomposition, weight
splitting, coordinatization of the Lie part and extraction of the skew pairing.

Conventions fixed here and relied on everywhere else:
  * the defining relations are E*H = E, F*H = -F, E*F = H/2;
  * right multiplications R_E and -R_F are mutually inverse between the +1 and
    -1 weight spaces of the non-Lie part;
  * a scalar alpha recovered on the +1 weight space W1 of the Lie part is
    represented by E*alpha, with conversions F*alpha = 2 R_F^2(E*alpha),
    H*alpha = 2 R_F(E*alpha) and product E*(alpha beta) = -2 R_E((E*alpha)(F*beta)).
    Applied to alpha = 1 inside sl2 itself these follow from E*F = H/2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .core import Algebra, Element, ModuleAction, load_algebra
from .errors import (
    CoordinatizationError,
    DecompositionError,
    EmbeddingError,
    PairingError,
)
from .linalg import Matrix, Subspace, ZERO, kernel


@lru_cache(maxsize=1)
def sl2_algebra() -> Algebra:
    """The 3-dimensional simple Lie algebra on basis (E, H, F). Cached so the
    zero-argument module constructors below all act on the same instance."""
    return load_algebra(
        {
            "name": "sl2",
            "dim": 3,
            "basis": ["E", "H", "F"],
            "anticommutative": True,
            "products": [
                {"left": "E", "right": "H", "result": {"E": "1"}},
                {"left": "E", "right": "F", "result": {"H": "1/2"}},
                {"left": "H", "right": "F", "result": {"F": "1"}},
            ],
        }
    )


@dataclass(frozen=True)
class Sl2Embedding:
    algebra: Algebra
    e: Element
    h: Element
    f: Element

    def elements(self) -> tuple[Element, Element, Element]:
        return (self.e, self.h, self.f)


def verify_sl2(a: Algebra, e: Element, h: Element, f: Element) -> Sl2Embedding:
    """Accept the triple iff E*H = E, F*H = -F, E*F = H/2 hold exactly and the
    three elements are linearly independent."""
    for x in (e, h, f):
        a._own(x)
    relations = (
        ("E*H = E", e * h - e),
        ("F*H = -F", f * h + f),
        ("E*F = H/2", e * f - h / 2),
    )
    for label, residual in relations:
        if not residual.is_zero():
            raise EmbeddingError(f"relation {label} fails, residual {residual!r}")
    span = Subspace(a.dim, [e.coords, h.coords, f.coords])
    if span.dim != 3:
        raise EmbeddingError("E, H, F are not linearly independent")
    return Sl2Embedding(a, e, h, f)


# --------------------------------------------------------------- module parts

def _j_kernel_map(a: Algebra, x: Element, y: Element) -> Matrix:
    # m -> J(m,x,y) = (mx)y + (xy)m + (ym)x = (R_y R_x - R_x R_y - R_{xy}) m
    rx, ry = a.right_mult_by(x), a.right_mult_by(y)
    return ry * rx - rx * ry - a.right_mult_by(x * y)

def _brace_kernel_map(a: Algebra, x: Element, y: Element) -> Matrix:
    # m -> {m,x,y} = (mx)y - (my)x + 2m(xy) = (R_y R_x - R_x R_y + 2 R_{xy}) m
    rx, ry = a.right_mult_by(x), a.right_mult_by(y)
    return ry * rx - rx * ry + a.right_mult_by(x * y).scale(2)


def annihilator(a: Algebra, emb: Sl2Embedding) -> Subspace:
    """{m : m*E = m*H = m*F = 0}."""
    mats = [a.right_mult_by(x) for x in emb.elements()]
    return kernel(Matrix.vstack(mats))


def n_part(a: Algebra, emb: Sl2Embedding) -> Subspace:
    """Common kernel of m -> J(m, x, y) over the embedding pairs. J is skew in
    (x,y), so the three unordered pairs suffice."""
    e, h, f = emb.elements()
    mats = [_j_kernel_map(a, x, y) for x, y in ((e, h), (e, f), (h, f))]
    return kernel(Matrix.vstack(mats))


def j_part(a: Algebra, emb: Sl2Embedding) -> Subspace:
    """Common kernel of m -> {m, x, y} over the embedding pairs."""
    e, h, f = emb.elements()
    mats = [_brace_kernel_map(a, x, y) for x, y in ((e, h), (e, f), (h, f))]
    return kernel(Matrix.vstack(mats))


@dataclass(frozen=True)
class Decomposition:
    algebra: Algebra
    embedding: Sl2Embedding
    ann: Subspace
    n_part: Subspace
    j_part: Subspace
    v1: Subspace
    v2: Subspace

    def dims(self) -> tuple[int, int, int]:
        return (self.ann.dim, self.n_part.dim, self.j_part.dim)

    def to_dict(self) -> dict:
        return {
            "dims": {"ann": self.ann.dim, "n_part": self.n_part.dim, "j_part": self.j_part.dim},
            "ann": self.ann.to_rows(),
            "n_part": self.n_part.to_rows(),
            "j_part": self.j_part.to_rows(),
            "v1": self.v1.to_rows(),
            "v2": self.v2.to_rows(),
        }


def decompose(a: Algebra, emb: Sl2Embedding) -> Decomposition:
    """Split the algebra into annihilator, Lie and non-Lie parts with the
    weight splitting of the non-Lie part.

    The raw kernels returned by n_part/j_part both contain the annihilator, so
    the stored parts are the reduced ones, cut down by the image M*L. Expects
    an input satisfying the five-variable h identity; when it does not, the
    direct sum can fail and that defect is reported instead of proceeding.
    """
    e, h, f = emb.elements()
    ann = annihilator(a, emb)
    image = Subspace(a.dim, [(m * x).coords for m in a.basis_elements() for x in (e, h, f)])
    nbar = image.intersection(n_part(a, emb))
    jbar = image.intersection(j_part(a, emb))
    if (
        ann.dim + nbar.dim + jbar.dim != a.dim
        or ann.intersection(nbar).dim
        or ann.intersection(jbar).dim
        or nbar.intersection(jbar).dim
    ):
        raise DecompositionError(
            f"annihilator/Lie/non-Lie parts do not split the algebra "
            f"(dims {ann.dim}/{nbar.dim}/{jbar.dim} in dimension {a.dim}); "
            "the input fails the five-variable identity or the embedding is degenerate"
        )
    rh = a.right_mult_by(h)
    ident = Matrix.identity(a.dim)
    v1 = jbar.intersection(kernel(rh - ident))
    v2 = jbar.intersection(kernel(rh + ident))
    if v1.dim + v2.dim != jbar.dim or v1.intersection(v2).dim:
        raise DecompositionError("eigenspace defect in j_part: +1/-1 weights do not split it")
    for row in v1.basis.entries:
        w = a.element(row)
        we = w * emb.e
        if not v2.contains(we.coords) or -(we * emb.f) != w:
            raise DecompositionError("R_E does not map v1 into v2 with inverse -R_F")
    for row in v2.basis.entries:
        w = a.element(row)
        wf = -(w * emb.f)
        if not v1.contains(wf.coords) or wf * emb.e != w:
            raise DecompositionError("-R_F does not map v2 into v1 with inverse R_E")
    return Decomposition(a, emb, ann, nbar, jbar, v1, v2)


# ------------------------------------------------------------ coordinatization

SL2_PRODUCT = {
    # products of (E, H, F) basis pairs, coefficients over the (E, H, F) order
    (0, 0): (0, 0, 0), (0, 1): (1, 0, 0), (0, 2): (0, Fraction(1, 2), 0),
    (1, 0): (-1, 0, 0), (1, 1): (0, 0, 0), (1, 2): (0, 0, 1),
    (2, 0): (0, Fraction(-1, 2), 0), (2, 1): (0, 0, -1), (2, 2): (0, 0, 0),
}


@dataclass(frozen=True)
class CoordAlgebra:
    """Recovered commutative scalar algebra U on the +1 weight space of the Lie
    part, with the representatives needed to move between U and the ambient
    algebra."""

    algebra: Algebra
    embedding: Sl2Embedding
    rep_basis: Subspace
    rep_elements: tuple
    f_reps: tuple
    u_algebra: Algebra
    unit_coords: Element

    def e_rep(self, u: Element) -> Element:
        """Ambient representative E*u of a U-element."""
        out = self.algebra.zero()
        for coeff, w in zip(u.coords, self.rep_elements):
            if coeff:
                out = out + coeff * w
        return out

    def h_rep(self, u: Element) -> Element:
        return 2 * (self.e_rep(u) * self.embedding.f)

    def f_rep(self, u: Element) -> Element:
        return 2 * (self.e_rep(u) * self.embedding.f) * self.embedding.f

    def from_ambient(self, w: Element) -> Optional[Element]:
        coords = self.rep_basis.coordinates(w.coords)
        return None if coords is None else self.u_algebra.element(coords)


def coordinatize(a: Algebra, emb: Sl2Embedding, dec: Decomposition) -> CoordAlgebra:
    """Recover U with the Lie part isomorphic to trace-zero 2x2 matrices over U.

    Every recovered constant is validated: products must stay in the weight
    space, the recovered table must be commutative, associative and unital, and
    the reassembly map must be multiplicative and bijective onto the Lie part.
    """
    e, h, f = emb.elements()
    rh = a.right_mult_by(h)
    w1 = dec.n_part.intersection(kernel(rh - Matrix.identity(a.dim)))
    w_elems = tuple(a.element(row) for row in w1.basis.entries)
    k = len(w_elems)
    f_reps = tuple(2 * ((w * f) * f) for w in w_elems)

    names = [f"u{i}" for i in range(k)]
    tensor = [[None] * k for _ in range(k)]
    for i, wi in enumerate(w_elems):
        for j in range(k):
            prod = wi * f_reps[j]
            gamma = -2 * (prod * e)
            coords = w1.coordinates(gamma.coords)
            if coords is None:
                raise CoordinatizationError(
                    f"product of weight representatives {i},{j} escapes the +1 weight space"
                )
            if (gamma * f) != prod:
                raise CoordinatizationError(
                    f"round trip through the weight conversions fails at pair {i},{j}"
                )
            tensor[i][j] = coords
    u_alg = Algebra(f"U({a.name})", names, tensor)

    unit_coords = w1.coordinates(e.coords)
    if unit_coords is None:
        raise CoordinatizationError("E does not lie in the +1 weight space of the Lie part")
    unit = u_alg.element(unit_coords)

    for i in range(k):
        for j in range(k):
            if u_alg.c[i][j] != u_alg.c[j][i]:
                raise CoordinatizationError(f"recovered product is not commutative at ({i},{j})")
    basis_u = u_alg.basis_elements()
    for bi in basis_u:
        if unit * bi != bi or bi * unit != bi:
            raise CoordinatizationError("recovered unit does not act as identity")
        for bj in basis_u:
            for bk in basis_u:
                if (bi * bj) * bk != bi * (bj * bk):
                    raise CoordinatizationError("recovered product is not associative")

    coord = CoordAlgebra(a, emb, w1, w_elems, f_reps, u_alg, unit)

    # reassembly: X tensor u_i -> ambient, must be multiplicative and span the Lie part
    def phi(xi: int, u: Element) -> Element:
        if xi == 0:
            return coord.e_rep(u)
        if xi == 1:
            return coord.h_rep(u)
        return coord.f_rep(u)

    images = []
    for xi in range(3):
        for bu in basis_u:
            images.append(phi(xi, bu).coords)
    span = Subspace(a.dim, images)
    if span.dim != 3 * k or span != dec.n_part:
        raise CoordinatizationError("reassembled copies do not span the Lie part")
    for xi in range(3):
        for i, bi in enumerate(basis_u):
            for yi in range(3):
                for j, bj in enumerate(basis_u):
                    uprod = bi * bj
                    expected = a.zero()
                    for zi, coeff in enumerate(SL2_PRODUCT[(xi, yi)]):
                        if coeff:
                            expected = expected + coeff * phi(zi, uprod)
                    if phi(xi, bi) * phi(yi, bj) != expected:
                        raise CoordinatizationError(
                            "reassembly map is not multiplicative on basis pairs"
                        )
    return coord


# ----------------------------------------------------------- pairing extraction

@dataclass(frozen=True)
class PairingForm:
    """Skew pairing grid with entries in a commutative scalar algebra."""

    algebra: Algebra
    entries: tuple

    def __post_init__(self):
        rank = len(self.entries)
        for row in self.entries:
            if len(row) != rank:
                raise PairingError("pairing grid must be square")
            for value in row:
                self.algebra._own(value)
        for i in range(rank):
            if not self.entries[i][i].is_zero():
                raise PairingError(f"pairing diagonal entry {i} is nonzero")
            for j in range(i + 1, rank):
                if self.entries[i][j] != -self.entries[j][i]:
                    raise PairingError(f"pairing is not skew at ({i},{j})")

    @property
    def v_rank(self) -> int:
        return len(self.entries)

    def evaluate(self, u_coords, v_coords) -> Element:
        """Bilinear evaluation; coefficients may be rationals (acting by
        scaling) or elements of the scalar algebra (acting by its product)."""
        if len(u_coords) != self.v_rank or len(v_coords) != self.v_rank:
            raise PairingError("coefficient vectors must match the pairing rank")
        out = self.algebra.zero()
        for i, ui in enumerate(u_coords):
            for j, vj in enumerate(v_coords):
                entry = self.entries[i][j]
                if isinstance(ui, Element):
                    entry = ui * entry
                elif ui:
                    entry = ui * entry
                else:
                    continue
                if isinstance(vj, Element):
                    entry = vj * entry
                elif vj:
                    entry = vj * entry
                else:
                    continue
                out = out + entry
        return out

    def to_dict(self) -> dict:
        return {
            "rank": self.v_rank,
            "entries": [[v.coords_dict() for v in row] for row in self.entries],
        }


def zero_pairing(algebra: Algebra, rank: int) -> PairingForm:
    zero = algebra.zero()
    return PairingForm(algebra, tuple(tuple(zero for _ in range(rank)) for _ in range(rank)))


def extract_pairing(
    a: Algebra, emb: Sl2Embedding, dec: Decomposition, coord: CoordAlgebra
) -> PairingForm:
    """Read the U-valued skew pairing off products inside the +1 weight part of
    the non-Lie component: w*w' must be F-weighted, its U-representative is
    2 R_E^2 (w*w'), and converting it back must reproduce w*w' exactly."""
    e, h, f = emb.elements()
    rh = a.right_mult_by(h)
    wm1 = dec.n_part.intersection(kernel(rh + Matrix.identity(a.dim)))
    w_rows = [a.element(row) for row in dec.v1.basis.entries]
    rank = len(w_rows)
    u_alg = coord.u_algebra
    entries = [[None] * rank for _ in range(rank)]
    for i, wi in enumerate(w_rows):
        for j, wj in enumerate(w_rows):
            prod = wi * wj
            if not wm1.contains(prod.coords):
                raise PairingError(
                    f"product of v1 basis rows {i},{j} escapes the -1 weight space of the Lie part"
                )
            gamma = 2 * ((prod * e) * e)
            coords = coord.rep_basis.coordinates(gamma.coords)
            if coords is None:
                raise PairingError("pairing value has no representative in the weight space")
            if 2 * ((gamma * f) * f) != prod:
                raise PairingError("pairing reconstruction failed to reproduce the product")
            entries[i][j] = u_alg.element(coords)
    form = PairingForm(u_alg, tuple(tuple(row) for row in entries))

    # w<u,v> + u<v,w> + v<w,u> = 0 in V, acting through H-representatives
    def act(w: Element, gamma: Element) -> Element:
        return w * coord.h_rep(gamma)

    for i in range(rank):
        for j in range(rank):
            for k in range(rank):
                total = (
                    act(w_rows[k], entries[i][j])
                    + act(w_rows[i], entries[j][k])
                    + act(w_rows[j], entries[k][i])
                )
                if not total.is_zero():
                    raise PairingError(f"cyclic pairing relation fails at triple ({i},{j},{k})")
    for i in range(rank):
        for j in range(rank):
            for k in range(rank):
                for l in range(rank):
                    total = (
                        entries[i][l] * entries[j][k]
                        + entries[j][l] * entries[k][i]
                        + entries[k][l] * entries[i][j]
                    )
                    if not total.is_zero():
                        raise PairingError(
                            f"quadratic pairing relation fails at ({i},{j},{k},{l})"
                        )
    return form


# ---------------------------------------------------------------- module data

def lm_module(m: int) -> ModuleAction:
    """Irreducible (m+1)-dimensional Lie module over sl2.

    Built first in the (e,f,h) presentation of the table v_i h = (m-2i) v_i,
    v_i f = v_{i+1}, v_i e = ((i-1)i - mi) v_{i-1}. Consistency of that table
    as a right Lie module forces [e,f] = h, [e,h] = 2e, [f,h] = -2f, which
    lands on the (E,H,F) normalization through e = E, f = 4F, h = 2H. The
    Lie check on the split null extension is the gate for this conversion.
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    dim = m + 1
    rho_e = [[ZERO] * dim for _ in range(dim)]
    rho_f = [[ZERO] * dim for _ in range(dim)]
    rho_h = [[ZERO] * dim for _ in range(dim)]
    for i in range(dim):
        rho_h[i][i] = Fraction(m - 2 * i)
        if i < m:
            rho_f[i + 1][i] = Fraction(1)
        if i >= 1:
            rho_e[i - 1][i] = Fraction((i - 1) * i - m * i)
    mat_e = Matrix(rho_e, cols=dim)
    mat_h = Matrix(rho_h, cols=dim).scale(Fraction(1, 2))
    mat_f = Matrix(rho_f, cols=dim).scale(Fraction(1, 4))
    names = tuple(f"v{i}" for i in range(dim))
    return ModuleAction(sl2_algebra(), dim, (mat_e, mat_h, mat_f), names)


def v2_module() -> ModuleAction:
    """The 2-dimensional non-Lie module: uH = u, vH = -v, uE = v, uF = 0,
    vE = 0, vF = -u."""
    mat_e = Matrix([[0, 0], [1, 0]], cols=2)
    mat_h = Matrix([[1, 0], [0, -1]], cols=2)
    mat_f = Matrix([[0, -1], [0, 0]], cols=2)
    return ModuleAction(sl2_algebra(), 2, (mat_e, mat_h, mat_f), ("u", "v"))
