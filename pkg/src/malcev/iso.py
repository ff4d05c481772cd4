"""Explicit morphisms and classification gates: multiplicativity/bijectivity
verification, the identity-plus-row-embedding map between a rank-2 extension
and its matrix model, and the unit-pairing criterion for the exceptional form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .constructions import CommutativeScalarAlgebra
from .core import Algebra, Element, LinearMap, find_unit
from .errors import DimensionError, ScalarAlgebraError
from .identities import IdentityReport
from .linalg import Matrix, ZERO
from .sl2 import PairingForm


@dataclass(frozen=True)
class AlgebraMorphism:
    map: LinearMap

    @property
    def domain(self) -> Algebra:
        return self.map.domain

    @property
    def codomain(self) -> Algebra:
        return self.map.codomain

    def apply(self, x: Element) -> Element:
        return self.map.apply(x)

    def to_dict(self) -> dict:
        from .linalg import rational_str

        return {
            "domain": self.domain.name,
            "codomain": self.codomain.name,
            "matrix": [[rational_str(v) for v in row] for row in self.map.matrix.entries],
        }


def verify_morphism(f) -> IdentityReport:
    """Pass iff f(b_i b_j) = f(b_i) f(b_j) on all basis pairs and the matrix is
    a bijection (square of full rank). A multiplicativity failure reports the
    first failing pair; a pure rank defect reports the empty tuple."""
    m = f.map if isinstance(f, AlgebraMorphism) else f
    domain, codomain = m.domain, m.codomain
    images = [m.apply(b) for b in domain.basis_elements()]
    checked = 0
    for i, bi in enumerate(domain.basis_elements()):
        for j, bj in enumerate(domain.basis_elements()):
            checked += 1
            residual = m.apply(bi * bj) - images[i] * images[j]
            if not residual.is_zero():
                return IdentityReport("morphism", False, (i, j), residual, checked)
    if domain.dim != codomain.dim or m.matrix.rank != domain.dim:
        return IdentityReport("morphism", False, (), None, checked)
    return IdentityReport("morphism", True, None, None, checked)


def phi_map(
    b: CommutativeScalarAlgebra,
    alpha: Element,
    left: Algebra,
    right: Algebra,
) -> AlgebraMorphism:
    """Identity on the sl2(B) block; on the rank-2 module blocks the row
    embeddings (a,b)(1) -> v(a b; 0 0) and (a,b)(2) -> v(0 0; a b).

    left must be the rank-2 extension with the -4*alpha*det pairing and right
    the matrix model with parameter alpha; block orders are the constructors'.
    """
    k = b.algebra.dim
    if left.dim != 7 * k or right.dim != 7 * k:
        raise DimensionError("expected carriers of dimension 7 * dim(base)")
    rows = [[ZERO] * left.dim for _ in range(right.dim)]
    for idx in range(3 * k):
        rows[idx][idx] = Fraction(1)
    voff = 3 * k
    # left V(part) generator a, base index i -> right v-block (row part, column a+1)
    for part in (1, 2):
        for a in range(2):
            for i in range(k):
                left_idx = 3 * k + (part - 1) * 2 * k + a * k + i
                rc = (part - 1) * 2 + a
                rows[voff + rc * k + i][left_idx] = Fraction(1)
    return AlgebraMorphism(LinearMap(left, right, Matrix(rows, cols=left.dim)))


def is_m7_form(p: PairingForm, u_coords, v_coords) -> bool:
    """True iff the pairing evaluated at the two given coefficient vectors is
    the unit of the scalar algebra."""
    unit = find_unit(p.algebra)
    if unit is None:
        raise ScalarAlgebraError("pairing scalar algebra has no unit")
    return p.evaluate(u_coords, v_coords) == unit


def t2_parameter(p: PairingForm) -> Element:
    """The scaling parameter read off a rank-2 pairing: -<(1/2,0),(0,1/2)>."""
    if p.v_rank != 2:
        raise DimensionError("parameter extraction needs a rank-2 pairing")
    half = Fraction(1, 2)
    return -p.evaluate((half, ZERO), (ZERO, half))
