"""The characteristic functions J, {.,.,.}, h, p and the identity checkers.

All checkers reduce a multilinear identity to a scan over basis tuples (sound
once anticommutativity, which is the only non-multilinear part, is enforced
separately). Scans run on the integer tensor engine; the element-level
functions here stay in exact rational arithmetic and are used both directly
and to recompute the defect at a reported failure tuple.

Tuple orders are fixed once per identity and match the variable order of the
written formula: lie (x,y,z); malcev (x,y,z,t); variety_h (y,z,t,x,u);
jacobian_product_rule (t,x,y,z); p_shift (x,y,z,t,u); p_swap (x,y,z,u,t);
alpha_centroid (y,z,t,i,j).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

from ._scan import default_workers, get_engine
from .core import Algebra, Element, LinearMap
from .errors import DimensionError

IDENTITY_ARITIES = {
    "malcev": 4,
    "lie": 3,
    "variety_h": 5,
    "jacobian_product_rule": 4,
    "p_shift": 5,
    "p_swap": 5,
    "alpha_centroid": 5,
}


@dataclass(frozen=True)
class IdentityReport:
    identity: str
    passed: bool
    first_failure: Optional[tuple]
    failure_value: Optional[Element]
    tuples_checked: int

    def to_dict(self) -> dict:
        if self.failure_value is None:
            value = None
        elif hasattr(self.failure_value, "coords_dict"):
            value = self.failure_value.coords_dict()
        else:
            value = str(self.failure_value)
        return {
            "identity": self.identity,
            "passed": self.passed,
            "first_failure": list(self.first_failure) if self.first_failure is not None else None,
            "failure_value": value,
            "tuples_checked": self.tuples_checked,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":")) + "\n"

    def __str__(self):
        status = "pass" if self.passed else "FAIL"
        extra = ""
        if self.first_failure is not None:
            extra = f" first_failure={self.first_failure} value={self.failure_value!r}"
        return f"[{status}] {self.identity} ({self.tuples_checked} tuples){extra}"


# ------------------------------------------------------------------ functions

def jacobian(a: Algebra, x: Element, y: Element, z: Element) -> Element:
    """J(x,y,z) = (xy)z + (yz)x + (zx)y."""
    return (x * y) * z + (y * z) * x + (z * x) * y


def brace(a: Algebra, x: Element, y: Element, z: Element) -> Element:
    """{x,y,z} = xyz - xzy + 2x(yz); equals J(x,y,z) + 3x(yz) when x^2 = 0."""
    value = (x * y) * z - (x * z) * y + 2 * (x * (y * z))
    assert not a.anticommutative or value == jacobian(a, x, y, z) + 3 * (x * (y * z))
    return value


def h_val(a: Algebra, y: Element, z: Element, t: Element, x: Element, u: Element) -> Element:
    """h(y,z,t,x,u) = {yz,t,u}x + {yz,t,x}u + {yx,z,u}t + {yu,z,x}t."""
    return (
        brace(a, y * z, t, u) * x
        + brace(a, y * z, t, x) * u
        + brace(a, y * x, z, u) * t
        + brace(a, y * u, z, x) * t
    )


def p_val(a: Algebra, x: Element, y: Element, z: Element, t: Element) -> Element:
    """p(x,y,z,t) = -{zt,x,y} - {yt,z,x} + {xt,y,z}."""
    return -brace(a, z * t, x, y) - brace(a, y * t, z, x) + brace(a, x * t, y, z)


def alpha_map(a: Algebra, y: Element, z: Element, t: Element) -> LinearMap:
    """The operator x -> p(x,y,z,t), assembled column by column on the basis."""
    columns = [p_val(a, b, y, z, t) for b in a.basis_elements()]
    return LinearMap.from_columns(a, a, columns)


# ------------------------------------------------------------------- checkers

def check_anticommutative(a: Algebra) -> IdentityReport:
    """b_i b_i = 0 and b_i b_j = -b_j b_i, scanning pairs i <= j row-major
    (which is lexicographic order over the pairs a failure can first appear at)."""
    checked = 0
    for i in range(a.dim):
        for j in range(i, a.dim):
            checked += 1
            if i == j:
                residual = a.c[i][i]
            else:
                residual = tuple(p + q for p, q in zip(a.c[i][j], a.c[j][i]))
            if any(residual):
                return IdentityReport(
                    "anticommutative", False, (i, j), a.element(residual), checked
                )
    return IdentityReport("anticommutative", True, None, None, checked)


def _defect_value(a: Algebra, which: str, idx: tuple) -> Element:
    b = [a.basis_element(i) for i in idx]
    if which == "lie":
        return jacobian(a, *b)
    if which == "malcev":
        x, y, z, t = b
        return (
            (x * z) * (y * t)
            - (((x * y) * z) * t)
            - (((y * z) * t) * x)
            - (((z * t) * x) * y)
            - (((t * x) * y) * z)
        )
    if which == "variety_h":
        return h_val(a, *b)
    if which == "jacobian_product_rule":
        t, x, y, z = b
        return (
            jacobian(a, t * x, y, z)
            - t * jacobian(a, x, y, z)
            - jacobian(a, t, y, z) * x
            + 2 * jacobian(a, t, x, y * z)
        )
    if which == "p_shift":
        x, y, z, t, u = b
        return p_val(a, x, y, z, t) * u - p_val(a, x * u, y, z, t)
    if which == "p_swap":
        x, y, z, u, t = b
        return p_val(a, x, y, z, u * t) - p_val(a, x, u, t, y * z)
    if which == "alpha_centroid":
        y, z, t, i, j = b
        alpha = alpha_map(a, y, z, t)
        left = alpha.apply(i * j)
        r1 = left - i * alpha.apply(j)
        if not r1.is_zero():
            return r1
        return left - alpha.apply(i) * j
    raise ValueError(f"unknown identity {which!r}")


def _lex_rank(idx: tuple, n: int) -> int:
    rank = 0
    for v in idx:
        rank = rank * n + v
    return rank


def _scan_report(a: Algebra, which: str, workers: Optional[int]) -> IdentityReport:
    arity = IDENTITY_ARITIES[which]
    failure = get_engine(a).scan(which, workers)
    if failure is None:
        return IdentityReport(which, True, None, None, a.dim**arity)
    value = _defect_value(a, which, failure)
    return IdentityReport(which, False, failure, value, _lex_rank(failure, a.dim) + 1)


def check_identity(a: Algebra, which: str, workers: Optional[int] = None) -> IdentityReport:
    """Scan the Malcev / Jacobi / five-variable h identity over all basis tuples.

    Requires anticommutativity (the identities are only meaningful then); a
    violation is reported as the anticommutativity failure instead.
    """
    if which not in ("malcev", "lie", "variety_h"):
        raise ValueError("which must be one of malcev, lie, variety_h")
    pre = check_anticommutative(a)
    if not pre.passed:
        return pre
    return _scan_report(a, which, workers)


def check_jacobian_product_rule(a: Algebra, workers: Optional[int] = None) -> IdentityReport:
    """J(tx,y,z) = tJ(x,y,z) + J(t,y,z)x - 2J(t,x,yz) over all basis quadruples."""
    return _scan_report(a, "jacobian_product_rule", workers)


def check_p_shift(a: Algebra, workers: Optional[int] = None) -> IdentityReport:
    """p(x,y,z,t)u = p(xu,y,z,t) over all basis 5-tuples."""
    return _scan_report(a, "p_shift", workers)


def check_p_swap(a: Algebra, workers: Optional[int] = None) -> IdentityReport:
    """p(x,y,z,ut) = p(x,u,t,yz) over all basis 5-tuples."""
    return _scan_report(a, "p_swap", workers)


def check_alpha_centroid(a: Algebra, workers: Optional[int] = None) -> IdentityReport:
    """Every operator x -> p(x,y,z,t) commutes with multiplications:
    (ij)a = i(ja) = (ia)j for all basis (y,z,t) and pairs (i,j)."""
    return _scan_report(a, "alpha_centroid", workers)


def check_centroid(a: Algebra, f: LinearMap) -> IdentityReport:
    """Membership of a single map in the centroid: (b_i b_j)f = b_i (b_j f) = (b_i f) b_j."""
    if f.domain != a or f.codomain != a:
        raise DimensionError("centroid check needs a self-map of the algebra")
    basis = a.basis_elements()
    images = [f.apply(b) for b in basis]
    checked = 0
    for i, bi in enumerate(basis):
        for j, bj in enumerate(basis):
            checked += 1
            left = f.apply(bi * bj)
            r1 = left - bi * images[j]
            if not r1.is_zero():
                return IdentityReport("centroid", False, (i, j), r1, checked)
            r2 = left - images[i] * bj
            if not r2.is_zero():
                return IdentityReport("centroid", False, (i, j), r2, checked)
    return IdentityReport("centroid", True, None, None, checked)


__all__ = [
    "IdentityReport",
    "jacobian",
    "brace",
    "h_val",
    "p_val",
    "alpha_map",
    "check_anticommutative",
    "check_identity",
    "check_centroid",
    "check_jacobian_product_rule",
    "check_p_shift",
    "check_p_swap",
    "check_alpha_centroid",
    "default_workers",
]
