"""Shared test oracles.

The helpers here deliberately avoid the library's Algebra/Matrix machinery:
raw_table multiplies coordinate dicts straight off an interchange document,
and bareiss_rank/bareiss_rref run fraction-free elimination on plain lists.
They exist so the fast paths can be checked against independent routes.
"""

from fractions import Fraction

import pytest


class RawTable:
    """Product table read directly from an interchange document; elements are
    {basis_name: Fraction} dicts."""

    def __init__(self, doc):
        self.basis = list(doc["basis"])
        self.table = {}
        for entry in doc.get("products", []):
            cell = {k: Fraction(v) for k, v in entry["result"].items()}
            self.table[(entry["left"], entry["right"])] = cell
            if doc.get("anticommutative"):
                self.table[(entry["right"], entry["left"])] = {
                    k: -v for k, v in cell.items()
                }

    def basis_vec(self, name):
        return {name: Fraction(1)}

    def mult(self, x, y):
        out = {}
        for bx, cx in x.items():
            if not cx:
                continue
            for by, cy in y.items():
                if not cy:
                    continue
                for bz, cz in self.table.get((bx, by), {}).items():
                    out[bz] = out.get(bz, Fraction(0)) + cx * cy * cz
        return {k: v for k, v in out.items() if v}

    def add(self, *xs):
        out = {}
        for x in xs:
            for k, v in x.items():
                out[k] = out.get(k, Fraction(0)) + v
        return {k: v for k, v in out.items() if v}

    def scale(self, s, x):
        s = Fraction(s)
        return {k: s * v for k, v in x.items() if s * v}

    def jacobian(self, x, y, z):
        m = self.mult
        return self.add(m(m(x, y), z), m(m(y, z), x), m(m(z, x), y))

    def brace(self, x, y, z):
        m = self.mult
        return self.add(
            m(m(x, y), z), self.scale(-1, m(m(x, z), y)), self.scale(2, m(x, m(y, z)))
        )

    def h_val(self, y, z, t, x, u):
        m = self.mult
        return self.add(
            m(self.brace(m(y, z), t, u), x),
            m(self.brace(m(y, z), t, x), u),
            m(self.brace(m(y, x), z, u), t),
            m(self.brace(m(y, u), z, x), t),
        )

    def p_val(self, x, y, z, t):
        m = self.mult
        return self.add(
            self.scale(-1, self.brace(m(z, t), x, y)),
            self.scale(-1, self.brace(m(y, t), z, x)),
            self.brace(m(x, t), y, z),
        )


def element_as_dict(el):
    return {el.algebra.basis_names[i]: v for i, v in enumerate(el.coords) if v}


def bareiss_echelon(rows):
    """Fraction-free Gaussian elimination (integer pivots after clearing
    denominators). Returns the echelon rows and the rank."""
    if not rows:
        return [], 0
    work = []
    for row in rows:
        denominators = [Fraction(x).denominator for x in row]
        scale = 1
        for d in denominators:
            scale = scale * d // __import__("math").gcd(scale, d)
        work.append([int(Fraction(x) * scale) for x in row])
    ncols = len(work[0])
    rank = 0
    prev_pivot = 1
    for col in range(ncols):
        pivot_row = None
        for r in range(rank, len(work)):
            if work[r][col]:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        work[rank], work[pivot_row] = work[pivot_row], work[rank]
        piv = work[rank][col]
        # forward pass only: the exact-division recurrence holds below the pivot
        for r in range(rank + 1, len(work)):
            factor = work[r][col]
            work[r] = [
                (piv * work[r][c] - factor * work[rank][c]) // prev_pivot
                for c in range(ncols)
            ]
        prev_pivot = piv
        rank += 1
    return work, rank


def bareiss_rank(rows):
    return bareiss_echelon(rows)[1]


def bareiss_rref(rows, ncols):
    """Canonical RREF computed through the fraction-free route: echelon first,
    then exact normalization; independent of linalg.rref."""
    echelon, rank = bareiss_echelon(rows)
    out = []
    for r in range(rank):
        row = [Fraction(x) for x in echelon[r]]
        lead = next(i for i, v in enumerate(row) if v)
        row = [v / row[lead] for v in row]
        out.append(row)
    # clear entries above pivots
    for r in range(rank - 1, -1, -1):
        lead = next(i for i, v in enumerate(out[r]) if v)
        for above in range(r):
            f = out[above][lead]
            if f:
                out[above] = [a - f * b for a, b in zip(out[above], out[r])]
    out.sort(key=lambda row: next((i for i, v in enumerate(row) if v), ncols))
    return out, rank


@pytest.fixture(scope="session")
def m5_table():
    from malcev.constructions import m5_document

    return RawTable(m5_document())


@pytest.fixture(scope="session")
def m7_table():
    from malcev.constructions import m7_scalar_document

    return RawTable(m7_scalar_document(1))
