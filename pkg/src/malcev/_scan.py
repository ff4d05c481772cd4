"""Integer tensor engine for multilinear identity scans.

Every identity checked here is multilinear, so it holds for all elements iff
it holds on all basis tuples, and each is homogeneous in the structure tensor
(anticommutativity deg 1, Jacobi deg 2, Malcev and the Jacobian product rule
deg 3, the five-variable h identity, the p-shift/p-swap identities and the
centroid-family condition deg 4). Scaling the tensor by the lcm of its
denominators therefore preserves exactly which tuples fail, which turns every
scan into integer numpy contractions. int64 is used when a conservative bound
on intermediate magnitudes fits, otherwise exact Python-int object arrays.

Scans are chunked along the first tuple index; workers may evaluate chunks
concurrently, and the merge always reports the lexicographically least
failing tuple, so reports are independent of worker count and scheduling.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from functools import cached_property
from math import lcm

import numpy as np

_INT64_LIMIT = 2**62


def default_workers() -> int:
    env = os.environ.get("MALCEV_WORKERS")
    if env is not None:
        value = int(env)
        if value < 1:
            raise ValueError("MALCEV_WORKERS must be a positive integer")
        return value
    return os.cpu_count() or 1


def _first_failure(defect) -> tuple | None:
    """Lex-least index tuple whose coordinate row is nonzero, or None."""
    mask = np.asarray(np.any(defect != 0, axis=-1), dtype=bool)
    if not mask.any():
        return None
    hits = np.argwhere(mask)
    return tuple(int(v) for v in hits[0])


class ScanEngine:
    """Per-algebra cache of the scaled integer tensor and derived contractions."""

    def __init__(self, algebra):
        self.n = algebra.dim
        den = 1
        for row in algebra.c:
            for cell in row:
                for q in cell:
                    den = lcm(den, q.denominator)
        ints = [
            [[int(q * den) for q in cell] for cell in row] for row in algebra.c
        ]
        peak = max((abs(v) for row in ints for cell in row for v in cell), default=0)
        # covers every scan above: worst accumulation is < 32 * n^3 * peak^4
        n = max(self.n, 1)
        bound = 32 * n**3 * max(peak, 1) ** 4
        dtype = np.int64 if bound < _INT64_LIMIT else object
        self.C = np.array(ints, dtype=dtype).reshape(self.n, self.n, self.n)

    # ---------------------------------------------------------- cached tensors
    @cached_property
    def T(self):
        """T[i,j,k,l] = sum_a C[i,j,a] C[a,k,l]  (left-normed triple products)."""
        return np.tensordot(self.C, self.C, axes=([2], [0]))

    @cached_property
    def Y(self):
        """Y[i,j,a,m] = sum_b C[i,j,b] C[a,b,m]  (b_a times the product b_i b_j)."""
        return np.tensordot(self.C, self.C, axes=([2], [1]))

    @cached_property
    def LN4(self):
        """LN4[x,y,z,t,m] = (((b_x b_y) b_z) b_t)_m."""
        return np.tensordot(self.T, self.C, axes=([3], [0]))

    @cached_property
    def Jten(self):
        """Jten[x,y,z,m] = Jacobian (xy)z + (yz)x + (zx)y on basis triples."""
        t = self.T
        return t + t.transpose(2, 0, 1, 3) + t.transpose(1, 2, 0, 3)

    @cached_property
    def BR(self):
        """BR[t,u,a,m]: matrix (over a -> m) of w -> {w, b_t, b_u}."""
        t = self.T
        return t.transpose(1, 2, 0, 3) - t.transpose(2, 1, 0, 3) + 2 * self.Y

    @cached_property
    def JM(self):
        """JM[p,q,a,m]: matrix of w -> J(w, b_p, b_q) = J(b_p, b_q, w)."""
        t = self.T
        return t.transpose(1, 2, 0, 3) + t + t.transpose(2, 0, 1, 3)

    @cached_property
    def PT(self):
        """PT[x,y,z,t,m] = p(b_x,b_y,b_z,b_t) = -{zt,x,y} - {yt,z,x} + {xt,y,z}."""
        k = np.tensordot(self.C, self.BR, axes=([2], [2]))
        return (
            -k.transpose(2, 3, 0, 1, 4)
            - k.transpose(3, 0, 2, 1, 4)
            + k.transpose(0, 2, 3, 1, 4)
        )

    # ------------------------------------------------------------ chunk builders
    def _malcev_chunk(self, x):
        # defect[y,z,t,m] of (xz)(yt) - xyzt - yztx - ztxy - txyz at first index x
        c, t4 = self.C, self.LN4
        a1 = np.tensordot(c, self.T[x], axes=([2], [1])).transpose(0, 2, 1, 3)
        total = a1 - t4[x] - t4[:, :, :, x, :]
        total = total - t4[:, :, x, :, :].transpose(2, 0, 1, 3)
        total = total - t4[:, x, :, :, :].transpose(1, 2, 0, 3)
        return total

    def _lie_chunk(self, x):
        return self.Jten[x]

    def _variety_h_chunk(self, y):
        # h(y,z,t,x,u) = {yz,t,u}x + {yz,t,x}u + {yx,z,u}t + {yu,z,x}t
        g1 = np.tensordot(self.C[y], self.BR, axes=([1], [2]))
        a = np.tensordot(g1, self.C, axes=([3], [0]))
        return (
            a.transpose(0, 1, 3, 2, 4)
            + a
            + a.transpose(1, 3, 0, 2, 4)
            + a.transpose(1, 3, 2, 0, 4)
        )

    def _jacobian_product_rule_chunk(self, t):
        # J(tx,y,z) - t J(x,y,z) - J(t,y,z)x + 2 J(t,x,yz) at first index t
        c, jm, jt = self.C, self.JM, self.Jten
        term_a = np.tensordot(c[t], jm, axes=([1], [2]))
        term_b = np.tensordot(jt, c[t], axes=([3], [0]))
        term_c = np.tensordot(jt[t], c, axes=([2], [0])).transpose(2, 0, 1, 3)
        term_d = np.tensordot(c, jm[t], axes=([2], [1])).transpose(2, 0, 1, 3)
        return term_a - term_b - term_c + 2 * term_d

    def _p_shift_chunk(self, x):
        # p(x,y,z,t)u - p(xu,y,z,t)
        lhs = np.tensordot(self.PT[x], self.C, axes=([3], [0]))
        rhs = np.tensordot(self.C[x], self.PT, axes=([1], [0])).transpose(1, 2, 3, 0, 4)
        return lhs - rhs

    @cached_property
    def _D(self):
        # D[q,u,t,a] = (b_q (b_u b_t))_a
        return self.Y.transpose(2, 0, 1, 3)

    def _p_swap_chunk(self, x):
        # p(x,y,z,ut) - p(x,u,t,yz), tuple order (x,y,z,u,t)
        d, br = self._D, self.BR
        base1 = np.tensordot(d, br[x], axes=([3], [1]))
        base2 = np.tensordot(d, br[:, x, :, :], axes=([3], [1]))
        base3 = np.tensordot(d[x], br, axes=([2], [2]))
        lhs = (
            -base1.transpose(3, 0, 1, 2, 4)
            - base2.transpose(0, 3, 1, 2, 4)
            + base3.transpose(2, 3, 0, 1, 4)
        )
        rhs = (
            -base1.transpose(1, 2, 3, 0, 4)
            - base2.transpose(1, 2, 0, 3, 4)
            + base3
        )
        return lhs - rhs

    def _alpha_centroid_chunk(self, y):
        # with alpha = alpha(b_y,b_z,b_t): (b_i b_j)alpha vs b_i(b_j alpha) vs (b_i alpha)b_j
        # tuple order (y,z,t,i,j); both residuals stacked along the coordinate axis
        pty = self.PT[:, y]
        m1 = np.tensordot(self.C, pty, axes=([2], [0]))
        m2 = np.tensordot(pty, self.C, axes=([3], [1])).transpose(3, 0, 1, 2, 4)
        m3 = np.tensordot(pty, self.C, axes=([3], [0])).transpose(0, 3, 1, 2, 4)
        both = np.concatenate([m1 - m2, m1 - m3], axis=-1)
        return both.transpose(2, 3, 0, 1, 4)

    _CHUNKS = {
        "malcev": (_malcev_chunk, 4),
        "lie": (_lie_chunk, 3),
        "variety_h": (_variety_h_chunk, 5),
        "jacobian_product_rule": (_jacobian_product_rule_chunk, 4),
        "p_shift": (_p_shift_chunk, 5),
        "p_swap": (_p_swap_chunk, 5),
        "alpha_centroid": (_alpha_centroid_chunk, 5),
    }

    def arity(self, which: str) -> int:
        return self._CHUNKS[which][1]

    def scan(self, which: str, workers: int | None = None) -> tuple | None:
        """First failing basis tuple of the named identity in lex order, or None."""
        builder = self._CHUNKS[which][0]
        n = self.n
        if n == 0:
            return None
        workers = workers if workers is not None else default_workers()
        if workers <= 1:
            for i in range(n):
                rest = _first_failure(builder(self, i))
                if rest is not None:
                    return (i, *rest)
            return None
        with ThreadPoolExecutor(max_workers=min(workers, n)) as pool:
            for i, rest in enumerate(pool.map(lambda k: _first_failure(builder(self, k)), range(n))):
                if rest is not None:
                    return (i, *rest)
        return None


def get_engine(algebra) -> ScanEngine:
    engine = algebra._scan_engine
    if engine is None:
        engine = ScanEngine(algebra)
        algebra._scan_engine = engine
    return engine
