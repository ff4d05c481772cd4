"""Forward constructions and the determinant/Pluecker machinery."""

import random
from fractions import Fraction

import pytest

from malcev.constructions import (
    SparsePoly,
    build_extension,
    det_pairing,
    det_plucker_generators,
    dual_number_scalars,
    m5,
    m7_of,
    m7_scalar,
    m_tilde,
    pair_scalars,
    plucker_check,
    rational_scalars,
    sl2_of,
    symplectic_star,
    verify_scalar_algebra,
)
from malcev.core import LinearMap, product_span
from malcev.errors import PairingError, ScalarAlgebraError
from malcev.identities import check_identity
from malcev.iso import AlgebraMorphism, verify_morphism
from malcev.linalg import Subspace
from malcev.sl2 import (
    PairingForm,
    coordinatize,
    decompose,
    extract_pairing,
    sl2_algebra,
    verify_sl2,
    zero_pairing,
)

from conftest import element_as_dict


def test_verify_scalar_algebra_accepts_commutative_cases():
    q = rational_scalars()
    assert verify_scalar_algebra(q.algebra, q.unit).dim == 1
    d = dual_number_scalars()
    assert verify_scalar_algebra(d.algebra, d.unit).dim == 2


def test_verify_scalar_algebra_rejects_sl2():
    a = sl2_algebra()
    with pytest.raises(ScalarAlgebraError, match="commutativity"):
        verify_scalar_algebra(a, a.basis_element(0))


def test_verify_scalar_algebra_rejects_bad_unit():
    d = dual_number_scalars()
    with pytest.raises(ScalarAlgebraError, match="unit"):
        verify_scalar_algebra(d.algebra, d.algebra.basis_element(1))


def test_sl2_of_rationals_is_sl2():
    built = sl2_of(rational_scalars())
    target = sl2_algebra()
    assert built.c == target.c  # same tensor, names differ only


def test_sl2_of_dual_numbers():
    built = sl2_of(dual_number_scalars())
    assert built.dim == 6
    assert check_identity(built, "lie").passed
    et = built.basis_element(built.index_of("E*t"))
    ft = built.basis_element(built.index_of("F*t"))
    assert (et * ft).is_zero()  # (E@t)(F@t) = (H/2)@t^2 = 0


def test_sl2_of_pair_splits_into_two_copies():
    built = sl2_of(pair_scalars())
    names = built.basis_names
    block1 = [i for i, n in enumerate(names) if n.endswith("*e1")]
    block2 = [i for i, n in enumerate(names) if n.endswith("*e2")]
    s1 = Subspace(6, [built.basis_element(i).coords for i in block1])
    s2 = Subspace(6, [built.basis_element(i).coords for i in block2])
    assert product_span(built, s1, s2).dim == 0
    assert product_span(built, s1, s1) == s1
    # each block carries the sl2 table: explicit morphism oracle
    target = sl2_algebra()
    for block in (block1, block2):
        cols = [built.basis_element(i) for i in block]
        report = verify_morphism(LinearMap.from_columns(target, built, cols))
        # not bijective onto the 6-dim algebra, so check multiplicativity only
        assert report.first_failure in (None, ())


def test_symplectic_star_entries():
    one, zero = Fraction(1), Fraction(0)
    ident = ((one, zero), (zero, one))
    assert symplectic_star(ident) == ident
    e12 = ((zero, one), (zero, zero))
    assert symplectic_star(e12) == ((zero, -one), (zero, zero))


def test_symplectic_star_is_involution():
    rng = random.Random(6)
    for _ in range(20):
        m = tuple(
            tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(2))
            for _ in range(2)
        )
        assert symplectic_star(symplectic_star(m)) == m


def test_build_extension_rank1_zero_pairing_is_m5():
    base = rational_scalars()
    ext = build_extension(base, zero_pairing(base.algebra, 1))
    assert ext.dim == 5
    target = m5()
    cols = [
        target.basis_element(target.index_of(n))
        for n in ("E", "H", "F", "u(1)", "u(2)")
    ]
    report = verify_morphism(AlgebraMorphism(LinearMap.from_columns(ext, target, cols)))
    assert report.passed, report


def test_build_extension_rank2_unit_pairing_is_m7_table():
    base = rational_scalars()
    one, zero = base.unit, base.algebra.zero()
    pairing = PairingForm(base.algebra, ((zero, one), (-one, zero)))
    ext = build_extension(base, pairing)
    assert ext.dim == 7
    target = m7_scalar(1)
    cols = [
        target.basis_element(target.index_of(n))
        for n in ("E", "H", "F", "u(1)", "v(1)", "u(2)", "v(2)")
    ]
    report = verify_morphism(AlgebraMorphism(LinearMap.from_columns(ext, target, cols)))
    assert report.passed, report


def test_build_extension_passes_scans_over_dual_numbers():
    base = dual_number_scalars()
    ext = build_extension(base, det_pairing(base))
    assert ext.dim == 14
    assert check_identity(ext, "malcev").passed
    assert check_identity(ext, "variety_h").passed


def test_build_extension_rank3_zero_pairing():
    # rank 3 with the zero pairing: three copies of the 2-dim module glued on
    base = rational_scalars()
    ext = build_extension(base, zero_pairing(base.algebra, 3))
    assert ext.dim == 9
    assert check_identity(ext, "malcev").passed
    assert check_identity(ext, "variety_h").passed
    assert not check_identity(ext, "lie").passed


def test_build_extension_refuses_cyclic_violation():
    base = rational_scalars()
    one, zero = base.unit, base.algebra.zero()
    entries = (
        (zero, one, zero),
        (-one, zero, zero),
        (zero, zero, zero),
    )
    pairing = PairingForm(base.algebra, entries)
    with pytest.raises(PairingError, match="cyclic"):
        build_extension(base, pairing)


def test_pairing_form_rejects_non_skew():
    base = rational_scalars()
    one, zero = base.unit, base.algebra.zero()
    with pytest.raises(PairingError):
        PairingForm(base.algebra, ((zero, one), (one, zero)))
    with pytest.raises(PairingError):
        PairingForm(base.algebra, ((one, one), (-one, zero)))


def test_m7_of_cited_product():
    a = m7_of(rational_scalars())
    u1 = Fraction(1, 2) * a.basis_element(a.index_of("v11*1"))
    v1 = Fraction(-1, 2) * a.basis_element(a.index_of("v12*1"))
    f = a.basis_element(a.index_of("F*1"))
    assert u1 * v1 == f


def test_m7_of_recovers_minus_four_det():
    base = rational_scalars()
    a = m7_of(base)
    emb = verify_sl2(
        a,
        a.basis_element(a.index_of("E*1")),
        a.basis_element(a.index_of("H*1")),
        a.basis_element(a.index_of("F*1")),
    )
    dec = decompose(a, emb)
    coord = coordinatize(a, emb, dec)
    form = extract_pairing(a, emb, dec, coord)
    # v1 rows are (1,0)(1) and (0,1)(1): <(1,0),(0,1)> = -4 det(I) = -4
    assert form.entries[0][1] == Fraction(-4) * coord.unit_coords


def test_m7_of_dual_passes_malcev():
    a = m7_of(dual_number_scalars())
    assert a.dim == 14
    assert check_identity(a, "malcev").passed
    assert check_identity(a, "variety_h").passed


def test_m_tilde_zero_alpha_kills_odd_products():
    base = rational_scalars()
    a = m_tilde(base, base.algebra.zero())
    voff = 3
    for i in range(voff, a.dim):
        for j in range(voff, a.dim):
            assert (a.basis_element(i) * a.basis_element(j)).is_zero()
    assert check_identity(a, "malcev").passed


def test_m_tilde_at_unit_equals_m7_of():
    for base in (rational_scalars(), dual_number_scalars()):
        assert m_tilde(base, base.unit).c == m7_of(base).c


def test_m_tilde_nilpotent_alpha():
    base = dual_number_scalars()
    t = base.algebra.basis_element(1)
    a = m_tilde(base, t)
    assert check_identity(a, "malcev").passed
    emb = verify_sl2(
        a,
        a.basis_element(a.index_of("E*1")),
        a.basis_element(a.index_of("H*1")),
        a.basis_element(a.index_of("F*1")),
    )
    dec = decompose(a, emb)
    coord = coordinatize(a, emb, dec)
    form = extract_pairing(a, emb, dec, coord)
    # <(1,0)x1, (0,1)x1> = -4t: coordinates (0, -4) in the recovered base
    assert form.entries[0][2] == Fraction(-4) * coord.u_algebra.basis_element(1)


def test_m5_table_values(m5_table):
    a = m5()
    u2 = a.basis_element(a.index_of("u(2)"))
    f = a.basis_element(a.index_of("F"))
    assert element_as_dict(u2 * f) == {"u(1)": Fraction(-1)}
    assert element_as_dict(u2 * f) == m5_table.mult(
        m5_table.basis_vec("u(2)"), m5_table.basis_vec("F")
    )


def test_m7_scalar_table_values():
    lam = Fraction(3, 4)
    a = m7_scalar(lam)
    u1 = a.basis_element(a.index_of("u(1)"))
    v2 = a.basis_element(a.index_of("v(2)"))
    h = a.basis_element(a.index_of("H"))
    assert u1 * v2 == (lam / 2) * h


def test_m7_scalar_zero_is_split_null():
    a = m7_scalar(0)
    j_rows = [a.basis_element(a.index_of(n)) for n in ("u(1)", "u(2)", "v(1)", "v(2)")]
    for x in j_rows:
        for y in j_rows:
            assert (x * y).is_zero()


def test_plucker_check_two_by_two():
    base = rational_scalars()
    one, zero = base.unit, base.algebra.zero()
    grid = ((zero, one), (-one, zero))
    report = plucker_check(grid)
    assert report.passed


def test_plucker_check_on_extracted_rank4_grid():
    base = dual_number_scalars()
    a = m7_of(base)
    emb = verify_sl2(
        a,
        a.element_from_dict({"E*1": "1"}),
        a.element_from_dict({"H*1": "1"}),
        a.element_from_dict({"F*1": "1"}),
    )
    dec = decompose(a, emb)
    coord = coordinatize(a, emb, dec)
    form = extract_pairing(a, emb, dec, coord)
    assert form.v_rank == 4
    assert plucker_check(form.entries).passed


def test_plucker_check_counterexample():
    base = rational_scalars()
    one, zero = base.unit, base.algebra.zero()
    grid = [[zero] * 4 for _ in range(4)]
    grid[0][1], grid[1][0] = one, -one
    grid[2][3], grid[3][2] = one, -one
    report = plucker_check(grid)
    assert not report.passed
    assert report.first_failure == (0, 1, 2, 3)
    assert report.failure_value == base.unit


@pytest.mark.parametrize("n", [2, 3, 4])
def test_det_plucker_generators(n):
    report = det_plucker_generators(n)
    assert report.passed


def test_det_plucker_numeric_oracle():
    # independent of SparsePoly arithmetic: substitute random integers
    rng = random.Random(17)
    n = 4
    for _ in range(30):
        xs = [rng.randint(-9, 9) for _ in range(n)]
        ys = [rng.randint(-9, 9) for _ in range(n)]

        def alpha(i, j):
            return xs[i] * ys[j] - xs[j] * ys[i]

        for i in range(n):
            for j in range(n):
                for k in range(n):
                    for l in range(n):
                        assert alpha(i, j) * alpha(k, l) + alpha(i, k) * alpha(l, j) + alpha(
                            i, l
                        ) * alpha(j, k) == 0


def test_sparse_poly_arithmetic():
    x0 = SparsePoly.variable(3, 0)
    x1 = SparsePoly.variable(3, 1)
    p = (x0 + x1) * (x0 - x1)
    assert p == x0 * x0 - x1 * x1
    assert (p - p).is_zero()
    assert not p.terms.get((0, 0, 0))
    const = SparsePoly.constant(3, Fraction(5, 2))
    assert (const * x0).terms == {(1, 0, 0): Fraction(5, 2)}


def test_sparse_poly_matches_numeric_evaluation():
    rng = random.Random(9)
    x = [SparsePoly.variable(4, i) for i in range(4)]
    p = x[0] * x[1] - x[2] * x[3] + SparsePoly.constant(4, 2)
    for _ in range(20):
        vals = [rng.randint(-5, 5) for _ in range(4)]
        assert p.evaluate(vals) == vals[0] * vals[1] - vals[2] * vals[3] + 2


def test_sparse_poly_canonical_order():
    x0 = SparsePoly.variable(2, 0)
    x1 = SparsePoly.variable(2, 1)
    p = x1 + x0 * x0 + x0
    degrees = [sum(e) for e, _ in p.terms_sorted()]
    assert degrees == sorted(degrees, reverse=True)
    assert repr(p) == "1*x0^2 + 1*x0 + 1*x1"
