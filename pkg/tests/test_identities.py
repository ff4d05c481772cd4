"""Characteristic functions and identity scans, cross-checked two ways: against
the raw-table oracle from conftest and against element-level brute force."""

import itertools
import json
import random
from fractions import Fraction

import pytest

from malcev.core import Algebra, LinearMap, load_algebra
from malcev.constructions import m5, m5_document, m7_scalar
from malcev.errors import DimensionError
from malcev.identities import (
    IDENTITY_ARITIES,
    alpha_map,
    brace,
    check_alpha_centroid,
    check_centroid,
    check_identity,
    check_jacobian_product_rule,
    check_p_shift,
    check_p_swap,
    h_val,
    jacobian,
    p_val,
)
from malcev.identities import _defect_value
from malcev._scan import get_engine
from malcev.linalg import Matrix
from malcev.sl2 import sl2_algebra

from conftest import element_as_dict


def by_name(a, name):
    return a.basis_element(a.index_of(name))


def test_jacobian_vanishes_on_sl2():
    a = sl2_algebra()
    e, h, f = a.basis_elements()
    assert jacobian(a, e, f, h).is_zero()


def test_jacobian_m5_witness_matches_table_oracle(m5_table):
    a = m5()
    u1, e, f = by_name(a, "u(1)"), by_name(a, "E"), by_name(a, "F")
    value = jacobian(a, u1, e, f)
    oracle = m5_table.jacobian(
        m5_table.basis_vec("u(1)"), m5_table.basis_vec("E"), m5_table.basis_vec("F")
    )
    assert element_as_dict(value) == oracle == {"u(1)": Fraction(-3, 2)}


def test_jacobian_alternating():
    rng = random.Random(4)
    a = m7_scalar(1)
    for _ in range(10):
        x = a.element([Fraction(rng.randint(-3, 3)) for _ in range(a.dim)])
        y = a.element([Fraction(rng.randint(-3, 3)) for _ in range(a.dim)])
        assert jacobian(a, x, x, y).is_zero()


def test_brace_values(m5_table):
    a = m5()
    u1, e, f = by_name(a, "u(1)"), by_name(a, "E"), by_name(a, "F")
    assert brace(a, u1, e, f).is_zero()
    assert element_as_dict(brace(a, u1, e, f)) == m5_table.brace(
        m5_table.basis_vec("u(1)"), m5_table.basis_vec("E"), m5_table.basis_vec("F")
    ) == {}
    s = sl2_algebra()
    se, sf = s.basis_element(0), s.basis_element(2)
    assert brace(s, se, se, sf) == Fraction(3, 2) * se
    assert brace(s, se, sf, sf).is_zero()


def test_brace_definition_consistency():
    # {x,y,z} - J(x,y,z) - 3x(yz) = 0 on all basis triples
    for a in (sl2_algebra(), m5(), m7_scalar(2)):
        for x, y, z in itertools.product(a.basis_elements(), repeat=3):
            assert brace(a, x, y, z) == jacobian(a, x, y, z) + 3 * (x * (y * z))


def test_h_vanishes_on_sl2_all_tuples():
    a = sl2_algebra()
    for tup in itertools.product(a.basis_elements(), repeat=5):
        assert h_val(a, *tup).is_zero()


def test_h_on_m7_sampled_against_table_oracle(m7_table):
    a = m7_scalar(1)
    rng = random.Random(12)
    names = a.basis_names
    for _ in range(60):
        picks = [rng.randrange(a.dim) for _ in range(5)]
        value = h_val(a, *(a.basis_element(i) for i in picks))
        oracle = m7_table.h_val(*(m7_table.basis_vec(names[i]) for i in picks))
        assert element_as_dict(value) == oracle
        assert value.is_zero()


def test_h_finds_witness_in_perturbed_m5():
    doc = json.loads(json.dumps(m5_document()))
    for entry in doc["products"]:
        if entry["left"] == "E" and entry["right"] == "u(1)":
            entry["result"] = {"u(2)": "-2"}
    perturbed = load_algebra(doc)
    report = check_identity(perturbed, "variety_h")
    assert not report.passed
    witness = [perturbed.basis_element(i) for i in report.first_failure]
    assert not h_val(perturbed, *witness).is_zero()
    assert h_val(perturbed, *witness) == report.failure_value


def test_p_values_on_sl2(m5_table):
    a = sl2_algebra()
    e, h, f = a.basis_elements()
    assert p_val(a, e, e, f, h) == 3 * e
    assert p_val(a, f, e, f, h) == 3 * f
    zero = a.zero()
    assert p_val(a, zero, e, f, h).is_zero()
    # raw-table route (the sl2 block of the m5 table is sl2 itself)
    raw = m5_table.p_val(
        m5_table.basis_vec("E"), m5_table.basis_vec("E"),
        m5_table.basis_vec("F"), m5_table.basis_vec("H"),
    )
    assert raw == {"E": Fraction(3)}


def test_alpha_map_on_sl2_is_three_times_identity():
    a = sl2_algebra()
    e, h, f = a.basis_elements()
    assert alpha_map(a, e, f, h).matrix == Matrix.identity(3).scale(3)
    assert alpha_map(a, a.zero(), f, h).matrix == Matrix.zero(3, 3)


def test_alpha_map_on_m5_restricts_to_three_times_identity():
    a = m5()
    e, f, h = by_name(a, "E"), by_name(a, "F"), by_name(a, "H")
    amap = alpha_map(a, e, f, h)
    for x in (e, f, h):
        assert amap.apply(x) == 3 * x
    assert check_centroid(a, amap).passed


def test_check_identity_counts_and_witnesses():
    a = sl2_algebra()
    assert check_identity(a, "lie").tuples_checked == 27
    m = m5()
    rep_m = check_identity(m, "malcev")
    assert rep_m.passed and rep_m.tuples_checked == 625
    rep_l = check_identity(m, "lie")
    assert not rep_l.passed
    assert rep_l.first_failure == (0, 1, 3)
    assert element_as_dict(rep_l.failure_value) == {"u(1)": Fraction(-3, 2)}
    m7 = m7_scalar(1)
    rep_h = check_identity(m7, "variety_h")
    assert rep_h.passed and rep_h.tuples_checked == 16807


def test_check_identity_requires_anticommutativity():
    tensor = [[[0, 0], [1, 0]], [[0, 0], [0, 0]]]
    a = Algebra("notskew", ["a", "b"], tensor)
    report = check_identity(a, "malcev")
    assert report.identity == "anticommutative"
    assert not report.passed and report.first_failure == (0, 1)


def test_check_identity_rejects_unknown_name():
    with pytest.raises(ValueError):
        check_identity(m5(), "jordan")


def test_lie_implies_malcev_on_examples():
    from malcev.constructions import dual_number_scalars, sl2_of

    for a in (sl2_algebra(), sl2_of(dual_number_scalars())):
        assert check_identity(a, "lie").passed
        assert check_identity(a, "malcev").passed


def test_report_determinism_across_workers():
    m7 = m7_scalar(1)
    m7_bad = load_algebra(
        {**m7_scalar(1).to_document(), "name": "probe"}
    )
    reports = [check_identity(m7, "variety_h", workers=w).to_json() for w in (1, 2, 5)]
    assert len(set(reports)) == 1
    lie = [check_identity(m7_bad, "lie", workers=w).to_json() for w in (1, 3)]
    assert len(set(lie)) == 1


def test_check_centroid_identity_map():
    a = m5()
    assert check_centroid(a, LinearMap.identity(a)).passed


def test_check_centroid_swap_map_fails():
    a = sl2_algebra()
    swap = LinearMap(a, a, Matrix([[0, 0, 1], [0, 1, 0], [1, 0, 0]]))
    report = check_centroid(a, swap)
    assert not report.passed
    assert report.first_failure == (0, 0)  # (E*E)f = 0 but E*(E f) = E*F


def test_check_centroid_shape_guard():
    a, b = m5(), sl2_algebra()
    with pytest.raises(DimensionError):
        check_centroid(a, LinearMap(b, b, Matrix.identity(3)))


def random_skew_algebra(rng, dim):
    tensor = [[[Fraction(0)] * dim for _ in range(dim)] for _ in range(dim)]
    for i in range(dim):
        for j in range(i + 1, dim):
            cell = [Fraction(rng.randint(-2, 2), rng.choice([1, 2])) for _ in range(dim)]
            tensor[i][j] = cell
            tensor[j][i] = [-v for v in cell]
    return Algebra("rand", [f"b{i}" for i in range(dim)], tensor, anticommutative=True)


def test_engine_agrees_with_element_brute_force():
    # the decisive dual-route check: every scan vs. exhaustive element loops
    rng = random.Random(7)
    for _ in range(6):
        dim = rng.choice([3, 4])
        a = random_skew_algebra(rng, dim)
        engine = get_engine(a)
        for which, arity in IDENTITY_ARITIES.items():
            brute = None
            for idx in itertools.product(range(dim), repeat=arity):
                if not _defect_value(a, which, idx).is_zero():
                    brute = idx
                    break
            assert engine.scan(which, workers=1) == brute
            assert engine.scan(which, workers=3) == brute


def test_engine_object_dtype_path():
    # huge entries push the scan onto exact big-int object arrays
    big = Fraction(10**9)
    tensor = [[[Fraction(0)] * 3 for _ in range(3)] for _ in range(3)]
    tensor[0][1] = [Fraction(0), Fraction(0), big]
    tensor[1][0] = [Fraction(0), Fraction(0), -big]
    a = Algebra("big", ["x", "y", "z"], tensor, anticommutative=True)
    engine = get_engine(a)
    assert engine.C.dtype == object
    report = check_identity(a, "malcev")
    brute = None
    for idx in itertools.product(range(3), repeat=4):
        if not _defect_value(a, "malcev", idx).is_zero():
            brute = idx
            break
    assert (report.first_failure if not report.passed else None) == brute


def test_property_scans_match_elementwise_on_m5():
    a = m5()
    rng = random.Random(21)
    assert check_jacobian_product_rule(a).passed
    assert check_p_shift(a).passed
    assert check_p_swap(a).passed
    assert check_alpha_centroid(a).passed
    for _ in range(40):
        t, x, y, z = (a.basis_element(rng.randrange(a.dim)) for _ in range(4))
        lhs = jacobian(a, t * x, y, z)
        rhs = t * jacobian(a, x, y, z) + jacobian(a, t, y, z) * x - 2 * jacobian(a, t, x, y * z)
        assert lhs == rhs
    for _ in range(40):
        x, y, z, t, u = (a.basis_element(rng.randrange(a.dim)) for _ in range(5))
        assert p_val(a, x, y, z, t) * u == p_val(a, x * u, y, z, t)
        assert p_val(a, x, y, z, u * t) == p_val(a, x, u, t, y * z)


def test_alpha_maps_are_centroid_members_on_m7():
    a = m7_scalar(1)
    assert check_alpha_centroid(a).passed
    rng = random.Random(33)
    for _ in range(5):
        y, z, t = (a.basis_element(rng.randrange(a.dim)) for _ in range(3))
        assert check_centroid(a, alpha_map(a, y, z, t)).passed


def test_report_json_schema():
    report = check_identity(m5(), "lie")
    payload = json.loads(report.to_json())
    assert set(payload) == {"identity", "passed", "first_failure", "failure_value", "tuples_checked"}
    assert payload["first_failure"] == [0, 1, 3]
    assert payload["failure_value"] == {"u(1)": "-3/2"}
    ok = json.loads(check_identity(m5(), "malcev").to_json())
    assert ok["first_failure"] is None and ok["failure_value"] is None
