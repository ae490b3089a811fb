from fractions import Fraction
from math import comb, gcd, lcm

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pirarray import (
    ConstructionParams,
    build_c1,
    build_c2,
    build_c3,
    build_general_s,
    build_integer_s,
    solve_xi,
)
from pirarray.constructions import (
    c1_counts,
    c2_counts,
    c3_counts,
    check_xi,
    general_s_counts,
    integer_s_counts,
)
from pirarray.errors import CapExceeded, ParameterError


# ---------------------------------------------------------------------------
# xi solver


def test_solve_xi_frozen_values():
    assert solve_xi(3, 2) == (3, 1, 4)
    assert solve_xi(4, 2) == (15, 3, 4, 24)
    assert solve_xi(2, 2) == (1, 1)
    assert solve_xi(2, 1) == (1, 1)
    assert solve_xi(Fraction(5, 2), 2) == (2, 1, 1)
    assert solve_xi(Fraction(7, 2), 2) == (4, 1, 2, 2)


def test_solve_xi_satisfies_balance_equations():
    for s, t in [(2, 3), (3, 2), (3, 4), (4, 2), (5, 3), (6, 2)]:
        xi = solve_xi(s, t)
        p = s * t
        assert (s - 1) * xi[0] == comb(p - t, t) * xi[1]
        for r in range(2, s):
            assert comb(p - t, (r - 1) * t + 1) * xi[r - 1] == comb(p - t, r * t) * xi[r]
        check_xi(s, t, xi)


def test_solve_xi_general_satisfies_balance_equations():
    for s, t in [(Fraction(5, 2), 2), (Fraction(7, 2), 2), (Fraction(7, 3), 3), (Fraction(5, 2), 4)]:
        xi = solve_xi(s, t)
        p = (s * t).numerator
        q = len(xi)
        assert (p - t) * xi[0] == t * comb(p - t, t) * xi[1]
        for r in range(2, q - 1):
            assert comb(p - t, (r - 1) * t + 1) * xi[r - 1] == comb(p - t, r * t) * xi[r]
        assert xi[q - 2] * comb(p - t, (q - 2) * t + 1) == xi[q - 1]
        check_xi(s, t, xi)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 6), st.integers(1, 8))
def test_solve_xi_gcd_reduced(s, t):
    xi = solve_xi(s, t)
    acc = 0
    for x in xi:
        acc = gcd(acc, x)
    assert acc == 1 and all(x > 0 for x in xi)


def test_solve_xi_rejects_bad_domains():
    with pytest.raises(ParameterError):
        solve_xi(Fraction(3, 2), 2)  # non-integer s must exceed 2
    with pytest.raises(ParameterError):
        solve_xi(Fraction(5, 2), 3)  # p not an integer
    with pytest.raises(ParameterError):
        solve_xi(1, 4)


# ---------------------------------------------------------------------------
# family shapes and counts


def column_type(code, col):
    """1 for all-singleton columns, else the pairing level of the sum cell."""
    sums = [c for c in col if not c.is_singleton()]
    if not sums:
        return 1
    size = sums[0].weight()
    if size == code.p - code.t + 1 and code.s.denominator != 1:
        return -((-code.s.numerator) // code.s.denominator)
    return (size - 1) // code.t + 1


def test_c1_counts_and_shape():
    code = build_c1(2, 2)
    assert code.m == 10 and (code.p, code.t) == (4, 2)
    assert c1_counts(2, 2) == (10, 7)
    assert c1_counts(2, 1) == (9, 7)
    assert c1_counts(1, 1) == (3, 2)
    assert sum(1 for col in code.columns if all(c.is_singleton() for c in col)) == 6
    code11 = build_c1(1, 1)
    assert [sorted(c.parts() for c in col) for col in code11.columns] == [[(1,)], [(2,)], [(1, 2)]]
    assert Fraction(*reversed(c1_counts(1, 1))) == Fraction(2, 3)


def test_c1_type_b_sums_remaining_parts():
    code = build_c1(3, 2)  # p=5, Type B sums d+1 = 3 parts
    for col in code.columns:
        sums = [c for c in col if not c.is_singleton()]
        if sums:
            assert len(sums) == 1 and sums[0].weight() == 3
            stored = {c.singleton_part() for c in col if c.is_singleton()}
            assert stored.isdisjoint(sums[0].parts())
            assert stored | set(sums[0].parts()) == set(range(1, 6))


def test_c1_rejects_bad_d():
    with pytest.raises(ParameterError):
        build_c1(2, 3)
    with pytest.raises(ParameterError):
        build_c1(2, 0)


def test_c2_counts_and_shape():
    code = build_c2(3)
    assert code.m == 6 and code.p == 4
    assert c2_counts(3) == (6, 5)
    assert c2_counts(5) == (9, 8)
    type_a = [col for col in code.columns if all(c.is_singleton() for c in col)]
    type_b = [col for col in code.columns if not all(c.is_singleton() for c in col)]
    assert len(type_a) == 4 and len(type_b) == 2
    pair_sums = sorted(tuple(c.parts()) for col in type_b for c in col if not c.is_singleton())
    assert pair_sums == [(1, 2), (3, 4)]
    with pytest.raises(ParameterError):
        build_c2(4)
    with pytest.raises(ParameterError):
        build_c2(1)


def test_c3_counts_and_shape():
    code = build_c3(2)
    assert code.m == 9 and code.p == 3
    assert c3_counts(2) == (9, 7)
    assert c3_counts(4) == (15, 13)
    type_a = [col for col in code.columns if all(c.is_singleton() for c in col)]
    assert len(type_a) == 6
    # each part omitted exactly twice among Type A
    for part in (1, 2, 3):
        omitted = sum(1 for col in type_a if part not in {c.singleton_part() for c in col})
        assert omitted == 2
    pair_sums = sorted(tuple(c.parts()) for col in code.columns for c in col if not c.is_singleton())
    assert pair_sums == [(1, 2), (1, 3), (2, 3)]  # wrap-around pair lands on (1, t+1)
    with pytest.raises(ParameterError):
        build_c3(3)


def test_integer_s_counts_and_type_blocks():
    m, b, c, k = integer_s_counts(3, 2, (3, 1, 4))
    assert (m, b, c, k) == (129, 29, 50, 79)
    code = build_integer_s(3, 2, (3, 1, 4))
    assert code.m == 129
    by_type = {}
    for col in code.columns:
        by_type[column_type(code, col)] = by_type.get(column_type(code, col), 0) + 1
    assert by_type == {1: 45, 2: 60, 3: 24}


def test_integer_s_t1_degenerates_to_three_column_code():
    code = build_integer_s(2, 1, (1, 1))
    assert [sorted(c.parts() for c in col) for col in code.columns] == [[(1,)], [(2,)], [(1, 2)]]


def test_integer_s_coincides_with_c1_at_s2():
    for t in (2, 3):
        assert build_integer_s(2, t) == build_c1(t, t)


def test_general_s_counts_and_type_blocks():
    m, b, c, k = general_s_counts(Fraction(5, 2), 2, (2, 1, 1))
    assert (m, b, c, k) == (45, 13, 16, 29)
    code = build_general_s(Fraction(5, 2), 2, (2, 1, 1))
    by_type = {}
    for col in code.columns:
        tcode = column_type(code, col)
        by_type[tcode] = by_type.get(tcode, 0) + 1
    assert by_type == {1: 20, 2: 20, 3: 5}
    assert general_s_counts(Fraction(7, 2), 2) == (322, 58, 132, 190)


def test_every_column_has_at_most_one_sum_cell():
    for code in (build_c1(3, 2), build_c2(3), build_c3(2), build_integer_s(3, 2), build_general_s(Fraction(5, 2), 2)):
        for col in code.columns:
            assert sum(1 for c in col if not c.is_singleton()) <= 1
            assert len(col) == code.t


def pairing_side_sizes(code, part):
    """|V_1^r| and |V_2^r| per pairing level by direct scan of a generated code."""
    q = max(column_type(code, col) for col in code.columns)
    v1 = {r: 0 for r in range(1, q)}
    v2 = {r: 0 for r in range(1, q)}
    for col in code.columns:
        level = column_type(code, col)
        stored = {c.singleton_part() for c in col if c.is_singleton()}
        involved = set()
        for c in col:
            involved |= set(c.parts())
        if part in stored:
            continue
        if part not in involved:
            v1[level] += 1
        else:
            v2[level - 1] += 1
    return v1, v2


@pytest.mark.parametrize(
    "code_builder",
    [
        lambda: build_c1(2, 2),
        lambda: build_c1(3, 1),
        lambda: build_integer_s(3, 2),
        lambda: build_general_s(Fraction(5, 2), 2),
        lambda: build_general_s(Fraction(7, 2), 2),
    ],
)
def test_pairing_graph_sides_balance(code_builder):
    code = code_builder()
    for part in range(1, code.p + 1):
        v1, v2 = pairing_side_sizes(code, part)
        assert v1 == v2


def test_generation_cap_reports_symbolic_count():
    with pytest.raises(CapExceeded) as err:
        build_integer_s(3, 2, max_columns=100)
    assert err.value.columns == 129
    with pytest.raises(CapExceeded):
        build_c1(5, 4, max_columns=1000)


def test_invalid_xi_rejected():
    with pytest.raises(ParameterError):
        build_integer_s(3, 2, (1, 1, 1))
    with pytest.raises(ParameterError):
        integer_s_counts(3, 2, (3, 1))
    with pytest.raises(ParameterError):
        general_s_counts(Fraction(5, 2), 2, (2, 1, 2))


def test_scaled_xi_is_accepted_and_changes_nothing_but_multiplicity():
    m1, b1, c1, k1 = integer_s_counts(3, 2, (3, 1, 4))
    m2, b2, c2, k2 = integer_s_counts(3, 2, (6, 2, 8))
    assert (m2, b2, c2, k2) == (2 * m1, 2 * b1, 2 * c1, 2 * k1)
    assert Fraction(k1, m1) == Fraction(k2, m2)


def test_construction_params_dispatch():
    params = ConstructionParams(family="c1", t=2, d=2)
    assert params.s == Fraction(2) and params.theta == 2
    assert params.predicted_counts() == (10, 7)
    assert params.build().m == 10
    params_i = ConstructionParams(family="integer", t=2, s=Fraction(3))
    assert params_i.predicted_counts() == (129, 79)
    with pytest.raises(ParameterError):
        ConstructionParams(family="c1", t=2)
    with pytest.raises(ParameterError):
        ConstructionParams(family="nope", t=2)
    with pytest.raises(ParameterError):
        ConstructionParams(family="general", t=2, s=Fraction(5, 3))  # p not integral


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 4).flatmap(lambda t: st.tuples(st.just(t), st.integers(1, t))))
def test_c1_generated_m_matches_formula(params):
    t, d = params
    theta = lcm(d, t)
    code = build_c1(t, d)
    assert code.m == comb(t + d, t) * theta // d + comb(t + d, t - 1) * theta // t
    assert all(len(col) == t for col in code.columns)
