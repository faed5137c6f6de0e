import re
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import generator_sets
from oracles import gaps_brute, structure_oracle
from sumset_structure import (
    ConstraintViolation,
    DegenerateFamily,
    DenseSet,
    GeneratorSet,
    InvalidArgs,
    NotDivisible,
    TheoremViolation,
    decompose,
    exceptional_set,
    lev_family_block,
    lev_family_union,
    m_fold,
    reflect,
    shape_params,
    structure_check,
    threshold_scan,
)
from sumset_structure.structure import (
    block_family_grid,
    block_family_prediction,
    shape_params_ln,
    union_family_grid,
    union_family_prediction,
    verdict_from,
)

HEAD_SET = GeneratorSet((0, 1, 10, 11, 12, 13, 14))


@pytest.mark.parametrize("A,k,r,M,delta", [
    ((0, 3, 5), 4, 0, 4, 5),
    ((0, 1, 2), 1, 0, 1, 2),
    ((0, 2, 4, 5, 6), 1, 2, 3, 10),
    ((0, 1, 10, 11, 12, 13, 14), 2, 3, 9, 92),
])
def test_shape_params_examples(A, k, r, M, delta):
    p = shape_params(GeneratorSet(A))
    assert (p.k, p.r, p.M, p.delta) == (k, r, M, delta)


def test_shape_params_rejects_impossible_pairs():
    with pytest.raises(InvalidArgs):
        shape_params_ln(5, 7)
    with pytest.raises(InvalidArgs):
        shape_params_ln(5, 2)


@given(st.integers(2, 200).flatmap(lambda l: st.tuples(st.just(l), st.integers(3, l + 1))))
def test_delta_bounds(pair):
    l, n = pair
    p = shape_params_ln(l, n)
    assert p.l - 1 == p.k * (n - 2) + p.r and 0 <= p.r <= n - 3
    assert p.delta >= 2
    assert p.delta > (1 - Fraction(1, p.k) - Fraction(1, n - 2)) * l * l


def test_structure_check_examples():
    v = structure_check(GeneratorSet((0, 3, 5)), 4)
    assert (v.holds, v.witness, v.gap_length, v.bound, v.tight) == (True, None, 10, 10, True)

    v = structure_check(HEAD_SET, 8)
    assert (v.holds, v.witness) == (False, 9)

    v = structure_check(GeneratorSet((0, 1, 2)), 1)
    assert v.holds and v.witness is None


@settings(max_examples=60)
@given(generator_sets(max_l=9), st.integers(1, 8))
def test_structure_check_matches_oracle(A, m):
    holds, witness, gap = structure_oracle(A.elements, m)
    try:
        v = structure_check(A, m)
    except TheoremViolation:
        pytest.fail("theorem violated")
    assert (v.holds, v.witness, v.gap_length) == (holds, witness, gap)


@given(generator_sets(max_l=14), st.integers(0, 3))
def test_theorem_above_threshold(A, extra):
    p = shape_params(A)
    v = structure_check(A, p.M + extra)
    assert v.holds and v.gap_length >= v.bound


@given(generator_sets(max_l=12), st.integers(1, 14))
def test_reflection_symmetry(A, m):
    a, b = structure_check(A, m), structure_check(reflect(A), m)
    assert a.holds == b.holds
    assert a.gap_length == b.gap_length


def test_violation_is_raised_not_returned():
    A = GeneratorSet((0, 3, 5))
    E, E2 = exceptional_set(A), exceptional_set(reflect(A))
    broken = m_fold(A, 4) - DenseSet.from_iterable([9], 20)
    with pytest.raises(TheoremViolation) as info:
        verdict_from(A, 4, broken, E, E2)
    assert info.value.counterexample["verdict"].witness == 9


@pytest.mark.parametrize("A,m,head,run,tail", [
    ((0, 3, 5), 4, [0, 3, 5, 6], (8, 16), [18, 20]),
    ((0, 1, 2), 2, [], (0, 4), []),
    ((0, 2, 4, 5, 6), 3, [0, 2], (4, 18), []),
])
def test_decompose_examples(A, m, head, run, tail):
    d = decompose(GeneratorSet(A), m)
    assert d.head.to_list() == head
    assert (d.run_lo, d.run_hi) == run
    assert d.tail.to_list() == tail


@given(generator_sets(max_l=12))
def test_decomposition_stable_in_m(A):
    p = shape_params(A)
    parts = [decompose(A, m) for m in range(p.M, p.M + 6)]
    assert len({tuple(d.head) for d in parts}) == 1
    assert len({tuple(d.tail_profile) for d in parts}) == 1
    for d in parts:
        assert d.union() == m_fold(A, d.m)
        assert d.run_lo <= d.run_hi


def test_decompose_below_threshold_skips_union():
    d = decompose(HEAD_SET, 8)
    assert d.union() != m_fold(HEAD_SET, 8)


def test_threshold_scan_examples():
    s = threshold_scan(GeneratorSet((0, 3, 5)), 6)
    assert all(v.holds for v in s.verdicts) and s.m0 == 1

    s = threshold_scan(HEAD_SET, 11)
    # m = 1..8 fail with witness m + 1; M = 14 - 7 + 2 = 9
    assert [v.witness for v in s.verdicts] == [2, 3, 4, 5, 6, 7, 8, 9, None, None, None]
    assert s.m0 == 9

    s = threshold_scan(GeneratorSet((0, 1, 2)), 3)
    assert s.m0 == 1 and len(s.verdicts) == 3

    with pytest.raises(InvalidArgs):
        threshold_scan(HEAD_SET, 5)


@pytest.mark.parametrize("l,d,expected,frob", [
    (6, 2, (0, 2, 4, 5, 6), 3),
    (9, 3, (0, 3, 6, 8, 9), 13),
    (4, 2, (0, 2, 3, 4), 1),
])
def test_lev_family_union(l, d, expected, frob):
    A = lev_family_union(l, d)
    assert A.elements == expected
    assert exceptional_set(A).frobenius == frob == union_family_prediction(l, d)["frobenius"]
    assert exceptional_set(reflect(A)).frobenius == -1
    p = shape_params(A)
    assert (A.n, p.k, p.r) == (l // d + 2, d - 1, A.n - 3)
    for m in range(p.M, p.M + 6):
        assert structure_check(A, m).tight


def test_lev_family_union_gap_value():
    v = structure_check(lev_family_union(6, 2), 3)
    assert (v.gap_length, v.bound) == (16, 16)


def test_lev_family_union_errors():
    with pytest.raises(NotDivisible):
        lev_family_union(10, 3)
    with pytest.raises(DegenerateFamily):
        lev_family_union(10, 1)
    with pytest.raises(DegenerateFamily):
        lev_family_union(10, 10)


@pytest.mark.parametrize("s,d,t,expected,frob", [
    (3, 2, 1, (0, 2, 3, 4, 5, 6), 1),
    (4, 2, 1, (0, 2, 4, 5, 6, 7, 8), 3),
    (5, 2, 2, (0, 2, 4, 5, 6, 7, 8, 9, 10), 3),
])
def test_lev_family_block(s, d, t, expected, frob):
    A = lev_family_block(s, d, t)
    assert A.elements == expected
    assert (A.l, A.n) == (s * d, s + t + 2)
    g = exceptional_set(A)
    assert g.frobenius == frob == block_family_prediction(s, d, t)["frobenius"]
    assert list(g.gaps) == gaps_brute([0, d, s * d - 1 - t * d], 4 * s * d * d)
    p = shape_params(A)
    assert p.k == d - 1
    for m in range(p.M, p.M + 6):
        assert structure_check(A, m).tight


def test_lev_family_block_first_example_numbers():
    v = structure_check(lev_family_block(3, 2, 1), 2)
    p = shape_params(lev_family_block(3, 2, 1))
    assert (p.M, p.delta, v.gap_length, v.bound) == (2, 6, 12, 12)


@pytest.mark.parametrize("s,d,t,needle", [
    (3, 2, 3, "t < s"),
    (5, 1, 1, "2 <= d"),
    (4, 3, 2, "d < s/t + 1"),
    (3, 4, 1, "d < s/t + 1"),
])
def test_lev_family_block_constraints(s, d, t, needle):
    with pytest.raises(ConstraintViolation, match=re.escape(needle)):
        lev_family_block(s, d, t)


def test_family_grids():
    assert (6, 2) in union_family_grid(12) and (6, 3) in union_family_grid(12)
    assert all(l % d == 0 and 2 <= d <= l // 2 for l, d in union_family_grid(60))
    grid = block_family_grid(60)
    assert all(s * d <= 60 and t < s and d * t < s + t and d >= 2 for s, d, t in grid)
    # brute-force the admissible triples
    brute = {(s, d, t) for s in range(1, 61) for d in range(2, 61) for t in range(1, 61)
             if s * d <= 60 and t < s and Fraction(d) < Fraction(s, t) + 1}
    assert set(grid) == brute
