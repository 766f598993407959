"""Graded polynomial models and the pairing/label checks built on them."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import bruteforce as bf
from howe_forge import weights as W
from howe_forge.errors import ShapeMismatch, TooLarge
from howe_forge.fock import (
    build_compact_model,
    build_oscillator_model,
    compact_multiplicities,
    expected_kv_labels,
    howe_stability_check,
    joint_highest_weight_vectors,
    strict_signed_pairs,
    verify_howe,
    verify_kv,
)


def frac_tuple(*vals):
    return tuple(Fraction(v) for v in vals)


# ---------------------------------------------------------------------------
# model construction, grading, and the generator matrices themselves


def test_compact_pieces_and_dimensions():
    model = build_compact_model(2, 2, 3)
    assert model.pieces() == [(0, 0), (1, 0), (2, 0), (3, 0)]
    for n in range(4):
        assert len(model.basis(n, 0)) == bf.monomial_count(4, n)


def test_oscillator_pieces_cover_the_bidegree_window():
    model = build_oscillator_model(2, 1, 1, 2)
    assert model.pieces() == [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (2, 0)]
    for p, q in model.pieces():
        assert len(model.basis(p, q)) == (
            bf.monomial_count(2, p) * bf.monomial_count(2, q))


def test_bad_parameters_rejected():
    with pytest.raises(ShapeMismatch):
        build_compact_model(0, 2, 2)
    with pytest.raises(ShapeMismatch):
        build_compact_model(2, 2, 2, convention="bogus")


def test_piece_cap_enforced():
    model = build_compact_model(3, 3, 6, validate=False, cap=100)
    with pytest.raises(TooLarge):
        model.basis(6, 0)


def test_weight_key_reads_rows_and_columns():
    model = build_compact_model(2, 2, 3)
    # x[0,0]^2: row weight (2, 0), column weight (2, 0), no y block
    assert model.weight_key((2, 0, 0, 0)) == ((2, 0), (2, 0), ())
    osc = build_oscillator_model(2, 1, 1, 2)
    # x[0,0]*y[1,0]: the y block counts against the row weight
    assert osc.weight_key((1, 0, 0, 1)) == ((1, -1), (1,), (1,))


def test_first_order_action_is_polarization():
    model = build_compact_model(1, 2, 2)
    b = model.basis(2, 0)
    # E[0,1] x[0,0]x[0,1] = x[0,0]^2  (one derivative, one multiplication)
    src = b.ordinal((1, 1, 0, 0)[: len(b.labels[0])])
    out = model.gl_m_op(0, 1, (2, 0)).apply({src: Fraction(1)})
    assert out == {b.ordinal((2, 0)): Fraction(1)}


def test_gl_k_twists_by_the_dual_on_the_y_block():
    osc = build_oscillator_model(2, 1, 1, 2)
    b = osc.basis(0, 1)
    assert b.labels == ((0, 0, 1, 0), (0, 0, 0, 1))
    op = osc.gl_k_op(0, 1, (0, 1))
    assert op.apply({0: Fraction(1)}) == {1: Fraction(-1)}
    assert op.apply({1: Fraction(1)}) == {}


def test_raiser_is_multiplication_by_the_pairing():
    osc = build_oscillator_model(2, 1, 1, 2)
    out = osc.raiser_op(0, 0, (0, 0)).apply({0: Fraction(1)})
    b = osc.basis(1, 1)
    assert out == {
        b.ordinal((1, 0, 1, 0)): Fraction(1),
        b.ordinal((0, 1, 0, 1)): Fraction(1),
    }


def test_lowerer_is_the_paired_second_derivative():
    osc = build_oscillator_model(2, 1, 1, 2)
    low = osc.lowerer_op(0, 0, (1, 1))
    b = osc.basis(1, 1)
    assert low.apply({b.ordinal((1, 0, 1, 0)): Fraction(1)}) == {0: Fraction(1)}
    assert low.apply({b.ordinal((1, 0, 0, 1)): Fraction(1)}) == {}


@pytest.mark.parametrize("convention", ["sq", "hf"])
def test_bracket_relations_hold_on_every_piece(convention):
    for k, M, N in [(1, 1, 1), (2, 1, 1), (1, 2, 1)]:
        model = build_oscillator_model(k, M, N, 2, convention=convention)
        for piece in model.pieces():
            assert model.action_set(piece).bracket_failures() == []
    model = build_compact_model(2, 2, 2, convention=convention)
    for piece in model.pieces():
        assert model.action_set(piece).bracket_failures() == []


@pytest.mark.parametrize("convention", ["sq", "hf"])
@pytest.mark.parametrize("k,M,N", [(2, 1, 1), (1, 2, 1)])
def test_lowerer_raiser_commutator(convention, k, M, N):
    """[L(a,b), R(c,d)] closes onto the middle algebras with no scalar
    left over, in either convention."""
    model = build_oscillator_model(k, M, N, 4, convention=convention)
    for a in range(M):
        for b in range(N):
            for c in range(M):
                for d in range(N):
                    lhs = (model.lowerer_op(a, b, (2, 2))
                           * model.raiser_op(c, d, (1, 1))
                           - model.raiser_op(c, d, (0, 0))
                           * model.lowerer_op(a, b, (1, 1)))
                    rhs = lhs.scaled(0)
                    if b == d:
                        rhs += model.gl_m_op(c, a, (1, 1))
                    if a == c:
                        rhs -= model.gl_n_op(b, d, (1, 1))
                    assert lhs == rhs


@pytest.mark.parametrize("convention", ["sq", "hf"])
def test_lower_after_raise_on_constants_counts_rank(convention):
    model = build_oscillator_model(2, 1, 1, 2, convention=convention)
    lr = model.lowerer_op(0, 0, (1, 1)) * model.raiser_op(0, 0, (0, 0))
    assert lr.apply({0: Fraction(1)}) == {0: Fraction(2)}


# ---------------------------------------------------------------------------
# joint highest weight vectors


def test_compact_highest_weights_pair_up():
    model = build_compact_model(2, 2, 3)
    hw = joint_highest_weight_vectors(model, (2, 0))
    got = sorted((h.k_weight, h.m_weight) for h in hw)
    assert got == [
        (frac_tuple(1, 1), frac_tuple(1, 1)),
        (frac_tuple(2, 0), frac_tuple(2, 0)),
    ]
    hw3 = joint_highest_weight_vectors(model, (3, 0))
    assert sorted(h.k_weight for h in hw3) == [frac_tuple(2, 1), frac_tuple(3, 0)]


def test_highest_weight_count_matches_raiser_nullity():
    """Independent count: stack all raising matrices densely and take the
    nullity with the naive eliminator."""
    model = build_compact_model(2, 2, 2)
    b = model.basis(2, 0)
    ops = [model.gl_k_op(0, 1, (2, 0)), model.gl_m_op(0, 1, (2, 0))]
    rows = []
    for col in range(len(b)):
        image = {}
        for t, op in enumerate(ops):
            for r, v in op.apply({col: Fraction(1)}).items():
                image[t * len(b) + r] = v
        rows.append(image)
    # transpose into equation rows: one equation per image coordinate
    nrows = 2 * len(b)
    dense = [[Fraction(0)] * len(b) for _ in range(nrows)]
    for col, image in enumerate(rows):
        for r, v in image.items():
            dense[r][col] = v
    nullity = bf.dense_nullity(dense, len(b))
    assert nullity == len(joint_highest_weight_vectors(model, (2, 0)))


@given(st.integers(min_value=1, max_value=3),
       st.integers(min_value=1, max_value=3),
       st.integers(min_value=0, max_value=3))
@settings(max_examples=25, deadline=None)
def test_highest_weight_count_is_partition_count(k, M, n):
    model = build_compact_model(k, M, max(n, 1), validate=False)
    hw = joint_highest_weight_vectors(model, (n, 0))
    assert len(hw) == len(list(W.partitions_of(n, max_rows=min(k, M))))
    for h in hw:
        # multiplicity-free pairing: the label on each side is the same
        label = tuple(int(x) for x in h.k_weight if x)
        assert tuple(int(x) for x in h.m_weight if x) == label


def test_oscillator_highest_weights_sq():
    model = build_oscillator_model(2, 1, 1, 2)
    seen = {}
    for piece in model.pieces():
        for h in joint_highest_weight_vectors(model, piece):
            seen[piece] = (h.k_weight, h.m_weight, h.n_weight)
    assert seen[(0, 0)] == (frac_tuple(0, 0), frac_tuple(2), frac_tuple(0))
    assert seen[(1, 1)] == (frac_tuple(1, -1), frac_tuple(3), frac_tuple(-1))
    assert seen[(0, 2)] == (frac_tuple(0, -2), frac_tuple(2), frac_tuple(-2))
    assert len(seen) == len(model.pieces())


def test_oscillator_highest_weights_hf():
    model = build_oscillator_model(2, 1, 1, 2, convention="hf")
    (h,) = joint_highest_weight_vectors(model, (0, 0))
    assert (h.k_weight, h.m_weight, h.n_weight) == (
        frac_tuple(0, 0), frac_tuple(1), frac_tuple(-1))
    (h,) = joint_highest_weight_vectors(model, (1, 1))
    assert (h.k_weight, h.m_weight, h.n_weight) == (
        frac_tuple(1, -1), frac_tuple(2), frac_tuple(-2))


def test_dropping_the_lowering_condition_adds_vectors():
    model = build_oscillator_model(2, 1, 1, 2)
    strict = joint_highest_weight_vectors(model, (1, 1))
    loose = joint_highest_weight_vectors(model, (1, 1), include_lowerers=False)
    assert len(strict) == 1 and len(loose) == 2
    assert frac_tuple(0, 0) in {h.k_weight for h in loose}


# ---------------------------------------------------------------------------
# duality verification reports


def test_compact_multiplicities_are_diagonal():
    model = build_compact_model(2, 2, 3)
    mults = compact_multiplicities(model, 3)
    assert mults == {
        ((3,), (3,)): 1,
        ((3,), (2, 1)): 0,
        ((2, 1), (3,)): 0,
        ((2, 1), (2, 1)): 1,
    }


def test_verify_howe_small_report():
    rep = verify_howe(2, 2, 3)
    assert rep.ok
    js = rep.to_json()
    assert [d["labels"] for d in js["degrees"]] == [
        [[]], [[1]], [[2], [1, 1]], [[3], [2, 1]]]
    assert [d["commutant"] for d in js["degrees"]] == [1, 1, 2, 2]
    for d in js["degrees"]:
        assert d["dim"] == bf.monomial_count(4, d["degree"])
        assert d["commutant_route"] == "matrix"


def test_verify_howe_dimension_factors_match_tableaux():
    rep = verify_howe(3, 2, 3).to_json()
    for degree in rep["degrees"]:
        for term in degree["cauchy"]["terms"]:
            shape = tuple(term["label"])
            assert term["dim_k"] == bf.count_ssyt(shape, 3)
            assert term["dim_M"] == bf.count_ssyt(shape, 2)


def test_labels_do_not_depend_on_the_rank_once_it_is_large():
    out = howe_stability_check(2, 3, 4)
    assert out["stable"]
    assert all(d["stable"] for d in out["details"])


def test_verify_kv_sq_small():
    rep = verify_kv(2, 1, 1, 3)
    assert rep.ok
    js = rep.to_json()
    by_bidegree = {tuple(d["bidegree"]): d for d in js["bidegrees"]}
    assert set(by_bidegree) == {(p, q) for p in range(4) for q in range(4)
                               if p + q <= 3}
    for d in js["bidegrees"]:
        assert d["unexplained"] == 0
        assert len(d["matches"]) == d["expected_count"]
        assert all(m["ok"] for m in d["matches"])
    vac = by_bidegree[(0, 0)]["matches"][0]
    assert vac["mn_weight_doubled"] == [4, 0]
    one = by_bidegree[(1, 1)]["matches"][0]
    assert one["mn_weight_doubled"] == [6, -2]
    assert one["uk_weight_doubled"] == [2, -2]


def test_verify_kv_hf_small():
    rep = verify_kv(2, 1, 1, 2, convention="hf")
    assert rep.ok
    js = rep.to_json()
    vac = [d for d in js["bidegrees"] if d["bidegree"] == [0, 0]][0]
    assert vac["matches"][0]["mn_weight_doubled"] == [2, -2]


def test_verify_kv_respects_the_rank_bound():
    # with rank 1 the two-row labels disappear and nothing is left over
    rep = verify_kv(1, 1, 1, 2)
    assert rep.ok
    js = rep.to_json()
    by_bidegree = {tuple(d["bidegree"]): d for d in js["bidegrees"]}
    assert by_bidegree[(1, 1)]["expected_count"] == 0
    assert by_bidegree[(1, 1)]["unexplained"] == 0


def test_expected_kv_labels_enumeration():
    assert expected_kv_labels(2, 1, 1, 2, 1) == [((2,), (1,))]
    assert expected_kv_labels(1, 1, 1, 1, 1) == []
    got = set(expected_kv_labels(3, 2, 1, 2, 1))
    want = set()
    for m in W.partitions_of(2, max_rows=2):
        for n in W.partitions_of(1, max_rows=1):
            if len(m) + len(n) <= 3:
                want.add((m + (0,) * (2 - len(m)), n))
    assert got == want


def test_strict_signed_pairs_are_strictly_decreasing():
    pairs = list(strict_signed_pairs(2, 1, 4))
    assert pairs
    assert len(pairs) == len(set(pairs))
    for m, n in pairs:
        assert all(v > 0 for v in m + n)
        assert all(a > b for a, b in zip(m, m[1:]))
        assert len(m) == 2 and len(n) == 1
        assert sum(m) <= 4 and sum(n) <= 4
