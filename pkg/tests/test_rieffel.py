"""Induced modules from finite-rank data: compact case and the graded
indefinite case, where emptiness is a value rather than an error."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import bruteforce as bf
from howe_forge import weights as W
from howe_forge.errors import ShapeMismatch, TooLarge
from howe_forge.rieffel import (
    build_inducing_irrep,
    degree_selection_check,
    induce_compact,
    induce_noncompact_graded,
)


def small_partitions(max_total, max_rows):
    opts = [()]
    for tot in range(1, max_total + 1):
        opts.extend(W.partitions_of(tot, max_rows=max_rows))
    return st.sampled_from(opts)


# ---------------------------------------------------------------------------
# the inducing irrep itself


@pytest.mark.parametrize("m,M", [
    ((), 2), ((1,), 2), ((2,), 2), ((1, 1), 2), ((2, 1), 2),
    ((2, 1), 3), ((3, 1), 3), ((1, 1, 1), 3),
])
def test_irrep_dimension_matches_tableau_count(m, M):
    ir = build_inducing_irrep(m, M)
    assert ir.dim == bf.count_ssyt(m, M)


def test_irrep_weights_and_gram():
    ir = build_inducing_irrep((2, 1), 2)
    assert ir.dim == 2
    assert sorted(ir.basis_weights) == [(1, 2), (2, 1)]
    assert ir.basis_weights[ir.highest_index] == (2, 1)
    g = ir.gram()
    assert g == [[Fraction(2), Fraction(0)], [Fraction(0), Fraction(2)]]


def test_trivial_irrep():
    ir = build_inducing_irrep((), 2)
    assert ir.dim == 1
    assert ir.basis_weights == [(0, 0)]
    assert ir.gram() == [[Fraction(1)]]


def test_irrep_action_satisfies_the_bracket():
    ir = build_inducing_irrep((2, 1), 2)

    def matmul(a, b):
        return [[sum(a[i][t] * b[t][j] for t in range(ir.dim))
                 for j in range(ir.dim)] for i in range(ir.dim)]

    def matsub(a, b):
        return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]

    e01, e10 = ir.action[(0, 1)], ir.action[(1, 0)]
    e00, e11 = ir.action[(0, 0)], ir.action[(1, 1)]
    assert matsub(matmul(e01, e10), matmul(e10, e01)) == matsub(e00, e11)


def test_irrep_diagonal_trace_counts_boxes():
    for m, M in [((2, 1), 2), ((2,), 3), ((1, 1), 3)]:
        ir = build_inducing_irrep(m, M)
        total = sum(ir.action[(a, a)][i][i] for a in range(M)
                    for i in range(ir.dim))
        assert total == sum(m) * ir.dim


# ---------------------------------------------------------------------------
# compact induction


def test_compact_module_frozen_example():
    mod = induce_compact(3, 2, (2, 1), cross_check=True)
    assert mod.dimension == 8
    assert mod.highest_weight == (2, 1, 0)
    assert mod.commutant == 1
    assert mod.gram_positive and mod.bracket_ok and not mod.empty


def test_compact_module_rank_one_inducing_data():
    mod = induce_compact(3, 1, (1,))
    assert mod.dimension == 3
    assert mod.highest_weight == (1, 0, 0)


def test_compact_module_empty_when_rank_is_too_small():
    mod = induce_compact(2, 3, (1, 1, 1))
    assert mod.empty
    assert mod.dimension == 0
    assert mod.highest_weight is None
    assert mod.commutant is None


def test_compact_module_json_round():
    js = induce_compact(2, 2, (2, 1)).to_json()
    assert js["dimension"] == 2
    assert js["highest_weight"] == ["2", "1"]
    assert js["commutant_dim"] == 1
    assert js["empty"] is False and js["reason"] is None
    assert js["inputs"] == {"M": 2, "k": 2, "m": [2, 1]}


@given(st.integers(min_value=1, max_value=3),
       st.integers(min_value=1, max_value=2),
       st.data())
@settings(max_examples=15, deadline=None)
def test_compact_dimension_is_the_stable_branching_count(k, M, data):
    m = data.draw(small_partitions(3, M))
    mod = induce_compact(k, M, m)
    assert mod.dimension == W.weyl_dim(m, k)
    if mod.dimension:
        assert mod.highest_weight == m + (0,) * (k - len(m))
        assert mod.commutant == 1
        assert mod.gram_positive and mod.bracket_ok


@pytest.mark.parametrize("k,M,m,n_wrong", [
    (3, 2, (2, 1), 2), (3, 2, (2, 1), 4), (2, 2, (2,), 1), (2, 1, (), 1),
])
def test_degree_selection_only_hits_the_matching_degree(k, M, m, n_wrong):
    out = degree_selection_check(k, M, m, n_wrong)
    assert out["ok"] and out["dimension"] == 0


# ---------------------------------------------------------------------------
# graded indefinite induction


def test_noncompact_frozen_example():
    mod = induce_noncompact_graded(3, 1, 1, (4, -1), 4)
    assert mod.dimension == 8
    assert mod.highest_weight == (1, 0, -1)
    assert mod.commutant == 1
    assert mod.gram_positive and mod.bracket_ok


def test_noncompact_dimension_matches_signed_label():
    mod = induce_noncompact_graded(2, 1, 1, (4, -2), 6)
    hw = W.SignedWeight((2,), (2,)).realize(2)
    assert mod.highest_weight == hw
    assert mod.dimension == W.signed_weight_dim(hw, 2) == 5


def test_noncompact_json_fields():
    js = induce_noncompact_graded(2, 1, 1, (3, -1), 6).to_json()
    assert js["dimension"] == 3
    assert js["highest_weight"] == ["1", "-1"]
    assert js["inputs"] == {"M": 1, "N": 1, "k": 2, "weight": "(3, -1)"}
    assert js["gram_positive"] and js["bracket_ok"]


def test_noncompact_weight_length_checked():
    with pytest.raises(ShapeMismatch):
        induce_noncompact_graded(3, 1, 1, (2, -1, 0), 4)


def test_noncompact_window_overflow():
    with pytest.raises(TooLarge):
        induce_noncompact_graded(2, 1, 1, (6, -3), 4)


@pytest.mark.parametrize("k,M,N,weight,reason", [
    (2, 1, 1, (0, 0), "entry below the rank: 0 < 2"),
    (2, 1, 1, (1, -3), "entry below the rank: 1 < 2"),
    (2, 1, 1, (5, 4), "negative block entry matches no label"),
    (2, 2, 1, (2, 3, -1), "weight blocks are not dominant"),
    (1, 1, 1, (3, -1), "label needs 2 rows, rank is 1"),
    (2, 1, 1, (Fraction(5, 2), Fraction(-3, 2)),
     "half-integer entries match no quantized label"),
])
def test_emptiness_is_a_value_with_a_reason(k, M, N, weight, reason):
    out = induce_noncompact_graded(k, M, N, weight, 4)
    assert out.empty
    assert out.dimension == 0
    assert out.reason == reason
    js = out.to_json()
    assert js["empty"] is True and js["reason"] == reason
    assert js["dimension"] == 0


def test_label_collision_weight_is_nonempty():
    """(2, 2, -2) is simultaneously a shifted two-block label and the
    realization of the one-sided label n = (2); the graded space at that
    weight is the nonempty module belonging to the latter."""
    shifted = W.renormalize_weight(W.SignedWeight((2, 1), (1,)), 2, 1)
    assert shifted.entries == (2, 2, -2)
    mod = induce_noncompact_graded(2, 2, 1, (2, 2, -2), 4)
    assert not mod.empty
    assert mod.dimension == 3
    assert mod.highest_weight == (0, -2)
    assert mod.highest_weight == W.SignedWeight((), (2,)).realize(2)


@given(st.integers(min_value=1, max_value=3),
       st.integers(min_value=0, max_value=3),
       st.integers(min_value=0, max_value=2))
@settings(max_examples=15, deadline=None)
def test_noncompact_rank_one_pairs_realize_their_label(k, a, b):
    weight = (a + k, -b)
    mod = induce_noncompact_graded(k, 1, 1, weight, a + b)
    if len([v for v in (a, b) if v]) > k:
        assert mod.empty
        return
    label = W.SignedWeight((a,) if a else (), (b,) if b else ())
    assert mod.dimension == W.signed_weight_dim(label.realize(k), k)
    assert mod.highest_weight == label.realize(k)
    assert mod.gram_positive
