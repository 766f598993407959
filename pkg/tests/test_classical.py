"""Momentum maps, level-set frames, and orbit spectra in float64."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from howe_forge import classical as C
from howe_forge import weights as W
from howe_forge.errors import BadWeight, RankTooSmall, ShapeMismatch

TOL = 1e-9

seeds = st.integers(min_value=0, max_value=10_000)


def point(mat, M, N, m=(), n=()):
    return C.ConstrainedPoint(np.asarray(mat, dtype=complex), (M, N),
                              W.SignedWeight(tuple(m), tuple(n)))


# ---------------------------------------------------------------------------
# the symplectic form


def test_symplectic_form_frozen_value():
    p = point([[1.0]], 1, 0, m=(1,))
    q = point([[1j]], 1, 0, m=(1,))
    assert C.symplectic_form(p, q) == pytest.approx(2.0)
    assert C.symplectic_form(p, p) == pytest.approx(0.0)


def test_symplectic_form_sign_flips_with_the_slot():
    a, b = [[1.0, 0.0]], [[1j, 0.0]]
    plus = C.symplectic_form(point(a, 2, 0, m=(1, 1)),
                             point(b, 2, 0, m=(1, 1)))
    minus = C.symplectic_form(point([[0.0, 1.0]], 1, 1, m=(1,), n=(1,)),
                              point([[0.0, 1j]], 1, 1, m=(1,), n=(1,)))
    assert plus == pytest.approx(2.0)
    assert minus == pytest.approx(-2.0)


@given(seeds)
@settings(max_examples=25, deadline=None)
def test_symplectic_form_antisymmetric(seed):
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((3, 2)) + 1j * rng.standard_normal((3, 2))
    b = rng.standard_normal((3, 2)) + 1j * rng.standard_normal((3, 2))
    p = point(a, 1, 1, m=(1,), n=(1,))
    q = point(b, 1, 1, m=(1,), n=(1,))
    assert C.symplectic_form(p, q) == pytest.approx(-C.symplectic_form(q, p))


def test_symplectic_form_signature_mismatch():
    with pytest.raises(ShapeMismatch):
        C.symplectic_form(point([[1.0]], 1, 0, m=(1,)),
                          point([[1.0]], 0, 1, n=(1,)))


# ---------------------------------------------------------------------------
# momentum maps


def test_moment_right_vanishes_at_zero():
    p = point(np.zeros((3, 2)), 1, 1, m=(1,), n=(1,))
    assert np.allclose(C.moment_right(p), 0.0)


def test_moment_right_is_the_target_on_a_level_set():
    p = C.sample_level_set(((2,), (1,)), 3, seed=7)
    assert np.max(np.abs(C.moment_right(p) - np.diag([2.0, -1.0]))) < TOL


def test_moment_left_rank_one_projector():
    psi = np.zeros((3, 1), dtype=complex)
    psi[0, 0] = 1.0
    rho = C.moment_left(point(psi, 1, 0, m=(1,)))
    assert rho.is_hermitian()
    assert np.allclose(rho.spectrum(), [1.0, 0.0, 0.0])


def test_moment_left_signed_projector_spectrum():
    psi = np.zeros((4, 2), dtype=complex)
    psi[0, 0] = math.sqrt(2)
    psi[1, 1] = 1.0
    rho = C.moment_left(point(psi, 1, 1, m=(2,), n=(1,)))
    assert np.allclose(rho.spectrum(), [2.0, 0.0, 0.0, -1.0])
    assert rho.trace() == pytest.approx(1.0)


@given(seeds)
@settings(max_examples=15, deadline=None)
def test_momentum_pairings_hold(seed):
    p = C.sample_level_set(((2, 1), (1,)), 4, seed=seed)
    assert C.pairing_deviation(p, samples=20) < TOL


@given(seeds)
@settings(max_examples=10, deadline=None)
def test_momentum_invariance(seed):
    p = C.sample_level_set(((2,), (1,)), 3, seed=seed)
    assert C.invariance_deviation(p, samples=4) < TOL


def test_left_spectrum_is_equivariant_under_the_left_action():
    p = C.sample_level_set(((2, 1), (1,)), 5, seed=11)
    g = C.random_unitary(5, np.random.default_rng(3))
    moved = C.ConstrainedPoint(g @ p.psi, p.signature, p.target)
    assert np.max(np.abs(C.moment_left(moved).spectrum()
                         - C.moment_left(p).spectrum())) < TOL


# ---------------------------------------------------------------------------
# level-set sampling


def test_sample_level_set_scalar_case():
    p = C.sample_level_set(((1,), ()), 1, seed=5)
    assert p.psi.shape == (1, 1)
    assert abs(abs(p.psi[0, 0]) - 1.0) < TOL
    assert np.allclose(C.moment_right(p), [[1.0]])


def test_sample_level_set_is_deterministic():
    a = C.sample_level_set(((2, 1), (1,)), 4, seed=7)
    b = C.sample_level_set(((2, 1), (1,)), 4, seed=7)
    c = C.sample_level_set(((2, 1), (1,)), 4, seed=8)
    assert np.array_equal(a.psi, b.psi)
    assert not np.array_equal(a.psi, c.psi)
    assert a.seed == 7


@given(seeds)
@settings(max_examples=15, deadline=None)
def test_sampled_columns_are_an_orthogonal_frame(seed):
    w = W.SignedWeight((3, 1), (2,))
    p = C.sample_level_set(w, 5, seed=seed)
    gram = p.psi.conj().T @ p.psi
    assert np.max(np.abs(gram - np.diag([3.0, 1.0, 2.0]))) < TOL


def test_sample_level_set_errors():
    with pytest.raises(RankTooSmall):
        C.sample_level_set(((1,), (1,)), 1, seed=0)
    with pytest.raises(BadWeight):
        C.sample_level_set(((1, 0), ()), 3, seed=0)


# ---------------------------------------------------------------------------
# orbit verification and the stabilizer


def test_verify_orbit_report_shape_and_spectrum():
    p = C.sample_level_set(((2, 1), (1,)), 5, seed=7)
    rep = C.verify_orbit(p)
    assert set(rep) == {"weight", "k", "seed", "spectrum", "max_dev", "checks"}
    assert rep["weight"] == {"m": [2, 1], "n": [1]}
    assert rep["k"] == 5 and rep["seed"] == 7
    assert np.allclose(rep["spectrum"], [2.0, 1.0, 0.0, 0.0, -1.0])
    assert rep["max_dev"] < TOL
    assert rep["checks"] == {"pairing": True, "invariance": True,
                             "stabilizer": True}


def test_verify_orbit_handles_degenerate_weights():
    rep = C.verify_orbit(C.sample_level_set(((2, 2), (1,)), 4, seed=3))
    assert rep["max_dev"] < TOL
    assert all(rep["checks"].values())


def test_stabilizer_defect_identity_and_phase():
    p = C.sample_level_set(((2,), (1,)), 3, seed=7)
    assert C.stabilizer_defect(p, np.eye(2)) == pytest.approx(0.0)
    theta = 0.3
    U = np.diag([np.exp(1j * theta), 1.0])
    bound = abs(np.exp(1j * theta) - 1) * math.sqrt(1.0)
    assert C.stabilizer_defect(p, U) >= bound - TOL


def test_stabilizer_defect_boost_is_positive():
    p = C.sample_level_set(((2,), (1,)), 3, seed=7)
    assert C.stabilizer_defect(p, C.boost(1, 1, 0.5)) > 0.1


def test_stabilizer_defect_rejects_non_pseudo_unitary():
    p = C.sample_level_set(((2,), (1,)), 3, seed=7)
    with pytest.raises(ShapeMismatch):
        C.stabilizer_defect(p, np.diag([1.0, 2.0]))


def test_boost_needs_a_negative_slot():
    with pytest.raises(ShapeMismatch):
        C.boost(2, 0, 0.5)


def test_pseudo_unitary_samples_preserve_the_form():
    rng = np.random.default_rng(0)
    for _ in range(5):
        U = C.random_pseudo_unitary(2, 1, rng)
        assert C.is_pseudo_unitary(U, 2, 1)
        assert not C.is_pseudo_unitary(U + 0.01, 2, 1)


def test_orbit_grid_report_small():
    out = C.orbit_grid_report([((1,), ()), ((1,), (1,))], [2, 3], [0, 1])
    assert out["ok"]
    assert len(out["cells"]) == 8
    assert all(c["ok"] for c in out["cells"])
