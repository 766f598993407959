"""Floating-point checks of the matrix phase space behind the algebra.

The phase space is the set of complex k x (M+N) matrices: column a is a
vector psi_a in C^k, and the first M columns count positively while the
last N count negatively (the signature matrix eta = diag(1_M, -1_N)).
Two momentum maps live here: a right one eta * (psi^dagger psi) valued in
(M+N) x (M+N) matrices, and a left one psi * eta * psi^dagger valued in
k x k Hermitian matrices.  On a frame of orthogonal columns with squared
norms read off a two-block weight, the right map is the diagonal target
matrix and the left map has the realized weight vector as its spectrum.

Everything here is float64 with a global default tolerance; samples are
seeded and the seed travels with the point so reports are reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import expm

from . import weights as W
from .errors import BadWeight, RankTooSmall, ShapeMismatch

DEFAULT_TOL = 1e-9


def eta_matrix(M: int, N: int) -> np.ndarray:
    """Signature matrix diag(1_M, -1_N)."""
    return np.diag(np.concatenate([np.ones(M), -np.ones(N)]))


@dataclass
class ConstrainedPoint:
    """A point of the matrix phase space, with its signature and the
    two-block weight it is meant to sit over."""

    psi: np.ndarray
    signature: tuple[int, int]
    target: W.SignedWeight
    seed: int | None = None

    def __post_init__(self):
        self.psi = np.asarray(self.psi, dtype=complex)
        if self.psi.ndim != 2:
            raise ShapeMismatch(f"psi must be a matrix, got ndim={self.psi.ndim}")
        M, N = self.signature
        if self.psi.shape[1] != M + N:
            raise ShapeMismatch(
                f"psi has {self.psi.shape[1]} columns, signature needs {M + N}")

    @property
    def k(self) -> int:
        return self.psi.shape[0]

    @property
    def eta(self) -> np.ndarray:
        return eta_matrix(*self.signature)


@dataclass
class OrbitElement:
    """A k x k Hermitian matrix with the tolerance it was produced under."""

    rho: np.ndarray
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        self.rho = np.asarray(self.rho, dtype=complex)
        if self.rho.ndim != 2 or self.rho.shape[0] != self.rho.shape[1]:
            raise ShapeMismatch(f"rho must be square, got shape {self.rho.shape}")

    def is_hermitian(self) -> bool:
        return bool(np.max(np.abs(self.rho - self.rho.conj().T), initial=0.0)
                    <= self.tol)

    def spectrum(self) -> np.ndarray:
        """Eigenvalues, sorted descending."""
        return np.linalg.eigvalsh(self.rho)[::-1]

    def trace(self) -> float:
        return float(np.trace(self.rho).real)


def signed_pairing(psi: np.ndarray, phi: np.ndarray, signature) -> complex:
    """The signed sesquilinear form: sum_a eta_a <psi_a, phi_a>,
    conjugate-linear in the second argument."""
    if psi.shape != phi.shape:
        raise ShapeMismatch(f"shapes differ: {psi.shape} vs {phi.shape}")
    return complex(np.trace(eta_matrix(*signature) @ phi.conj().T @ psi))


def symplectic_form(p: ConstrainedPoint, q: ConstrainedPoint) -> float:
    """-2 Im of the signed pairing; antisymmetric and real bilinear."""
    if p.signature != q.signature:
        raise ShapeMismatch(
            f"signatures differ: {p.signature} vs {q.signature}")
    return -2.0 * signed_pairing(p.psi, q.psi, p.signature).imag


def moment_right(p: ConstrainedPoint) -> np.ndarray:
    """eta * Gram matrix of the columns; diagonal on a level-set frame."""
    return p.eta @ p.psi.conj().T @ p.psi


def moment_left(p: ConstrainedPoint, tol: float = DEFAULT_TOL) -> OrbitElement:
    """psi * eta * psi^dagger, the signed sum of column projectors."""
    return OrbitElement(p.psi @ p.eta @ p.psi.conj().T, tol)


def target_matrix(w: W.SignedWeight, M: int, N: int) -> np.ndarray:
    """diag(m_1..m_M, -n_N..-n_1): the prescribed right-map value."""
    diag = list(w.m[:M]) + [-x for x in reversed(w.n[:N])]
    return np.diag(np.asarray(diag, dtype=float))


def target_spectrum(w: W.SignedWeight, k: int) -> np.ndarray:
    """The realized weight vector as a descending float array."""
    return np.asarray(w.realize(k), dtype=float)


def _normalize_weight(w) -> W.SignedWeight:
    if isinstance(w, W.SignedWeight):
        return w
    m, n = w
    return W.SignedWeight(tuple(m), tuple(n))


def sample_level_set(w, k: int, seed: int = 0) -> ConstrainedPoint:
    """Seeded random frame of mutually orthogonal columns with squared
    norms m_1..m_M, n_N..n_1 (in that column order)."""
    w = _normalize_weight(w)
    M, N = len(w.m), len(w.n)
    if k < M + N:
        raise RankTooSmall(f"need {M + N} orthogonal columns, rank is {k}")
    entries = w.m + w.n
    if any(x <= 0 for x in entries):
        raise BadWeight(f"level-set norms must be positive, got {entries}")
    rng = np.random.default_rng(seed)
    raw = rng.standard_normal((k, M + N)) + 1j * rng.standard_normal((k, M + N))
    # modified Gram-Schmidt, then rescale to the prescribed norms
    for a in range(M + N):
        for b in range(a):
            raw[:, a] -= (raw[:, b].conj() @ raw[:, a]) * raw[:, b]
        norm = np.linalg.norm(raw[:, a])
        if norm < 1e-12:
            raise BadWeight("degenerate random frame; retry with another seed")
        raw[:, a] /= norm
    norms = [math.sqrt(x) for x in w.m] + [math.sqrt(x) for x in reversed(w.n)]
    psi = raw * np.asarray(norms)
    return ConstrainedPoint(psi, (M, N), w, seed)


# ---------------------------------------------------------------------------
# group elements


def random_hermitian(n: int, rng: np.random.Generator) -> np.ndarray:
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return (a + a.conj().T) / 2


def random_unitary(k: int, rng: np.random.Generator) -> np.ndarray:
    return expm(1j * random_hermitian(k, rng))


def random_pseudo_unitary(M: int, N: int,
                          rng: np.random.Generator) -> np.ndarray:
    """exp(i eta H) with H Hermitian preserves the signed form."""
    return expm(1j * eta_matrix(M, N) @ random_hermitian(M + N, rng) / 2)


def boost(M: int, N: int, rapidity: float) -> np.ndarray:
    """A pseudo-unitary mixing the first positive and first negative slot;
    genuinely non-unitary for rapidity != 0."""
    if N == 0:
        raise ShapeMismatch("a boost needs a negative slot")
    h = np.zeros((M + N, M + N), dtype=complex)
    h[0, M] = h[M, 0] = 1.0
    return expm(1j * rapidity * eta_matrix(M, N) @ h)


def is_pseudo_unitary(U: np.ndarray, M: int, N: int,
                      tol: float = DEFAULT_TOL) -> bool:
    eta = eta_matrix(M, N)
    return bool(np.max(np.abs(U @ eta @ U.conj().T - eta), initial=0.0) <= tol)


def stabilizer_defect(p: ConstrainedPoint, U: np.ndarray,
                      tol: float = DEFAULT_TOL) -> float:
    """Frobenius distance the right action of U moves the point; zero only
    for the identity once the frame norms are pinned."""
    M, N = p.signature
    if not is_pseudo_unitary(U, M, N, tol):
        raise ShapeMismatch(f"matrix is not pseudo-unitary for {p.signature}")
    return float(np.linalg.norm(p.psi @ U - p.psi))


# ---------------------------------------------------------------------------
# checks and the per-sample report


def pairing_deviation(p: ConstrainedPoint, samples: int = 100,
                      rng: np.random.Generator | None = None) -> float:
    """Both momentum maps against their defining pairings on random
    generators: i*(psi X, psi)_S vs i*tr(X G) on the right, and
    i*(Y psi, psi)_S vs i*tr(Y rho) on the left."""
    if rng is None:
        rng = np.random.default_rng(p.seed or 0)
    M, N = p.signature
    eta = p.eta
    G = moment_right(p)
    rho = moment_left(p).rho
    worst = 0.0
    for _ in range(samples):
        X = 1j * eta @ random_hermitian(M + N, rng)
        lhs = 1j * signed_pairing(p.psi @ X, p.psi, p.signature)
        rhs = 1j * np.trace(X @ G)
        worst = max(worst, abs(lhs - rhs))
        Y = 1j * random_hermitian(p.k, rng)
        lhs = 1j * signed_pairing(Y @ p.psi, p.psi, p.signature)
        rhs = 1j * np.trace(Y @ rho)
        worst = max(worst, abs(lhs - rhs))
    return worst


def invariance_deviation(p: ConstrainedPoint, samples: int = 10,
                         rng: np.random.Generator | None = None) -> float:
    """Left unitaries fix the right map and the left spectrum; right
    pseudo-unitaries fix the left map."""
    if rng is None:
        rng = np.random.default_rng(p.seed or 0)
    M, N = p.signature
    G = moment_right(p)
    rho = moment_left(p)
    spec = rho.spectrum()
    worst = 0.0
    for _ in range(samples):
        g = random_unitary(p.k, rng)
        moved = ConstrainedPoint(g @ p.psi, p.signature, p.target)
        worst = max(worst, float(np.max(np.abs(moment_right(moved) - G),
                                        initial=0.0)))
        worst = max(worst, float(np.max(np.abs(moment_left(moved).spectrum()
                                               - spec), initial=0.0)))
        if M + N:
            U = random_pseudo_unitary(M, N, rng)
            moved = ConstrainedPoint(p.psi @ U, p.signature, p.target)
            worst = max(worst, float(np.max(np.abs(moment_left(moved).rho
                                                   - rho.rho), initial=0.0)))
    return worst


def stabilizer_ok(p: ConstrainedPoint, tol: float = DEFAULT_TOL) -> bool:
    """The right action moves every level-set point unless the element is
    the identity: zero defect at the identity, and phase/boost elements
    produce a defect bounded below by the smallest frame norm."""
    M, N = p.signature
    if stabilizer_defect(p, np.eye(M + N), tol) > tol:
        return False
    if M + N == 0:
        return True
    theta = 0.3
    U = np.eye(M + N, dtype=complex)
    U[0, 0] = np.exp(1j * theta)
    min_norm = math.sqrt(min(p.target.m + p.target.n))
    if stabilizer_defect(p, U, tol) < abs(np.exp(1j * theta) - 1) * min_norm - tol:
        return False
    if N:
        if stabilizer_defect(p, boost(M, N, 0.5), tol) <= 1e-6:
            return False
    return True


def verify_orbit(p: ConstrainedPoint, tol: float = DEFAULT_TOL,
                 pairing_samples: int = 100,
                 rng: np.random.Generator | None = None) -> dict:
    """Spectrum of the left map against the realized weight vector, plus
    the pairing, invariance, and stabilizer checks, as one JSON report."""
    if rng is None:
        rng = np.random.default_rng(p.seed or 0)
    spec = moment_left(p, tol).spectrum()
    want = target_spectrum(p.target, p.k)
    max_dev = float(np.max(np.abs(spec - want), initial=0.0))
    right_dev = float(np.max(np.abs(moment_right(p)
                                    - target_matrix(p.target, *p.signature)),
                             initial=0.0))
    return {
        "weight": {"m": list(p.target.m), "n": list(p.target.n)},
        "k": p.k,
        "seed": p.seed,
        "spectrum": [float(x) for x in spec],
        "max_dev": max(max_dev, right_dev),
        "checks": {
            "pairing": bool(pairing_deviation(p, pairing_samples, rng) <= tol),
            "invariance": bool(invariance_deviation(p, rng=rng) <= tol),
            "stabilizer": stabilizer_ok(p, tol),
        },
    }


def orbit_grid_report(weights, ks, seeds, tol: float = DEFAULT_TOL) -> dict:
    """verify_orbit over a grid; ok only if every cell passes every check
    within tolerance."""
    reports = []
    ok = True
    for w in weights:
        w = _normalize_weight(w)
        rows = len(w.m) + len(w.n)
        for k in ks:
            if k < rows:
                continue
            for seed in seeds:
                rep = verify_orbit(sample_level_set(w, k, seed), tol)
                rep["ok"] = rep["max_dev"] <= tol and all(rep["checks"].values())
                ok = ok and rep["ok"]
                reports.append(rep)
    return {"tol": tol, "ok": ok, "cells": reports}
