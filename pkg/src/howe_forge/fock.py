"""Graded polynomial models with commuting Lie-algebra actions.

The compact model is the polynomial algebra on a k x M matrix of
variables x[i,a]; gl(k) acts along rows, gl(M) along columns, and both
actions are built here as exact sparse operators on each graded piece.

The indefinite (oscillator) model adjoins a k x N block y[i,b].  The
gl(k) action twists by the dual on the y block; the middle-algebra
blocks gl(M), gl(N) stay first-order, while the off-diagonal blocks act
by multiplication (raisers, bidegree (+1,+1)) and by second-order
differentiation (lowerers, bidegree (-1,-1)).

Convention constants ("sq" plain, "hf" symmetrized) are fixed here once
and validated downstream against the expected label shifts; they are the
only free normalization in the whole module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from . import weights as W
from .errors import ShapeMismatch, TooLarge
from .tensor import ExactOperator, IndexedBasis, kernel_basis, commutant_dim

DEFAULT_PIECE_CAP = 20_000
DEFAULT_COMMUTANT_UNKNOWN_CAP = 2_000


def _convention_constants(k: int, M: int, N: int, convention: str):
    """Scalar parts of the diagonal generators.

    hf uses the symmetrized ordering (x d/dx + d/dx x)/2 on every block,
    which contributes M/2, k/2, -k/2 (for N=0: M/2 and k/2).  sq drops
    the symmetrization on the k side and twists the middle algebra by a
    half determinant power, giving 0, k, 0.
    """
    if convention == "sq":
        return (Fraction(0), Fraction(k if N else 0), Fraction(0))
    if convention == "hf":
        return (Fraction(M - N, 2), Fraction(k, 2), Fraction(-k, 2))
    raise ShapeMismatch(f"unknown convention {convention!r}")


@dataclass
class LieActionSet:
    """Generator matrices on one graded piece (and off it, for the
    bidegree-shifting blocks)."""

    piece: tuple[int, int]
    gl_k: dict[tuple[int, int], ExactOperator]
    gl_m: dict[tuple[int, int], ExactOperator]
    gl_n: dict[tuple[int, int], ExactOperator]
    raisers: dict[tuple[int, int], ExactOperator]
    lowerers: dict[tuple[int, int], ExactOperator]

    def bracket_failures(self) -> list[str]:
        """Exact check of the gl relations and cross-commutation on this
        piece.  Returns human-readable labels of failing pairs."""
        bad: list[str] = []

        def expect(name, got, want):
            if got != want:
                bad.append(name)

        for (fam, ops) in (("k", self.gl_k), ("m", self.gl_m), ("n", self.gl_n)):
            for (i, j), a in ops.items():
                for (l, m_), b in ops.items():
                    lhs = a * b - b * a
                    rhs = ExactOperator.zero(a.domain, a.codomain)
                    if j == l:
                        rhs += ops[(i, m_)]
                    if m_ == i:
                        rhs -= ops[(l, j)]
                    expect(f"gl({fam})[{i}{j},{l}{m_}]", lhs, rhs)
        for (i, j), a in self.gl_k.items():
            for fam, ops in (("m", self.gl_m), ("n", self.gl_n)):
                for key, b in ops.items():
                    lhs = a * b - b * a
                    if not lhs.is_zero():
                        bad.append(f"cross k{i}{j} vs {fam}{key}")
        return bad


@dataclass
class FockModel:
    """Polynomial model with exact generator matrices per graded piece."""

    k: int
    M: int
    N: int
    degree: int
    convention: str
    cap: int = DEFAULT_PIECE_CAP
    c_k: Fraction = field(init=False)
    c_m: Fraction = field(init=False)
    c_n: Fraction = field(init=False)
    _bases: dict = field(default_factory=dict, repr=False)
    _actions: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.k <= 0 or self.M <= 0 or self.N < 0 or self.degree < 0:
            raise ShapeMismatch(
                f"bad model parameters k={self.k}, M={self.M}, N={self.N}")
        self.c_k, self.c_m, self.c_n = _convention_constants(
            self.k, self.M, self.N, self.convention)

    # variable layout -------------------------------------------------------

    @property
    def nxvars(self) -> int:
        return self.k * self.M

    @property
    def nyvars(self) -> int:
        return self.k * self.N

    def xvar(self, i: int, a: int) -> int:
        return i * self.M + a

    def yvar(self, i: int, b: int) -> int:
        return self.nxvars + i * self.N + b

    # bases ------------------------------------------------------------------

    def basis(self, p: int, q: int) -> IndexedBasis:
        key = (p, q)
        if key not in self._bases:
            if self.N == 0 and q != 0:
                raise ShapeMismatch("compact model has no y grading")
            xb = IndexedBasis.monomials(self.nxvars, p, cap=self.cap)
            if self.N == 0:
                self._bases[key] = IndexedBasis(
                    xb.labels, name=f"F({self.k},{self.M})_{p}")
            else:
                yb = IndexedBasis.monomials(self.nyvars, q, cap=self.cap)
                if len(xb) * len(yb) > self.cap:
                    raise TooLarge(
                        f"bidegree {key} needs {len(xb) * len(yb)} monomials")
                self._bases[key] = IndexedBasis(
                    (lx + ly for lx in xb.labels for ly in yb.labels),
                    name=f"F({self.k},{self.M},{self.N})_{p},{q}")
        return self._bases[key]

    def pieces(self) -> list[tuple[int, int]]:
        if self.N == 0:
            return [(n, 0) for n in range(self.degree + 1)]
        return [
            (p, q)
            for p in range(self.degree + 1)
            for q in range(self.degree + 1 - p)
        ]

    # operators --------------------------------------------------------------

    def _first_order(self, piece, terms, const=Fraction(0)) -> ExactOperator:
        """sum of coeff * x_u d/d x_v plus a scalar, within one piece."""
        b = self.basis(*piece)
        op = ExactOperator(b, b)
        if const:
            for i in range(len(b)):
                op.data[(i, i)] = const
        for col, lab in enumerate(b.labels):
            for coeff, u, v in terms:
                e = lab[v]
                if e:
                    tgt = list(lab)
                    tgt[v] -= 1
                    tgt[u] += 1
                    op.add_entry(b.ordinal(tuple(tgt)), col, coeff * e)
        return op

    def gl_k_op(self, i: int, j: int, piece) -> ExactOperator:
        key = ("k", i, j, piece)
        if key not in self._actions:
            terms = [(Fraction(1), self.xvar(i, a), self.xvar(j, a))
                     for a in range(self.M)]
            terms += [(Fraction(-1), self.yvar(j, b), self.yvar(i, b))
                      for b in range(self.N)]
            self._actions[key] = self._first_order(
                piece, terms, self.c_k if i == j else Fraction(0))
        return self._actions[key]

    def gl_m_op(self, a: int, b: int, piece) -> ExactOperator:
        key = ("m", a, b, piece)
        if key not in self._actions:
            terms = [(Fraction(1), self.xvar(i, a), self.xvar(i, b))
                     for i in range(self.k)]
            self._actions[key] = self._first_order(
                piece, terms, self.c_m if a == b else Fraction(0))
        return self._actions[key]

    def gl_n_op(self, b: int, c: int, piece) -> ExactOperator:
        key = ("n", b, c, piece)
        if key not in self._actions:
            terms = [(Fraction(-1), self.yvar(i, c), self.yvar(i, b))
                     for i in range(self.k)]
            self._actions[key] = self._first_order(
                piece, terms, self.c_n if b == c else Fraction(0))
        return self._actions[key]

    def raiser_op(self, a: int, b: int, piece) -> ExactOperator:
        """Multiplication by sum_i x[i,a] y[i,b]; maps into (p+1, q+1)."""
        p, q = piece
        dom = self.basis(p, q)
        cod = self.basis(p + 1, q + 1)
        op = ExactOperator(dom, cod)
        for col, lab in enumerate(dom.labels):
            for i in range(self.k):
                tgt = list(lab)
                tgt[self.xvar(i, a)] += 1
                tgt[self.yvar(i, b)] += 1
                op.add_entry(cod.ordinal(tuple(tgt)), col, 1)
        return op

    def lowerer_op(self, a: int, b: int, piece) -> ExactOperator:
        """sum_i d2/(dx[i,a] dy[i,b]); maps into (p-1, q-1)."""
        p, q = piece
        dom = self.basis(p, q)
        cod = self.basis(p - 1, q - 1)
        op = ExactOperator(dom, cod)
        for col, lab in enumerate(dom.labels):
            for i in range(self.k):
                ex = lab[self.xvar(i, a)]
                ey = lab[self.yvar(i, b)]
                if ex and ey:
                    tgt = list(lab)
                    tgt[self.xvar(i, a)] -= 1
                    tgt[self.yvar(i, b)] -= 1
                    op.add_entry(cod.ordinal(tuple(tgt)), col, ex * ey)
        return op

    def action_set(self, piece) -> LieActionSet:
        gl_k = {(i, j): self.gl_k_op(i, j, piece)
                for i in range(self.k) for j in range(self.k)}
        gl_m = {(a, b): self.gl_m_op(a, b, piece)
                for a in range(self.M) for b in range(self.M)}
        gl_n = {(b, c): self.gl_n_op(b, c, piece)
                for b in range(self.N) for c in range(self.N)}
        raisers = {}
        lowerers = {}
        if self.N:
            p, q = piece
            if p + q + 2 <= self.degree:
                raisers = {(a, b): self.raiser_op(a, b, piece)
                           for a in range(self.M) for b in range(self.N)}
            if p and q:
                lowerers = {(a, b): self.lowerer_op(a, b, piece)
                            for a in range(self.M) for b in range(self.N)}
        return LieActionSet(piece, gl_k, gl_m, gl_n, raisers, lowerers)

    # weights ----------------------------------------------------------------

    def weight_key(self, label) -> tuple:
        """Joint Cartan data of a monomial, without the scalar constants."""
        xrow = [0] * self.k
        xcol = [0] * self.M
        yrow = [0] * self.k
        ycol = [0] * self.N
        for i in range(self.k):
            for a in range(self.M):
                e = label[self.xvar(i, a)]
                xrow[i] += e
                xcol[a] += e
            for b in range(self.N):
                e = label[self.yvar(i, b)]
                yrow[i] += e
                ycol[b] += e
        return (
            tuple(xr - yr for xr, yr in zip(xrow, yrow)),
            tuple(xcol),
            tuple(ycol),
        )

    def weight_blocks(self, piece) -> dict[tuple, list[int]]:
        b = self.basis(*piece)
        blocks: dict[tuple, list[int]] = {}
        for i, lab in enumerate(b.labels):
            blocks.setdefault(self.weight_key(lab), []).append(i)
        return blocks

    def dressed_weights(self, key) -> tuple[tuple, tuple, tuple]:
        """Add the convention constants back onto a weight key."""
        kw, mw, nw = key
        return (
            tuple(Fraction(x) + self.c_k for x in kw),
            tuple(Fraction(x) + self.c_m for x in mw),
            tuple(-Fraction(x) + self.c_n for x in nw),
        )


def build_compact_model(k: int, M: int, degree: int,
                        convention: str = "sq", validate: bool = True,
                        cap: int = DEFAULT_PIECE_CAP) -> FockModel:
    model = FockModel(k, M, 0, degree, convention, cap=cap)
    if validate:
        smoke = model.action_set((min(1, degree), 0))
        bad = smoke.bracket_failures()
        if bad:
            raise AssertionError(f"bracket smoke check failed: {bad}")
    return model


def build_oscillator_model(k: int, M: int, N: int, degree: int,
                           convention: str = "sq", validate: bool = True,
                           cap: int = DEFAULT_PIECE_CAP) -> FockModel:
    if N <= 0:
        raise ShapeMismatch("oscillator model needs N >= 1")
    model = FockModel(k, M, N, degree, convention, cap=cap)
    if validate and degree >= 2:
        smoke = model.action_set((1, 1))
        bad = smoke.bracket_failures()
        if bad:
            raise AssertionError(f"bracket smoke check failed: {bad}")
    return model


# ---------------------------------------------------------------------------
# joint highest weight vectors


@dataclass(frozen=True)
class HighestWeightVector:
    bidegree: tuple[int, int]
    k_weight: tuple[Fraction, ...]
    m_weight: tuple[Fraction, ...]
    n_weight: tuple[Fraction, ...]
    vector: dict[int, Fraction]


def joint_highest_weight_vectors(model: FockModel, piece,
                                 include_lowerers: bool | None = None
                                 ) -> list[HighestWeightVector]:
    """Exact basis of the joint kernel of all raising operators in the
    graded piece, solved weight block by weight block.

    For the indefinite model the second-order lowering operators are
    included by default, so the result enumerates the new lowest
    K-type highest weight vectors rather than every K-highest vector.
    """
    if include_lowerers is None:
        include_lowerers = model.N > 0
    b = model.basis(*piece)
    ops: list[ExactOperator] = []
    for i in range(model.k):
        for j in range(i + 1, model.k):
            ops.append(model.gl_k_op(i, j, piece))
    for a in range(model.M):
        for bb in range(a + 1, model.M):
            ops.append(model.gl_m_op(a, bb, piece))
    for bb in range(model.N):
        for c in range(bb + 1, model.N):
            ops.append(model.gl_n_op(bb, c, piece))
    p, q = piece
    if include_lowerers and model.N and p and q:
        for a in range(model.M):
            for bb in range(model.N):
                ops.append(model.lowerer_op(a, bb, piece))

    cols_of: list[dict[int, list[tuple[int, Fraction]]]] = []
    for op in ops:
        cols: dict[int, list[tuple[int, Fraction]]] = {}
        for (r, c), v in op.data.items():
            cols.setdefault(c, []).append((r, v))
        cols_of.append(cols)

    out: list[HighestWeightVector] = []
    for key, members in sorted(model.weight_blocks(piece).items()):
        local = {g: i for i, g in enumerate(members)}
        rows: list[dict[int, Fraction]] = []
        for oi, cols in enumerate(cols_of):
            eq: dict[int, dict[int, Fraction]] = {}
            for g in members:
                for (r, v) in cols.get(g, ()):
                    eq.setdefault(r, {})[local[g]] = v
            rows.extend(eq.values())
        kern = kernel_basis(rows, len(members))
        if not kern:
            continue
        kw, mw, nw = model.dressed_weights(key)
        for vec in kern:
            gvec = {members[i]: v for i, v in vec.items()}
            out.append(HighestWeightVector(piece, kw, mw, nw, gvec))
    return out


# ---------------------------------------------------------------------------
# multiplicities from weight counts (independent of the kernel solve)


def _weight_multiplicities(model: FockModel, piece) -> dict[tuple, int]:
    counts: dict[tuple, int] = {}
    for key, members in model.weight_blocks(piece).items():
        counts[key] = len(members)
    return counts


def compact_multiplicities(model: FockModel, degree: int) -> dict[tuple, int]:
    """Multiplicity of each U(k) x U(M) label pair in a compact graded
    piece, solved from weight-space dimensions by triangular elimination
    against products of tableau counts."""
    counts = _weight_multiplicities(model, (degree, 0))
    k, M = model.k, model.M
    parts_k = list(W.partitions_of(degree, max_rows=k))
    parts_m = list(W.partitions_of(degree, max_rows=M))
    mult: dict[tuple, int] = {}
    for lam in parts_k:  # lex descending = dominance-compatible
        for mu in parts_m:
            key = (lam + (0,) * (k - len(lam)), mu + (0,) * (M - len(mu)), ())
            val = counts.get(key, 0)
            for (lam2, mu2), m2 in mult.items():
                if m2:
                    val -= m2 * W.kostka(lam2, key[0]) * W.kostka(mu2, key[1])
            mult[(lam, mu)] = val
    return mult


# ---------------------------------------------------------------------------
# duality verification, compact case


@dataclass(frozen=True)
class HoweDegreeReport:
    degree: int
    dim: int
    labels: tuple
    expected: tuple
    labels_ok: bool
    pairing_ok: bool
    dims_ok: bool
    mult_ok: bool
    commutant: int
    commutant_route: str
    commutant_ok: bool
    cauchy: dict

    @property
    def ok(self) -> bool:
        return (self.labels_ok and self.pairing_ok and self.dims_ok
                and self.mult_ok and self.commutant_ok)

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "dim": self.dim,
            "labels": [list(l) for l in self.labels],
            "expected": [list(l) for l in self.expected],
            "labels_ok": self.labels_ok,
            "pairing_ok": self.pairing_ok,
            "dims_ok": self.dims_ok,
            "mult_ok": self.mult_ok,
            "commutant": self.commutant,
            "commutant_route": self.commutant_route,
            "commutant_ok": self.commutant_ok,
            "cauchy": self.cauchy,
            "ok": self.ok,
        }


@dataclass(frozen=True)
class HoweReport:
    k: int
    M: int
    convention: str
    degrees: tuple[HoweDegreeReport, ...]

    @property
    def ok(self) -> bool:
        return all(d.ok for d in self.degrees)

    def labels_by_degree(self) -> dict[int, tuple]:
        return {d.degree: d.labels for d in self.degrees}

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "M": self.M,
            "convention": self.convention,
            "degrees": [d.to_json() for d in self.degrees],
            "ok": self.ok,
        }


def _strip_constant(weight, const) -> tuple[int, ...] | None:
    out = []
    for x in weight:
        v = Fraction(x) - const
        if v.denominator != 1:
            return None
        out.append(int(v))
    return tuple(out)


def verify_howe(k: int, M: int, degree: int, convention: str = "sq",
                commutant_cap: int = DEFAULT_COMMUTANT_UNKNOWN_CAP,
                model: FockModel | None = None) -> HoweReport:
    """Check the multiplicity-free paired decomposition of every graded
    piece up to the degree: label sets, the paired dimension identity,
    independent multiplicity counts, and the commutant dimension."""
    model = model or build_compact_model(k, M, degree, convention)
    reports = []
    for n in range(degree + 1):
        b = model.basis(n, 0)
        hwvs = joint_highest_weight_vectors(model, (n, 0))
        labels = []
        pairing_ok = True
        for h in hwvs:
            lam_k = _strip_constant(h.k_weight, model.c_k)
            lam_m = _strip_constant(h.m_weight, model.c_m)
            if lam_k is None or lam_m is None:
                pairing_ok = False
                continue
            try:
                pk, pm = W.partition(lam_k), W.partition(lam_m)
            except ShapeMismatch:
                pairing_ok = False
                continue
            if pk != pm:
                pairing_ok = False
            labels.append(pk)
        expected = tuple(W.partitions_of(n, max_rows=min(k, M)))
        labels_ok = sorted(labels) == sorted(expected)

        cauchy = W.cauchy_check(k, M, n)
        dims_ok = cauchy.ok and cauchy.total == len(b)

        mult = compact_multiplicities(model, n)
        mult_ok = all(
            v == (1 if (lam == mu and lam in expected) else 0)
            for (lam, mu), v in mult.items()
        )

        blocks = model.weight_blocks((n, 0))
        unknowns = sum(len(m) ** 2 for m in blocks.values())
        if unknowns <= commutant_cap:
            gens = []
            for i in range(k - 1):
                gens.append(model.gl_k_op(i, i + 1, (n, 0)))
                gens.append(model.gl_k_op(i + 1, i, (n, 0)))
            for a in range(M - 1):
                gens.append(model.gl_m_op(a, a + 1, (n, 0)))
                gens.append(model.gl_m_op(a + 1, a, (n, 0)))
            carts = [model.gl_k_op(i, i, (n, 0)) for i in range(k)]
            carts += [model.gl_m_op(a, a, (n, 0)) for a in range(M)]
            if not gens:  # k = M = 1: everything is Cartan
                gens = carts
                commutant = commutant_dim(gens)
            else:
                commutant = commutant_dim(gens, cartans=carts,
                                          cap=max(commutant_cap, 64))
            route = "matrix"
        else:
            commutant = sum(v * v for v in mult.values())
            route = "multiplicity"
        commutant_ok = commutant == len(expected)

        reports.append(HoweDegreeReport(
            degree=n,
            dim=len(b),
            labels=tuple(sorted(labels, reverse=True)),
            expected=expected,
            labels_ok=labels_ok,
            pairing_ok=pairing_ok,
            dims_ok=dims_ok,
            mult_ok=mult_ok,
            commutant=commutant,
            commutant_route=route,
            commutant_ok=commutant_ok,
            cauchy=cauchy.to_json(),
        ))
    return HoweReport(k, M, convention, tuple(reports))


def howe_stability_check(M: int, degree: int, kmax: int,
                         convention: str = "sq") -> dict:
    """Label sets must be k-independent in the stable range n <= k."""
    reports = {k: verify_howe(k, M, degree, convention) for k in range(1, kmax + 1)}
    stable = True
    details = []
    for k in range(1, kmax):
        a = reports[k].labels_by_degree()
        b = reports[k + 1].labels_by_degree()
        for n in range(0, min(degree, k) + 1):
            same = sorted(a[n]) == sorted(b[n])
            stable = stable and same
            details.append({"k": k, "degree": n, "stable": same})
    return {"M": M, "kmax": kmax, "stable": stable, "details": details,
            "reports": {k: r.to_json() for k, r in reports.items()}}


# ---------------------------------------------------------------------------
# duality verification, indefinite case


def expected_kv_labels(k: int, M: int, N: int, p: int, q: int) -> list[tuple]:
    """Label pairs (m, n) predicted at bidegree (p, q): partitions padded
    to M and N rows with the total number of nonzero rows at most k."""
    out = []
    for m in W.partitions_of(p, max_rows=M):
        for n in W.partitions_of(q, max_rows=N):
            if len(m) + len(n) <= k:
                out.append((m + (0,) * (M - len(m)), n + (0,) * (N - len(n))))
    return out


@dataclass(frozen=True)
class KvBidegreeReport:
    bidegree: tuple[int, int]
    matches: tuple[dict, ...]
    expected_count: int
    unexplained: int

    @property
    def ok(self) -> bool:
        return (self.unexplained == 0
                and len(self.matches) == self.expected_count
                and all(m["ok"] for m in self.matches))

    def to_json(self) -> dict:
        return {
            "bidegree": list(self.bidegree),
            "matches": list(self.matches),
            "expected_count": self.expected_count,
            "unexplained": self.unexplained,
            "ok": self.ok,
        }


@dataclass(frozen=True)
class KvReport:
    k: int
    M: int
    N: int
    convention: str
    bidegrees: tuple[KvBidegreeReport, ...]
    renorm_candidates: tuple[dict, ...]
    renorm_ok: bool

    @property
    def ok(self) -> bool:
        return self.renorm_ok and all(b.ok for b in self.bidegrees)

    def occurring_mn_weights(self) -> set[tuple[int, ...]]:
        out = set()
        for b in self.bidegrees:
            for m in b.matches:
                out.add(tuple(m["mn_weight_doubled"]))
        return out

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "M": self.M,
            "N": self.N,
            "convention": self.convention,
            "bidegrees": [b.to_json() for b in self.bidegrees],
            "renorm_candidates": list(self.renorm_candidates),
            "renorm_ok": self.renorm_ok,
            "ok": self.ok,
        }


def _parse_kv_weight(weight, c_k, M, N, k) -> tuple | None:
    """Split an integral dominant U(k) weight into its (m, n) blocks."""
    stripped = _strip_constant(weight, c_k)
    if stripped is None:
        return None
    if any(stripped[i] < stripped[i + 1] for i in range(k - 1)):
        return None
    pos = tuple(x for x in stripped if x > 0)
    neg = tuple(-x for x in reversed(stripped) if x < 0)
    if len(pos) > M or len(neg) > N:
        return None
    return (pos + (0,) * (M - len(pos)), neg + (0,) * (N - len(neg)))


def strict_signed_pairs(M: int, N: int, max_total: int):
    """Strictly decreasing positive blocks (m, n) with |m|, |n| within the
    window; candidates for the half-form orbit labels."""
    def blocks(length, cap):
        if length == 0:
            yield ()
            return
        # strictly decreasing positive tuples with sum <= cap
        def rec(prev, left, size):
            if size == 0:
                yield ()
                return
            for v in range(min(prev - 1, left - (size * (size - 1)) // 2), 0, -1):
                for rest in rec(v, left - v, size - 1):
                    yield (v,) + rest
        yield from rec(cap + 1, cap, length)

    for m in blocks(M, max_total):
        for n in blocks(N, max_total):
            yield (m, n)


def verify_kv(k: int, M: int, N: int, degree: int,
              convention: str = "sq",
              model: FockModel | None = None) -> KvReport:
    """Enumerate new lowest-K-type highest weight vectors up to the
    degree and check each against the predicted weight shifts; also check
    that no half-integer renormalized weight shows up among the plainly
    quantized labels."""
    model = model or build_oscillator_model(k, M, N, degree, convention)
    context = "kave" if convention == "sq" else "kave2"
    bidegrees = []
    occurring: set[tuple[int, ...]] = set()
    for piece in model.pieces():
        p, q = piece
        hwvs = joint_highest_weight_vectors(model, piece)
        expected = expected_kv_labels(k, M, N, p, q)
        matches = []
        unexplained = 0
        seen = []
        for h in hwvs:
            parsed = _parse_kv_weight(h.k_weight, model.c_k, M, N, k)
            if parsed is None:
                unexplained += 1
                continue
            m_blk, n_blk = parsed
            pred_left = W.shift_weight((m_blk, n_blk), convention, context,
                                       k=k, M=M, N=N, side="left")
            pred_right = W.shift_weight((m_blk, n_blk), convention, context,
                                        k=k, M=M, N=N, side="right")
            got_left = W.HalfIntWeight.from_entries(h.k_weight)
            got_right = W.HalfIntWeight.from_entries(h.m_weight + h.n_weight)
            ok = (pred_left.doubled == got_left.doubled
                  and pred_right.doubled == got_right.doubled
                  and (m_blk, n_blk) in expected
                  and (m_blk, n_blk) not in seen)
            seen.append((m_blk, n_blk))
            occurring.add(got_right.doubled)
            matches.append({
                "label_m": list(m_blk),
                "label_n": list(n_blk),
                "uk_weight_doubled": list(got_left.doubled),
                "mn_weight_doubled": list(got_right.doubled),
                "predicted_mn_doubled": list(pred_right.doubled),
                "ok": ok,
            })
        bidegrees.append(KvBidegreeReport(
            bidegree=piece,
            matches=tuple(matches),
            expected_count=len(expected),
            unexplained=unexplained,
        ))

    renorm_candidates = []
    renorm_ok = True
    if convention == "sq":
        for m, n in strict_signed_pairs(M, N, degree):
            try:
                r = W.renormalize_weight(W.SignedWeight(m, n), M, N)
            except Exception:
                continue
            occurs = r.doubled in occurring
            if not r.is_integral and occurs:
                renorm_ok = False
            renorm_candidates.append({
                "m": list(m),
                "n": list(n),
                "renormalized": str(r),
                "integral": r.is_integral,
                "occurs": occurs,
            })
    return KvReport(k, M, N, convention, tuple(bidegrees),
                    tuple(renorm_candidates), renorm_ok)
