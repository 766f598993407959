"""Induction of unitary-group representations through invariant subspaces.

``induce_compact`` builds, inside (graded Fock piece) tensor (inducing
irrep), the joint kernel of the diagonal inducing-side action.  The
inducing group is compact and connected, so its invariants coincide with
the kernel of the derived Lie-algebra action; Haar integration is
replaced by exact linear algebra over rationals.

``induce_noncompact_graded`` is a graded algebraic stand-in for the
indefinite-signature case, where the analytic pairing is not available:
an inducing weight is matched against the joint label list of the
oscillator model, a match selects the lowest compact-type block of the
corresponding highest-weight module, and a failed match certifies that
the induced space is empty.  Emptiness is a value, not an error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import weights as W
from .errors import ShapeMismatch, TooLarge
from .fock import FockModel, build_compact_model, build_oscillator_model, \
    joint_highest_weight_vectors, strict_signed_pairs
from .tensor import ExactOperator, IndexedBasis, commutant_dim, kernel_basis, \
    gl_tensor_action, spans_agree, young_symmetrizer

_F0 = Fraction(0)
_F1 = Fraction(1)


# ---------------------------------------------------------------------------
# small exact-linear-algebra helpers (module-local)


class _Span:
    """Incrementally reduced (Jordan) span of sparse exact vectors.

    Every stored row has a 1 in its pivot column and zeros in the pivot
    columns of all other rows, so pivots act as leader coordinates."""

    def __init__(self):
        self.echelon: list[tuple[int, dict]] = []

    def insert(self, vec: dict) -> bool:
        """Add the vector; return True when it enlarged the span."""
        v = {c: x for c, x in vec.items() if x}
        for piv, row in self.echelon:
            c = v.get(piv)
            if c:
                for col, val in row.items():
                    nv = v.get(col, _F0) - c * val
                    if nv:
                        v[col] = nv
                    else:
                        v.pop(col, None)
        if not v:
            return False
        piv = min(v)
        inv = _F1 / v[piv]
        v = {c: x * inv for c, x in v.items()}
        for _, row in self.echelon:
            c = row.get(piv)
            if c:
                for col, val in v.items():
                    nv = row.get(col, _F0) - c * val
                    if nv:
                        row[col] = nv
                    else:
                        row.pop(col, None)
        self.echelon.append((piv, v))
        return True

    def __len__(self) -> int:
        return len(self.echelon)


def _express_in_span(basis: list[dict], vec: dict) -> list[Fraction] | None:
    """Coordinates of vec in the given (independent) basis, or None."""
    if not basis:
        return [] if not any(vec.values()) else None
    support = sorted(set(vec).union(*map(set, basis)))
    nb = len(basis)
    rows = []
    for s in support:
        rows.append([b.get(s, _F0) for b in basis] + [vec.get(s, _F0)])
    pivots = []
    r = 0
    for c in range(nb):
        pr = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = _F1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    coeffs = [_F0] * nb
    for i, c in enumerate(pivots):
        coeffs[c] = rows[i][nb]
    for i in range(r, len(rows)):
        if rows[i][nb]:
            return None
    return coeffs


def _ldl_positive(gram: list[list[Fraction]]) -> bool:
    """True iff the symmetric matrix is positive definite (exact)."""
    a = [row[:] for row in gram]
    d = len(a)
    for i in range(d):
        p = a[i][i]
        if p <= 0:
            return False
        for r in range(i + 1, d):
            f = a[r][i] / p
            if f:
                for c in range(i, d):
                    a[r][c] -= f * a[i][c]
    return True


def _restrict(apply_op, basis: list[dict]) -> tuple[tuple[Fraction, ...], ...]:
    """Matrix of an operator that preserves the span, in the given basis."""
    cols = []
    for v in basis:
        coeffs = _express_in_span(basis, apply_op(v))
        if coeffs is None:
            raise ShapeMismatch("operator does not preserve the subspace")
        cols.append(coeffs)
    d = len(basis)
    return tuple(tuple(cols[j][i] for j in range(d)) for i in range(d))


def _leaders(basis: list[dict]) -> list:
    """One coordinate per basis vector where all the others vanish.

    Exists whenever the vectors come out of a reduced kernel solve (each
    keeps a 1 in its own free column); lets coordinates be read off
    instead of solved for."""
    counts: dict = {}
    for vec in basis:
        for c in vec:
            counts[c] = counts.get(c, 0) + 1
    out = []
    for vec in basis:
        lead = next(c for c, x in vec.items() if counts[c] == 1 and x == 1)
        out.append(lead)
    return out


def _restrict_by_leaders(apply_op, basis: list[dict],
                         leaders: list) -> tuple[tuple[Fraction, ...], ...]:
    """Like _restrict, reading coordinates off the leader positions and
    verifying the residual exactly."""
    d = len(basis)
    cols = []
    for v in basis:
        w = apply_op(v)
        coeffs = [w.get(l, _F0) for l in leaders]
        resid = dict(w)
        for u, cu in enumerate(coeffs):
            if cu:
                for key, val in basis[u].items():
                    nv = resid.get(key, _F0) - cu * val
                    if nv:
                        resid[key] = nv
                    else:
                        resid.pop(key, None)
        if any(resid.values()):
            raise ShapeMismatch("operator does not preserve the subspace")
        cols.append(coeffs)
    return tuple(tuple(cols[j][i] for j in range(d)) for i in range(d))


def _as_operator_family(gl_mats: dict[tuple[int, int], tuple]):
    if not gl_mats:
        return {}
    d = len(next(iter(gl_mats.values())))
    b = IndexedBasis(range(d), name=f"module({d})")
    fam = {}
    for key, mat in gl_mats.items():
        op = ExactOperator(b, b)
        for r in range(d):
            row = mat[r]
            for c in range(d):
                if row[c]:
                    op.data[(r, c)] = row[c]
        fam[key] = op
    return fam


def _module_commutant(ops: dict[tuple[int, int], ExactOperator], k: int) -> int:
    gens = []
    for i in range(k - 1):
        gens.append(ops[(i, i + 1)])
        gens.append(ops[(i + 1, i)])
    carts = [ops[(i, i)] for i in range(k)]
    if not gens:
        return commutant_dim(carts)
    return commutant_dim(gens, cartans=carts)


def _bracket_ok(ops: dict[tuple[int, int], ExactOperator], k: int) -> bool:
    zero = None
    for (i, j), a in ops.items():
        for (l, m_), b in ops.items():
            if zero is None:
                zero = ExactOperator.zero(a.domain, a.codomain)
            lhs = a * b - b * a
            rhs = zero
            if j == l:
                rhs = rhs + ops[(i, m_)]
            if m_ == i:
                rhs = rhs - ops[(l, j)]
            if lhs != rhs:
                return False
    return True


def _fock_norm_sq(label) -> int:
    out = 1
    for e in label:
        out *= math.factorial(e)
    return out


# ---------------------------------------------------------------------------
# inducing irreps of the compact middle group


@dataclass
class InducingIrrep:
    """Irreducible U(M) module realized inside a tensor power.

    ``basis`` holds exact vectors in word coordinates (words form an
    orthonormal basis of the ambient tensor power); each basis vector has
    a definite weight, recorded in ``basis_weights``.
    """

    m: tuple[int, ...]
    M: int
    word_basis: IndexedBasis
    basis: list[dict[int, Fraction]]
    basis_weights: list[tuple[int, ...]]
    action: dict[tuple[int, int], tuple]
    highest_index: int

    @property
    def dim(self) -> int:
        return len(self.basis)

    def gram(self) -> list[list[Fraction]]:
        g = [[_F0] * self.dim for _ in range(self.dim)]
        for u in range(self.dim):
            for v in range(u, self.dim):
                s = sum((self.basis[u][w] * cv
                         for w, cv in self.basis[v].items()
                         if w in self.basis[u]), _F0)
                g[u][v] = g[v][u] = s
        return g


def _word_weight(word, M) -> tuple[int, ...]:
    wt = [0] * M
    for letter in word:
        wt[letter] += 1
    return tuple(wt)


def build_inducing_irrep(m, M: int) -> InducingIrrep:
    """Realize the U(M) irrep with the given highest weight as the image
    of a Young symmetrizer inside the tensor power of the defining rep,
    with the derived gl(M) action restricted to it."""
    shape = W.partition(m)
    if len(shape) > M:
        raise ShapeMismatch(f"label {shape} has more than {M} rows")
    n = sum(shape)
    wb = IndexedBasis.tensor_power(M, n)
    if n == 0:
        zero = ((_F0,),)  # gl(M) acts by zero on the trivial module
        return InducingIrrep((), M, wb, [{0: _F1}], [(0,) * M],
                             {(a, b): zero
                              for a in range(M) for b in range(M)}, 0)

    sym = young_symmetrizer(shape, M)
    # image basis, one reduction pass per weight (content) class so every
    # basis vector is a weight vector; the reduced rows keep a leader
    # coordinate apiece, which makes restriction a lookup
    by_weight: dict[tuple[int, ...], list[int]] = {}
    for i, word in enumerate(wb.labels):
        by_weight.setdefault(_word_weight(word, M), []).append(i)
    cols: dict[int, dict[int, Fraction]] = {}
    for (r, c), v in sym.data.items():
        cols.setdefault(c, {})[r] = v
    basis: list[dict[int, Fraction]] = []
    basis_weights: list[tuple[int, ...]] = []
    leaders: list[int] = []
    for wt in sorted(by_weight, reverse=True):
        span = _Span()
        for c in by_weight[wt]:
            vec = cols.get(c)
            if vec:
                span.insert(vec)
        for piv, row in span.echelon:
            basis.append(row)
            basis_weights.append(wt)
            leaders.append(piv)
    expected = W.weyl_dim(shape, M)
    if len(basis) != expected:
        raise ShapeMismatch(
            f"symmetrizer image has dim {len(basis)}, expected {expected}")

    ops = {}
    for a in range(M):
        for b in range(M):
            tens = gl_tensor_action(a, b, M, n)
            ops[(a, b)] = _restrict_by_leaders(tens.apply, basis, leaders)

    hw_wt = shape + (0,) * (M - len(shape))
    highest = basis_weights.index(hw_wt)
    # sanity: the highest-weight vector is unique and killed by raisers
    assert basis_weights.count(hw_wt) == 1
    unit = {highest: _F1}
    for a in range(M):
        for b in range(a + 1, M):
            image = [sum(ops[(a, b)][r][c] * unit.get(c, _F0)
                         for c in unit) for r in range(len(basis))]
            assert not any(image), "highest vector not annihilated"
    return InducingIrrep(shape, M, wb, basis, basis_weights, ops, highest)


# ---------------------------------------------------------------------------
# induced modules


@dataclass
class InducedModule:
    """Invariant subspace with the restricted gl(k) action."""

    ambient: str
    k: int
    inputs: dict
    basis: list[dict]
    gl_k: dict[tuple[int, int], tuple]
    highest_weight: tuple | None
    commutant: int | None
    gram_positive: bool
    bracket_ok: bool

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def empty(self) -> bool:
        return self.dimension == 0

    def to_json(self) -> dict:
        return {
            "inputs": self.inputs,
            "ambient": self.ambient,
            "dimension": self.dimension,
            "highest_weight": (None if self.highest_weight is None
                               else [str(x) for x in self.highest_weight]),
            "commutant_dim": self.commutant,
            "gram_positive": self.gram_positive,
            "bracket_ok": self.bracket_ok,
            "empty": self.empty,
            "reason": None,
        }


@dataclass(frozen=True)
class Empty:
    """Certified-empty induced space; a value, not an error."""

    inputs: tuple
    reason: str

    @property
    def dimension(self) -> int:
        return 0

    @property
    def empty(self) -> bool:
        return True

    def to_json(self) -> dict:
        return {
            "inputs": dict(self.inputs),
            "dimension": 0,
            "highest_weight": None,
            "commutant_dim": None,
            "empty": True,
            "reason": self.reason,
        }


def _compact_blocks(model: FockModel, piece, irrep: InducingIrrep,
                    zero_only: bool = False):
    """Group the combined basis (f, h) by joint weight so the diagonal
    action translates blocks; returns block lists plus fock bookkeeping.

    The diagonal generators are diagonal matrices with eigenvalue
    (column weight) - (irrep weight) per member, so any invariant vector
    is supported where that difference vanishes; ``zero_only`` keeps just
    those blocks."""
    fb = model.basis(*piece)
    fweights = [model.weight_key(lab) for lab in fb.labels]
    zero = (0,) * model.M
    blocks: dict[tuple, list[tuple[int, int]]] = {}
    for f in range(len(fb)):
        xrow, xcol, _ = fweights[f]
        for h, hwt in enumerate(irrep.basis_weights):
            diff = tuple(c - w for c, w in zip(xcol, hwt))
            if zero_only and diff != zero:
                continue
            blocks.setdefault((xrow, diff), []).append((f, h))
    return fb, blocks


def _diagonal_invariants(model: FockModel, piece,
                         irrep: InducingIrrep) -> list[dict]:
    """Joint kernel of the diagonal inducing-side action
    D(X) = X_Fock x 1 - 1 x X_irrep^T, solved block by block.

    The inducing factor enters through its conjugate space, so its
    generators act by the contragredient -X^T; the joint kernel is then
    exactly the space of intertwiners from the inducing irrep into the
    graded piece, one copy of the paired gl(k) irrep."""
    M = model.M
    fb, blocks = _compact_blocks(model, piece, irrep, zero_only=True)
    offdiag = [(a, b) for a in range(M) for b in range(M) if a != b]
    fcols = {}
    for a, b in offdiag:
        op = model.gl_m_op(a, b, piece)
        cols: dict[int, list] = {}
        for (r, c), v in op.data.items():
            cols.setdefault(c, []).append((r, v))
        fcols[(a, b)] = cols
    hmat = irrep.action
    dimh = irrep.dim

    out: list[dict] = []
    for key in sorted(blocks):
        members = blocks[key]
        local = {g: i for i, g in enumerate(members)}
        rows = []
        # diagonal generators vanish identically on these blocks; only the
        # off-diagonal ones constrain
        for a, b in offdiag:
            eq: dict[tuple[int, int], dict[int, Fraction]] = {}
            for (f, h) in members:
                j = local[(f, h)]
                for (r, v) in fcols[(a, b)].get(f, ()):
                    row = eq.setdefault((r, h), {})
                    row[j] = row.get(j, _F0) + v
                for rh in range(dimh):
                    v = hmat[(a, b)][h][rh]
                    if v:
                        row = eq.setdefault((f, rh), {})
                        row[j] = row.get(j, _F0) - v
            rows.extend(eq.values())
        for vec in kernel_basis(rows, len(members)):
            out.append({members[i]: v for i, v in vec.items()})
    return out


def _combined_gram(basis: list[dict], fb: IndexedBasis,
                   hgram: list[list[Fraction]]) -> list[list[Fraction]]:
    facts = [Fraction(_fock_norm_sq(lab)) for lab in fb.labels]
    d = len(basis)
    fmaps = []
    for vec in basis:
        fm: dict[int, list] = {}
        for (f, h), c in vec.items():
            fm.setdefault(f, []).append((h, c))
        fmaps.append(fm)
    g = [[_F0] * d for _ in range(d)]
    for u in range(d):
        for v in range(u, d):
            small, big = ((u, v) if len(fmaps[u]) <= len(fmaps[v]) else (v, u))
            s = _F0
            for f, hu_list in fmaps[small].items():
                hv_list = fmaps[big].get(f)
                if hv_list:
                    for hu, cu in hu_list:
                        for hv, cv in hv_list:
                            s += cu * cv * facts[f] * hgram[hu][hv]
            g[u][v] = g[v][u] = s
    return g


def induce_compact(k: int, M: int, m, cross_check: bool = False) -> InducedModule:
    """Invariants of the diagonal inducing-side action on the degree-|m|
    graded piece tensored with the inducing irrep, with the commuting
    gl(k) action restricted to them."""
    shape = W.partition(m)
    irrep = build_inducing_irrep(shape, M)
    n = sum(shape)
    model = build_compact_model(k, M, n, validate=False)
    piece = (n, 0)
    basis = _diagonal_invariants(model, piece, irrep)
    fb = model.basis(*piece)
    inputs = {"k": k, "M": M, "m": list(shape)}
    ambient = f"deg-{n} polynomials on {k}x{M} tensor irrep {shape or '()'}"

    if cross_check:
        cas = _casimir_kernel(model, piece, irrep)
        dimh = irrep.dim
        flat_a = [{f * dimh + h: v for (f, h), v in vec.items()} for vec in basis]
        flat_b = [{f * dimh + h: v for (f, h), v in vec.items()} for vec in cas]
        if not spans_agree(flat_a, flat_b, len(fb) * dimh):
            raise AssertionError("invariants disagree with the projector image")

    if not basis:
        return InducedModule(ambient, k, inputs, [], {}, None, None, True, True)

    def gl_k_apply(i, j):
        op = model.gl_k_op(i, j, piece)
        cols: dict[int, list] = {}
        for (r, c), v in op.data.items():
            cols.setdefault(c, []).append((r, v))

        def apply(vec):
            out: dict[tuple[int, int], Fraction] = {}
            for (f, h), cv in vec.items():
                for (r, v) in cols.get(f, ()):
                    key = (r, h)
                    nv = out.get(key, _F0) + v * cv
                    if nv:
                        out[key] = nv
                    else:
                        out.pop(key, None)
            return out

        return apply

    leaders = _leaders(basis)
    gl_mats = {(i, j): _restrict_by_leaders(gl_k_apply(i, j), basis, leaders)
               for i in range(k) for j in range(k)}
    hw = max(
        (tuple(int(c) for c in key[0])
         for key, vec in _weights_of_vectors(model, piece, basis).items()),
        default=None,
    )
    fam = _as_operator_family(gl_mats)
    gram = _combined_gram(basis, fb, irrep.gram())
    return InducedModule(
        ambient, k, inputs, basis, gl_mats,
        highest_weight=hw,
        commutant=_module_commutant(fam, k),
        gram_positive=_ldl_positive(gram),
        bracket_ok=_bracket_ok(fam, k),
    )


def _weights_of_vectors(model: FockModel, piece, basis) -> dict:
    """Group invariant vectors by the gl(k) weight they carry."""
    fb = model.basis(*piece)
    out: dict[tuple, list] = {}
    for vec in basis:
        f = next(iter(vec))[0]
        key = (model.weight_key(fb.label(f))[0],)
        out.setdefault(key, []).append(vec)
    return out


def _casimir_kernel(model: FockModel, piece, irrep: InducingIrrep) -> list[dict]:
    """Kernel of the quadratic Casimir of the diagonal action: an exact
    realization of the image of the projector onto the trivial isotypic
    component (the Casimir of a compact group is positive semidefinite
    with kernel exactly the invariants)."""
    M = model.M
    fb, blocks = _compact_blocks(model, piece, irrep)
    fcols = {}
    for a in range(M):
        for b in range(M):
            op = model.gl_m_op(a, b, piece)
            cols: dict[int, list] = {}
            for (r, c), v in op.data.items():
                cols.setdefault(c, []).append((r, v))
            fcols[(a, b)] = cols
    hmat = irrep.action
    dimh = irrep.dim

    def d_apply(a, b, vec):
        out: dict[tuple[int, int], Fraction] = {}

        def add(key, v):
            nv = out.get(key, _F0) + v
            if nv:
                out[key] = nv
            else:
                out.pop(key, None)

        for (f, h), cv in vec.items():
            for (r, v) in fcols[(a, b)].get(f, ()):
                add((r, h), v * cv)
            row = hmat[(a, b)][h]
            for rh in range(dimh):
                v = row[rh]
                if v:
                    add((f, rh), -v * cv)
        return out

    def casimir_apply(vec):
        out: dict[tuple[int, int], Fraction] = {}
        for a in range(M):
            for b in range(M):
                for key, v in d_apply(a, b, d_apply(b, a, vec)).items():
                    nv = out.get(key, _F0) + v
                    if nv:
                        out[key] = nv
                    else:
                        out.pop(key, None)
        return out

    out: list[dict] = []
    for key in sorted(blocks):
        members = blocks[key]
        local = {g: i for i, g in enumerate(members)}
        rows: dict[tuple[int, int], dict[int, Fraction]] = {}
        for g in members:
            img = casimir_apply({g: _F1})
            for tgt, v in img.items():
                rows.setdefault(tgt, {})[local[g]] = v
        for vec in kernel_basis(list(rows.values()), len(members)):
            out.append({members[i]: v for i, v in vec.items()})
    return out


def degree_selection_check(k: int, M: int, m, n_wrong: int) -> dict:
    """The invariant subspace of a wrong-degree piece must vanish."""
    shape = W.partition(m)
    irrep = build_inducing_irrep(shape, M)
    model = build_compact_model(k, M, n_wrong, validate=False)
    basis = _diagonal_invariants(model, (n_wrong, 0), irrep)
    return {
        "k": k,
        "M": M,
        "m": list(shape),
        "n_wrong": n_wrong,
        "dimension": len(basis),
        "ok": len(basis) == 0,
    }


# ---------------------------------------------------------------------------
# graded induction for the indefinite middle group


def induce_noncompact_graded(k: int, M: int, N: int, inducing_weight,
                             d: int) -> InducedModule | Empty:
    """Match an inducing weight against the joint label list of the
    oscillator model; build the lowest compact-type block on a match,
    certify emptiness otherwise.

    The plainly quantized labels all have the block form
    (m_1 + k, ..., m_M + k, -n_N, ..., -n_1) with partitions m, n whose
    row counts sum to at most k.  Any half-integer entry, any leading
    entry below k, and any row overflow therefore certify emptiness by
    exact integer arithmetic.
    """
    w = (inducing_weight if isinstance(inducing_weight, W.HalfIntWeight)
         else W.HalfIntWeight.from_entries(inducing_weight))
    if len(w.doubled) != M + N:
        raise ShapeMismatch(
            f"weight has {len(w.doubled)} entries, expected {M + N}")
    inputs = (("k", k), ("M", M), ("N", N), ("weight", str(w)))

    if not w.is_integral:
        return Empty(inputs, "half-integer entries match no quantized label")
    entries = [dd // 2 for dd in w.doubled]
    a_blk = entries[:M]
    b_blk = entries[M:]
    m_cand = tuple(x - k for x in a_blk)
    n_cand = tuple(-x for x in reversed(b_blk))
    if any(x < 0 for x in m_cand):
        return Empty(inputs, f"entry below the rank: {min(a_blk)} < {k}")
    if any(m_cand[i] < m_cand[i + 1] for i in range(M - 1)) or \
            any(n_cand[i] < n_cand[i + 1] for i in range(N - 1)):
        return Empty(inputs, "weight blocks are not dominant")
    if any(x < 0 for x in n_cand):
        return Empty(inputs, "negative block entry matches no label")
    rows_m = sum(1 for x in m_cand if x)
    rows_n = sum(1 for x in n_cand if x)
    if rows_m + rows_n > k:
        return Empty(inputs,
                     f"label needs {rows_m + rows_n} rows, rank is {k}")

    p, q = sum(m_cand), sum(n_cand)
    if p + q > d:
        raise TooLarge(f"candidate bidegree ({p}, {q}) exceeds window {d}")
    model = build_oscillator_model(k, M, N, max(d, p + q), validate=False)
    piece = (p, q)
    target = None
    for h in joint_highest_weight_vectors(model, piece):
        km = tuple(int(x) for x in h.k_weight)
        if km == W.SignedWeight(
                W.partition(m_cand), W.partition(n_cand)).realize(k):
            target = h
            break
    assert target is not None, "label list out of sync with the kernel solve"

    fb = model.basis(*piece)
    lowers = [model.gl_k_op(i + 1, i, piece) for i in range(k - 1)]
    span = _Span()
    span.insert(target.vector)
    basis = [dict(target.vector)]
    queue = [target.vector]
    while queue:
        v = queue.pop()
        for op in lowers:
            img = op.apply(v)
            if img and span.insert(img):
                basis.append(img)
                queue.append(img)

    gl_mats = {(i, j): _restrict(model.gl_k_op(i, j, piece).apply, basis)
               for i in range(k) for j in range(k)}
    facts = [Fraction(_fock_norm_sq(lab)) for lab in fb.labels]
    dim = len(basis)
    gram = [[_F0] * dim for _ in range(dim)]
    for u in range(dim):
        for v in range(u, dim):
            s = sum((basis[u][o] * cv * facts[o]
                     for o, cv in basis[v].items() if o in basis[u]), _F0)
            gram[u][v] = gram[v][u] = s

    hw = tuple(int(x) for x in target.k_weight)
    fam = _as_operator_family(gl_mats)
    return InducedModule(
        ambient=f"bidegree {piece} polynomials on {k}x({M}+{N})",
        k=k,
        inputs=dict(inputs),
        basis=basis,
        gl_k=gl_mats,
        highest_weight=hw,
        commutant=_module_commutant(fam, k),
        gram_positive=_ldl_positive(gram),
        bracket_ok=_bracket_ok(fam, k),
    )


def _partitions_within(rows: int, total: int):
    out = [()]
    for t in range(1, total + 1):
        out.extend(W.partitions_of(t, max_rows=rows))
    return out


def emptiness_survey(k: int, M: int, N: int, window: int) -> dict:
    """Sweep the graded induction over one signature with three weight
    families: renormalized weights built from strictly decreasing blocks
    (empty, unless the shifted entries land exactly on a quantized
    label's weight -- such collisions must come back as that label's
    module); weights whose leading entry sits below the rank (always
    empty); and shifted labels with m+k on the left block (always the
    module with the label's realized highest weight)."""
    cells = []
    collisions = []
    ok = True

    def run(weight, d=window):
        # collisions may need a slightly wider bidegree window
        while True:
            try:
                return induce_noncompact_graded(k, M, N, weight, d)
            except TooLarge:
                if d > 4 * window + 16:
                    raise
                d = 2 * d + 1

    def record(branch, weight_text, good, detail):
        nonlocal ok
        ok = ok and good
        cells.append({"branch": branch, "weight": weight_text,
                      "ok": good, "detail": detail})

    for m, n in strict_signed_pairs(M, N, window):
        halfint = W.renormalize_weight(W.SignedWeight(m, n), M, N)
        text = "(" + ", ".join(str(e) for e in halfint.entries) + ")"
        out = run(halfint)
        if out.empty:
            record("renormalized", text, True, out.reason)
            continue
        hw = out.highest_weight
        good = out.dimension == W.signed_weight_dim(hw, k)
        try:
            good = good and hw != W.SignedWeight(m, n).realize(k)
        except ShapeMismatch:
            pass
        record("renormalized", text, good,
               f"collision: highest weight {hw}, dim {out.dimension}")
        collisions.append({"blocks": [list(m), list(n)], "weight": text,
                           "highest_weight": list(hw)})

    for n in _partitions_within(N, window):
        neg = tuple(-x for x in reversed(n + (0,) * (N - len(n))))
        for t in sorted({0, k - 1}):
            w = (t,) * M + neg
            out = run(w)
            good = out.empty and out.reason.startswith("entry below the rank")
            record("below-rank", str(w), good,
                   out.reason if out.empty else f"dim {out.dimension}")

    for m in _partitions_within(M, window):
        for n in _partitions_within(N, window - sum(m)):
            if len(m) + len(n) > k:
                continue
            w = tuple(x + k for x in m + (0,) * (M - len(m)))
            w += tuple(-x for x in reversed(n + (0,) * (N - len(n))))
            out = run(w)
            want = W.SignedWeight(m, n).realize(k)
            good = (not out.empty and out.highest_weight == want
                    and out.dimension == W.signed_weight_dim(want, k))
            record("shifted-label", str(w), good,
                   f"dim {out.dimension}" if not out.empty else out.reason)

    return {"k": k, "M": M, "N": N, "window": window, "ok": ok,
            "collisions": collisions, "cells": cells}
