"""Exact sparse operators on indexed bases.

Operators are dicts keyed by (row, col) ordinals with Fraction values.
All arithmetic is exact rational; there are no tolerance parameters in
this module.  Rank uses fraction-free (Bareiss) elimination after
clearing row denominators; kernels use sparse Gauss-Jordan over
Fractions.

The symmetric-group material (slot permutations, central projectors,
row/column symmetrizers, commutants) lives here too, since those
operators are the main clients of the exact core.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import cache
from itertools import permutations, product

import numpy as np

from .errors import TooLarge
from . import weights as W

DEFAULT_BASIS_CAP = 20_000


# ---------------------------------------------------------------------------
# bases


class IndexedBasis:
    """An ordered family of hashable labels with ordinal lookup."""

    __slots__ = ("labels", "_index", "name")

    def __init__(self, labels, name: str = ""):
        self.labels = tuple(labels)
        self._index = {lab: i for i, lab in enumerate(self.labels)}
        if len(self._index) != len(self.labels):
            raise ValueError("duplicate labels in basis")
        self.name = name

    def __len__(self) -> int:
        return len(self.labels)

    def __iter__(self):
        return iter(self.labels)

    def ordinal(self, label) -> int:
        return self._index[label]

    def label(self, i: int):
        return self.labels[i]

    def __repr__(self) -> str:
        return f"IndexedBasis({self.name or len(self.labels)}, dim={len(self)})"

    @classmethod
    def tensor_power(cls, k: int, n: int, cap: int = DEFAULT_BASIS_CAP) -> "IndexedBasis":
        """Multi-indices for the n-fold tensor power of C^k, lex order."""
        if k**n > cap:
            raise TooLarge(f"tensor power basis k^n = {k**n} exceeds cap {cap}")
        return cls(product(range(k), repeat=n), name=f"T({k},{n})")

    @classmethod
    def monomials(cls, nvars: int, degree: int, cap: int = DEFAULT_BASIS_CAP) -> "IndexedBasis":
        """Exponent tuples of fixed total degree, lex order."""
        size = math.comb(nvars + degree - 1, degree) if nvars else (1 if degree == 0 else 0)
        if size > cap:
            raise TooLarge(f"monomial basis size {size} exceeds cap {cap}")

        def gen(rem_vars, rem_deg):
            if rem_vars == 1:
                yield (rem_deg,)
                return
            for d in range(rem_deg, -1, -1):
                for rest in gen(rem_vars - 1, rem_deg - d):
                    yield (d,) + rest

        labels = [] if nvars == 0 and degree > 0 else (
            [()] if nvars == 0 else gen(nvars, degree))
        return cls(labels, name=f"Mono({nvars},{degree})")

    def tensor(self, other: "IndexedBasis", cap: int = DEFAULT_BASIS_CAP) -> "IndexedBasis":
        if len(self) * len(other) > cap:
            raise TooLarge(
                f"tensor product basis {len(self)}x{len(other)} exceeds cap {cap}")
        return IndexedBasis(
            ((a, b) for a in self.labels for b in other.labels),
            name=f"{self.name}(x){other.name}",
        )


# ---------------------------------------------------------------------------
# operators


class ExactOperator:
    """Sparse linear map between indexed bases over the rationals."""

    __slots__ = ("domain", "codomain", "data")

    def __init__(self, domain: IndexedBasis, codomain: IndexedBasis, data=None):
        self.domain = domain
        self.codomain = codomain
        self.data: dict[tuple[int, int], Fraction] = {}
        if data:
            for (r, c), v in data.items():
                fv = Fraction(v)
                if fv:
                    self.data[(r, c)] = fv

    # construction ---------------------------------------------------------

    @classmethod
    def zero(cls, domain, codomain=None):
        return cls(domain, codomain or domain)

    @classmethod
    def identity(cls, basis):
        op = cls(basis, basis)
        for i in range(len(basis)):
            op.data[(i, i)] = Fraction(1)
        return op

    def add_entry(self, row: int, col: int, value) -> None:
        key = (row, col)
        new = self.data.get(key, Fraction(0)) + Fraction(value)
        if new:
            self.data[key] = new
        else:
            self.data.pop(key, None)

    # algebra ---------------------------------------------------------------

    def _check_same_shape(self, other):
        if self.domain is not other.domain or self.codomain is not other.codomain:
            if (self.domain.labels != other.domain.labels
                    or self.codomain.labels != other.codomain.labels):
                raise ValueError("operator shape mismatch")

    def __add__(self, other: "ExactOperator") -> "ExactOperator":
        self._check_same_shape(other)
        out = ExactOperator(self.domain, self.codomain, dict(self.data))
        for key, v in other.data.items():
            out.add_entry(key[0], key[1], v)
        return out

    def __sub__(self, other: "ExactOperator") -> "ExactOperator":
        return self + (-other)

    def __neg__(self) -> "ExactOperator":
        return ExactOperator(
            self.domain, self.codomain, {k: -v for k, v in self.data.items()})

    def scaled(self, scalar) -> "ExactOperator":
        s = Fraction(scalar)
        if not s:
            return ExactOperator.zero(self.domain, self.codomain)
        return ExactOperator(
            self.domain, self.codomain, {k: s * v for k, v in self.data.items()})

    def __mul__(self, other):
        """Composition self * other (apply other first), or scalar scaling."""
        if not isinstance(other, ExactOperator):
            return self.scaled(other)
        if other.codomain.labels != self.domain.labels:
            raise ValueError("composition shape mismatch")
        by_row: dict[int, list[tuple[int, Fraction]]] = {}
        for (r, c), v in self.data.items():
            by_row.setdefault(c, []).append((r, v))
        out = ExactOperator(other.domain, self.codomain)
        for (mid, col), bv in other.data.items():
            for row, av in by_row.get(mid, ()):
                out.add_entry(row, col, av * bv)
        return out

    __rmul__ = scaled

    def apply(self, vec: dict[int, Fraction]) -> dict[int, Fraction]:
        out: dict[int, Fraction] = {}
        for (r, c), v in self.data.items():
            x = vec.get(c)
            if x:
                new = out.get(r, Fraction(0)) + v * x
                if new:
                    out[r] = new
                else:
                    out.pop(r, None)
        return out

    def transpose(self) -> "ExactOperator":
        return ExactOperator(
            self.codomain, self.domain, {(c, r): v for (r, c), v in self.data.items()})

    def trace(self) -> Fraction:
        if len(self.domain) != len(self.codomain):
            raise ValueError("trace needs a square operator")
        return sum((v for (r, c), v in self.data.items() if r == c), Fraction(0))

    def is_zero(self) -> bool:
        return not self.data

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ExactOperator)
            and self.domain.labels == other.domain.labels
            and self.codomain.labels == other.codomain.labels
            and self.data == other.data
        )

    def __hash__(self):
        raise TypeError("ExactOperator is mutable; not hashable")

    @property
    def nnz(self) -> int:
        return len(self.data)

    def rows(self) -> list[dict[int, Fraction]]:
        out: dict[int, dict[int, Fraction]] = {}
        for (r, c), v in self.data.items():
            out.setdefault(r, {})[c] = v
        return list(out.values())

    def rank(self) -> int:
        return rank_of_rows(self.rows(), len(self.domain))

    # serialization ----------------------------------------------------------

    def to_triplet_text(self) -> str:
        """Documented dump format: header 'dims R C', then one line
        'row col num/den' per nonzero, sorted by (row, col)."""
        lines = [f"dims {len(self.codomain)} {len(self.domain)}"]
        for (r, c) in sorted(self.data):
            v = self.data[(r, c)]
            lines.append(f"{r} {c} {v.numerator}/{v.denominator}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_triplet_text(cls, text: str, domain: IndexedBasis,
                          codomain: IndexedBasis) -> "ExactOperator":
        lines = [ln for ln in text.strip().splitlines() if ln.strip()]
        head = lines[0].split()
        if head[0] != "dims" or int(head[1]) != len(codomain) or int(head[2]) != len(domain):
            raise ValueError("triplet header does not match the bases")
        op = cls(domain, codomain)
        for ln in lines[1:]:
            r, c, val = ln.split()
            num, den = val.split("/")
            op.add_entry(int(r), int(c), Fraction(int(num), int(den)))
        return op


# ---------------------------------------------------------------------------
# exact elimination


def rank_of_rows(rows, ncols: int, cap: int = DEFAULT_BASIS_CAP) -> int:
    """Rank by fraction-free (Bareiss) elimination on denominator-cleared
    integer rows."""
    dense = []
    for row in rows:
        if not row:
            continue
        lcm = 1
        for v in row.values():
            lcm = lcm * v.denominator // math.gcd(lcm, v.denominator)
        arr = [0] * ncols
        for c, v in row.items():
            arr[c] = int(v * lcm)
        dense.append(arr)
    if not dense:
        return 0
    if len(dense) * ncols > 64 * cap:
        raise TooLarge(f"rank elimination on {len(dense)}x{ncols} refused")
    mat = dense
    m, n = len(mat), ncols
    rank = 0
    prev = 1
    for col in range(n):
        piv = None
        for r in range(rank, m):
            if mat[r][col]:
                piv = r
                break
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        pv = mat[rank][col]
        for r in range(rank + 1, m):
            factor = mat[r][col]
            if factor or True:
                row_r = mat[r]
                row_p = mat[rank]
                for c in range(col, n):
                    row_r[c] = (pv * row_r[c] - factor * row_p[c]) // prev
        prev = pv
        rank += 1
        if rank == min(m, n):
            break
    return rank


def kernel_basis(rows, ncols: int) -> list[dict[int, Fraction]]:
    """Kernel of the stacked row system, as sparse column vectors.

    Plain sparse Gauss-Jordan over Fractions; returns one vector per free
    column, each normalized with a 1 in its free coordinate.
    """
    reduced: list[dict[int, Fraction]] = []
    pivots: list[int] = []
    for row in rows:
        r = {c: v for c, v in row.items() if v}
        for pcol, prow in zip(pivots, reduced):
            x = r.get(pcol)
            if x:
                for c, v in prow.items():
                    new = r.get(c, Fraction(0)) - x * v
                    if new:
                        r[c] = new
                    else:
                        r.pop(c, None)
        if not r:
            continue
        pcol = min(r)
        pval = r[pcol]
        r = {c: v / pval for c, v in r.items()}
        # back-substitute into earlier rows
        for i, prow in enumerate(reduced):
            x = prow.get(pcol)
            if x:
                for c, v in r.items():
                    new = prow.get(c, Fraction(0)) - x * v
                    if new:
                        prow[c] = new
                    else:
                        prow.pop(c, None)
        reduced.append(r)
        pivots.append(pcol)
    pivot_set = set(pivots)
    kernel = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = {free: Fraction(1)}
        for pcol, prow in zip(pivots, reduced):
            x = prow.get(free)
            if x:
                vec[pcol] = -x
        kernel.append(vec)
    return kernel


def span_dim(vectors: list[dict[int, Fraction]], ncols: int) -> int:
    return rank_of_rows([dict(v) for v in vectors], ncols)


def spans_agree(a, b, ncols: int) -> bool:
    """Exact equality of two spans via three rank computations."""
    ra = span_dim(a, ncols)
    rb = span_dim(b, ncols)
    rall = span_dim(list(a) + list(b), ncols)
    return ra == rb == rall


# ---------------------------------------------------------------------------
# permutations


def perm_compose(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    """a after b."""
    return tuple(a[b[i]] for i in range(len(a)))


def perm_inverse(a: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * len(a)
    for i, v in enumerate(a):
        out[v] = i
    return tuple(out)


def perm_cycle_type(p: tuple[int, ...]) -> tuple[int, ...]:
    n = len(p)
    seen = [False] * n
    lens = []
    for start in range(n):
        if seen[start]:
            continue
        ln, j = 0, start
        while not seen[j]:
            seen[j] = True
            j = p[j]
            ln += 1
        lens.append(ln)
    return tuple(sorted(lens, reverse=True))


def perm_sign(p: tuple[int, ...]) -> int:
    return 1 if (len(p) - len(set(_cycle_reps(p)))) % 2 == 0 else -1


def _cycle_reps(p):
    n = len(p)
    seen = [False] * n
    reps = []
    for start in range(n):
        if seen[start]:
            continue
        reps.append(start)
        j = start
        while not seen[j]:
            seen[j] = True
            j = p[j]
    return reps


# ---------------------------------------------------------------------------
# symmetric group and gl(k) actions on tensor powers


def sn_action(sigma: tuple[int, ...], k: int, n: int,
              basis: IndexedBasis | None = None,
              cap: int = DEFAULT_BASIS_CAP) -> ExactOperator:
    """Slot permutation on the n-fold tensor power of C^k.

    The factor in slot a moves to slot sigma(a), which makes the map
    multiplicative: sn_action(s) * sn_action(t) == sn_action(s after t).
    """
    if len(sigma) != n:
        raise ValueError(f"permutation length {len(sigma)} != {n}")
    b = basis or IndexedBasis.tensor_power(k, n, cap=cap)
    op = ExactOperator(b, b)
    inv = perm_inverse(sigma)
    for col, lab in enumerate(b.labels):
        tgt = tuple(lab[inv[p]] for p in range(n))
        op.data[(b.ordinal(tgt), col)] = Fraction(1)
    return op


def gl_tensor_action(i: int, j: int, k: int, n: int,
                     basis: IndexedBasis | None = None,
                     cap: int = DEFAULT_BASIS_CAP) -> ExactOperator:
    """Derivation action of the elementary matrix E_ij across the n slots."""
    b = basis or IndexedBasis.tensor_power(k, n, cap=cap)
    op = ExactOperator(b, b)
    for col, lab in enumerate(b.labels):
        for slot, letter in enumerate(lab):
            if letter == j:
                tgt = lab[:slot] + (i,) + lab[slot + 1:]
                op.add_entry(b.ordinal(tgt), col, 1)
    return op


@cache
def _character_by_type(shape: tuple[int, ...], n: int) -> dict[tuple[int, ...], int]:
    return {mu: W.sn_character(shape, mu) for mu in W.partitions_of(n)}


def isotypic_projector(shape, k: int, basis: IndexedBasis | None = None,
                       cap: int = DEFAULT_BASIS_CAP) -> ExactOperator:
    """Central projector (f/n!) * sum_sigma chi(sigma) sigma on the tensor
    power, built by accumulating slot permutations."""
    lam = W.partition(shape)
    n = sum(lam)
    b = basis or IndexedBasis.tensor_power(k, n, cap=cap)
    if math.factorial(n) * len(b) > 512 * cap:
        raise TooLarge(f"projector accumulation for n={n}, dim={len(b)} refused")
    chi = _character_by_type(lam, n)
    f = W.sn_dim(lam)
    scale = Fraction(f, math.factorial(n))
    op = ExactOperator(b, b)
    for sigma in permutations(range(n)):
        c = chi[perm_cycle_type(sigma)]
        if c == 0:
            continue
        inv = perm_inverse(sigma)
        for col, lab in enumerate(b.labels):
            tgt = tuple(lab[inv[p]] for p in range(n))
            op.add_entry(b.ordinal(tgt), col, scale * c)
    return op


def _row_filling(shape) -> list[list[int]]:
    rows = []
    c = 0
    for r in shape:
        rows.append(list(range(c, c + r)))
        c += r
    return rows


def _subgroup_perms(blocks: list[list[int]], n: int) -> list[tuple[int, ...]]:
    out = [tuple(range(n))]
    for blk in blocks:
        new = []
        for base in out:
            for perm in permutations(blk):
                m = list(base)
                for src, dst in zip(blk, perm):
                    m[src] = dst
                new.append(tuple(m))
        out = new
    return out


def young_symmetrizer(shape, k: int, basis: IndexedBasis | None = None,
                      cap: int = DEFAULT_BASIS_CAP) -> ExactOperator:
    """Column antisymmetrizer times row symmetrizer for the row-reading
    tableau of the shape, as an operator on the tensor power."""
    lam = W.partition(shape)
    n = sum(lam)
    b = basis or IndexedBasis.tensor_power(k, n, cap=cap)
    rows = _row_filling(lam)
    cols = []
    for j in range(lam[0] if lam else 0):
        cols.append([row[j] for row in rows if j < len(row)])
    row_sym = ExactOperator(b, b)
    for p in _subgroup_perms(rows, n):
        row_sym += sn_action(p, k, n, basis=b)
    col_anti = ExactOperator(b, b)
    for q in _subgroup_perms(cols, n):
        col_anti += sn_action(q, k, n, basis=b).scaled(perm_sign(q))
    return col_anti * row_sym


def operator_image_dim(op: ExactOperator) -> int:
    return op.rank()


# ---------------------------------------------------------------------------
# commutants


def commutant_dim(generators: list[ExactOperator],
                  cartans: list[ExactOperator] | None = None,
                  cap: int = DEFAULT_BASIS_CAP) -> int:
    """Dimension of the joint commutant, by exact linear solve.

    Unknowns are the matrix entries of X; each generator A contributes the
    equations XA - AX = 0.  When ``cartans`` is given, those operators
    must be diagonal; X is then restricted to the joint-eigenvalue blocks
    they cut out, which is exactly the commutation constraint with the
    Cartan subalgebra, solved in advance.
    """
    if not generators:
        raise ValueError("need at least one generator")
    d = len(generators[0].domain)
    for g in generators:
        if len(g.domain) != d or len(g.codomain) != d:
            raise ValueError("generators must share one square basis")

    if cartans:
        eigs = [tuple() for _ in range(d)]
        for h in cartans:
            diag = [Fraction(0)] * d
            for (r, c), v in h.data.items():
                if r != c:
                    raise ValueError("cartan operators must be diagonal")
                diag[r] = v
            eigs = [eigs[i] + (diag[i],) for i in range(d)]
        blocks: dict[tuple, list[int]] = {}
        for i, e in enumerate(eigs):
            blocks.setdefault(e, []).append(i)
        block_list = list(blocks.values())
    else:
        block_list = [list(range(d))]

    var_id: dict[tuple[int, int], int] = {}
    for blk in block_list:
        for r in blk:
            for c in blk:
                var_id[(r, c)] = len(var_id)
    nvars = len(var_id)
    if nvars > cap:
        raise TooLarge(f"commutant solve with {nvars} unknowns exceeds cap {cap}")

    rows: list[dict[int, Fraction]] = []
    for g in generators:
        by_row: dict[int, list[tuple[int, Fraction]]] = {}
        by_col: dict[int, list[tuple[int, Fraction]]] = {}
        for (r, c), v in g.data.items():
            by_row.setdefault(r, []).append((c, v))
            by_col.setdefault(c, []).append((r, v))
        # equation for output entry (i, l): sum_j X[i,j] A[j,l] - A[i,j] X[j,l]
        eq: dict[tuple[int, int], dict[int, Fraction]] = {}
        for (i, jcol), var in var_id.items():
            # X[i, jcol] multiplies A[jcol, l] in entry (i, l)
            for (l, v) in by_row.get(jcol, ()):
                row = eq.setdefault((i, l), {})
                row[var] = row.get(var, Fraction(0)) + v
        for (jrow, l), var in var_id.items():
            # X[jrow, l] multiplies -A[i, jrow] in entry (i, l)
            for (i, v) in by_col.get(jrow, ()):
                row = eq.setdefault((i, l), {})
                row[var] = row.get(var, Fraction(0)) - v
        rows.extend(r for r in eq.values() if r)
    kern = kernel_basis(rows, nvars)
    return len(kern)


# ---------------------------------------------------------------------------
# fast exact family check for the central projectors

INT64_GUARD = 2**62


def projector_family_check(n: int, k: int) -> dict:
    """Exact verification that the central projectors on the tensor power
    are idempotent, mutually orthogonal and complete.

    Works orbit-block by orbit-block (slot permutations preserve the
    multiset of letters), over int64 after scaling by n!.  An explicit
    bound check guarantees no overflow, so the arithmetic is exact.
    """
    shapes = list(W.partitions_of(n))
    chi = {lam: _character_by_type(lam, n) for lam in shapes}
    perms = list(permutations(range(n)))
    types = [perm_cycle_type(p) for p in perms]
    type_list = sorted(set(types), reverse=True)
    type_idx = {t: i for i, t in enumerate(type_list)}
    fact = math.factorial(n)

    labels = list(product(range(k), repeat=n))
    orbits: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    for lab in labels:
        orbits.setdefault(tuple(sorted(lab)), []).append(lab)

    fmax = max(W.sn_dim(lam) for lam in shapes)
    chimax = max(abs(v) for lam in shapes for v in chi[lam].values())
    max_block = max(len(o) for o in orbits.values())
    entry_bound = fmax * fact * chimax
    if max_block * entry_bound * entry_bound >= INT64_GUARD:
        raise TooLarge("int64 bound exceeded; enlarge guard or shrink n, k")

    idempotent = True
    orthogonal = True
    complete = True
    traces = {lam: 0 for lam in shapes}

    inv_perms = [perm_inverse(p) for p in perms]
    for members in orbits.values():
        size = len(members)
        ordinal = {lab: i for i, lab in enumerate(members)}
        counts = np.zeros((len(type_list), size, size), dtype=np.int64)
        cols = np.arange(size)
        for p, inv, t in zip(perms, inv_perms, types):
            tgt = np.fromiter(
                (ordinal[tuple(lab[inv[s]] for s in range(n))] for lab in members),
                dtype=np.int64, count=size)
            np.add.at(counts[type_idx[t]], (tgt, cols), 1)
        blocks = {}
        for lam in shapes:
            f = W.sn_dim(lam)
            B = np.zeros((size, size), dtype=np.int64)
            for t, ti in type_idx.items():
                c = chi[lam][t]
                if c:
                    B += (f * c) * counts[ti]
            blocks[lam] = B  # equals n! * P_lambda on this orbit block
            traces[lam] += int(np.trace(B))
        total = sum(blocks.values())
        if not np.array_equal(total, fact * np.eye(size, dtype=np.int64)):
            complete = False
        for i, lam in enumerate(shapes):
            Bi = blocks[lam]
            if not np.array_equal(Bi @ Bi, fact * Bi):
                idempotent = False
            for mu in shapes[i + 1:]:
                if (Bi @ blocks[mu]).any():
                    orthogonal = False

    ranks = {}
    for lam in shapes:
        q, r = divmod(traces[lam], fact)
        if r:
            idempotent = False
        ranks[lam] = q

    return {
        "n": n,
        "k": k,
        "complete": complete,
        "idempotent": idempotent,
        "orthogonal": orthogonal,
        "ranks": ranks,
    }
