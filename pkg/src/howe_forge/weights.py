"""Partition and weight combinatorics.

Dimensions and characters of symmetric-group and unitary-group irreps,
the symmetric-function inner product, branching to a smaller rank, and
the half-integer weight shifts that relate plainly quantized labels to
their metaplectically corrected counterparts.  Everything in this module
is exact integer or half-integer arithmetic; no floats.

Partitions are plain tuples of weakly decreasing nonnegative ints with
trailing zeros stripped.  Half-integer weights store doubled entries so
that equality stays exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cache
from itertools import permutations
from typing import Iterable, Iterator, Sequence

from .errors import EmptyShape, NotRenormalizable, ShapeMismatch

Partition = tuple[int, ...]


# ---------------------------------------------------------------------------
# partitions


def partition(parts: Iterable[int]) -> Partition:
    """Normalize to a weakly decreasing tuple, trailing zeros stripped."""
    t = tuple(int(p) for p in parts)
    if any(p < 0 for p in t):
        raise ShapeMismatch(f"negative part in {t}")
    if any(t[i] < t[i + 1] for i in range(len(t) - 1)):
        raise ShapeMismatch(f"parts not weakly decreasing: {t}")
    while t and t[-1] == 0:
        t = t[:-1]
    return t


def partitions_of(n: int, max_rows: int | None = None) -> Iterator[Partition]:
    """All partitions of n, most-dominant first, optionally capped in length."""
    if n < 0:
        return
    if n == 0:
        yield ()
        return

    def rec(remaining: int, largest: int, rows_left: int) -> Iterator[tuple[int, ...]]:
        if remaining == 0:
            yield ()
            return
        if rows_left == 0:
            return
        for first in range(min(remaining, largest), 0, -1):
            for rest in rec(remaining - first, first, rows_left - 1):
                yield (first,) + rest

    rows = n if max_rows is None else min(max_rows, n)
    yield from rec(n, n, rows)


def conjugate(shape: Partition) -> Partition:
    lam = partition(shape)
    if not lam:
        return ()
    return tuple(sum(1 for p in lam if p > j) for j in range(lam[0]))


def hook_lengths(shape: Partition) -> list[list[int]]:
    lam = partition(shape)
    conj = conjugate(lam)
    return [
        [lam[i] - j + conj[j] - i - 1 for j in range(lam[i])]
        for i in range(len(lam))
    ]


# ---------------------------------------------------------------------------
# dimensions


def weyl_dim(shape: Partition, k: int) -> int:
    """Dimension of the U(k) irrep labelled by a partition.

    Hook content formula; returns 0 when the shape has more than k rows.
    """
    if k <= 0:
        raise ShapeMismatch(f"rank must be positive, got {k}")
    lam = partition(shape)
    num = 1
    den = 1
    conj = conjugate(lam)
    for i, row in enumerate(lam):
        for j in range(row):
            num *= k + j - i
            den *= row - j + conj[j] - i - 1
    if num == 0:
        return 0
    assert num % den == 0
    return num // den


def signed_weight_dim(w: Sequence[int], k: int) -> int:
    """Weyl dimension of the U(k) irrep with a possibly negative
    weakly decreasing integer highest weight of length k."""
    ww = tuple(int(x) for x in w)
    if len(ww) != k:
        raise ShapeMismatch(f"weight length {len(ww)} != rank {k}")
    if any(ww[i] < ww[i + 1] for i in range(k - 1)):
        raise ShapeMismatch(f"weight not weakly decreasing: {ww}")
    d = Fraction(1)
    for i in range(k):
        for j in range(i + 1, k):
            d *= Fraction(ww[i] - ww[j] + j - i, j - i)
    assert d.denominator == 1
    return int(d)


def sn_dim(shape: Partition) -> int:
    """Number of standard tableaux of the shape (hook length formula)."""
    lam = partition(shape)
    if not lam:
        raise EmptyShape("symmetric-group irreps need a nonempty shape")
    n = sum(lam)
    den = 1
    for row in hook_lengths(lam):
        for h in row:
            den *= h
    return math.factorial(n) // den


# ---------------------------------------------------------------------------
# symmetric group characters


def sn_character(shape: Partition, cycle_type: Partition) -> int:
    """Irreducible S_n character value on a conjugacy class."""
    lam = partition(shape)
    mu = partition(cycle_type)
    if not lam:
        raise EmptyShape("symmetric-group irreps need a nonempty shape")
    if sum(lam) != sum(mu):
        raise ShapeMismatch(f"|{lam}| != |{mu}|")
    if any(p == 0 for p in mu):
        raise ShapeMismatch("cycle type must have positive parts")
    return _murnaghan_nakayama(lam, mu)


@cache
def _murnaghan_nakayama(lam: Partition, mu: Partition) -> int:
    # Border strip recursion on beta numbers: removing a strip of length r
    # moves one beta number down by r; the sign counts crossings.
    if not mu:
        return 1
    r, rest = mu[0], mu[1:]
    ell = len(lam)
    beta = [lam[i] + (ell - 1 - i) for i in range(ell)]
    bset = set(beta)
    total = 0
    for b in beta:
        c = b - r
        if c < 0 or c in bset:
            continue
        height = sum(1 for x in beta if c < x < b)
        nb = sorted((bset - {b}) | {c}, reverse=True)
        newshape = tuple(nb[i] - (ell - 1 - i) for i in range(ell))
        newshape = tuple(p for p in newshape if p > 0)
        total += (-1) ** height * _murnaghan_nakayama(newshape, rest)
    return total


def cycle_type_class_size(cycle_type: Partition) -> int:
    """Size of the S_n conjugacy class with the given cycle type."""
    mu = partition(cycle_type)
    n = sum(mu)
    z = 1
    for part in set(mu):
        a = mu.count(part)
        z *= part**a * math.factorial(a)
    return math.factorial(n) // z


# ---------------------------------------------------------------------------
# Kostka numbers and the Hall pairing


def kostka(shape: Partition, content: Sequence[int]) -> int:
    """Number of semistandard tableaux of the shape with the given content.

    The count only depends on the multiset of content entries, so the
    content is sorted before the cached recursion.
    """
    lam = partition(shape)
    cont = tuple(sorted((int(c) for c in content if c > 0), reverse=True))
    if sum(lam) != sum(cont):
        return 0
    return _kostka(lam, cont)


@cache
def _kostka(lam: Partition, cont: Partition) -> int:
    # Peel off all cells holding the largest letter: they form a horizontal
    # strip.  Recurse on the smaller shape and content.
    if not cont:
        return 1 if not lam else 0
    last = cont[-1]
    rest = cont[:-1]
    total = 0
    for smaller in _horizontal_strip_removals(lam, last):
        total += _kostka(smaller, rest)
    return total


def _horizontal_strip_removals(lam: Partition, size: int) -> Iterator[Partition]:
    # All mu obtained from lam by removing a horizontal strip of the size:
    # mu interlaces lam (lam_{i+1} <= mu_i <= lam_i) with |lam| - |mu| = size.
    ell = len(lam)

    def rec(i: int, remaining: int) -> Iterator[tuple[int, ...]]:
        if i == ell:
            if remaining == 0:
                yield ()
            return
        lo = lam[i + 1] if i + 1 < ell else 0
        hi = lam[i]
        for m in range(hi, lo - 1, -1):
            removed = hi - m
            if removed > remaining:
                break
            for rest in rec(i + 1, remaining - removed):
                yield (m,) + rest

    for tail in rec(0, size):
        yield partition(tail)


def _complete_homogeneous_expansion(mu: Partition) -> dict[Partition, int]:
    """Expand an irreducible-character symmetric function over the complete
    homogeneous basis via the determinantal formula."""
    ell = len(mu)
    out: dict[Partition, int] = {}
    for sigma in permutations(range(ell)):
        sign = _perm_sign(sigma)
        idx = []
        ok = True
        for i in range(ell):
            t = mu[i] - i + sigma[i]
            if t < 0:
                ok = False
                break
            if t > 0:
                idx.append(t)
        if not ok:
            continue
        key = tuple(sorted(idx, reverse=True))
        out[key] = out.get(key, 0) + sign
    return {k: v for k, v in out.items() if v != 0}


def _perm_sign(sigma: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(sigma)
    for start in range(len(sigma)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = sigma[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def hall_inner(lam_shape: Partition, mu_shape: Partition) -> int:
    """Inner product of two Schur functions, computed by expanding one into
    monomials (tableau contents) and the other over the dual basis of the
    monomial basis, then pairing coefficientwise."""
    lam = partition(lam_shape)
    mu = partition(mu_shape)
    if sum(lam) != sum(mu):
        return 0
    if not lam and not mu:
        return 1
    total = 0
    for beta, coeff in _complete_homogeneous_expansion(mu).items():
        total += coeff * kostka(lam, beta)
    return total


# ---------------------------------------------------------------------------
# duality bookkeeping: paired dimension sums


@dataclass(frozen=True)
class CauchyReport:
    """Per-label dimension products for one graded degree, against the
    closed-form count of monomials."""

    k: int
    M: int
    degree: int
    terms: tuple[tuple[Partition, int, int, int], ...]
    total: int
    expected: int

    @property
    def ok(self) -> bool:
        return self.total == self.expected

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "M": self.M,
            "degree": self.degree,
            "terms": [
                {"label": list(lab), "dim_k": dk, "dim_M": dm, "product": pr}
                for (lab, dk, dm, pr) in self.terms
            ],
            "total": self.total,
            "expected": self.expected,
            "ok": self.ok,
        }


def cauchy_check(k: int, M: int, n: int) -> CauchyReport:
    """Sum weyl_dim(lam,k) * weyl_dim(lam,M) over partitions of n with at
    most min(k, M) rows and compare with C(kM+n-1, n)."""
    if k <= 0 or M <= 0 or n < 0:
        raise ShapeMismatch(f"bad parameters k={k}, M={M}, n={n}")
    terms = []
    total = 0
    for lam in partitions_of(n, max_rows=min(k, M)):
        dk = weyl_dim(lam, k)
        dm = weyl_dim(lam, M)
        terms.append((lam, dk, dm, dk * dm))
        total += dk * dm
    expected = math.comb(k * M + n - 1, n)
    return CauchyReport(k, M, n, tuple(terms), total, expected)


# ---------------------------------------------------------------------------
# branching


def branch_restrict(shape: Partition, k: int) -> list[Partition]:
    """Restriction of a U(k+1) irrep to U(k): all interlacing labels.

    Returned most-dominant first.
    """
    lam = partition(shape)
    if k <= 0:
        raise ShapeMismatch(f"target rank must be positive, got {k}")
    if len(lam) > k + 1:
        raise ShapeMismatch(f"{lam} is not a U({k + 1}) label")
    padded = lam + (0,) * (k + 1 - len(lam))

    def rec(i: int) -> Iterator[tuple[int, ...]]:
        if i == k:
            yield ()
            return
        for m in range(padded[i], padded[i + 1] - 1, -1):
            for rest in rec(i + 1):
                yield (m,) + rest

    return [partition(mu) for mu in rec(0)]


# ---------------------------------------------------------------------------
# signed and half-integer weights


@dataclass(frozen=True)
class SignedWeight:
    """A two-block weight: m for the positive block, n for the negative one.

    Entries are weakly decreasing and nonnegative within each block; the
    realized weight vector is (m_1, ..., m_M, 0, ..., 0, -n_N, ..., -n_1).
    """

    m: tuple[int, ...]
    n: tuple[int, ...]

    def __post_init__(self) -> None:
        for block in (self.m, self.n):
            if any(x < 0 for x in block):
                raise ShapeMismatch(f"negative entry in block {block}")
            if any(block[i] < block[i + 1] for i in range(len(block) - 1)):
                raise ShapeMismatch(f"block not weakly decreasing: {block}")

    def realize(self, k: int) -> tuple[int, ...]:
        """The length-k weight vector, most dominant order."""
        lm = len(partition(self.m))
        ln = len(partition(self.n))
        if lm + ln > k:
            raise ShapeMismatch(
                f"blocks {self.m}/{self.n} need rank >= {lm + ln}, got {k}"
            )
        mid = (0,) * (k - lm - ln)
        neg = tuple(-x for x in reversed(partition(self.n)))
        return partition(self.m) + mid + neg


@dataclass(frozen=True)
class HalfIntWeight:
    """A weight with entries in (1/2)Z, stored as doubled integers."""

    doubled: tuple[int, ...]
    group: str = ""

    @classmethod
    def from_entries(cls, entries: Iterable, group: str = "") -> "HalfIntWeight":
        doubled = []
        for e in entries:
            f = Fraction(e)
            if f.denominator not in (1, 2):
                raise ShapeMismatch(f"entry {e} is not a half-integer")
            doubled.append(int(2 * f))
        return cls(tuple(doubled), group)

    @property
    def entries(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(d, 2) for d in self.doubled)

    @property
    def is_integral(self) -> bool:
        return all(d % 2 == 0 for d in self.doubled)

    def __str__(self) -> str:
        parts = []
        for d in self.doubled:
            parts.append(str(d // 2) if d % 2 == 0 else f"{d}/2")
        body = ", ".join(parts)
        return f"({body})" if not self.group else f"{self.group}({body})"

    @classmethod
    def parse(cls, text: str, group: str = "") -> "HalfIntWeight":
        items = [t.strip() for t in text.strip().strip("()").split(",") if t.strip()]
        return cls.from_entries((Fraction(t) for t in items), group)


def renormalize_weight(
    w: SignedWeight, M: int | None = None, N: int | None = None
) -> HalfIntWeight:
    """Half-form-corrected block weight attached to a strictly decreasing
    signed weight.

    Entry i of the m block becomes m_i + (N-M)/2 + i - 1/2; entry j of the
    n block becomes -(n_j + (M-N)/2 + j - 1/2), listed in the order
    (m entries, then the n entries with j running from N down to 1).  The
    output is weakly decreasing within each block but generically carries
    half-integer entries.
    """
    if M is None:
        M = len(w.m)
    if N is None:
        N = len(w.n)
    if M != len(w.m) or N != len(w.n):
        raise ShapeMismatch(
            f"block lengths ({len(w.m)}, {len(w.n)}) do not match (M, N)=({M}, {N})"
        )
    for block in (w.m, w.n):
        if any(block[i] <= block[i + 1] for i in range(len(block) - 1)):
            raise NotRenormalizable(f"block {block} is not strictly decreasing")
        if any(x <= 0 for x in block):
            raise NotRenormalizable(f"block {block} must be strictly positive")
    doubled = []
    for i, mi in enumerate(w.m, start=1):
        doubled.append(2 * mi + (N - M) + 2 * i - 1)
    for j in range(N, 0, -1):
        nj = w.n[j - 1]
        doubled.append(-(2 * nj + (M - N) + 2 * j - 1))
    return HalfIntWeight(tuple(doubled), group=f"U({M},{N})")


_SHIFT_CONTEXTS = ("dec2", "howehf", "kave", "kave2")


def shift_weight(
    w,
    convention: str,
    context: str,
    k: int | None = None,
    M: int | None = None,
    N: int | None = None,
    side: str = "left",
) -> HalfIntWeight:
    """Weight bookkeeping for the two quantization conventions.

    ``context`` picks which dual-pair setting the label lives in:

    * ``dec2``   rank-one compact pairing; ``w`` is a single degree n.
      left = U(k) side, right = U(1) side.
    * ``howehf`` general compact pairing; ``w`` is a partition.
      left = U(k) side, right = U(M) side.
    * ``kave`` / ``kave2`` the indefinite pairing; ``w`` is a SignedWeight
      (or an (m, n) pair of tuples).  left = U(k) side, right = the
      U(M,N) side.  Both context names accept both conventions; they are
      kept separate so call sites can name the identity they exercise.

    ``convention`` is ``sq`` for the plain second-quantized labels and
    ``hf`` for the half-form-corrected ones.  In every context the hf and
    sq outputs differ by a constant vector (a determinant power twist).
    """
    if context not in _SHIFT_CONTEXTS:
        raise ShapeMismatch(f"unknown context {context!r}")
    if convention not in ("sq", "hf"):
        raise ShapeMismatch(f"unknown convention {convention!r}")
    if side not in ("left", "right"):
        raise ShapeMismatch(f"unknown side {side!r}")
    hf = convention == "hf"

    if context == "dec2":
        if k is None or k <= 0:
            raise ShapeMismatch("dec2 needs a positive rank k")
        n = int(w)
        if n < 0:
            raise ShapeMismatch("degree must be nonnegative")
        if side == "left":
            doubled = [2 * n] + [0] * (k - 1)
            if hf:
                doubled = [d + 1 for d in doubled]
            return HalfIntWeight(tuple(doubled), group="U(k)")
        return HalfIntWeight((2 * n + (k if hf else 0),), group="U(1)")

    if context == "howehf":
        if k is None or k <= 0 or M is None or M <= 0:
            raise ShapeMismatch("howehf needs positive k and M")
        lam = partition(w)
        if len(lam) > min(k, M):
            raise ShapeMismatch(f"label {lam} needs at most min(k, M) rows")
        if side == "left":
            padded = lam + (0,) * (k - len(lam))
            shift = M if hf else 0
            return HalfIntWeight(tuple(2 * p + shift for p in padded), group="U(k)")
        padded = lam + (0,) * (M - len(lam))
        shift = k if hf else 0
        return HalfIntWeight(tuple(2 * p + shift for p in padded), group="U(M)")

    # kave / kave2
    if k is None or k <= 0:
        raise ShapeMismatch("indefinite contexts need a positive rank k")
    if isinstance(w, SignedWeight):
        sw = w
    else:
        m_part, n_part = w
        sw = SignedWeight(tuple(m_part), tuple(n_part))
    if M is None:
        M = len(sw.m)
    if N is None:
        N = len(sw.n)
    if M != len(sw.m) or N != len(sw.n):
        raise ShapeMismatch(
            f"blocks ({sw.m}, {sw.n}) do not match (M, N)=({M}, {N})"
        )
    if side == "left":
        realized = sw.realize(k)
        shift = (M - N) if hf else 0  # doubled entries: (M-N)/2 each
        return HalfIntWeight(tuple(2 * x + shift for x in realized), group="U(k)")
    shift = k if hf else 2 * k  # doubled: +k/2 each (hf) or +k each (sq)
    doubled = [2 * mi + shift for mi in sw.m]
    for nj in reversed(sw.n):
        doubled.append(-2 * nj - (k if hf else 0))
    return HalfIntWeight(tuple(doubled), group=f"U({M},{N})")
