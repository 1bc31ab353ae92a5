"""Exact arithmetic on finite subsets of Z^d.

GroupSet is the universal carrier: an immutable, canonically ordered finite
set of integer lattice points.  All operations are pure functions returning
canonical sets, so values can be shared freely between threads.

Three interchangeable sumset engines are picked by shape:

* dimension 1 with a bounded affine span: big-integer bitmaps, one shift-or
  per element of the smaller operand;
* coordinates that pack into 63-bit mixed-radix keys, with enough point
  pairs to amortize array overhead: numpy broadcast-add plus unique;
* everything else: hash accumulation over point pairs.

The engines agree bit-exactly; the test suite cross-checks them.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

import numpy as np

Point = tuple[int, ...]

# Max span (in bits) of a sumset result handled by the bitmap engine.
BITMAP_WINDOW = 1 << 22

# Below this many point pairs the plain hash loop beats numpy setup cost.
_NUMPY_MIN_PAIRS = 1 << 14

_BYTE_BITS = [tuple(i for i in range(8) if b >> i & 1) for b in range(256)]


class DimensionMismatch(ValueError):
    """Operands live in different ambient dimensions."""


class EmptySetError(ValueError):
    """The operation requires a nonempty set."""


def _normalize_point(p, dim: int) -> Point:
    if isinstance(p, int):
        p = (p,)
    else:
        p = tuple(int(x) for x in p)
    if len(p) != dim:
        raise DimensionMismatch(f"point {p} has {len(p)} coordinates, expected {dim}")
    return p


class GroupSet:
    """Immutable finite subset of Z^d with value semantics.

    Canonical form is a lexicographically sorted, duplicate-free tuple of
    d-tuples of ints; construction canonicalizes eagerly so equality and
    hashing are structural.
    """

    __slots__ = ("_dim", "_points", "_set", "_hash")

    def __init__(self, dim: int, points: Iterable = ()):
        dim = int(dim)
        if dim < 1:
            raise ValueError(f"dimension must be at least 1, got {dim}")
        pts = tuple(sorted({_normalize_point(p, dim) for p in points}))
        object.__setattr__(self, "_dim", dim)
        object.__setattr__(self, "_points", pts)
        object.__setattr__(self, "_set", frozenset(pts))
        object.__setattr__(self, "_hash", hash((dim, pts)))

    def __setattr__(self, name, value):
        raise AttributeError("GroupSet is immutable")

    @classmethod
    def of_ints(cls, values: Iterable[int]) -> "GroupSet":
        """Dimension-1 set from plain integers."""
        return cls(1, [(int(v),) for v in values])

    @property
    def dim(self) -> int:
        return self._dim

    @property
    def points(self) -> tuple[Point, ...]:
        return self._points

    def values(self) -> tuple[int, ...]:
        """Coordinates of a dimension-1 set as plain ints."""
        if self._dim != 1:
            raise DimensionMismatch("values() requires a dimension-1 set")
        return tuple(p[0] for p in self._points)

    def cardinality(self) -> int:
        return len(self._points)

    def is_empty(self) -> bool:
        return not self._points

    def contains(self, p) -> bool:
        return _normalize_point(p, self._dim) in self._set

    def subset_of(self, other: "GroupSet") -> bool:
        _require_same_dim(self, other)
        return self._set <= other._set

    def minus(self, other: "GroupSet") -> "GroupSet":
        """Set difference (not the difference set U-V)."""
        _require_same_dim(self, other)
        return GroupSet(self._dim, self._set - other._set)

    def union(self, other: "GroupSet") -> "GroupSet":
        _require_same_dim(self, other)
        return GroupSet(self._dim, self._set | other._set)

    def intersect(self, other: "GroupSet") -> "GroupSet":
        _require_same_dim(self, other)
        return GroupSet(self._dim, self._set & other._set)

    def translate(self, t) -> "GroupSet":
        t = _normalize_point(t, self._dim)
        return GroupSet(self._dim, [tuple(x + s for x, s in zip(p, t)) for p in self._points])

    def __len__(self) -> int:
        return len(self._points)

    def __iter__(self) -> Iterator[Point]:
        return iter(self._points)

    def __contains__(self, p) -> bool:
        try:
            return self.contains(p)
        except DimensionMismatch:
            return False

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupSet):
            return NotImplemented
        return self._dim == other._dim and self._points == other._points

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        if len(self._points) > 8:
            shown = ", ".join(map(str, self._points[:8]))
            return f"GroupSet(dim={self._dim}, {{{shown}, ...}} |{len(self._points)}|)"
        return f"GroupSet(dim={self._dim}, {{{', '.join(map(str, self._points))}}})"


@dataclass(frozen=True)
class DoublingStats:
    """Cardinalities of A and A+A with the exact growth ratio K."""

    size: int
    sumset_size: int
    K: Fraction


def _require_same_dim(U: GroupSet, V: GroupSet) -> None:
    if U.dim != V.dim:
        raise DimensionMismatch(f"dimension mismatch: {U.dim} vs {V.dim}")


# ---------------------------------------------------------------------------
# sumset engines


def _bitmap_from(vals: Sequence[int], lo: int) -> int:
    bits = 0
    for v in vals:
        bits |= 1 << (v - lo)
    return bits


def _bits_to_values(bits: int, lo: int) -> list[int]:
    out = []
    raw = bits.to_bytes((bits.bit_length() + 7) // 8, "little")
    for i, byte in enumerate(raw):
        if byte:
            base = lo + 8 * i
            for off in _BYTE_BITS[byte]:
                out.append(base + off)
    return out


def _bitmap_sum(u_vals: Sequence[int], v_vals: Sequence[int]) -> tuple[int, int]:
    """Bitmap of {u+v} with its offset.  Inputs sorted and nonempty."""
    if len(u_vals) > len(v_vals):
        u_vals, v_vals = v_vals, u_vals
    lo_u, lo_v = u_vals[0], v_vals[0]
    base = _bitmap_from(v_vals, lo_v)
    acc = 0
    for u in u_vals:
        acc |= base << (u - lo_u)
    return acc, lo_u + lo_v

def _try_numpy_plan(u_pts, v_pts, dim):
    """Mixed-radix encoding plan for u+v, or None when keys exceed 63 bits.

    Per-coordinate result ranges are sized so digit sums never carry, hence
    key(u) + key(v) = key(u+v) exactly.
    """
    lou = [min(p[i] for p in u_pts) for i in range(dim)]
    hiu = [max(p[i] for p in u_pts) for i in range(dim)]
    lov = [min(p[i] for p in v_pts) for i in range(dim)]
    hiv = [max(p[i] for p in v_pts) for i in range(dim)]
    ranges = [(hiu[i] + hiv[i]) - (lou[i] + lov[i]) + 1 for i in range(dim)]
    total = 1
    for r in ranges:
        total *= r
        if total > 1 << 62:
            return None
    strides = [0] * dim
    s = 1
    for i in range(dim - 1, -1, -1):
        strides[i] = s
        s *= ranges[i]
    return lou, lov, ranges, strides


def _numpy_keys(pts, lo, strides):
    dim = len(lo)
    arr = np.empty(len(pts), dtype=np.int64)
    for idx, p in enumerate(pts):
        k = 0
        for i in range(dim):
            k += (p[i] - lo[i]) * strides[i]
        arr[idx] = k
    return arr


def _numpy_sum(u_pts, v_pts, dim, plan, size_only: bool):
    lou, lov, ranges, strides = plan
    eu = _numpy_keys(u_pts, lou, strides)
    ev = _numpy_keys(v_pts, lov, strides)
    keys = np.unique(eu[:, None] + ev[None, :])
    if size_only:
        return int(keys.size)
    lo_res = [lou[i] + lov[i] for i in range(dim)]
    cols = []
    for i in range(dim):
        cols.append((keys // strides[i]) % ranges[i])
    col_lists = [c.tolist() for c in cols]
    out = []
    for row in zip(*col_lists):
        out.append(tuple(row[i] + lo_res[i] for i in range(dim)))
    return out


def _hash_sum(u_pts, v_pts, dim, size_only: bool):
    acc = set()
    if len(u_pts) > len(v_pts):
        u_pts, v_pts = v_pts, u_pts
    if dim == 1:
        vv = [p[0] for p in v_pts]
        for (u,) in u_pts:
            acc.update(u + v for v in vv)
        if size_only:
            return len(acc)
        return [(x,) for x in acc]
    for u in u_pts:
        for v in v_pts:
            acc.add(tuple(a + b for a, b in zip(u, v)))
    if size_only:
        return len(acc)
    return list(acc)


def _sum_engine(U: GroupSet, V: GroupSet, size_only: bool):
    u_pts, v_pts = U.points, V.points
    dim = U.dim
    if dim == 1:
        lo = u_pts[0][0] + v_pts[0][0]
        hi = u_pts[-1][0] + v_pts[-1][0]
        if hi - lo + 1 <= BITMAP_WINDOW:
            bits, off = _bitmap_sum([p[0] for p in u_pts], [p[0] for p in v_pts])
            if size_only:
                return bits.bit_count()
            return [(x,) for x in _bits_to_values(bits, off)]
    if len(u_pts) * len(v_pts) >= _NUMPY_MIN_PAIRS:
        plan = _try_numpy_plan(u_pts, v_pts, dim)
        if plan is not None:
            return _numpy_sum(u_pts, v_pts, dim, plan, size_only)
    return _hash_sum(u_pts, v_pts, dim, size_only)


# ---------------------------------------------------------------------------
# public operations


def sumset(U: GroupSet, V: GroupSet) -> GroupSet:
    """{u+v : u in U, v in V}, canonical."""
    _require_same_dim(U, V)
    if U.is_empty() or V.is_empty():
        return GroupSet(U.dim)
    return GroupSet(U.dim, _sum_engine(U, V, size_only=False))


def sumset_size(U: GroupSet, V: GroupSet) -> int:
    """|U+V| without materializing the set."""
    _require_same_dim(U, V)
    if U.is_empty() or V.is_empty():
        return 0
    return _sum_engine(U, V, size_only=True)


def dilate(lam: int, A: GroupSet) -> GroupSet:
    """{lam*a : a in A}; injective for lam != 0."""
    lam = int(lam)
    return GroupSet(A.dim, [tuple(lam * x for x in p) for p in A.points])


def difference_set(U: GroupSet, V: GroupSet) -> GroupSet:
    """{u-v : u in U, v in V}."""
    return sumset(U, dilate(-1, V))


def difference_set_size(U: GroupSet, V: GroupSet) -> int:
    return sumset_size(U, dilate(-1, V))


def dilate_sum(A: GroupSet, lam: int, B: GroupSet) -> GroupSet:
    """A + lam*B = {a + lam*b : a in A, b in B}."""
    _require_same_dim(A, B)
    return sumset(A, dilate(lam, B))


def dilate_sum_size(A: GroupSet, lam: int, B: GroupSet) -> int:
    _require_same_dim(A, B)
    return sumset_size(A, dilate(lam, B))


def kfold(k: int, A: GroupSet) -> GroupSet:
    """The k-fold iterated sumset A + A + ... + A."""
    k = int(k)
    if k < 1:
        raise ValueError(f"fold count must be positive, got {k}")
    acc = A
    for _ in range(k - 1):
        acc = sumset(acc, A)
    return acc


def doubling(A: GroupSet) -> DoublingStats:
    """|A|, |A+A| and the exact ratio K = |A+A|/|A|."""
    if A.is_empty():
        raise EmptySetError("doubling ratio of the empty set is undefined")
    n = len(A)
    ss = sumset_size(A, A)
    return DoublingStats(size=n, sumset_size=ss, K=Fraction(ss, n))


def fiber(U: GroupSet, V: GroupSet, d) -> GroupSet:
    """U cut down to the translate d+V, i.e. U ∩ (d+V).

    Counts the representations of d as a difference u - v; empty when d is
    not in U-V.
    """
    _require_same_dim(U, V)
    d = _normalize_point(d, U.dim)
    shifted = {tuple(x + s for x, s in zip(p, d)) for p in V.points}
    return GroupSet(U.dim, [p for p in U.points if p in shifted])


def fiber_size(U: GroupSet, V: GroupSet, d) -> int:
    _require_same_dim(U, V)
    d = _normalize_point(d, U.dim)
    uset = U._set
    count = 0
    for p in V.points:
        if tuple(x + s for x, s in zip(p, d)) in uset:
            count += 1
    return count


def base_embed(A: GroupSet, order: int) -> GroupSet:
    """Flatten A ⊂ Z^d to Z through a mixed-radix digit map.

    After translating A to nonnegative coordinates, maps x to
    sum_i x_i * B^(i-1) with base B = 1 + order * (max coordinate).  Digit
    sums of up to `order` points never carry, so every coincidence pattern
    among sums with total coefficient mass <= order is preserved both ways
    (an isomorphism of that order); in particular |A|, and cardinalities of
    sums of few translated dilates, survive the flattening.
    """
    order = int(order)
    if order < 2:
        raise ValueError(f"embedding order must be at least 2, got {order}")
    if A.is_empty():
        return GroupSet(1)
    d = A.dim
    mins = [min(p[i] for p in A.points) for i in range(d)]
    shifted = [tuple(p[i] - mins[i] for i in range(d)) for p in A.points]
    maxc = max((max(p) for p in shifted), default=0)
    base = 1 + order * maxc
    out = []
    for p in shifted:
        acc = 0
        for i in range(d - 1, -1, -1):
            acc = acc * base + p[i]
        out.append((acc,))
    return GroupSet(1, out)


def tensor_power(A: GroupSet, r: int) -> GroupSet:
    """Cartesian power A^r inside Z^(r*d), coordinates concatenated."""
    r = int(r)
    if r < 1:
        raise ValueError(f"power must be positive, got {r}")
    if r == 1:
        return A
    pts = [sum(combo, ()) for combo in itertools.product(A.points, repeat=r)]
    return GroupSet(A.dim * r, pts)


# ---------------------------------------------------------------------------
# text interchange format


def format_set(A: GroupSet) -> str:
    """Text form: `dim d` then one point per line, canonical order."""
    lines = [f"dim {A.dim}"]
    for p in A.points:
        lines.append(" ".join(str(x) for x in p))
    return "\n".join(lines) + "\n"


def parse_set(text: str) -> GroupSet:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or not lines[0].startswith("dim"):
        raise ValueError("set file must start with a 'dim <d>' line")
    head = lines[0].split()
    if len(head) != 2:
        raise ValueError(f"malformed dim line: {lines[0]!r}")
    dim = int(head[1])
    pts = []
    for ln in lines[1:]:
        coords = ln.split()
        if len(coords) != dim:
            raise ValueError(f"expected {dim} coordinates, got {ln!r}")
        pts.append(tuple(int(c) for c in coords))
    return GroupSet(dim, pts)


def load_set(path) -> GroupSet:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_set(fh.read())


def dump_set(A: GroupSet, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_set(A))
