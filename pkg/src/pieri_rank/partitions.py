"""Partitions, Young diagrams and the dimension formulas for GL(n) modules.

Boxes are indexed 1-based as ``(row, column)``.  Everything here is exact
integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import prod
from typing import Iterable, Iterator, Sequence


class InvalidPartitionError(ValueError):
    """Raised when a sequence is not a weakly decreasing non-negative sequence."""


class Partition(tuple):
    """Weakly decreasing tuple of non-negative integers, trailing zeros dropped.

    Behaves like a plain tuple, so ``Partition([6, 2, 0]) == (6, 2)``.
    """

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(int(p) for p in parts)
        if any(p < 0 for p in parts):
            raise InvalidPartitionError(f"negative part in {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise InvalidPartitionError(f"{parts} is not weakly decreasing")
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        return super().__new__(cls, parts)

    def __repr__(self) -> str:
        return f"Partition({tuple(self)})"

    @property
    def length(self) -> int:
        return len(self)

    @property
    def size(self) -> int:
        return sum(self)

    def part(self, i: int) -> int:
        """1-based part, zero past the end."""
        return self[i - 1] if 1 <= i <= len(self) else 0

    def padded(self, n: int) -> tuple[int, ...]:
        if len(self) > n:
            raise InvalidPartitionError(f"{self} has more than {n} parts")
        return tuple(self) + (0,) * (n - len(self))

    def conjugate(self) -> "Partition":
        if not self:
            return Partition()
        return Partition(sum(1 for p in self if p > j) for j in range(self[0]))

    def boxes(self) -> Iterator[tuple[int, int]]:
        for i, row in enumerate(self, start=1):
            for j in range(1, row + 1):
                yield (i, j)

    def contains(self, other: Sequence[int]) -> bool:
        other = Partition(other)
        return len(other) <= len(self) and all(a >= b for a, b in zip(self, other))


@dataclass(frozen=True)
class Weight:
    """Integer weight of fixed length; ``basis`` tags the coordinate system.

    ``"epsilon"`` weights are the usual GL(n) entry sequences, ``"fundamental"``
    weights are coefficients on fundamental weights (used for E6).
    """

    entries: tuple[int, ...]
    basis: str = "epsilon"

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(int(x) for x in self.entries))

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def is_dominant(self) -> bool:
        e = self.entries
        return all(a >= b for a, b in zip(e, e[1:]))

    def as_partition(self) -> Partition:
        return Partition(self.entries)


def as_weight(w) -> Weight:
    return w if isinstance(w, Weight) else Weight(tuple(w))


def hook_lengths(lam: Sequence[int]) -> list[list[int]]:
    """Hook length of every box, returned row by row.

    >>> hook_lengths((4, 2, 1))
    [[6, 4, 2, 1], [3, 1], [1]]
    """
    lam = Partition(lam)
    conj = lam.conjugate()
    return [
        [(row - j) + (conj[j - 1] - i) + 1 for j in range(1, row + 1)]
        for i, row in enumerate(lam, start=1)
    ]


def schur_dim(lam: Sequence[int], n: int) -> int:
    """Dimension of the Schur module S_lam(C^n) by the hook-content formula.

    Returns 0 when lam has more than n nonzero parts.
    """
    lam = Partition(lam)
    if len(lam) > n:
        return 0
    hooks = hook_lengths(lam)
    num = prod(n - i + j for i, j in lam.boxes())
    den = prod(h for row in hooks for h in row)
    q, r = divmod(num, den)
    assert r == 0
    return q


def weyl_dim(weight: Sequence[int]) -> int:
    """Weyl dimension formula for an arbitrary integer sequence of length n.

    Agrees with :func:`schur_dim` on weakly decreasing sequences (negative
    entries allowed, the determinant twist does not change dimension).  For
    non-dominant sequences it returns the signed value of the formula, which
    is the Euler characteristic convention of Borel-Weil-Bott.
    """
    w = [int(x) for x in weight]
    n = len(w)
    num = 1
    den = 1
    for i, j in combinations(range(n), 2):
        num *= w[i] - w[j] + j - i
        den *= j - i
    q, r = divmod(num, den)
    assert r == 0
    return q


def sequence_dim(seq: Sequence[int], n: int) -> int:
    """Dimension of S_seq(C^n) for a literally written sequence.

    A sequence with more than ``n`` entries, or with more than ``n`` nonzero
    parts, names the zero module.  Otherwise the sequence is padded with zeros
    and evaluated with the Weyl formula.
    """
    seq = tuple(int(x) for x in seq)
    if len(seq) > n or sum(1 for x in seq if x != 0) > n:
        return 0
    return weyl_dim(seq + (0,) * (n - len(seq)))


def ssyt_count(lam: Sequence[int], n: int) -> int:
    """Count semistandard tableaux of shape lam with entries in 1..n.

    Brute-force enumeration; used as an independent check of the hook formula.
    """
    return sum(1 for _ in iter_ssyt(lam, n))


def iter_ssyt(lam: Sequence[int], n: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Yield semistandard tableaux as tuples of rows.

    The fill proceeds in reading order with values ascending, so the output is
    sorted lexicographically by row-reading word.
    """
    lam = Partition(lam)
    if len(lam) > n:
        return
    cells = list(lam.boxes())
    grid: dict[tuple[int, int], int] = {}

    def fill(pos: int):
        if pos == len(cells):
            yield tuple(tuple(grid[(i, j)] for j in range(1, row + 1))
                        for i, row in enumerate(lam, start=1))
            return
        i, j = cells[pos]
        lo = 1
        if j > 1:
            lo = max(lo, grid[(i, j - 1)])
        if i > 1:
            lo = max(lo, grid[(i - 1, j)] + 1)
        # entries below still need room to increase strictly
        hi = n - (lam.conjugate()[j - 1] - i)
        for v in range(lo, hi + 1):
            grid[(i, j)] = v
            yield from fill(pos + 1)
        grid.pop((i, j), None)

    yield from fill(0)


def pieri_summands(lam: Sequence[int], d: int, kind: str, n: int) -> list[Partition]:
    """Partitions in S_lam V (x) Sym^d V (``kind="symmetric"``) or (x) wedge^d V.

    Symmetric: add d boxes, no two in one column.  Exterior: no two in one row.
    Only results with at most n rows are kept.  Sorted in reverse lex order.
    """
    if kind not in ("symmetric", "exterior"):
        raise ValueError(f"unknown Pieri kind {kind!r}")
    lam = Partition(lam)
    out = {mu for mu in _add_boxes(lam, d, n) if _is_strip(lam, mu, kind)}
    return sorted(out, reverse=True)


def _add_boxes(lam: Partition, d: int, n: int) -> set[Partition]:
    layer = {lam}
    for _ in range(d):
        nxt = set()
        for p in layer:
            parts = list(p.padded(n)) if len(p) <= n else list(p)
            for i in range(len(parts)):
                if i == 0 or parts[i - 1] > parts[i]:
                    q = parts.copy()
                    q[i] += 1
                    nxt.add(Partition(q))
        layer = nxt
    return layer


def _is_strip(lam: Partition, mu: Partition, kind: str) -> bool:
    if not mu.contains(lam):
        return False
    if kind == "symmetric":
        # horizontal strip: mu_{i+1} <= lam_i
        return all(mu.part(i + 1) <= lam.part(i) for i in range(1, len(mu)))
    return all(mu.part(i) - lam.part(i) <= 1 for i in range(1, len(mu) + 1))


@dataclass(frozen=True)
class StripType:
    """Classification of the skew shape mu/lam.

    ``kind`` is one of ``same_row``, ``same_column``, ``other_horizontal_strip``,
    ``other_vertical_strip``, ``not_a_strip``, ``not_contained``.  ``index`` is
    the 1-based row (same_row) or column (same_column), 0 for the empty skew
    shape.  A single box is reported as ``same_row`` with ``column`` also set.
    """

    kind: str
    index: int = 0
    boxes: int = 0
    column: int = 0

    @property
    def is_row_or_column(self) -> bool:
        return self.kind in ("same_row", "same_column")

    def __str__(self) -> str:
        if self.kind in ("same_row", "same_column"):
            return f"{self.kind}({self.index}; {self.boxes} boxes)"
        return self.kind


def strip_type(lam: Sequence[int], mu: Sequence[int]) -> StripType:
    lam, mu = Partition(lam), Partition(mu)
    if not mu.contains(lam):
        return StripType("not_contained")
    skew = [(i, j) for (i, j) in mu.boxes() if j > lam.part(i)]
    if not skew:
        return StripType("same_row", 0, 0)
    rows = {i for i, _ in skew}
    cols = {j for _, j in skew}
    if len(rows) == 1:
        (r,) = rows
        col = next(iter(cols)) if len(cols) == 1 else 0
        return StripType("same_row", r, len(skew), col)
    if len(cols) == 1:
        (c,) = cols
        return StripType("same_column", c, len(skew))
    if len(cols) == len(skew):
        return StripType("other_horizontal_strip", 0, len(skew))
    if len(rows) == len(skew):
        return StripType("other_vertical_strip", 0, len(skew))
    return StripType("not_a_strip", 0, len(skew))


def added_rows(lam: Sequence[int], mu: Sequence[int]) -> list[int]:
    """1-based rows of mu/lam, with multiplicity, top to bottom."""
    lam, mu = Partition(lam), Partition(mu)
    return [i for i in range(1, len(mu) + 1) for _ in range(mu.part(i) - lam.part(i))]


def dual_weight(w) -> Weight:
    """(w_1, ..., w_n) -> (-w_n, ..., -w_1)."""
    w = as_weight(w)
    return Weight(tuple(-x for x in reversed(w.entries)), w.basis)


def twist(w, k: int) -> Weight:
    """Tensor with det^k: add k to every entry."""
    w = as_weight(w)
    return Weight(tuple(x + k for x in w.entries), w.basis)


def lift(lam: Sequence[int], k: int) -> Partition:
    """Prepend a first row of length k; needs k >= lam_1."""
    lam = Partition(lam)
    if lam and k < lam[0]:
        raise InvalidPartitionError(f"cannot lift {tuple(lam)} by k={k} < {lam[0]}")
    return Partition((k,) + tuple(lam))


def normalize_twist(w) -> tuple[Partition, int]:
    """Twist a dominant epsilon weight so its last entry is 0.

    Returns the partition and the twist that was added.
    """
    w = as_weight(w)
    if not w.is_dominant():
        raise InvalidPartitionError(f"{w.entries} is not dominant")
    if not w.entries:
        return Partition(), 0
    k = -w.entries[-1]
    return Partition(x + k for x in w.entries), k


def partitions_of(total: int, max_parts: int | None = None,
                  max_part: int | None = None) -> Iterator[Partition]:
    """All partitions of ``total``, optionally bounded in length and largest part."""
    if max_part is None:
        max_part = total

    def rec(rem, cap, parts):
        if rem == 0:
            yield Partition(parts)
            return
        if max_parts is not None and len(parts) >= max_parts:
            return
        for p in range(min(rem, cap), 0, -1):
            yield from rec(rem - p, p, parts + [p])

    yield from rec(total, max_part, [])


def parse_partition(text: str) -> Partition:
    """Parse CLI notation ``"6,2"`` (empty string is the empty partition)."""
    text = text.strip()
    if not text or text in ("()", "[]", "0"):
        return Partition()
    return Partition(int(x) for x in text.strip("()[]").split(",") if x.strip())
