"""Exact sparse integer matrices and their ranks.

Two rank routes are provided:

* :func:`rank_mod_p` eliminates over prime fields.  It is a lower bound on
  the rational rank, and equal to it for all but finitely many primes.
* :func:`rank_exact` is fraction-free (Bareiss) elimination over the
  integers and returns the rational rank.

Both accept an optional block structure (lists of row and column indices);
the rank is then computed per block and summed.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np
from sympy import isprime, nextprime

MM_HEADER = "%%MatrixMarket matrix coordinate integer general"

# largest prime size for which the vectorised int64 path is exact (p*p < 2**63)
_INT64_SAFE = 3037000493


class ParameterError(ValueError):
    pass


class RankResourceError(MemoryError):
    """Exact elimination would exceed the configured entry budget."""


class SparseIntMatrix:
    """Sparse matrix with arbitrary-precision integer entries.

    Stored as a dict of rows ``{i: {j: v}}`` with no explicit zeros.
    Instances are treated as immutable once built.
    """

    __slots__ = ("shape", "_rows", "_cols")

    def __init__(self, rows: int, cols: int, entries=None):
        """``entries`` is ``{(i, j): v}`` or an iterable of ``(i, j, v)``; duplicates add."""
        self.shape = (int(rows), int(cols))
        self._rows: dict[int, dict[int, int]] = {}
        self._cols = None
        if entries is None:
            return
        triples = ((i, j, v) for (i, j), v in entries.items()) if isinstance(entries, dict) else entries
        for i, j, v in triples:
            self._add(int(i), int(j), int(v))

    @classmethod
    def from_rows(cls, rows: int, cols: int, row_dicts: dict[int, dict[int, int]]):
        m = cls(rows, cols)
        for i, r in row_dicts.items():
            clean = {j: int(v) for j, v in r.items() if v}
            if clean:
                m._rows[i] = clean
        m._check()
        return m

    @classmethod
    def from_columns(cls, rows: int, cols: int, col_dicts):
        m = cls(rows, cols)
        it = col_dicts.items() if isinstance(col_dicts, dict) else enumerate(col_dicts)
        for j, col in it:
            for i, v in col.items():
                if v:
                    m._rows.setdefault(i, {})[j] = int(v)
        m._check()
        return m

    @classmethod
    def from_dense(cls, a) -> "SparseIntMatrix":
        a = [list(r) for r in a]
        rows = len(a)
        cols = len(a[0]) if rows else 0
        m = cls(rows, cols)
        for i, r in enumerate(a):
            d = {j: int(v) for j, v in enumerate(r) if v}
            if d:
                m._rows[i] = d
        return m

    @classmethod
    def identity(cls, n: int) -> "SparseIntMatrix":
        return cls.from_rows(n, n, {i: {i: 1} for i in range(n)})

    def _add(self, i: int, j: int, v: int):
        if not (0 <= i < self.shape[0] and 0 <= j < self.shape[1]):
            raise IndexError(f"({i}, {j}) outside shape {self.shape}")
        if v == 0:
            return
        row = self._rows.setdefault(i, {})
        nv = row.get(j, 0) + v
        if nv:
            row[j] = nv
        else:
            del row[j]
            if not row:
                del self._rows[i]

    def _check(self):
        r, c = self.shape
        for i, row in self._rows.items():
            if not 0 <= i < r or any(not 0 <= j < c for j in row):
                raise IndexError(f"entry outside shape {self.shape}")

    # -- access ---------------------------------------------------------
    @property
    def nnz(self) -> int:
        return sum(len(r) for r in self._rows.values())

    def row(self, i: int) -> dict[int, int]:
        return self._rows.get(i, {})

    def rows(self) -> dict[int, dict[int, int]]:
        return self._rows

    def items(self) -> Iterable[tuple[int, int, int]]:
        for i in sorted(self._rows):
            r = self._rows[i]
            for j in sorted(r):
                yield i, j, r[j]

    def get(self, i: int, j: int) -> int:
        return self._rows.get(i, {}).get(j, 0)

    def columns(self) -> dict[int, dict[int, int]]:
        cols: dict[int, dict[int, int]] = {}
        for i, r in self._rows.items():
            for j, v in r.items():
                cols.setdefault(j, {})[i] = v
        return cols

    def is_zero(self) -> bool:
        return not self._rows

    def __eq__(self, other) -> bool:
        return (isinstance(other, SparseIntMatrix) and self.shape == other.shape
                and self._rows == other._rows)

    def __repr__(self) -> str:
        return f"SparseIntMatrix(shape={self.shape}, nnz={self.nnz})"

    # -- algebra --------------------------------------------------------
    def transpose(self) -> "SparseIntMatrix":
        return SparseIntMatrix.from_rows(self.shape[1], self.shape[0], self.columns())

    @property
    def T(self) -> "SparseIntMatrix":
        return self.transpose()

    def scale(self, c: int) -> "SparseIntMatrix":
        if c == 0:
            return SparseIntMatrix(*self.shape)
        return SparseIntMatrix.from_rows(
            *self.shape, {i: {j: v * c for j, v in r.items()} for i, r in self._rows.items()})

    def __neg__(self):
        return self.scale(-1)

    def __add__(self, other: "SparseIntMatrix") -> "SparseIntMatrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        out = {i: dict(r) for i, r in self._rows.items()}
        for i, r in other._rows.items():
            tgt = out.setdefault(i, {})
            for j, v in r.items():
                tgt[j] = tgt.get(j, 0) + v
        return SparseIntMatrix.from_rows(*self.shape, out)

    def __sub__(self, other: "SparseIntMatrix") -> "SparseIntMatrix":
        return self + (-other)

    def __matmul__(self, other: "SparseIntMatrix") -> "SparseIntMatrix":
        if self.shape[1] != other.shape[0]:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        out: dict[int, dict[int, int]] = {}
        orows = other._rows
        for i, r in self._rows.items():
            acc: dict[int, int] = {}
            for k, a in r.items():
                ok = orows.get(k)
                if ok:
                    for j, b in ok.items():
                        acc[j] = acc.get(j, 0) + a * b
            out[i] = acc
        return SparseIntMatrix.from_rows(self.shape[0], other.shape[1], out)

    def apply(self, vec: dict[int, object]) -> dict[int, object]:
        """Multiply by a sparse column vector ``{index: value}``."""
        cols = self._column_cache()
        out: dict[int, object] = {}
        for k, x in vec.items():
            c = cols.get(k)
            if c:
                for i, a in c.items():
                    out[i] = out.get(i, 0) + a * x
        return {i: v for i, v in out.items() if v}

    def _column_cache(self):
        # safe because matrices are not mutated after construction
        if self._cols is None:
            self._cols = self.columns()
        return self._cols

    def kron(self, other: "SparseIntMatrix") -> "SparseIntMatrix":
        r2, c2 = other.shape
        out: dict[int, dict[int, int]] = {}
        for i, ra in self._rows.items():
            for k, rb in other._rows.items():
                row = {}
                for j, a in ra.items():
                    base = j * c2
                    for l, b in rb.items():
                        row[base + l] = a * b
                out[i * r2 + k] = row
        return SparseIntMatrix.from_rows(self.shape[0] * r2, self.shape[1] * c2, out)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "SparseIntMatrix":
        cpos = {c: t for t, c in enumerate(cols)}
        out = {}
        for s, i in enumerate(rows):
            r = self._rows.get(i)
            if r:
                out[s] = {cpos[j]: v for j, v in r.items() if j in cpos}
        return SparseIntMatrix.from_rows(len(rows), len(cols), out)

    def to_dense(self, dtype=object) -> np.ndarray:
        a = np.zeros(self.shape, dtype=dtype)
        for i, r in self._rows.items():
            for j, v in r.items():
                a[i, j] = v
        return a

    def to_dense_mod(self, p: int) -> np.ndarray:
        a = np.zeros(self.shape, dtype=np.int64)
        for i, r in self._rows.items():
            for j, v in r.items():
                a[i, j] = v % p
        return a

    def content(self) -> int:
        g = 0
        for r in self._rows.values():
            for v in r.values():
                g = gcd(g, v)
        return g

    def max_abs(self) -> int:
        return max((abs(v) for r in self._rows.values() for v in r.values()), default=0)


def block_diag(*mats: SparseIntMatrix) -> SparseIntMatrix:
    rows = cols = 0
    out = {}
    for m in mats:
        for i, r in m.rows().items():
            out[rows + i] = {cols + j: v for j, v in r.items()}
        rows += m.shape[0]
        cols += m.shape[1]
    return SparseIntMatrix.from_rows(rows, cols, out)


# -- MatrixMarket ------------------------------------------------------------
def matrix_market_text(m: SparseIntMatrix) -> str:
    lines = [MM_HEADER, f"{m.shape[0]} {m.shape[1]} {m.nnz}"]
    lines += [f"{i + 1} {j + 1} {v}" for i, j, v in m.items()]
    return "\n".join(lines) + "\n"


def write_matrix_market(m: SparseIntMatrix, path) -> None:
    Path(path).write_text(matrix_market_text(m))


def read_matrix_market(path) -> SparseIntMatrix:
    text = Path(path).read_text().splitlines()
    if not text or text[0].strip() != MM_HEADER:
        raise ValueError(f"{path}: expected header {MM_HEADER!r}")
    body = [ln for ln in text[1:] if ln.strip() and not ln.startswith("%")]
    rows, cols, nnz = (int(x) for x in body[0].split())
    out: dict[int, dict[int, int]] = {}
    for ln in body[1:]:
        i, j, v = ln.split()
        out.setdefault(int(i) - 1, {})[int(j) - 1] = int(v)
    m = SparseIntMatrix.from_rows(rows, cols, out)
    if m.nnz != nnz:
        raise ValueError(f"{path}: header announces {nnz} entries, found {m.nnz}")
    return m


# -- primes ---------------------------------------------------------------------
def random_primes(count: int = 2, bits: int = 31, seed=None) -> list[int]:
    """Distinct random primes of the given bit size, reproducible from ``seed``."""
    rng = random.Random(seed)
    out: list[int] = []
    while len(out) < count:
        # sympy.randprime draws from a global generator, so walk up from our own start
        start = rng.randrange(1 << (bits - 1), (1 << bits) - (1 << 12))
        p = nextprime(start)
        if p < (1 << bits) and p not in out:
            out.append(p)
    return out


# -- rank certificates --------------------------------------------------------------
@dataclass
class RankCertificate:
    rank: int
    mode: str  # "mod_p_probable" or "exact_certified"
    primes: list[int] = field(default_factory=list)
    per_prime: list[int] = field(default_factory=list)
    elapsed: float = 0.0
    pivots: int = 0

    @property
    def agree(self) -> bool:
        return len(set(self.per_prime)) <= 1

    def to_dict(self) -> dict:
        return {"rank": self.rank, "mode": self.mode, "primes": self.primes,
                "per_prime": self.per_prime, "pivots": self.pivots}


def _blocks_or_whole(m: SparseIntMatrix, blocks):
    if blocks is None:
        return [(list(range(m.shape[0])), list(range(m.shape[1])))]
    return blocks


def rank_mod_p(m, primes: Sequence[int] | None = None, blocks=None,
               dense_threshold: int = 4_000_000, seed=None) -> RankCertificate:
    """Rank over F_p for each prime; the reported rank is the maximum.

    ``m`` is a :class:`SparseIntMatrix` or a 2-d integer array.  Blocks whose
    dense size is below ``dense_threshold`` entries and whose prime fits the
    int64 fast path are eliminated densely with numpy; everything else uses
    sparse Markowitz elimination.
    """
    t0 = time.perf_counter()
    if primes is None:
        primes = random_primes(2, seed=seed)
    for p in primes:
        if not isprime(p):
            raise ParameterError(f"{p} is not prime")
    if not isinstance(m, SparseIntMatrix):
        m = SparseIntMatrix.from_dense(np.asarray(m, dtype=object))
    per = []
    pivots = 0
    for p in primes:
        total = 0
        for rows, cols in _blocks_or_whole(m, blocks):
            if not rows or not cols:
                continue
            sub = m if blocks is None else m.submatrix(rows, cols)
            if p < _INT64_SAFE and len(rows) * len(cols) <= dense_threshold:
                total += dense_rank_mod_p(sub.to_dense_mod(p), p)
            else:
                total += _sparse_rank_mod_p(sub, p)
        per.append(total)
        pivots += total
    return RankCertificate(max(per) if per else 0, "mod_p_probable", list(primes), per,
                           time.perf_counter() - t0, pivots)


def dense_rank_mod_p(a: np.ndarray, p: int) -> int:
    """Gaussian elimination over F_p on an int64 array (entries reduced mod p).

    Requires p < 3.04e9 so that products of reduced entries fit in int64.
    """
    if p >= _INT64_SAFE:
        raise ParameterError("dense int64 path needs p < 3.04e9")
    a = np.array(a, dtype=np.int64, copy=True) % p
    rows, cols = a.shape
    if rows == 0 or cols == 0:
        return 0
    if rows > cols:
        a = a.T.copy()
        rows, cols = cols, rows
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r, c:] = (a[r, c:] * inv) % p
        below = r + 1 + np.flatnonzero(a[r + 1:, c])
        if below.size:
            f = a[below, c][:, None]
            a[below, c:] = (a[below, c:] - f * a[r, c:][None, :]) % p
        r += 1
    return r


def _sparse_rank_mod_p(m: SparseIntMatrix, p: int) -> int:
    """Sparse elimination over F_p with a Markowitz pivot choice.

    Among the nonzeros of the currently shortest rows, the pivot minimises
    (row_count - 1) * (col_count - 1).
    """
    rows = {}
    for i, r in m.rows().items():
        d = {j: v % p for j, v in r.items() if v % p}
        if d:
            rows[i] = d
    colmap: dict[int, set[int]] = {}
    for i, r in rows.items():
        for j in r:
            colmap.setdefault(j, set()).add(i)
    rank = 0
    while rows:
        # candidate rows: a few of the shortest
        short = sorted(rows, key=lambda i: len(rows[i]))[:8]
        best = None
        for i in short:
            rl = len(rows[i]) - 1
            for j in rows[i]:
                cost = rl * (len(colmap[j]) - 1)
                if best is None or cost < best[0]:
                    best = (cost, i, j)
        _, pi, pj = best
        prow = rows.pop(pi)
        for j in prow:
            colmap[j].discard(pi)
        inv = pow(prow[pj], p - 2, p)
        for i in list(colmap[pj]):
            r = rows[i]
            f = (r[pj] * inv) % p
            for j, v in prow.items():
                nv = (r.get(j, 0) - f * v) % p
                if nv:
                    if j not in r:
                        colmap.setdefault(j, set()).add(i)
                    r[j] = nv
                elif j in r:
                    del r[j]
                    colmap[j].discard(i)
            if not r:
                del rows[i]
        del colmap[pj]
        rank += 1
    return rank


def rank_exact(m, blocks=None, max_entries: int = 2_000_000) -> RankCertificate:
    """Rational rank by fraction-free Bareiss elimination.

    Raises :class:`RankResourceError` when a block holds more than
    ``max_entries`` dense entries; use :func:`rank_mod_p` for those.
    """
    t0 = time.perf_counter()
    if not isinstance(m, SparseIntMatrix):
        m = SparseIntMatrix.from_dense(np.asarray(m, dtype=object))
    total = 0
    for rows, cols in _blocks_or_whole(m, blocks):
        if not rows or not cols:
            continue
        if len(rows) * len(cols) > max_entries:
            raise RankResourceError(
                f"block of {len(rows)}x{len(cols)} exceeds the exact budget of {max_entries} "
                "entries; use rank_mod_p instead")
        sub = m if blocks is None else m.submatrix(rows, cols)
        total += _bareiss_rank(sub)
    return RankCertificate(total, "exact_certified", [], [], time.perf_counter() - t0, total)


def _bareiss_rank(m: SparseIntMatrix) -> int:
    # rows as dicts; pivot on the sparsest remaining row, smallest entry
    rows = [dict(r) for r in m.rows().values() if r]
    rank = 0
    prev = 1
    while rows:
        rows.sort(key=len)
        prow = rows.pop(0)
        pj = min(prow, key=lambda j: abs(prow[j]))
        pv = prow[pj]
        nxt = []
        for r in rows:
            a = r.get(pj, 0)
            new = {}
            for j in set(r) | set(prow):
                if j == pj:
                    continue
                v = pv * r.get(j, 0) - a * prow.get(j, 0)
                if v:
                    q, rem = divmod(v, prev)
                    assert rem == 0
                    new[j] = q
            if new:
                nxt.append(new)
        rows = nxt
        prev = pv
        rank += 1
    return rank


# -- small exact rational helpers -----------------------------------------------------
def nullspace(rows: Sequence[Sequence], ncols: int) -> list[list[Fraction]]:
    """Basis of the right kernel of a rational matrix given as dense rows."""
    a = [[Fraction(x) for x in r] for r in rows]
    pivcols = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivcols.append(c)
        r += 1
        if r == len(a):
            break
    free = [c for c in range(ncols) if c not in pivcols]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivcols):
            v[pc] = -a[i][fc]
        basis.append(v)
    return basis


def primitive(vec: Sequence) -> list[int]:
    """Scale a rational vector to coprime integers, first nonzero positive."""
    vec = [Fraction(x) for x in vec]
    den = 1
    for x in vec:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in vec]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return ints
    ints = [x // g for x in ints]
    first = next(x for x in ints if x)
    return [-x for x in ints] if first < 0 else ints
