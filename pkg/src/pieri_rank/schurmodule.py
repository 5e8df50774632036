"""Schur modules S_lam(C^n) on the semistandard tableau basis.

Realization
-----------
A filling T of lam (columns c_1, ..., c_m, column c_j of height h_j) is sent
to the polynomial

    [T](X) = prod_j det X[c_j, 1..h_j]

in the entries of an n x l(lam) matrix X.  GL(n) acts on the row index of X;
the Lie algebra element E_ab acts as the derivation x_bj -> x_aj.  On a
filling this means: replace one entry b by a, summed over boxes.  The
semistandard fillings give a basis of the span of all [T], which is the
irreducible module of highest weight lam.

Straightening (expressing an arbitrary [T] in the semistandard basis) is done
by exact evaluation: on a weight block of size m we pick m integer points at
which the basis polynomials are linearly independent, solve modulo a large
prime, lift, and then check the solution exactly over the integers.  The
straightening coefficients are integers, so a successful check is a proof.
"""

from __future__ import annotations

import random
import threading
from itertools import combinations
from pathlib import Path
from typing import Sequence

from .exactla import SparseIntMatrix, write_matrix_market
from .partitions import Partition, iter_ssyt

# bump whenever basis order or generator conventions change
BASIS_VERSION = 1

_P = (1 << 127) - 1


class StraighteningError(RuntimeError):
    pass


Tableau = tuple[tuple[int, ...], ...]  # rows


def tableau_columns(t: Tableau) -> tuple[tuple[int, ...], ...]:
    width = len(t[0]) if t else 0
    return tuple(tuple(row[j] for row in t if len(row) > j) for j in range(width))


def tableau_weight(t: Tableau, n: int) -> tuple[int, ...]:
    w = [0] * n
    for row in t:
        for x in row:
            w[x - 1] += 1
    return tuple(w)


def _det(m: list[list[int]]) -> int:
    # Bareiss on a tiny integer matrix
    a = [r[:] for r in m]
    k = len(a)
    if k == 0:
        return 1
    sign, prev = 1, 1
    for c in range(k - 1):
        if a[c][c] == 0:
            sw = next((r for r in range(c + 1, k) if a[r][c] != 0), None)
            if sw is None:
                return 0
            a[c], a[sw] = a[sw], a[c]
            sign = -sign
        for r in range(c + 1, k):
            for j in range(c + 1, k):
                a[r][j] = (a[r][j] * a[c][c] - a[r][c] * a[c][j]) // prev
        prev = a[c][c]
    return sign * a[k - 1][k - 1]


class _Point:
    """An integer matrix X together with all its leading-column minors."""

    def __init__(self, x: list[list[int]], heights: set[int]):
        n = len(x)
        self.minors: dict[tuple[int, ...], int] = {}
        for h in heights:
            for rows in combinations(range(1, n + 1), h):
                self.minors[rows] = _det([x[r - 1][:h] for r in rows])

    def column_value(self, col: tuple[int, ...]) -> int:
        if len(set(col)) < len(col):
            return 0
        order = sorted(range(len(col)), key=col.__getitem__)
        # sign of the sorting permutation
        sign, seen = 1, [False] * len(col)
        for i in range(len(col)):
            if not seen[i]:
                j, cyc = i, 0
                while not seen[j]:
                    seen[j] = True
                    j = order[j]
                    cyc += 1
                if cyc % 2 == 0:
                    sign = -sign
        return sign * self.minors[tuple(sorted(col))]

    def value(self, cols: Sequence[tuple[int, ...]]) -> int:
        v = 1
        for c in cols:
            v *= self.column_value(c)
            if v == 0:
                return 0
        return v


def _inverse_mod(a: list[list[int]], p: int) -> list[list[int]]:
    m = len(a)
    aug = [[x % p for x in row] + [int(i == j) for j in range(m)] for i, row in enumerate(a)]
    for c in range(m):
        piv = next((r for r in range(c, m) if aug[r][c]), None)
        if piv is None:
            raise StraighteningError("evaluation matrix is singular")
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = pow(aug[c][c], p - 2, p)
        aug[c] = [x * inv % p for x in aug[c]]
        for r in range(m):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [(x - f * y) % p for x, y in zip(aug[r], aug[c])]
    return [row[m:] for row in aug]


class Representation:
    """A weight-graded gl(n) representation given by integer Chevalley matrices.

    ``e[i]`` and ``f[i]`` (0-based, i < n-1) are the matrices of E_{i,i+1}
    and E_{i+1,i}; ``weights[b]`` is the torus weight of basis vector b.
    """

    def __init__(self, n: int, weights: list[tuple[int, ...]],
                 e: list[SparseIntMatrix], f: list[SparseIntMatrix], label: str = ""):
        self.n = n
        self.weights = [tuple(w) for w in weights]
        self.e = e
        self.f = f
        self.label = label
        self._blocks = None

    @property
    def dim(self) -> int:
        return len(self.weights)

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.label} n={self.n} dim={self.dim}>"

    def blocks(self) -> dict[tuple[int, ...], list[int]]:
        """Weight -> basis indices (ascending)."""
        if self._blocks is None:
            out: dict[tuple[int, ...], list[int]] = {}
            for b, w in enumerate(self.weights):
                out.setdefault(w, []).append(b)
            self._blocks = out
        return self._blocks

    def h(self, i: int) -> SparseIntMatrix:
        """Diagonal matrix of E_ii - E_{i+1,i+1} (0-based i)."""
        return SparseIntMatrix.from_rows(
            self.dim, self.dim, {b: {b: w[i] - w[i + 1]} for b, w in enumerate(self.weights)})

    def generators(self) -> list[tuple[str, SparseIntMatrix]]:
        return [(f"e{i + 1}", m) for i, m in enumerate(self.e)] + \
               [(f"f{i + 1}", m) for i, m in enumerate(self.f)]

    def tensor(self, other: "Representation") -> "Representation":
        """Tensor product; basis (a, b) sits at index a * other.dim + b."""
        if other.n != self.n:
            raise ValueError("tensor factors must share n")
        ia = SparseIntMatrix.identity(self.dim)
        ib = SparseIntMatrix.identity(other.dim)
        e = [x.kron(ib) + ia.kron(y) for x, y in zip(self.e, other.e)]
        f = [x.kron(ib) + ia.kron(y) for x, y in zip(self.f, other.f)]
        w = [tuple(p + q for p, q in zip(wa, wb)) for wa in self.weights for wb in other.weights]
        return Representation(self.n, w, e, f, f"({self.label})x({other.label})")

    def dual(self) -> "Representation":
        """Contragredient on the dual basis: generators act by minus the transpose."""
        return Representation(self.n, [tuple(-x for x in w) for w in self.weights],
                              [-m.T for m in self.e], [-m.T for m in self.f],
                              f"({self.label})*")

    def highest_weight(self) -> tuple[int, ...]:
        # lex order refines dominance order, so the lex-max weight is highest
        return max(self.blocks())


class SchurModule(Representation):
    """S_lam(C^n) with the semistandard basis in lexicographic row-word order."""

    def __init__(self, lam: Partition, n: int, basis: list[Tableau],
                 e: list[SparseIntMatrix], f: list[SparseIntMatrix]):
        super().__init__(n, [tableau_weight(t, n) for t in basis], e, f,
                         f"S{tuple(lam)}(C^{n})")
        self.lam = lam
        self.basis = basis
        self.index = {t: b for b, t in enumerate(basis)}

    def highest_weight_vector(self) -> dict[int, int]:
        if not self.basis:
            raise ValueError(f"{self.label} is the zero module")
        t = tuple(tuple([r] * row) for r, row in enumerate(self.lam, start=1))
        vec = {self.index[t]: 1}
        for m in self.e:
            if m.apply(vec):
                raise StraighteningError("canonical tableau is not annihilated by raising operators")
        return vec

    def export(self, directory) -> list[Path]:
        """Write every generator matrix as a MatrixMarket file."""
        d = Path(directory)
        d.mkdir(parents=True, exist_ok=True)
        out = []
        for name, m in self.generators():
            p = d / f"{name}.mtx"
            write_matrix_market(m, p)
            out.append(p)
        return out


def _replace_one(t_cols, src: int, dst: int):
    """All fillings obtained by changing one entry ``src`` into ``dst``."""
    for j, col in enumerate(t_cols):
        for r, x in enumerate(col):
            if x == src:
                new = col[:r] + (dst,) + col[r + 1:]
                if len(set(new)) == len(new):
                    yield t_cols[:j] + (new,) + t_cols[j + 1:]


class _Straightener:
    def __init__(self, lam: Partition, n: int, basis: list[Tableau], seed: int = 0):
        self.n = n
        self.cols = [tableau_columns(t) for t in basis]
        self.heights = set(lam.conjugate())
        self.rng = random.Random(seed)
        self.width = len(lam)
        self.pool: list[_Point] = []
        self.cache: dict[tuple, tuple] = {}

    def _point(self, k: int) -> _Point:
        while len(self.pool) <= k:
            x = [[self.rng.randint(-4, 4) for _ in range(self.width)] for _ in range(self.n)]
            self.pool.append(_Point(x, self.heights))
        return self.pool[k]

    def block_system(self, idx: tuple[int, ...]):
        """Points making the block's evaluation matrix invertible, with its inverse mod P."""
        hit = self.cache.get(idx)
        if hit is not None:
            return hit
        m = len(idx)
        chosen: list[_Point] = []
        rows: list[list[int]] = []
        echelon: list[tuple[int, list[int]]] = []  # (pivot column, reduced row) mod P
        k = 0
        while len(chosen) < m:
            if k > 50 * m + 200:
                raise StraighteningError(f"no independent evaluation points for block of size {m}")
            pt = self._point(k)
            k += 1
            row = [pt.value(self.cols[b]) for b in idx]
            red = [x % _P for x in row]
            for pc, er in echelon:
                if red[pc]:
                    c = red[pc]
                    red = [(x - c * y) % _P for x, y in zip(red, er)]
            pc = next((j for j, x in enumerate(red) if x), None)
            if pc is None:
                continue
            inv = pow(red[pc], _P - 2, _P)
            echelon.append((pc, [x * inv % _P for x in red]))
            chosen.append(pt)
            rows.append(row)
        res = (chosen, rows, _inverse_mod(rows, _P))
        self.cache[idx] = res
        return res

    def solve(self, idx: tuple[int, ...], images: list[list]) -> list[list[int]]:
        """Coordinates in block ``idx`` of each image (a list of column-fillings).

        Returns one integer coordinate list per image.
        """
        points, e_rows, e_inv = self.block_system(idx)
        q = [[sum(pt.value(c) for c in img) for img in images] for pt in points]
        m = len(idx)
        half = _P // 2
        coords = []
        for s in range(len(images)):
            col = []
            for i in range(m):
                v = sum(e_inv[i][j] * q[j][s] for j in range(m)) % _P
                col.append(v - _P if v > half else v)
            coords.append(col)
        # exact integer verification of every solution
        for j in range(m):
            for s, col in enumerate(coords):
                if sum(e_rows[j][i] * col[i] for i in range(m)) != q[j][s]:
                    raise StraighteningError("straightening check failed over the integers")
        return coords


def _build(lam: Partition, n: int) -> SchurModule:
    basis = list(iter_ssyt(lam, n))
    dim = len(basis)
    st = _Straightener(lam, n, basis)
    weights = [tableau_weight(t, n) for t in basis]
    blocks: dict[tuple[int, ...], list[int]] = {}
    for b, w in enumerate(weights):
        blocks.setdefault(w, []).append(b)

    def generator(src: int, dst: int) -> SparseIntMatrix:
        # E_{dst,src}: replace one entry src by dst
        cols: dict[int, dict[int, int]] = {}
        grouped: dict[tuple[int, ...], list[tuple[int, list]]] = {}
        for b, w in enumerate(weights):
            if w[src - 1] == 0:
                continue
            tw = list(w)
            tw[src - 1] -= 1
            tw[dst - 1] += 1
            imgs = list(_replace_one(st.cols[b], src, dst))
            if imgs:
                grouped.setdefault(tuple(tw), []).append((b, imgs))
        for tw, items in grouped.items():
            idx = tuple(blocks[tw]) if tw in blocks else ()
            if not idx:
                continue
            coords = st.solve(idx, [imgs for _, imgs in items])
            for (b, _), col in zip(items, coords):
                cols[b] = {idx[i]: v for i, v in enumerate(col) if v}
        return SparseIntMatrix.from_columns(dim, dim, cols)

    e = [generator(i + 1, i) for i in range(1, n)]
    f = [generator(i, i + 1) for i in range(1, n)]
    return SchurModule(lam, n, basis, e, f)


_MODULES: dict[tuple[tuple[int, ...], int], SchurModule] = {}
_LOCK = threading.Lock()


def build_schur_module(lam: Sequence[int], n: int) -> SchurModule:
    """Build (or fetch from the in-process memo) the module S_lam(C^n).

    More than n rows gives the zero module.
    """
    lam = Partition(lam)
    key = (tuple(lam), int(n))
    mod = _MODULES.get(key)  # dict reads are atomic; no lock needed for hits
    if mod is not None:
        return mod
    with _LOCK:
        mod = _MODULES.get(key)
        if mod is None:
            mod = _build(lam, n)
            _MODULES[key] = mod
    return mod


def highest_weight_vector(m: SchurModule) -> dict[int, int]:
    return m.highest_weight_vector()


def u_module(kind: str, d: int, n: int) -> SchurModule:
    """Sym^d (``kind="symmetric"``) or wedge^d (``"exterior"``) of C^n."""
    if kind == "symmetric":
        return build_schur_module((d,), n)
    if kind == "exterior":
        return build_schur_module((1,) * d, n)
    raise ValueError(f"unknown kind {kind!r}")
