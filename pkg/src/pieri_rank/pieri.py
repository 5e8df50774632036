"""Pieri intertwiners and the tensor they define.

For mu obtained from lam by a horizontal (vertical) strip of d boxes there is,
up to scalar, one equivariant map f1: S_mu V -> S_lam V (x) U with
U = Sym^d V (wedge^d V).  Its coefficient slices give the space of maps
phi(u): S_lam V -> S_mu V.

The partner map S_lam V (x) U -> S_mu V is *not* the transpose of f1 (the
tableau basis is not orthonormal for any invariant form).  It is found as
the transpose of the intertwiner between the dual modules.
"""

from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd

from .cache import ArtifactCache, content_key
from .exactla import (SparseIntMatrix, matrix_market_text, nullspace, rank_mod_p,
                      read_matrix_market)
from .partitions import Partition, pieri_summands, schur_dim
from .schurmodule import BASIS_VERSION, Representation, build_schur_module, u_module

_SELECT_PRIME = (1 << 61) - 1


class MultiplicityError(ValueError):
    """The target does not contain the source exactly once."""


class ConsistencyError(RuntimeError):
    pass


@dataclass(frozen=True)
class UKind:
    kind: str  # "symmetric" or "exterior"
    d: int

    @classmethod
    def parse(cls, text: str) -> "UKind":
        t = text.strip().lower()
        if t == "v":
            return cls("symmetric", 1)
        if t in ("sym2", "wedge2"):
            return cls("symmetric" if t == "sym2" else "exterior", 2)
        for prefix, kind in (("symd:", "symmetric"), ("wedged:", "exterior")):
            if t.startswith(prefix):
                d = int(t[len(prefix):])
                if d < 1:
                    raise ValueError("degree must be positive")
                return cls(kind, d)
        raise ValueError(f"unknown U {text!r}; use v, sym2, wedge2, symd:D or wedged:D")

    @property
    def token(self) -> str:
        if self.d == 1:
            return "v"
        if self.d == 2:
            return "sym2" if self.kind == "symmetric" else "wedge2"
        return f"{'symd' if self.kind == 'symmetric' else 'wedged'}:{self.d}"

    def dim(self, n: int) -> int:
        shape = (self.d,) if self.kind == "symmetric" else (1,) * self.d
        return schur_dim(shape, n)

    def module(self, n: int):
        return u_module(self.kind, self.d, n)


def as_ukind(u) -> UKind:
    return u if isinstance(u, UKind) else UKind.parse(u)


# -- intertwiner solver ----------------------------------------------------------------
def _depth(w, w0) -> int:
    # number of simple roots to subtract from w0 to reach w
    tot = acc = 0
    for i in range(len(w0) - 1):
        acc += w0[i] - w[i]
        tot += acc
    return tot


def _invert_fraction(a: list[list[int]]) -> list[list[Fraction]]:
    m = len(a)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(m)]
           for i, row in enumerate(a)]
    for c in range(m):
        piv = next(r for r in range(c, m) if aug[r][c])
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [x * inv for x in aug[c]]
        for r in range(m):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return [row[m:] for row in aug]


def solve_intertwiner(source: Representation, target: Representation,
                      shuffle_seed: int | None = None, verify: bool = True) -> SparseIntMatrix:
    """The equivariant map source -> target, as a primitive integer matrix.

    ``source`` must be irreducible.  The image of its highest weight vector is
    the joint kernel of the raising operators in the target at that weight;
    the rest of the map follows by applying lowering operators block by block.
    ``shuffle_seed`` permutes the order in which lowering candidates are tried.
    """
    w0 = source.highest_weight()
    sblocks = source.blocks()
    if len(sblocks[w0]) != 1:
        raise MultiplicityError(f"source highest weight {w0} is not multiplicity-free")
    (b0,) = sblocks[w0]

    tidx = target.blocks().get(w0, [])
    rows: dict[tuple[int, int], list[int]] = {}
    for i, e in enumerate(target.e):
        cols = e._column_cache()
        for s, t in enumerate(tidx):
            for r, v in cols.get(t, {}).items():
                rows.setdefault((i, r), [0] * len(tidx))[s] = v
    ker = nullspace(list(rows.values()), len(tidx)) if tidx else []
    if len(ker) != 1:
        raise MultiplicityError(
            f"highest weight {w0} occurs {len(ker)} times among target highest weight vectors")

    image: dict[int, dict[int, Fraction]] = {b0: {tidx[s]: x for s, x in enumerate(ker[0]) if x}}
    rng = random.Random(shuffle_seed) if shuffle_seed is not None else None
    n = source.n
    order = sorted(sblocks, key=lambda w: (_depth(w, w0), tuple(-x for x in w)))
    for w in order:
        if w == w0:
            continue
        idx = sblocks[w]
        m = len(idx)
        bpos = {b: s for s, b in enumerate(idx)}
        cands = []
        for i in range(n - 1):
            up = list(w)
            up[i] += 1
            up[i + 1] -= 1
            for b in sblocks.get(tuple(up), []):
                cands.append((i, b))
        if rng is not None:
            rng.shuffle(cands)
        chosen, vecs = [], []
        echelon: list[tuple[int, list[int]]] = []
        p = _SELECT_PRIME
        for i, b in cands:
            sv = source.f[i].apply({b: 1})
            vec = [0] * m
            for r, v in sv.items():
                vec[bpos[r]] = v
            red = [x % p for x in vec]
            for pc, er in echelon:
                if red[pc]:
                    c = red[pc]
                    red = [(x - c * y) % p for x, y in zip(red, er)]
            pc = next((j for j, x in enumerate(red) if x), None)
            if pc is None:
                continue
            inv = pow(red[pc], p - 2, p)
            echelon.append((pc, [x * inv % p for x in red]))
            chosen.append((i, b))
            vecs.append(vec)
            if len(chosen) == m:
                break
        if len(chosen) < m:
            raise ConsistencyError(f"lowering operators do not span the weight {w} block")
        # columns of A are the chosen candidate vectors
        a = [[vecs[j][r] for j in range(m)] for r in range(m)]
        ainv = _invert_fraction(a)
        imgs = [target.f[i].apply(image[b]) for i, b in chosen]
        for s, c in enumerate(idx):
            col: dict[int, Fraction] = {}
            for j in range(m):
                coef = ainv[j][s]
                if coef:
                    for t, v in imgs[j].items():
                        col[t] = col.get(t, 0) + coef * v
            image[c] = {t: v for t, v in col.items() if v}

    mat = _primitive_matrix(target.dim, source.dim, image)
    if verify:
        check_intertwiner(mat, source, target)
    return mat


def _primitive_matrix(rows: int, cols: int, image: dict[int, dict[int, Fraction]]) -> SparseIntMatrix:
    den = 1
    for col in image.values():
        for v in col.values():
            d = Fraction(v).denominator
            den = den * d // gcd(den, d)
    out: dict[int, dict[int, int]] = {}
    g = 0
    for c, col in image.items():
        for t, v in col.items():
            iv = int(Fraction(v) * den)
            out.setdefault(t, {})[c] = iv
            g = gcd(g, iv)
    if g == 0:
        raise ConsistencyError("intertwiner vanished")
    first_row = min(out)
    sign = 1 if out[first_row][min(out[first_row])] > 0 else -1
    return SparseIntMatrix.from_rows(
        rows, cols, {t: {c: sign * v // g for c, v in r.items()} for t, r in out.items()})


def equivariance_residuals(mat: SparseIntMatrix, source: Representation,
                           target: Representation) -> dict[str, SparseIntMatrix]:
    res = {}
    for (name, xs), (_, xt) in zip(source.generators(), target.generators()):
        res[name] = xt @ mat - mat @ xs
    return res


def check_intertwiner(mat: SparseIntMatrix, source: Representation, target: Representation) -> None:
    if mat.is_zero():
        raise ConsistencyError("zero map")
    for name, r in equivariance_residuals(mat, source, target).items():
        if not r.is_zero():
            raise ConsistencyError(f"residual for {name} is nonzero ({r.nnz} entries)")
    for t, row in mat.rows().items():
        for c in row:
            if target.weights[t] != source.weights[c]:
                raise ConsistencyError(f"entry ({t},{c}) mixes weights")


# -- the tensor ----------------------------------------------------------------------
@dataclass
class PieriTensor:
    """The tensor of a Pieri pair.

    ``f1`` is (dim S_lam * dim U) x dim S_mu with row index a * dim U + alpha.
    ``g`` is dim S_mu x (dim S_lam * dim U), the equivariant projection
    S_lam (x) U -> S_mu, with the same column indexing.
    """

    lam: Partition
    mu: Partition
    n: int
    u: UKind
    f1: SparseIntMatrix
    g: SparseIntMatrix
    scale_note: str = "primitive integers, first nonzero entry in row-major order positive"
    meta: dict = field(default_factory=dict)

    @property
    def k(self) -> int:
        return schur_dim(self.lam, self.n)

    @property
    def l(self) -> int:
        return schur_dim(self.mu, self.n)

    @property
    def dim_u(self) -> int:
        return self.u.dim(self.n)

    @cached_property
    def f1_slices(self) -> list[SparseIntMatrix]:
        """P_alpha[a, c] = f1[(a, alpha), c], each k x l."""
        du = self.dim_u
        parts: list[dict[int, dict[int, int]]] = [{} for _ in range(du)]
        for r, row in self.f1.rows().items():
            a, al = divmod(r, du)
            parts[al][a] = dict(row)
        return [SparseIntMatrix.from_rows(self.k, self.l, p) for p in parts]

    @cached_property
    def phi_slices(self) -> list[SparseIntMatrix]:
        """M_alpha: S_lam -> S_mu (l x k); phi(u) = sum_alpha u_alpha M_alpha."""
        return [p.T for p in self.f1_slices]

    @cached_property
    def f2_slices(self) -> list[SparseIntMatrix]:
        """Q_beta[b, d] = g[b, (d, beta)], each l x k."""
        du = self.dim_u
        parts: list[dict[int, dict[int, int]]] = [{} for _ in range(du)]
        for b, row in self.g.rows().items():
            for col, v in row.items():
                d, be = divmod(col, du)
                parts[be].setdefault(b, {})[d] = v
        return [SparseIntMatrix.from_rows(self.l, self.k, p) for p in parts]

    def phi(self, u) -> SparseIntMatrix:
        out = SparseIntMatrix(self.l, self.k)
        for c, m in zip(u, self.phi_slices):
            if c:
                out = out + m.scale(int(c))
        return out

    def manifest(self) -> dict:
        return {"lambda": list(self.lam), "mu": list(self.mu), "u": self.u.token, "n": self.n,
                "dims": {"k": self.k, "l": self.l, "u": self.dim_u},
                "basis_version": BASIS_VERSION,
                "content_hash": _content_hash(self.f1, self.g)}


def _content_hash(*mats: SparseIntMatrix) -> str:
    h = hashlib.sha256()
    for m in mats:
        h.update(repr(m.shape).encode())
        for i, j, v in m.items():
            h.update(f"{i} {j} {v}\n".encode())
    return h.hexdigest()


def modules_for(lam, mu, u, n):
    u = as_ukind(u)
    src = build_schur_module(mu, n)
    lm = build_schur_module(lam, n)
    tgt = lm.tensor(u.module(n))
    return src, lm, tgt


def solve_pair(lam, mu, u, n, shuffle_seed=None) -> tuple[SparseIntMatrix, SparseIntMatrix]:
    """(f1, g) for the pair, both verified equivariant."""
    src, _, tgt = modules_for(lam, mu, u, n)
    f1 = solve_intertwiner(src, tgt, shuffle_seed)
    h = solve_intertwiner(src.dual(), tgt.dual(), shuffle_seed)
    return f1, h.T


_MEMO: dict[tuple, PieriTensor] = {}


def _cache_key(lam, mu, u: UKind, n) -> str:
    return content_key({"lambda": list(lam), "mu": list(mu), "u": u.token, "n": n,
                        "basis_version": BASIS_VERSION})


def build_pieri_tensor(lam, mu, u, n: int, cache: ArtifactCache | None = None) -> PieriTensor:
    """Solve (or load) the Pieri tensor for mu inside S_lam (x) U.

    ``cache`` is an :class:`ArtifactCache`; without it only the in-process
    memo is used.
    """
    lam, mu, u = Partition(lam), Partition(mu), as_ukind(u)
    if mu not in pieri_summands(lam, u.d, u.kind, n):
        raise MultiplicityError(f"{tuple(mu)} is not a Pieri summand of "
                                f"{tuple(lam)} (x) {u.token} for n={n}")
    key = (tuple(lam), tuple(mu), u, n)
    if key in _MEMO:
        return _MEMO[key]
    ckey = _cache_key(lam, mu, u, n)
    t = None
    if cache is not None:
        files = cache.get(ckey)
        if files is not None:
            t = PieriTensor(lam, mu, n, u, read_matrix_market(files["f1.mtx"]),
                            read_matrix_market(files["g.mtx"]), meta={"cache": "hit"})
    if t is None:
        f1, g = solve_pair(lam, mu, u, n)
        t = PieriTensor(lam, mu, n, u, f1, g, meta={"cache": "miss" if cache else "off"})
        if cache is not None:
            cache.put(ckey, {"f1.mtx": _mm_bytes(f1), "g.mtx": _mm_bytes(g),
                             "manifest.json": json.dumps(t.manifest(), sort_keys=True).encode()},
                      meta=t.manifest())
    _MEMO[key] = t
    return t


def _mm_bytes(m: SparseIntMatrix) -> bytes:
    return matrix_market_text(m).encode()


def dual_pieri(t: PieriTensor) -> SparseIntMatrix:
    """f2: S_lam -> S_mu (x) U*, shape (l * dim U) x k, row index b * dim U + beta."""
    du = t.dim_u
    out: dict[int, dict[int, int]] = {}
    for b, row in t.g.rows().items():
        for col, v in row.items():
            d, be = divmod(col, du)
            out.setdefault(b * du + be, {})[d] = v
    return SparseIntMatrix.from_rows(t.l * du, t.k, out)


def conciseness(t: PieriTensor, prime: int = 2147483647) -> dict:
    """Ranks of the three flattenings of the tensor; concise iff each is full."""
    du, k, l = t.dim_u, t.k, t.l
    # U-side: each slice flattened to a row of length k*l
    u_rows = {al: {a * l + c: v for a, r in p.rows().items() for c, v in r.items()}
              for al, p in enumerate(t.f1_slices)}
    ru = rank_mod_p(SparseIntMatrix.from_rows(du, k * l, u_rows), [prime]).rank
    lam_rows: dict[int, dict[int, int]] = {}
    for r, row in t.f1.rows().items():
        a, al = divmod(r, du)
        tgt = lam_rows.setdefault(a, {})
        for c, v in row.items():
            tgt[al * l + c] = v
    rk = rank_mod_p(SparseIntMatrix.from_rows(k, du * l, lam_rows), [prime]).rank
    rl = rank_mod_p(t.f1, [prime]).rank
    return {"u": ru, "k": rk, "l": rl, "dims": (du, k, l),
            "concise": (ru, rk, rl) == (du, k, l)}
