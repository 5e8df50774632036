"""The Young flattening S_mu V (x) S_lam V -> S_lam V (x) S_mu V of a Pieri tensor.

With f1(x) = sum_alpha x_alpha (x) e_alpha and f2(y) = sum_beta y_beta (x) e_beta^*,
the flattening sends x (x) y to sum_alpha x_alpha (x) y_alpha.  In matrix form

    T'[(a, b), (c, d)] = sum_alpha P_alpha[a, c] * Q_alpha[b, d]

where P are the slices of f1 and Q the slices of f2.  Rows are indexed
a * l + b (a in S_lam, b in S_mu), columns c * k + d (c in S_mu, d in S_lam).
The map is equivariant, so it is block diagonal for the total torus weight.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .exactla import RankCertificate, SparseIntMatrix, random_primes, rank_exact, rank_mod_p
from .partitions import Partition, StripType, strip_type
from .pieri import PieriTensor, as_ukind, build_pieri_tensor
from .schurmodule import build_schur_module


class FlatteningError(RuntimeError):
    pass


@dataclass
class Flattening:
    matrix: SparseIntMatrix
    blocks: list[tuple[list[int], list[int]]]
    block_weights: list[tuple[int, ...]]


def build_flattening(t: PieriTensor) -> Flattening:
    k, l = t.k, t.l
    acc: dict[int, dict[int, int]] = {}
    for p, q in zip(t.f1_slices, t.f2_slices):
        if p.shape != (k, l) or q.shape != (l, k):
            raise FlatteningError("slice shapes do not match the module dimensions")
        qrows = list(q.rows().items())
        for a, prow in p.rows().items():
            for b, qrow in qrows:
                row = acc.setdefault(a * l + b, {})
                for c, pv in prow.items():
                    base = c * k
                    for d, qv in qrow.items():
                        j = base + d
                        row[j] = row.get(j, 0) + pv * qv
    mat = SparseIntMatrix.from_rows(k * l, l * k, acc)

    wl = build_schur_module(t.lam, t.n).weights
    wm = build_schur_module(t.mu, t.n).weights
    rows_by: dict[tuple[int, ...], list[int]] = {}
    cols_by: dict[tuple[int, ...], list[int]] = {}
    for a in range(k):
        for b in range(l):
            w = tuple(x + y for x, y in zip(wl[a], wm[b]))
            rows_by.setdefault(w, []).append(a * l + b)
    for c in range(l):
        for d in range(k):
            w = tuple(x + y for x, y in zip(wm[c], wl[d]))
            cols_by.setdefault(w, []).append(c * k + d)
    row_w = {i: w for w, rs in rows_by.items() for i in rs}
    col_w = {j: w for w, cs in cols_by.items() for j in cs}
    for i, row in mat.rows().items():
        for j in row:
            if row_w[i] != col_w[j]:
                raise FlatteningError(f"entry ({i},{j}) crosses weight blocks")
    weights = sorted(set(rows_by) | set(cols_by), reverse=True)
    blocks = [(rows_by.get(w, []), cols_by.get(w, [])) for w in weights]
    return Flattening(mat, blocks, weights)


def predicted_isomorphism(strip: StripType, d: int) -> bool:
    """Whether the flattening is expected to be an isomorphism for this strip."""
    return d == 1 or (strip.is_row_or_column and strip.boxes > 0)


@dataclass
class FlatteningReport:
    lam: Partition
    mu: Partition
    n: int
    u: str
    k: int
    l: int
    rank: RankCertificate
    strip: StripType
    predicted: bool
    blocks: int = 0
    largest_block: int = 0
    extra: dict = field(default_factory=dict)

    @property
    def matrix_size(self) -> int:
        return self.k * self.l

    @property
    def is_isomorphism(self) -> bool:
        return self.rank.rank == self.matrix_size

    @property
    def verdict(self) -> str:
        if self.predicted:
            return "isomorphism as predicted" if self.is_isomorphism else "PREDICTION FAILED"
        return "outside the strip hypothesis" + (" (full rank)" if self.is_isomorphism else "")

    def to_dict(self) -> dict:
        return {"lambda": list(self.lam), "mu": list(self.mu), "n": self.n, "u": self.u,
                "k": self.k, "l": self.l, "matrix_size": self.matrix_size,
                "rank": self.rank.to_dict(), "is_isomorphism": self.is_isomorphism,
                "strip": str(self.strip), "predicted_isomorphism": self.predicted,
                "verdict": self.verdict, "blocks": self.blocks,
                "largest_block": self.largest_block}


def flattening_rank(fl: Flattening, mode: str = "modp", primes=None, seed=0) -> RankCertificate:
    if mode == "exact":
        return rank_exact(fl.matrix, blocks=fl.blocks)
    if mode != "modp":
        raise ValueError(f"unknown rank mode {mode!r}")
    if primes is None:
        primes = random_primes(2, seed=seed)
    return rank_mod_p(fl.matrix, primes, blocks=fl.blocks)


def flattening_report(lam, mu, u, n: int, rank_mode: str = "modp", primes=None,
                      seed=0, cache=None) -> FlatteningReport:
    u = as_ukind(u)
    t = build_pieri_tensor(lam, mu, u, n, cache=cache)
    fl = build_flattening(t)
    cert = flattening_rank(fl, rank_mode, primes, seed)
    st = strip_type(t.lam, t.mu)
    return FlatteningReport(t.lam, t.mu, n, u.token, t.k, t.l, cert, st,
                            predicted_isomorphism(st, u.d), len(fl.blocks),
                            max((len(r) for r, _ in fl.blocks), default=0))
