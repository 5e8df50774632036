"""Generic ranks of phi(u), the explicit c-constant formulas, and border rank bounds.

The bound is ceil(rank(T') / r), where rank(T') = k*l whenever the flattening
is an isomorphism and r is the generic rank of phi(u): S_lam V -> S_mu V.
r is obtained two ways: by sampling phi at seeded random points (a certified
lower bound on the generic rank, and the authoritative value here), and by the
closed-form c-constants (k - c), which serve as a cross-check.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np

from .exactla import random_primes, rank_exact, rank_mod_p
from .flatten import build_flattening, flattening_rank, predicted_isomorphism
from .partitions import Partition, added_rows, schur_dim, sequence_dim, strip_type
from .pieri import PieriTensor, as_ukind, build_pieri_tensor

DEFAULT_BOUND = 10**6


class DegenerateRankError(ValueError):
    pass


class HypothesisError(ValueError):
    pass


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


# -- generic rank --------------------------------------------------------------------
@dataclass
class ProbeResult:
    max_rank: int
    ranks: list[int]
    constant: bool
    seed: int
    trials: int
    bound: int
    mode: str
    primes: list[int] = field(default_factory=list)

    def to_dict(self) -> dict:
        return asdict(self)


def generic_rank_probe(t: PieriTensor, trials: int = 5, seed: int = 0, bound: int = DEFAULT_BOUND,
                       mode: str = "modp", primes=None) -> ProbeResult:
    """Rank of phi(u) at ``trials`` random integer points u in [-bound, bound]^dim U.

    Every sampled rank is a lower bound for the generic rank.  ``mode`` is
    ``"modp"`` (max over the given primes, itself a lower bound) or ``"exact"``.
    """
    if trials < 1:
        raise ValueError("trials must be positive")
    rng = np.random.default_rng(seed)
    if mode == "modp" and primes is None:
        primes = random_primes(2, seed=seed)
    ranks = []
    for _ in range(trials):
        u = [0]
        while not any(u):
            u = [int(x) for x in rng.integers(-bound, bound + 1, size=t.dim_u)]
        m = t.phi(u)
        if mode == "exact":
            ranks.append(rank_exact(m).rank)
        elif mode == "modp":
            ranks.append(rank_mod_p(m, primes).rank)
        else:
            raise ValueError(f"unknown rank mode {mode!r}")
    return ProbeResult(max(ranks), ranks, len(set(ranks)) == 1, seed, trials, bound, mode,
                       list(primes or []))


# -- hypotheses ----------------------------------------------------------------------
@dataclass
class ConstraintVerdict:
    family: str | None  # "V-row", "sym2-row2", "wedge2-col23" or None
    shape_ok: bool
    inequality: str
    inequality_holds: bool
    dims_ok: bool
    status: str  # "certified_not_minimal" or "outside_known_families"
    detail: str = ""

    @property
    def holds(self) -> bool:
        return self.status == "certified_not_minimal"

    def to_dict(self) -> dict:
        return asdict(self) | {"holds": self.holds}


def check_family_constraint(lam, mu, u, n: int) -> ConstraintVerdict:
    lam, mu, u = Partition(lam), Partition(mu), as_ukind(u)
    m = mu.padded(n) + (0,)
    k, l = schur_dim(lam, n), schur_dim(mu, n)
    rows = added_rows(lam, mu)

    def verdict(family, shape_ok, ineq, holds, dims_ok, detail):
        ok = shape_ok and holds and dims_ok
        return ConstraintVerdict(family, shape_ok, ineq, holds, dims_ok,
                                 "certified_not_minimal" if ok else "outside_known_families", detail)

    if u.d == 1:
        (row,) = rows
        return verdict("V-row", True, f"row {row} not in {{1, {n}}}", row not in (1, n), True,
                       f"box added to row {row}")
    if u.d == 2 and u.kind == "symmetric":
        lhs, rhs = m[0] + m[2] + 3, 2 * m[1]
        return verdict("sym2-row2", rows == [2, 2], f"mu1+mu3+3 = {lhs} <= 2mu2 = {rhs}",
                       lhs <= rhs, l >= k, f"rows {rows}; l={l}, k={k}")
    if u.d == 2 and u.kind == "exterior":
        lhs, rhs = m[0] + m[3] + 2, 2 * m[1]
        same_col = rows == [2, 3] and mu.part(2) == mu.part(3)
        return verdict("wedge2-col23", same_col, f"mu1+mu4+2 = {lhs} <= 2mu2 = {rhs}",
                       lhs <= rhs, l >= k, f"rows {rows}; l={l}, k={k}")
    return verdict(None, False, "", False, l >= k, "no closed-form family for this U")


# -- c-constants -----------------------------------------------------------------------
def _seq_reading(seq: tuple[int, ...], n: int) -> dict:
    trunc = seq
    while len(trunc) > n and trunc[-1] == 0:
        trunc = trunc[:-1]
    return {"sequence": list(seq), "dim": sequence_dim(seq, n),
            "dim_truncated": sequence_dim(trunc, n)}


@dataclass
class CFormula:
    family: str
    sequences: dict[str, dict]
    c: int
    r: int
    c2: int | None = None
    r2: int | None = None
    r_truncated: int | None = None  # reading that drops surplus trailing zeros instead

    def to_dict(self) -> dict:
        return asdict(self)


def c_constant(lam, mu, u, n: int) -> CFormula:
    """Auxiliary sequences, c-constant(s) and the predicted generic rank r = k - c.

    Sequences are built entry by entry as written; one with more than n
    entries or more than n nonzero parts stands for the zero module.
    """
    lam, mu, u = Partition(lam), Partition(mu), as_ukind(u)
    v = check_family_constraint(lam, mu, u, n)
    if v.family is None or not v.shape_ok:
        raise HypothesisError(f"{tuple(lam)} -> {tuple(mu)} is not in a family with a c-formula")
    k, l = schur_dim(lam, n), schur_dim(mu, n)
    L = (0,) + lam.padded(n)  # 1-based views
    M = (0,) + mu.padded(n)

    def rng(seq, a, b):  # entries a..b inclusive, empty when b < a
        return tuple(seq[i] for i in range(a, b + 1))

    if v.family == "V-row":
        (kk,) = added_rows(lam, mu)
        if kk in (1, n):
            raise HypothesisError("box in the first or last row has no c-formula")
        seqs = {
            "lambda1": rng(L, 1, kk - 2) + (L[kk], L[kk]) + rng(L, kk + 1, n),
            "lambda2": rng(L, 1, kk - 3) + (L[kk - 1] - 1, L[kk], L[kk]) + rng(L, kk + 1, n),
            "mu1": rng(M, 1, kk) + (M[kk],) + rng(M, kk + 2, n),
            "mu2": rng(M, 1, kk) + (M[kk], M[kk + 1] + 1 if kk + 1 <= n else 1) + rng(M, kk + 3, n),
        }
        rd = {name: _seq_reading(s, n) for name, s in seqs.items()}
        c1 = rd["lambda1"]["dim"] - rd["lambda2"]["dim"]
        c2 = rd["mu1"]["dim"] - rd["mu2"]["dim"]
        c1t = rd["lambda1"]["dim_truncated"] - rd["lambda2"]["dim_truncated"]
        return CFormula("V-row", rd, c1, k - c1, c2, l - c2, k - c1t)
    if v.family == "sym2-row2":
        seqs = {"alpha1": (M[2] - 1, 2 * M[2] - M[1] - 3) + rng(M, 3, n),
                "alpha": (M[2] - 3, 2 * M[2] - M[1] - 3) + rng(M, 3, n)}
    else:
        seqs = {"alpha1": (M[2] - 1, M[2] - 1, 2 * M[2] - M[1] - 2) + rng(M, 4, n),
                "alpha": (M[2] - 2, M[2] - 2, 2 * M[2] - M[1] - 2) + rng(M, 4, n)}
    rd = {name: _seq_reading(s, n) for name, s in seqs.items()}
    c = rd["alpha1"]["dim"] - rd["alpha"]["dim"]
    return CFormula(v.family, rd, c, k - c)


# -- bounds ---------------------------------------------------------------------------
@dataclass
class BoundReport:
    lam: Partition
    mu: Partition
    u: str
    n: int
    dim_u: int
    k: int
    l: int
    constraint: ConstraintVerdict
    c_formula: CFormula | None
    oracle: ProbeResult | None
    flattening_rank: int
    flattening_source: str  # "isomorphism theorem" or "measured"
    r: int
    r_source: str
    lower_bound: int
    lower_bound_c: int | None
    disagreement: bool
    notes: list[str] = field(default_factory=list)

    @property
    def exceeds_minimal(self) -> bool:
        return self.lower_bound > max(self.dim_u, self.k, self.l)

    def to_dict(self) -> dict:
        return {"lambda": list(self.lam), "mu": list(self.mu), "u": self.u, "n": self.n,
                "dim_u": self.dim_u, "k": self.k, "l": self.l,
                "constraint": self.constraint.to_dict(),
                "c_formula": self.c_formula.to_dict() if self.c_formula else None,
                "oracle": self.oracle.to_dict() if self.oracle else None,
                "flattening_rank": self.flattening_rank,
                "flattening_source": self.flattening_source,
                "r": self.r, "r_source": self.r_source, "lower_bound": self.lower_bound,
                "lower_bound_c": self.lower_bound_c, "disagreement": self.disagreement,
                "exceeds_minimal": self.exceeds_minimal, "notes": self.notes}


def border_rank_bound(lam, mu, u, n: int, rank_source: str = "both", trials: int = 5,
                      seed: int = 0, mode: str = "modp", measure_flattening: bool = False,
                      cache=None) -> BoundReport:
    """Lower bound ceil(rank T' / r) with r from the oracle, the c-formula, or both.

    With ``both`` the oracle value is used and any disagreement is flagged.
    """
    if rank_source not in ("theorem_c", "oracle", "both"):
        raise ValueError(f"unknown rank source {rank_source!r}")
    lam, mu, u = Partition(lam), Partition(mu), as_ukind(u)
    k, l = schur_dim(lam, n), schur_dim(mu, n)
    notes: list[str] = []
    verdict = check_family_constraint(lam, mu, u, n)

    cf = None
    if rank_source in ("theorem_c", "both"):
        try:
            cf = c_constant(lam, mu, u, n)
        except HypothesisError as exc:
            if rank_source == "theorem_c":
                raise
            notes.append(f"no c-formula: {exc}")

    t = None
    probe = None
    if rank_source in ("oracle", "both"):
        t = build_pieri_tensor(lam, mu, u, n, cache=cache)
        probe = generic_rank_probe(t, trials, seed, mode=mode)

    st = strip_type(lam, mu)
    if measure_flattening or not predicted_isomorphism(st, u.d):
        t = t or build_pieri_tensor(lam, mu, u, n, cache=cache)
        fr = flattening_rank(build_flattening(t), mode, seed=seed).rank
        fsrc = "measured"
        if predicted_isomorphism(st, u.d) and fr != k * l:
            notes.append(f"flattening rank {fr} is below k*l = {k * l}")
    else:
        fr, fsrc = k * l, "isomorphism theorem"

    if probe is not None:
        r, rsrc = probe.max_rank, "oracle"
    else:
        r, rsrc = cf.r, "theorem_c"
    if r <= 0:
        raise DegenerateRankError("generic rank is zero")
    bound = _ceil_div(fr, r)
    bound_c = _ceil_div(fr, cf.r) if cf is not None and cf.r > 0 else None
    disagree = cf is not None and probe is not None and cf.r != probe.max_rank
    if disagree:
        notes.append(f"c-formula r = {cf.r} differs from sampled r = {probe.max_rank}")
    if cf is not None and cf.r2 is not None and cf.r2 != cf.r:
        notes.append(f"the two c-formulas give r = {cf.r} and r = {cf.r2}")
    return BoundReport(lam, mu, u.token, n, u.dim(n), k, l, verdict, cf, probe, fr, fsrc, r, rsrc,
                       bound, bound_c, disagree, notes)


# -- the table -------------------------------------------------------------------------
TABLE1 = [
    # u, lambda, mu, n, printed dims (dim U, k, l), printed bound
    ("v", (6, 2), (6, 3), 3, (3, 60, 64), 72),
    ("v", (5, 2, 1), (5, 2, 2), 4, (4, 256, 160), 293),
    ("sym2", (3, 1), (3, 3), 4, (10, 45, 50), 63),
    ("sym2", (4, 2, 1), (4, 4, 1), 4, (10, 140, 140), 182),
    ("wedge2", (3, 2, 2), (3, 3, 3), 4, (6, 36, 36), 65),
    ("wedge2", (3, 2, 2, 1), (3, 3, 3, 1), 5, (10, 175, 175), 227),
]


@dataclass
class Table1Row:
    row: int
    report: BoundReport
    printed_dims: tuple[int, int, int]
    printed_bound: int

    @property
    def computed_dims(self) -> tuple[int, int, int]:
        return (self.report.dim_u, self.report.k, self.report.l)

    @property
    def dims_match(self) -> bool:
        return self.computed_dims == tuple(self.printed_dims)

    @property
    def bound_match(self) -> bool:
        return self.report.lower_bound == self.printed_bound

    @property
    def match(self) -> bool:
        return self.dims_match and self.bound_match

    @property
    def bound_with_printed_dims(self) -> int:
        """The bound recomputed from the printed dims and the c-formula r."""
        _, k, l = self.printed_dims
        cf = self.report.c_formula
        return _ceil_div(k * l, k - cf.c) if cf is not None and k > cf.c else 0

    def to_dict(self) -> dict:
        return {"row": self.row, "printed_dims": list(self.printed_dims),
                "computed_dims": list(self.computed_dims), "printed_bound": self.printed_bound,
                "computed_bound": self.report.lower_bound, "dims_match": self.dims_match,
                "bound_match": self.bound_match, "match": self.match,
                "bound_with_printed_dims": self.bound_with_printed_dims,
                "report": self.report.to_dict()}


def table1(trials: int = 5, seed: int = 0, mode: str = "modp", rows=None, cache=None) -> list[Table1Row]:
    out = []
    for i, (u, lam, mu, n, dims, bound) in enumerate(TABLE1, start=1):
        if rows is not None and i not in rows:
            continue
        rep = border_rank_bound(lam, mu, u, n, "both", trials, seed, mode, cache=cache)
        out.append(Table1Row(i, rep, dims, bound))
    return out
