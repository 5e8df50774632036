"""Bott's theorem on the hyperplane Grassmannian Gr(n-1, n) as weight calculus.

For the tautological rank n-1 bundle R and a partition lam with n-1 parts,
S_lam R (d) is attached to mu = (d, lam).  If mu + rho has a repeated entry
all cohomology vanishes; otherwise exactly one group survives, in degree
equal to the number of inversions of the sorting permutation, and carries
S_nu V with nu = sort(mu + rho) - rho.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .partitions import InvalidPartitionError, Weight


@dataclass(frozen=True)
class BwbResult:
    vanishing: bool
    degree: int | None = None
    weight: Weight | None = None

    def to_dict(self) -> dict:
        if self.vanishing:
            return {"vanishing": True}
        return {"degree": self.degree, "weight": list(self.weight.entries)}


def _inversions(seq: Sequence[int]) -> int:
    return sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] < seq[j])


def bwb(lam: Sequence[int], d: int, n: int) -> BwbResult:
    if n < 1:
        raise ValueError("n must be positive")
    lam = tuple(int(x) for x in lam)
    if len(lam) > n - 1:
        raise InvalidPartitionError(f"{lam} has more than {n - 1} entries")
    lam = lam + (0,) * (n - 1 - len(lam))
    if any(a < b for a, b in zip(lam, lam[1:])):
        raise InvalidPartitionError(f"{lam} is not weakly decreasing")
    mu = (int(d),) + lam
    shifted = [m + n - 1 - i for i, m in enumerate(mu)]
    if len(set(shifted)) < n:
        return BwbResult(True)
    ordered = sorted(shifted, reverse=True)
    nu = tuple(x - (n - 1 - i) for i, x in enumerate(ordered))
    return BwbResult(False, _inversions(shifted), Weight(nu))
