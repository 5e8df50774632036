"""Weyl groups, the dotted action, minimal coset representatives and Kostant weights.

Coordinates
-----------
* Types A, C, D act on epsilon coordinates (plain integer sequences).
  A_{n-1}: s_i swaps entries i, i+1 (i < n).
  C_n:     s_i as in A for i < n; node n (written tau) negates entry n.
  D_n:     s_i as in A for i < n; node n (tau) negates and swaps entries n-1, n.
* E6 acts on fundamental-weight coefficients:
  s_i(b) = b - b_i * (row i of the Cartan matrix).

Words are tuples of node indices read as products, so ``(2, 3, 4)`` is
s_2 s_3 s_4 and acts on a weight by applying s_4 first.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from .partitions import Partition, Weight, as_weight, dual_weight, normalize_twist

E6_CARTAN = (
    (2, -1, 0, 0, 0, 0),
    (-1, 2, -1, 0, 0, 0),
    (0, -1, 2, -1, 0, -1),
    (0, 0, -1, 2, -1, 0),
    (0, 0, 0, -1, 2, 0),
    (0, 0, -1, 0, 0, 2),
)


class BudgetError(RuntimeError):
    pass


class FamilyConstraintError(ValueError):
    pass


def _cartan_classical(kind: str, n: int) -> tuple[tuple[int, ...], ...]:
    r = n - 1 if kind == "A" else n
    c = [[0] * r for _ in range(r)]
    for i in range(r):
        c[i][i] = 2
        if i + 1 < r:
            c[i][i + 1] = c[i + 1][i] = -1
    if kind == "C" and n >= 2:
        # row i holds the pairings of alpha_i; alpha_n = 2 eps_n is the long root
        c[n - 2][n - 1] = -1
        c[n - 1][n - 2] = -2
    if kind == "D" and n >= 3:
        c[n - 2][n - 1] = c[n - 1][n - 2] = 0
        c[n - 3][n - 1] = c[n - 1][n - 3] = -1
    return tuple(tuple(row) for row in c)


@dataclass(frozen=True)
class RootDatum:
    """Root datum of type A, C, D or E6 with its coordinate action.

    ``n`` is the number of epsilon coordinates for classical types (so A has
    rank n-1) and 6 for E6.
    """

    cartan_type: str
    n: int

    def __post_init__(self):
        if self.cartan_type not in ("A", "C", "D", "E6"):
            raise ValueError(f"unsupported type {self.cartan_type!r}")
        if self.cartan_type == "E6" and self.n != 6:
            raise ValueError("E6 has rank 6")
        if self.cartan_type == "D" and self.n < 3:
            raise ValueError("type D needs n >= 3")

    @property
    def rank(self) -> int:
        return self.n - 1 if self.cartan_type == "A" else self.n

    @property
    def basis(self) -> str:
        return "fundamental" if self.cartan_type == "E6" else "epsilon"

    @property
    def cartan_matrix(self) -> tuple[tuple[int, ...], ...]:
        if self.cartan_type == "E6":
            return E6_CARTAN
        return _cartan_classical(self.cartan_type, self.n)

    def rho(self) -> Weight:
        t, n = self.cartan_type, self.n
        if t == "E6":
            return Weight((1,) * 6, "fundamental")
        if t == "C":
            return Weight(tuple(range(n, 0, -1)))
        return Weight(tuple(range(n - 1, -1, -1)))  # A and D

    def _check_node(self, i: int):
        if not 1 <= i <= self.rank:
            raise IndexError(f"node {i} out of range 1..{self.rank} for {self}")

    def reflect(self, i: int, b: Sequence[int]) -> tuple[int, ...]:
        self._check_node(i)
        b = list(b)
        t, n = self.cartan_type, self.n
        if t == "E6":
            c = b[i - 1]
            return tuple(x - c * y for x, y in zip(b, E6_CARTAN[i - 1]))
        if i < n:
            b[i - 1], b[i] = b[i], b[i - 1]
        elif t == "C":
            b[n - 1] = -b[n - 1]
        else:  # D
            b[n - 2], b[n - 1] = -b[n - 1], -b[n - 2]
        return tuple(b)

    def pairing(self, j: int, b: Sequence[int]) -> int:
        """<b, h_j> for the simple coroot h_j."""
        self._check_node(j)
        t, n = self.cartan_type, self.n
        if t == "E6":
            return b[j - 1]
        if j < n:
            return b[j - 1] - b[j]
        return b[n - 1] if t == "C" else b[n - 2] + b[n - 1]

    def is_dominant(self, b: Sequence[int], skip: int | None = None) -> bool:
        return all(self.pairing(j, b) >= 0 for j in range(1, self.rank + 1) if j != skip)

    def node_name(self, i: int) -> str:
        if self.cartan_type in ("C", "D") and i == self.n:
            return "tau"
        return f"s{i}"

    def __str__(self) -> str:
        return "E6" if self.cartan_type == "E6" else f"{self.cartan_type}{self.n}"


@dataclass(frozen=True)
class WeylWord:
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(int(x) for x in self.letters))

    def inverse(self) -> "WeylWord":
        return WeylWord(tuple(reversed(self.letters)))

    def __mul__(self, other: "WeylWord") -> "WeylWord":
        return WeylWord(self.letters + other.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def act(self, datum: RootDatum, b: Sequence[int]) -> tuple[int, ...]:
        b = tuple(b)
        for i in reversed(self.letters):
            b = datum.reflect(i, b)
        return b

    def length(self, datum: RootDatum) -> int:
        """Length of the group element (not the word) via reduction of w(rho)."""
        v = self.act(datum, datum.rho().entries)
        steps = 0
        while True:
            j = next((j for j in range(1, datum.rank + 1) if datum.pairing(j, v) < 0), None)
            if j is None:
                return steps
            v = datum.reflect(j, v)
            steps += 1

    def name(self, datum: RootDatum) -> str:
        return " ".join(datum.node_name(i) for i in self.letters) or "id"


def rho(datum: RootDatum) -> Weight:
    return datum.rho()


def dotted_action(datum: RootDatum, w: WeylWord, beta) -> Weight:
    """w . beta = w(beta + rho) - rho."""
    beta = as_weight(beta)
    r = datum.rho().entries
    if len(beta) != len(r):
        raise ValueError(f"weight length {len(beta)} does not match {datum}")
    shifted = w.act(datum, tuple(x + y for x, y in zip(beta.entries, r)))
    return Weight(tuple(x - y for x, y in zip(shifted, r)), datum.basis)


def minimal_coset_reps(datum: RootDatum, levi_node: int, max_length: int,
                       budget: int = 200_000) -> dict[int, list[WeylWord]]:
    """Minimal-length representatives of W / W_Y up to ``max_length``.

    W_Y is generated by every node except ``levi_node``.  w is kept when
    w^{-1} . rho is dominant for the Levi.  Within one length, words are
    sorted by first letter, largest first.
    """
    datum._check_node(levi_node)
    if max_length < 0:
        raise ValueError("max_length must be non-negative")
    probe = datum.rho()
    seen = {probe.entries}
    out: dict[int, list[WeylWord]] = {0: [WeylWord()]}
    layer = [WeylWord()]
    count = 1
    for length in range(1, max_length + 1):
        nxt = []
        for w in layer:
            for a in range(datum.rank, 0, -1):
                cand = WeylWord((a,) + w.letters)
                img = dotted_action(datum, cand.inverse(), probe).entries
                if img in seen:
                    continue
                if cand.length(datum) != length:
                    continue
                if not datum.is_dominant(img, skip=levi_node):
                    continue
                seen.add(img)
                nxt.append(cand)
                count += 1
                if count > budget:
                    raise BudgetError(f"more than {budget} coset representatives explored")
        if not nxt:
            break
        nxt.sort(key=lambda w: tuple(-x for x in w.letters))
        out[length] = nxt
        layer = nxt
    return out


# -- Kostant weights -------------------------------------------------------------------
def fundamental_to_epsilon(nu: Sequence[int]) -> tuple[int, ...]:
    """gamma_i = nu_i + ... + nu_last."""
    out, acc = [], 0
    for x in reversed(nu):
        acc += x
        out.append(acc)
    return tuple(reversed(out))


@dataclass(frozen=True)
class SyzygyEntry:
    degree: int
    word: WeylWord
    dotted: Weight  # w^{-1} . alpha in the datum's coordinates
    dual: Weight  # -(w^{-1} . alpha)^opp in epsilon coordinates
    partition: Partition  # dual twisted so that its last entry is 0
    twist: int

    def to_dict(self, datum: RootDatum) -> dict:
        return {"degree": self.degree, "word": list(self.word.letters),
                "word_name": self.word.name(datum), "dotted": list(self.dotted.entries),
                "dual": list(self.dual.entries), "partition": list(self.partition),
                "twist": self.twist}


@dataclass
class SyzygyTable:
    datum: RootDatum
    levi_node: int
    alpha: Weight
    entries: list[SyzygyEntry] = field(default_factory=list)

    def at_degree(self, p: int) -> list[SyzygyEntry]:
        return [e for e in self.entries if e.degree == p]

    def by_word(self, letters: Sequence[int]) -> SyzygyEntry:
        letters = tuple(letters)
        for e in self.entries:
            if e.word.letters == letters:
                return e
        raise KeyError(letters)

    def to_dict(self) -> dict:
        return {"type": str(self.datum), "levi_node": self.levi_node,
                "alpha": list(self.alpha.entries),
                "entries": [e.to_dict(self.datum) for e in self.entries]}


def kostant_weights(datum: RootDatum, levi_node: int, alpha, max_degree: int) -> SyzygyTable:
    """Weights -(w^{-1} . alpha)^opp for w in W'_Y of length at most ``max_degree``."""
    alpha = as_weight(alpha)
    if not datum.is_dominant(alpha.entries):
        raise ValueError(f"{alpha.entries} is not dominant for {datum}")
    table = SyzygyTable(datum, levi_node, alpha)
    for p, words in sorted(minimal_coset_reps(datum, levi_node, max_degree).items()):
        for w in words:
            dot = dotted_action(datum, w.inverse(), alpha)
            eps = fundamental_to_epsilon(dot.entries) if datum.cartan_type == "E6" else dot.entries
            dual = dual_weight(Weight(eps))
            part, k = normalize_twist(dual)
            table.entries.append(SyzygyEntry(p, w, dot, dual, part, k))
    return table


# -- named families --------------------------------------------------------------------
@dataclass
class FamilyRecord:
    kind: str
    n: int
    alpha: tuple[int, ...]
    lam: Partition
    mu: Partition
    alpha_prime: Partition | None = None
    nu: Partition | None = None
    extras: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        d = {"kind": self.kind, "n": self.n, "alpha": list(self.alpha), "lambda": list(self.lam),
             "mu": list(self.mu)}
        if self.alpha_prime is not None:
            d["alpha_prime"] = list(self.alpha_prime)
        if self.nu is not None:
            d["nu"] = list(self.nu)
        if self.extras:
            d.update({k: (list(v) if isinstance(v, tuple) else v) for k, v in self.extras.items()})
        return d


# kind -> (type, alpha length relative to n, constraint, words for alpha', lambda, mu, nu)
# words use symbolic node offsets: "n" is node n, "n-1" node n-1, ...
_FAMILIES = {
    "sym2-row2": ("C", "alpha_n = 0", ["n"], ["n-1", "n"], ["n", "n-1", "n"], ["n-2", "n-1", "n"]),
    "wedge2-col": ("D", "alpha_{n-1} = alpha_n = 0", ["n"], ["n-2", "n"], ["n-1", "n-2", "n"],
                   ["n-3", "n-2", "n"]),
    "1a": ("C", "alpha_{n-1} = alpha_n", None, ["n"], ["n-1", "n"], None),
    "1b": ("C", "alpha_{n-2} = alpha_{n-1}", None, ["n-1", "n"], ["n-2", "n-1", "n"], None),
    "2a": ("D", "alpha_{n-1} = alpha_n", None, ["n-2", "n"], ["n-1", "n-2", "n"], None),
    "2b": ("D", "alpha_{n-2} = alpha_{n-1}", None, ["n"], ["n-2", "n"], None),
    "2c": ("D", "alpha_{n-3} = alpha_{n-2}", None, ["n-2", "n"], ["n-3", "n-2", "n"], None),
}

FAMILY_KINDS = tuple(_FAMILIES) + ("e6-beta",)


def _resolve(word: list[str], n: int) -> tuple[int, ...]:
    out = []
    for tok in word:
        out.append(n if tok == "n" else n - int(tok.split("-")[1]))
    return tuple(out)


def _explicit(kind: str, a: tuple[int, ...], n: int) -> dict[str, tuple[int, ...]]:
    """The closed-form partitions of each family, 1-based alpha access."""
    A = (None,) + a

    def tail(hi: int) -> tuple[int, ...]:  # a1 - a_hi, ..., a1 - a_2
        return tuple(A[1] - A[j] for j in range(hi, 1, -1))

    if kind == "sym2-row2":
        return {"alpha_prime": (2 + A[1], A[1] - A[n - 1]) + tail(n - 2),
                "lam": (A[1] + A[n - 1] + 3, A[1] + 1) + tail(n - 2),
                "mu": (A[1] + A[n - 1] + 3, A[1] + 3) + tail(n - 2),
                "nu": (A[1] + A[n - 2] + 4, A[1] + 1, A[1] - A[n - 1] + 1) + tail(n - 3)}
    if kind == "wedge2-col":
        return {"alpha_prime": (A[1] + 1, A[1] + 1) + tail(n - 2),
                "lam": (A[1] + A[n - 2] + 2, A[1] + 1, A[1] + 1) + tail(n - 3),
                "mu": (A[1] + A[n - 2] + 2, A[1] + 2, A[1] + 2) + tail(n - 3),
                "nu": (A[1] + A[n - 3] + 3, A[1] + 1, A[1] + 1, A[1] - A[n - 2] + 1) + tail(n - 4)}
    if kind == "1a":
        return {"lam": (A[1] + A[n - 1] + 2, A[1] - A[n - 1]) + tail(n - 2),
                "mu": (A[1] + A[n - 1] + 3, A[1] - A[n - 1] + 1) + tail(n - 2)}
    if kind == "1b":
        return {"lam": (A[1] + A[n - 2] + 3, A[1] - A[n] + 1) + tail(n - 2),
                "mu": (A[1] + A[n - 2] + 4, A[1] - A[n] + 1, A[1] - A[n - 2] + 1) + tail(n - 3)}
    if kind == "2a":
        return {"lam": (A[1] + A[n - 2] + 2, A[1] + A[n - 1] + 1, A[1] - A[n - 1] + 1) + tail(n - 3),
                "mu": (A[1] + A[n - 2] + 2, A[1] + A[n - 1] + 2, A[1] - A[n - 1] + 2) + tail(n - 3)}
    if kind == "2b":
        return {"lam": (A[1] + A[n - 2] + 1, A[1] + A[n] + 1) + tail(n - 2),
                "mu": (A[1] + A[n - 2] + 2, A[1] + A[n] + 1, A[1] - A[n - 2] + 1) + tail(n - 3)}
    if kind == "2c":
        return {"lam": (A[1] + A[n - 3] + 2, A[1] + A[n] + 1, A[1] - A[n - 1] + 1) + tail(n - 3),
                "mu": (A[1] + A[n - 3] + 3, A[1] + A[n] + 1, A[1] - A[n - 1] + 1,
                       A[1] - A[n - 3] + 1) + tail(n - 4)}
    raise KeyError(kind)


def _check_constraint(kind: str, a: tuple[int, ...], n: int):
    A = (None,) + a
    ok = {"sym2-row2": A[n] == 0, "wedge2-col": A[n - 1] == 0 and A[n] == 0,
          "1a": A[n - 1] == A[n], "1b": A[n - 2] == A[n - 1], "2a": A[n - 1] == A[n],
          "2b": A[n - 2] == A[n - 1], "2c": A[n - 3] == A[n - 2]}[kind]
    if not ok:
        raise FamilyConstraintError(f"alpha={a} violates {_FAMILIES[kind][1]} for family {kind}")


def family_generator(kind: str, alpha: Sequence[int], n: int = 6) -> FamilyRecord:
    """Partition families read off Kostant weight tables.

    ``alpha`` may be given without trailing zeros; it is padded to length n
    (to length 6 for ``e6-beta``, where it is the coefficient tuple a).  Each
    family is computed from the Kostant table and checked against its closed
    form.
    """
    if kind == "e6-beta":
        return _e6_family(tuple(alpha) + (0,) * (6 - len(alpha)))
    if kind not in _FAMILIES:
        raise ValueError(f"unknown family {kind!r}; choose from {FAMILY_KINDS}")
    cartan, _, w_ap, w_lam, w_mu, w_nu = _FAMILIES[kind]
    min_n = 4 if cartan == "D" else 3
    if n < min_n:
        raise FamilyConstraintError(f"family {kind} needs n >= {min_n}")
    a = tuple(int(x) for x in alpha)
    if len(a) > n:
        raise FamilyConstraintError(f"alpha has more than {n} entries")
    a = a + (0,) * (n - len(a))
    if any(x < y for x, y in zip(a, a[1:])) or a[-1] < 0:
        raise FamilyConstraintError(f"alpha={a} is not a partition")
    _check_constraint(kind, a, n)
    datum = RootDatum(cartan, n)
    table = kostant_weights(datum, n, a, 3)

    def pick(word):
        if word is None:
            return None
        e = table.by_word(_resolve(word, n))
        # the table weights are normalized by the twist a_1 used in the closed forms
        return Partition(x + a[0] for x in e.dual.entries)

    rec = FamilyRecord(kind, n, a, pick(w_lam), pick(w_mu), pick(w_ap), pick(w_nu))
    closed = _explicit(kind, a, n)
    for key, val in closed.items():
        if Partition(val) != getattr(rec, key):
            raise AssertionError(f"{kind}: closed form {key}={val} disagrees with Kostant "
                                 f"table value {tuple(getattr(rec, key))}")
    if kind == "sym2-row2":
        m = rec.mu.padded(n)
        lhs = m[0] + (m[2] if n > 2 else 0) + 3 <= 2 * m[1]
        rec.extras["constraint_equivalence"] = lhs == (a[n - 3] >= a[n - 2])
    if kind == "wedge2-col":
        m = rec.mu.padded(n)
        rec.extras["constraint_equivalence"] = (m[0] + m[3] + 2 <= 2 * m[1]) == (a[n - 4] >= a[n - 3])
    return rec


E6_WORDS = {"beta1": (6,), "beta2": (3, 6), "beta3": (4, 3, 6), "beta4": (2, 3, 6)}


def e6_beta_closed_form(a: Sequence[int]) -> dict[str, tuple[int, ...]]:
    A = (None,) + tuple(a)
    b = [None] + [sum(A[j] for j in range(i, 7)) for i in range(1, 7)]
    return {
        "beta1": (b[1] - b[6] + A[6] + 1, b[1] - b[5] + A[6] + 1, b[1] - b[4] + A[6] + 1,
                  b[1] - b[3], b[1] - b[2]),
        "beta2": (b[1] - b[6] + A[3] + A[6] + 2, b[1] - b[5] + A[3] + A[6] + 2,
                  b[1] - b[4] + A[6] + 1, b[1] - b[3] + A[3] + 1, b[1] - b[2]),
        "beta3": (b[1] - b[6] + A[3] + A[4] + A[6] + 3, b[1] - b[5] + A[3] + A[6] + 2,
                  b[1] - b[4] + A[4] + A[6] + 2, b[1] - b[3] + A[3] + A[4] + 2, b[1] - b[2]),
        "beta4": (b[1] - b[6] + A[2] + A[3] + A[6] + 3, b[1] - b[5] + A[2] + A[3] + A[6] + 3,
                  b[1] - b[4] + A[6] + 1, b[1] - b[3] + A[3] + 1, b[1] - b[2] + A[2] + 1),
    }


def _e6_family(a: tuple[int, ...]) -> FamilyRecord:
    if len(a) != 6 or any(x < 0 for x in a):
        raise FamilyConstraintError("E6 needs six non-negative coefficients")
    datum = RootDatum("E6", 6)
    table = kostant_weights(datum, 6, a, 3)
    betas = {name: table.by_word(w).partition for name, w in E6_WORDS.items()}
    closed = e6_beta_closed_form(a)
    for name, val in closed.items():
        if Partition(val) != betas[name]:
            raise AssertionError(f"E6 {name}: closed form {val} != table {tuple(betas[name])}")
    # pairs that differ by a wedge^3 strip under the listed vanishing conditions
    pairs = []
    if a[2] == 0:
        pairs.append(("beta1", "beta2"))
    if a[3] == 0:
        pairs.append(("beta2", "beta3"))
    if a[1] == 0:
        pairs.append(("beta2", "beta4"))
    lam, mu = (betas[pairs[0][0]], betas[pairs[0][1]]) if pairs else (betas["beta1"], betas["beta2"])
    return FamilyRecord("e6-beta", 6, a, lam, mu, extras={**betas, "pairs": pairs})


def random_dominant(datum: RootDatum, rng: random.Random, size: int = 4) -> tuple[int, ...]:
    """A random dominant weight (partition-shaped for classical types)."""
    if datum.cartan_type == "E6":
        return tuple(rng.randint(0, size) for _ in range(6))
    parts = sorted((rng.randint(0, size) for _ in range(datum.n)), reverse=True)
    return tuple(parts)

