"""Dimension polynomials of lifted partitions and Euler characteristics of weight complexes.

For nu with at most n-1 rows, k -> dim S_(k, nu) C^n is a polynomial of
degree n-1 for k >= nu_1.  A weight complex is a graded list of partitions;
lifting every summand and taking the alternating sum gives a polynomial in k
whose integer roots are the only k where the alternating dimension can vanish.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from pathlib import Path
from typing import Iterable, Sequence

import sympy

from .partitions import InvalidPartitionError, Partition, lift, schur_dim
from .weylkostant import RootDatum, kostant_weights

_K = sympy.Symbol("k")


class DegenerateInputError(ValueError):
    pass


@dataclass(frozen=True)
class DimPolynomial:
    """Exact polynomial in k, coefficients in ascending degree; valid for k > threshold."""

    coefficients: tuple[Fraction, ...]
    threshold: int = 0

    def __post_init__(self):
        c = [Fraction(x) for x in self.coefficients]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coefficients", tuple(c))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def leading(self) -> Fraction:
        return self.coefficients[-1] if self.coefficients else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coefficients

    def __call__(self, k) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * k + c
        return acc

    def __add__(self, other: "DimPolynomial") -> "DimPolynomial":
        m = max(len(self.coefficients), len(other.coefficients))
        a = self.coefficients + (Fraction(0),) * (m - len(self.coefficients))
        b = other.coefficients + (Fraction(0),) * (m - len(other.coefficients))
        return DimPolynomial(tuple(x + y for x, y in zip(a, b)), max(self.threshold, other.threshold))

    def __neg__(self) -> "DimPolynomial":
        return DimPolynomial(tuple(-c for c in self.coefficients), self.threshold)

    def __sub__(self, other):
        return self + (-other)

    def scaled(self, s) -> "DimPolynomial":
        return DimPolynomial(tuple(c * s for c in self.coefficients), self.threshold)

    def primitive_integer(self) -> tuple[int, ...]:
        """Coefficients (ascending) scaled to coprime integers with positive leading term."""
        if self.is_zero():
            return ()
        den = 1
        for c in self.coefficients:
            den = den * c.denominator // sympy.igcd(den, c.denominator)
        ints = [int(c * den) for c in self.coefficients]
        g = 0
        for x in ints:
            g = sympy.igcd(g, x)
        sign = 1 if ints[-1] > 0 else -1
        return tuple(sign * x // g for x in ints)

    def to_sympy(self) -> sympy.Expr:
        return sum((sympy.Rational(c.numerator, c.denominator) * _K**i
                    for i, c in enumerate(self.coefficients)), sympy.Integer(0))

    def __str__(self) -> str:
        return str(sympy.expand(self.to_sympy()))

    def to_dict(self) -> dict:
        return {"coefficients": [str(c) for c in self.coefficients], "threshold": self.threshold,
                "expression": str(self)}

    @classmethod
    def from_sympy(cls, expr, threshold: int = 0) -> "DimPolynomial":
        poly = sympy.Poly(sympy.expand(expr), _K)
        coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(poly.all_coeffs())]
        return cls(tuple(coeffs), threshold)


def dim_poly(nu: Sequence[int], n: int) -> DimPolynomial:
    """k -> schur_dim(lift(nu, k), n) as an exact polynomial, valid for k > nu_1."""
    nu = Partition(nu)
    if n < 1 or len(nu) >= n and not (n == 1 and not nu):
        raise InvalidPartitionError(f"{tuple(nu)} needs at most {n - 1} rows")
    top = nu[0] if nu else 0
    pts = [(k, schur_dim(lift(nu, k), n)) for k in range(top + 1, top + n + 1)]
    p = DimPolynomial.from_sympy(sympy.interpolate(pts, _K), top)
    expected = Fraction(schur_dim(nu, n - 1) if n > 1 else 1, factorial(n - 1))
    if p.leading != expected or p.degree != n - 1:
        raise AssertionError(f"leading coefficient {p.leading} != {expected} for {tuple(nu)}")
    return p


@dataclass
class ComplexTerm:
    degree: int
    weights: list[Partition]
    twist: int = 0

    def summands(self) -> list[Partition]:
        if not self.twist:
            return self.weights
        return [Partition(x + self.twist for x in w) for w in self.weights]


@dataclass
class WeightComplex:
    n_source: int
    terms: list[ComplexTerm] = field(default_factory=list)

    def euler_characteristic(self) -> int:
        return sum((-1) ** t.degree * schur_dim(w, self.n_source)
                   for t in self.terms for w in t.summands())

    def dims(self) -> list[int]:
        return [sum(schur_dim(w, self.n_source) for w in t.summands()) for t in self.terms]

    def to_dict(self) -> dict:
        return {"n_source": self.n_source,
                "terms": [{"degree": t.degree, "weights": [list(w) for w in t.weights],
                           **({"twist": t.twist} if t.twist else {})} for t in self.terms]}

    @classmethod
    def from_dict(cls, data: dict) -> "WeightComplex":
        terms = [ComplexTerm(int(t["degree"]), [Partition(w) for w in t["weights"]],
                             int(t.get("twist", 0))) for t in data["terms"]]
        return cls(int(data["n_source"]), terms)

    @classmethod
    def load(cls, path) -> "WeightComplex":
        return cls.from_dict(json.loads(Path(path).read_text()))


def euler_poly(g: WeightComplex, n: int) -> DimPolynomial:
    """Alternating sum of dim_poly over every summand of g."""
    total = DimPolynomial((), 0)
    for t in g.terms:
        for w in t.summands():
            if len(w) > n - 1:
                raise InvalidPartitionError(f"{tuple(w)} does not fit in {n - 1} rows")
            p = dim_poly(w, n)
            total = total + (p if t.degree % 2 == 0 else -p)
    chi = sum((-1) ** t.degree * schur_dim(w, n - 1) for t in g.terms for w in t.summands())
    if total.degree <= n - 1 and (total.coefficients + (Fraction(0),) * n)[n - 1] != Fraction(
            chi, factorial(n - 1)):
        raise AssertionError("leading coefficient does not match the Euler characteristic")
    return total


@dataclass(frozen=True)
class ExceptionalSet:
    roots: tuple[int, ...]
    threshold: int

    @property
    def guarantee(self) -> str:
        return (f"non-vanishing holds for every integer k > {self.threshold}"
                + (f" except k in {list(self.roots)}" if self.roots else ""))

    def to_dict(self) -> dict:
        return {"exceptional": list(self.roots), "threshold": self.threshold,
                "guarantee": self.guarantee}


def integer_roots(p: DimPolynomial) -> list[int]:
    if p.is_zero():
        raise DegenerateInputError("the zero polynomial has every integer as a root")
    c = list(p.primitive_integer())
    roots = []
    if c[0] == 0:
        roots.append(0)
        while c[0] == 0:
            c.pop(0)
    for d in sympy.divisors(abs(c[0])):
        for r in (d, -d):
            if p(r) == 0:
                roots.append(r)
    return sorted(set(roots))


def exceptional_k(p: DimPolynomial, threshold: int | None = None) -> ExceptionalSet:
    """Integer roots of p above the validity threshold."""
    l = p.threshold if threshold is None else threshold
    return ExceptionalSet(tuple(r for r in integer_roots(p) if r > l), l)


def koszul_complex_weights(n: int, u_kind: str, max_degree: int | None = None) -> WeightComplex:
    """Schur summands of the exterior powers of U = Sym^2 C^n or wedge^2 C^n.

    Read from the Kostant table with trivial alpha: one summand per coset
    representative of length p.
    """
    kinds = {"sym2": ("C", 1), "wedge2": ("D", -1)}
    if u_kind not in kinds:
        raise ValueError(f"u_kind must be sym2 or wedge2, not {u_kind!r}")
    cartan, sgn = kinds[u_kind]
    if cartan == "D" and n < 3:
        raise ValueError("wedge2 needs n >= 3 here")
    top = n * (n + sgn) // 2
    if max_degree is None or max_degree > top:
        max_degree = top
    table = kostant_weights(RootDatum(cartan, n), n, (0,) * n, max_degree)
    terms = []
    for p in range(max_degree + 1):
        ws = []
        for e in table.at_degree(p):
            w = Partition(e.dual.entries)
            if sum(w) != 2 * p:
                raise AssertionError(f"summand {tuple(w)} of exterior power {p} has wrong size")
            ws.append(w)
        terms.append(ComplexTerm(p, ws))
    return WeightComplex(n, terms)


def lifted_alternating_sum(g: WeightComplex, n: int, k: int) -> int:
    """Direct evaluation of the lifted alternating dimension at one k."""
    return sum((-1) ** t.degree * schur_dim(lift(w, k), n) for t in g.terms for w in t.summands())


EXAMPLE_COMPLEX = {"n_source": 4, "terms": [
    {"degree": 0, "weights": [[3, 1]]},
    {"degree": 1, "weights": [[3, 3]]},
    {"degree": 2, "weights": [[5, 5, 2, 2]]},
    {"degree": 3, "weights": [[5, 5, 4, 2]]},
    {"degree": 4, "weights": [[5, 5, 5, 3]]},
    {"degree": 5, "weights": [[5, 5, 5, 5]]},
]}


def example_complex() -> WeightComplex:
    return WeightComplex.from_dict(EXAMPLE_COMPLEX)


def iter_terms(g: WeightComplex) -> Iterable[tuple[int, Partition]]:
    for t in g.terms:
        for w in t.summands():
            yield t.degree, w
