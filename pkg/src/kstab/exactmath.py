"""Exact arithmetic substrate: binomial coefficients, univariate polynomials
over the rationals, and Lagrange interpolation.

Every quantity in this package is an arbitrary-precision integer or a
`fractions.Fraction`; no floating point is used anywhere. Equality of
results is therefore exact, and sign decisions are provable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

#: Exact rational numbers. Always stored reduced with positive denominator,
#: which the standard library guarantees.
Rational = Fraction

Scalar = Union[int, Fraction]


def binom(a: int, b: int) -> int:
    """Binomial coefficient C(a, b) for non-negative integers.

    Returns 0 when b > a (the generating-function convention), which keeps
    dimension counts valid at indices where a graded piece is empty.
    """
    if a < 0 or b < 0:
        raise ValueError(f"binom requires non-negative arguments, got ({a}, {b})")
    return math.comb(a, b)


@dataclass(frozen=True)
class RationalPolynomial:
    """Univariate polynomial over Q; ``coeffs[i]`` is the coefficient of k**i.

    Trailing zero coefficients are stripped on construction, so the degree
    is well-defined: the zero polynomial has an empty coefficient tuple and
    ``degree() == -1``.
    """

    coeffs: tuple[Fraction, ...] = ()

    def __post_init__(self) -> None:
        cs = [Fraction(c) for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def zero(cls) -> "RationalPolynomial":
        return cls(())

    @classmethod
    def constant(cls, c: Scalar) -> "RationalPolynomial":
        return cls((Fraction(c),))

    @classmethod
    def variable(cls) -> "RationalPolynomial":
        """The polynomial k itself."""
        return cls((Fraction(0), Fraction(1)))

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, power: int) -> Fraction:
        if 0 <= power < len(self.coeffs):
            return self.coeffs[power]
        return Fraction(0)

    def __call__(self, k: Scalar) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * k + c
        return acc

    def __add__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return RationalPolynomial(tuple(out))

    def __neg__(self) -> "RationalPolynomial":
        return RationalPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        return self + (-other)

    def __mul__(self, other: "RationalPolynomial | Scalar") -> "RationalPolynomial":
        if isinstance(other, RationalPolynomial):
            if not self.coeffs or not other.coeffs:
                return RationalPolynomial.zero()
            out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
            return RationalPolynomial(tuple(out))
        return RationalPolynomial(tuple(c * other for c in self.coeffs))

    def __rmul__(self, other: Scalar) -> "RationalPolynomial":
        return self * other

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append(f"{c}*k" if c != 1 else "k")
            else:
                parts.append(f"{c}*k^{i}" if c != 1 else f"k^{i}")
        return " + ".join(parts).replace("+ -", "- ")


def binom_poly(m: int, step: int, shift: int) -> RationalPolynomial:
    """The degree-m polynomial p with p(k) = binom(step*k + shift, m).

    The identity holds for every integer k with step*k + shift >= 0; the
    polynomial is prod_{i=1..m} (step*k + shift - m + i) / m!, with leading
    coefficient step**m / m!.
    """
    if m < 0:
        raise ValueError(f"m must be non-negative, got {m}")
    if step <= 0:
        raise ValueError(f"step must be positive, got {step}")
    p = RationalPolynomial.constant(1)
    for i in range(1, m + 1):
        p = p * RationalPolynomial((Fraction(shift - m + i), Fraction(step)))
    return p * Fraction(1, math.factorial(m))


def interpolate(samples: Iterable[tuple[int, Scalar]]) -> RationalPolynomial:
    """Exact Lagrange interpolation through (node, value) samples.

    Returns the unique polynomial of degree < len(samples) passing through
    every sample. Nodes must be pairwise distinct integers.
    """
    pts = [(int(x), Fraction(y)) for x, y in samples]
    if not pts:
        raise ValueError("at least one sample is required")
    nodes = [x for x, _ in pts]
    if len(set(nodes)) != len(nodes):
        raise ValueError(f"duplicate interpolation nodes in {sorted(nodes)}")
    acc = RationalPolynomial.zero()
    for i, (xi, yi) in enumerate(pts):
        if yi == 0:
            continue
        basis = RationalPolynomial.constant(1)
        denom = 1
        for j, (xj, _) in enumerate(pts):
            if j == i:
                continue
            basis = basis * RationalPolynomial((Fraction(-xj), Fraction(1)))
            denom *= xi - xj
        acc = acc + basis * (yi / denom)
    return acc


def leading_two(p: RationalPolynomial, expected_degree: int) -> tuple[Fraction, Fraction]:
    """The top two coefficients of p, which must have the stated degree.

    Returns (coefficient of k**expected_degree, coefficient of the next
    power down); the second component is 0 when expected_degree is 0. A
    degree mismatch signals an inconsistent Hilbert-style computation and
    raises rather than guessing.
    """
    if expected_degree < 0:
        raise ValueError(f"expected_degree must be non-negative, got {expected_degree}")
    if p.degree() != expected_degree:
        raise ValueError(
            f"degree mismatch: expected {expected_degree}, got {p.degree()}"
        )
    top = p.coefficient(expected_degree)
    sub = p.coefficient(expected_degree - 1) if expected_degree >= 1 else Fraction(0)
    return top, sub
