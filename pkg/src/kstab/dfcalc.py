"""Donaldson-Futaki invariants of product test configurations for the
hypersurface.

For the polarization O(d, e) the dimension of the degree-k piece of the
restriction ring is an exact polynomial N(k) of degree m+n-1, and the total
weight under an SL subgroup preserving the hypersurface is an exact
polynomial w(k) of degree m+n (degree -inf when alpha = 0). Writing

    N(k) = a0 k^(m+n-1) + a1 k^(m+n-2) + ...
    w(k) = b0 k^(m+n)   + b1 k^(m+n-1) + ...

the Donaldson-Futaki invariant of the induced configuration is

    DF = 2 (a1 b0 - a0 b1) / a0^2,

and for this family it collapses to the closed form

    DF = -2 m n d e alpha / (m e + n d)^2.

Every polynomial built here is cross-checked against enumeration-based
values before use; a disagreement raises CrossCheckError instead of
returning anything.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .bigraded import (
    AmbientShape,
    OneParameterSubgroup,
    count_monomials,
    restricted_weight,
)
from .certificate import SCHEMA_VERSION, Certificate
from .exactmath import RationalPolynomial, binom_poly, interpolate, leading_two
from .geometry import NormalForm, destabilizer, is_normal, semiinvariant_alpha


class CrossCheckError(RuntimeError):
    """Two independent computation routes disagreed; the result cannot be
    trusted and nothing is returned."""


@dataclass(frozen=True)
class Polarization:
    """The sheaf O(d, e) restricted to the hypersurface."""

    d: int
    e: int

    def __post_init__(self) -> None:
        if self.d < 1 or self.e < 1:
            raise ValueError(f"polarization degrees must be positive, got ({self.d}, {self.e})")


@dataclass(frozen=True)
class ExpansionCoefficients:
    """Top two coefficients of the dimension and weight polynomials."""

    a0: Fraction
    a1: Fraction
    b0: Fraction
    b1: Fraction


@dataclass(frozen=True)
class Inconclusive:
    """The construction offers no verdict for this input."""

    reason: str


def hilbert_poly(shape: AmbientShape, pol: Polarization, cap: int | None = None) -> RationalPolynomial:
    """The polynomial giving dim R_k for every k >= 1.

    Built as the difference of products of binomial polynomials,

        C(m + dk, m) C(n + ek, n) - C(m + dk - 1, m) C(n + ek - 1, n),

    then cross-checked against interpolation through enumeration-derived
    dimension counts at k = 1..m+n+1.
    """
    m, n, d, e = shape.m, shape.n, pol.d, pol.e
    closed = binom_poly(m, d, m) * binom_poly(n, e, n) - binom_poly(m, d, m - 1) * binom_poly(n, e, n - 1)
    if closed.degree() != m + n - 1:
        raise CrossCheckError(
            f"dimension polynomial has degree {closed.degree()}, expected {m + n - 1}"
        )
    samples = [
        (k, count_monomials(shape, d * k, e * k, cap) - count_monomials(shape, d * k - 1, e * k - 1, cap))
        for k in range(1, m + n + 2)
    ]
    if interpolate(samples) != closed:
        raise CrossCheckError(
            f"dimension polynomial routes disagree for shape ({m}, {n}), polarization ({d}, {e})"
        )
    return closed


def weight_poly(
    shape: AmbientShape,
    pol: Polarization,
    lam: OneParameterSubgroup,
    alpha: int,
    cap: int | None = None,
) -> RationalPolynomial:
    """The polynomial giving the total weight of R_k for every k >= 1.

    For an SL subgroup giving the equation weight alpha this is

        -alpha * C(m + dk - 1, m) C(n + ek - 1, n),

    the zero polynomial when alpha = 0. Evaluations are cross-checked
    against the enumeration-based restriction-ring weights at
    k = 1..m+n+1.
    """
    m, n, d, e = shape.m, shape.n, pol.d, pol.e
    lam.require_special_linear()
    closed = -Fraction(alpha) * (binom_poly(m, d, m - 1) * binom_poly(n, e, n - 1))
    if alpha != 0 and closed.degree() != m + n:
        raise CrossCheckError(
            f"weight polynomial has degree {closed.degree()}, expected {m + n}"
        )
    for k in range(1, m + n + 2):
        enumerated = restricted_weight(shape, d, e, k, lam, alpha, cap)
        if closed(k) != enumerated:
            raise CrossCheckError(
                f"weight polynomial routes disagree at k = {k}: "
                f"closed {closed(k)}, enumerated {enumerated}"
            )
    return closed


def expansion(
    shape: AmbientShape,
    pol: Polarization,
    lam: OneParameterSubgroup,
    alpha: int,
    cap: int | None = None,
) -> ExpansionCoefficients:
    """Extract (a0, a1, b0, b1) and check them against their closed forms."""
    m, n, d, e = shape.m, shape.n, pol.d, pol.e
    a0, a1 = leading_two(hilbert_poly(shape, pol, cap), m + n - 1)
    wp = weight_poly(shape, pol, lam, alpha, cap)
    if alpha == 0:
        b0 = b1 = Fraction(0)
    else:
        b0, b1 = leading_two(wp, m + n)

    fact = math.factorial(m) * math.factorial(n)
    expected = {
        "a0": Fraction(d) ** (m - 1) * Fraction(e) ** (n - 1) * (m * e + n * d) / fact,
        "a1": Fraction(d) ** (m - 2)
        * Fraction(e) ** (n - 2)
        * (m * m * (m - 1) * e * e + m * n * (m + n) * d * e + n * n * (n - 1) * d * d)
        / (2 * fact),
        "b0": -Fraction(d) ** m * Fraction(e) ** n * alpha / fact,
        "b1": -Fraction(d) ** (m - 1)
        * Fraction(e) ** (n - 1)
        * (m * (m - 1) * e + n * (n - 1) * d)
        * alpha
        / (2 * fact),
    }
    extracted = {"a0": a0, "a1": a1, "b0": b0, "b1": b1}
    for name, value in extracted.items():
        if value != expected[name]:
            raise CrossCheckError(
                f"{name} extracted as {value} but closed form gives {expected[name]}"
            )
    return ExpansionCoefficients(a0, a1, b0, b1)


def df_general(coeffs: ExpansionCoefficients) -> Fraction:
    """The defining formula DF = 2 (a1 b0 - a0 b1) / a0^2."""
    if coeffs.a0 <= 0:
        raise ValueError(f"degenerate Hilbert data: a0 = {coeffs.a0} is not positive")
    return 2 * (coeffs.a1 * coeffs.b0 - coeffs.a0 * coeffs.b1) / (coeffs.a0 * coeffs.a0)


def df_closed(shape: AmbientShape, pol: Polarization, alpha: int) -> Fraction:
    """The closed form DF = -2 m n d e alpha / (m e + n d)^2."""
    m, n, d, e = shape.m, shape.n, pol.d, pol.e
    return Fraction(-2 * m * n * d * e * alpha, (m * e + n * d) ** 2)


def decide_instability(
    nf: NormalForm, pol: Polarization, cap: int | None = None
) -> Certificate | Inconclusive:
    """Decide K-instability of the polarized hypersurface.

    For a normal hypersurface with m != n or r < min(m, n), builds the
    destabilizer, computes the Donaldson-Futaki invariant by both routes,
    asserts they agree and are negative, and returns a certificate. For a
    smooth hypersurface with m = n the construction does not apply and an
    Inconclusive marker is returned (no verdict, not a proof of
    stability). Non-normal input (r = 0) is an error.
    """
    if not is_normal(nf):
        raise ValueError(
            "not normal (r = 0): a union of coordinate slices is outside this method's scope"
        )
    m, n, r = nf.shape.m, nf.shape.n, nf.r
    if m == n and r == min(m, n):
        return Inconclusive(
            "m = n and the hypersurface is smooth; the construction yields no verdict"
        )
    lam = destabilizer(nf)
    alpha = semiinvariant_alpha(nf, lam)
    if alpha != 1:
        raise CrossCheckError(f"destabilizer gave the equation weight {alpha}, expected 1")
    coeffs = expansion(nf.shape, pol, lam, alpha, cap)
    from_definition = df_general(coeffs)
    from_closed_form = df_closed(nf.shape, pol, alpha)
    if from_definition != from_closed_form:
        raise CrossCheckError(
            f"DF routes disagree: definition {from_definition}, closed form {from_closed_form}"
        )
    if from_definition >= 0:
        raise CrossCheckError(f"destabilizer produced DF = {from_definition} >= 0")
    return Certificate(
        schema_version=SCHEMA_VERSION,
        m=m,
        n=n,
        r=r,
        d=pol.d,
        e=pol.e,
        lambda_u=lam.u,
        lambda_v=lam.v,
        alpha=alpha,
        a0=coeffs.a0,
        a1=coeffs.a1,
        b0=coeffs.b0,
        b1=coeffs.b1,
        df=from_definition,
        factor_swapped=any(w != 0 for w in lam.u),
    )
