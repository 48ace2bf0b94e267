"""Exact K-instability toolkit for bidegree-(1,1) hypersurfaces in P^m x P^n.

Computes Donaldson-Futaki invariants of product test configurations in
exact rational arithmetic, constructs the explicit destabilizing
one-parameter subgroup for normal non-balanced hypersurfaces, and emits
and verifies self-contained instability certificates.
"""

from .bigraded import AmbientShape, Monomial, OneParameterSubgroup
from .certificate import Certificate, CertificateFormatError, Verdict, emit, parse, verify
from .dfcalc import (
    CrossCheckError,
    ExpansionCoefficients,
    Inconclusive,
    Polarization,
    decide_instability,
    df_closed,
    df_general,
    expansion,
    hilbert_poly,
    weight_poly,
)
from .exactmath import Rational, RationalPolynomial, binom, binom_poly, interpolate, leading_two
from .geometry import (
    BilinearForm,
    NormalForm,
    destabilizer,
    is_normal,
    is_smooth,
    normalize,
    semiinvariant_alpha,
    singular_locus_empty,
)

__version__ = "0.1.0"

__all__ = [
    "AmbientShape",
    "BilinearForm",
    "Certificate",
    "CertificateFormatError",
    "CrossCheckError",
    "ExpansionCoefficients",
    "Inconclusive",
    "Monomial",
    "NormalForm",
    "OneParameterSubgroup",
    "Polarization",
    "Rational",
    "RationalPolynomial",
    "Verdict",
    "binom",
    "binom_poly",
    "decide_instability",
    "destabilizer",
    "df_closed",
    "df_general",
    "emit",
    "expansion",
    "hilbert_poly",
    "interpolate",
    "is_normal",
    "is_smooth",
    "leading_two",
    "normalize",
    "parse",
    "semiinvariant_alpha",
    "singular_locus_empty",
    "verify",
    "weight_poly",
]
