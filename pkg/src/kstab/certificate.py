"""K-instability certificates: canonical serialization and a from-scratch
verifier.

A certificate packages everything needed to recheck one destabilizing
one-parameter subgroup: the shape (m, n, r), the polarization (d, e), the
weight vectors, the weight alpha of the equation, the expansion
coefficients of the dimension and weight polynomials, and the
Donaldson-Futaki invariant.

The verifier trusts nothing stored: it rechecks the structural conditions,
rederives alpha from the weight vectors, recomputes dimensions and total
weights of the restriction ring by monomial enumeration at k = 1..m+n+1,
interpolates, extracts the expansion coefficients, applies the defining
formula DF = 2(a1*b0 - a0*b1)/a0**2, and finally compares the result with
the closed form -2mnde*alpha/(me+nd)**2. It deliberately shares none of
the closed-form polynomial machinery used by the producing pipeline.

File format
-----------
UTF-8 JSON, one object, keys exactly the certificate fields, serialized
with sorted keys and default separators on a single line plus a trailing
newline. Rationals are reduced "num/den" strings, never floats.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .bigraded import AmbientShape, OneParameterSubgroup, count_monomials, total_weight
from .exactmath import interpolate, leading_two
from .geometry import NormalForm, semiinvariant_alpha

SCHEMA_VERSION = "1"

_RATIONAL_FIELDS = ("a0", "a1", "b0", "b1", "df")
_INT_FIELDS = ("m", "n", "r", "d", "e", "alpha")
_VECTOR_FIELDS = ("lambda_u", "lambda_v")
_ALL_FIELDS = frozenset(
    _RATIONAL_FIELDS + _INT_FIELDS + _VECTOR_FIELDS + ("schema_version", "factor_swapped")
)

_RATIONAL_RE = re.compile(r"^-?\d+/[1-9]\d*$")


class CertificateFormatError(ValueError):
    """The text is not a well-formed certificate (distinct from a failing
    verification verdict)."""


class CheckFailure(NamedTuple):
    check: str
    expected: str
    found: str


@dataclass(frozen=True)
class Verdict:
    ok: bool
    failures: tuple[CheckFailure, ...]

    @classmethod
    def from_failures(cls, failures: list[CheckFailure]) -> "Verdict":
        return cls(ok=not failures, failures=tuple(failures))


@dataclass(frozen=True)
class Certificate:
    schema_version: str
    m: int
    n: int
    r: int
    d: int
    e: int
    lambda_u: tuple[int, ...]
    lambda_v: tuple[int, ...]
    alpha: int
    a0: Fraction
    a1: Fraction
    b0: Fraction
    b1: Fraction
    df: Fraction
    factor_swapped: bool

    def validate(self) -> None:
        """Raise ValueError on the first violated structural invariant."""
        if self.m < 1 or self.n < 1:
            raise ValueError(f"invalid shape ({self.m}, {self.n})")
        if self.d < 1 or self.e < 1:
            raise ValueError(f"invalid polarization ({self.d}, {self.e})")
        if not 1 <= self.r <= min(self.m, self.n):
            raise ValueError(f"r = {self.r} out of range for shape ({self.m}, {self.n})")
        if self.m == self.n and self.r == min(self.m, self.n):
            raise ValueError("m = n with maximal r admits no certificate")
        if len(self.lambda_u) != self.m + 1 or len(self.lambda_v) != self.n + 1:
            raise ValueError("weight vector lengths do not match the shape")
        if sum(self.lambda_u) != 0:
            raise ValueError(f"SL condition violated: sum(u) = {sum(self.lambda_u)}")
        if sum(self.lambda_v) != 0:
            raise ValueError(f"SL condition violated: sum(v) = {sum(self.lambda_v)}")
        if self.df >= 0:
            raise ValueError(f"df = {self.df} is not negative")
        closed = Fraction(
            -2 * self.m * self.n * self.d * self.e * self.alpha,
            (self.m * self.e + self.n * self.d) ** 2,
        )
        if self.df != closed:
            raise ValueError(f"df = {self.df} differs from the closed form {closed}")

    def subgroup(self) -> OneParameterSubgroup:
        return OneParameterSubgroup(self.lambda_u, self.lambda_v)


def _fraction_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def emit(cert: Certificate) -> str:
    """Canonical serialization; identical certificates give identical bytes."""
    cert.validate()
    payload = {
        "schema_version": cert.schema_version,
        "m": cert.m,
        "n": cert.n,
        "r": cert.r,
        "d": cert.d,
        "e": cert.e,
        "lambda_u": list(cert.lambda_u),
        "lambda_v": list(cert.lambda_v),
        "alpha": cert.alpha,
        "a0": _fraction_str(cert.a0),
        "a1": _fraction_str(cert.a1),
        "b0": _fraction_str(cert.b0),
        "b1": _fraction_str(cert.b1),
        "df": _fraction_str(cert.df),
        "factor_swapped": cert.factor_swapped,
    }
    return json.dumps(payload, sort_keys=True) + "\n"


def _require_int(data: dict, key: str) -> int:
    value = data[key]
    if not isinstance(value, int) or isinstance(value, bool):
        raise CertificateFormatError(f"field {key!r} must be an integer, got {value!r}")
    return value


def _require_rational(data: dict, key: str) -> Fraction:
    value = data[key]
    if not isinstance(value, str) or not _RATIONAL_RE.match(value):
        raise CertificateFormatError(
            f"field {key!r} must be a 'num/den' string, got {value!r}"
        )
    return Fraction(value)


def _require_vector(data: dict, key: str) -> tuple[int, ...]:
    value = data[key]
    if not isinstance(value, list) or not value or not all(
        isinstance(w, int) and not isinstance(w, bool) for w in value
    ):
        raise CertificateFormatError(f"field {key!r} must be a non-empty integer list")
    return tuple(value)


def parse(text: str) -> Certificate:
    """Parse certificate text; CertificateFormatError on any malformation."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CertificateFormatError(f"not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise CertificateFormatError("certificate must be a JSON object")
    keys = set(data)
    if keys != _ALL_FIELDS:
        missing = sorted(_ALL_FIELDS - keys)
        extra = sorted(keys - _ALL_FIELDS)
        raise CertificateFormatError(
            f"wrong field set: missing {missing}, unexpected {extra}"
        )
    version = data["schema_version"]
    if version != SCHEMA_VERSION:
        raise CertificateFormatError(
            f"unsupported schema_version {version!r} (supported: {SCHEMA_VERSION!r})"
        )
    if not isinstance(data["factor_swapped"], bool):
        raise CertificateFormatError("field 'factor_swapped' must be a boolean")
    ints = {key: _require_int(data, key) for key in _INT_FIELDS}
    rationals = {key: _require_rational(data, key) for key in _RATIONAL_FIELDS}
    return Certificate(
        schema_version=version,
        lambda_u=_require_vector(data, "lambda_u"),
        lambda_v=_require_vector(data, "lambda_v"),
        factor_swapped=data["factor_swapped"],
        **ints,
        **rationals,
    )


def rederive_expansion(
    m: int,
    n: int,
    d: int,
    e: int,
    lam: OneParameterSubgroup,
    alpha: int,
    cap: int | None = None,
) -> tuple[Fraction, Fraction, Fraction, Fraction, Fraction]:
    """(a0, a1, b0, b1, df) from enumeration, interpolation and the defining
    formula only.

    Dimensions and total weights of the restriction ring are computed at
    k = 1..m+n+1 from the monomial basis (closed forms enter only above the
    enumeration cap), the two value sequences are interpolated, and the
    Donaldson-Futaki invariant is assembled from the top coefficients.
    """
    shape = AmbientShape(m, n)
    dim_samples: list[tuple[int, int]] = []
    weight_samples: list[tuple[int, int]] = []
    for k in range(1, m + n + 2):
        c1 = count_monomials(shape, d * k, e * k, cap)
        c0 = count_monomials(shape, d * k - 1, e * k - 1, cap)
        t1 = total_weight(shape, d * k, e * k, lam, cap)
        t0 = total_weight(shape, d * k - 1, e * k - 1, lam, cap)
        dim_samples.append((k, c1 - c0))
        weight_samples.append((k, t1 - t0 - alpha * c0))
    a0, a1 = leading_two(interpolate(dim_samples), m + n - 1)
    if alpha == 0:
        b0 = b1 = Fraction(0)
    else:
        b0, b1 = leading_two(interpolate(weight_samples), m + n)
    df = 2 * (a1 * b0 - a0 * b1) / (a0 * a0)
    return a0, a1, b0, b1, df


def verify(text: str, cap: int | None = None) -> Verdict:
    """Recheck every claim of a certificate from scratch.

    Structural conditions are checked first; if they hold, alpha and the
    full expansion pipeline are recomputed without trusting any stored
    value, and every mismatch is reported. Malformed input raises
    CertificateFormatError instead of returning a Verdict.
    """
    cert = parse(text)
    failures: list[CheckFailure] = []

    def check(name: str, expected: object, found: object) -> bool:
        if expected != found:
            failures.append(CheckFailure(name, str(expected), str(found)))
            return False
        return True

    structurally_sound = True
    if not (cert.m >= 1 and cert.n >= 1):
        failures.append(CheckFailure("shape", "m >= 1 and n >= 1", f"({cert.m}, {cert.n})"))
        structurally_sound = False
    if not (cert.d >= 1 and cert.e >= 1):
        failures.append(CheckFailure("polarization", "d >= 1 and e >= 1", f"({cert.d}, {cert.e})"))
        structurally_sound = False
    if structurally_sound:
        rmax = min(cert.m, cert.n)
        if not 1 <= cert.r <= rmax:
            failures.append(CheckFailure("rank_range", f"1 <= r <= {rmax}", str(cert.r)))
            structurally_sound = False
        elif cert.m == cert.n and cert.r == rmax:
            failures.append(
                CheckFailure("hypothesis", "m != n or r < min(m, n)", f"m = n = {cert.m}, r = {cert.r}")
            )
            structurally_sound = False
        if len(cert.lambda_u) != cert.m + 1:
            failures.append(
                CheckFailure("lambda_u_length", str(cert.m + 1), str(len(cert.lambda_u)))
            )
            structurally_sound = False
        if len(cert.lambda_v) != cert.n + 1:
            failures.append(
                CheckFailure("lambda_v_length", str(cert.n + 1), str(len(cert.lambda_v)))
            )
            structurally_sound = False
    if not structurally_sound:
        return Verdict.from_failures(failures)

    sl_ok = check("sl_sum_u", 0, sum(cert.lambda_u)) & check(
        "sl_sum_v", 0, sum(cert.lambda_v)
    )
    swapped_found = any(w != 0 for w in cert.lambda_u)
    check("factor_placement", swapped_found, cert.factor_swapped)
    if swapped_found and any(w != 0 for w in cert.lambda_v):
        failures.append(
            CheckFailure("factor_placement", "weights on a single factor", "weights on both factors")
        )
    if not sl_ok:
        return Verdict.from_failures(failures)

    lam = cert.subgroup()
    nf = NormalForm(AmbientShape(cert.m, cert.n), cert.r)
    try:
        alpha = semiinvariant_alpha(nf, lam)
    except ValueError as exc:
        failures.append(CheckFailure("preserves_form", "equal diagonal term weights", str(exc)))
        return Verdict.from_failures(failures)
    check("alpha", alpha, cert.alpha)

    a0, a1, b0, b1, df = rederive_expansion(
        cert.m, cert.n, cert.d, cert.e, lam, alpha, cap
    )
    check("a0", a0, cert.a0)
    check("a1", a1, cert.a1)
    check("b0", b0, cert.b0)
    check("b1", b1, cert.b1)
    check("df", df, cert.df)
    closed = Fraction(
        -2 * cert.m * cert.n * cert.d * cert.e * alpha,
        (cert.m * cert.e + cert.n * cert.d) ** 2,
    )
    check("df_closed_form", closed, df)
    if df >= 0:
        failures.append(CheckFailure("df_negative", "df < 0", str(df)))
    return Verdict.from_failures(failures)
