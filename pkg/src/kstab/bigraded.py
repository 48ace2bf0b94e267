"""Monomial-level model of the bigraded coordinate ring of P^m x P^n and of
its restriction to a bidegree-(1,1) hypersurface.

A bidegree is passed around as a plain pair of non-negative integers
``(a, b)``; ``S_{a,b}`` denotes the space of bihomogeneous polynomials of
that bidegree, spanned by the monomials x^A y^B with |A| = a, |B| = b.

Sign convention
---------------
A one-parameter subgroup with weight vectors (u, v) acts on coordinates by
x_i -> t**u[i] * x_i and y_j -> t**v[j] * y_j. The induced dual action on
sections gives the monomial x^A y^B the weight -(A.u + B.v). With this
convention the explicit destabilizing subgroup built in ``kstab.geometry``
gives the hypersurface equation weight +1.

Restriction ring
----------------
For the hypersurface X = {f = 0} with f of bidegree (1,1), multiplication
by f embeds S_{dk-1,ek-1} into S_{dk,ek} with cokernel the degree-k piece
R_k of the restriction ring. Dimensions and equivariant weights of R_k are
computed through that exact sequence: the submodule f*S_{dk-1,ek-1} matches
S_{dk-1,ek-1} with every weight shifted by the weight of f.

Enumeration cap
---------------
Brute-force enumeration is only attempted while the piece S_{a,b} has at
most ``resolve_cap()`` monomials (default 2 * 10**6, overridable through
the ``KSTAB_ENUM_CAP`` environment variable). Above the cap the closed
forms are used instead and the skip is reported on the module logger.
"""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

import numpy as np

from .exactmath import binom

log = logging.getLogger(__name__)

DEFAULT_ENUM_CAP = 2_000_000
ENUM_CAP_ENV = "KSTAB_ENUM_CAP"

# np.int64 accumulation is only trusted while the worst-case |sum| stays
# below this margin; otherwise summation falls back to Python integers.
_INT64_SAFE = 2**62


def resolve_cap(cap: int | None = None) -> int:
    """The enumeration cap in effect: explicit argument, else environment."""
    if cap is not None:
        return cap
    raw = os.environ.get(ENUM_CAP_ENV)
    return int(raw) if raw else DEFAULT_ENUM_CAP


@dataclass(frozen=True)
class AmbientShape:
    """The ambient product P^m x P^n."""

    m: int
    n: int

    def __post_init__(self) -> None:
        if self.m < 1 or self.n < 1:
            raise ValueError(f"both projective factors need dimension >= 1, got ({self.m}, {self.n})")


@dataclass(frozen=True)
class OneParameterSubgroup:
    """Diagonal one-parameter subgroup, encoded by integer weight vectors.

    ``u`` has one weight per x coordinate (length m+1), ``v`` one per y
    coordinate (length n+1). Membership in SL(m+1) x SL(n+1) means both
    vectors sum to zero; this is checkable, not enforced on construction,
    so that invalid user input can be diagnosed by callers.
    """

    u: tuple[int, ...]
    v: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "u", tuple(int(w) for w in self.u))
        object.__setattr__(self, "v", tuple(int(w) for w in self.v))
        if len(self.u) < 2 or len(self.v) < 2:
            raise ValueError("weight vectors need length m+1 >= 2 and n+1 >= 2")

    @classmethod
    def trivial(cls, shape: AmbientShape) -> "OneParameterSubgroup":
        return cls((0,) * (shape.m + 1), (0,) * (shape.n + 1))

    def is_special_linear(self) -> bool:
        return sum(self.u) == 0 and sum(self.v) == 0

    def require_special_linear(self) -> None:
        if sum(self.u) != 0:
            raise ValueError(f"SL condition violated: sum(u) = {sum(self.u)}")
        if sum(self.v) != 0:
            raise ValueError(f"SL condition violated: sum(v) = {sum(self.v)}")

    def __add__(self, other: "OneParameterSubgroup") -> "OneParameterSubgroup":
        if len(self.u) != len(other.u) or len(self.v) != len(other.v):
            raise ValueError("cannot add subgroups of different shapes")
        return OneParameterSubgroup(
            tuple(a + b for a, b in zip(self.u, other.u)),
            tuple(a + b for a, b in zip(self.v, other.v)),
        )


@dataclass(frozen=True)
class Monomial:
    """Exponent vectors of a monomial x^A y^B."""

    x_exp: tuple[int, ...]
    y_exp: tuple[int, ...]

    def bidegree(self) -> tuple[int, int]:
        return sum(self.x_exp), sum(self.y_exp)


def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """All exponent vectors of length ``parts`` summing to ``total``.

    Yielded in descending lexicographic order, e.g. (2,0), (1,1), (0,2).
    """
    if parts < 1:
        raise ValueError("parts must be >= 1")
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def dim_bigraded(shape: AmbientShape, a: int, b: int) -> int:
    """dim S_{a,b} = C(m+a, m) * C(n+b, n); the count enumerate_monomials yields."""
    if a < 0 or b < 0:
        return 0
    return binom(shape.m + a, shape.m) * binom(shape.n + b, shape.n)


def enumerate_monomials(shape: AmbientShape, a: int, b: int) -> Iterator[Monomial]:
    """Every monomial of S_{a,b} exactly once, in descending lex order on (A, B)."""
    if a < 0 or b < 0:
        return
    for x_exp in compositions(a, shape.m + 1):
        for y_exp in compositions(b, shape.n + 1):
            yield Monomial(x_exp, y_exp)


def dual_weight(mono: Monomial, lam: OneParameterSubgroup) -> int:
    """Weight of the monomial as a section: -(A.u + B.v)."""
    if len(mono.x_exp) != len(lam.u) or len(mono.y_exp) != len(lam.v):
        raise ValueError(
            "monomial/subgroup length mismatch: "
            f"({len(mono.x_exp)}, {len(mono.y_exp)}) vs ({len(lam.u)}, {len(lam.v)})"
        )
    return -(
        sum(e * w for e, w in zip(mono.x_exp, lam.u))
        + sum(e * w for e, w in zip(mono.y_exp, lam.v))
    )


@lru_cache(maxsize=None)
def _factor_count(total: int, parts: int) -> int:
    """Number of exponent vectors, counted by explicit enumeration."""
    return sum(1 for _ in compositions(total, parts))


@lru_cache(maxsize=None)
def _factor_weights(total: int, weights: tuple[int, ...]):
    """Coordinate weights A.w of every exponent vector A with |A| = total.

    Returns an immutable int64 array when the values fit, else a plain list
    of Python integers (exactness is never sacrificed to the dtype).
    """
    vals = [
        sum(e * w for e, w in zip(comp, weights))
        for comp in compositions(total, len(weights))
    ]
    try:
        arr = np.array(vals, dtype=np.int64)
    except OverflowError:
        return vals
    arr.flags.writeable = False
    return arr


def count_monomials(shape: AmbientShape, a: int, b: int, cap: int | None = None) -> int:
    """dim S_{a,b} obtained by enumerating each factor's exponent vectors.

    Used where an enumeration-derived count is wanted instead of the closed
    form; both factors are listed exhaustively and the counts multiplied.
    Falls back to the closed form above the enumeration cap.
    """
    if a < 0 or b < 0:
        return 0
    closed = dim_bigraded(shape, a, b)
    if closed > resolve_cap(cap):
        log.info(
            "enumeration skipped for S_{%d,%d} on P^%d x P^%d (%d monomials over cap); using closed form",
            a, b, shape.m, shape.n, closed,
        )
        return closed
    return _factor_count(a, shape.m + 1) * _factor_count(b, shape.n + 1)


def _sum_pair_weights(wa, wb) -> int:
    """Sum of wa[i] + wb[j] over all pairs, visiting every pair."""
    if isinstance(wa, np.ndarray) and isinstance(wb, np.ndarray):
        bound_a = max(abs(int(wa.max())), abs(int(wa.min()))) if len(wa) else 0
        bound_b = max(abs(int(wb.max())), abs(int(wb.min()))) if len(wb) else 0
        if len(wa) * len(wb) * (bound_a + bound_b + 1) < _INT64_SAFE:
            return int(np.add.outer(wa, wb).sum())
        wa, wb = [int(x) for x in wa], [int(x) for x in wb]
    total = 0
    for x in wa:
        for y in wb:
            total += x + y
    return total


def total_weight(
    shape: AmbientShape, a: int, b: int, lam: OneParameterSubgroup, cap: int | None = None
) -> int:
    """Total dual weight of S_{a,b}: the sum of dual_weight over all monomials.

    Zero whenever lam lies in SL(m+1) x SL(n+1). Under the enumeration cap
    the sum is computed over every monomial; above it the SL vanishing is
    used (each coordinate appears with the same total exponent across the
    monomial basis, so the sum is proportional to sum(u) and sum(v)).
    """
    if len(lam.u) != shape.m + 1 or len(lam.v) != shape.n + 1:
        raise ValueError(
            f"subgroup has shape ({len(lam.u) - 1}, {len(lam.v) - 1}), expected ({shape.m}, {shape.n})"
        )
    if a < 0 or b < 0:
        return 0
    return _total_weight_cached(shape.m, shape.n, a, b, lam.u, lam.v, resolve_cap(cap))


@lru_cache(maxsize=None)
def _total_weight_cached(
    m: int, n: int, a: int, b: int, u: tuple[int, ...], v: tuple[int, ...], cap: int
) -> int:
    shape = AmbientShape(m, n)
    dim = dim_bigraded(shape, a, b)
    if dim > cap:
        if sum(u) == 0 and sum(v) == 0:
            log.info(
                "enumeration skipped for weights on S_{%d,%d} (%d monomials over cap); SL vanishing used",
                a, b, dim,
            )
            return 0
        raise ValueError(
            f"S_{{{a},{b}}} has {dim} monomials, over the enumeration cap {cap}; "
            "total weight of a non-SL subgroup cannot be certified"
        )
    return -_sum_pair_weights(_factor_weights(a, u), _factor_weights(b, v))


def restricted_dim(shape: AmbientShape, d: int, e: int, k: int) -> int:
    """dim R_k = dim S_{dk,ek} - dim S_{dk-1,ek-1}, via the exact sequence."""
    if d < 1 or e < 1:
        raise ValueError(f"polarization degrees must be positive, got ({d}, {e})")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return dim_bigraded(shape, d * k, e * k) - dim_bigraded(shape, d * k - 1, e * k - 1)


def restricted_weight(
    shape: AmbientShape,
    d: int,
    e: int,
    k: int,
    lam: OneParameterSubgroup,
    alpha: int,
    cap: int | None = None,
) -> int:
    """Total dual weight of R_k under lam.

    Multiplication by f shifts every weight of S_{dk-1,ek-1} by the weight
    alpha of f, so the weight of R_k is

        w(S_{dk,ek}) - w(S_{dk-1,ek-1}) - alpha * dim S_{dk-1,ek-1}.

    For SL subgroups the two ambient totals vanish and this reduces to
    -alpha * dim S_{dk-1,ek-1}.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return (
        total_weight(shape, d * k, e * k, lam, cap)
        - total_weight(shape, d * k - 1, e * k - 1, lam, cap)
        - alpha * count_monomials(shape, d * k - 1, e * k - 1, cap)
    )
