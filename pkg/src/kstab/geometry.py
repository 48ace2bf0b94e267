"""The bidegree-(1,1) hypersurface: coefficient matrix, normal form, and the
explicit destabilizing one-parameter subgroup.

A bilinear equation f = sum c[i][j] x_i y_j is determined up to coordinate
changes by the rank of its coefficient matrix. Coordinates can always be
chosen so that f = x_0 y_0 + ... + x_r y_r with r = rank - 1; all geometric
questions answered here (smoothness, normality, destabilizer) depend only
on (m, n, r).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .bigraded import AmbientShape, Monomial, OneParameterSubgroup, dual_weight


@dataclass(frozen=True)
class BilinearForm:
    """f = sum coeffs[i][j] x_i y_j on P^m x P^n; rows index x, columns y."""

    shape: AmbientShape
    coeffs: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(Fraction(c) for c in row) for row in self.coeffs)
        object.__setattr__(self, "coeffs", rows)
        if len(rows) != self.shape.m + 1 or any(len(r) != self.shape.n + 1 for r in rows):
            raise ValueError(
                f"coefficient matrix must be {self.shape.m + 1} x {self.shape.n + 1}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Fraction | int | str]]) -> "BilinearForm":
        """Build from a rectangular matrix, inferring the ambient shape."""
        if not rows or not rows[0]:
            raise ValueError("coefficient matrix must be non-empty")
        shape = AmbientShape(len(rows) - 1, len(rows[0]) - 1)
        return cls(shape, tuple(tuple(Fraction(c) for c in row) for row in rows))


@dataclass(frozen=True)
class NormalForm:
    """The hypersurface in diagonal coordinates: f = x_0 y_0 + ... + x_r y_r."""

    shape: AmbientShape
    r: int

    def __post_init__(self) -> None:
        lo, hi = 0, min(self.shape.m, self.shape.n)
        if not lo <= self.r <= hi:
            raise ValueError(f"r must lie in [{lo}, {hi}] for shape ({self.shape.m}, {self.shape.n}), got {self.r}")


def _exact_rank(rows: Sequence[Sequence[Fraction]]) -> int:
    """Rank over Q by fraction-free (Bareiss) elimination.

    Rows are scaled to integers first; pivoting takes the first nonzero
    entry in each column, so the computation is deterministic and exact.
    """
    mat: list[list[int]] = []
    for row in rows:
        scale = math.lcm(*(c.denominator for c in row))
        mat.append([int(c * scale) for c in row])
    n_rows, n_cols = len(mat), len(mat[0])
    rank = 0
    prev = 1
    for col in range(n_cols):
        pivot_row = next((i for i in range(rank, n_rows) if mat[i][col] != 0), None)
        if pivot_row is None:
            continue
        mat[rank], mat[pivot_row] = mat[pivot_row], mat[rank]
        pivot = mat[rank][col]
        for i in range(rank + 1, n_rows):
            for j in range(col + 1, n_cols):
                mat[i][j] = (mat[i][j] * pivot - mat[i][col] * mat[rank][j]) // prev
            mat[i][col] = 0
        prev = pivot
        rank += 1
        if rank == n_rows:
            break
    return rank


def normalize(form: BilinearForm) -> NormalForm:
    """Reduce a coefficient matrix to its normal form rank data."""
    if all(c == 0 for row in form.coeffs for c in row):
        raise ValueError("zero coefficient matrix does not define a hypersurface")
    return NormalForm(form.shape, _exact_rank(form.coeffs) - 1)


def is_smooth(nf: NormalForm) -> bool:
    return nf.r == min(nf.shape.m, nf.shape.n)


def is_normal(nf: NormalForm) -> bool:
    return nf.r >= 1


def singular_locus_empty(nf: NormalForm) -> bool:
    """Independent smoothness oracle via the Jacobian criterion.

    The partials of f = sum_{i<=r} x_i y_i are y_0..y_r and x_0..x_r. A
    singular point is a common zero of all of them; zeroing x_0..x_r leaves
    a legal point of P^m iff a coordinate with index above r exists, i.e.
    r + 1 <= m, and likewise on the y side. Any such point automatically
    lies on the hypersurface, so the singular locus is non-empty exactly
    when both blocks can be zeroed.
    """
    can_zero_x_block = nf.r + 1 <= nf.shape.m
    can_zero_y_block = nf.r + 1 <= nf.shape.n
    return not (can_zero_x_block and can_zero_y_block)


def destabilizer(nf: NormalForm) -> OneParameterSubgroup:
    """The explicit destabilizing one-parameter subgroup.

    Requires a normal hypersurface (r >= 1) with a factor P^N satisfying
    r < N. The nontrivial weights (-1 repeated r+1 times, then r+1, then
    zeros) are placed on the second factor when r < n, else on the first
    (possible since then r = n < m); the other factor gets the zero vector.
    Both vectors sum to zero and the equation f gains weight exactly +1.
    """
    m, n, r = nf.shape.m, nf.shape.n, nf.r
    if r == 0:
        raise ValueError("not normal (r = 0): no destabilizer is constructed")
    if m == n == r:
        raise ValueError(
            "method inapplicable: m = n and the hypersurface is smooth, "
            "so neither factor has r < N"
        )
    block = (-1,) * (r + 1) + (r + 1,)
    if r < n:
        u = (0,) * (m + 1)
        v = block + (0,) * (n - r - 1)
    else:  # r = n < m: same construction on the first factor
        u = block + (0,) * (m - r - 1)
        v = (0,) * (n + 1)
    return OneParameterSubgroup(u, v)


def semiinvariant_alpha(nf: NormalForm, lam: OneParameterSubgroup) -> int:
    """The weight by which f rescales under a diagonal SL subgroup.

    Each diagonal term x_i y_i (i <= r) must carry the same dual weight;
    the common value is the weight of f. Unequal term weights mean the
    subgroup moves the hypersurface and no weight is defined.
    """
    m, n = nf.shape.m, nf.shape.n
    if len(lam.u) != m + 1 or len(lam.v) != n + 1:
        raise ValueError(
            f"subgroup has shape ({len(lam.u) - 1}, {len(lam.v) - 1}), expected ({m}, {n})"
        )
    lam.require_special_linear()
    weights = []
    for i in range(nf.r + 1):
        x_exp = tuple(1 if j == i else 0 for j in range(m + 1))
        y_exp = tuple(1 if j == i else 0 for j in range(n + 1))
        weights.append(dual_weight(Monomial(x_exp, y_exp), lam))
    if any(w != weights[0] for w in weights):
        raise ValueError(
            f"subgroup does not preserve the hypersurface: term weights {weights} differ"
        )
    return weights[0]
