"""Closed forms and support bounds specific to the discrete Fourier transform.

The incompatibility order of the d-dimensional DFT is low + d/low, where low
is the largest divisor of d not exceeding sqrt(d). Comb vectors (indicators
of arithmetic progressions whose step divides d) transform to combs and are
the extremal states: they realize the bound with equality and also meet the
Donoho-Stark product bound |supp f| * |supp fhat| >= d with equality. The
zeta interpolation curve is the piecewise-linear lower bound on
|supp f| + |supp fhat| obtained from Meshulam's divisor inequality.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass

import numpy as np

from .errors import InvalidDimensionError
from .matrices import SubmatrixSelector, dft_matrix
from .rank import DEFAULT_RANK_TOL, extract_submatrix, numerical_rank


@dataclass(frozen=True)
class DivisorDecomposition:
    """All divisors of d plus the most balanced factor pair low * high = d."""

    dim: int
    divisors: tuple[int, ...]
    low: int  # largest divisor <= sqrt(d)
    high: int  # d // low, so low <= sqrt(d) <= high


def divisor_decomposition(dim: int) -> DivisorDecomposition:
    """Divisors by trial division up to sqrt(d); tiny d, no factoring library."""
    if dim < 1:
        raise InvalidDimensionError(f"dimension must be >= 1, got {dim}")
    small, large = [], []
    q = 1
    while q * q <= dim:
        if dim % q == 0:
            small.append(q)
            if q * q != dim:
                large.append(dim // q)
        q += 1
    divisors = tuple(small + large[::-1])
    low = small[-1]
    return DivisorDecomposition(dim, divisors, low, dim // low)


def dft_chi(dim: int) -> int:
    """Incompatibility order of the d-dimensional DFT: low + d/low."""
    dec = divisor_decomposition(dim)
    return dec.low + dec.high


@dataclass(frozen=True)
class ZetaPoint:
    """One point of the divisor interpolation curve.

    lower_divisor is the greatest divisor <= x, upper_divisor the least
    divisor >= x (equal when x itself divides d), and
    value = d/lower + d/upper + (1 - d/(lower*upper)) * x.
    """

    x: float
    lower_divisor: int
    upper_divisor: int
    value: float


def zeta(dim: int, x: float) -> ZetaPoint:
    """Evaluate the divisor interpolation curve at x in [1, d]."""
    dec = divisor_decomposition(dim)
    if not 1 <= x <= dim:
        raise ValueError(f"x must be in [1, {dim}], got {x}")
    divisors = dec.divisors
    i = bisect_right(divisors, x) - 1
    lower = divisors[i]
    upper = lower if lower == x else divisors[i + 1]
    value = dim / lower + dim / upper + (1 - dim / (lower * upper)) * x
    return ZetaPoint(x=float(x), lower_divisor=lower, upper_divisor=int(upper), value=value)


def meshulam_bound(dim: int, supp_f: int) -> int:
    """Integer lower bound on the transform support given |supp f|.

    Ceiling of d/(d1*d2) * (d1 + d2 - supp_f) with d1, d2 the divisors of d
    bracketing supp_f; supports are integers, so the ceiling never weakens
    the real-valued inequality.
    """
    if not 1 <= supp_f <= dim:
        raise ValueError(f"supp_f must be in [1, {dim}], got {supp_f}")
    point = zeta(dim, supp_f)
    d1, d2 = point.lower_divisor, point.upper_divisor
    return math.ceil(dim / (d1 * d2) * (d1 + d2 - supp_f))


def extremal_comb(dim: int, teeth: int) -> np.ndarray:
    """Normalized indicator of {0, d/teeth, 2*d/teeth, ...} (teeth points).

    Its DFT is supported on exactly d/teeth points, so the pair realizes
    support sum teeth + d/teeth and support product d.
    """
    if dim < 1:
        raise InvalidDimensionError(f"dimension must be >= 1, got {dim}")
    if not 1 <= teeth <= dim or dim % teeth != 0:
        raise ValueError(f"teeth must divide {dim}, got {teeth}")
    comb = np.zeros(dim, dtype=complex)
    comb[:: dim // teeth] = 1.0 / math.sqrt(teeth)
    comb.setflags(write=False)
    return comb


def comb_submatrix_is_rank_one(
    dim: int,
    teeth: int,
    row_offset: int,
    col_offset: int,
    rank_tol: float = DEFAULT_RANK_TOL,
) -> bool:
    """Whether the comb-indexed DFT submatrix has numerical rank one.

    Rows are row_offset + multiples of d/teeth (teeth of them), columns are
    col_offset + multiples of teeth (d/teeth of them). The entries factor as
    an outer product of two phase vectors, so the rank is one for every
    offset pair; this evaluates the claim numerically rather than assuming it.
    """
    if dim < 1 or dim % teeth != 0 or not 1 <= teeth <= dim:
        raise ValueError(f"teeth must divide {dim}, got {teeth}")
    step = dim // teeth
    if not 0 <= row_offset < step:
        raise ValueError(f"row_offset must be in [0, {step - 1}], got {row_offset}")
    if not 0 <= col_offset < teeth:
        raise ValueError(f"col_offset must be in [0, {teeth - 1}], got {col_offset}")
    selector = SubmatrixSelector(
        rows=tuple(row_offset + j * step for j in range(teeth)),
        cols=tuple(col_offset + k * teeth for k in range(step)),
    )
    sub = extract_submatrix(dft_matrix(dim).matrix, selector)
    return numerical_rank(sub, tol=rank_tol, scale=1.0).rank == 1
