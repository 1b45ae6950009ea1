"""Rank-deficiency levels of a transition matrix and the indices they define.

For a d x d unitary U and t in [0, d-1], the level-t row deficiency is the
maximum of m - rank(S) over all submatrices S of U with m rows and m + t
columns (m in [1, d-t]); the column deficiency is the same with the roles of
rows and columns exchanged. The overall level is the larger of the two. The
deficiency index tau is one less than the smallest t whose level is zero, and
the incompatibility order of the underlying basis pair is chi = d - tau.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import partial
from typing import Optional

import numpy as np

from ._parallel import ordered_map
from .matrices import SubmatrixSelector, TransitionMatrix
from .rank import DEFAULT_RANK_TOL, rank_threshold


@dataclass(frozen=True)
class DeficiencyWitness:
    """A submatrix achieving the level maximum, with the side it was found on."""

    side: str  # 'row' or 'col'
    selector: SubmatrixSelector
    deficiency: int


@dataclass(frozen=True, eq=False)
class DeficiencyProfile:
    """All deficiency levels of one transition matrix, with witnesses.

    r_values[t] = max(r_row_values[t], r_col_values[t]); tau and chi follow.
    worst_gap_ratio is the largest dropped/kept singular-value ratio seen
    across every rank decision made, so borderline classifications can be
    flagged instead of silently trusted.
    """

    dim: int
    r_values: tuple[int, ...]
    r_row_values: tuple[int, ...]
    r_col_values: tuple[int, ...]
    tau: int
    chi: int
    witnesses: tuple[Optional[DeficiencyWitness], ...]
    worst_gap_ratio: float


def _check_level(dim: int, t: int) -> None:
    if not 0 <= t <= dim - 1:
        raise ValueError(f"level t must be in [0, {dim - 1}], got {t}")


def _batch_eval(a: np.ndarray, rows: tuple[int, ...], col_sets: np.ndarray, threshold: float):
    """Ranks and gap ratios of a[rows, K] for every column set K (one SVD call)."""
    sub = a[np.asarray(rows)][:, col_sets].transpose(1, 0, 2)
    s = np.linalg.svd(sub, compute_uv=False)
    ranks = (s > threshold).sum(axis=1)
    gaps = np.zeros(len(ranks))
    inner = (ranks > 0) & (ranks < s.shape[1])
    if inner.any():
        where = np.nonzero(inner)[0]
        r = ranks[where]
        gaps[where] = s[where, r] / s[where, r - 1]
    return rows, ranks, gaps


def _max_row_deficiency(
    a: np.ndarray,
    t: int,
    *,
    stop_at: int | None = None,
    rank_tol: float = DEFAULT_RANK_TOL,
    threads: int = 1,
):
    """Maximum of m - rank over all m x (m+t) submatrices of the unitary a.

    Enumeration order: m ascending, row subsets lexicographic, column subsets
    lexicographic; the returned selector is the first one achieving the
    maximum in that order. Three prunes, none of which can change the value
    or the witness:

    - interlacing ceiling: a submatrix of a unitary with m rows and c columns
      has rank >= m + c - d, so no candidate at this m can exceed
      min(m, d - m - t); an m whose ceiling cannot beat the current maximum
      is skipped, and the search for one m stops once its ceiling is reached
      (later candidates at the same m could only tie, and ties never replace
      the first-achieving selector);
    - stop_at: a caller-supplied hard upper bound (from the unit-step
      property of consecutive levels, or 1 when only existence of deficiency
      matters); reaching it ends the search immediately.

    Returns (value, selector or None, worst gap ratio seen).
    """
    d = a.shape[0]
    best = 0
    best_sel: SubmatrixSelector | None = None
    worst_gap = 0.0
    for m in range(1, d - t + 1):
        ceiling = min(m, d - m - t)
        if ceiling <= best:
            continue
        c = m + t
        col_sets = np.array(list(itertools.combinations(range(d), c)))
        threshold = rank_threshold((m, c), rank_tol, 1.0)
        row_sets = itertools.combinations(range(d), m)
        evaluate = partial(_batch_eval, a, col_sets=col_sets, threshold=threshold)
        for rows, ranks, gaps in ordered_map(evaluate, row_sets, threads):
            worst_gap = max(worst_gap, float(gaps.max()))
            deficiencies = m - ranks
            vmax = int(deficiencies.max())
            if vmax > best:
                first = int(np.argmax(deficiencies == vmax))
                best = vmax
                best_sel = SubmatrixSelector(rows, tuple(int(x) for x in col_sets[first]))
                if stop_at is not None and best >= stop_at:
                    return best, best_sel, worst_gap
                if best >= ceiling:
                    break
    return best, best_sel, worst_gap


def r_row(
    tm: TransitionMatrix, t: int, *, rank_tol: float = DEFAULT_RANK_TOL, threads: int = 1
) -> tuple[int, Optional[SubmatrixSelector]]:
    """Level-t row deficiency with the first maximizing selector."""
    _check_level(tm.dim, t)
    value, sel, _ = _max_row_deficiency(tm.matrix, t, rank_tol=rank_tol, threads=threads)
    return value, sel


def r_col(
    tm: TransitionMatrix, t: int, *, rank_tol: float = DEFAULT_RANK_TOL, threads: int = 1
) -> tuple[int, Optional[SubmatrixSelector]]:
    """Level-t column deficiency: the row search on the transpose, mapped back."""
    _check_level(tm.dim, t)
    value, sel, _ = _max_row_deficiency(tm.matrix.T, t, rank_tol=rank_tol, threads=threads)
    return value, sel.transpose() if sel is not None else None


def r_t(tm: TransitionMatrix, t: int, *, rank_tol: float = DEFAULT_RANK_TOL, threads: int = 1) -> int:
    """Level-t deficiency: the larger of the row and column values."""
    return max(
        r_row(tm, t, rank_tol=rank_tol, threads=threads)[0],
        r_col(tm, t, rank_tol=rank_tol, threads=threads)[0],
    )


def deficiency_profile(
    tm: TransitionMatrix, *, rank_tol: float = DEFAULT_RANK_TOL, threads: int = 1
) -> DeficiencyProfile:
    """Compute every level, tau, chi, and per-level witnesses.

    Levels are computed for t descending so that each side's value at t + 1
    bounds the value at t from above by one unit, giving an early exit the
    moment that bound is reached.
    """
    d = tm.dim
    a = tm.matrix
    row_vals = [0] * d
    col_vals = [0] * d
    row_wits: list[Optional[SubmatrixSelector]] = [None] * d
    col_wits: list[Optional[SubmatrixSelector]] = [None] * d
    worst = 0.0
    prev_row = prev_col = None
    for t in range(d - 1, -1, -1):
        value, sel, gap = _max_row_deficiency(
            a, t, stop_at=None if prev_row is None else prev_row + 1,
            rank_tol=rank_tol, threads=threads,
        )
        row_vals[t], row_wits[t] = value, sel
        worst = max(worst, gap)
        value, sel, gap = _max_row_deficiency(
            a.T, t, stop_at=None if prev_col is None else prev_col + 1,
            rank_tol=rank_tol, threads=threads,
        )
        col_vals[t] = value
        col_wits[t] = sel.transpose() if sel is not None else None
        worst = max(worst, gap)
        prev_row, prev_col = row_vals[t], col_vals[t]

    r_values = tuple(max(x, y) for x, y in zip(row_vals, col_vals))
    tau = min(t for t in range(d) if r_values[t] == 0) - 1
    witnesses: list[Optional[DeficiencyWitness]] = []
    for t in range(d):
        if r_values[t] == 0:
            witnesses.append(None)
        elif row_vals[t] >= col_vals[t]:
            witnesses.append(DeficiencyWitness("row", row_wits[t], row_vals[t]))
        else:
            witnesses.append(DeficiencyWitness("col", col_wits[t], col_vals[t]))
    return DeficiencyProfile(
        dim=d,
        r_values=r_values,
        r_row_values=tuple(row_vals),
        r_col_values=tuple(col_vals),
        tau=tau,
        chi=d - tau,
        witnesses=tuple(witnesses),
        worst_gap_ratio=worst,
    )


def tau_fast(
    tm: TransitionMatrix, *, rank_tol: float = DEFAULT_RANK_TOL, threads: int = 1
) -> int:
    """The deficiency index without computing full levels.

    Descends t from d - 2 and returns the first t at which any rank-deficient
    m x (m+t) submatrix (or its transpose shape) exists; -1 if none. Agrees
    with deficiency_profile(...).tau because levels are nonincreasing in t.
    """
    a = tm.matrix
    for t in range(tm.dim - 2, -1, -1):
        value, _, _ = _max_row_deficiency(a, t, stop_at=1, rank_tol=rank_tol, threads=threads)
        if value >= 1:
            return t
        value, _, _ = _max_row_deficiency(a.T, t, stop_at=1, rank_tol=rank_tol, threads=threads)
        if value >= 1:
            return t
    return -1
