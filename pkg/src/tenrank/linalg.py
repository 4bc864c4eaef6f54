"""Tolerance-controlled numerical matrix rank and independent-row selection.

Every tensor rank in the package reduces to :func:`matrix_rank` of some
unfolding, so the tolerance semantics are fixed here once: singular values
are compared against ``tol.value * sigma_max`` (relative mode, with
``max(rows, cols) * eps`` as the automatic default factor) or against a raw
``tol.value`` (absolute mode).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NumericError

__all__ = ["RankTolerance", "RowBasis", "DEFAULT_TOL", "matrix_rank", "row_basis", "in_row_span"]

_EPS = float(np.finfo(np.float64).eps)


@dataclass(frozen=True)
class RankTolerance:
    """Singular-value threshold rule.

    mode "relative": threshold = value * sigma_max, where a ``None`` value
    means the standard ``max(rows, cols) * eps`` factor.  mode "absolute":
    threshold = value.
    """

    mode: str = "relative"
    value: float | None = None

    def __post_init__(self):
        if self.mode not in ("relative", "absolute"):
            raise ValueError(f"unknown tolerance mode {self.mode!r}")
        if self.value is not None and self.value < 0:
            raise ValueError("tolerance value must be nonnegative")
        if self.mode == "absolute" and self.value is None:
            raise ValueError("absolute tolerance needs an explicit value")

    def threshold(self, shape: tuple[int, int], sigma_max: float) -> float:
        if self.mode == "absolute":
            return self.value
        factor = self.value if self.value is not None else max(shape) * _EPS
        return factor * sigma_max

    def describe(self) -> str:
        if self.mode == "relative" and self.value is None:
            return "relative:max(rows,cols)*eps"
        return f"{self.mode}:{self.value!r}"


DEFAULT_TOL = RankTolerance()


@dataclass(frozen=True)
class RowBasis:
    """A maximal numerically independent set of rows (1-based indices)."""

    indices: tuple[int, ...]
    rank: int


def _as_matrix(M) -> np.ndarray:
    A = np.asarray(M, dtype=np.float64)
    if A.ndim == 1:
        A = A.reshape(1, -1)
    if A.ndim != 2 or A.size == 0:
        raise ValueError(f"expected a nonempty matrix, got shape {A.shape}")
    return A


def matrix_rank(M, tol: RankTolerance = DEFAULT_TOL) -> int:
    """Count of singular values above the tolerance threshold."""
    A = _as_matrix(M)
    try:
        s = np.linalg.svd(A, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"SVD failed on {A.shape[0]}x{A.shape[1]} matrix") from exc
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s > tol.threshold(A.shape, float(s[0]))))


def row_basis(M, tol: RankTolerance = DEFAULT_TOL) -> RowBasis:
    """Select matrix_rank(M) rows forming a maximal independent set.

    Row-pivoted Gram-Schmidt elimination: at each step the row with the
    largest residual norm is taken, ties broken by the smallest row index,
    so the result is deterministic for identical input bytes.
    """
    A = _as_matrix(M)
    r = matrix_rank(A, tol)
    resid = A.copy()
    basis_vecs: list[np.ndarray] = []
    picked: list[int] = []
    for _ in range(r):
        norms = np.linalg.norm(resid, axis=1)
        k = int(np.argmax(norms))  # first maximum -> smallest index on ties
        q = resid[k] / norms[k]
        for prev in basis_vecs:  # re-orthogonalization pass against drift
            q = q - (q @ prev) * prev
        q = q / np.linalg.norm(q)
        picked.append(k)
        basis_vecs.append(q)
        resid = resid - np.outer(resid @ q, q)
        resid[k] = 0.0
    indices = tuple(sorted(i + 1 for i in picked))
    if indices and matrix_rank(A[[i - 1 for i in indices]], tol) != r:
        raise NumericError(
            f"row selection lost rank on {A.shape[0]}x{A.shape[1]} matrix (target {r})"
        )
    return RowBasis(indices=indices, rank=r)


def in_row_span(M, basis: RowBasis, v, tol: RankTolerance = DEFAULT_TOL) -> bool:
    """True iff appending v to the basis rows does not raise numerical rank."""
    A = _as_matrix(M)
    w = np.asarray(v, dtype=np.float64).reshape(-1)
    if w.size != A.shape[1]:
        raise ValueError(f"vector length {w.size} != column count {A.shape[1]}")
    if basis.rank == 0:
        return matrix_rank(w.reshape(1, -1), tol) == 0
    rows = A[[i - 1 for i in basis.indices]]
    return matrix_rank(np.vstack([rows, w]), tol) == basis.rank
