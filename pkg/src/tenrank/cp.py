"""CP (canonical polyadic) rank bounds via alternating least squares.

The exact CP rank is not computed anywhere in the package: the lower bound
comes from the unfolding ranks, the upper bound from the smallest number of
rank-one terms an ALS fit (or a user-supplied factor certificate) can
demonstrate.  An absent upper bound is reported, never guessed.
"""
from __future__ import annotations

import string
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .linalg import DEFAULT_TOL, RankTolerance
from .ranks import n_rank
from .tensor import DenseTensor, frobenius_norm

__all__ = ["CpBounds", "cp_reconstruct", "cp_als", "cp_bounds"]

_LETTERS = string.ascii_lowercase[:25]  # 'z' reserved for the rank axis


@dataclass(frozen=True)
class CpBounds:
    """lower <= CP rank <= upper (``None`` upper means unknown)."""

    lower: int
    upper: int | None

    def __post_init__(self):
        if self.upper is not None and self.lower > self.upper:
            raise ValueError(f"lower bound {self.lower} exceeds upper bound {self.upper}")


def _factor_subscripts(order: int) -> str:
    if order > len(_LETTERS):
        raise ValueError(f"order {order} too large for einsum-based CP routines")
    modes = _LETTERS[:order]
    return ",".join(f"{c}z" for c in modes) + "->" + modes


def cp_reconstruct(factors: Sequence[np.ndarray]) -> DenseTensor:
    """Sum of rank-one terms from per-mode factor matrices (n_j x R each)."""
    mats = [np.asarray(f, dtype=np.float64) for f in factors]
    return DenseTensor(np.einsum(_factor_subscripts(len(mats)), *mats, optimize=True))


def cp_residual(x: DenseTensor, factors: Sequence[np.ndarray]) -> float:
    """Relative Frobenius residual of a CP factor set against x."""
    return frobenius_norm(cp_reconstruct(factors) - x) / frobenius_norm(x)


def cp_als(
    x: DenseTensor,
    rank: int,
    max_iter: int = 400,
    stall_tol: float = 1e-10,
    seed: int = 0,
) -> tuple[list[np.ndarray], float]:
    """One ALS run from a seeded random start; returns factors and residual."""
    if rank < 1:
        raise ValueError("CP rank must be >= 1")
    rng = np.random.default_rng(seed)
    m = x.order
    factors = [rng.standard_normal((n, rank)) for n in x.shape]
    modes = _LETTERS[:m]
    last = np.inf
    residual = np.inf
    for _ in range(max_iter):
        for j in range(m):
            gram = np.ones((rank, rank))
            for l in range(m):
                if l != j:
                    gram *= factors[l].T @ factors[l]
            sub = (
                modes
                + ","
                + ",".join(f"{modes[l]}z" for l in range(m) if l != j)
                + f"->{modes[j]}z"
            )
            mttkrp = np.einsum(sub, x.data, *[factors[l] for l in range(m) if l != j], optimize=True)
            factors[j] = np.linalg.lstsq(gram, mttkrp.T, rcond=None)[0].T
        residual = cp_residual(x, factors)
        if abs(last - residual) < stall_tol:
            break
        last = residual
    return factors, residual


def cp_bounds(
    x: DenseTensor,
    tol: RankTolerance = DEFAULT_TOL,
    max_rank: int | None = None,
    restarts: int = 2,
    fit_tol: float = 1e-8,
    max_iter: int = 400,
    seed: int = 0,
    certificate: Sequence[np.ndarray] | None = None,
) -> CpBounds:
    """Bracket the CP rank.

    The lower bound is the largest unfolding rank (always valid).  The upper
    bound is heuristic: the smallest candidate rank ``r <= max_rank`` at which
    some ALS restart reaches a relative residual below ``fit_tol``, or the
    width of a ``certificate`` factor set that reproduces x to the same
    accuracy.  No success means an unknown upper bound.
    """
    if x.order < 2:
        raise ValueError("CP bounds need order >= 2")
    if x.is_zero():
        return CpBounds(lower=0, upper=0)
    lower = n_rank(x, tol).max_rank
    budget = max_rank if max_rank is not None else lower + 2
    upper: int | None = None
    if certificate is not None:
        width = int(np.asarray(certificate[0]).shape[1])
        if cp_residual(x, certificate) < fit_tol:
            upper = width
    for r in range(max(lower, 1), budget + 1):
        if upper is not None and r >= upper:
            break
        fitted = False
        for attempt in range(restarts):
            _, residual = cp_als(x, r, max_iter=max_iter, seed=seed + 977 * attempt + r)
            if residual < fit_tol:
                fitted = True
                break
        if fitted:
            upper = r
            break
    return CpBounds(lower=lower, upper=upper)
