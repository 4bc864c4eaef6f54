"""Scalar tensor rank functions derived from mode-unfolding ranks.

The unfolding-rank vector (one matrix rank per mode) yields two scalar rank
functions: its maximum and its second-largest entry counted with
multiplicity.  Both are evaluated at a fixed :class:`RankTolerance`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable

from .linalg import DEFAULT_TOL, RankTolerance, matrix_rank
from .tensor import DenseTensor, unfold

__all__ = [
    "NRank",
    "RankFunction",
    "n_rank",
    "max_tucker_rank",
    "submax_tucker_rank",
    "max_tucker",
    "submax_tucker",
    "min_rank",
]


def _submax(values: Iterable[int]) -> int:
    """Second-largest with multiplicity; a single value is its own submax
    (vectors are treated as having an implicit trailing singleton mode)."""
    ordered = sorted(values, reverse=True)
    return ordered[1] if len(ordered) > 1 else ordered[0]


@dataclass(frozen=True)
class NRank:
    """The per-mode unfolding ranks together with the tolerance that produced them."""

    ranks: tuple[int, ...]
    tol: RankTolerance

    @property
    def max_rank(self) -> int:
        return max(self.ranks)

    @property
    def submax_rank(self) -> int:
        return _submax(self.ranks)


def n_rank(x: DenseTensor, tol: RankTolerance = DEFAULT_TOL) -> NRank:
    """Matrix rank of every mode-j unfolding."""
    return NRank(
        ranks=tuple(matrix_rank(unfold(x, j), tol) for j in range(1, x.order + 1)),
        tol=tol,
    )


def max_tucker_rank(x: DenseTensor, tol: RankTolerance = DEFAULT_TOL) -> int:
    return n_rank(x, tol).max_rank


def submax_tucker_rank(x: DenseTensor, tol: RankTolerance = DEFAULT_TOL) -> int:
    return n_rank(x, tol).submax_rank


class RankFunction:
    """A named integer rank evaluator over dense tensors.

    ``declared_properties`` lists the extra properties (beyond the six
    axioms) that the axiom battery is expected to confirm for this function.
    ``shape_bound`` is an optional optimistic upper bound on the value for a
    given shape, used to prune brute-force subtensor enumeration.

    Evaluators must be pure; results are memoised per instance.
    """

    _CACHE_LIMIT = 1 << 20

    def __init__(
        self,
        name: str,
        evaluator: Callable[[DenseTensor], int],
        declared_properties: Iterable[str] = (),
        shape_bound: Callable[[tuple[int, ...]], int] | None = None,
    ):
        self.name = name
        self.evaluator = evaluator
        self.declared_properties = frozenset(declared_properties)
        self.shape_bound = shape_bound
        self._cache: dict[DenseTensor, int] = {}

    def __call__(self, x: DenseTensor) -> int:
        hit = self._cache.get(x)
        if hit is not None:
            return hit
        value = int(self.evaluator(x))
        if len(self._cache) >= self._CACHE_LIMIT:
            self._cache.clear()
        self._cache[x] = value
        return value

    def __repr__(self) -> str:
        return f"RankFunction({self.name!r})"


def _unfolding_bounds(shape: tuple[int, ...]) -> list[int]:
    total = math.prod(shape)
    return [min(n, total // n) for n in shape]


def max_tucker(tol: RankTolerance = DEFAULT_TOL) -> RankFunction:
    """Max-Tucker rank: the largest unfolding rank.  Proper and subadditive."""
    return RankFunction(
        "max_tucker",
        lambda x: max_tucker_rank(x, tol),
        declared_properties=("proper", "subadditive"),
        shape_bound=lambda shape: max(_unfolding_bounds(shape)),
    )


def submax_tucker(tol: RankTolerance = DEFAULT_TOL) -> RankFunction:
    """Submax-Tucker rank: the second-largest unfolding rank.  Strongly proper."""
    return RankFunction(
        "submax_tucker",
        lambda x: submax_tucker_rank(x, tol),
        declared_properties=("proper", "strongly_proper"),
        shape_bound=lambda shape: _submax(_unfolding_bounds(shape)),
    )


def min_rank(r1: RankFunction, r2: RankFunction) -> RankFunction:
    """Pointwise minimum of two rank functions.

    The minimum keeps proper/strongly-proper declarations (it is dominated by
    both arguments) but never a subadditive one: the minimum of two
    subadditive rank functions need not be subadditive.
    """
    declared = (r1.declared_properties | r2.declared_properties) & {"proper", "strongly_proper"}
    if r1.shape_bound and r2.shape_bound:
        bound = lambda shape: min(r1.shape_bound(shape), r2.shape_bound(shape))
    else:
        bound = r1.shape_bound or r2.shape_bound
    return RankFunction(
        f"min({r1.name},{r2.name})",
        lambda x: min(r1(x), r2(x)),
        declared_properties=declared,
        shape_bound=bound,
    )
