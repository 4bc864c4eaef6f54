"""Full-rank subtensors: detection, constructive extraction, and closures.

A tensor is of full rank under a rank function when its rank equals one of
its dimensions (zero tensors count as full rank by convention).  For the
max-Tucker rank a maximum full-rank subtensor can be extracted directly from
a row basis of the dominant unfolding; for arbitrary proper rank functions
the same object is found by brute-force enumeration of all subtensors, which
also evaluates the closure (the best full-rank subtensor value).
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

from .errors import CapacityError
from .linalg import DEFAULT_TOL, RankTolerance, RowBasis, in_row_span, matrix_rank, row_basis
from .ranks import RankFunction, n_rank
from .tensor import DenseTensor, IndexSelection, subtensor, unfold

__all__ = [
    "FullRankCertificate",
    "is_full_rank",
    "extract_max_tucker",
    "extract_brute_force",
    "closure_eval",
    "closure_rank_function",
    "verify_span_certificate",
]

DEFAULT_CAP = 4096
MAX_MODE_DIM = 8


@dataclass(frozen=True)
class FullRankCertificate:
    """Where and why a subtensor is of full rank.

    ``mode`` is the mode p with rank == dimension (None for the zero-tensor
    convention), ``indices`` the kept mode-p indices of the source tensor,
    ``selection`` the complete per-mode selection of the subtensor.
    """

    mode: int | None
    indices: tuple[int, ...]
    rank: int
    selection: IndexSelection

    def to_json(self) -> dict:
        return {
            "mode": self.mode,
            "indices": list(self.indices),
            "rank": self.rank,
            "selection": [list(m) for m in self.selection.indices],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def is_full_rank(rf: RankFunction, x: DenseTensor) -> tuple[bool, int | None]:
    """Whether rf(x) equals some dimension of x; returns the witness mode.

    Zero tensors are full rank by convention, with no witness mode.
    """
    if x.is_zero():
        return True, None
    r = rf(x)
    for p, n in enumerate(x.shape, start=1):
        if r == n:
            return True, p
    return False, None


def _zero_certificate(x: DenseTensor) -> tuple[DenseTensor, FullRankCertificate]:
    sel = IndexSelection(tuple((1,) for _ in x.shape))
    return subtensor(x, sel), FullRankCertificate(None, (), 0, sel)


def extract_max_tucker(
    x: DenseTensor, tol: RankTolerance = DEFAULT_TOL
) -> tuple[DenseTensor, FullRankCertificate]:
    """Maximum full-rank subtensor under the max-Tucker rank.

    Picks the first mode attaining the largest unfolding rank r, keeps a row
    basis of that unfolding (r mode-p slices) and all other modes in full.
    The result has max-Tucker rank r, equal to that of x.
    """
    if x.is_zero():
        return _zero_certificate(x)
    ranks = n_rank(x, tol).ranks
    r = max(ranks)
    p = ranks.index(r) + 1
    basis = row_basis(unfold(x, p), tol)
    sel = IndexSelection(
        tuple(
            basis.indices if l == p else tuple(range(1, n + 1))
            for l, n in enumerate(x.shape, start=1)
        )
    )
    return subtensor(x, sel), FullRankCertificate(p, basis.indices, r, sel)


def verify_span_certificate(
    x: DenseTensor, cert: FullRankCertificate, tol: RankTolerance = DEFAULT_TOL
) -> bool:
    """Check the two row-space claims behind a max-Tucker certificate: the
    kept p-rows are independent and every other p-row lies in their span."""
    if cert.mode is None:
        return x.is_zero()
    M = unfold(x, cert.mode)
    rows = [i - 1 for i in cert.indices]
    if matrix_rank(M[rows], tol) != cert.rank:
        return False
    basis = RowBasis(indices=cert.indices, rank=cert.rank)
    return all(
        in_row_span(M, basis, M[q], tol)
        for q in range(M.shape[0])
        if q + 1 not in cert.indices
    )


def _mode_subsets(n: int) -> list[tuple[int, ...]]:
    subsets = []
    for size in range(1, n + 1):
        subsets.extend(itertools.combinations(range(1, n + 1), size))
    subsets.sort()
    return subsets


def iter_selections(shape):
    """All per-mode nonempty selections, ordered by decreasing largest kept
    dimension and lexicographically within each band (the documented
    deterministic enumeration order)."""
    all_subsets = [_mode_subsets(n) for n in shape]
    for d in range(max(shape), 0, -1):
        capped = [[s for s in subs if len(s) <= d] for subs in all_subsets]
        for combo in itertools.product(*capped):
            if max(len(s) for s in combo) == d:
                yield IndexSelection(combo)


def _check_capacity(x: DenseTensor, cap: int) -> None:
    if x.size > cap:
        raise CapacityError(
            f"tensor has {x.size} entries, enumeration cap is {cap}; "
            "raise the cap only for small dimensions"
        )
    if max(x.shape) > MAX_MODE_DIM:
        raise CapacityError(
            f"mode dimension {max(x.shape)} exceeds enumeration limit {MAX_MODE_DIM} "
            f"(subsets per mode grow as 2^n)"
        )


def extract_brute_force(
    rf: RankFunction, x: DenseTensor, cap: int = DEFAULT_CAP
) -> tuple[DenseTensor, FullRankCertificate]:
    """Maximum full-rank subtensor under an arbitrary proper rank function,
    found by enumerating every subtensor in the deterministic order.

    Two sound prunings keep this usable: candidates whose shape bound cannot
    beat the current best are skipped, and the search stops once the best
    equals rf(x) (no subtensor can exceed it, by axiom P6).
    """
    _check_capacity(x, cap)
    if x.is_zero():
        return _zero_certificate(x)
    ceiling = rf(x)
    best: FullRankCertificate | None = None
    best_tensor: DenseTensor | None = None
    for sel in iter_selections(x.shape):
        kshape = sel.result_shape()
        if best is not None:
            if rf.shape_bound is not None and rf.shape_bound(kshape) <= best.rank:
                continue
            if max(kshape) <= best.rank:
                continue
        y = subtensor(x, sel)
        if y.is_zero():
            r, mode = 0, None
        else:
            r = rf(y)
            mode = next((p for p, k in enumerate(kshape, start=1) if r == k), None)
            if mode is None:
                continue
        if best is None or r > best.rank:
            indices = sel.indices[mode - 1] if mode is not None else ()
            best = FullRankCertificate(mode, indices, r, sel)
            best_tensor = y
            if r == ceiling:
                break
    assert best is not None and best_tensor is not None
    return best_tensor, best


def closure_eval(rf: RankFunction, x: DenseTensor, cap: int = DEFAULT_CAP) -> int:
    """The closure value: max of rf over all full-rank subtensors of x."""
    _, cert = extract_brute_force(rf, x, cap)
    return cert.rank


def closure_rank_function(rf: RankFunction, cap: int = DEFAULT_CAP) -> RankFunction:
    """Wrap the closure of rf as a rank function (domain capped by size).

    The closure of a proper rank function is proper, never exceeds rf, and
    taking it twice changes nothing.
    """
    declared = {"proper"} | (rf.declared_properties & {"strongly_proper"})
    return RankFunction(
        f"closure({rf.name})",
        lambda x: closure_eval(rf, x, cap),
        declared_properties=declared,
        shape_bound=rf.shape_bound,
    )
