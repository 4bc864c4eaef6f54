"""CP rank bounds: ALS fits and factor certificates."""
import numpy as np
import pytest

from tenrank import CpBounds, cp_bounds, cp_reconstruct
from tenrank.cp import cp_residual
from tenrank.generators import random_rank_one, zero_tensor
from tenrank.tensor import identity_tensor, outer_product


def test_rank_one_bounds():
    x = random_rank_one((3, 4, 2), seed=1)
    b = cp_bounds(x)
    assert b.lower == 1
    assert b.upper == 1


def test_identity_bounds_with_certificate():
    # the diagonal decomposition proves the upper bound the ALS may miss
    n = 3
    x = identity_tensor(3, n)
    eye = np.eye(n)
    certificate = [eye, eye, eye]
    assert cp_residual(x, certificate) < 1e-14
    b = cp_bounds(x, certificate=certificate, max_rank=0)
    assert b.lower == 3
    assert b.upper == 3


def test_two_term_construct_then_recover():
    rng = np.random.default_rng(4)
    x = outer_product(rng.standard_normal((3, 3))) + outer_product(rng.standard_normal((3, 3)))
    # upper bound 2 certifies that some ALS restart reached residual < 1e-8
    b = cp_bounds(x, fit_tol=1e-8)
    assert b.lower <= 2
    assert b.upper == 2


def test_zero_tensor_bounds():
    assert cp_bounds(zero_tensor((2, 2, 2))) == CpBounds(lower=0, upper=0)


def test_unknown_upper_bound():
    # far too small a budget: the search cannot certify anything
    x = identity_tensor(3, 4)
    b = cp_bounds(x, max_rank=0)
    assert b.lower == 4
    assert b.upper is None


def test_bounds_ordering_enforced():
    with pytest.raises(ValueError):
        CpBounds(lower=3, upper=2)


def test_reconstruct_matches_outer_sum():
    rng = np.random.default_rng(8)
    A = rng.standard_normal((2, 3))
    B = rng.standard_normal((4, 3))
    C = rng.standard_normal((3, 3))
    x = cp_reconstruct([A, B, C])
    expected = sum(
        outer_product([A[:, p], B[:, p], C[:, p]]).data for p in range(3)
    )
    assert np.allclose(x.data, expected)


def test_order_one_rejected():
    from tenrank import DenseTensor

    with pytest.raises(ValueError):
        cp_bounds(DenseTensor([1.0, 2.0]))
