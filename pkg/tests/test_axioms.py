"""The axiom battery itself: expected verdicts for both Tucker-derived ranks.

A reduced fixture battery keeps this module quick; the full-size battery runs
in the acceptance suite.
"""
import json

import pytest

from tenrank import axiom_report, max_tucker, min_rank, standard_fixtures, submax_tucker
from tenrank.axioms import AXIOMS, write_report
from tenrank.generators import block_pair
from tenrank.ranks import _submax
from tenrank import n_rank, submax_tucker_rank


@pytest.fixture(scope="module")
def fixtures():
    return standard_fixtures(seed=0, random_count=60, random_pairs=30)


@pytest.fixture(scope="module")
def max_report(fixtures):
    return axiom_report(max_tucker(), fixtures)


@pytest.fixture(scope="module")
def submax_report(fixtures):
    return axiom_report(submax_tucker(), fixtures)


def test_max_tucker_axioms_pass(max_report):
    for prop in AXIOMS:
        assert max_report.result(prop).passed, max_report.result(prop).detail


def test_max_tucker_extras(max_report):
    assert max_report.result("proper").passed
    assert max_report.result("subadditive").passed
    strongly = max_report.result("strongly_proper")
    assert not strongly.passed
    assert strongly.witness_name == "counterexample_3x2x2"


def test_max_tucker_declared_confirmed(max_report):
    assert max_report.confirms(max_tucker().declared_properties)


def test_submax_tucker_axioms_pass(submax_report):
    for prop in AXIOMS:
        assert submax_report.result(prop).passed, submax_report.result(prop).detail


def test_submax_tucker_extras(submax_report):
    assert submax_report.result("proper").passed
    assert submax_report.result("strongly_proper").passed
    sub = submax_report.result("subadditive")
    assert not sub.passed
    assert sub.witness_name == "block_pair"


def test_submax_declared_confirmed(submax_report):
    assert submax_report.confirms(submax_tucker().declared_properties)


def test_block_pair_witness_is_verified():
    # the pair's rank profile is the one the construction promises
    y, z = block_pair(seed=0)
    assert n_rank(y).ranks == (4, 3, 2)
    assert n_rank(z).ranks == (3, 4, 2)
    assert submax_tucker_rank(y + z) > submax_tucker_rank(y) + submax_tucker_rank(z)


def test_battery_falsifies_bad_rank_functions(fixtures):
    # negative controls: the battery must catch evaluators that are not ranks
    from tenrank import RankFunction, max_tucker_rank

    always_one = RankFunction("always_one", lambda x: 0 if x.is_zero() else 1)
    report = axiom_report(always_one, fixtures)
    assert not report.result("P2").passed  # identity tensors need rank n

    inflated = RankFunction("inflated", lambda x: 0 if x.is_zero() else max_tucker_rank(x) + 1)
    report = axiom_report(inflated, fixtures)
    assert not report.result("P1").passed  # rank-one fixtures must give 1
    assert not report.axioms_pass()


def test_min_rank_passes_axioms(fixtures):
    report = axiom_report(min_rank(max_tucker(), submax_tucker()), fixtures)
    for prop in AXIOMS:
        assert report.result(prop).passed, report.result(prop).detail
    assert report.result("proper").passed
    assert report.result("strongly_proper").passed


def test_report_serialization(tmp_path, max_report):
    out = tmp_path / "report.json"
    doc = write_report(max_report, out, witness_dir=tmp_path / "witness")
    loaded = json.loads(out.read_text())
    assert loaded == doc
    rows = {row["property"]: row for row in loaded["results"]}
    assert rows["P1"]["status"] == "pass"
    assert rows["strongly_proper"]["status"] == "fail"
    witness_file = rows["strongly_proper"]["witness_file"]
    from tenrank import read_tensor
    from tenrank.generators import counterexample_3x2x2

    assert read_tensor(witness_file) == counterexample_3x2x2()


def test_fixture_battery_composition(fixtures):
    kinds = {f.kind for f in fixtures.tensors}
    assert {"zero", "rank1", "identity", "matrix", "random", "counterexample"} <= kinds
    assert fixtures.tensors[0].name == "counterexample_3x2x2"
    assert fixtures.pairs[0].name == "block_pair"
    orders = {f.tensor.order for f in fixtures.tensors}
    assert {2, 3, 4} <= orders


def test_shape_bounds_hold_across_battery(fixtures):
    # max rank never exceeds the largest dimension, submax never the
    # second-largest, and submax never exceeds max (strictly less on the
    # 2x3x4 counterexample)
    rmax, rsub = max_tucker(), submax_tucker()
    for f in fixtures.tensors:
        vmax, vsub = rmax(f.tensor), rsub(f.tensor)
        assert vsub <= vmax
        if f.tensor.order >= 2:
            assert vmax <= max(f.tensor.shape)
            assert vsub <= _submax(f.tensor.shape)
    from tenrank.generators import counterexample_2x3x4

    x = counterexample_2x3x4()
    assert rsub(x) < rmax(x)
