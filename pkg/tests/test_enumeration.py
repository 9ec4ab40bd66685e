from __future__ import annotations

import pytest

from closure_descent import enumeration as en
from closure_descent import fixtures as fx
from closure_descent.core import ClosureSpace
from closure_descent.document import parse
from closure_descent.errors import CapExceeded, InputError
from closure_descent.maps import surjection_ladder


def test_moore_counts_small():
    assert [en.count_moore(n) for n in range(4)] == [1, 2, 7, 61]
    assert [en.count_moore(n, up_to_iso=True) for n in range(5)] == [1, 2, 5, 19, 184]


def test_moore_counts_up_to_iso_on_five_points():
    assert en.count_moore(5, up_to_iso=True) == 14664


def test_enumerate_moore_one_point():
    assert [s.closed for s in en.enumerate_moore(1)] == [(0, 1), (1,)]


def test_enumerate_moore_contains_fixture():
    assert any(s.closed == fx.E2.closed for s in en.enumerate_moore(4))


def test_enumeration_is_deterministic():
    assert list(en.enumerate_moore(3)) == list(en.enumerate_moore(3))


def test_caps():
    with pytest.raises(CapExceeded):
        list(en.enumerate_moore(5))
    with pytest.raises(CapExceeded):
        list(en.enumerate_moore(6, up_to_iso=True))
    with pytest.raises(CapExceeded):
        en.moore_count_bruteforce(5)
    with pytest.raises(CapExceeded):
        en.verify_equivalences(4)
    with pytest.raises(CapExceeded):
        en.mine_ladder(5)


def test_surjection_enumeration(ex):
    discrete = ClosureSpace(2, (0, 1, 2, 3))
    assert len(list(en.enumerate_surjections(discrete, discrete))) == 2
    assert ex.p in list(en.enumerate_surjections(ex.E, ex.B))
    point = ClosureSpace(1, (0, 1))
    assert list(en.enumerate_surjections(point, discrete)) == []


@pytest.mark.parametrize(
    "suite",
    [
        lambda: en.verify_equivalences(2),
        lambda: en.verify_descent_is_effective(2, object_level=True),
        lambda: en.verify_closed_open_effective(2),
        lambda: en.verify_identity_carrier(2),
        lambda: en.verify_preorder_descent(2),
    ],
    ids=["equivalences", "descent-effective", "closed-open", "identity-carrier", "preorder"],
)
def test_suites_on_two_points(suite):
    report = suite()
    assert report.ok, report.to_text()
    assert all(v >= 0 for v in report.counts.values())


def test_suite_workers_agree():
    one = en.verify_equivalences(2, workers=1)
    two = en.verify_equivalences(2, workers=2)
    assert one.to_text() == two.to_text()


def test_miner_on_three_points():
    report = en.mine_ladder(3)
    assert report.chain_failures == 0 and report.undecided == 0
    assert report.open_b_to_c
    assert report.witnesses["a=>b"]
    text = report.to_text()
    assert "at most 3 points" in text and "remains open" in text


def test_miner_witnesses_round_trip():
    report = en.mine_ladder(3)
    for key, witnesses in report.witnesses.items():
        name = "witness_" + key.replace("=>", "_")
        for w in witnesses:
            f = parse(w).map(name)
            a, b, c, d = surjection_ladder(f).as_tuple()
            assert {"a=>b": a and not b, "b=>c": b and not c, "c=>d": c and not d}[key]


def test_miner_worker_counts_and_checkpoint(tmp_path):
    base = en.mine_ladder(3).to_text(max_listed=5)
    assert en.mine_ladder(3, workers=2).to_text(max_listed=5) == base
    ck = tmp_path / "mine.ck"
    assert en.mine_ladder(3, checkpoint=ck).to_text(max_listed=5) == base
    assert ck.read_text().strip()
    # resuming from a complete checkpoint redoes nothing and reports the same
    assert en.mine_ladder(3, checkpoint=ck).to_text(max_listed=5) == base
    # resuming from a truncated checkpoint finishes the remaining blocks
    lines = ck.read_text().splitlines(keepends=True)
    ck.write_text("".join(lines[: len(lines) // 2]))
    assert en.mine_ladder(3, checkpoint=ck).to_text(max_listed=5) == base


def test_miner_checkpoint_from_another_bound_is_rejected(tmp_path):
    ck = tmp_path / "mine.ck"
    en.mine_ladder(2, checkpoint=ck)
    with pytest.raises(InputError):
        en.mine_ladder(3, checkpoint=ck)


def test_miner_resumed_witnesses_are_identical(tmp_path):
    ck = tmp_path / "mine.ck"
    fresh = en.mine_ladder(3, checkpoint=ck)
    resumed = en.mine_ladder(3, checkpoint=ck)
    assert resumed.witnesses == fresh.witnesses
