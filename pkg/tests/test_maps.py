from __future__ import annotations

import pytest

from closure_descent import fixtures as fx
from closure_descent.core import ClosureSpace, SpaceMap, identity
from closure_descent.enumeration import enumerate_maps, enumerate_surjections, spaces_upto
from closure_descent.errors import InputError, NotContinuousError
from closure_descent.maps import (
    classify,
    descent_conditions,
    is_closed_map,
    is_open_map,
    p_infinity,
    regular_epi_conditions,
    surjection_ladder,
    unconditioned_d,
)


def test_p_infinity_hand_iteration(ex):
    B = ex.B
    t = p_infinity(ex.p, B.mask(["b1"]))
    assert t.stages == (B.mask(["b1"]), B.full, B.full)
    assert t.fixpoint == B.full == B.closure(B.mask(["b1"]))
    assert t.stabilized_at == 1


def test_p_infinity_trivial_cases(ex):
    assert p_infinity(fx.p2, 0).fixpoint == 0
    for x in range(1 << ex.E.n):
        t = p_infinity(identity(ex.E), x)
        assert t.fixpoint == ex.E.closure(x) and t.stabilized_at <= 1


def test_p_infinity_errors():
    with pytest.raises(InputError):
        p_infinity(fx.p2, 0b100)
    with pytest.raises(NotContinuousError):
        p_infinity(SpaceMap(fx.B2, fx.B2, (1, 0)), 0)


def test_regular_epi_examples(ex):
    assert all(regular_epi_conditions(ex.p).results.values())
    assert all(regular_epi_conditions(fx.p2).results.values())
    g = regular_epi_conditions(fx.alpha2)
    assert not any(g.results.values())
    assert g.witnesses["a"] is not None


def test_descent_examples(ex):
    for p in (ex.p, fx.p2, identity(ex.E)):
        assert all(descent_conditions(p).results.values())


def test_descent_condition_a_by_pullbacks(ex):
    cospans = [identity(fx.B2), fx.alpha2]
    g = descent_conditions(fx.p2, cospans)
    assert g.results["a"] and g.consistent


def test_literal_condition_d_needs_surjectivity():
    empty = ClosureSpace(0, (0,))
    point = ClosureSpace(1, (0, 1))
    f = SpaceMap(empty, point, ())
    assert unconditioned_d(f)
    g = descent_conditions(f)
    assert g.consistent and g.verdict is False


def test_closed_map_examples():
    assert is_closed_map(fx.p2).verdict
    assert is_closed_map(identity(fx.E2)).verdict
    assert is_closed_map(fx.beta2).verdict is False


def test_open_map_examples():
    assert is_open_map(fx.p2).verdict
    assert is_open_map(fx.alpha2).verdict
    assert is_open_map(fx.beta2).verdict is False


def test_condition_groups_unanimous_on_two_points():
    spaces = spaces_upto(2)
    for E in spaces:
        for B in spaces:
            for f in enumerate_maps(E, B):
                assert classify(f).consistent


def test_ladder_examples(ex):
    lad = surjection_ladder(fx.p2)
    assert lad.as_tuple()[:3] == (True, True, True)
    assert lad.cond_d == bool(is_closed_map(fx.p2).verdict)
    assert surjection_ladder(identity(ex.E)).as_tuple() == (True, True, True, True)


def test_ladder_regular_epi_not_descent():
    witness = None
    for E in spaces_upto(3, True):
        for B in spaces_upto(2, True):
            for p in enumerate_surjections(E, B):
                if regular_epi_conditions(p).verdict and not descent_conditions(p).verdict:
                    witness = p
                    break
    assert witness is not None
    assert surjection_ladder(witness).as_tuple() == (True, False, False, False)


def test_ladder_requires_surjection():
    with pytest.raises(InputError):
        surjection_ladder(fx.alpha2)


def test_classify_reports(ex):
    r = classify(ex.p, effective=True, ladder=True)
    assert r.is_morphism and r.is_regular_epi and r.is_descent
    assert not r.is_closed_map
    assert r.effective == "effective"
    assert r.ladder.chain_holds
    bad = classify(SpaceMap(fx.B2, fx.B2, (1, 0)))
    assert not bad.is_morphism and bad.descent is None
