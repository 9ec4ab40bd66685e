from __future__ import annotations

from itertools import product

import pytest

from closure_descent.core import validate_space
from closure_descent.enumeration import preorders
from closure_descent.errors import InputError
from closure_descent.maps import descent_conditions
from closure_descent.preord import (
    MonotoneMap,
    Preorder,
    ReflexiveRelation,
    build_preorder_example,
    preord_descent,
    to_cls,
    up_closure,
)


def test_up_closure_examples(ex):
    E, Ep = ex.order_E, ex.order_Eprime
    assert up_closure(E, 0b0001) == ex.E.mask(["e1", "e2m", "e3"])
    assert up_closure(E, 0) == 0
    assert up_closure(Ep, ex.E.mask(["e1", "e2m", "e2p"])) == ex.E.full


def test_up_closure_iterates_for_non_transitive_relations(ex):
    A = ex.relation_A
    assert not A.is_transitive()
    assert A.step(0b001) == 0b011
    assert up_closure(A, 0b001) == 0b111


def test_to_cls_examples(ex):
    assert to_cls(ex.order_B).same_as(ex.B)
    discrete = ReflexiveRelation.from_pairs("abc", [], transitive=True)
    assert to_cls(discrete).closed == tuple(range(8))
    A = to_cls(ex.relation_A)
    assert validate_space(A) == []
    assert all(ex.relation_A.step(c) == c for c in A.closed)
    # up-sets of the relation with the long pair removed are those of the chain
    assert A.closed == ex.B.closed


def test_alexandrov_property():
    for n in range(4):
        for order in preorders(n):
            fam = to_cls(order).closed_set
            assert all(x | y in fam for x in fam for y in fam)


def test_preord_descent_examples(ex):
    p = MonotoneMap(ex.order_E, ex.order_B, ex.p.image)
    assert preord_descent(p)
    ident = MonotoneMap(ex.order_E, ex.order_E, range(4))
    assert preord_descent(ident)
    discrete = ReflexiveRelation.from_pairs("xy", [], transitive=True)
    chain = ReflexiveRelation.from_pairs(("b1", "b2"), [("b1", "b2")], transitive=True)
    assert not preord_descent(MonotoneMap(discrete, chain, (0, 1)))


def test_preord_descent_matches_closure_descent_on_small_orders():
    for n_dom in range(1, 4):
        for n_cod in range(1, n_dom + 1):
            for dom in preorders(n_dom):
                for cod in preorders(n_cod):
                    for image in product(range(n_cod), repeat=n_dom):
                        f = MonotoneMap(dom, cod, image)
                        if not f.is_monotone() or len(set(image)) != n_cod:
                            continue
                        assert preord_descent(f) == bool(
                            descent_conditions(f.to_space_map()).verdict
                        )


def test_preord_descent_rejects_non_monotone():
    chain = ReflexiveRelation.from_pairs("ab", [("a", "b")], transitive=True)
    with pytest.raises(InputError):
        preord_descent(MonotoneMap(chain, chain, (1, 0)))


def test_relation_construction_errors():
    with pytest.raises(InputError):
        ReflexiveRelation(2, (0b01, 0b01))
    with pytest.raises(InputError):
        Preorder(3, (0b011, 0b110, 0b100))
    with pytest.raises(InputError):
        ReflexiveRelation.from_pairs("ab", [("a", "c")])


def test_example_bundle(ex):
    assert ex.Z_closure == ex.pb.mask(
        [(ex.E.index(a), ex.E.index(b)) for a, b in
         [("e1", "e1"), ("e2m", "e2m"), ("e2m", "e2p"), ("e3", "e3")]]
    )
    assert ex.UV_union_closed is False
    assert ex.projection_is_morphism is False
    assert isinstance(ex.order_Eprime, Preorder)
    assert build_preorder_example().Z == ex.Z
