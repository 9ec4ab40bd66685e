from __future__ import annotations

import pytest

from closure_descent import fixtures as fx
from closure_descent.constructions import (
    coequalizer,
    find_iso,
    iter_isos,
    pullback,
    pullback_closure,
    subspace,
)
from closure_descent.core import ClosureSpace, SpaceMap, identity
from closure_descent.enumeration import enumerate_maps, spaces_upto
from closure_descent.errors import InputError


def _pairs(ex, names):
    E = ex.E
    return ex.pb.mask([(E.index(a), E.index(b)) for a, b in names])


def test_preorder_pullback_carrier(ex):
    named = [(ex.E.name(e), ex.E.name(a)) for e, a in ex.pb.pairs]
    assert named == [
        ("e1", "e1"), ("e2m", "e2m"), ("e2m", "e2p"), ("e2p", "e2m"), ("e2p", "e2p"), ("e3", "e3"),
    ]


def test_pullback_along_identity_is_the_domain(ex):
    pb = pullback(ex.p, identity(ex.B))
    assert [e for e, _ in pb.pairs] == list(range(ex.E.n))
    assert find_iso(pb.space, ex.E) is not None
    assert pb.proj1.image == tuple(range(ex.E.n))


def test_pullback_of_open_example():
    pb = pullback(fx.p2, fx.alpha2)
    assert pb.space == fx.PB2
    assert pb.proj1.image == fx.beta2.image
    assert pb.proj2.image == fx.pi2.image


def test_pullback_errors(ex):
    with pytest.raises(InputError):
        pullback(ex.p, fx.alpha2)
    bad = SpaceMap(fx.B2, fx.B2, (1, 0))
    with pytest.raises(InputError):
        pullback(bad, identity(fx.B2))


def test_pullback_closure_examples(ex):
    Z = _pairs(ex, [("e1", "e1"), ("e2m", "e2m"), ("e2m", "e2p")])
    Zbar = _pairs(ex, [("e1", "e1"), ("e2m", "e2m"), ("e2m", "e2p"), ("e3", "e3")])
    assert pullback_closure(ex.pb, Z) == Zbar
    U = _pairs(ex, [("e1", "e1"), ("e2m", "e2m")])
    V = _pairs(ex, [("e2m", "e2p")])
    assert pullback_closure(ex.pb, U) == U
    assert pullback_closure(ex.pb, V) == V


def test_pullback_closure_formula_matches_closure_exhaustively():
    spaces = spaces_upto(2)
    for E in spaces:
        for A in spaces:
            for B in spaces:
                for p in enumerate_maps(E, B):
                    for alpha in enumerate_maps(A, B):
                        pb = pullback(p, alpha)
                        for z in range(1 << pb.space.n):
                            assert pullback_closure(pb, z) == pb.space.closure(z)


def test_subspace_examples(ex):
    sub, incl = subspace(fx.B2, fx.B2.mask(["p1"]))
    assert sub == fx.A2 and incl.image == fx.alpha2.image
    whole, incl = subspace(ex.B, ex.B.full)
    assert whole.same_as(ex.B) and incl == identity(ex.B)
    part, _ = subspace(ex.E, ex.E.mask(["e1", "e2m"]))
    assert part.names() == ("e1", "e2m")
    assert part.closed == (0b00, 0b10, 0b11)
    with pytest.raises(InputError):
        subspace(fx.B2, 0b100)


def test_coequalizer_of_identities(ex):
    r = coequalizer(identity(ex.E), identity(ex.E))
    assert r.space == ex.E and r.q.image == tuple(range(ex.E.n))


def test_coequalizer_of_kernel_pair_reproduces_codomain(ex):
    for p in (fx.p2, ex.p):
        kp = pullback(p, p)
        r = coequalizer(kp.proj1, kp.proj2)
        phi = find_iso(r.space, p.cod)
        assert phi is not None
        assert len(r.space.closed) == len(p.cod.closed)
        assert tuple(phi[k] for k in r.q.image) == p.image


def test_coequalizer_errors(ex):
    with pytest.raises(InputError):
        coequalizer(ex.p, fx.p2)


def test_find_iso_examples(ex):
    phi = find_iso(fx.PB2, fx.B2)
    assert phi == (0, 1)
    assert find_iso(ex.E, ex.E) == tuple(range(ex.E.n))
    assert find_iso(ex.E, ex.Eprime) is None


def test_iter_isos_counts_automorphisms():
    discrete = ClosureSpace(2, (0b00, 0b01, 0b10, 0b11))
    assert list(iter_isos(discrete, discrete)) == [(0, 1), (1, 0)]
    sierpinski = fx.B2
    assert list(iter_isos(sierpinski, sierpinski)) == [(0, 1)]
