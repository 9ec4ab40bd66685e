"""The compiled kernels agree with the pure-Python ones, and both satisfy the
closure-operator laws."""

from __future__ import annotations

import os
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from closure_descent import enumeration as en
from closure_descent import fixtures as fx
from closure_descent import kernels
from closure_descent.core import generate_moore
from closure_descent.descent import data_shapes
from closure_descent.kernels import _pykernels

try:
    from closure_descent.kernels import _ckernels
except ImportError:  # extension not built
    _ckernels = None

needs_c = pytest.mark.skipif(_ckernels is None, reason="compiled kernels not built")


@st.composite
def moore_spaces(draw, max_points=7):
    n = draw(st.integers(0, max_points))
    full = (1 << n) - 1
    subbasis = draw(st.lists(st.integers(0, full), max_size=6))
    return generate_moore(n, subbasis)


@given(moore_spaces())
def test_closure_laws(space):
    full = space.full
    for x in range(full + 1):
        cx = space.closure(x)
        assert x & ~cx == 0
        assert space.is_closed(cx)
        assert space.closure(cx) == cx
        # smallest closed superset
        assert all(cx & ~c == 0 for c in space.closed if x & ~c == 0)


@given(moore_spaces(), st.data())
def test_closure_is_monotone(space, data):
    y = data.draw(st.integers(0, space.full))
    x = data.draw(st.integers(0, space.full)) & y
    assert space.closure(x) & ~space.closure(y) == 0


@given(moore_spaces())
def test_generated_family_is_moore(space):
    fam = space.closed_set
    assert space.full in fam
    assert all(x & y in fam for x in fam for y in fam)


def test_backend_is_reported():
    assert kernels.BACKEND in ("cython", "python")


def test_python_fallback_can_be_forced():
    env = dict(os.environ, CLOSURE_DESCENT_KERNELS="python")
    r = subprocess.run(
        [sys.executable, "-c", "from closure_descent import kernels; print(kernels.BACKEND)"],
        capture_output=True, text=True, env=env, check=True,
    )
    assert r.stdout.strip() == "python"


@needs_c
def test_moore_families_agree():
    for n in range(5):
        assert _ckernels.moore_families(n) == _pykernels.moore_families(n)


@needs_c
def test_closure_and_canonical_agree_on_four_points():
    for fam in _pykernels.moore_families(4):
        assert list(_ckernels.closure_table(4, fam)) == list(_pykernels.closure_table(4, fam))
        assert tuple(_ckernels.canonical_family(4, fam)) == tuple(_pykernels.canonical_family(4, fam))


@needs_c
@settings(max_examples=50)
@given(moore_spaces(max_points=9))
def test_closure_tables_agree_on_larger_spaces(space):
    assert list(_ckernels.closure_table(space.n, space.closed)) == list(
        _pykernels.closure_table(space.n, space.closed)
    )


@needs_c
def test_image_tables_agree():
    for image, m in [((0, 1, 1, 0), 2), ((2, 0, 1), 3), ((), 1), ((0, 0, 0), 1)]:
        assert list(_ckernels.image_table(image, len(image))) == list(_pykernels.image_table(image, len(image)))
        assert list(_ckernels.preimage_table(image, m)) == list(_pykernels.preimage_table(image, m))


@needs_c
def test_pullback_flags_agree():
    spaces = en.spaces_upto(2)
    cospans = {
        B: [(A.n, A.closed, a.image) for A in en.spaces_upto(2, True) for a in en.enumerate_maps(A, B)]
        for B in spaces
    }
    for E in spaces:
        for B in spaces:
            for p in en.enumerate_maps(E, B):
                for n_a, closed_a, a_img in cospans[B]:
                    args = (E.n, E.closed, n_a, closed_a, p.image, a_img)
                    assert _ckernels.pullback_flags(*args) == _pykernels.pullback_flags(*args)
                args = (E.n, E.closed, p.image, tuple(cospans[B]))
                assert _ckernels.pullback_flags_all(*args) == _pykernels.pullback_flags_all(*args)


@needs_c
def test_descent_search_agrees():
    maps = [fx.p2, fx.preorder_example().p] + [
        p
        for E in en.spaces_upto(3, True)
        for B in en.spaces_upto(2, True)
        for p in en.enumerate_surjections(E, B)
    ]
    for p in maps:
        for shape in data_shapes(p, p.dom.n):
            args = (p.dom.n, p.dom.closed, p.image, tuple(shape), True)
            c = _ckernels.descent_data_search(*args)
            py = _pykernels.descent_data_search(*args)
            assert c[:2] == py[:2] and c[3] == py[3]
            assert (c[2] is None) == (py[2] is None)
            assert sorted(map(tuple, c[4])) == sorted(map(tuple, py[4]))
