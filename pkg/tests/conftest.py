from __future__ import annotations

import pytest

from closure_descent import fixtures as fx
from closure_descent.core import ClosureSpace, SpaceMap


def space(names: str, closed: list[str]) -> ClosureSpace:
    """Space from point names and closed sets given as space-separated names."""
    pts = tuple(names.split())
    probe = ClosureSpace(len(pts), ((1 << len(pts)) - 1,), pts)
    return ClosureSpace(len(pts), tuple(probe.mask(c.split()) for c in closed), pts)


def smap(dom: ClosureSpace, cod: ClosureSpace, send: dict[str, str]) -> SpaceMap:
    return SpaceMap.from_names(dom, cod, send)


@pytest.fixture(scope="session")
def ex():
    """The preorder example bundle."""
    return fx.preorder_example()


_RESULTS = pytest.StashKey[dict]()


@pytest.fixture(scope="session")
def acceptance(request):
    """Criterion number -> (label, passed, seconds), printed at the end of the run."""
    return request.config.stash.setdefault(_RESULTS, {})


def pytest_terminal_summary(terminalreporter, config):
    results = config.stash.get(_RESULTS, {})
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(results):
        label, ok, seconds = results[k]
        terminalreporter.write_line(
            f"criterion {k}: {'PASS' if ok else 'FAIL'}  ({seconds:.1f}s)  {label}"
        )
