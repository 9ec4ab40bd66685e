"""Named example spaces and maps used throughout the tests and the CLI.

``preorder_example`` is the chain ``b1 < b2 < b3`` covered by the
four-point order ``E``; the ``open_*`` objects are the absolute-value map
from ``{-2, -1, 1, 2}`` onto ``{1, 2}`` with points renamed ``m2 m1 p1 p2``.
"""

from __future__ import annotations

from functools import lru_cache

from .core import ClosureSpace, SpaceMap
from .preord import PreorderExample, build_preorder_example


def _space(names: str, closed: list[str]) -> ClosureSpace:
    pts = tuple(names.split())
    probe = ClosureSpace(len(pts), ((1 << len(pts)) - 1,), pts)
    return ClosureSpace(len(pts), tuple(probe.mask(c.split()) for c in closed), pts)


@lru_cache(maxsize=None)
def preorder_example() -> PreorderExample:
    return build_preorder_example()


#: ``E2``: five closed sets on ``m2 m1 p1 p2``.
E2 = _space("m2 m1 p1 p2", ["", "m2 p2", "p1 p2", "p2", "m2 m1 p1 p2"])
#: ``B2``: the two-point chain ``p1 < p2``.
B2 = _space("p1 p2", ["", "p2", "p1 p2"])
A2 = _space("p1", ["", "p1"])
PB2 = _space("m1 p1", ["", "p1", "m1 p1"])
#: Absolute value ``E2 -> B2``.
p2 = SpaceMap.from_names(E2, B2, {"m2": "p2", "m1": "p1", "p1": "p1", "p2": "p2"})
#: Inclusion ``A2 -> B2``.
alpha2 = SpaceMap.from_names(A2, B2, {"p1": "p1"})
#: Inclusion ``PB2 -> E2``.
beta2 = SpaceMap.from_names(PB2, E2, {"m1": "m1", "p1": "p1"})
#: ``PB2 -> A2``.
pi2 = SpaceMap.from_names(PB2, A2, {"m1": "p1", "p1": "p1"})
