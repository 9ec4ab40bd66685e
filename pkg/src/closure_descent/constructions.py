"""Pullbacks, subspaces, coequalizers and isomorphisms of closure spaces."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from scipy.cluster.hierarchy import DisjointSet

from .core import MAX_POINTS, ClosureSpace, SpaceMap, mask_of, points_of
from .errors import InputError


@dataclass(frozen=True)
class PullbackResult:
    """``E x_B A`` with its two projections.

    ``pairs[i]`` is the ``(e, a)`` pair behind point ``i``; pairs are in
    lexicographic order.
    """

    space: ClosureSpace
    proj1: SpaceMap
    proj2: SpaceMap
    pairs: tuple[tuple[int, int], ...]

    def index(self, e: int, a: int) -> int:
        return self.pairs.index((e, a))

    def mask(self, pairs) -> int:
        return mask_of(self.index(e, a) for e, a in pairs)


@dataclass(frozen=True)
class CoequalizerResult:
    space: ClosureSpace
    q: SpaceMap
    class_table: tuple[int, ...]


def pullback(p: SpaceMap, alpha: SpaceMap, check: bool = True) -> PullbackResult:
    """Pullback of ``p: E -> B`` and ``alpha: A -> B``.

    The closed sets are ``pi1^-1(E') & pi2^-1(A')`` for closed ``E'``, ``A'``.
    With ``check=False`` the maps need not be continuous (the same initial
    family is built); internal callers use this on data under validation.
    """
    if p.cod != alpha.cod:
        raise InputError("pullback of maps with different codomains")
    if check:
        p.require_continuous("first map of the cospan")
        alpha.require_continuous("second map of the cospan")
    E, A = p.dom, alpha.dom
    pairs = tuple(
        (e, a) for e in range(E.n) for a in range(A.n) if p.image[e] == alpha.image[a]
    )
    d = len(pairs)
    rows = [0] * E.n
    cols = [0] * A.n
    for i, (e, a) in enumerate(pairs):
        rows[e] |= 1 << i
        cols[a] |= 1 << i

    def spread(mask: int, parts: list[int]) -> int:
        out = 0
        for j in points_of(mask):
            out |= parts[j]
        return out

    pre1 = [spread(c, rows) for c in E.closed]
    pre2 = [spread(c, cols) for c in A.closed]
    family = {x & y for x in pre1 for y in pre2}
    if __debug__:
        for x in family:
            for y in family:
                assert x & y in family, "pullback family not intersection-closed"
    names = tuple(f"({E.name(e)},{A.name(a)})" for e, a in pairs)
    space = ClosureSpace(d, tuple(family), names)
    proj1 = SpaceMap(space, E, tuple(e for e, _ in pairs))
    proj2 = SpaceMap(space, A, tuple(a for _, a in pairs))
    return PullbackResult(space, proj1, proj2, pairs)


def pullback_closure(pb: PullbackResult, z: int) -> int:
    """Closure in a pullback from the closures of the two projections."""
    if z & ~pb.space.full:
        raise InputError(f"subset {z:#b} outside the pullback carrier")
    p1, p2 = pb.proj1, pb.proj2
    return p1.preimage_of(p1.cod.closure(p1.image_of(z))) & p2.preimage_of(
        p2.cod.closure(p2.image_of(z))
    )


def subspace(space: ClosureSpace, s: int) -> tuple[ClosureSpace, SpaceMap]:
    """``S`` with the closed sets ``S & B'``, and its inclusion into ``space``."""
    if s & ~space.full:
        raise InputError(f"subset {s:#b} outside the carrier")
    idx = points_of(s)

    def restrict(c: int) -> int:
        return mask_of(k for k, i in enumerate(idx) if (c >> i) & 1)

    names = tuple(space.name(i) for i in idx)
    sub = ClosureSpace(len(idx), tuple({restrict(c & s) for c in space.closed}), names)
    return sub, SpaceMap(sub, space, tuple(idx))


def coequalizer(f: SpaceMap, g: SpaceMap, check: bool = True) -> CoequalizerResult:
    """Quotient of the common codomain by the relation generated by ``f(x) ~ g(x)``.

    The quotient carries every subset whose preimage is closed. Classes are
    numbered by their smallest member.
    """
    if f.dom != g.dom or f.cod != g.cod:
        raise InputError("coequalizer of maps with different domain or codomain")
    if check:
        f.require_continuous("first map of the pair")
        g.require_continuous("second map of the pair")
    E = f.cod
    if E.n > MAX_POINTS:
        raise InputError(f"quotient of {E.n} points exceeds cap {MAX_POINTS}")
    ds = DisjointSet(range(E.n))
    for x, y in zip(f.image, g.image):
        ds.merge(x, y)
    classes = sorted((sorted(c) for c in ds.subsets()), key=lambda c: c[0])
    table = [0] * E.n
    for k, members in enumerate(classes):
        for i in members:
            table[i] = k
    names = tuple("~".join(E.name(i) for i in members) for members in classes)
    m = len(classes)
    fibres = [mask_of(c) for c in classes]
    closed = []
    for t in range(1 << m):
        pre = 0
        for k in points_of(t):
            pre |= fibres[k]
        if E.is_closed(pre):
            closed.append(t)
    quotient = ClosureSpace(m, tuple(closed), names)
    return CoequalizerResult(quotient, SpaceMap(E, quotient, tuple(table)), tuple(table))


def _degrees(space: ClosureSpace) -> list[int]:
    return [sum((c >> i) & 1 for c in space.closed) for i in range(space.n)]


def iter_isos(
    a: ClosureSpace, b: ClosureSpace, allowed: Sequence[set[int]] | None = None
) -> Iterator[tuple[int, ...]]:
    """Every bijection carrying the closed sets of ``a`` onto those of ``b``.

    Bijections come in lexicographic order of their value tuples. ``allowed``
    optionally restricts the targets of each point.
    """
    if a.n != b.n or len(a.closed) != len(b.closed):
        return
    if sorted(len(points_of(c)) for c in a.closed) != sorted(len(points_of(c)) for c in b.closed):
        return
    deg_a, deg_b = _degrees(a), _degrees(b)
    if sorted(deg_a) != sorted(deg_b):
        return
    n = a.n
    phi = [0] * n
    used = [False] * n

    def consistent(k: int) -> bool:
        # families restricted to the first k points must correspond
        dom = (1 << k) - 1
        cod = mask_of(phi[:k])
        left = set()
        for c in a.closed:
            left.add(mask_of(phi[i] for i in points_of(c & dom)))
        right = {c & cod for c in b.closed}
        return left == right

    def rec(k: int) -> Iterator[tuple[int, ...]]:
        if k == n:
            yield tuple(phi)
            return
        for j in range(n):
            if used[j] or deg_b[j] != deg_a[k]:
                continue
            if allowed is not None and j not in allowed[k]:
                continue
            phi[k] = j
            used[j] = True
            if consistent(k + 1):
                yield from rec(k + 1)
            used[j] = False

    yield from rec(0)


def find_iso(a: ClosureSpace, b: ClosureSpace) -> tuple[int, ...] | None:
    """First isomorphism ``a -> b`` in lexicographic order, or ``None``."""
    return next(iter_isos(a, b), None)
