"""Preorders and reflexive relations as closure spaces.

A reflexive relation on ``n`` points embeds as the closure space whose closed
sets are its up-closed subsets; for a preorder the closure of ``X`` is the
set of points above some point of ``X``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Iterable, Sequence

from .constructions import PullbackResult, pullback
from .core import ClosureSpace, SpaceMap, mask_of, points_of
from .errors import InputError
from .descent import identity_carrier_conditions


@dataclass(frozen=True)
class ReflexiveRelation:
    """A reflexive relation; ``up[i]`` is the mask of ``j`` with ``i rel j``."""

    n: int
    up: tuple[int, ...]
    point_names: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        up = tuple(self.up)
        if len(up) != self.n:
            raise InputError(f"{len(up)} rows for {self.n} points")
        full = (1 << self.n) - 1
        for i, row in enumerate(up):
            if row & ~full:
                raise InputError(f"row {i} relates points outside 0..{self.n - 1}")
            if not (row >> i) & 1:
                raise InputError(f"relation is not reflexive at point {i}")
        object.__setattr__(self, "up", up)

    @classmethod
    def from_pairs(
        cls, names: Sequence[str], pairs: Iterable[tuple[str, str]], transitive: bool = False
    ) -> ReflexiveRelation:
        """Relation given by (strict) pairs of names plus reflexivity.

        With ``transitive`` the reflexive-transitive closure is taken and a
        :class:`Preorder` is returned.
        """
        names = tuple(names)
        idx = {s: i for i, s in enumerate(names)}
        up = [1 << i for i in range(len(names))]
        for a, b in pairs:
            try:
                up[idx[a]] |= 1 << idx[b]
            except KeyError as exc:
                raise InputError(f"unknown point {exc.args[0]!r}") from None
        if transitive:
            changed = True
            while changed:
                changed = False
                for i in range(len(up)):
                    acc = up[i]
                    for j in points_of(up[i]):
                        acc |= up[j]
                    if acc != up[i]:
                        up[i] = acc
                        changed = True
            return Preorder(len(names), tuple(up), names)
        return cls(len(names), tuple(up), names)

    def related(self, i: int, j: int) -> bool:
        return bool((self.up[i] >> j) & 1)

    def is_transitive(self) -> bool:
        return all(
            self.up[j] & ~self.up[i] == 0 for i in range(self.n) for j in points_of(self.up[i])
        )

    def step(self, x: int) -> int:
        out = 0
        for i in points_of(x):
            out |= self.up[i]
        return out

    def names(self) -> tuple[str, ...]:
        return self.point_names or tuple(str(i) for i in range(self.n))


@dataclass(frozen=True)
class Preorder(ReflexiveRelation):
    """A reflexive and transitive relation."""

    def __post_init__(self) -> None:
        super().__post_init__()
        if not self.is_transitive():
            raise InputError("relation is not transitive")


def up_closure(rel: ReflexiveRelation, x: int) -> int:
    """Points reachable from ``x``; one step suffices for a preorder."""
    if x & ~((1 << rel.n) - 1):
        raise InputError(f"subset {x:#b} outside the carrier")
    while True:
        nxt = rel.step(x)
        if nxt == x:
            return x
        x = nxt


def to_cls(rel: ReflexiveRelation) -> ClosureSpace:
    """The closure space of up-closed subsets."""
    closed = tuple(x for x in range(1 << rel.n) if rel.step(x) == x)
    return ClosureSpace(rel.n, closed, rel.point_names)


@dataclass(frozen=True)
class MonotoneMap:
    dom: ReflexiveRelation
    cod: ReflexiveRelation
    image: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "image", tuple(self.image))
        if len(self.image) != self.dom.n or any(not 0 <= v < self.cod.n for v in self.image):
            raise InputError("map values do not fit the carriers")

    def is_monotone(self) -> bool:
        return all(
            self.cod.related(self.image[i], self.image[j])
            for i in range(self.dom.n)
            for j in points_of(self.dom.up[i])
        )

    def to_space_map(self) -> SpaceMap:
        return SpaceMap(to_cls(self.dom), to_cls(self.cod), self.image)


def preord_descent(p: MonotoneMap) -> bool:
    """Every related pair ``b <= b'`` of the codomain lifts to ``e <= e'``."""
    if not p.is_monotone():
        raise InputError("map is not monotone")
    lifted = set()
    for e in range(p.dom.n):
        for e2 in points_of(p.dom.up[e]):
            lifted.add((p.image[e], p.image[e2]))
    return all((b, b2) in lifted for b in range(p.cod.n) for b2 in points_of(p.cod.up[b]))


def relation_pullback(p: MonotoneMap, alpha: MonotoneMap) -> tuple[ReflexiveRelation, tuple]:
    """Pullback of relations: pairs over the same base point, related componentwise."""
    if p.cod != alpha.cod:
        raise InputError("pullback of maps with different codomains")
    pairs = tuple(
        (e, a) for e in range(p.dom.n) for a in range(alpha.dom.n) if p.image[e] == alpha.image[a]
    )
    up = tuple(
        mask_of(
            j
            for j, (e2, a2) in enumerate(pairs)
            if p.dom.related(e, e2) and alpha.dom.related(a, a2)
        )
        for e, a in pairs
    )
    names = tuple(f"({p.dom.names()[e]},{alpha.dom.names()[a]})" for e, a in pairs)
    return ReflexiveRelation(len(pairs), up, names), pairs


def order_isomorphic_via(r: ReflexiveRelation, s: ReflexiveRelation, phi: Sequence[int]) -> bool:
    """Whether the bijection ``phi`` carries ``r`` exactly onto ``s``."""
    if r.n != s.n or sorted(phi) != list(range(s.n)):
        return False
    return all(
        r.related(i, j) == s.related(phi[i], phi[j]) for i, j in product(range(r.n), repeat=2)
    )


@dataclass(frozen=True)
class PreorderExample:
    """The three-point chain example: an order-level descent morphism ``p``
    together with the finer order ``E'`` obtained by pulling back along the
    chain relation with its long pair removed."""

    B: ClosureSpace
    E: ClosureSpace
    Eprime: ClosureSpace
    p: SpaceMap
    p_prime: SpaceMap
    pb: PullbackResult
    order_B: Preorder
    order_E: Preorder
    order_Eprime: Preorder
    relation_A: ReflexiveRelation
    Z: int
    Z_closure: int
    U: int
    V: int

    @cached_property
    def UV_union_closed(self) -> bool:
        return self.pb.space.is_closed(self.U | self.V)

    @cached_property
    def projection_is_morphism(self) -> bool:
        """First projection ``E x_B E' -> E'`` is continuous."""
        return bool(identity_carrier_conditions(self.p, self.Eprime).results["d"])


def build_preorder_example() -> PreorderExample:
    """Build the example from its order data and check its stated facts.

    Raises ``AssertionError`` if any of them fails: ``E'`` is a preorder
    while ``A`` is not transitive; the relation pullback of ``p`` along
    ``A -> B`` is ``E'``; the closure of ``Z`` is as computed; ``U`` and
    ``V`` are closed in ``E x_B E'`` but their union is not.
    """
    b_names = ("b1", "b2", "b3")
    e_names = ("e1", "e2m", "e2p", "e3")
    order_B = ReflexiveRelation.from_pairs(b_names, [("b1", "b2"), ("b2", "b3")], transitive=True)
    order_E = ReflexiveRelation.from_pairs(
        e_names, [("e1", "e2m"), ("e2p", "e3"), ("e1", "e3")], transitive=True
    )
    order_Ep = ReflexiveRelation.from_pairs(
        e_names, [("e1", "e2m"), ("e2p", "e3")], transitive=True
    )
    relation_A = ReflexiveRelation.from_pairs(b_names, [("b1", "b2"), ("b2", "b3")])
    _check(isinstance(order_Ep, Preorder) and not relation_A.is_transitive(), "E' is not a preorder or A is transitive")

    image = (0, 1, 1, 2)
    mono_p = MonotoneMap(order_E, order_B, image)
    to_A = MonotoneMap(relation_A, order_B, (0, 1, 2))
    _check(mono_p.is_monotone() and to_A.is_monotone(), "p or A -> B is not monotone")
    rel, pairs = relation_pullback(mono_p, to_A)
    phi = [e for e, _ in pairs]
    _check(order_isomorphic_via(rel, order_Ep, phi), "relation pullback is not E'")

    B, E, Ep = to_cls(order_B), to_cls(order_E), to_cls(order_Ep)
    p = SpaceMap(E, B, image)
    p_prime = SpaceMap(Ep, B, image)
    pb = pullback(p, p_prime)
    Z = pb.mask(_ix(E, [("e1", "e1"), ("e2m", "e2m"), ("e2m", "e2p")]))
    z_cl = pb.space.closure(Z)
    expected = pb.mask(_ix(E, [("e1", "e1"), ("e2m", "e2m"), ("e2m", "e2p"), ("e3", "e3")]))
    _check(z_cl == expected, "closure of Z differs")
    _check(Z == pb.proj1.preimage_of(E.mask(["e1", "e2m"])), "Z is not the preimage of {e1 e2m}")
    U = pb.mask(_ix(E, [("e1", "e1"), ("e2m", "e2m")]))
    V = pb.mask(_ix(E, [("e2m", "e2p")]))
    _check(pb.space.is_closed(U) and pb.space.is_closed(V), "U or V is not closed")
    _check(not pb.space.is_closed(U | V), "U ∪ V is closed")
    return PreorderExample(
        B, E, Ep, p, p_prime, pb, order_B, order_E, order_Ep, relation_A, Z, z_cl, U, V
    )


def _ix(space: ClosureSpace, named_pairs) -> list[tuple[int, int]]:
    return [(space.index(a), space.index(b)) for a, b in named_pairs]


def _check(ok: bool, what: str) -> None:
    # explicit raise so the checks survive ``python -O``
    if not ok:
        raise AssertionError(what)
