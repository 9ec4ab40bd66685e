"""Finite closure spaces, their closure operators and maps between them.

A closure space on ``n`` points is stored as a Moore family: a sorted tuple
of bit masks over the point indices ``0..n-1`` that contains the full set and
is closed under pairwise intersection. Point names are for display only.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from . import kernels
from .errors import InputError, NotContinuousError

#: Largest carrier on which subset-quantified checks are run.
MAX_POINTS = 16
#: Hard cap on the carrier size of any space (one machine word of bits).
WORD_BITS = 64


def mask_of(points: Iterable[int]) -> int:
    out = 0
    for i in points:
        if i < 0:
            raise InputError(f"negative point index {i}")
        out |= 1 << i
    return out


def points_of(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def is_subset(x: int, y: int) -> bool:
    return x & ~y == 0


@dataclass(frozen=True)
class ClosureSpace:
    """A finite set with an intersection-closed family of closed subsets.

    The constructor sorts and deduplicates ``closed`` and checks ranges; it
    does not enforce the Moore axioms, see :func:`validate_space`.
    """

    n: int
    closed: tuple[int, ...]
    point_names: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if not 0 <= self.n <= WORD_BITS:
            raise InputError(f"point count {self.n} outside 0..{WORD_BITS}")
        fam = tuple(sorted(set(self.closed)))
        if not fam:
            raise InputError("the family of closed sets is empty")
        if fam[-1] >> self.n:
            raise InputError(f"closed set {fam[-1]:#b} has points outside 0..{self.n - 1}")
        if fam[0] < 0:
            raise InputError("negative mask in closed family")
        object.__setattr__(self, "closed", fam)
        if self.point_names is not None:
            names = tuple(self.point_names)
            if len(names) != self.n:
                raise InputError(f"{len(names)} point names for {self.n} points")
            if len(set(names)) != len(names):
                raise InputError("point names are not unique")
            object.__setattr__(self, "point_names", names)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    @cached_property
    def closed_set(self) -> frozenset[int]:
        return frozenset(self.closed)

    @cached_property
    def _table(self) -> list[int]:
        return kernels.closure_table(self.n, self.closed)

    def closure(self, x: int) -> int:
        if x & ~self.full:
            raise InputError(f"subset {x:#b} has points outside 0..{self.n - 1}")
        if self.n <= MAX_POINTS:
            return self._table[x]
        acc = self.full
        for c in self.closed:
            if x & ~c == 0:
                acc &= c
        return acc

    def is_closed(self, x: int) -> bool:
        if x & ~self.full:
            raise InputError(f"subset {x:#b} has points outside 0..{self.n - 1}")
        return x in self.closed_set

    def is_open(self, x: int) -> bool:
        return self.is_closed(self.full & ~x)

    # naming helpers -----------------------------------------------------

    def name(self, i: int) -> str:
        return self.point_names[i] if self.point_names else str(i)

    def names(self) -> tuple[str, ...]:
        return self.point_names or tuple(str(i) for i in range(self.n))

    def index(self, name: str) -> int:
        try:
            return self.names().index(name)
        except ValueError:
            raise InputError(f"unknown point {name!r}") from None

    def mask(self, names: Iterable[str]) -> int:
        return mask_of(self.index(s) for s in names)

    def format_set(self, x: int) -> str:
        return "{" + " ".join(self.name(i) for i in points_of(x)) + "}"

    def with_names(self, names: Sequence[str] | None) -> ClosureSpace:
        return ClosureSpace(self.n, self.closed, tuple(names) if names else None)

    def same_as(self, other: ClosureSpace) -> bool:
        """Equality that also respects point names."""
        return self == other and self.names() == other.names()


@dataclass(frozen=True)
class SpaceMap:
    """A function between the carriers of two closure spaces.

    Continuity is not assumed; see :meth:`is_continuous`.
    """

    dom: ClosureSpace
    cod: ClosureSpace
    image: tuple[int, ...]

    def __post_init__(self) -> None:
        img = tuple(self.image)
        if len(img) != self.dom.n:
            raise InputError(f"map has {len(img)} values for {self.dom.n} domain points")
        for v in img:
            if not 0 <= v < self.cod.n:
                raise InputError(f"map value {v} outside codomain 0..{self.cod.n - 1}")
        object.__setattr__(self, "image", img)

    @classmethod
    def from_names(cls, dom: ClosureSpace, cod: ClosureSpace, send: Mapping[str, str]) -> SpaceMap:
        image = [None] * dom.n
        for src, dst in send.items():
            image[dom.index(src)] = cod.index(dst)
        missing = [dom.name(i) for i, v in enumerate(image) if v is None]
        if missing:
            raise InputError(f"no image given for {', '.join(missing)}")
        return cls(dom, cod, tuple(image))  # type: ignore[arg-type]

    @cached_property
    def _images(self) -> list[int]:
        return kernels.image_table(self.image, self.dom.n)

    @cached_property
    def _preimages(self) -> list[int]:
        return kernels.preimage_table(self.image, self.cod.n)

    def image_of(self, y: int) -> int:
        if self.dom.n <= MAX_POINTS:
            return self._images[y]
        return mask_of(self.image[i] for i in points_of(y))

    def preimage_of(self, x: int) -> int:
        if self.cod.n <= MAX_POINTS:
            return self._preimages[x]
        return mask_of(i for i, v in enumerate(self.image) if (x >> v) & 1)

    def is_surjective(self) -> bool:
        return len(set(self.image)) == self.cod.n

    def is_injective(self) -> bool:
        return len(set(self.image)) == self.dom.n

    def continuity_witness(self) -> int | None:
        """First closed set of the codomain whose preimage is not closed."""
        for c in self.cod.closed:
            if not self.dom.is_closed(self.preimage_of(c)):
                return c
        return None

    def is_continuous(self) -> bool:
        return self.continuity_witness() is None

    def require_continuous(self, what: str = "map") -> None:
        w = self.continuity_witness()
        if w is not None:
            raise NotContinuousError(what, w)

    def then(self, g: SpaceMap) -> SpaceMap:
        """The composite ``g . self``."""
        if g.dom != self.cod:
            raise InputError("composite of maps with mismatched spaces")
        return SpaceMap(self.dom, g.cod, tuple(g.image[v] for v in self.image))


def identity(space: ClosureSpace) -> SpaceMap:
    return SpaceMap(space, space, tuple(range(space.n)))


@dataclass(frozen=True)
class ConditionGroup:
    """Independently evaluated lettered conditions that should all agree.

    ``witnesses`` holds, per failing condition, the first subset (in
    ascending mask order) on which it fails.
    """

    name: str
    results: dict[str, bool]
    witnesses: dict[str, int | None] = field(default_factory=dict)

    def __getitem__(self, key: str) -> bool:
        return self.results[key]

    @property
    def consistent(self) -> bool:
        return len(set(self.results.values())) <= 1

    @property
    def verdict(self) -> bool | None:
        if not self.consistent:
            return None
        return all(self.results.values())


def _first_failure(checks) -> int | None:
    for subset, ok in checks:
        if not ok:
            return subset
    return None


def _group(name: str, conditions: Mapping[str, Iterable]) -> ConditionGroup:
    results = {}
    witnesses = {}
    for key, checks in conditions.items():
        w = _first_failure(checks)
        results[key] = w is None
        witnesses[key] = w
    return ConditionGroup(name, results, witnesses)


def _require_quantifiable(*spaces: ClosureSpace) -> None:
    for s in spaces:
        if s.n > MAX_POINTS:
            raise InputError(f"subset quantification over {s.n} points exceeds cap {MAX_POINTS}")


def closure(space: ClosureSpace, x: int) -> int:
    """Smallest closed set containing ``x``."""
    return space.closure(x)


def is_closed_set(space: ClosureSpace, x: int) -> bool:
    return space.is_closed(x)


def generate_moore(n: int, subbasis: Iterable[int], point_names: Sequence[str] | None = None) -> ClosureSpace:
    """Smallest Moore family on ``n`` points containing ``subbasis``."""
    full = (1 << n) - 1
    fam = {full}
    for s in subbasis:
        if s < 0 or s & ~full:
            raise InputError(f"subset {s:#b} has points outside 0..{n - 1}")
        fam |= {s & c for c in fam}
    return ClosureSpace(n, tuple(fam), tuple(point_names) if point_names else None)


def validate_space(space: ClosureSpace) -> list[str]:
    """Violations of the Moore axioms; empty for a valid closure space."""
    out = []
    members = space.closed_set
    if space.full not in members:
        out.append(f"ground set {space.format_set(space.full)} missing")
    fam = space.closed
    for i, x in enumerate(fam):
        for y in fam[i + 1:]:
            if x & y not in members:
                out.append(
                    f"missing {space.format_set(x & y)} = "
                    f"{space.format_set(x)} ∩ {space.format_set(y)}"
                )
    return out


def morphism_conditions(f: SpaceMap) -> ConditionGroup:
    """The five equivalent formulations of continuity, each checked on its own.

    (a) preimages of closed sets are closed; (b) ``cl(f^-1 X) <= f^-1(cl X)``;
    (c) ``f(cl(f^-1 X)) <= cl X``; (d) ``f(cl Y) <= cl(f Y)``;
    (e) ``cl Y <= f^-1(cl(f Y))``.
    """
    E, B = f.dom, f.cod
    _require_quantifiable(E, B)
    xs = range(1 << B.n)
    ys = range(1 << E.n)
    pre, img = f.preimage_of, f.image_of
    return _group(
        "morphism",
        {
            "a": ((c, E.is_closed(pre(c))) for c in B.closed),
            "b": ((x, is_subset(E.closure(pre(x)), pre(B.closure(x)))) for x in xs),
            "c": ((x, is_subset(img(E.closure(pre(x))), B.closure(x))) for x in xs),
            "d": ((y, is_subset(img(E.closure(y)), B.closure(img(y)))) for y in ys),
            "e": ((y, is_subset(E.closure(y), pre(B.closure(img(y))))) for y in ys),
        },
    )
