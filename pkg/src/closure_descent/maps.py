"""Classifiers for morphisms of closure spaces.

Each classifier evaluates every equivalent formulation of its property on
its own and returns a :class:`~closure_descent.core.ConditionGroup`; the
formulations agreeing is a checkable fact, not an assumption.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from . import kernels
from .core import (
    ConditionGroup,
    SpaceMap,
    _group,
    _require_quantifiable,
    is_subset,
    morphism_conditions,
)
from .errors import InputError


@dataclass(frozen=True)
class PInfinityTrace:
    """Stages ``X, p1(X), p1(p1(X)), ...`` of ``p1(X) = p(cl(p^-1 X))``.

    The list ends with the first repeated stage, so its last two entries are
    equal and ``stabilized_at`` indexes the first of them.
    """

    stages: tuple[int, ...]
    fixpoint: int
    stabilized_at: int


def _step(p: SpaceMap, x: int) -> int:
    return p.image_of(p.dom.closure(p.preimage_of(x)))


def p_infinity(p: SpaceMap, x: int) -> PInfinityTrace:
    """Iterate ``X -> p(cl(p^-1 X))`` to its fixpoint."""
    p.require_continuous()
    if x & ~p.cod.full:
        raise InputError(f"subset {x:#b} outside the codomain")
    return _trace(p, x)


def _trace(p: SpaceMap, x: int) -> PInfinityTrace:
    stages = [x]
    cap = (1 << p.cod.n) + 1
    for _ in range(cap):
        nxt = _step(p, stages[-1])
        stages.append(nxt)
        if nxt == stages[-2]:
            return PInfinityTrace(tuple(stages), nxt, len(stages) - 2)
    raise RuntimeError(f"iteration did not stabilise within {cap} steps")


def regular_epi_conditions(p: SpaceMap) -> ConditionGroup:
    """(a) surjective and the codomain carries exactly the subsets with closed
    preimage; (b) ``cl X <= p_inf(X)``; (c) ``cl X == p_inf(X)``."""
    p.require_continuous()
    E, B = p.dom, p.cod
    _require_quantifiable(E, B)
    xs = range(1 << B.n)
    p_inf = [_trace(p, x).fixpoint for x in xs]

    def quotient_checks():
        if not p.is_surjective():
            yield B.full & ~p.image_of(E.full), False
            return
        for x in xs:
            yield x, E.is_closed(p.preimage_of(x)) == B.is_closed(x)

    return _group(
        "regular_epi",
        {
            "a": quotient_checks(),
            "b": ((x, is_subset(B.closure(x), p_inf[x])) for x in xs),
            "c": ((x, B.closure(x) == p_inf[x]) for x in xs),
        },
    )


def descent_conditions(p: SpaceMap, cospans: Iterable[SpaceMap] | None = None) -> ConditionGroup:
    """(b) ``cl X <= p(cl(p^-1 X))``; (c) equality; (d) ``p`` is surjective
    and ``p(cl(p^-1 X))`` is closed.

    Without the surjectivity clause (d) is strictly weaker: it holds, for
    instance, for the empty space mapped into a one-point space with closed
    sets ``{}`` and the point. :func:`unconditioned_d` evaluates that form.

    If ``cospans`` (continuous maps into the codomain) is given, condition
    (a) is added: the second projection of the pullback of ``p`` along each
    of them is a regular epi, decided by building the pullback.
    """
    p.require_continuous()
    E, B = p.dom, p.cod
    _require_quantifiable(E, B)
    xs = range(1 << B.n)
    lifted = [_step(p, x) for x in xs]
    conditions = {
        "b": ((x, is_subset(B.closure(x), lifted[x])) for x in xs),
        "c": ((x, B.closure(x) == lifted[x]) for x in xs),
        "d": _surjective_then(p, ((x, B.is_closed(lifted[x])) for x in xs)),
    }
    group = _group("descent", conditions)
    if cospans is None:
        return group
    a_fail = pullback_stability_witness(p, cospans)
    results = {"a": a_fail is None, **group.results}
    witnesses = {"a": None, **group.witnesses}
    return ConditionGroup("descent", results, witnesses)


def _surjective_then(p: SpaceMap, checks):
    if not p.is_surjective():
        yield p.cod.full & ~p.image_of(p.dom.full), False
        return
    yield from checks


def unconditioned_d(p: SpaceMap) -> bool:
    """``p(cl(p^-1 X))`` is closed for every ``X``, with no surjectivity clause."""
    p.require_continuous()
    _require_quantifiable(p.dom, p.cod)
    return all(p.cod.is_closed(_step(p, x)) for x in range(1 << p.cod.n))


def pullback_stability_witness(p: SpaceMap, cospans: Iterable[SpaceMap]) -> SpaceMap | None:
    """First cospan along which the pulled-back projection is not a regular epi."""
    E, B = p.dom, p.cod
    for alpha in cospans:
        if alpha.cod != B:
            raise InputError("cospan leg has the wrong codomain")
        A = alpha.dom
        flags = kernels.pullback_flags(E.n, E.closed, A.n, A.closed, p.image, alpha.image)
        if not flags & kernels.PB_REGULAR_EPI:
            return alpha
    return None


def is_closed_map(p: SpaceMap) -> ConditionGroup:
    """(a) images of closed sets are closed; (b) ``p(cl Y) >= cl(p Y)``; (c) equality."""
    p.require_continuous()
    E, B = p.dom, p.cod
    _require_quantifiable(E, B)
    ys = range(1 << E.n)
    img = p.image_of
    return _group(
        "closed",
        {
            "a": ((y, B.is_closed(img(y))) for y in E.closed),
            "b": ((y, is_subset(B.closure(img(y)), img(E.closure(y)))) for y in ys),
            "c": ((y, B.closure(img(y)) == img(E.closure(y))) for y in ys),
        },
    )


def is_open_map(p: SpaceMap) -> ConditionGroup:
    """(a) images of open sets are open; (b) ``cl X <= -p(-cl(p^-1 X))``;
    (c) ``cl(p^-1 X) >= p^-1(cl X)``; (d) equality."""
    p.require_continuous()
    E, B = p.dom, p.cod
    _require_quantifiable(E, B)
    xs = range(1 << B.n)
    pre, img = p.preimage_of, p.image_of
    return _group(
        "open",
        {
            "a": ((k, B.is_open(img(E.full & ~k))) for k in E.closed),
            "b": (
                (x, is_subset(B.closure(x), B.full & ~img(E.full & ~E.closure(pre(x)))))
                for x in xs
            ),
            "c": ((x, is_subset(pre(B.closure(x)), E.closure(pre(x)))) for x in xs),
            "d": ((x, pre(B.closure(x)) == E.closure(pre(x))) for x in xs),
        },
    )


@dataclass(frozen=True)
class LadderReport:
    """Four conditions on a continuous surjection, strongest last.

    ``cond_c`` is ``None`` when effectiveness was undecided at the
    enumeration bound.
    """

    cond_a: bool
    cond_b: bool
    cond_c: bool | None
    cond_d: bool

    def as_tuple(self) -> tuple[bool, bool, bool | None, bool]:
        return self.cond_a, self.cond_b, self.cond_c, self.cond_d

    @property
    def chain_holds(self) -> bool:
        """d => c => b => a, with an undecided c only checked against d => b."""
        a, b, c, d = self.as_tuple()
        if c is None:
            return (not d or b) and (not b or a)
        return (not d or c) and (not c or b) and (not b or a)


def surjection_ladder(p: SpaceMap, **effective_kw) -> LadderReport:
    """(a) saturated closed sets have closed images; (b) closures of saturated
    sets have closed images; (c) effective descent; (d) closed map."""
    from .descent import Outcome, decide_effective_descent

    p.require_continuous()
    if not p.is_surjective():
        raise InputError("the ladder is defined for surjective maps only")
    E, B = p.dom, p.cod
    _require_quantifiable(E, B)
    xs = range(1 << B.n)
    pre, img = p.preimage_of, p.image_of
    cond_a = all(B.is_closed(x) for x in xs if E.is_closed(pre(x)))
    cond_b = all(B.is_closed(img(E.closure(pre(x)))) for x in xs)
    cond_d = all(B.is_closed(img(y)) for y in E.closed)
    outcome = decide_effective_descent(p, **effective_kw).outcome
    cond_c = None if outcome is Outcome.UNDECIDED else outcome is Outcome.EFFECTIVE
    return LadderReport(cond_a, cond_b, cond_c, cond_d)


@dataclass(frozen=True)
class ClassifierReport:
    """Every classifier verdict for one map, with per-condition breakdowns.

    Groups other than ``morphism`` are ``None`` for a non-continuous map.
    """

    is_surjective: bool
    morphism: ConditionGroup
    regular_epi: ConditionGroup | None = None
    descent: ConditionGroup | None = None
    closed: ConditionGroup | None = None
    open: ConditionGroup | None = None
    effective: str | None = None
    ladder: LadderReport | None = None

    @property
    def is_morphism(self) -> bool:
        return bool(self.morphism.verdict)

    @property
    def is_regular_epi(self) -> bool:
        return bool(self.regular_epi and self.regular_epi.verdict)

    @property
    def is_descent(self) -> bool:
        return bool(self.descent and self.descent.verdict)

    @property
    def is_closed_map(self) -> bool:
        return bool(self.closed and self.closed.verdict)

    @property
    def is_open_map(self) -> bool:
        return bool(self.open and self.open.verdict)

    def groups(self) -> list[ConditionGroup]:
        gs = [self.morphism, self.regular_epi, self.descent, self.closed, self.open]
        return [g for g in gs if g is not None]

    @property
    def consistent(self) -> bool:
        return all(g.consistent for g in self.groups())


def classify(p: SpaceMap, effective: bool = False, ladder: bool = False) -> ClassifierReport:
    """Run every classifier on ``p``.

    Effectiveness and the ladder are opt-in since they may enumerate descent
    data.
    """
    from .descent import decide_effective_descent

    morphism = morphism_conditions(p)
    surjective = p.is_surjective()
    if not morphism.verdict:
        return ClassifierReport(surjective, morphism)
    eff = decide_effective_descent(p).outcome.value if effective else None
    lad = surjection_ladder(p) if ladder and surjective else None
    return ClassifierReport(
        surjective,
        morphism,
        regular_epi_conditions(p),
        descent_conditions(p),
        is_closed_map(p),
        is_open_map(p),
        eff,
        lad,
    )
