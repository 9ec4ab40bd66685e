"""Descent data over a morphism of finite closure spaces.

A descent datum over ``p: E -> B`` is a space ``C`` with a map
``gamma: C -> E`` and an action ``xi: E x_B C -> C`` (the pullback of ``p``
along ``p . gamma``) obeying the projection, unit and associativity laws.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations_with_replacement
from typing import Callable, Iterable

from . import kernels
from .constructions import PullbackResult, coequalizer, iter_isos, pullback
from .core import (
    ClosureSpace,
    SpaceMap,
    _require_quantifiable,
    is_subset,
    points_of,
)
from .errors import (
    EscalationContradiction,
    InputError,
    PreconditionError,
    UndecidedAtBound,
)
from .maps import descent_conditions, is_closed_map, is_open_map, regular_epi_conditions

#: Default cap on the domain size for which effectiveness is decided by enumeration.
DEFAULT_MAX_DOMAIN = 4


@dataclass(frozen=True)
class DescentData:
    p: SpaceMap
    C: ClosureSpace
    gamma: SpaceMap
    xi: SpaceMap

    @cached_property
    def action_domain(self) -> PullbackResult:
        """``E x_B C`` as pairs ``(e, c)`` with ``p(e) == p(gamma(c))``."""
        return action_domain(self.p, self.gamma)

    def act(self, e: int, c: int) -> int | None:
        """``xi(e, c)``, or ``None`` if ``(e, c)`` is not in the action domain."""
        try:
            i = self.action_domain.index(e, c)
        except ValueError:
            return None
        return self.xi.image[i]

    @classmethod
    def from_action(
        cls, p: SpaceMap, C: ClosureSpace, gamma: SpaceMap, action: Callable[[int, int], int]
    ) -> DescentData:
        dom = action_domain(p, gamma)
        xi = SpaceMap(dom.space, C, tuple(action(e, c) for e, c in dom.pairs))
        return cls(p, C, gamma, xi)


def action_domain(p: SpaceMap, gamma: SpaceMap) -> PullbackResult:
    if gamma.cod != p.dom:
        raise InputError("gamma must land in the domain of p")
    return pullback(p, gamma.then(p), check=False)


def validate_descent_data(d: DescentData) -> list[str]:
    """Violated laws of a descent datum, each with a witness; empty if valid."""
    p, C, gamma, xi = d.p, d.C, d.gamma, d.xi
    E = p.dom
    if gamma.dom != C or gamma.cod != E:
        raise InputError("gamma must map C into the domain of p")
    dom = d.action_domain
    if xi.dom != dom.space or xi.cod != C:
        raise InputError("xi must map the pullback E x_B C into C")
    out = []
    w = gamma.continuity_witness()
    if w is not None:
        out.append(
            f"gamma is not continuous: preimage of closed {E.format_set(w)} "
            f"is {C.format_set(gamma.preimage_of(w))}"
        )
    w = xi.continuity_witness()
    if w is not None:
        out.append(
            f"xi is not continuous: preimage of closed {C.format_set(w)} "
            f"is {dom.space.format_set(xi.preimage_of(w))}"
        )
    projection_ok = True
    for i, (e, c) in enumerate(dom.pairs):
        if gamma.image[xi.image[i]] != e:
            projection_ok = False
            out.append(f"projection law fails at ({E.name(e)},{C.name(c)})")
            break
    for c in range(C.n):
        if d.act(gamma.image[c], c) != c:
            out.append(f"unit law fails at {C.name(c)}")
            break
    if projection_ok:
        bad = _associativity_witness(d)
        if bad is not None:
            e, e2, c = bad
            out.append(
                f"associativity fails at ({E.name(e)},{E.name(e2)},{C.name(c)})"
            )
    return out


def _associativity_witness(d: DescentData) -> tuple[int, int, int] | None:
    p, gamma = d.p, d.gamma
    E = p.dom
    for c in range(d.C.n):
        base = p.image[gamma.image[c]]
        fibre = [e for e in range(E.n) if p.image[e] == base]
        for e2 in fibre:
            moved = d.act(e2, c)
            for e in fibre:
                if d.act(e, moved) != d.act(e, c):
                    return e, e2, c
    return None


def comparison_K(p: SpaceMap, A: ClosureSpace, alpha: SpaceMap) -> DescentData:
    """The canonical datum on ``E x_B A``: ``gamma = pi1``, ``xi(e, (e', a)) = (e, a)``."""
    if alpha.dom != A or alpha.cod != p.cod:
        raise InputError("alpha must map A into the codomain of p")
    alpha.require_continuous("alpha")
    pb = pullback(p, alpha, check=False)
    lookup = {pair: i for i, pair in enumerate(pb.pairs)}

    def action(e: int, c: int) -> int:
        return lookup[(e, pb.pairs[c][1])]

    return DescentData.from_action(p, pb.space, pb.proj1, action)


@dataclass(frozen=True)
class Descended:
    """A space over ``B`` obtained from a datum, with the quotient map from ``C``."""

    A: ClosureSpace
    alpha: SpaceMap
    q: SpaceMap


def adjoint_L(d: DescentData, check: bool = True) -> Descended:
    """Coequalize ``xi`` and the second projection ``E x_B C -> C``.

    ``alpha`` is the unique map with ``alpha . q = p . gamma``.
    """
    if check:
        problems = validate_descent_data(d)
        if problems:
            raise InputError("invalid descent data: " + "; ".join(problems))
        if not regular_epi_conditions(d.p).verdict:
            raise InputError("p is not a regular epimorphism")
    dom = d.action_domain
    co = coequalizer(d.xi, dom.proj2, check=False)
    base = [None] * co.space.n
    for c, k in enumerate(co.class_table):
        b = d.p.image[d.gamma.image[c]]
        if base[k] is not None and base[k] != b:
            raise InputError("the action mixes fibres of p")
        base[k] = b
    alpha = SpaceMap(co.space, d.p.cod, tuple(base))  # type: ignore[arg-type]
    return Descended(co.space, alpha, co.q)


@dataclass(frozen=True)
class DatumReport:
    """Both effectiveness readings of one datum.

    ``unit_iso``: the unit ``C -> E x_B A`` is an isomorphism of data.
    ``quotient_descent``: the quotient map ``C -> A`` is a descent morphism.
    """

    unit_iso: bool
    quotient_descent: bool
    descended: Descended

    @property
    def agree(self) -> bool:
        return self.unit_iso == self.quotient_descent


def datum_report(d: DescentData, check: bool = True) -> DatumReport:
    L = adjoint_L(d, check=check)
    p, gamma = d.p, d.gamma
    P = pullback(p, L.alpha, check=False)
    lookup = {pair: i for i, pair in enumerate(P.pairs)}
    u = [lookup[(gamma.image[c], L.q.image[c])] for c in range(d.C.n)]
    iso = len(set(u)) == P.space.n == d.C.n
    if iso:
        def move(mask: int) -> int:
            out = 0
            for c in points_of(mask):
                out |= 1 << u[c]
            return out

        iso = {move(k) for k in d.C.closed} == P.space.closed_set
    if iso:
        for i, (e, c) in enumerate(d.action_domain.pairs):
            if u[d.xi.image[i]] != lookup[(e, L.q.image[c])]:
                iso = False
                break
    quotient_descent = bool(descent_conditions(L.q).verdict)
    return DatumReport(iso, quotient_descent, L)


def datum_is_effective(d: DescentData, check: bool = True) -> bool:
    """Whether the datum is realised by a space over ``B`` (unit is an iso).

    The quotient-is-descent reading is computed alongside; over a descent
    morphism the two must agree, which is asserted.
    """
    report = datum_report(d, check=check)
    if __debug__ and not report.agree:
        assert not descent_conditions(d.p).verdict, (
            "unit-iso and quotient-descent readings disagree over a descent morphism"
        )
    return report.unit_iso


def data_isomorphism(d1: DescentData, d2: DescentData) -> tuple[int, ...] | None:
    """A bijection ``C1 -> C2`` of spaces commuting with gamma and xi, if any."""
    if d1.p != d2.p or d1.C.n != d2.C.n:
        return None
    allowed = [
        {j for j in range(d2.C.n) if d2.gamma.image[j] == d1.gamma.image[i]}
        for i in range(d1.C.n)
    ]
    for phi in iter_isos(d1.C, d2.C, allowed):
        if all(
            phi[d1.xi.image[i]] == d2.act(e, phi[c])
            for i, (e, c) in enumerate(d1.action_domain.pairs)
        ):
            return phi
    return None


# identity-carrier data -----------------------------------------------------


@dataclass(frozen=True)
class IdentityCarrierReport:
    """Conditions for ``(E', 1_E, pi1)`` to be a descent datum over ``p``.

    ``premise_ok``: ``1_E: E' -> E`` is continuous. ``d``: the first
    projection ``E x_B E' -> E'`` is continuous. ``e``..``h``: the subset
    formulations with ``R(Y) = cl(Y) & p^-1(p(cl'(p^-1(p Y))))``:
    (e) ``R(Y) <= cl'(Y)`` for all ``Y``, (f) equality, (g) ``R(Y) <= Y``
    for ``Y`` closed in ``E'``, (h) equality.
    """

    premise_ok: bool
    results: dict[str, bool]

    @property
    def consistent(self) -> bool:
        return not self.premise_ok or len(set(self.results.values())) == 1

    @property
    def holds(self) -> bool:
        return self.premise_ok and all(self.results.values())


def retyped(p: SpaceMap, Eprime: ClosureSpace) -> SpaceMap:
    """``p`` as a map out of ``E'`` (same carrier, other closed sets)."""
    if Eprime.n != p.dom.n:
        raise InputError("E' must have the same carrier as the domain of p")
    return SpaceMap(Eprime, p.cod, p.image)


def identity_carrier_conditions(p: SpaceMap, Eprime: ClosureSpace) -> IdentityCarrierReport:
    pp = retyped(p, Eprime)
    if not p.is_surjective():
        raise InputError("p must be surjective")
    E = p.dom
    _require_quantifiable(E, p.cod)
    premise = all(Eprime.is_closed(c) for c in E.closed)
    pb = pullback(p, pp, check=False)
    first = SpaceMap(pb.space, Eprime, pb.proj1.image)

    def rhs(y: int) -> int:
        sat = p.preimage_of(p.image_of(y))
        return E.closure(y) & p.preimage_of(p.image_of(Eprime.closure(sat)))

    ys = range(1 << E.n)
    results = {
        "d": first.is_continuous(),
        "e": all(is_subset(rhs(y), Eprime.closure(y)) for y in ys),
        "f": all(rhs(y) == Eprime.closure(y) for y in ys),
        "g": all(is_subset(rhs(y), y) for y in Eprime.closed),
        "h": all(rhs(y) == y for y in Eprime.closed),
    }
    return IdentityCarrierReport(premise, results)


def identity_carrier_datum(p: SpaceMap, Eprime: ClosureSpace) -> DescentData:
    """``(E', 1_E, pi1)`` as a (possibly invalid) datum."""
    gamma = SpaceMap(Eprime, p.dom, tuple(range(p.dom.n)))
    return DescentData.from_action(p, Eprime, gamma, lambda e, c: e)


@dataclass(frozen=True)
class EscalationResult:
    """``Y* = cl'(p^-1(p(Y)))`` with the preconditions that were not met.

    ``postcondition_ok``: ``Y`` is strictly inside ``Y*``, and ``Y*`` is
    closed in ``E'`` but not in ``E``.
    """

    ystar: int
    unmet: tuple[str, ...]
    postcondition_ok: bool


def escalation_preconditions(p: SpaceMap, Eprime: ClosureSpace, y: int) -> list[str]:
    pp = retyped(p, Eprime)
    E = p.dom
    if y & ~E.full:
        raise InputError(f"subset {y:#b} outside the carrier")
    unmet = []
    report = identity_carrier_conditions(p, Eprime)
    if not report.premise_ok:
        unmet.append("1_E: E' -> E is continuous")
    if not report.holds:
        unmet.append("identity-carrier conditions hold")
    if not (p.is_continuous() and regular_epi_conditions(p).verdict):
        unmet.append("p is a regular epi")
    if not (pp.is_continuous() and regular_epi_conditions(pp).verdict):
        unmet.append("p' is a regular epi")
    if not Eprime.is_closed(y):
        unmet.append("Y is closed in E'")
    if E.is_closed(y):
        unmet.append("Y ∈ C_E")
    return unmet


def escalate(p: SpaceMap, Eprime: ClosureSpace, y: int, force: bool = False) -> EscalationResult:
    """One escalation step from ``Y`` (closed in ``E'``, not in ``E``) to ``Y*``.

    Raises :class:`PreconditionError` naming the first failed clause unless
    ``force`` is set, in which case the result is returned with the unmet
    clauses listed. If every precondition holds but the postcondition fails,
    :class:`EscalationContradiction` is raised.
    """
    unmet = escalation_preconditions(p, Eprime, y)
    if unmet and not force:
        if "Y ∈ C_E" in unmet:
            raise PreconditionError("Y ∈ C_E")
        raise PreconditionError(unmet[0])
    sat = p.preimage_of(p.image_of(y))
    ystar = Eprime.closure(sat)
    ok = (
        is_subset(y, ystar)
        and y != ystar
        and Eprime.is_closed(ystar)
        and not p.dom.is_closed(ystar)
    )
    if not unmet and not ok:
        raise EscalationContradiction(
            f"Y* = {p.dom.format_set(ystar)} breaks the escalation guarantee"
        )
    return EscalationResult(ystar, tuple(unmet), ok)


# deciding effective descent -----------------------------------------------


class Outcome(enum.Enum):
    EFFECTIVE = "effective"
    NOT_EFFECTIVE = "not effective"
    UNDECIDED = "undecided at bound"


@dataclass(frozen=True)
class EffectiveDescentReport:
    """How effectiveness of a map was decided.

    ``route`` is one of ``not descent``, ``closed surjection``,
    ``open surjection``, ``enumeration`` or ``bound exceeded``. For the
    enumeration route, ``shapes`` counts the ``(A0, alpha0)`` work units,
    ``data`` the valid data found and ``non_effective`` those whose unit is
    not an isomorphism; ``bound`` is the largest ``|A0|`` searched.
    """

    outcome: Outcome
    route: str
    bound: int = 0
    shapes: int = 0
    data: int = 0
    non_effective: int = 0
    nodes: int = 0
    witness: DescentData | None = field(default=None, compare=False)

    def __bool__(self) -> bool:
        return self.outcome is Outcome.EFFECTIVE


def data_shapes(p: SpaceMap, bound: int) -> list[tuple[int, ...]]:
    """Maps ``A0 -> B`` with ``|A0| <= bound``, one per multiset of values."""
    return [
        shape
        for k in range(bound + 1)
        for shape in combinations_with_replacement(range(p.cod.n), k)
    ]


def datum_from_family(p: SpaceMap, alpha0: tuple[int, ...], family: Iterable[int]) -> DescentData:
    """Descent datum on ``E x_B A0`` with the given closed sets and canonical action."""
    E = p.dom
    pairs = [(e, a) for e in range(E.n) for a in range(len(alpha0)) if p.image[e] == alpha0[a]]
    lookup = {pair: i for i, pair in enumerate(pairs)}
    names = tuple(f"({E.name(e)},{a})" for e, a in pairs)
    C = ClosureSpace(len(pairs), tuple(family), names)
    gamma = SpaceMap(C, E, tuple(e for e, _ in pairs))
    return DescentData.from_action(p, C, gamma, lambda e, c: lookup[(e, pairs[c][1])])


def search_shape(p: SpaceMap, alpha0: tuple[int, ...], collect: bool = False):
    """Run the descent-data search for one ``(A0, alpha0)`` work unit."""
    E = p.dom
    return kernels.descent_data_search(E.n, E.closed, p.image, tuple(alpha0), collect)


def decide_effective_descent(
    p: SpaceMap,
    fast_path: bool = True,
    max_domain: int = DEFAULT_MAX_DOMAIN,
    bound: int | None = None,
    mapper: Callable = map,
) -> EffectiveDescentReport:
    """Decide whether ``p`` is an effective descent morphism.

    Non-descent maps are not effective. Surjective closed or open maps are
    effective without search when ``fast_path`` is set. Otherwise every
    datum on a carrier ``E x_B A0`` with ``|A0| <= bound`` (default
    ``|E|``) is generated and its unit tested; domains larger than
    ``max_domain`` are reported as undecided.
    """
    p.require_continuous()
    if not descent_conditions(p).verdict:
        return EffectiveDescentReport(Outcome.NOT_EFFECTIVE, "not descent")
    if fast_path and p.is_surjective():
        if is_closed_map(p).verdict:
            return EffectiveDescentReport(Outcome.EFFECTIVE, "closed surjection")
        if is_open_map(p).verdict:
            return EffectiveDescentReport(Outcome.EFFECTIVE, "open surjection")
    if p.dom.n > max_domain:
        return EffectiveDescentReport(Outcome.UNDECIDED, "bound exceeded")
    if bound is None:
        bound = p.dom.n
    shapes = data_shapes(p, bound)
    results = list(mapper(lambda s: search_shape(p, s), shapes))
    data = sum(r[0] for r in results)
    bad = sum(r[1] for r in results)
    nodes = sum(r[3] for r in results)
    witness = None
    for shape, r in zip(shapes, results):
        if r[2] is not None:
            witness = datum_from_family(p, shape, r[2])
            break
    outcome = Outcome.NOT_EFFECTIVE if bad else Outcome.EFFECTIVE
    return EffectiveDescentReport(
        outcome, "enumeration", bound, len(shapes), data, bad, nodes, witness
    )


def is_effective_descent(p: SpaceMap, **kw) -> bool:
    """Boolean form of :func:`decide_effective_descent`.

    Raises :class:`UndecidedAtBound` rather than guessing.
    """
    report = decide_effective_descent(p, **kw)
    if report.outcome is Outcome.UNDECIDED:
        raise UndecidedAtBound(f"domain of {p.dom.n} points exceeds the enumeration bound")
    return report.outcome is Outcome.EFFECTIVE
