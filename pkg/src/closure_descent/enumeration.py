"""Exhaustive enumeration of small closure spaces and maps, the verification
suites built on it, and the miner for the surjection ladder.

Suites return a :class:`SuiteReport` listing violations instead of raising.
Work is split into blocks indexed by ``(domain, codomain)`` space pairs; a
block is a pure function of its index, and results are merged in index
order, so reports do not depend on the number of workers.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, permutations, product
from pathlib import Path
from typing import Callable, Iterator, Sequence

from . import kernels
from .core import ClosureSpace, ConditionGroup, SpaceMap, morphism_conditions
from .descent import (
    Outcome,
    data_shapes,
    datum_from_family,
    datum_report,
    decide_effective_descent,
    escalation_preconditions,
    search_shape,
    identity_carrier_conditions,
    identity_carrier_datum,
    validate_descent_data,
)
from .errors import CapExceeded, InputError
from .maps import (
    descent_conditions,
    is_closed_map,
    is_open_map,
    regular_epi_conditions,
    surjection_ladder,
    unconditioned_d,
)
from .preord import MonotoneMap, Preorder, preord_descent, to_cls

#: Largest ``n`` for which every labelled Moore family is listed.
LABELLED_CAP = 4
#: Largest ``n`` for which families are listed up to isomorphism.
ISO_CAP = 5


# spaces ---------------------------------------------------------------------


@lru_cache(maxsize=None)
def _labelled(n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(kernels.moore_families(n))


@lru_cache(maxsize=None)
def _iso_classes(n: int) -> tuple[tuple[int, ...], ...]:
    if n <= LABELLED_CAP:
        reps = {kernels.canonical_family(n, fam) for fam in _labelled(n)}
        return tuple(sorted(reps))
    reps = set()
    for base in _iso_classes(n - 1):
        for fam in _one_point_extensions(n - 1, base):
            reps.add(kernels.canonical_family(n, fam))
    return tuple(sorted(reps))


def _one_point_extensions(n: int, base: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Moore families on ``n + 1`` points whose trace on the first ``n`` is ``base``.

    Each member of ``base`` appears as ``g``, ``g + {n}`` or both; families
    are grown by deciding the members in descending order, with any meet of
    chosen sets forced in.
    """
    new = 1 << n
    full = (new << 1) - 1
    cands = sorted({g | new for g in base} | set(base), reverse=True)
    cands.remove(full)
    fam = [full]

    def rec(i: int) -> Iterator[tuple[int, ...]]:
        if i == len(cands):
            if {c & ~new for c in fam} == set(base):
                yield tuple(sorted(fam))
            return
        x = cands[i]
        acc = full
        for c in fam:
            if c & x == x:
                acc &= c
        if acc != x:
            yield from rec(i + 1)
        fam.append(x)
        yield from rec(i + 1)
        fam.pop()

    yield from rec(0)


def enumerate_moore(n: int, up_to_iso: bool = False) -> Iterator[ClosureSpace]:
    """Every Moore family on ``n`` points, in ascending order of sorted mask tuples.

    With ``up_to_iso`` one family per isomorphism class is produced, namely
    the lexicographically least relabelling.
    """
    cap = ISO_CAP if up_to_iso else LABELLED_CAP
    if n < 0:
        raise InputError("negative point count")
    if n > cap:
        kind = "up to isomorphism" if up_to_iso else "labelled"
        raise CapExceeded(f"{kind} enumeration is capped at {cap} points")
    fams = _iso_classes(n) if up_to_iso else sorted(_labelled(n))
    for fam in fams:
        yield ClosureSpace(n, fam)


def moore_count_bruteforce(n: int) -> int:
    """Count Moore families by filtering every family of subsets (``n <= 4``)."""
    if n > LABELLED_CAP:
        raise CapExceeded(f"brute-force count is capped at {LABELLED_CAP} points")
    full = (1 << n) - 1
    proper = [x for x in range(full)]
    count = 0
    for bits in range(1 << len(proper)):
        fam = [proper[i] for i in range(len(proper)) if (bits >> i) & 1]
        fam.append(full)
        members = set(fam)
        if all(x & y in members for x, y in combinations(fam, 2)):
            count += 1
    return count


@lru_cache(maxsize=None)
def spaces_upto(n_max: int, up_to_iso: bool = False) -> tuple[ClosureSpace, ...]:
    """All spaces on ``0..n_max`` points, by size then family."""
    return tuple(s for n in range(n_max + 1) for s in enumerate_moore(n, up_to_iso))


def enumerate_maps(E: ClosureSpace, B: ClosureSpace, continuous_only: bool = True) -> Iterator[SpaceMap]:
    """Every map ``E -> B`` in lexicographic order of value tuples."""
    for image in product(range(B.n), repeat=E.n):
        f = SpaceMap(E, B, image)
        if not continuous_only or f.is_continuous():
            yield f


def enumerate_surjections(E: ClosureSpace, B: ClosureSpace, continuous_only: bool = True) -> Iterator[SpaceMap]:
    for f in enumerate_maps(E, B, continuous_only):
        if f.is_surjective():
            yield f


# reports --------------------------------------------------------------------


@dataclass
class SuiteReport:
    """Counts and violations of one verification suite."""

    name: str
    bound: int
    counts: dict[str, int] = field(default_factory=dict)
    violations: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def merge(self, counts: dict[str, int], violations: list[str]) -> None:
        for key, v in counts.items():
            self.counts[key] = self.counts.get(key, 0) + v
        self.violations.extend(violations)

    def to_text(self) -> str:
        lines = [f"suite {self.name} (spaces on at most {self.bound} points)"]
        for key, v in self.counts.items():
            lines.append(f"  {key}: {v}")
        lines.append(f"  violations: {len(self.violations)}")
        lines.extend(f"    {v}" for v in self.violations)
        lines.extend(f"  note: {n}" for n in self.notes)
        return "\n".join(lines)


def describe(f: SpaceMap) -> str:
    """One-line description of a map between anonymous spaces."""
    def fam(s: ClosureSpace) -> str:
        return "[" + ",".join(s.format_set(c) for c in s.closed) + "]"

    return f"{f.dom.n}pt{fam(f.dom)} -> {f.cod.n}pt{fam(f.cod)} image {list(f.image)}"


def _run_blocks(
    task: Callable, args: Sequence, blocks: Sequence, workers: int
) -> list:
    """Apply ``task(*args, block)`` to every block, preserving block order."""
    if workers <= 1 or len(blocks) <= 1:
        return [task(*args, b) for b in blocks]
    chunk = max(1, len(blocks) // (workers * 8))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_apply, [(task, args, b) for b in blocks], chunksize=chunk))


def _apply(job):
    task, args, block = job
    return task(*args, block)


def _pair_blocks(n_max: int, up_to_iso: bool) -> list[tuple[int, int]]:
    n = len(spaces_upto(n_max, up_to_iso))
    return [(i, j) for i in range(n) for j in range(n)]


@lru_cache(maxsize=None)
def _cospans(n_max: int, b_index: int) -> tuple:
    """Every map into space ``b_index`` from a representative space on at most
    ``n_max`` points (stability properties are invariant under relabelling
    the other leg's domain)."""
    B = spaces_upto(n_max)[b_index]
    out = []
    for A in spaces_upto(n_max, True):
        for alpha in enumerate_maps(A, B):
            out.append((A.n, A.closed, alpha.image))
    return tuple(out)


def _first_cospan_failing(p: SpaceMap, cospans, flag: int) -> str:
    E = p.dom
    for n_a, closed_a, a_img in cospans:
        if not kernels.pullback_flags(E.n, E.closed, n_a, closed_a, p.image, a_img) & flag:
            return f"along {n_a}pt{list(closed_a)} image {list(a_img)}"
    return "no failing cospan"


# condition-group equivalences ------------------------------------------------


def _equivalence_block(n_max: int, stability: bool, block: tuple[int, int]):
    spaces = spaces_upto(n_max)
    E, B = spaces[block[0]], spaces[block[1]]
    counts = {
        "maps": 0,
        "morphisms": 0,
        "surjective morphisms": 0,
        "pullbacks": 0,
        "literal (d) disagreements": 0,
    }
    bad: list[str] = []
    cospans = _cospans(n_max, block[1]) if stability else ()
    for image in product(range(B.n), repeat=E.n):
        f = SpaceMap(E, B, image)
        counts["maps"] += 1
        morph = morphism_conditions(f)
        if not morph.consistent:
            bad.append(f"morphism conditions disagree {morph.results}: {describe(f)}")
        if morph.results["a"] != f.is_continuous():
            bad.append(f"continuity oracle disagrees: {describe(f)}")
        if not morph.results["a"]:
            continue
        counts["morphisms"] += 1
        counts["surjective morphisms"] += f.is_surjective()
        groups = [regular_epi_conditions(f), is_closed_map(f), is_open_map(f)]
        desc = descent_conditions(f)
        if stability:
            flags = kernels.pullback_flags_all(E.n, E.closed, f.image, cospans)
            counts["pullbacks"] += len(cospans)
            stable = bool(flags & kernels.PB_REGULAR_EPI)
            desc = ConditionGroup("descent", {"a": stable, **desc.results}, desc.witnesses)
        groups.append(desc)
        if unconditioned_d(f) != desc.results["d"]:
            counts["literal (d) disagreements"] += 1
            if f.is_surjective():
                bad.append(f"literal condition (d) disagrees on a surjection: {describe(f)}")
        for g in groups:
            if not g.consistent:
                bad.append(f"{g.name} conditions disagree {g.results}: {describe(f)}")
    return counts, bad


def verify_equivalences(n_max: int = 3, workers: int = 1, stability: bool = True) -> SuiteReport:
    """Every continuous map between spaces on at most ``n_max`` points gets
    all five condition groups evaluated; each group must be unanimous.

    With ``stability`` the descent group gains the brute-force condition:
    the second projection of the pullback along every map into the codomain
    is a regular epi.
    """
    _check_bound(n_max, 3)
    report = SuiteReport("condition-group equivalences", n_max)
    for counts, bad in _run_blocks(
        _equivalence_block, (n_max, stability), _pair_blocks(n_max, False), workers
    ):
        report.merge(counts, bad)
    report.notes.append(
        "literal (d) disagreements: morphisms where p(cl(p^-1 X)) is closed for all X"
        " although p is not a descent morphism; each one is non-surjective"
    )
    if stability:
        report.notes.append(
            "pullback stability is tested along maps out of one space per isomorphism class"
        )
    return report


# effectiveness of descent morphisms ------------------------------------------


def _effective_block(n_max: int, object_level: bool, block: tuple[int, int]):
    spaces = spaces_upto(n_max)
    E, B = spaces[block[0]], spaces[block[1]]
    counts = {
        "descent morphisms": 0,
        "decided by enumeration": 0,
        "data checked": 0,
        "escalation inputs examined": 0,
        "admissible escalation inputs": 0,
    }
    bad: list[str] = []
    e_families = spaces_upto(n_max)
    for p in enumerate_maps(E, B):
        if not descent_conditions(p).verdict:
            continue
        counts["descent morphisms"] += 1
        report = decide_effective_descent(p, fast_path=False)
        counts["decided by enumeration"] += report.route == "enumeration"
        counts["data checked"] += report.data
        if report.outcome is not Outcome.EFFECTIVE:
            bad.append(f"descent morphism is {report.outcome.value}: {describe(p)}")
        if object_level:
            counts.setdefault("data rebuilt as objects", 0)
            for shape in data_shapes(p, E.n):
                for family in search_shape(p, shape, collect=True)[4]:
                    counts["data rebuilt as objects"] += 1
                    rep = datum_report(datum_from_family(p, shape, family), check=False)
                    if not (rep.unit_iso and rep.quotient_descent):
                        bad.append(f"datum over {shape} not effective as an object: {describe(p)}")
        for Ep in e_families:
            if Ep.n != E.n or Ep.closed == E.closed or not set(E.closed) <= Ep.closed_set:
                continue
            for y in Ep.closed:
                if E.is_closed(y):
                    continue
                counts["escalation inputs examined"] += 1
                if not escalation_preconditions(p, Ep, y):
                    counts["admissible escalation inputs"] += 1
                    bad.append(f"admissible escalation input Y={y:#b} E'={list(Ep.closed)}: {describe(p)}")
    return counts, bad


def verify_descent_is_effective(
    n_max: int = 3, workers: int = 1, object_level: bool = False
) -> SuiteReport:
    """Every descent morphism on at most ``n_max`` points is decided effective
    by the full descent-data enumeration; the escalation step never has
    admissible input.

    With ``object_level`` every datum found by the kernel search is also
    rebuilt as a :class:`DescentData` and checked with :func:`datum_report`
    (unit iso and descent quotient), independently of the kernel verdict."""
    _check_bound(n_max, 3)
    report = SuiteReport("descent morphisms are effective", n_max)
    for counts, bad in _run_blocks(_effective_block, (n_max, object_level), _pair_blocks(n_max, False), workers):
        report.merge(counts, bad)
    report.notes.append(
        "data carriers are E x_B A0 for every multiset map A0 -> B with |A0| <= |E|; "
        "this bounds the search and is not a completeness proof"
    )
    return report


def _closed_open_block(n_max: int, block: tuple[int, int]):
    spaces = spaces_upto(n_max)
    E, B = spaces[block[0]], spaces[block[1]]
    counts = {
        "surjective closed or open maps": 0,
        "closed maps": 0,
        "surjective open maps": 0,
        "pullbacks": 0,
    }
    bad: list[str] = []
    cospans = _cospans(n_max, block[1])
    for p in enumerate_maps(E, B):
        closed = bool(is_closed_map(p).verdict)
        opened = p.is_surjective() and bool(is_open_map(p).verdict)
        if closed or opened:
            flags = kernels.pullback_flags_all(E.n, E.closed, p.image, cospans)
            counts["pullbacks"] += len(cospans)
            if not flags & kernels.PB_IMAGE_IDENTITY:
                bad.append(f"image identity fails {_first_cospan_failing(p, cospans, kernels.PB_IMAGE_IDENTITY)}: {describe(p)}")
            if not flags & kernels.PB_MEET_CLOSED:
                bad.append(f"pullback family not meet-closed: {describe(p)}")
        if closed:
            counts["closed maps"] += 1
            if not flags & kernels.PB_CLOSED:
                bad.append(f"closed map not pullback stable {_first_cospan_failing(p, cospans, kernels.PB_CLOSED)}: {describe(p)}")
        if opened:
            counts["surjective open maps"] += 1
            if not flags & kernels.PB_OPEN:
                bad.append(f"surjective open map not pullback stable {_first_cospan_failing(p, cospans, kernels.PB_OPEN)}: {describe(p)}")
        if not p.is_surjective() or not (closed or opened):
            continue
        counts["surjective closed or open maps"] += 1
        fast = decide_effective_descent(p)
        full = decide_effective_descent(p, fast_path=False)
        if fast.outcome is not Outcome.EFFECTIVE or full.outcome is not Outcome.EFFECTIVE:
            bad.append(
                f"fast path {fast.outcome.value}, enumeration {full.outcome.value}: {describe(p)}"
            )
    return counts, bad


def verify_closed_open_effective(n_max: int = 3, workers: int = 1) -> SuiteReport:
    """Surjective closed and surjective open maps pass the enumeration check,
    and closed maps and surjective open maps are stable under pullback."""
    _check_bound(n_max, 3)
    report = SuiteReport("surjective closed/open maps are effective", n_max)
    for counts, bad in _run_blocks(_closed_open_block, (n_max,), _pair_blocks(n_max, False), workers):
        report.merge(counts, bad)
    report.notes.append(
        "pullbacks are taken along maps out of one space per isomorphism class"
    )
    return report


def verify_identity_carrier(n_max: int = 3) -> SuiteReport:
    """For every continuous surjection ``p`` and every finer ``E'`` on the
    same carrier, the identity-carrier conditions are unanimous, and when
    they hold the projection is the only valid action."""
    _check_bound(n_max, 3)
    report = SuiteReport("identity-carrier conditions", n_max)
    counts = {"pairs (p, E')": 0, "pairs with conditions holding": 0}
    spaces = spaces_upto(n_max)
    for E in spaces:
        finer = [s for s in spaces if s.n == E.n and set(E.closed) <= s.closed_set]
        for B in spaces:
            for p in enumerate_surjections(E, B):
                for Ep in finer:
                    counts["pairs (p, E')"] += 1
                    r = identity_carrier_conditions(p, Ep)
                    if not r.consistent:
                        report.violations.append(f"conditions disagree {r.results} E'={list(Ep.closed)}: {describe(p)}")
                    d = identity_carrier_datum(p, Ep)
                    valid = not validate_descent_data(d)
                    if valid != r.holds:
                        report.violations.append(f"datum validity {valid} vs conditions {r.holds}: {describe(p)}")
                    if r.holds:
                        counts["pairs with conditions holding"] += 1
                        others = _other_valid_actions(d)
                        if others:
                            report.violations.append(f"{others} further valid actions: {describe(p)}")
    report.merge(counts, [])
    return report


def _other_valid_actions(d) -> int:
    """Valid actions on an identity carrier other than the projection.

    Candidates are searched point by point, pruned by the projection law
    ``gamma(xi(e, c)) = e``. Separately, every map differing from the
    projection at a single point must be rejected by the validator; each
    such map that is accepted is counted as well.
    """
    from .descent import DescentData

    dom = d.action_domain
    gamma = d.gamma.image
    firsts = [e for e, _ in dom.pairs]
    choices = [[c for c in range(d.C.n) if gamma[c] == e] for e in firsts]
    found = 0

    def accepted(image) -> bool:
        alt = DescentData(d.p, d.C, d.gamma, SpaceMap(dom.space, d.C, image))
        return not validate_descent_data(alt)

    for image in product(*choices):
        if image != d.xi.image and accepted(image):
            found += 1
    base = list(d.xi.image)
    for i in range(len(base)):
        for c in range(d.C.n):
            if c != base[i] and accepted(tuple(base[:i] + [c] + base[i + 1:])):
                found += 1
    return found


# preorders ----------------------------------------------------------------------


@lru_cache(maxsize=None)
def preorders(n: int) -> tuple[Preorder, ...]:
    """Every preorder on ``n`` labelled points."""
    out = []
    for fam in _labelled(n):
        # preorders are exactly the union-closed Moore families containing the empty set
        members = set(fam)
        if 0 not in members or any(x | y not in members for x, y in combinations(fam, 2)):
            continue
        up = tuple(min(c for c in fam if (c >> i) & 1) for i in range(n))
        out.append(Preorder(n, up))
    return tuple(out)


def verify_preorder_descent(n_max: int = 3) -> SuiteReport:
    """For monotone surjections between preorders, the lifting criterion equals
    the descent verdict of the embedded map; monotone equals continuous."""
    _check_bound(n_max, 3)
    report = SuiteReport("preorder descent criterion", n_max)
    counts = {"functions": 0, "monotone surjections": 0, "descent": 0}
    orders = [P for n in range(n_max + 1) for P in preorders(n)]
    for P, Q in product(orders, repeat=2):
        for image in product(range(Q.n), repeat=P.n):
            m = MonotoneMap(P, Q, image)
            counts["functions"] += 1
            f = m.to_space_map()
            if m.is_monotone() != f.is_continuous():
                report.violations.append(f"monotone {m.is_monotone()} but continuous {f.is_continuous()}: {describe(f)}")
            if not m.is_monotone() or not f.is_surjective():
                continue
            counts["monotone surjections"] += 1
            lifted = preord_descent(m)
            verdict = bool(descent_conditions(f).verdict)
            counts["descent"] += verdict
            if lifted != verdict:
                report.violations.append(f"lifting {lifted} but descent {verdict}: {describe(f)}")
    report.merge(counts, [])
    if any(to_cls(P).closed != tuple(sorted(_union_closure(to_cls(P).closed))) for P in orders):
        report.violations.append("an embedded preorder is not union-closed")
    return report


def _union_closure(fam) -> set[int]:
    out = set(fam)
    for x, y in combinations(fam, 2):
        out.add(x | y)
    return out


def _check_bound(n_max: int, cap: int) -> None:
    if not 0 <= n_max <= cap:
        raise CapExceeded(f"suite bound {n_max} outside 0..{cap}")


# the ladder miner -------------------------------------------------------------

IMPLICATIONS = ("a=>b", "b=>c", "c=>d")


@dataclass
class MinerReport:
    """Outcome of classifying every continuous surjection between
    representative spaces on at most ``n_max`` points.

    ``witnesses`` maps each implication to the maps violating it, as
    document text; ``undecided`` counts maps whose effectiveness was not
    decided.
    """

    n_max: int
    checked: int = 0
    witnesses: dict[str, list[str]] = field(default_factory=lambda: {k: [] for k in IMPLICATIONS})
    undecided: int = 0
    chain_failures: int = 0

    @property
    def open_b_to_c(self) -> bool:
        """No counterexample to (b) => (c) within the searched bound."""
        return not self.witnesses["b=>c"]

    def to_text(self, max_listed: int = 1) -> str:
        lines = [
            f"ladder miner: continuous surjections between spaces on at most {self.n_max} points",
            "conditions: (a) saturated closed sets have closed images;"
            " (b) closures of saturated sets have closed images;"
            " (c) effective descent; (d) closed map",
            f"surjections checked: {self.checked}",
            f"undecided effectiveness: {self.undecided}",
            f"chain d => c => b => a failures: {self.chain_failures}",
        ]
        for key in IMPLICATIONS:
            a, b = key.split("=>")
            ws = self.witnesses[key]
            lines.append(f"witnesses for {a} and not {b}: {len(ws)}")
            for w in ws[:max_listed]:
                lines.extend("  " + line for line in w.splitlines())
        if self.open_b_to_c:
            lines.append(
                f"(b) => (c): no counterexample among spaces on at most {self.n_max} points."
                " Over finite spaces every descent morphism is effective, so none is"
                " expected; the question for arbitrary closure spaces remains open."
            )
        else:
            lines.append(
                "(b) => (c): COUNTEREXAMPLE FOUND. Finite descent morphisms are"
                " effective, so this indicates a defect in the implementation."
            )
        return "\n".join(lines)


def _miner_block(n_max: int, block: tuple[int, int]):
    from .document import emit_map

    spaces = spaces_upto(n_max, True)
    E, B = spaces[block[0]], spaces[block[1]]
    checked = undecided = chain_failures = 0
    found: dict[str, list[str]] = {k: [] for k in IMPLICATIONS}
    if B.n > E.n or (B.n == 0) != (E.n == 0):
        return checked, found, undecided, chain_failures
    for p in enumerate_surjections(E, B):
        checked += 1
        lad = surjection_ladder(p)
        a, b, c, d = lad.as_tuple()
        if c is None:
            undecided += 1
        if not lad.chain_holds:
            chain_failures += 1
        for key, hit in (("a=>b", a and not b), ("b=>c", b and c is False), ("c=>d", c and not d)):
            if hit:
                found[key].append(emit_map(p, f"witness_{key.replace('=>', '_')}"))
    return checked, found, undecided, chain_failures


def mine_ladder(
    n_max: int = 4, workers: int = 1, checkpoint: str | os.PathLike | None = None
) -> MinerReport:
    """Classify every continuous surjection between spaces on at most
    ``n_max`` points (one space per isomorphism class on each side, which
    covers every surjection up to isomorphism).

    With ``checkpoint``, each completed block's results are appended to that
    file, and a rerun resumes after the last completed block.
    """
    _check_bound(n_max, 4)
    blocks = _pair_blocks(n_max, True)
    done: dict[int, tuple] = {}
    path = Path(checkpoint) if checkpoint else None
    if path and path.exists() and path.stat().st_size:
        done = _read_checkpoint(path, n_max)
    elif path:
        path.write_text(f"miner n_max {n_max}\n", encoding="utf-8")
    todo = [b for i, b in enumerate(blocks) if i not in done]
    index = {b: i for i, b in enumerate(blocks)}
    if path:
        # process in bounded batches so progress reaches the file
        step = max(1, workers) * 32
        for start in range(0, len(todo), step):
            batch = todo[start:start + step]
            for b, res in zip(batch, _run_blocks(_miner_block, (n_max,), batch, workers)):
                done[index[b]] = res
                _append_checkpoint(path, index[b], res)
    else:
        for b, res in zip(todo, _run_blocks(_miner_block, (n_max,), todo, workers)):
            done[index[b]] = res
    report = MinerReport(n_max)
    for i in range(len(blocks)):
        checked, found, undecided, chain_failures = done[i]
        report.checked += checked
        report.undecided += undecided
        report.chain_failures += chain_failures
        for key in IMPLICATIONS:
            report.witnesses[key].extend(found[key])
    return report


def _append_checkpoint(path: Path, i: int, res) -> None:
    checked, found, undecided, chain = res
    with path.open("a", encoding="utf-8") as fh:
        fh.write(f"block {i} {checked} {undecided} {chain}\n")
        for key in IMPLICATIONS:
            for w in found[key]:
                body = w.rstrip("\n")
                fh.write(f"witness {key}\n{body}\nend\n")
        fh.write(f"done {i}\n")


def _read_checkpoint(path: Path, n_max: int) -> dict[int, tuple]:
    """Completed blocks of a checkpoint; a block without its ``done`` line is
    ignored, so a file cut off mid-write resumes cleanly."""
    out: dict[int, tuple] = {}
    lines = path.read_text(encoding="utf-8").splitlines()
    header = f"miner n_max {n_max}"
    if not lines or lines[0] != header:
        found = lines[0] if lines else "an empty file"
        raise InputError(f"checkpoint {path} was not written for this bound: expected {header!r}, found {found!r}")
    k = 1
    current = None
    while k < len(lines):
        line = lines[k]
        if line.startswith("block "):
            _, i, checked, undecided, chain = line.split()
            current = (int(i), int(checked), {key: [] for key in IMPLICATIONS}, int(undecided), int(chain))
        elif line.startswith("witness ") and current is not None:
            key = line.split()[1]
            body = []
            k += 1
            while k < len(lines) and lines[k] != "end":
                body.append(lines[k])
                k += 1
            current[2][key].append("\n".join(body) + "\n")
        elif line.startswith("done ") and current is not None:
            i, checked, found, undecided, chain = current
            out[i] = (checked, found, undecided, chain)
            current = None
        k += 1
    return out


def count_moore(n: int, up_to_iso: bool = False) -> int:
    return sum(1 for _ in enumerate_moore(n, up_to_iso))


__all__ = [
    "MinerReport",
    "SuiteReport",
    "count_moore",
    "enumerate_maps",
    "enumerate_moore",
    "enumerate_surjections",
    "mine_ladder",
    "moore_count_bruteforce",
    "preorders",
    "spaces_upto",
    "verify_closed_open_effective",
    "verify_descent_is_effective",
    "verify_equivalences",
    "verify_identity_carrier",
    "verify_preorder_descent",
]
