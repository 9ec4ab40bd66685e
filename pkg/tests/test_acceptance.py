"""Acceptance criteria 1-8, one test each.

Every test prints a single ``criterion N: PASS|FAIL`` line (visible with
``-s``) and records it for the summary printed at the end of the run.
"""

from __future__ import annotations

import time

from closure_descent import enumeration as en
from closure_descent import fixtures as fx
from closure_descent.descent import Outcome, decide_effective_descent, identity_carrier_conditions
from closure_descent.maps import descent_conditions, is_closed_map, is_open_map, regular_epi_conditions
from closure_descent.preord import build_preorder_example


def _conclude(acceptance, k: int, label: str, start: float, checks: list[tuple[str, bool]]):
    seconds = time.perf_counter() - start
    failed = [desc for desc, ok in checks if not ok]
    ok = not failed
    acceptance[k] = (label, ok, seconds)
    print(f"criterion {k}: {'PASS' if ok else 'FAIL'}  ({seconds:.1f}s)  {label}")
    assert ok, failed


def test_criterion_1_preorder_example(acceptance):
    start = time.perf_counter()
    ex = build_preorder_example()
    E, pb = ex.E, ex.pb
    pairs = [(E.name(e), E.name(a)) for e, a in pb.pairs]
    z_bar = pb.mask(
        [(E.index(a), E.index(b)) for a, b in
         [("e1", "e1"), ("e2m", "e2m"), ("e2m", "e2p"), ("e3", "e3")]]
    )
    report = identity_carrier_conditions(ex.p, ex.Eprime)
    elapsed = time.perf_counter() - start
    _conclude(acceptance, 1, "preorder example fixtures", start, [
        ("six pullback pairs", len(pairs) == 6),
        ("closure of Z", ex.Z_closure == z_bar),
        ("U closed", pb.space.is_closed(ex.U)),
        ("V closed", pb.space.is_closed(ex.V)),
        ("U ∪ V not closed", not ex.UV_union_closed),
        ("identity-carrier condition (d) false", report.results["d"] is False),
        ("under 1 s", elapsed < 1.0),
    ])


def test_criterion_2_open_maps_example(acceptance):
    start = time.perf_counter()
    fast = decide_effective_descent(fx.p2)
    full = decide_effective_descent(fx.p2, fast_path=False)
    checks = [
        ("p2 open", bool(is_open_map(fx.p2).verdict)),
        ("alpha open", bool(is_open_map(fx.alpha2).verdict)),
        ("beta not open", is_open_map(fx.beta2).verdict is False),
        ("beta not closed", is_closed_map(fx.beta2).verdict is False),
        ("p2 surjective", fx.p2.is_surjective()),
        ("p2 regular epi", bool(regular_epi_conditions(fx.p2).verdict)),
        ("p2 descent", bool(descent_conditions(fx.p2).verdict)),
        ("p2 effective via fast path", fast.outcome is Outcome.EFFECTIVE and fast.route != "enumeration"),
        ("p2 effective via enumeration", full.outcome is Outcome.EFFECTIVE and full.route == "enumeration"),
    ]
    checks.append(("under 10 s", time.perf_counter() - start < 10.0))
    _conclude(acceptance, 2, "open-maps example fixtures", start, checks)


def test_criterion_3_equivalence_suites(acceptance):
    start = time.perf_counter()
    eq = en.verify_equivalences(3)
    ic = en.verify_identity_carrier(3)
    print(eq.to_text())
    print(ic.to_text())
    _conclude(acceptance, 3, "equivalence suites on at most 3 points", start, [
        ("condition groups unanimous, pullback stability cross-checked", eq.ok),
        ("pullbacks were built", eq.counts.get("pullbacks", 0) > 0),
        ("identity-carrier conditions unanimous", ic.ok),
        ("under 10 min", time.perf_counter() - start < 600),
    ])


def test_criterion_4_descent_is_effective(acceptance):
    start = time.perf_counter()
    r = en.verify_descent_is_effective(3, object_level=True)
    print(r.to_text())
    c = r.counts
    _conclude(acceptance, 4, "every descent morphism on at most 3 points is effective", start, [
        ("no violations", r.ok),
        ("every descent morphism decided by enumeration",
         c["decided by enumeration"] == c["descent morphisms"] > 0),
        ("every datum rebuilt and checked as an object", c["data rebuilt as objects"] == c["data checked"]),
        ("zero admissible escalation inputs", c["admissible escalation inputs"] == 0),
        ("escalation scan ran", c["escalation inputs examined"] > 0),
    ])


def test_criterion_5_closed_open_surjections(acceptance):
    start = time.perf_counter()
    r = en.verify_closed_open_effective(3)
    print(r.to_text())
    _conclude(acceptance, 5, "surjective closed/open maps and pullback stability", start, [
        ("no violations", r.ok),
        ("maps checked", r.counts["surjective closed or open maps"] > 0),
        ("pullbacks checked", r.counts["pullbacks"] > 0),
    ])


def test_criterion_6_preorder_criterion(acceptance):
    start = time.perf_counter()
    r = en.verify_preorder_descent(3)
    print(r.to_text())
    _conclude(acceptance, 6, "order-lifting criterion equals descent on at most 3 points", start, [
        ("no violations", r.ok),
        ("monotone surjections checked", r.counts["monotone surjections"] > 0),
    ])


def test_criterion_7_moore_counts(acceptance):
    start = time.perf_counter()
    counts = [en.count_moore(n) for n in range(5)]
    oracle = [en.moore_count_bruteforce(n) for n in range(5)]
    _conclude(acceptance, 7, "Moore family counts 1, 2, 7, 61, 2480", start, [
        ("counts", counts == [1, 2, 7, 61, 2480]),
        ("brute-force oracle agrees", oracle == counts),
        ("under 1 min", time.perf_counter() - start < 60),
    ])


def test_criterion_8_ladder_miner(acceptance):
    start = time.perf_counter()
    one = en.mine_ladder(4, workers=1)
    two = en.mine_ladder(4, workers=2)
    text = one.to_text()
    print(text)
    _conclude(acceptance, 8, "ladder miner on at most 4 points", start, [
        ("a and not b witnessed", len(one.witnesses["a=>b"]) > 0),
        ("c and not d witnessed", len(one.witnesses["c=>d"]) > 0),
        ("no b and not c", one.witnesses["b=>c"] == []),
        ("no undecided effectiveness", one.undecided == 0),
        ("report states the bound", "at most 4 points" in text),
        ("report states the question remains open", "remains open" in text),
        ("byte-identical across worker counts",
         two.to_text(max_listed=10**9) == one.to_text(max_listed=10**9)),
    ])
