"""Golden facts about the two worked examples, each checked independently.

Each check returns ``(description, ok)`` pairs; the CLI prints them and the
acceptance tests assert them.
"""

from __future__ import annotations

from importlib import resources

from . import fixtures as fx
from .constructions import pullback, pullback_closure, subspace
from .descent import (
    Outcome,
    comparison_K,
    decide_effective_descent,
    identity_carrier_conditions,
    identity_carrier_datum,
    validate_descent_data,
)
from .document import Document, parse
from .maps import descent_conditions, is_closed_map, is_open_map, regular_epi_conditions

Fact = tuple[str, bool]


def load_document(name: str) -> Document:
    """One of the bundled example documents (``preorder_example`` or ``open_maps_example``)."""
    text = resources.files("closure_descent.data").joinpath(f"{name}.cls").read_text(encoding="utf-8")
    return parse(text)


BUNDLED = ("preorder_example", "open_maps_example")


def preorder_facts() -> list[Fact]:
    ex = fx.preorder_example()
    pb, E = ex.pb, ex.E
    doc = load_document("preorder_example")

    def pair_mask(pairs):
        return pb.mask([(E.index(a), E.index(b)) for a, b in pairs])

    expected_pairs = [
        ("e1", "e1"), ("e2m", "e2m"), ("e2m", "e2p"), ("e2p", "e2m"), ("e2p", "e2p"), ("e3", "e3"),
    ]
    z_bar = pair_mask([("e1", "e1"), ("e2m", "e2m"), ("e2m", "e2p"), ("e3", "e3")])
    U, V = ex.U, ex.V
    report = identity_carrier_conditions(ex.p, ex.Eprime)
    datum_problems = validate_descent_data(identity_carrier_datum(ex.p, ex.Eprime))
    return [
        ("document matches the programmatic spaces and maps",
         doc.space("E").same_as(E) and doc.space("Eprime").same_as(ex.Eprime)
         and doc.space("B").same_as(ex.B) and doc.map("p") == ex.p
         and doc.map("p_prime") == ex.p_prime),
        ("E has 8 closed sets and E' has 9", len(E.closed) == 8 and len(ex.Eprime.closed) == 9),
        ("pullback E x_B E' has exactly the 6 listed pairs",
         [(E.name(e), E.name(a)) for e, a in pb.pairs] == expected_pairs),
        ("closure of Z is {(e1,e1) (e2m,e2m) (e2m,e2p) (e3,e3)}", ex.Z_closure == z_bar),
        ("closure of Z via the projection formula agrees", pullback_closure(pb, ex.Z) == z_bar),
        ("U is closed", pb.space.is_closed(U)),
        ("V is closed", pb.space.is_closed(V)),
        ("U ∪ V is not closed", not ex.UV_union_closed),
        ("the first projection E x_B E' -> E' is not continuous (condition d false)",
         report.premise_ok and report.results["d"] is False),
        ("all identity-carrier conditions are false", not any(report.results.values())),
        ("(E', 1_E, pi1) is rejected as descent data", bool(datum_problems)),
        ("p is a descent morphism", bool(descent_conditions(ex.p).verdict)),
        ("p is effective (full enumeration)",
         decide_effective_descent(ex.p, fast_path=False).outcome is Outcome.EFFECTIVE),
        ("p is not a closed map", is_closed_map(ex.p).verdict is False),
    ]


def open_maps_facts() -> list[Fact]:
    doc = load_document("open_maps_example")
    p2, alpha, beta = fx.p2, fx.alpha2, fx.beta2
    fast = decide_effective_descent(p2)
    full = decide_effective_descent(p2, fast_path=False)
    pb = pullback(p2, alpha)
    sub, incl = subspace(fx.B2, fx.B2.mask(["p1"]))
    K = comparison_K(p2, fx.A2, alpha)
    return [
        ("document matches the programmatic spaces and maps",
         doc.space("E2").same_as(fx.E2) and doc.space("B2").same_as(fx.B2)
         and doc.space("A2").same_as(fx.A2) and doc.space("PB2").same_as(fx.PB2)
         and doc.map("p2") == p2 and doc.map("alpha") == alpha and doc.map("beta") == beta),
        ("p2 is open", bool(is_open_map(p2).verdict)),
        ("alpha is open", bool(is_open_map(alpha).verdict)),
        ("beta is not open", is_open_map(beta).verdict is False),
        ("beta is not closed", is_closed_map(beta).verdict is False),
        ("p2 is surjective", p2.is_surjective()),
        ("p2 is a regular epi", bool(regular_epi_conditions(p2).verdict)),
        ("p2 is a descent morphism", bool(descent_conditions(p2).verdict)),
        (f"p2 is effective via the fast path ({fast.route})",
         fast.outcome is Outcome.EFFECTIVE and fast.route != "enumeration"),
        (f"p2 is effective via full enumeration ({full.data} data)",
         full.outcome is Outcome.EFFECTIVE and full.route == "enumeration"),
        ("pullback of p2 along alpha is PB2 with projection beta",
         pb.space == fx.PB2 and pb.proj1.image == beta.image),
        ("the subspace {p1} of B2 is A2", sub == fx.A2 and incl.image == alpha.image),
        ("the canonical datum over alpha is valid", not validate_descent_data(K)),
    ]


SUITES = {"s5": preorder_facts, "s73": open_maps_facts}
