from __future__ import annotations

import pytest

from closure_descent import fixtures as fx
from closure_descent.document import DocumentError, emit, emit_map, parse
from closure_descent.golden import BUNDLED, load_document

E2_TEXT = """\
# the four-point space over the Sierpinski space
space E2
  points: m2 m1 p1 p2
  closed: {}, {m2 p2}, {p1 p2}, {p2}
space B2
  points: p1 p2
  closed: {}, {p2}
map p2: E2 -> B2
  send m2 -> p2
  send m1 -> p1
  send p1 -> p1
  send p2 -> p2
"""


def test_parse_fixture_listing():
    doc = parse(E2_TEXT)
    assert len(doc.space("E2").closed) == 5
    assert doc.space("E2").same_as(fx.E2)
    assert doc.map("p2") == fx.p2
    assert doc.positions["map p2"] == 8


def test_parse_one_point_space():
    doc = parse("space S\n points: a\n closed: {a}\n")
    S = doc.space("S")
    assert S.n == 1 and S.closed == (1,)


def test_generate_closes_under_intersection():
    doc = parse("space X generate\n  points: a b c\n  closed: {a b}, {b c}\n")
    assert doc.space("X").closed == (0b010, 0b011, 0b110, 0b111)
    assert "X" in doc.generated


def test_missing_intersection_names_the_pair():
    with pytest.raises(DocumentError) as info:
        parse("space X\n  points: a b c\n  closed: {a b}, {b c}\n")
    assert info.value.line == 1
    assert "{b} = {a b} ∩ {b c}" in str(info.value)


@pytest.mark.parametrize(
    "text, line, column, fragment",
    [
        ("spaces X\n", 1, 1, "expected 'space"),
        ("  points: a\n", 1, 3, "outside a declaration"),
        ("space X\n  points: a\n  closed: {b}\n", 3, 12, "unknown point 'b'"),
        ("space X\n  points: ab\n  closed: {ab}, {a}\n", 3, 18, "unknown point 'a'"),
        ("space X\n  points: a\n  closed: {a}, \n", 3, 14, "trailing ','"),
        ("space X\n  points: a\n  closed: {a} {a}\n", 3, 15, "expected ','"),
        ("space X\n  points: a a\n", 2, 13, "repeated point name"),
        ("space X\n  closed: {}\n", 2, 3, "closed sets before points"),
        ("space X\n  points: a\nspace X\n  points: b\n", 3, 1, "declared twice"),
        ("space X\n  points: a\nmap f: X -> Y\n", 3, 13, "unknown space 'Y'"),
        ("space X\n  points: a\nmap Yf: X -> Y\n", 3, 14, "unknown space 'Y'"),
        ("space X\n  points: a\nmap f: X -> X\n  send b -> a\n", 4, 8, "unknown point 'b'"),
        ("space X\n  points: a\nmap f: X -> X\n  send a -> a\n  send a -> a\n", 5, 3, "sent twice"),
        ("space X\n  points: a b\nmap f: X -> X\n  send a -> a\n", 3, 1, "no image for b"),
        ("space X\n  points: a\n  colour: red\n", 3, 3, "expected 'points:'"),
        ("space X\n", 1, 1, "no points line"),
    ],
)
def test_errors_carry_positions(text, line, column, fragment):
    with pytest.raises(DocumentError) as info:
        parse(text)
    assert (info.value.line, info.value.column) == (line, column), str(info.value)
    if fragment:
        assert fragment in str(info.value)


def test_round_trip():
    doc = parse(E2_TEXT)
    again = parse(emit(doc))
    assert again == doc
    assert emit(again) == emit(doc)


@pytest.mark.parametrize("name", BUNDLED)
def test_bundled_documents_are_canonical(name):
    doc = load_document(name)
    assert parse(emit(doc)) == doc


def test_emit_map_is_self_contained(ex):
    doc = parse(emit_map(ex.p, "p"))
    assert doc.map("p") == ex.p
    assert set(doc.spaces) == {"p_dom", "p_cod"}
