"""Line-oriented text format for spaces and maps.

::

    # comment
    space B2
      points: p1 p2
      closed: {p2}, {}          # the ground set is implied
    space X generate            # close the listed sets under intersection
      points: a b c
      closed: {a b}, {b c}
    map f: X -> B2
      send a -> p1
      send b -> p2
      send c -> p2

Point names are any run of characters other than whitespace, braces and
``#``. Closed sets are emitted in ascending mask order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from .core import ClosureSpace, SpaceMap, generate_moore, validate_space
from .errors import InputError

_NAME = r"[A-Za-z_][\w.\-]*"
_SPACE_RE = re.compile(rf"space\s+({_NAME})(\s+generate)?\s*$")
_MAP_RE = re.compile(rf"map\s+({_NAME})\s*:\s*({_NAME})\s*->\s*({_NAME})\s*$")
_POINT_RE = re.compile(r"[^\s{}#]+")
_SET_RE = re.compile(r"\{([^{}]*)\}")


class DocumentError(InputError):
    """A syntax or semantic error at a position of a document."""

    def __init__(self, line: int, column: int, message: str):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


@dataclass
class Document:
    spaces: dict[str, ClosureSpace] = field(default_factory=dict)
    maps: dict[str, SpaceMap] = field(default_factory=dict)
    generated: set[str] = field(default_factory=set, compare=False)
    positions: dict[str, int] = field(default_factory=dict, compare=False)

    def space(self, name: str) -> ClosureSpace:
        try:
            return self.spaces[name]
        except KeyError:
            raise InputError(f"no space named {name!r}") from None

    def map(self, name: str) -> SpaceMap:
        try:
            return self.maps[name]
        except KeyError:
            raise InputError(f"no map named {name!r}") from None

    def space_name(self, space: ClosureSpace) -> str | None:
        for name, s in self.spaces.items():
            if s.same_as(space):
                return name
        return None


def _strip(line: str) -> str:
    return line.split("#", 1)[0].rstrip()


def _parse_sets(text: str, lineno: int, col: int) -> list[list[tuple[str, int]]]:
    """Sets of ``(point, column)`` from ``{a b}, {c}, ...``; ``col`` is the
    column of ``text[0]``."""
    out = []
    pos = len(text) - len(text.lstrip())
    while pos < len(text):
        m = _SET_RE.match(text, pos)
        if not m:
            raise DocumentError(lineno, col + pos, "expected a set such as {a b} or {}")
        inner = m.start(1)
        out.append([(w.group(), col + inner + w.start()) for w in re.finditer(r"\S+", m.group(1))])
        pos = m.end()
        pos += len(text[pos:]) - len(text[pos:].lstrip())
        if pos < len(text):
            if text[pos] != ",":
                raise DocumentError(lineno, col + pos, "expected ',' between sets")
            comma = pos
            pos += 1
            pos += len(text[pos:]) - len(text[pos:].lstrip())
            if pos == len(text):
                raise DocumentError(lineno, col + comma, "trailing ','")
    return out


def parse(text: str) -> Document:
    """Parse a document; closed families are validated unless ``generate`` is given."""
    doc = Document()
    # pending block: ("space", name, generate, points, sets, line) or ("map", ...)
    block: dict | None = None

    def finish() -> None:
        nonlocal block
        if block is None:
            return
        if block["kind"] == "space":
            _finish_space(doc, block)
        else:
            _finish_map(doc, block)
        block = None

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line.strip():
            continue
        indent = len(line) - len(line.lstrip())
        body = line.strip()
        col = indent + 1
        if indent == 0:
            finish()
            m = _SPACE_RE.match(body)
            if m:
                name = m.group(1)
                if name in doc.spaces:
                    raise DocumentError(lineno, col, f"space {name!r} declared twice")
                block = {
                    "kind": "space", "name": name, "generate": bool(m.group(2)),
                    "points": None, "sets": [], "line": lineno,
                }
                continue
            m = _MAP_RE.match(body)
            if m:
                name, dom, cod = m.groups()
                if name in doc.maps:
                    raise DocumentError(lineno, col, f"map {name!r} declared twice")
                for group in (2, 3):
                    if m.group(group) not in doc.spaces:
                        raise DocumentError(lineno, col + m.start(group), f"unknown space {m.group(group)!r}")
                block = {"kind": "map", "name": name, "dom": dom, "cod": cod, "send": {}, "line": lineno}
                continue
            raise DocumentError(lineno, col, "expected 'space <name>' or 'map <name>: <dom> -> <cod>'")
        if block is None:
            raise DocumentError(lineno, col, "indented line outside a declaration")
        if block["kind"] == "space":
            key, sep, rest = body.partition(":")
            key = key.strip()
            body_col = col + body.index(":") + 1 if sep else col
            if not sep or key not in ("points", "closed"):
                raise DocumentError(lineno, col, "expected 'points:' or 'closed:'")
            if key == "points":
                if block["points"] is not None:
                    raise DocumentError(lineno, col, "points listed twice")
                names = rest.split()
                words = list(re.finditer(r"\S+", rest))
                seen: set[str] = set()
                for w in words:
                    if not _POINT_RE.fullmatch(w.group()):
                        raise DocumentError(lineno, body_col + w.start(), f"bad point name {w.group()!r}")
                    if w.group() in seen:
                        raise DocumentError(lineno, body_col + w.start(), "repeated point name")
                    seen.add(w.group())
                block["points"] = names
            else:
                if block["points"] is None:
                    raise DocumentError(lineno, col, "closed sets before points")
                for members in _parse_sets(rest, lineno, body_col):
                    for p, p_col in members:
                        if p not in block["points"]:
                            raise DocumentError(lineno, p_col, f"unknown point {p!r}")
                    block["sets"].append([p for p, _ in members])
        else:
            m = re.fullmatch(r"send\s+(\S+)\s*->\s*(\S+)", body)
            if not m:
                raise DocumentError(lineno, col, "expected 'send <point> -> <point>'")
            src, dst = m.groups()
            dom, cod = doc.spaces[block["dom"]], doc.spaces[block["cod"]]
            if src not in dom.names():
                raise DocumentError(lineno, col + m.start(1), f"unknown point {src!r} of {block['dom']}")
            if dst not in cod.names():
                raise DocumentError(lineno, col + m.start(2), f"unknown point {dst!r} of {block['cod']}")
            if src in block["send"]:
                raise DocumentError(lineno, col, f"point {src!r} sent twice")
            block["send"][src] = dst
    finish()
    return doc


def _finish_space(doc: Document, block: dict) -> None:
    line = block["line"]
    names = block["points"]
    if names is None:
        raise DocumentError(line, 1, f"space {block['name']!r} has no points line")
    idx = {n: i for i, n in enumerate(names)}
    masks = [sum(1 << idx[p] for p in s) for s in block["sets"]]
    full = (1 << len(names)) - 1
    if block["generate"]:
        space = generate_moore(len(names), masks, names)
        doc.generated.add(block["name"])
    else:
        space = ClosureSpace(len(names), tuple(set(masks) | {full}), tuple(names))
        problems = validate_space(space)
        if problems:
            raise DocumentError(line, 1, f"space {block['name']!r}: " + "; ".join(problems))
    doc.spaces[block["name"]] = space
    doc.positions["space " + block["name"]] = line


def _finish_map(doc: Document, block: dict) -> None:
    dom, cod = doc.spaces[block["dom"]], doc.spaces[block["cod"]]
    missing = [p for p in dom.names() if p not in block["send"]]
    if missing:
        raise DocumentError(block["line"], 1, f"map {block['name']!r} sends no image for {', '.join(missing)}")
    doc.maps[block["name"]] = SpaceMap.from_names(dom, cod, block["send"])
    doc.positions["map " + block["name"]] = block["line"]


def parse_file(path: str | Path) -> Document:
    return parse(Path(path).read_text(encoding="utf-8"))


def emit_space(name: str, space: ClosureSpace) -> str:
    sets = ", ".join(space.format_set(c) for c in space.closed)
    return f"space {name}\n  points: {' '.join(space.names())}\n  closed: {sets}\n"


def emit_map_decl(name: str, f: SpaceMap, dom: str, cod: str) -> str:
    lines = [f"map {name}: {dom} -> {cod}"]
    lines += [f"  send {f.dom.name(i)} -> {f.cod.name(v)}" for i, v in enumerate(f.image)]
    return "\n".join(lines) + "\n"


def emit(doc: Document) -> str:
    """Canonical text; spaces first, then maps, each in declaration order."""
    parts = [emit_space(n, s) for n, s in doc.spaces.items()]
    for name, f in doc.maps.items():
        dom = _declared_name(doc, f.dom)
        cod = _declared_name(doc, f.cod)
        parts.append(emit_map_decl(name, f, dom, cod))
    return "".join(parts)


def _declared_name(doc: Document, space: ClosureSpace) -> str:
    name = doc.space_name(space)
    if name is None:
        raise InputError("map refers to an undeclared space")
    return name


def emit_map(f: SpaceMap, name: str = "f") -> str:
    """A self-contained document declaring ``f`` with its two spaces."""
    doc = Document()
    doc.spaces[f"{name}_dom"] = f.dom
    doc.spaces[f"{name}_cod"] = f.cod
    return (
        emit_space(f"{name}_dom", f.dom)
        + emit_space(f"{name}_cod", f.cod)
        + emit_map_decl(name, f, f"{name}_dom", f"{name}_cod")
    )
