"""Reading and writing ``.sp`` poset files.

Format (line oriented, ``#`` starts a comment)::

    poset two-segments
    vertices 2
    face s : 1 2
    face t : 1 2

Vertices are the implicit ids ``1..m``.  A face's rank is one more than the
rank of its facets.  The id ``0`` is reserved for the bottom element.
"""

from __future__ import annotations

import re
from pathlib import Path

from .poset import BOTTOM, PosetError, SimplicialPoset, face_list, validate

_ID = re.compile(r"[^\s:#]+")


class ParseError(PosetError, SyntaxError):
    """Malformed input; also a ``SyntaxError`` so generic handlers catch it."""

    def __init__(self, message: str, line: int, column: int):
        text = f"line {line}, column {column}: {message}"
        PosetError.__init__(self, text)
        self.msg = text
        self.line = self.lineno = line
        self.column = self.offset = column

    def __str__(self):
        return self.msg


def parse_poset(text: str) -> SimplicialPoset:
    name = ""
    m = None
    faces: list[tuple[str, list[str]]] = []
    face_lines: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        stripped = line.strip()
        if not stripped:
            continue
        col = len(line) - len(line.lstrip()) + 1
        keyword, _, rest = stripped.partition(" ")
        rest = rest.strip()
        if keyword == "poset":
            if m is not None or name:
                raise ParseError("'poset' must be the first declaration", lineno, col)
            if not rest or not _ID.fullmatch(rest):
                raise ParseError("expected a poset name", lineno, col + len(keyword) + 1)
            name = rest
        elif keyword == "vertices":
            if m is not None:
                raise ParseError("duplicate 'vertices' declaration", lineno, col)
            if not rest.isdigit():
                raise ParseError(f"expected a vertex count, got {rest!r}", lineno,
                                 col + len(keyword) + 1)
            m = int(rest)
        elif keyword == "face":
            if m is None:
                raise ParseError("'vertices' must come before faces", lineno, col)
            head, colon, tail = rest.partition(":")
            if not colon:
                raise ParseError("expected ':' after the face id", lineno, col + len(line.strip()))
            face_id = head.strip()
            if not _ID.fullmatch(face_id):
                raise ParseError(f"bad face id {face_id!r}", lineno, line.index("face") + 6)
            if face_id == BOTTOM:
                raise ParseError("id '0' is reserved for the bottom element", lineno,
                                 line.index("face") + 6)
            facets = tail.split()
            faces.append((face_id, facets))
            face_lines.setdefault(face_id, lineno)
        else:
            raise ParseError(f"unknown keyword {keyword!r}", lineno, col)
    if m is None:
        raise ParseError("missing 'vertices' declaration", max(1, len(text.splitlines())), 1)
    try:
        return validate(m, faces, name=name)
    except PosetError as exc:
        if exc.face in face_lines:
            exc.args = (f"line {face_lines[exc.face]}: {exc.args[0]}",)
            exc.line = face_lines[exc.face]
        raise


def read_poset(path: str | Path) -> SimplicialPoset:
    S = parse_poset(Path(path).read_text())
    if not S.name:
        S.name = Path(path).stem
    return S


def serialize(S: SimplicialPoset) -> str:
    """Text form of ``S``; vertex ids other than 1..m are replaced by numbers."""
    rename = {x: str(i + 1) for i, x in enumerate(S.vertex_labels)}
    taken = set(rename.values())
    out = []
    if S.name:
        out.append(f"poset {S.name}")
    out.append(f"vertices {S.m}")
    for x, facets in face_list(S):
        new = x
        while new in taken and x not in rename:
            new = new + "'"
        rename.setdefault(x, new)
        taken.add(new)
        out.append(f"face {rename[x]} : " + " ".join(rename[f] for f in facets))
    return "\n".join(out) + "\n"
