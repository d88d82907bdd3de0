"""Plain-text serialization of ideals and graded matrices.

Formats are line-oriented and diffable:

* ideal file: one polynomial per line (`3*x0^2*x4 - x1*x2*x3`), `#` comments;
* matrix file: a `rows` line with the target twists, a `cols` line with the
  source twists, then one line per target row with comma-separated entries.

Every writer/reader pair round-trips exactly.
"""

from __future__ import annotations

from pathlib import Path

from .errors import ParseError, ShapeError
from .modules import FreeModule, GradedMatrix
from .ring import Poly, PolyRing


def format_poly(f: Poly) -> str:
    return str(f)


def parse_poly(ring: PolyRing, text: str, line: int = None) -> Poly:
    try:
        return ring.parse(text)
    except ParseError as e:
        raise ParseError(e.message, line=line, column=e.column) from None


def format_ideal(gens) -> str:
    return "\n".join(format_poly(g) for g in gens) + "\n"


def parse_ideal(ring: PolyRing, text: str):
    gens = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        gens.append(parse_poly(ring, line, line=lineno))
    return gens


def write_ideal(path, gens):
    Path(path).write_text(format_ideal(gens))


def read_ideal(ring: PolyRing, path):
    return parse_ideal(ring, Path(path).read_text())


def format_matrix(mat: GradedMatrix) -> str:
    lines = [
        "rows " + ",".join(str(t) for t in mat.target.twists),
        "cols " + ",".join(str(t) for t in mat.source.twists),
    ]
    for i in range(mat.target.rank):
        lines.append(", ".join(format_poly(mat.entry(i, j))
                               for j in range(mat.source.rank)))
    return "\n".join(lines) + "\n"


def _parse_twists(line: str, keyword: str, lineno: int):
    if not line.startswith(keyword):
        raise ParseError(f"expected a {keyword!r} line", line=lineno)
    body = line[len(keyword):].strip()
    if not body:
        return ()
    try:
        return tuple(int(t) for t in body.split(","))
    except ValueError:
        raise ParseError(f"bad twist list {body!r}", line=lineno) from None


def parse_matrix(ring: PolyRing, text: str) -> GradedMatrix:
    lines = [l for l in text.splitlines()
             if l.split("#", 1)[0].strip()]
    if len(lines) < 2:
        raise ParseError("matrix file needs rows and cols header lines", line=1)
    tgt = _parse_twists(lines[0].strip(), "rows", 1)
    src = _parse_twists(lines[1].strip(), "cols", 2)
    body = lines[2:]
    if len(body) != len(tgt):
        raise ShapeError(f"expected {len(tgt)} entry rows, found {len(body)}")
    rows = []
    for lineno, raw in enumerate(body, start=3):
        cells = raw.split("#", 1)[0].split(",")
        if len(cells) != len(src):
            raise ParseError(f"expected {len(src)} entries", line=lineno)
        rows.append([parse_poly(ring, c.strip(), line=lineno) for c in cells])
    target = FreeModule(ring, tgt)
    source = FreeModule(ring, src)
    return GradedMatrix.from_rows(target, source, rows)


def write_matrix(path, mat: GradedMatrix):
    Path(path).write_text(format_matrix(mat))


def read_matrix(ring: PolyRing, path) -> GradedMatrix:
    return parse_matrix(ring, Path(path).read_text())
