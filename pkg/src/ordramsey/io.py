"""Text formats for ordered graphs (.og), pair colorings (.okc), digraphs (.dg)
and tournaments (.trn).

.og   line 1 "n m"; then m lines "i j" with i < j, in ascending lexicographic order.
.okc  line 1 "N"; then N-1 lines, line k holding N-k characters from {R, B} for
      the pairs (k, k+1) .. (k, N).
.dg   line 1 "n m"; then m lines "u v", one arc per line.
.trn  line 1 "N"; then one line per pair (i, j), i < j, in colex order, holding
      '>' for the arc i->j or '<' for the arc j->i.

Parsers reject duplicate edges/arcs and any trailing garbage.
"""

from __future__ import annotations

from .core import ColoredCompleteGraph, Digraph, OrderedGraph, Tournament
from .errors import ParseError


def _lines(text: str) -> list[str]:
    lines = text.split("\n")
    while lines and lines[-1] == "":
        lines.pop()
    return lines


def _ints(line: str, count: int, lineno: int) -> list[int]:
    parts = line.split()
    if len(parts) != count:
        raise ParseError(f"expected {count} integers, got {line!r}", lineno)
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise ParseError(f"non-integer token in {line!r}", lineno) from None


def parse_og(text: str) -> OrderedGraph:
    lines = _lines(text)
    if not lines:
        raise ParseError("empty input", 1)
    n, m = _ints(lines[0], 2, 1)
    if n < 0 or m < 0:
        raise ParseError("n and m must be nonnegative", 1)
    if len(lines) != 1 + m:
        raise ParseError(f"expected {m} edge lines, found {len(lines) - 1}", len(lines))
    edges = []
    prev = None
    for k in range(m):
        lineno = 2 + k
        i, j = _ints(lines[1 + k], 2, lineno)
        if not (1 <= i < j <= n):
            raise ParseError(f"edge ({i}, {j}) is not 1 <= i < j <= {n}", lineno)
        if prev is not None:
            if (i, j) == prev:
                raise ParseError(f"duplicate edge ({i}, {j})", lineno)
            if (i, j) < prev:
                raise ParseError(f"edge ({i}, {j}) out of ascending order", lineno)
        prev = (i, j)
        edges.append((i, j))
    return OrderedGraph(n, edges)


def write_og(g: OrderedGraph) -> str:
    out = [f"{g.n} {g.m}"]
    out.extend(f"{i} {j}" for i, j in g.sorted_edges())
    return "\n".join(out) + "\n"


def parse_okc(text: str) -> ColoredCompleteGraph:
    lines = _lines(text)
    if not lines:
        raise ParseError("empty input", 1)
    (n_val,) = _ints(lines[0], 1, 1)
    if n_val < 0:
        raise ParseError("N must be nonnegative", 1)
    expected = max(0, n_val - 1)
    if len(lines) != 1 + expected:
        raise ParseError(f"expected {expected} row lines, found {len(lines) - 1}", len(lines))
    red = []
    for k in range(1, n_val):
        lineno = 1 + k
        row = lines[k]
        if len(row) != n_val - k:
            raise ParseError(f"row {k} must hold {n_val - k} characters, got {len(row)}", lineno)
        for offset, ch in enumerate(row):
            if ch == "R":
                red.append((k, k + 1 + offset))
            elif ch != "B":
                raise ParseError(f"invalid color character {ch!r}", lineno)
    return ColoredCompleteGraph.from_red_edges(n_val, red)


def write_okc(c: ColoredCompleteGraph) -> str:
    out = [str(c.N)]
    for k in range(1, c.N):
        row = "".join(
            "R" if c.red_rows[k] & (1 << j) else "B" for j in range(k + 1, c.N + 1)
        )
        out.append(row)
    return "\n".join(out) + "\n"


def parse_dg(text: str) -> Digraph:
    lines = _lines(text)
    if not lines:
        raise ParseError("empty input", 1)
    n, m = _ints(lines[0], 2, 1)
    if n < 0 or m < 0:
        raise ParseError("n and m must be nonnegative", 1)
    if len(lines) != 1 + m:
        raise ParseError(f"expected {m} arc lines, found {len(lines) - 1}", len(lines))
    arcs = []
    seen = set()
    for k in range(m):
        lineno = 2 + k
        u, v = _ints(lines[1 + k], 2, lineno)
        if u == v or not (1 <= u <= n and 1 <= v <= n):
            raise ParseError(f"arc ({u}, {v}) out of range for 1..{n}", lineno)
        if (u, v) in seen:
            raise ParseError(f"duplicate arc ({u}, {v})", lineno)
        seen.add((u, v))
        arcs.append((u, v))
    return Digraph(n, arcs)


def write_dg(d: Digraph) -> str:
    out = [f"{d.n} {len(d.arcs)}"]
    out.extend(f"{u} {v}" for u, v in sorted(d.arcs))
    return "\n".join(out) + "\n"


def parse_trn(text: str) -> Tournament:
    lines = _lines(text)
    if not lines:
        raise ParseError("empty input", 1)
    (n_val,) = _ints(lines[0], 1, 1)
    if n_val < 0:
        raise ParseError("N must be nonnegative", 1)
    expected = n_val * (n_val - 1) // 2
    if len(lines) != 1 + expected:
        raise ParseError(f"expected {expected} pair lines, found {len(lines) - 1}", len(lines))
    arcs = []
    k = 1
    for j in range(2, n_val + 1):
        for i in range(1, j):
            lineno = 1 + k
            ch = lines[k]
            if ch == ">":
                arcs.append((i, j))
            elif ch == "<":
                arcs.append((j, i))
            else:
                raise ParseError(f"expected '>' or '<', got {lines[k]!r}", lineno)
            k += 1
    return Tournament.from_arcs(n_val, arcs)


def write_trn(t: Tournament) -> str:
    out = [str(t.N)]
    for j in range(2, t.N + 1):
        for i in range(1, j):
            out.append(">" if t.has_arc(i, j) else "<")
    return "\n".join(out) + "\n"


_PARSERS = {".og": parse_og, ".okc": parse_okc, ".dg": parse_dg, ".trn": parse_trn}
_WRITERS = {
    OrderedGraph: write_og,
    ColoredCompleteGraph: write_okc,
    Digraph: write_dg,
    Tournament: write_trn,
}


def load_path(path):
    """Parse a file by its extension."""
    from pathlib import Path

    p = Path(path)
    parser = _PARSERS.get(p.suffix)
    if parser is None:
        raise ParseError(f"unknown file extension {p.suffix!r} for {p}")
    return parser(p.read_text())


def save_path(path, obj) -> None:
    from pathlib import Path

    writer = _WRITERS.get(type(obj))
    if writer is None:
        raise ParseError(f"no writer for {type(obj).__name__}")
    Path(path).write_text(writer(obj))


__all__ = [
    "parse_og",
    "write_og",
    "parse_okc",
    "write_okc",
    "parse_dg",
    "write_dg",
    "parse_trn",
    "write_trn",
    "load_path",
    "save_path",
]
