"""Plain-text matroid files.

::

    MATROID <name> N=<n> R=<r>
    BASES                      # one r-subset of 0-based indices per line
    0 1 2
    ...

The body is one of ``BASES``, ``MATRIX GF(p)`` (r rows of n entries) or
``GRAPH`` (lines ``u v label``).  An optional ``LABELS`` line names the
elements.  ``#`` starts a comment.  Files are ASCII with LF line endings.
"""

from __future__ import annotations

import re
from pathlib import Path

from .constructions import GraphSpec
from .errors import MatroidError, ParseError
from .matroid import Matroid

_HEADER = re.compile(r"MATROID\s+(\S+)\s+N=(\d+)\s+R=(\d+)\s*$")
_FIELD = re.compile(r"MATRIX\s+GF\((\d+)\)\s*$")


def _tokens(line: str):
    """(column, token) pairs, columns 1-based."""
    return [(m.start() + 1, m.group()) for m in re.finditer(r"\S+", line)]


def _int(tok: tuple[int, str], lineno: int) -> int:
    col, text = tok
    try:
        return int(text)
    except ValueError:
        raise ParseError(f"expected an integer, got {text!r}", lineno, col) from None


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p**0.5) + 1))


def parse_matroid_text(text: str, source: str | None = None) -> Matroid:
    lines = []
    for i, raw in enumerate(text.split("\n"), start=1):
        line = raw.split("#", 1)[0].rstrip("\r")
        if line.strip():
            lines.append((i, line))
    if not lines:
        raise ParseError("empty file", 1, 1)
    lineno, head = lines[0]
    m = _HEADER.match(head.strip())
    if not m:
        raise ParseError("expected 'MATROID <name> N=<n> R=<r>'", lineno, 1)
    name, n, r = m.group(1), int(m.group(2)), int(m.group(3))
    if r > n:
        raise ParseError("rank exceeds size", lineno, head.index("R=") + 1)
    body = lines[1:]
    labels = None
    if body and body[0][1].strip().startswith("LABELS"):
        lineno, line = body[0]
        toks = _tokens(line)[1:]
        if len(toks) != n:
            raise ParseError(f"expected {n} labels, got {len(toks)}", lineno, 1)
        labels = [t for _, t in toks]
        body = body[1:]
    if not body:
        raise ParseError("missing BASES, MATRIX or GRAPH section", lineno, 1)
    lineno, sect = body[0]
    rows = body[1:]
    kw = sect.strip()
    try:
        if kw == "BASES":
            M = _parse_bases(rows, n, r, labels, name)
        elif kw.startswith("MATRIX"):
            fm = _FIELD.match(kw)
            if not fm or not _is_prime(int(fm.group(1))):
                raise ParseError("expected 'MATRIX GF(<prime>)'", lineno, 1)
            M = _parse_matrix(rows, n, r, int(fm.group(1)), labels, name)
        elif kw == "GRAPH":
            M = _parse_graph(rows, n, r, labels, name)
        else:
            raise ParseError(f"unknown section {kw!r}", lineno, 1)
    except MatroidError as exc:
        raise ParseError(str(exc), lineno, 1) from None
    if source is not None:
        M.source = source
    return M


def _parse_bases(rows, n, r, labels, name) -> Matroid:
    masks = []
    seen = set()
    for lineno, line in rows:
        toks = _tokens(line)
        if len(toks) != r:
            raise ParseError(f"basis must have {r} elements", lineno, toks[0][0] if toks else 1)
        m = 0
        for tok in toks:
            v = _int(tok, lineno)
            if not 0 <= v < n:
                raise ParseError(f"index {v} out of range", lineno, tok[0])
            if m >> v & 1:
                raise ParseError(f"repeated index {v}", lineno, tok[0])
            m |= 1 << v
        if m in seen:
            raise ParseError("repeated basis", lineno, 1)
        seen.add(m)
        masks.append(m)
    if not masks and r == 0:
        masks = [0]
    if not masks:
        raise ParseError("no bases", rows[0][0] if rows else 1, 1)
    try:
        return Matroid(masks, n, labels=labels, name=name)
    except MatroidError as exc:
        raise ParseError(f"not a matroid: {exc}", rows[0][0], 1) from None


def _parse_matrix(rows, n, r, p, labels, name) -> Matroid:
    if len(rows) != r:
        line = rows[-1][0] if rows else 1
        raise ParseError(f"expected {r} matrix rows, got {len(rows)}", line, 1)
    mat = []
    for lineno, line in rows:
        toks = _tokens(line)
        if len(toks) != n:
            raise ParseError(f"expected {n} entries, got {len(toks)}", lineno, 1)
        mat.append([_int(t, lineno) % p for t in toks])
    M = Matroid.from_matrix(mat, p, labels=labels, name=name)
    if M.r != r:
        raise ParseError(f"matrix has rank {M.r}, header says {r}", rows[0][0], 1)
    return M


def _parse_graph(rows, n, r, labels, name) -> Matroid:
    if len(rows) != n:
        line = rows[-1][0] if rows else 1
        raise ParseError(f"expected {n} edges, got {len(rows)}", line, 1)
    edges, elabels = [], []
    for lineno, line in rows:
        toks = _tokens(line)
        if len(toks) not in (2, 3):
            raise ParseError("edge lines are 'u v [label]'", lineno, 1)
        u, v = _int(toks[0], lineno), _int(toks[1], lineno)
        if u < 0 or v < 0:
            raise ParseError("vertices are non-negative", lineno, toks[0][0])
        edges.append((u, v))
        elabels.append(toks[2][1] if len(toks) == 3 else str(len(edges) - 1))
    M = Matroid.from_graph(edges, labels=labels or elabels, name=name)
    if M.r != r:
        raise ParseError(f"graph has rank {M.r}, header says {r}", rows[0][0], 1)
    return M


def parse_graph_text(text: str) -> GraphSpec:
    """The graph of a GRAPH-format file."""
    M = parse_matroid_text(text)
    rows = [ln.split("#", 1)[0].split() for ln in text.split("\n")]
    start = next(i for i, t in enumerate(rows) if t == ["GRAPH"])
    edges = [(int(t[0]), int(t[1])) for t in rows[start + 1:] if t]
    nv = 1 + max(max(e) for e in edges) if edges else 0
    return GraphSpec(nv, edges, M.labels, M.name)


def parse_matroid(path) -> Matroid:
    path = Path(path)
    try:
        raw = path.read_bytes()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}", 0, 0) from None
    try:
        text = raw.decode("ascii")
    except UnicodeDecodeError as exc:
        line = raw[: exc.start].count(b"\n") + 1
        raise ParseError("file is not ASCII", line, exc.start - raw.rfind(b"\n", 0, exc.start)) from None
    return parse_matroid_text(text, source=str(path))


def _safe_name(name: str) -> str:
    return re.sub(r"\s+", "_", name) or "M"


def format_matroid(M: Matroid, graph: GraphSpec | None = None) -> str:
    out = [f"MATROID {_safe_name(M.name)} N={M.n} R={M.r}"]
    default = tuple(str(i) for i in range(M.n))
    if graph is not None:
        out.append("GRAPH")
        for (u, v), lab in zip(graph.edges, M.labels):
            out.append(f"{u} {v} {lab}")
        return "\n".join(out) + "\n"
    if M.labels != default and all(re.fullmatch(r"[^\s#]+", x) for x in M.labels):
        out.append("LABELS " + " ".join(M.labels))
    out.append("BASES")
    for b in sorted(M.basis_masks(), key=lambda m: [e for e in range(M.n) if m >> e & 1]):
        out.append(" ".join(str(e) for e in range(M.n) if b >> e & 1))
    return "\n".join(out) + "\n"


def write_matroid(M: Matroid, path, graph: GraphSpec | None = None) -> None:
    Path(path).write_bytes(format_matroid(M, graph).encode("ascii"))


__all__ = [
    "format_matroid",
    "parse_graph_text",
    "parse_matroid",
    "parse_matroid_text",
    "write_matroid",
]
