"""QIDML: a tiny textual language for quantum information diagrams.

A diagram is a directed multigraph of measurement (M) and unitary (U)
vertices joined by species-typed edges (c, q, qbar, e, ebar), with
``in``/``out`` as reserved boundary names::

    # teleportation
    diagram teleport
    vertex M : M
    vertex U : U
    edge q_in  : q   in -> M
    edge cc    : c*2 M  -> U
    edge epr   : e   U  -> M backward
    edge q_out : q   U  -> out

Files are UTF-8, line-oriented, whitespace-insensitive within lines, with
``#`` comments. ``c*2`` gives an edge multiplicity of two classical bits.

Edge orientation carries the bookkeeping: a forward edge ``s A -> B`` is
an output of A and an input of B. A backward edge is an EPR-style
resource line: it delivers its species as an input at the ``to`` end and
the antispecies as an input at the ``from`` end (total ledger weight 0,
like a pair drawn from the information vacuum). Ledger conservation at
each interior vertex is then: incoming bits == outgoing bits.

Time reversal of an e/ebar edge toggles its species, swaps its endpoints
and flips its orientation; conservation verdicts are unchanged.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from importlib import resources
from pathlib import Path

from .entropy import ANTI_CODE, CODE_TO_TAG, Species, VertexCheck, ledger_value

SPECIES = ("c", "q", "qbar", "e", "ebar")
REVERSIBLE = ("e", "ebar")
BOUNDARY_NAMES = ("in", "out")


class ParseError(Exception):
    """A positioned QIDML error (lexical, syntactic, or structural)."""

    def __init__(self, message: str, line: int, col: int, expected: tuple[str, ...] = ()):
        self.message = message
        self.line = line
        self.col = col
        self.expected = expected
        suffix = f" (expected {', '.join(expected)})" if expected else ""
        super().__init__(f"{line}:{col}: {message}{suffix}")


class RewriteError(ValueError):
    """Edge rewrite request that cannot be applied."""


@dataclass(frozen=True)
class Vertex:
    name: str
    kind: str  # "M" | "U"


@dataclass(frozen=True)
class Edge:
    id: str
    species: str
    multiplicity: int
    src: str
    dst: str
    backward: bool = False


@dataclass(frozen=True)
class Diagram:
    name: str
    vertices: tuple[Vertex, ...]
    edges: tuple[Edge, ...]

    def vertex_names(self) -> set[str]:
        return {v.name for v in self.vertices}

    def edge(self, edge_id: str) -> Edge:
        for e in self.edges:
            if e.id == edge_id:
                return e
        raise RewriteError(f"no edge with id {edge_id!r}")


_TOKEN = re.compile(r"[A-Za-z_][A-Za-z0-9_]*|\d+|->|[:*]")


def _tokenize_line(text: str, lineno: int) -> list[tuple[str, int]]:
    """Tokens of one line as (token, 1-based column); '#' starts a comment."""
    hash_pos = text.find("#")
    if hash_pos != -1:
        text = text[:hash_pos]
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"illegal character {text[pos]!r}", lineno, pos + 1)
        tokens.append((m.group(), pos + 1))
        pos = m.end()
    return tokens


class _LineParser:
    def __init__(self, tokens: list[tuple[str, int]], lineno: int):
        self.tokens = tokens
        self.lineno = lineno
        self.i = 0

    def peek(self) -> str | None:
        return self.tokens[self.i][0] if self.i < len(self.tokens) else None

    def col(self) -> int:
        if self.i < len(self.tokens):
            return self.tokens[self.i][1]
        return self.tokens[-1][1] + len(self.tokens[-1][0]) if self.tokens else 1

    def take(self, *expected: str) -> str:
        tok = self.peek()
        if tok is None or (expected and tok not in expected):
            raise ParseError(
                f"unexpected {'end of line' if tok is None else repr(tok)}",
                self.lineno,
                self.col(),
                expected or ("token",),
            )
        self.i += 1
        return tok

    def take_name(self, what: str) -> str:
        tok = self.peek()
        if tok is None or not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", tok):
            raise ParseError(
                f"unexpected {'end of line' if tok is None else repr(tok)}",
                self.lineno,
                self.col(),
                (what,),
            )
        self.i += 1
        return tok

    def done(self):
        if self.peek() is not None:
            raise ParseError(
                f"trailing {self.peek()!r}", self.lineno, self.col(), ("end of line",)
            )


def parse(text: str) -> Diagram:
    """Parse QIDML text into a validated Diagram."""
    name = None
    vertices: list[Vertex] = []
    vertex_pos: dict[str, tuple[int, int]] = {}
    edges: list[Edge] = []
    edge_pos: dict[str, tuple[int, int]] = {}

    for lineno, raw in enumerate(text.split("\n"), start=1):
        tokens = _tokenize_line(raw, lineno)
        if not tokens:
            continue
        lp = _LineParser(tokens, lineno)
        keyword = lp.take("diagram", "vertex", "edge")
        if keyword == "diagram":
            if name is not None:
                raise ParseError("duplicate diagram header", lineno, tokens[0][1])
            name = lp.take_name("diagram name")
            lp.done()
            continue
        if name is None:
            raise ParseError("missing diagram header", lineno, tokens[0][1], ("diagram",))
        if keyword == "vertex":
            col = lp.col()
            vname = lp.take_name("vertex name")
            if vname in BOUNDARY_NAMES:
                raise ParseError(f"{vname!r} is a reserved boundary name", lineno, col)
            if vname in vertex_pos:
                raise ParseError(f"duplicate vertex {vname!r}", lineno, col)
            lp.take(":")
            kind = lp.take("M", "U")
            lp.done()
            vertices.append(Vertex(vname, kind))
            vertex_pos[vname] = (lineno, col)
        else:
            col = lp.col()
            eid = lp.take_name("edge id")
            if eid in edge_pos:
                raise ParseError(f"duplicate edge id {eid!r}", lineno, col)
            lp.take(":")
            species = lp.take(*SPECIES)
            mult = 1
            if lp.peek() == "*":
                lp.take("*")
                mcol = lp.col()
                mtok = lp.take()
                if not mtok.isdigit() or int(mtok) < 1:
                    raise ParseError(f"bad multiplicity {mtok!r}", lineno, mcol, ("positive integer",))
                mult = int(mtok)
            src = lp.take_name("source vertex")
            lp.take("->")
            dst = lp.take_name("destination vertex")
            backward = False
            if lp.peek() == "backward":
                lp.take("backward")
                backward = True
            lp.done()
            if backward and species not in REVERSIBLE:
                raise ParseError(
                    f"backward orientation is only defined for e/ebar, not {species!r}",
                    lineno,
                    col,
                )
            edges.append(Edge(eid, species, mult, src, dst, backward))
            edge_pos[eid] = (lineno, col)

    if name is None:
        raise ParseError("empty input", 1, 1, ("diagram",))

    declared = set(vertex_pos)
    for e in edges:
        for endpoint in (e.src, e.dst):
            if endpoint not in declared and endpoint not in BOUNDARY_NAMES:
                lineno, col = edge_pos[e.id]
                raise ParseError(f"edge {e.id!r} references undeclared vertex {endpoint!r}", lineno, col)

    incoming = {v: 0 for v in declared}
    outgoing = {v: 0 for v in declared}
    for e in edges:
        if e.dst in declared:
            incoming[e.dst] += 1
        if e.src in declared:
            outgoing[e.src] += 1
    for v in vertices:
        if not incoming[v.name] or not outgoing[v.name]:
            lineno, col = vertex_pos[v.name]
            raise ParseError(
                f"vertex {v.name!r} needs at least one incoming and one outgoing edge",
                lineno,
                col,
            )

    return Diagram(name, tuple(vertices), tuple(edges))


def _edge_contributions(e: Edge) -> list[tuple[str, str, str]]:
    """(vertex, 'in'|'out', species-code) pairs contributed by one edge."""
    if e.backward:
        return [(e.dst, "in", e.species), (e.src, "in", ANTI_CODE[e.species])]
    return [(e.src, "out", e.species), (e.dst, "in", e.species)]


def validate_conservation(d: Diagram) -> list[VertexCheck]:
    """Ledger balance per interior vertex: sum(in) == sum(out)."""
    flows: dict[str, dict[str, list[int]]] = {
        v.name: {"in": [], "out": []} for v in d.vertices
    }
    for e in d.edges:
        for vertex, side, code in _edge_contributions(e):
            if vertex in flows:
                flows[vertex][side].append(ledger_value(Species(CODE_TO_TAG[code], e.multiplicity)))
    checks = []
    for v in d.vertices:
        in_terms = flows[v.name]["in"]
        in_bits = sum(in_terms)
        out_bits = sum(flows[v.name]["out"])
        rule = "+".join(f"{t:d}" for t in in_terms).replace("+-", "-") or "0"
        checks.append(VertexCheck(v.name, in_bits, out_bits, rule=f"{rule}={out_bits:d}"))
    return checks


def time_reverse_edge(d: Diagram, edge_id: str) -> Diagram:
    """Flip one e/ebar edge's time orientation (species toggles with it)."""
    e = d.edge(edge_id)
    if e.species not in REVERSIBLE:
        raise RewriteError(f"species {e.species!r} is not reversible (only e/ebar)")
    flipped = replace(
        e, species=ANTI_CODE[e.species], src=e.dst, dst=e.src, backward=not e.backward
    )
    out = Diagram(d.name, d.vertices, tuple(flipped if x.id == edge_id else x for x in d.edges))
    _check_structure(out)
    return out


def _check_structure(d: Diagram):
    declared = d.vertex_names()
    incoming = {v: 0 for v in declared}
    outgoing = {v: 0 for v in declared}
    for e in d.edges:
        if e.dst in declared:
            incoming[e.dst] += 1
        if e.src in declared:
            outgoing[e.src] += 1
    for v in d.vertices:
        if not incoming[v.name] or not outgoing[v.name]:
            raise RewriteError(f"rewrite leaves vertex {v.name!r} without in/out edges")


def serialize(d: Diagram) -> str:
    """Canonical text form; parse(serialize(d)) is structurally d."""
    lines = [f"diagram {d.name}", ""]
    lines += [f"vertex {v.name} : {v.kind}" for v in d.vertices]
    lines.append("")
    for e in d.edges:
        species = e.species if e.multiplicity == 1 else f"{e.species}*{e.multiplicity}"
        tail = " backward" if e.backward else ""
        lines.append(f"edge {e.id} : {species} {e.src} -> {e.dst}{tail}")
    return "\n".join(lines) + "\n"


def bundled_names() -> list[str]:
    """Names of the diagrams shipped with the package."""
    root = resources.files(__package__).joinpath("diagrams")
    return sorted(p.name[: -len(".qidml")] for p in root.iterdir() if p.name.endswith(".qidml"))


def bundled_path(name: str) -> Path:
    """Filesystem path of a bundled diagram, e.g. ``bundled_path("teleport")``."""
    p = Path(str(resources.files(__package__).joinpath("diagrams", f"{name}.qidml")))
    if not p.exists():
        raise FileNotFoundError(f"no bundled diagram {name!r}; have {bundled_names()}")
    return p


def load(path) -> Diagram:
    """Parse a .qidml file from disk."""
    return parse(Path(path).read_text(encoding="utf-8"))
