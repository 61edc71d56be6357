"""Finite multidigraphs (parallel edges, no loops) and simple directed paths."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Hashable, Iterable, Sequence

from .errors import InvalidDigraphError, PathError, UnknownEdgeError, UnknownVertexError

Vertex = Hashable
EdgeId = Hashable


@dataclass(frozen=True)
class Edge:
    id: EdgeId
    tail: Vertex
    head: Vertex


class Digraph:
    """Immutable multidigraph.  Vertex and edge orders are canonical."""

    def __init__(self, vertices: Iterable[Vertex], edges: Iterable = ()):
        self.vertices = tuple(vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise InvalidDigraphError("duplicate vertices")
        self._vindex = {v: k for k, v in enumerate(self.vertices)}
        es = []
        for e in edges:
            if not isinstance(e, Edge):
                e = Edge(*e)
            es.append(e)
        self.edges = tuple(es)
        self._edge = {}
        for e in self.edges:
            if e.id in self._edge:
                raise InvalidDigraphError(f"duplicate edge id {e.id!r}")
            missing = [v for v in (e.tail, e.head) if v not in self._vindex]
            if missing:
                raise UnknownVertexError(missing)
            if e.tail == e.head:
                raise InvalidDigraphError(f"edge {e.id!r} is a loop")
            self._edge[e.id] = e
        self._eindex = {e.id: k for k, e in enumerate(self.edges)}
        self._out = {v: [] for v in self.vertices}
        self._in = {v: [] for v in self.vertices}
        for e in self.edges:
            self._out[e.tail].append(e)
            self._in[e.head].append(e)

    def __eq__(self, other):
        return (
            isinstance(other, Digraph)
            and self.vertices == other.vertices
            and self.edges == other.edges
        )

    def __hash__(self):
        return hash((self.vertices, self.edges))

    def __repr__(self):
        return f"Digraph({len(self.vertices)} vertices, {len(self.edges)} edges)"

    # -- lookup ---------------------------------------------------------
    def edge(self, eid: EdgeId) -> Edge:
        try:
            return self._edge[eid]
        except KeyError:
            raise UnknownEdgeError(eid) from None

    def has_edge(self, eid: EdgeId) -> bool:
        return eid in self._edge

    def tail(self, eid):
        return self.edge(eid).tail

    def head(self, eid):
        return self.edge(eid).head

    def edge_index(self, eid) -> int:
        return self._eindex[eid]

    def vertex_index(self, v) -> int:
        return self._vindex[v]

    def sort_edges(self, eids: Iterable[EdgeId]) -> list:
        return sorted(eids, key=self._eindex.__getitem__)

    def sort_vertices(self, vs: Iterable[Vertex]) -> list:
        return sorted(vs, key=self._vindex.__getitem__)

    def out_of(self, v) -> list[Edge]:
        return list(self._out[v])

    def into(self, v) -> list[Edge]:
        return list(self._in[v])

    def _check(self, xs) -> frozenset:
        xs = frozenset(xs)
        missing = [v for v in xs if v not in self._vindex]
        if missing:
            raise UnknownVertexError(missing)
        return xs

    # -- cuts and reachability -----------------------------------------
    def in_edges(self, X: Iterable[Vertex]) -> frozenset:
        X = self._check(X)
        return frozenset(e.id for v in X for e in self._in[v] if e.tail not in X)

    def out_edges(self, X: Iterable[Vertex]) -> frozenset:
        X = self._check(X)
        return frozenset(e.id for v in X for e in self._out[v] if e.head not in X)

    def to_set(self, X: Iterable[Vertex]) -> frozenset:
        """Vertices from which ``X`` is reachable (``X`` included)."""
        X = self._check(X)
        if not X:
            raise ValueError("to_set needs a nonempty vertex set")
        seen = set(X)
        queue = deque(X)
        while queue:
            v = queue.popleft()
            for e in self._in[v]:
                if e.tail not in seen:
                    seen.add(e.tail)
                    queue.append(e.tail)
        return frozenset(seen)

    def reachable_from(self, X: Iterable[Vertex]) -> frozenset:
        X = self._check(X)
        seen = set(X)
        queue = deque(X)
        while queue:
            v = queue.popleft()
            for e in self._out[v]:
                if e.head not in seen:
                    seen.add(e.head)
                    queue.append(e.head)
        return frozenset(seen)

    # -- derived digraphs ------------------------------------------------
    def delete_edge(self, eid: EdgeId) -> "Digraph":
        self.edge(eid)
        return Digraph(self.vertices, [e for e in self.edges if e.id != eid])

    def delete_edges(self, eids: Iterable[EdgeId]) -> "Digraph":
        eids = set(eids)
        for eid in eids:
            self.edge(eid)
        return Digraph(self.vertices, [e for e in self.edges if e.id not in eids])

    def induced(self, X: Iterable[Vertex]) -> "Digraph":
        X = self._check(X)
        return Digraph(
            [v for v in self.vertices if v in X],
            [e for e in self.edges if e.tail in X and e.head in X],
        )

    # -- paths ------------------------------------------------------------
    def path(self, start: Vertex, edges: Sequence[EdgeId] = ()) -> "Path":
        """Build a path from a start vertex and a chain of edge ids."""
        self._check([start])
        verts = [start]
        for eid in edges:
            e = self.edge(eid)
            if e.tail != verts[-1]:
                raise PathError(f"edge {eid!r} does not continue the path at {verts[-1]!r}")
            verts.append(e.head)
        return Path(tuple(verts), tuple(edges))

    def check_path(self, p: "Path") -> None:
        if p.vertices[0] not in self._vindex:
            raise UnknownVertexError([p.vertices[0]])
        for k, eid in enumerate(p.edges):
            e = self.edge(eid)
            if (e.tail, e.head) != (p.vertices[k], p.vertices[k + 1]):
                raise PathError(f"edge {eid!r} does not join {p.vertices[k]!r} -> {p.vertices[k + 1]!r}")

    def to_dot(self, name: str = "D") -> str:
        return emit_dot(self, name)


def _q(x) -> str:
    return '"' + str(x).replace("\\", "\\\\").replace('"', '\\"') + '"'


def emit_dot(d: Digraph, name: str = "D") -> str:
    lines = [f"digraph {_q(name)} {{"]
    for v in d.vertices:
        lines.append(f"  {_q(v)};")
    for e in d.edges:
        lines.append(f"  {_q(e.tail)} -> {_q(e.head)} [label={_q(e.id)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class Path:
    """Simple directed path; a trivial path is a single anchor vertex."""

    vertices: tuple
    edges: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))
        if not self.vertices:
            raise PathError("a path needs at least one vertex")
        if len(self.edges) != len(self.vertices) - 1:
            raise PathError("a path with k edges has k+1 vertices")
        if len(set(self.vertices)) != len(self.vertices):
            raise PathError(f"repeated vertex on path {self.vertices!r}")

    @classmethod
    def trivial(cls, v: Vertex) -> "Path":
        return cls((v,), ())

    @property
    def start(self):
        return self.vertices[0]

    @property
    def end(self):
        return self.vertices[-1]

    @property
    def is_trivial(self) -> bool:
        return not self.edges

    @property
    def last_edge(self):
        return self.edges[-1] if self.edges else None

    def __len__(self):
        return len(self.edges)

    def position(self, v) -> int:
        try:
            return self.vertices.index(v)
        except ValueError:
            raise PathError(f"{v!r} is not on the path") from None

    def segment(self, u, v) -> "Path":
        a, b = self.position(u), self.position(v)
        if a > b:
            raise PathError(f"{u!r} comes after {v!r} on the path")
        return Path(self.vertices[a : b + 1], self.edges[a:b])

    def concat(self, other: "Path") -> "Path":
        """Join along the longest terminal segment of ``self`` that is an
        initial segment of ``other``, then erase loops of the walk."""
        best = None
        for k in range(min(len(self.vertices), len(other.vertices)) - 1, -1, -1):
            if (
                self.vertices[len(self.vertices) - 1 - k :] == other.vertices[: k + 1]
                and self.edges[len(self.edges) - k :] == other.edges[:k]
            ):
                best = k
                break
        if best is None:
            raise PathError(f"paths ending at {self.end!r} and starting at {other.start!r} do not join")
        verts = self.vertices + other.vertices[best + 1 :]
        edges = self.edges + other.edges[best:]
        return erase_loops(verts, edges)


def erase_loops(vertices: Sequence, edges: Sequence) -> Path:
    """Chronological loop erasure of a walk."""
    vs = [vertices[0]]
    es: list = []
    where = {vertices[0]: 0}
    for e, v in zip(edges, vertices[1:]):
        if v in where:
            k = where[v]
            for dropped in vs[k + 1 :]:
                del where[dropped]
            del vs[k + 1 :]
            del es[k:]
        else:
            where[v] = len(vs)
            vs.append(v)
            es.append(e)
    return Path(tuple(vs), tuple(es))


def edges_of(paths: Iterable[Path]) -> set:
    return {e for p in paths for e in p.edges}


def last_edges(paths: Iterable[Path]) -> set:
    """Last edges of the non-trivial paths."""
    return {p.edges[-1] for p in paths if p.edges}


def edge_disjoint(paths: Iterable[Path]) -> bool:
    seen: set = set()
    for p in paths:
        for e in p.edges:
            if e in seen:
                return False
            seen.add(e)
    return True
