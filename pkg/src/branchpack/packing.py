"""Build maximal independent branching packings by feasible (i, e)-extensions."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from .errors import EngineInvariantError, PreconditionError, SolverDefectError
from .linkage import Event, linkage_for, max_linkage
from .rooted import ExtensionStep, RootedDigraph


@dataclass(frozen=True)
class Branching:
    vertices: frozenset
    edges: frozenset

    def __post_init__(self):
        object.__setattr__(self, "vertices", frozenset(self.vertices))
        object.__setattr__(self, "edges", frozenset(self.edges))


@dataclass
class Packing:
    branchings: dict = field(default_factory=dict)

    def __getitem__(self, i) -> Branching:
        return self.branchings[i]

    def __eq__(self, other):
        return isinstance(other, Packing) and self.branchings == other.branchings

    def edges(self) -> set:
        return {e for b in self.branchings.values() for e in b.edges}


def packing_from_trace(r: RootedDigraph, trace: Iterable[ExtensionStep]) -> Packing:
    trace = list(trace)
    final = r.apply_trace(trace)
    edges: dict = {i: set() for i in r.m.ground}
    for st in trace:
        edges[st.elem].add(st.edge)
    return Packing({i: Branching(final.pi[i], edges[i]) for i in r.m.ground})


def is_feasible(r_orig: RootedDigraph, r_cur: RootedDigraph, step: ExtensionStep,
                on_event: Optional[Event] = None) -> bool:
    """Full recomputation: after the step, every vertex can still link a base
    of its original need (this covers both the linkage condition and the
    preservation of needs)."""
    r1 = r_cur.extend(step)
    if not r1.is_independent():
        raise EngineInvariantError("a defined extension broke independence")
    for v in r1.d.vertices:
        if max_linkage(r1, {v}, on_event=on_event).rank < r_orig.need_rank({v}):
            return False
    return True


def check_preconditions(r: RootedDigraph, on_event: Optional[Event] = None) -> dict:
    """Raise ``PreconditionError`` unless the instance is independent and the
    linkage condition holds; returns one witness linkage per vertex."""
    return _Solver(r, on_event).witness


class _Solver:
    """Solver state: the original instance, the current one, and one witness
    linkage per vertex that realises the original need in the current one.

    A step only invalidates witnesses whose paths use its edge; those are
    repaired by augmenting from the surviving paths."""

    def __init__(self, cur: RootedDigraph, on_event: Optional[Event] = None,
                 orig: Optional[RootedDigraph] = None):
        self.orig = cur if orig is None else orig
        self.on_event = on_event
        self.need_rank = {v: self.orig.need_rank({v}) for v in self.orig.d.vertices}
        bad = cur.independence_violation()
        if bad is not None:
            raise PreconditionError("independence", bad)
        self.witness = {}
        for v in cur.d.vertices:
            res = max_linkage(cur, {v}, on_event=on_event)
            if res.rank < self.need_rank[v]:
                raise PreconditionError("linkage", v, res.certificate)
            self.witness[v] = res.linkage
        self.cur = cur
        self.trace: list[ExtensionStep] = []

    def try_step(self, step: ExtensionStep):
        """New witnesses if ``step`` is feasible, else None."""
        if not self.cur.is_defined(step.elem, step.edge):
            return None
        r1 = self.cur.extend(step)
        repaired = {}
        for v in r1.d.vertices:
            lk = self.witness[v]
            bad = [i for i, p in lk.paths.items() if step.edge in p.edges]
            if not bad:
                continue
            res = max_linkage(r1, {v}, initial=lk.without(bad), on_event=self.on_event)
            if res.rank < self.need_rank[v]:
                return None
            repaired[v] = res.linkage
        return r1, repaired

    def commit(self, step, outcome):
        r1, repaired = outcome
        self.cur = r1
        self.witness.update(repaired)
        self.trace.append(step)

    def deficient(self, v, within=None) -> bool:
        need = self.orig.need({v})
        have = self.cur.s_at(v)
        if within is not None:
            need, have = need & within, have & within
        return not need <= self.cur.m.span(have)

    def candidates(self, v, within=None):
        """Steps suggested by a reduced linkage for ``v``: first edges of its
        non-trivial paths, shortest first."""
        red = linkage_for(self.cur, {v}, reduced=True, on_event=self.on_event).linkage
        d = self.cur.d
        m = self.cur.m
        paths = [(i, p) for i, p in red.paths.items() if p.edges and (within is None or i in within)]
        paths.sort(key=lambda ip: (len(ip[1]), m.index(ip[0]), d.edge_index(ip[1].edges[0])))
        return [ExtensionStep(i, p.edges[0]) for i, p in paths]

    def find(self, within=None, only=None):
        verts = [only] if only is not None else list(self.cur.d.vertices)
        target = next((v for v in verts if self.deficient(v, within)), None)
        if target is None:
            return None
        tried = set()
        for st in self.candidates(target, within):
            tried.add(st)
            out = self.try_step(st)
            if out is not None:
                return st, out
        for st in self.cur.defined_steps():
            if st in tried or (within is not None and st.elem not in within):
                continue
            out = self.try_step(st)
            if out is not None:
                return st, out
        raise SolverDefectError(
            f"vertex {target!r} is deficient but no feasible extension exists"
        )

    def run(self, within=None, only=None):
        while True:
            found = self.find(within, only)
            if found is None:
                return
            self.commit(*found)
            if self.on_event is not None:
                self.on_event("step", found[0])
            if len(self.trace) > len(self.orig.d.edges):
                raise SolverDefectError("trace longer than the edge count")


def find_feasible(r_orig: RootedDigraph, r_cur: RootedDigraph) -> Optional[ExtensionStep]:
    """A feasible step for the current instance, or None if every vertex is
    already saturated."""
    s = _Solver(r_cur, orig=r_orig)
    found = s.find()
    return None if found is None else found[0]


def solve(r: RootedDigraph, on_event: Optional[Event] = None):
    """Maximal independent branching packing; returns (packing, trace)."""
    s = _Solver(r, on_event)
    s.run()
    return packing_from_trace(r, s.trace), list(s.trace)


def augment_at(r: RootedDigraph, v, W: Iterable, on_event: Optional[Event] = None):
    """Feasible steps with elements in ``W`` until ``S(v)`` restricted to ``W``
    spans the need of ``v`` restricted to ``W``.  ``W`` must be a union of
    matroid components.  Returns (new instance, trace)."""
    W = frozenset(W)
    comps = r.m.components()
    if any(c & W and not c <= W for c in comps):
        raise ValueError("W must be a union of matroid components")
    s = _Solver(r, on_event)
    s.run(within=W, only=v)
    for i in r.m.ground:
        if i not in W and s.cur.pi[i] != r.pi[i]:
            raise EngineInvariantError(f"element {i!r} outside W was extended")
    return s.cur, list(s.trace)


def schedule(r: RootedDigraph, order: Iterable, on_event: Optional[Event] = None):
    """Run ``augment_at`` for each (vertex, component) in turn; returns
    (packing, trace)."""
    order = list(order)
    cur = r
    trace: list = []
    for v, comp in order:
        s = _Solver(cur, on_event, orig=r)
        s.run(within=frozenset(comp), only=v)
        cur = s.cur
        trace.extend(s.trace)
    return packing_from_trace(r, trace), trace
