"""Maximum-span linkages by matroid-aware augmenting paths, with dual certificates.

A run keeps an independent set ``I`` and edge-disjoint paths ``P_i`` from
``pi(i)`` to a target set ``T``.  Each augmentation works in an auxiliary
digraph: a source ``s``, a node ``u_i`` for every ``i`` that can be added to
``I`` (or is in it), a node ``w_i`` for every element, and the original
vertices.  Edges of the current paths are reversed.  When no augmenting path
exists, the set of unreachable vertices ``U`` is examined; elements of
``S(U)`` not spanned by ``I`` inside ``U`` get extra edges ``u_{s(i)} -> w_i``
that allow an exchange, and the search is repeated.  When nothing is left to
inject, ``U`` satisfies the complementarity conditions with the linkage and is
returned as a certificate.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Optional

from .digraph import Path, edge_disjoint, edges_of, erase_loops, last_edges
from .errors import EngineInvariantError, InconsistentLinkageError, UndefinedExtensionError
from .rooted import ExtensionStep, RootedDigraph

Event = Callable[[str, object], None]


# ---------------------------------------------------------------------------
# value types


@dataclass(frozen=True)
class Linkage:
    """Edge-disjoint paths indexed by an independent set, into ``targets``."""

    targets: frozenset
    paths: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "targets", frozenset(self.targets))
        object.__setattr__(self, "paths", dict(self.paths))

    @property
    def elements(self) -> frozenset:
        return frozenset(self.paths)

    def edges(self) -> set:
        return edges_of(self.paths.values())

    def last_edges(self) -> set:
        return last_edges(self.paths.values())

    def is_strict(self, r: RootedDigraph) -> bool:
        for i, p in self.paths.items():
            if any(v in r.pi[i] for v in p.vertices[1:]):
                return False
            if any(v in self.targets for v in p.vertices[:-1]):
                return False
        return True

    def without(self, elems: Iterable) -> "Linkage":
        drop = set(elems)
        return Linkage(self.targets, {i: p for i, p in self.paths.items() if i not in drop})

    def validate(self, r: RootedDigraph) -> None:
        if not self.targets:
            raise InconsistentLinkageError("empty target set")
        r.d._check(self.targets)
        if not r.m.is_independent(self.paths):
            raise InconsistentLinkageError("index set is dependent")
        for i, p in self.paths.items():
            r.d.check_path(p)
            if p.start not in r.pi[i]:
                raise InconsistentLinkageError(f"path of {i!r} does not start at a root")
            if p.end not in self.targets:
                raise InconsistentLinkageError(f"path of {i!r} does not end in the targets")
        if not edge_disjoint(self.paths.values()):
            raise InconsistentLinkageError("paths share an edge")


@dataclass(frozen=True)
class ComplementarityReport:
    conditions: tuple
    alternate: bool
    entry_edges: dict

    @property
    def holds(self) -> bool:
        return all(self.conditions)


@dataclass(frozen=True)
class TGoodCertificate:
    """A vertex set together with the linkage it is complementary to.

    ``inner_base`` indexes the paths staying inside ``X``; ``outer`` indexes
    the paths entering it, through ``entry_edges[i]``; ``entry_paths`` maps each
    in-edge to the tail of the path through it, from its head to the target.
    """

    X: frozenset
    linkage: Linkage
    inner_base: frozenset
    outer: frozenset
    entry_edges: dict
    entry_paths: dict
    conditions: tuple

    @property
    def inner_paths(self) -> dict:
        return {i: self.linkage.paths[i] for i in self.inner_base}


@dataclass
class Augmented:
    before: frozenset
    after: frozenset
    linkage: Linkage
    rounds: int


@dataclass
class MaxLinkage:
    elements: frozenset
    linkage: Linkage
    certificate: TGoodCertificate
    rank: int
    span: frozenset
    augmentations: int = 0
    log: list = field(default_factory=list)


# ---------------------------------------------------------------------------
# complementarity


def _first_entry(p: Path, X: frozenset):
    for k, eid in enumerate(p.edges):
        if p.vertices[k] not in X and p.vertices[k + 1] in X:
            return k, eid
    return None


def check_complementarity(r: RootedDigraph, lk: Linkage, X: Iterable) -> ComplementarityReport:
    """Evaluate the four complementarity conditions for ``lk`` and ``X``.

    The single-condition alternate form (first-entry edges of the outer paths
    are exactly the in-edges of ``X``) is evaluated as well and must agree with
    conditions 2-4."""
    X = frozenset(X)
    if not lk.targets <= X:
        raise ValueError("targets of the linkage must lie inside X")
    sx = r.s_of(X)
    I = lk.elements
    inner = I & sx
    outer = I - sx
    in_x = r.d.in_edges(X)
    c1 = r.m.is_base(inner, sx)
    c2 = all(all(v in X for v in lk.paths[i].vertices) for i in inner)
    c3 = all(len(set(lk.paths[i].edges) & in_x) == 1 for i in outer)
    used = edges_of(lk.paths[i] for i in outer)
    c4 = in_x <= used
    entries = {}
    for i in outer:
        hit = _first_entry(lk.paths[i], X)
        if hit is not None:
            entries[i] = hit[1]
    alt = len(entries) == len(outer) and set(entries.values()) == set(in_x)
    if alt != (c2 and c3 and c4):
        raise EngineInvariantError(
            "alternate complementarity form disagrees with conditions 2-4"
        )
    return ComplementarityReport((c1, c2, c3, c4), alt, entries)


def make_certificate(r: RootedDigraph, lk: Linkage, X: Iterable) -> TGoodCertificate:
    X = frozenset(X)
    rep = check_complementarity(r, lk, X)
    sx = r.s_of(X)
    I = lk.elements
    entry_paths = {}
    for i, eid in rep.entry_edges.items():
        p = lk.paths[i]
        entry_paths[eid] = p.segment(r.d.head(eid), p.end)
    return TGoodCertificate(
        X=X,
        linkage=lk,
        inner_base=I & sx,
        outer=I - sx,
        entry_edges=dict(rep.entry_edges),
        entry_paths=entry_paths,
        conditions=rep.conditions,
    )


# ---------------------------------------------------------------------------
# auxiliary digraph


class _Aux:
    """Auxiliary digraph of one augmentation attempt.

    Nodes are tuples: ``("s",)``, ``("u", i)``, ``("w", i)``, ``("v", x)``.
    Edge ids are tuples as well; ``order`` fixes the scan order."""

    def __init__(self, r: RootedDigraph, I: frozenset, lk: Linkage):
        self.r = r
        m = r.m
        span_i = m.span(I)
        self.istar = [i for i in m.ground if i in I or i not in span_i]
        self.tail: dict = {}
        self.head: dict = {}
        self.order: dict = {}
        self.out: dict = {}
        self.into: dict = {}
        S = ("s",)
        for i in self.istar:
            self._add(("su", i), S, ("u", i))
        for i in self.istar:
            self._add(("uw", i), ("u", i), ("w", i))
        for i in m.ground:
            for x in r.d.sort_vertices(r.pi[i]):
                self._add(("wv", i, x), ("w", i), ("v", x))
        for e in r.d.edges:
            self._add(("d", e.id), ("v", e.tail), ("v", e.head))
        self.flow: set = set()
        self.paths: dict = {}
        for i, p in lk.paths.items():
            self.paths[i] = self.lift(i, p)
            self.flow.update(self.paths[i])

    def _add(self, eid, a, b):
        self.order[eid] = len(self.order)
        self.tail[eid] = a
        self.head[eid] = b
        self.out.setdefault(a, []).append(eid)
        self.into.setdefault(b, []).append(eid)

    def inject(self, j, i):
        eid = ("inj", j, i)
        if eid not in self.order:
            self._add(eid, ("u", j), ("w", i))
        return eid

    def lift(self, i, p: Path) -> list:
        return [("su", i), ("uw", i), ("wv", i, p.start)] + [("d", e) for e in p.edges]

    def residual(self, node):
        """Residual out-arcs of ``node`` as (edge id, next node), in scan order."""
        arcs = []
        for eid in self.out.get(node, ()):
            if eid not in self.flow:
                arcs.append((self.order[eid], eid, self.head[eid]))
        for eid in self.into.get(node, ()):
            if eid in self.flow:
                arcs.append((self.order[eid], eid, self.tail[eid]))
        arcs.sort(key=lambda a: a[0])
        return [(eid, nxt) for _, eid, nxt in arcs]

    def search(self, targets: frozenset):
        """BFS from s; returns (path as list of (edge, forward?), reached set)."""
        start = ("s",)
        pred = {start: None}
        queue = deque([start])
        while queue:
            node = queue.popleft()
            for eid, nxt in self.residual(node):
                if nxt in pred:
                    continue
                pred[nxt] = (node, eid)
                if nxt[0] == "v" and nxt[1] in targets:
                    steps = []
                    cur = nxt
                    while pred[cur] is not None:
                        prev, e = pred[cur]
                        steps.append((e, e not in self.flow))
                        cur = prev
                    steps.reverse()
                    return steps, set(pred)
                queue.append(nxt)
        return None, set(pred)


def _strict(r: RootedDigraph, i, p: Path, targets: frozenset) -> Path:
    start = max(k for k, v in enumerate(p.vertices) if v in r.pi[i])
    end = next(k for k, v in enumerate(p.vertices) if v in targets and k >= start)
    return Path(p.vertices[start : end + 1], p.edges[start:end])


def _decompose(aux: _Aux, pool: set, targets: frozenset, r: RootedDigraph) -> dict:
    """Greedy split of an s-rooted edge set into paths, keyed by element."""
    out: dict = {}
    for eid in sorted(pool, key=aux.order.__getitem__):
        out.setdefault(aux.tail[eid], []).append(eid)
    used: set = set()
    found = {}
    for first in list(out.get(("s",), ())):
        if first in used:
            continue
        nodes = [("s",)]
        arcs = []
        used.add(first)
        arcs.append(first)
        nodes.append(aux.head[first])
        while not (nodes[-1][0] == "v" and nodes[-1][1] in targets):
            nxt = next((e for e in out.get(nodes[-1], ()) if e not in used), None)
            if nxt is None:
                raise EngineInvariantError("path decomposition got stuck")
            used.add(nxt)
            arcs.append(nxt)
            nodes.append(aux.head[nxt])
        walk = erase_loops(nodes, arcs)
        w = next(n for n in walk.vertices if n[0] == "w")
        elem = w[1]
        vs = tuple(n[1] for n in walk.vertices if n[0] == "v")
        es = tuple(e[1] for e in walk.edges if e[0] == "d")
        if elem in found:
            raise EngineInvariantError(f"two paths for element {elem!r}")
        found[elem] = _strict(r, elem, Path(vs, es), targets)
    return found


def _entry_round_key(entered: dict, m):
    return lambda j: (entered[j], m.index(j))


def augment_once(
    r: RootedDigraph,
    T: Iterable,
    lk: Linkage,
    log: Optional[list] = None,
    check: bool = True,
):
    """One augmentation step.  Returns ``Augmented`` or a ``TGoodCertificate``."""
    T = frozenset(T)
    if lk.targets != T:
        raise InconsistentLinkageError("linkage targets differ from T")
    if check:
        lk.validate(r)
    m = r.m
    I = lk.elements
    aux = _Aux(r, I, lk)
    entered: dict = {}
    earlier_f: set = set()
    s_of_injected: dict = {}
    rnd = 0
    while True:
        steps, reached = aux.search(T)
        if steps is not None:
            res = _apply(r, T, lk, aux, steps, s_of_injected, check)
            res.rounds = rnd
            if log is not None:
                log.append({"round": rnd, "augmented": sorted(map(str, res.after))})
            return res
        U = frozenset(x for x in r.d.vertices if ("v", x) not in reached)
        sU = r.s_of(U)
        i_in = I & sU
        i_out = I - sU
        for j in m.sorted(i_out):
            entered.setdefault(j, rnd)
        F = sU - m.span(i_in)
        if check:
            if not T <= U:
                raise EngineInvariantError("a target vertex became reachable")
            if not sU <= m.span(I):
                raise EngineInvariantError("S(U) is not spanned by I")
            if F & earlier_f:
                raise EngineInvariantError("exchange sets of two rounds intersect")
        injected = []
        key = _entry_round_key(entered, m)
        for i in m.sorted(F):
            circ = m.fundamental_circuit(i, I)
            choices = sorted(circ & i_out, key=key)
            if not choices:
                raise EngineInvariantError(f"no exchange partner for {i!r}")
            j = choices[0]
            s_of_injected[i] = j
            injected.append(aux.inject(j, i))
        if log is not None:
            log.append(
                {
                    "round": rnd,
                    "unreachable": r.d.sort_vertices(U),
                    "exchange": m.sorted(F),
                    "injected": [[e[1], e[2]] for e in injected],
                }
            )
        if not F:
            cert = make_certificate(r, lk, U)
            if check and not all(cert.conditions):
                raise EngineInvariantError(
                    f"terminal set fails complementarity: {cert.conditions}"
                )
            return cert
        earlier_f |= F
        rnd += 1
        if rnd > len(m.ground) + 1:
            raise EngineInvariantError("exchange rounds do not terminate")


def _apply(r, T, lk, aux: _Aux, steps, s_of_injected, check) -> Augmented:
    m = r.m
    I = lk.elements
    backward = {e for e, fwd in steps if not fwd}
    forward = {e for e, fwd in steps if fwd}
    i0 = steps[0][0][1]
    affected = {i for i, arcs in aux.paths.items() if backward & set(arcs)}
    pool = set()
    for i in affected:
        pool.update(aux.paths[i])
    pool = (pool - backward) | forward
    new_paths = _decompose(aux, pool, T, r)
    paths = {i: p for i, p in lk.paths.items() if i not in affected}
    for i, p in new_paths.items():
        if i in paths:
            raise EngineInvariantError(f"element {i!r} linked twice")
        paths[i] = p
    after = frozenset(paths)
    new_lk = Linkage(T, paths)
    if check:
        rep = [e[2] for e, fwd in steps if fwd and e[0] == "inj"]
        used_s = {s_of_injected[i] for i in rep}
        expect = (I | {i0} | set(rep)) - used_s
        if after != expect:
            raise EngineInvariantError(f"new index set {after} differs from the exchange rule {expect}")
        if not m.is_independent(after):
            raise EngineInvariantError("augmented index set is dependent")
        if len(after) != len(I) + 1 or not I <= m.span(after):
            raise EngineInvariantError("span did not strictly grow")
        if len(after - I) != len(I - after) + 1:
            raise EngineInvariantError("exchange bound |I'-I| = |I-I'|+1 fails")
        old_last, new_last = lk.last_edges(), new_lk.last_edges()
        if len(new_last - old_last) > 1 or (new_last - old_last and not old_last <= new_last):
            raise EngineInvariantError("last-edge set changed by more than one edge")
        new_lk.validate(r)
    return Augmented(I, after, new_lk, 0)


# ---------------------------------------------------------------------------
# drivers


def max_linkage(
    r: RootedDigraph,
    T: Iterable,
    initial: Optional[Linkage] = None,
    on_event: Optional[Event] = None,
    log_rounds: bool = False,
    check: bool = True,
) -> MaxLinkage:
    """Augment until stuck; the final certificate proves maximality."""
    T = r.d._check(T)
    if not T:
        raise ValueError("target set must be nonempty")
    lk = initial if initial is not None else Linkage(T, {})
    if lk.targets != T:
        lk = Linkage(T, lk.paths)
    log: list = [] if log_rounds else None
    n = 0
    while True:
        res = augment_once(r, T, lk, log=log, check=check)
        if isinstance(res, Augmented):
            n += 1
            if on_event is not None:
                on_event("augment", res)
            lk = res.linkage
            continue
        if on_event is not None:
            on_event("certificate", (r, res))
        I = lk.elements
        return MaxLinkage(I, lk, res, len(I), r.m.span(I), n, log or [])


def max_linkage_free(r: RootedDigraph, T: Iterable, base_set: Iterable, **kw) -> MaxLinkage:
    """Maximal linkable superset of ``base_set`` (which must be linkable).

    Runs the engine on the free matroid over ``base_set`` plus the elements
    outside its span, so only supersets of ``base_set`` are explored."""
    from .matroid import Free

    base = frozenset(base_set)
    span_b = r.m.span(base)
    keep = [i for i in r.m.ground if i in base or i not in span_b]
    r_free = RootedDigraph(r.d, Free(keep), {i: r.pi[i] for i in keep})
    init = kw.pop("initial", None)
    if init is None:
        # link the base itself first, on the free matroid over it
        probe = max_linkage(RootedDigraph(r.d, Free(r.m.sorted(base)), {i: r.pi[i] for i in base}), T)
        if probe.elements != base:
            raise ValueError("base_set is not linkable to T")
        init = probe.linkage
    return max_linkage(r_free, T, initial=init, **kw)


def _trivial_at(r: RootedDigraph, i, X: frozenset) -> Path:
    return Path.trivial(r.d.sort_vertices(r.pi[i] & X)[0])


def linkage_for(r: RootedDigraph, X: Iterable, reduced: bool = False, **kw) -> MaxLinkage:
    """Maximum linkage into ``X`` whose index set contains a base of ``S(X)``.

    With ``reduced`` the trivial paths are dropped from the returned linkage
    (its index set is then a base of the need modulo ``S(X)`` whenever the
    linkage condition holds at ``X``)."""
    X = r.d._check(X)
    b0 = r.m.base_of(r.s_of(X))
    init = Linkage(X, {b: _trivial_at(r, b, X) for b in b0})
    res = max_linkage(r, X, initial=init, **kw)
    keep = set(b0)
    for i in r.m.sorted(res.elements):
        if i not in keep and r.m.is_independent(keep | {i}):
            keep.add(i)
    paths = {i: (_trivial_at(r, i, X) if i in b0 else res.linkage.paths[i]) for i in keep}
    if reduced:
        paths = {i: p for i, p in paths.items() if i not in b0}
    lk = Linkage(X, paths)
    return MaxLinkage(frozenset(keep), lk, res.certificate, len(keep), r.m.span(keep), res.augmentations, res.log)


@dataclass
class LinkageConditionReport:
    holds: bool
    failing: object = None
    witnesses: dict = field(default_factory=dict)
    certificate: Optional[TGoodCertificate] = None


def check_linkage_condition(r: RootedDigraph, on_event: Optional[Event] = None) -> LinkageConditionReport:
    wit = {}
    for v in r.d.vertices:
        res = max_linkage(r, {v}, on_event=on_event)
        wit[v] = res
        if res.rank < r.need_rank({v}):
            return LinkageConditionReport(False, v, wit, res.certificate)
    return LinkageConditionReport(True, None, wit)


def holds_at(r: RootedDigraph, X: Iterable, on_event: Optional[Event] = None) -> bool:
    """A (B, X)-linkage with B a base of N(X) exists."""
    return max_linkage(r, X, on_event=on_event).rank == r.need_rank(X)


# ---------------------------------------------------------------------------
# t-good, tight and dangerous sets


def is_t_good(r: RootedDigraph, t, X: Iterable, on_event: Optional[Event] = None) -> bool:
    X = r.d._check(X)
    if t not in X:
        raise ValueError(f"{t!r} is not in X")
    local, fresh = r.local_instance(X)
    want = r.m.rank(r.s_of(X)) + len(fresh)
    return max_linkage(local, {t}, on_event=on_event).rank == want


def largest_t_good(r: RootedDigraph, t, on_event: Optional[Event] = None) -> frozenset:
    """The inclusion-largest t-good set.

    Sets minimising ``r(S(Z)) + |in(Z)|`` over ``Z`` containing ``t`` are
    t-good and closed under union, and the largest t-good set is one of them.
    The minimum equals the maximum rank linkable to ``t``; a vertex ``v`` lies
    in some minimiser iff the maximum rank linkable to ``X + v`` is still that
    value, and the certificate of that run is a minimiser containing ``v``."""
    base = max_linkage(r, {t}, on_event=on_event)
    m0 = base.rank
    X = set(base.certificate.X)
    for v in r.d.vertices:
        if v in X:
            continue
        res = max_linkage(r, X | {v}, on_event=on_event)
        if res.rank == m0:
            X |= res.certificate.X
    X = frozenset(X)
    if not is_t_good(r, t, X):
        raise EngineInvariantError(f"saturated set for {t!r} is not t-good")
    return X


def cut_value(r: RootedDigraph, X: Iterable) -> int:
    """r(S(X)) + |in(X)|."""
    X = frozenset(X)
    return r.m.rank(r.s_of(X)) + len(r.d.in_edges(X))


def is_tight(r: RootedDigraph, X: Iterable, on_event: Optional[Event] = None) -> bool:
    """Every (B, X)-linkage with B a base of N(X) uses every in-edge of X."""
    X = r.d._check(X)
    if not X:
        raise ValueError("tightness of the empty set")
    want = r.need_rank(X)
    for eid in r.d.sort_edges(r.d.in_edges(X)):
        sub = RootedDigraph(r.d.delete_edge(eid), r.m, r.pi)
        if max_linkage(sub, X, on_event=on_event).rank >= want:
            return False
    return True


def is_dangerous(r: RootedDigraph, X: Iterable, i, on_event: Optional[Event] = None) -> bool:
    X = r.d._check(X)
    return i in r.m.span(r.s_of(X)) and is_tight(r, X, on_event=on_event)


def failing_vertex(r_orig: RootedDigraph, r1: RootedDigraph, on_event: Optional[Event] = None):
    """First vertex where ``r1`` cannot link a base of the original need."""
    for v in r1.d.vertices:
        if max_linkage(r1, {v}, on_event=on_event).rank < r_orig.need_rank({v}):
            return v
    return None


def find_dangerous_for(r: RootedDigraph, i, eid, on_event: Optional[Event] = None) -> Optional[frozenset]:
    """An i-dangerous set entered by ``eid`` if the (i, e)-extension is infeasible."""
    r1 = r.extend(ExtensionStep(i, eid))
    t = failing_vertex(r, r1, on_event=on_event)
    if t is None:
        return None
    X = largest_t_good(r1, t, on_event=on_event)
    if eid not in r.d.in_edges(X):
        raise EngineInvariantError(f"{eid!r} does not enter the extracted set")
    if not is_dangerous(r, X, i, on_event=on_event):
        raise EngineInvariantError("extracted set is not dangerous")
    return X


__all__ = [
    "Augmented",
    "ComplementarityReport",
    "Linkage",
    "LinkageConditionReport",
    "MaxLinkage",
    "TGoodCertificate",
    "UndefinedExtensionError",
    "augment_once",
    "check_complementarity",
    "check_linkage_condition",
    "cut_value",
    "find_dangerous_for",
    "holds_at",
    "is_dangerous",
    "is_t_good",
    "is_tight",
    "largest_t_good",
    "linkage_for",
    "make_certificate",
    "max_linkage",
    "max_linkage_free",
]
