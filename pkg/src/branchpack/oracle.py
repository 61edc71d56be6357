"""Packing verification and exhaustive oracles for tiny instances.

Nothing here calls the linkage engine or the solver; the oracles use only the
digraph and matroid primitives plus their own path enumeration, so agreement
with the engine is a genuine cross-check.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Optional

from .errors import GuardExceededError
from .rooted import RootedDigraph

# -- size guards ---------------------------------------------------------------


@dataclass(frozen=True)
class Guard:
    vertices: int = 8
    edges: int = 12
    elements: int = 6


HARD_CAP = Guard(vertices=10, edges=16, elements=10)
PACKING_GUARD = Guard(vertices=8, edges=10, elements=4)
DEFAULT_GUARD = Guard()


def _guard(r: RootedDigraph, guard: Optional[Guard], default: Guard) -> None:
    g = default if guard is None else guard
    for name in ("vertices", "edges", "elements"):
        if getattr(g, name) > getattr(HARD_CAP, name):
            raise GuardExceededError(
                f"guard {name}={getattr(g, name)} is above the hard cap {getattr(HARD_CAP, name)}"
            )
    sizes = {"vertices": len(r.d.vertices), "edges": len(r.d.edges), "elements": len(r.m.ground)}
    for name, n in sizes.items():
        if n > getattr(g, name):
            raise GuardExceededError(f"instance has {n} {name}, guard allows {getattr(g, name)}")


# -- packing verification --------------------------------------------------------


@dataclass
class VerifyReport:
    edge_disjoint: bool = True
    branching: bool = True
    root_set: bool = True
    independence: bool = True
    maximality: bool = True
    witnesses: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all((self.edge_disjoint, self.branching, self.root_set, self.independence, self.maximality))

    def fail(self, check: str, what) -> None:
        setattr(self, check, False)
        self.witnesses.setdefault(check, []).append(what)


def _need(r: RootedDigraph, v) -> frozenset:
    upstream = r.d.to_set({v})
    return r.m.span({i for i in r.m.ground if r.pi[i] & upstream})


def verify_packing(r: RootedDigraph, p) -> VerifyReport:
    rep = VerifyReport()
    owner: dict = {}
    for i in r.m.ground:
        b = p.branchings.get(i)
        if b is None:
            rep.fail("root_set", f"no branching for {i}")
            continue
        for e in b.edges:
            if not r.d.has_edge(e):
                rep.fail("branching", f"{e} is not an edge")
            elif e in owner:
                rep.fail("edge_disjoint", f"{e} used by {owner[e]} and {i}")
            else:
                owner[e] = i
    extra = [i for i in p.branchings if i not in r.m]
    if extra:
        rep.fail("root_set", f"unknown elements {extra}")
    for i in r.m.ground:
        b = p.branchings.get(i)
        if b is None:
            continue
        edges = [r.d.edge(e) for e in b.edges if r.d.has_edge(e)]
        indeg = {v: 0 for v in b.vertices}
        for e in edges:
            if e.tail not in b.vertices or e.head not in b.vertices:
                rep.fail("branching", f"edge {e.id} of {i} leaves its vertex set")
                continue
            indeg[e.head] += 1
        roots = {v for v, k in indeg.items() if k == 0}
        if roots != set(r.pi[i]) or not set(r.pi[i]) <= set(b.vertices):
            rep.fail("root_set", f"root set of {i} is {sorted(map(str, roots))}")
        if any(k > 1 for k in indeg.values()):
            rep.fail("branching", f"a vertex of {i} has two entering edges")
        seen = set(r.pi[i]) & set(b.vertices)
        queue = deque(seen)
        while queue:
            x = queue.popleft()
            for e in edges:
                if e.tail == x and e.head not in seen:
                    seen.add(e.head)
                    queue.append(e.head)
        if seen != set(b.vertices):
            rep.fail("branching", f"{i} has vertices unreachable from its roots")
    for v in r.d.vertices:
        sb = {i for i, b in p.branchings.items() if i in r.m and v in b.vertices}
        if not r.m.is_independent(sb):
            rep.fail("independence", v)
        if not _need(r, v) <= r.m.span(sb):
            rep.fail("maximality", v)
    return rep


# -- path enumeration ----------------------------------------------------------------


def _paths(d, sources: Iterable, targets: frozenset, allowed: Optional[set] = None) -> list:
    """All simple paths (as edge-id tuples) from a source to their first
    target vertex, shortest first.  A source inside ``targets`` gives the
    empty path."""
    out = []
    adj: dict = {}
    for e in d.edges:
        if allowed is None or e.id in allowed:
            adj.setdefault(e.tail, []).append(e)
    for s in sources:
        if s in targets:
            out.append(())
            continue
        stack = [(s, (), frozenset([s]))]
        while stack:
            v, es, seen = stack.pop()
            for e in adj.get(v, ()):
                if e.head in seen:
                    continue
                nes = es + (e.id,)
                if e.head in targets:
                    out.append(nes)
                else:
                    stack.append((e.head, nes, seen | {e.head}))
    out.sort(key=len)
    return out


def _disjoint_choice(options: list) -> Optional[list]:
    """Pick one path per demand, pairwise edge-disjoint (backtracking)."""
    order = sorted(range(len(options)), key=lambda k: len(options[k]))
    chosen: dict = {}

    def go(k, used):
        if k == len(order):
            return True
        idx = order[k]
        for p in options[idx]:
            if used.isdisjoint(p):
                chosen[idx] = p
                if go(k + 1, used | set(p)):
                    return True
        return False

    if go(0, frozenset()):
        return [chosen[k] for k in range(len(options))]
    return None


def _linkable(r: RootedDigraph, elems, T: frozenset, allowed=None, cache=None) -> bool:
    opts = []
    for i in elems:
        key = (i, T)
        if cache is not None and key in cache:
            ps = cache[key]
        else:
            ps = _paths(r.d, r.pi[i], T, allowed)
            if cache is not None:
                cache[key] = ps
        if not ps:
            return False
        opts.append(ps)
    return _disjoint_choice(opts) is not None


def _independent_subsets(m, pool, size):
    for c in combinations(m.sorted(pool), size):
        if m.is_independent(c):
            yield frozenset(c)


# -- oracles ---------------------------------------------------------------------------


def brute_force_max_linkable(r: RootedDigraph, T: Iterable, guard: Optional[Guard] = None):
    """(rank, I) for a largest independent set linkable to ``T``."""
    _guard(r, guard, DEFAULT_GUARD)
    T = frozenset(T)
    if not T:
        raise ValueError("target set must be nonempty")
    reach = r.d.to_set(T)
    pool = [i for i in r.m.ground if r.pi[i] & reach]
    cache: dict = {}
    for k in range(min(len(pool), r.m.rank(pool)), -1, -1):
        for I in _independent_subsets(r.m, pool, k):
            if _linkable(r, r.m.sorted(I), T, cache=cache):
                return k, I
    return 0, frozenset()


def brute_force_linkable_sets(r: RootedDigraph, T: Iterable, guard: Optional[Guard] = None) -> list:
    """Every independent set linkable to ``T``."""
    _guard(r, guard, DEFAULT_GUARD)
    T = frozenset(T)
    reach = r.d.to_set(T)
    pool = [i for i in r.m.ground if r.pi[i] & reach]
    cache: dict = {}
    out = []
    for k in range(len(pool) + 1):
        for I in _independent_subsets(r.m, pool, k):
            if _linkable(r, r.m.sorted(I), T, cache=cache):
                out.append(I)
    return out


def brute_force_is_t_good(r: RootedDigraph, t, X: Iterable) -> bool:
    X = frozenset(X)
    if t not in X:
        raise ValueError(f"{t!r} is not in X")
    inside = {e.id for e in r.d.edges if e.tail in X and e.head in X}
    sx = [i for i in r.m.ground if r.pi[i] & X]
    k = r.m.rank(sx)
    heads = [r.d.edge(e).head for e in r.d.sort_edges(r.d.in_edges(X))]
    T = frozenset([t])
    head_opts = []
    for h in heads:
        ps = _paths(r.d, [h], T, inside)
        if not ps:
            return False
        head_opts.append(ps)
    for B in _independent_subsets(r.m, sx, k):
        opts = list(head_opts)
        ok = True
        for b in r.m.sorted(B):
            ps = _paths(r.d, r.pi[b] & X, T, inside)
            if not ps:
                ok = False
                break
            opts.append(ps)
        if ok and _disjoint_choice(opts) is not None:
            return True
    return False


def _subsets_with(vertices, t):
    rest = [v for v in vertices if v != t]
    for k in range(len(rest) + 1):
        for c in combinations(rest, k):
            yield frozenset(c) | {t}


def brute_force_largest_t_good(r: RootedDigraph, t, guard: Optional[Guard] = None) -> frozenset:
    _guard(r, guard, DEFAULT_GUARD)
    union: set = set()
    for X in _subsets_with(r.d.vertices, t):
        if X <= union:
            continue  # cannot enlarge the union
        if brute_force_is_t_good(r, t, X):
            union |= X
    union = frozenset(union)
    if not brute_force_is_t_good(r, t, union):
        raise AssertionError("union of t-good sets is not t-good")
    return union


def brute_force_is_tight(r: RootedDigraph, X: Iterable) -> bool:
    X = frozenset(X)
    if not X:
        raise ValueError("tightness of the empty set")
    upstream = r.d.to_set(X)
    need = r.m.span({i for i in r.m.ground if r.pi[i] & upstream})
    k = r.m.rank(need)
    all_edges = {e.id for e in r.d.edges}
    for eid in r.d.in_edges(X):
        allowed = all_edges - {eid}
        cache: dict = {}
        for B in _independent_subsets(r.m, need, k):
            if _linkable(r, r.m.sorted(B), X, allowed, cache):
                return False
    return True


def brute_force_dangerous(r: RootedDigraph, i, eid, guard: Optional[Guard] = None) -> Optional[frozenset]:
    """Some i-dangerous set entered by ``eid``, or None."""
    _guard(r, guard, DEFAULT_GUARD)
    e = r.d.edge(eid)
    others = [v for v in r.d.vertices if v not in (e.tail, e.head)]
    for k in range(len(others) + 1):
        for c in combinations(others, k):
            X = frozenset(c) | {e.head}
            sx = {j for j in r.m.ground if r.pi[j] & X}
            if i not in r.m.span(sx):
                continue
            if brute_force_is_tight(r, X):
                return X
    return None


def brute_force_packing(r: RootedDigraph, guard: Optional[Guard] = None):
    """First maximal independent branching packing found by exhaustive
    assignment of edges to elements (or to nobody), or None."""
    _guard(r, guard, PACKING_GUARD)
    from .packing import Branching, Packing

    ground = list(r.m.ground)
    edges = list(r.d.edges)
    verts = {i: set(r.pi[i]) for i in ground}
    members = {v: {i for i in ground if v in r.pi[i]} for v in r.d.vertices}
    assigned: dict = {i: [] for i in ground}

    def go(k):
        if k == len(edges):
            p = Packing({i: Branching(verts[i], assigned[i]) for i in ground})
            return p if verify_packing(r, p).passed else None
        e = edges[k]
        for i in ground:
            if e.head in verts[i]:
                continue
            if not r.m.is_independent(members[e.head] | {i}):
                continue
            verts[i].add(e.head)
            members[e.head].add(i)
            assigned[i].append(e.id)
            hit = go(k + 1)
            assigned[i].pop()
            members[e.head].discard(i)
            verts[i].discard(e.head)
            if hit is not None:
                return hit
        return go(k + 1)

    return go(0)
