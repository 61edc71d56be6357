"""Matroid-rooted digraphs: a digraph, a matroid, and a root set per element."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable, Mapping

from .digraph import Digraph
from .errors import InvalidRootingError, UndefinedExtensionError, UnknownElementError
from .matroid import DirectSum, Free, Matroid


@dataclass(frozen=True)
class ExtensionStep:
    """Give edge ``edge`` to the branching of element ``elem``."""

    elem: Hashable
    edge: Hashable


class RootedDigraph:
    def __init__(self, d: Digraph, m: Matroid, pi: Mapping):
        self.d = d
        self.m = m
        extra = [i for i in pi if i not in m]
        if extra:
            raise UnknownElementError(extra)
        missing = [i for i in m.ground if i not in pi]
        if missing:
            raise InvalidRootingError(f"no root set for element(s) {missing!r}")
        roots = {}
        for i in m.ground:
            vs = frozenset(pi[i])
            if not vs:
                raise InvalidRootingError(f"root set of {i!r} is empty")
            bad = [v for v in vs if v not in d._vindex]
            if bad:
                raise InvalidRootingError(f"root set of {i!r} names unknown vertices {bad!r}")
            roots[i] = vs
        self.pi = roots
        self._s_at = {v: [] for v in d.vertices}
        for i in m.ground:
            for v in roots[i]:
                self._s_at[v].append(i)
        self._need_cache: dict = {}

    def __eq__(self, other):
        return (
            isinstance(other, RootedDigraph)
            and self.d == other.d
            and self.m == other.m
            and self.pi == other.pi
        )

    def __repr__(self):
        return f"RootedDigraph({self.d!r}, {self.m!r})"

    @property
    def vertices(self):
        return self.d.vertices

    @property
    def ground(self):
        return self.m.ground

    # -- derived sets -------------------------------------------------
    def s_of(self, X: Iterable) -> frozenset:
        X = self.d._check(X)
        return frozenset(i for v in X for i in self._s_at[v])

    def s_at(self, v) -> frozenset:
        return frozenset(self._s_at[v])

    def need(self, X: Iterable) -> frozenset:
        X = self.d._check(X)
        if not X:
            raise ValueError("the need of the empty set is not defined")
        hit = self._need_cache.get(X)
        if hit is None:
            hit = self._need_cache[X] = self.m.span(self.s_of(self.d.to_set(X)))
        return hit

    def need_rank(self, X: Iterable) -> int:
        return self.m.rank(self.need(X))

    def independence_violation(self):
        """First vertex (canonical order) whose S(v) is dependent, else None."""
        for v in self.d.vertices:
            if not self.m.is_independent(self._s_at[v]):
                return v
        return None

    def is_independent(self) -> bool:
        return self.independence_violation() is None

    # -- extension ------------------------------------------------------
    def extension_error(self, i, eid) -> UndefinedExtensionError | None:
        if i not in self.m:
            raise UnknownElementError([i])
        e = self.d.edge(eid)
        if e.tail not in self.pi[i]:
            return UndefinedExtensionError(
                "not_outgoing", i, eid, f"tail {e.tail!r} is not a root of {i!r}"
            )
        if not self.m.is_independent(set(self._s_at[e.head]) | {i}):
            return UndefinedExtensionError(
                "dependent", i, eid, f"S({e.head!r}) + {i!r} is dependent"
            )
        return None

    def is_defined(self, i, eid) -> bool:
        return self.extension_error(i, eid) is None

    def defined_steps(self) -> list[ExtensionStep]:
        """All defined extension steps, in ground then edge order."""
        out = []
        for i in self.m.ground:
            for e in self.d.edges:
                if e.tail in self.pi[i] and self.is_defined(i, e.id):
                    out.append(ExtensionStep(i, e.id))
        return out

    def extend(self, step_or_elem, eid=None) -> "RootedDigraph":
        if isinstance(step_or_elem, ExtensionStep):
            i, eid = step_or_elem.elem, step_or_elem.edge
        else:
            i = step_or_elem
        err = self.extension_error(i, eid)
        if err is not None:
            raise err
        head = self.d.head(eid)
        pi = dict(self.pi)
        pi[i] = self.pi[i] | {head}
        return RootedDigraph(self.d.delete_edge(eid), self.m, pi)

    def apply_trace(self, trace: Iterable) -> "RootedDigraph":
        r = self
        for k, step in enumerate(trace):
            try:
                r = r.extend(step)
            except UndefinedExtensionError as exc:
                exc.index = k
                exc.args = (f"step {k}: {exc.args[0]}",)
                raise
        return r

    # -- local instances -------------------------------------------------
    def fresh_name(self, eid, taken) -> str:
        name = f"i[{eid}]"
        while name in taken:
            name = "_" + name
        return name

    def local_instance(self, X: Iterable) -> tuple["RootedDigraph", dict]:
        """D[X] with S(X) restricted plus one free element per in-edge of X,
        rooted at the head of that edge.  Returns the instance and the map
        from in-edge id to its fresh element."""
        X = self.d._check(X)
        if not X:
            raise ValueError("local instance of the empty set")
        sx = self.s_of(X)
        in_edges = self.d.sort_edges(self.d.in_edges(X))
        taken = set(self.m.ground)
        fresh = {}
        for eid in in_edges:
            name = self.fresh_name(eid, taken)
            taken.add(name)
            fresh[eid] = name
        inner = self.m.restrict(sx)
        m = DirectSum([inner, Free(fresh[e] for e in in_edges)]) if in_edges else inner
        pi = {i: self.pi[i] & X for i in sx}
        for eid, name in fresh.items():
            pi[name] = frozenset([self.d.head(eid)])
        return RootedDigraph(self.d.induced(X), m, pi), fresh

    def quotient(self, X: Iterable, check: bool = False) -> "RootedDigraph":
        """The instance obtained from a tight set ``X``.

        With ``check`` the tightness of ``X`` is verified first."""
        X = frozenset(X)
        if not X:
            raise ValueError("quotient of the empty set")
        if check:
            from .linkage import is_tight

            if not is_tight(self, X):
                raise ValueError(f"{sorted(map(str, X))} is not tight")
        return self.local_instance(X)[0]

    def quotient_names(self, X: Iterable) -> dict:
        return self.local_instance(X)[1]
