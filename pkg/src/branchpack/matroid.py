"""Finite matroids behind one independence oracle.

Every variant implements ``_independent(frozenset)``; rank, span, circuits,
components and minors are derived from it.  The ground ordering given at
construction is the canonical order used for all tie-breaking.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Hashable, Iterable, Sequence

from .errors import (
    InvalidMatroidError,
    NotInSpanError,
    NotIndependentError,
    UnknownElementError,
)

Elem = Hashable

MAX_EXPLICIT_GROUND = 10
MAX_ENUMERATION_GROUND = 16


class Matroid:
    kind = "abstract"

    def __init__(self, ground: Iterable[Elem]):
        ground = tuple(ground)
        if len(set(ground)) != len(ground):
            raise InvalidMatroidError("ground set contains duplicates")
        self.ground = ground
        self._index = {e: k for k, e in enumerate(ground)}
        self._indep_cache: dict[frozenset, bool] = {}
        self._components = None

    # -- identity -----------------------------------------------------
    def _key(self):
        raise NotImplementedError

    def __eq__(self, other):
        return type(self) is type(other) and self._key() == other._key()

    def __hash__(self):
        return hash((type(self).__name__, self._key()))

    def __repr__(self):
        return f"{type(self).__name__}({list(self.ground)!r})"

    def __contains__(self, e):
        return e in self._index

    def __len__(self):
        return len(self.ground)

    # -- ordering helpers ---------------------------------------------
    def index(self, e: Elem) -> int:
        return self._index[e]

    def sorted(self, xs: Iterable[Elem]) -> list:
        return sorted(xs, key=self._index.__getitem__)

    def _check(self, x: Iterable[Elem]) -> frozenset:
        x = frozenset(x)
        unknown = [e for e in x if e not in self._index]
        if unknown:
            raise UnknownElementError(unknown)
        return x

    # -- oracle --------------------------------------------------------
    def _independent(self, x: frozenset) -> bool:
        raise NotImplementedError

    def is_independent(self, x: Iterable[Elem]) -> bool:
        x = self._check(x)
        hit = self._indep_cache.get(x)
        if hit is None:
            hit = self._indep_cache[x] = bool(self._independent(x))
        return hit

    # -- derived operations -------------------------------------------
    def base_of(self, x: Iterable[Elem] | None = None) -> frozenset:
        """Greedy base of ``x`` (default: the whole ground set)."""
        x = self.ground if x is None else self._check(x)
        base: list = []
        for e in self.sorted(x):
            if self.is_independent(base + [e]):
                base.append(e)
        return frozenset(base)

    def rank(self, x: Iterable[Elem] | None = None) -> int:
        return len(self.base_of(x))

    def span(self, x: Iterable[Elem]) -> frozenset:
        x = self._check(x)
        base = self.base_of(x)
        out = set(x)
        for e in self.ground:
            if e not in out and not self.is_independent(base | {e}):
                out.add(e)
        return frozenset(out)

    def is_base(self, x: Iterable[Elem], within: Iterable[Elem] | None = None) -> bool:
        x = self._check(x)
        within = self.ground if within is None else self._check(within)
        if not x <= frozenset(within) or not self.is_independent(x):
            return False
        return self.rank(within) == len(x)

    def fundamental_circuit(self, i: Elem, ind: Iterable[Elem]) -> frozenset:
        ind = self._check(ind)
        self._check([i])
        if not self.is_independent(ind):
            raise NotIndependentError(f"{sorted(map(str, ind))} is dependent")
        if i in ind:
            return frozenset([i])
        both = ind | {i}
        if self.is_independent(both):
            raise NotInSpanError(f"{i!r} is not spanned by the given independent set")
        return frozenset(j for j in both if self.is_independent(both - {j}))

    def exchange_into(self, ind: Iterable[Elem], i: Elem, pool: Iterable[Elem]) -> Elem:
        """Smallest ``j`` in ``pool`` with ``ind - i + j`` independent.

        ``j`` is taken from the component of ``i`` and outside ``ind - i``,
        so bases are mapped to bases.  ``j == i`` is allowed.
        """
        ind = self._check(ind)
        pool = self._check(pool)
        if not self.is_independent(ind):
            raise NotIndependentError("exchange_into needs an independent set")
        if i not in ind:
            raise ValueError(f"{i!r} is not a member of the independent set")
        if i not in self.span(pool):
            raise NotInSpanError(f"{i!r} is not spanned by the pool")
        rest = ind - {i}
        comp = self.component_of(i)
        for j in self.sorted(pool):
            if j in rest or j not in comp:
                continue
            if self.is_independent(rest | {j}):
                return j
        raise AssertionError("exchange element must exist")  # pragma: no cover

    def circuits(self) -> list[frozenset]:
        if len(self.ground) > MAX_ENUMERATION_GROUND:
            raise ValueError("circuit enumeration is limited to small ground sets")
        found: list[frozenset] = []
        for size in range(1, len(self.ground) + 1):
            for c in combinations(self.ground, size):
                c = frozenset(c)
                if any(f <= c for f in found):
                    continue
                if not self.is_independent(c):
                    found.append(c)
        return found

    def bases(self) -> list[frozenset]:
        r = self.rank()
        return [frozenset(b) for b in combinations(self.ground, r) if self.is_independent(b)]

    def components(self) -> list[frozenset]:
        """Connected components, via fundamental circuits of one base."""
        if self._components is None:
            parent = {e: e for e in self.ground}

            def find(e):
                while parent[e] != e:
                    parent[e] = parent[parent[e]]
                    e = parent[e]
                return e

            base = self.base_of()
            for e in self.ground:
                if e in base:
                    continue
                circ = self.fundamental_circuit(e, base)
                for f in circ:
                    a, b = find(e), find(f)
                    if a != b:
                        parent[max(a, b, key=self.index)] = min(a, b, key=self.index)
            groups: dict = {}
            for e in self.ground:
                groups.setdefault(find(e), []).append(e)
            self._components = [frozenset(g) for g in groups.values()]
        return list(self._components)

    def component_of(self, e: Elem) -> frozenset:
        for comp in self.components():
            if e in comp:
                return comp
        raise UnknownElementError([e])

    def loops(self) -> frozenset:
        return frozenset(e for e in self.ground if not self.is_independent([e]))

    def minor(self, keep: Iterable[Elem], contract: Iterable[Elem] = ()) -> "Minor":
        return Minor(self, keep, contract)

    def restrict(self, keep: Iterable[Elem]) -> "Minor":
        return Minor(self, keep, ())


class Free(Matroid):
    kind = "free"

    def _key(self):
        return self.ground

    def _independent(self, x):
        return True

    def rank(self, x=None):
        return len(self.ground if x is None else self._check(x))


class Uniform(Matroid):
    kind = "uniform"

    def __init__(self, ground, rank: int):
        super().__init__(ground)
        if not 0 <= rank:
            raise InvalidMatroidError("uniform rank must be non-negative")
        self.r = int(rank)

    def _key(self):
        return (self.ground, self.r)

    def __repr__(self):
        return f"Uniform({list(self.ground)!r}, rank={self.r})"

    def _independent(self, x):
        return len(x) <= self.r


class Partition(Matroid):
    """Blocks with per-block capacities; blocks partition the ground set."""

    kind = "partition"

    def __init__(self, blocks: Sequence[tuple[Sequence[Elem], int]]):
        blocks = tuple((tuple(elems), int(cap)) for elems, cap in blocks)
        super().__init__(e for elems, _ in blocks for e in elems)
        if any(cap < 0 for _, cap in blocks):
            raise InvalidMatroidError("block capacity must be non-negative")
        self.blocks = blocks
        self._block_of = {e: k for k, (elems, _) in enumerate(blocks) for e in elems}

    def _key(self):
        return self.blocks

    def __repr__(self):
        return f"Partition({[(list(b), c) for b, c in self.blocks]!r})"

    def _independent(self, x):
        counts: dict[int, int] = {}
        for e in x:
            k = self._block_of[e]
            counts[k] = counts.get(k, 0) + 1
        return all(n <= self.blocks[k][1] for k, n in counts.items())


def rational_rank(vectors: Sequence[Sequence[Fraction]]) -> int:
    """Rank of a list of rational vectors by exact Gaussian elimination."""
    rows = [list(v) for v in vectors]
    if not rows:
        return 0
    width = len(rows[0])
    rank = 0
    for col in range(width):
        pivot = next((k for k in range(rank, len(rows)) if rows[k][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        p = rows[rank]
        for k in range(rank + 1, len(rows)):
            f = rows[k][col]
            if f:
                f = f / p[col]
                rows[k] = [a - f * b for a, b in zip(rows[k], p)]
        rank += 1
        if rank == len(rows):
            break
    return rank


def _as_fraction(x) -> Fraction:
    if isinstance(x, float):
        raise InvalidMatroidError("linear matroids take exact rationals, not floats")
    if isinstance(x, (tuple, list)):
        num, den = x
        return Fraction(int(num), int(den))
    return Fraction(x)


class LinearQ(Matroid):
    """Column matroid of rational vectors; ``columns`` maps element -> vector."""

    kind = "linear"

    def __init__(self, ground, columns):
        super().__init__(ground)
        if isinstance(columns, dict):
            cols = [columns[e] for e in self.ground]
        else:
            cols = list(columns)
        if len(cols) != len(self.ground):
            raise InvalidMatroidError("need exactly one column per element")
        self.columns = tuple(tuple(_as_fraction(a) for a in col) for col in cols)
        dims = {len(c) for c in self.columns}
        if len(dims) > 1:
            raise InvalidMatroidError("columns have different lengths")
        self.dim = dims.pop() if dims else 0
        self._col = dict(zip(self.ground, self.columns))

    def _key(self):
        return (self.ground, self.columns)

    def __repr__(self):
        return f"LinearQ({list(self.ground)!r}, dim={self.dim})"

    def column(self, e):
        return self._col[e]

    def _independent(self, x):
        return rational_rank([self._col[e] for e in x]) == len(x)

    def rank(self, x=None):
        x = self.ground if x is None else self._check(x)
        return rational_rank([self._col[e] for e in x])


class Explicit(Matroid):
    """Matroid given by the list of all its circuits."""

    kind = "explicit"

    def __init__(self, ground, circuits):
        super().__init__(ground)
        if len(self.ground) > MAX_EXPLICIT_GROUND:
            raise InvalidMatroidError(
                f"explicit matroids are limited to {MAX_EXPLICIT_GROUND} elements"
            )
        circs = []
        for c in circuits:
            c = self._check(c)
            if not c:
                raise InvalidMatroidError("the empty set is not a circuit")
            if c not in circs:
                circs.append(c)
        self.circuit_list = tuple(sorted(circs, key=lambda c: (len(c), self.sorted(c))))
        self._validate()

    def _validate(self):
        cs = self.circuit_list
        for a in cs:
            for b in cs:
                if a != b and a <= b:
                    raise InvalidMatroidError("circuits must be pairwise non-nested")
        for a, b in combinations(cs, 2):
            for e in a & b:
                rest = (a | b) - {e}
                if not any(c <= rest for c in cs):
                    raise InvalidMatroidError(
                        f"circuit elimination fails for {self.sorted(a)}, {self.sorted(b)} at {e!r}"
                    )

    def _key(self):
        return (self.ground, frozenset(self.circuit_list))

    def __repr__(self):
        return f"Explicit({list(self.ground)!r}, {len(self.circuit_list)} circuits)"

    def _independent(self, x):
        return not any(c <= x for c in self.circuit_list)

    def circuits(self):
        return list(self.circuit_list)


class DirectSum(Matroid):
    kind = "direct_sum"

    def __init__(self, children: Sequence[Matroid]):
        self.children = tuple(children)
        super().__init__(e for ch in self.children for e in ch.ground)
        self._owner = {e: ch for ch in self.children for e in ch.ground}

    def _key(self):
        return self.children

    def __repr__(self):
        return f"DirectSum({list(self.children)!r})"

    def _independent(self, x):
        parts: dict[int, set] = {}
        for e in x:
            parts.setdefault(id(self._owner[e]), set()).add(e)
        by_id = {id(ch): ch for ch in self.children}
        return all(by_id[k].is_independent(p) for k, p in parts.items())


class Minor(Matroid):
    """``keep / contract``: restrict the parent to ``keep``, then contract.

    Contraction uses the greedy base of the contracted set; the result does
    not depend on that choice.
    """

    kind = "minor"

    def __init__(self, parent: Matroid, keep, contract=()):
        keep = parent._check(keep)
        contract = parent._check(contract)
        if not contract <= keep:
            raise InvalidMatroidError("contracted elements must be kept")
        self.parent = parent
        self.keep = frozenset(keep)
        self.contract = frozenset(contract)
        super().__init__(parent.sorted(keep - contract))
        self.contract_base = parent.base_of(contract)

    def _key(self):
        return (self.parent, self.keep, self.contract)

    def __repr__(self):
        return f"Minor({self.parent!r}, keep={self.parent.sorted(self.keep)!r}, contract={self.parent.sorted(self.contract)!r})"

    def _independent(self, x):
        return self.parent.is_independent(x | self.contract_base)

    def with_contract_base(self, base) -> dict:
        """Independence oracle table computed against another base of the contracted set."""
        base = self.parent._check(base)
        if not self.parent.is_base(base, self.contract):
            raise NotIndependentError("not a base of the contracted set")
        return {
            frozenset(x): self.parent.is_independent(frozenset(x) | base)
            for k in range(len(self.ground) + 1)
            for x in combinations(self.ground, k)
        }
