"""Instance generators: finite truncations of three counterexample families and
seeded random instances."""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass
from fractions import Fraction
from itertools import combinations_with_replacement

from .digraph import Digraph, Edge
from .errors import GuardExceededError
from .matroid import DirectSum, Free, LinearQ, Matroid, Partition, Uniform
from .rooted import RootedDigraph
from .serialize import InstanceDoc


def _edge(tail: str, head: str, tag: str = "") -> Edge:
    return Edge(f"{tail}>{head}{tag}", tail, head)


# -- two interleaved chains ----------------------------------------------------------


def fig1_truncate(n: int) -> InstanceDoc:
    """Chains u_0..u_n and v_0..v_n with forward edges, backward jumps between
    odd indices and the two cross edges u_1v_0, v_1u_0.  Element 0 is rooted
    at the even u's, element 1 at the even v's.

    The top odd vertex of each chain loses its backward witness path in the
    truncation; every other vertex is listed in ``metadata["interior"]``."""
    if n < 2:
        raise ValueError("fig1_truncate needs n >= 2")
    verts = [f"u{k}" for k in range(n + 1)] + [f"v{k}" for k in range(n + 1)]
    edges = []
    for s in "uv":
        edges += [_edge(f"{s}{k}", f"{s}{k + 1}") for k in range(n)]
        edges += [_edge(f"{s}{k + 2}", f"{s}{k}") for k in range(1, n - 1, 2)]
    edges += [_edge("u1", "v0"), _edge("v1", "u0")]
    pi = {
        "0": [f"u{k}" for k in range(0, n + 1, 2)],
        "1": [f"v{k}" for k in range(0, n + 1, 2)],
    }
    top_odd = n if n % 2 else n - 1
    interior = [v for v in verts if int(v[1:]) != top_odd]
    r = RootedDigraph(Digraph(verts, edges), Free(["0", "1"]), pi)
    return InstanceDoc(r, f"fig1_truncate({n})", "fig1_truncate", {"n": n}, {"interior": interior})


# -- vectors that cannot be split along a star ---------------------------------------


def _unit(dim: int, k: int, sign: int = 0) -> list:
    col = [Fraction(0)] * dim
    col[k] = Fraction(1)
    if sign:
        col[k + 1] = Fraction(sign)
    return col


def fig2_truncate(n: int) -> InstanceDoc:
    """Stars u_k -> v_k -> w for k = 0..n over rational vectors of length n+2.

    S(u_k) = {e_k}, S(v_k) = {e_k + e_{k+1}, e_k - e_{k+1}}.  The vectors at
    v_n span e_{n+1}, which the n+1 edges into w cannot carry, so a cap
    element ``c`` = e_{n+1} is rooted at w.  Any packing then avoids every
    u_k v_k edge: it would put three vectors of a 2-space at v_k."""
    if n < 1:
        raise ValueError("fig2_truncate needs n >= 1")
    dim = n + 2
    verts = [f"u{k}" for k in range(n + 1)] + [f"v{k}" for k in range(n + 1)] + ["w"]
    edges = [_edge(f"u{k}", f"v{k}") for k in range(n + 1)]
    edges += [_edge(f"v{k}", "w") for k in range(n + 1)]
    ground, cols, pi = [], [], {}
    for k in range(n + 1):
        for name, col, root in (
            (f"a{k}", _unit(dim, k), f"u{k}"),
            (f"b{k}+", _unit(dim, k, 1), f"v{k}"),
            (f"b{k}-", _unit(dim, k, -1), f"v{k}"),
        ):
            ground.append(name)
            cols.append(col)
            pi[name] = [root]
    ground.append("c")
    cols.append(_unit(dim, n + 1))
    pi["c"] = ["w"]
    r = RootedDigraph(Digraph(verts, edges), LinearQ(ground, cols), pi)
    meta = {"crossing_edges": [e.id for e in edges[: n + 1]], "cap": "c"}
    return InstanceDoc(r, f"fig2_truncate({n})", "fig2_truncate", {"n": n}, meta)


# -- triangular grid with a hub ------------------------------------------------------


def _cell(m: int, j: int) -> str:
    return f"({m},{j})"


def fig3_truncate(n: int, k: int) -> InstanceDoc:
    """Vertices t and (m, j) for m <= j <= n.  Edge families: k parallel edges
    (m, j+1) -> (m, j); (m, j) -> (m+1, j); (2m+2, j) -> (2m, j);
    (m, m) -> t; t -> (2m+1, j).  Free matroid on 0..n with pi(j) = {(0, j)}."""
    if n < 1 or k < 1:
        raise ValueError("fig3_truncate needs n >= 1 and k >= 1")
    cells = [(m, j) for j in range(n + 1) for m in range(j + 1)]
    verts = ["t"] + [_cell(m, j) for m, j in cells]
    edges = []
    for m, j in cells:
        if j + 1 <= n:
            edges += [_edge(_cell(m, j + 1), _cell(m, j), f"#{c}") for c in range(k)]
    for m, j in cells:
        if m + 1 <= j:
            edges.append(_edge(_cell(m, j), _cell(m + 1, j)))
    for m, j in cells:
        if m % 2 == 0 and m + 2 <= j:
            edges.append(_edge(_cell(m + 2, j), _cell(m, j)))
    edges += [_edge(_cell(m, m), "t") for m in range(n + 1)]
    edges += [_edge("t", _cell(m, j)) for m, j in cells if m % 2 == 1]
    ground = [str(j) for j in range(n + 1)]
    pi = {str(j): [_cell(0, j)] for j in range(n + 1)}
    r = RootedDigraph(Digraph(verts, edges), Free(ground), pi)
    return InstanceDoc(r, f"fig3_truncate({n},{k})", "fig3_truncate", {"n": n, "k": k}, {})


# -- random instances ------------------------------------------------------------------------


@dataclass(frozen=True)
class Bounds:
    vertices: int = 8
    edges: int = 16
    rank: int = 4
    elements: int = 5
    max_tries: int = 10_000


LIMITS = Bounds(vertices=10, edges=24, rank=6, elements=8)


def random_matroid(rng: random.Random, ground: list, rank: int) -> Matroid:
    kind = rng.choice(["free", "uniform", "partition", "linear", "direct_sum"])
    n = len(ground)
    if kind == "free" and n <= rank:
        return Free(ground)
    if kind == "uniform" or kind == "free":
        return Uniform(ground, rng.randint(1, min(rank, n)))
    if kind == "partition":
        blocks: dict = {}
        for e in ground:
            blocks.setdefault(rng.randrange(max(1, n // 2)), []).append(e)
        parts = [(b, rng.randint(1, len(b))) for _, b in sorted(blocks.items())]
        while sum(c for _, c in parts) > rank:
            k = max(range(len(parts)), key=lambda t: parts[t][1])
            parts[k] = (parts[k][0], parts[k][1] - 1)
        return Partition(parts)
    if kind == "linear":
        dim = rng.randint(1, rank)
        cols = [[rng.randint(-1, 1) for _ in range(dim)] for _ in ground]
        return LinearQ(ground, cols)
    cut = rng.randint(1, n - 1) if n > 1 else 1
    left, right = ground[:cut], ground[cut:]
    kids = [Uniform(left, rng.randint(1, min(len(left), max(1, rank // 2))))]
    if right:
        kids.append(Uniform(right, rng.randint(1, min(len(right), max(1, rank - kids[0].r)))))
    return DirectSum(kids)


def _random_once(rng: random.Random, b: Bounds) -> RootedDigraph:
    nv = rng.randint(2, b.vertices)
    verts = [f"v{k}" for k in range(nv)]
    pairs = [(a, c) for a in verts for c in verts if a != c]
    ne = rng.randint(1, min(b.edges, len(pairs) * 2))
    edges = []
    for k in range(ne):
        a, c = rng.choice(pairs)
        edges.append(Edge(f"e{k}", a, c))
    ne_el = rng.randint(1, b.elements)
    ground = [f"s{k}" for k in range(ne_el)]
    m = random_matroid(rng, ground, b.rank)
    pi = {i: rng.sample(verts, rng.randint(1, min(2, nv))) for i in ground}
    return RootedDigraph(Digraph(verts, edges), m, pi)


def _check_bounds(b: Bounds) -> None:
    for name in ("vertices", "edges", "rank", "elements"):
        got, cap = getattr(b, name), getattr(LIMITS, name)
        if got < 1:
            raise ValueError(f"bound {name} must be positive")
        if got > cap:
            raise GuardExceededError(f"bound {name}={got} is above the limit {cap}")


def gen_random(seed: int, bounds: Bounds | None = None) -> InstanceDoc:
    """Sample until the instance is independent and satisfies the linkage
    condition.  The doc records the seed, the bounds and the rejection count."""
    from .linkage import check_linkage_condition

    b = bounds or Bounds()
    _check_bounds(b)
    rng = random.Random(seed)
    for rejected in range(b.max_tries):
        r = _random_once(rng, b)
        if r.m.rank(r.m.ground) > b.rank:
            continue
        if r.is_independent() and check_linkage_condition(r).holds:
            params = {"seed": seed, "bounds": asdict(b)}
            return InstanceDoc(r, f"random-{seed}", "gen_random", params, {"rejected": rejected})
    raise RuntimeError(f"no acceptable instance in {b.max_tries} tries (seed {seed})")


def tiny_instances(max_edges: int = 3):
    """Exhaustive corpus: digraphs on {a, b, c} with up to ``max_edges`` edges
    (parallel edges allowed), two elements under the free matroid or U(1,2),
    root sets drawn from single vertices and {a, b}."""
    verts = ["a", "b", "c"]
    pairs = [(x, y) for x in verts for y in verts if x != y]
    roots = [("a",), ("b",), ("c",), ("a", "b")]
    matroids = [Free(["x", "y"]), Uniform(["x", "y"], 1)]
    for k in range(max_edges + 1):
        for chosen in combinations_with_replacement(pairs, k):
            d = Digraph(verts, [Edge(f"e{t + 1}", x, y) for t, (x, y) in enumerate(chosen)])
            for m in matroids:
                for px in roots:
                    for py in roots:
                        yield RootedDigraph(d, m, {"x": px, "y": py})

