"""Shared generators for the test-suite."""

import random
from itertools import combinations

from branchpack import DirectSum, Explicit, Free, LinearQ, Minor, Partition, Uniform


def letters(n, offset=0):
    return [chr(ord("a") + offset + k) for k in range(n)]


def matroid_zoo(seed=7):
    """Deterministic mix of every matroid variant on grounds of size <= 6."""
    rng = random.Random(seed)
    out = []
    for n in range(1, 7):
        g = letters(n)
        out.append(Free(g))
        out += [Uniform(g, r) for r in range(n + 1)]
        for cut in range(1, n):
            for _ in range(2):
                out.append(Partition([(g[:cut], rng.randint(0, cut)), (g[cut:], rng.randint(0, n - cut))]))
        for k in range(14):
            dim = rng.randint(1, 4)
            cols = [[rng.randint(-2, 2) for _ in range(dim)] for _ in g]
            lin = LinearQ(g, cols)
            out.append(lin)
            if k < 5:
                out.append(Explicit(g, lin.circuits()))
        for cut in range(1, n):
            left = LinearQ(g[:cut], [[rng.randint(-1, 1), rng.randint(-1, 1)] for _ in g[:cut]])
            out.append(DirectSum([left, Uniform(g[cut:], rng.randint(0, n - cut))]))
        if n <= 4:
            big = letters(n + 2)
            par = LinearQ(big, [[rng.randint(-1, 1) for _ in range(3)] for _ in big])
            out.append(Minor(par, big, big[n:]))
            out.append(Minor(par, big[1:], big[n + 1 :]))
            out.append(Minor(Uniform(big, 3), big[: n + 1], big[n : n + 1]))
    return out


def subsets(xs):
    xs = list(xs)
    for k in range(len(xs) + 1):
        for c in combinations(xs, k):
            yield frozenset(c)


def rooted_strategy(max_vertices=4, max_edges=5, max_elements=3):
    """Hypothesis strategy for small rooted digraphs."""
    from hypothesis import strategies as st

    from branchpack import Digraph, RootedDigraph

    @st.composite
    def build(draw):
        nv = draw(st.integers(2, max_vertices))
        verts = letters(nv)
        pairs = [(a, b) for a in verts for b in verts if a != b]
        chosen = draw(st.lists(st.sampled_from(pairs), max_size=max_edges))
        d = Digraph(verts, [(f"e{k}", a, b) for k, (a, b) in enumerate(chosen)])
        ns = draw(st.integers(1, max_elements))
        ground = [f"s{k}" for k in range(ns)]
        kind = draw(st.sampled_from(["free", "uniform", "linear"]))
        if kind == "free":
            m = Free(ground)
        elif kind == "uniform":
            m = Uniform(ground, draw(st.integers(1, ns)))
        else:
            cols = draw(st.lists(st.lists(st.integers(-1, 1), min_size=2, max_size=2), min_size=ns, max_size=ns))
            m = LinearQ(ground, cols)
        pi = {i: draw(st.lists(st.sampled_from(verts), min_size=1, max_size=2, unique=True)) for i in ground}
        return RootedDigraph(d, m, pi)

    return build()
