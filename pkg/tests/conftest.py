import pytest

from branchpack import Digraph, Free, RootedDigraph, Uniform


def two_vertex(m, pi):
    return RootedDigraph(Digraph(["a", "b"], [("e1", "a", "b")]), m, pi)


@pytest.fixture
def t1():
    return two_vertex(Free(["x"]), {"x": ["a"]})


@pytest.fixture
def t2():
    d = Digraph(["a", "b", "c"], [("e1", "a", "c"), ("e2", "b", "c")])
    return RootedDigraph(d, Free(["x", "y"]), {"x": ["a"], "y": ["b"]})


@pytest.fixture
def t3():
    return two_vertex(Free(["x", "y"]), {"x": ["a"], "y": ["a"]})


@pytest.fixture
def t4():
    return two_vertex(Free(["x", "y"]), {"x": ["a"], "y": ["a", "b"]})


@pytest.fixture
def chain():
    d = Digraph(["a", "b", "c"], [("ab", "a", "b"), ("bc", "b", "c")])
    return RootedDigraph(d, Free(["x"]), {"x": ["a"]})


@pytest.fixture
def rank_one_pair():
    return two_vertex(Uniform(["x", "y"], 1), {"x": ["a"], "y": ["b"]})
