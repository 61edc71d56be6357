import pytest

from branchpack import Digraph, ExtensionStep, Free, RootedDigraph, Uniform, fig2_truncate
from branchpack.errors import InvalidRootingError, UndefinedExtensionError
from branchpack.linkage import check_linkage_condition


def test_s_of(t1, t4):
    assert t1.s_of(set()) == frozenset()
    assert t1.s_of({"a"}) == {"x"}
    assert t4.s_of({"b"}) == {"y"}


def test_need(t1, t4):
    assert t1.need({"b"}) == {"x"}
    assert t4.need({"b"}) == {"x", "y"}
    with pytest.raises(ValueError):
        t1.need(set())
    lone = RootedDigraph(Digraph("ab", []), Free("x"), {"x": ["a"]})
    assert lone.need({"b"}) == frozenset()


def test_independence(t1):
    assert t1.is_independent()
    bad = RootedDigraph(Digraph("ab", [("e1", "a", "b")]), Uniform("xy", 1), {"x": "a", "y": "a"})
    assert bad.independence_violation() == "a"
    assert fig2_truncate(2).rooted.is_independent()


def test_linkage_condition(t1, t3):
    assert check_linkage_condition(t1).holds
    rep = check_linkage_condition(t3)
    assert not rep.holds and rep.failing == "b"


def test_empty_root_set_rejected():
    with pytest.raises(InvalidRootingError):
        RootedDigraph(Digraph("ab", []), Free("x"), {"x": []})
    with pytest.raises(InvalidRootingError):
        RootedDigraph(Digraph("ab", []), Free("xy"), {"x": ["a"]})


def test_extend(t1, t4, rank_one_pair):
    r = t1.extend(ExtensionStep("x", "e1"))
    assert r.pi["x"] == {"a", "b"} and not r.d.edges
    assert t4.is_defined("y", "e1")
    err = rank_one_pair.extension_error("x", "e1")
    assert err.code == "dependent"
    with pytest.raises(UndefinedExtensionError):
        rank_one_pair.extend("x", "e1")
    assert t4.extension_error("x", "e1") is None
    d = RootedDigraph(Digraph("ab", [("e1", "a", "b")]), Free("x"), {"x": ["b"]})
    assert d.extension_error("x", "e1").code == "not_outgoing"


def test_apply_trace(t1, chain):
    assert t1.apply_trace([]) == t1
    assert chain.apply_trace([ExtensionStep("x", "ab"), ExtensionStep("x", "bc")]).pi["x"] == set("abc")
    with pytest.raises(UndefinedExtensionError) as info:
        chain.apply_trace([ExtensionStep("x", "bc")])
    assert info.value.index == 0


def test_need_shrinks_under_extension(chain):
    r1 = chain.extend("x", "ab")
    for v in chain.d.vertices:
        assert r1.need({v}) <= chain.need({v})


def test_quotient_of_single_vertex(t4):
    q, fresh = t4.local_instance({"b"})
    assert fresh == {"e1": "i[e1]"}
    assert set(q.m.ground) == {"y", "i[e1]"}
    assert q.pi == {"y": {"b"}, "i[e1]": {"b"}}
    assert q.m.is_independent(q.m.ground)
    assert t4.quotient({"b"}, check=True) == q


def test_quotient_of_everything_is_restriction(t2):
    q, fresh = t2.local_instance(t2.d.vertices)
    assert fresh == {}
    assert q.d == t2.d and q.pi == t2.pi


def test_fresh_names_avoid_clashes():
    r = RootedDigraph(Digraph("ab", [("e1", "a", "b")]), Free(["i[e1]"]), {"i[e1]": ["b"]})
    q, fresh = r.local_instance({"b"})
    assert fresh["e1"] == "_i[e1]"


def test_quotient_check_rejects_loose_set():
    r = RootedDigraph(Digraph("ab", [("e1", "a", "b"), ("e2", "a", "b")]), Free("x"), {"x": ["a"]})
    with pytest.raises(ValueError):
        r.quotient({"b"}, check=True)
    assert r.quotient({"b"}).m.rank() == 2
