import pytest

from branchpack import Digraph, Free, RootedDigraph, Uniform
from branchpack.digraph import Path
from branchpack.errors import InconsistentLinkageError
from branchpack.linkage import (
    Augmented,
    Linkage,
    TGoodCertificate,
    augment_once,
    check_complementarity,
    find_dangerous_for,
    is_dangerous,
    is_t_good,
    is_tight,
    largest_t_good,
    linkage_for,
    max_linkage,
    max_linkage_free,
)


def test_first_augmentation_is_a_path(t2):
    res = augment_once(t2, {"c"}, Linkage({"c"}))
    assert isinstance(res, Augmented)
    assert res.after == {"x"}
    assert res.linkage.paths["x"] == Path("ac", ("e1",))


def test_stuck_state_gives_certificate(t3):
    lk = Linkage({"b"}, {"x": Path("ab", ("e1",))})
    cert = augment_once(t3, {"b"}, lk)
    assert isinstance(cert, TGoodCertificate)
    assert cert.X == {"b"}
    assert cert.conditions == (True, True, True, True)
    assert cert.entry_edges == {"x": "e1"}


def test_spanning_set_cannot_grow():
    d = Digraph(["a", "t"], [("e", "a", "t")])
    r = RootedDigraph(d, Uniform("xy", 1), {"x": ["a"], "y": ["a"]})
    lk = Linkage({"t"}, {"x": Path(("a", "t"), ("e",))})
    assert isinstance(augment_once(r, {"t"}, lk), TGoodCertificate)


def test_inconsistent_input(t2):
    bad = Linkage({"c"}, {"x": Path("bc", ("e2",))})
    with pytest.raises(InconsistentLinkageError):
        augment_once(t2, {"c"}, bad)
    twice = Linkage({"c"}, {"x": Path("ac", ("e1",)), "y": Path("ac", ("e1",))})
    with pytest.raises(InconsistentLinkageError):
        augment_once(RootedDigraph(t2.d, t2.m, {"x": "a", "y": "a"}), {"c"}, twice)


@pytest.mark.parametrize("name,rank,elems", [("t1", 1, {"x"}), ("t3", 1, {"x"}), ("t4", 2, {"x", "y"})])
def test_max_linkage_examples(request, name, rank, elems):
    r = request.getfixturevalue(name)
    res = max_linkage(r, {"b"})
    assert res.rank == rank and res.elements == elems
    assert all(res.certificate.conditions)
    free = max_linkage_free(r, {"b"}, [])
    assert free.rank == res.rank


def test_t4_paths(t4):
    res = max_linkage(t4, {"b"})
    assert res.linkage.paths["y"].is_trivial
    assert res.linkage.paths["x"].edges == ("e1",)


def test_t3_fails_need(t3):
    res = max_linkage(t3, {"b"})
    assert res.rank < t3.need_rank({"b"})
    assert res.certificate.X == {"b"}


def test_rounds_log(t3):
    res = max_linkage(t3, {"b"}, log_rounds=True)
    assert res.log[-1]["unreachable"] == ["b"]
    assert res.log[-1]["exchange"] == []


def test_max_linkage_free_keeps_base(t4):
    res = max_linkage_free(t4, {"b"}, ["y"])
    assert "y" in res.elements and res.rank == 2


def test_empty_target(t1):
    with pytest.raises(ValueError):
        max_linkage(t1, set())


def test_t_good(t3, t4):
    assert is_t_good(t4, "b", {"b"})
    assert is_t_good(t4, "b", {"a", "b"})
    assert not is_t_good(t3, "b", {"a", "b"})
    assert is_t_good(t3, "a", {"a"})
    with pytest.raises(ValueError):
        is_t_good(t4, "b", {"a"})


def test_largest_t_good(t3, t4):
    assert largest_t_good(t4, "b") == {"a", "b"}
    assert largest_t_good(t3, "b") == {"b"}


def test_complementarity_corruptions(t3, t4):
    lk = Linkage({"b"}, {"x": Path("ab", ("e1",))})
    assert check_complementarity(t3, lk, {"b"}).holds
    empty = Linkage({"b"}, {})
    rep = check_complementarity(t3, empty, {"b"})
    assert not rep.conditions[3] and not rep.alternate
    lk4 = Linkage({"b"}, {"x": Path("ab", ("e1",)), "y": Path.trivial("b")})
    assert check_complementarity(t4, lk4, {"b"}).holds


def test_condition_two_detects_leaving_path():
    # y is rooted inside X = {a, b} but its path to b runs through c
    d2 = Digraph("abc", [("e1", "a", "c"), ("e2", "c", "b")])
    r2 = RootedDigraph(d2, Free("y"), {"y": ["a"]})
    lk = Linkage({"b"}, {"y": Path("acb", ("e1", "e2"))})
    rep = check_complementarity(r2, lk, {"a", "b"})
    assert not rep.conditions[1]


def test_tight_and_dangerous(t1, t4):
    assert is_tight(t4, {"b"})
    assert is_dangerous(t4, {"b"}, "y")
    assert not is_dangerous(t4, {"b"}, "x")
    assert is_tight(t1, {"b"})
    assert not is_dangerous(t1, {"b"}, "x")
    assert is_tight(t1, {"a", "b"})


def test_find_dangerous_for(t1, t4):
    assert find_dangerous_for(t4, "y", "e1") == {"b"}
    assert find_dangerous_for(t4, "x", "e1") is None
    assert find_dangerous_for(t1, "x", "e1") is None


def test_linkage_for_reduced(t4):
    full = linkage_for(t4, {"b"})
    red = linkage_for(t4, {"b"}, reduced=True)
    assert full.rank == 2
    assert set(red.linkage.paths) == {"x"}
    assert red.linkage.is_strict(t4)
