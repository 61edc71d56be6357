import pytest

from branchpack import fig2_truncate
from branchpack.errors import GuardExceededError
from branchpack.oracle import (
    Guard,
    brute_force_dangerous,
    brute_force_is_t_good,
    brute_force_is_tight,
    brute_force_largest_t_good,
    brute_force_max_linkable,
    brute_force_packing,
    verify_packing,
)
from branchpack.packing import Branching, Packing, solve


def test_verify_solver_output(t1):
    p, _ = solve(t1)
    assert verify_packing(t1, p).passed


def test_verify_detects_missing_edges(t1):
    rep = verify_packing(t1, Packing({"x": Branching({"a"}, set())}))
    assert not rep.maximality and rep.witnesses["maximality"] == ["b"]
    assert rep.edge_disjoint and rep.branching and rep.root_set and rep.independence


def test_verify_detects_shared_edge(t2):
    p = Packing({"x": Branching({"a", "c"}, {"e1"}), "y": Branching({"b", "c"}, {"e1"})})
    rep = verify_packing(t2, p)
    assert not rep.edge_disjoint and not rep.passed


def test_verify_detects_bad_shape(t2):
    p = Packing({"x": Branching({"a", "c"}, {"e2"}), "y": Branching({"b"}, set())})
    assert not verify_packing(t2, p).branching


def test_verify_detects_dependence(rank_one_pair):
    p = Packing({"x": Branching({"a", "b"}, {"e1"}), "y": Branching({"b"}, set())})
    rep = verify_packing(rank_one_pair, p)
    assert not rep.independence


def test_max_linkable(t1, t3, t4):
    assert brute_force_max_linkable(t1, {"b"})[0] == 1
    assert brute_force_max_linkable(t3, {"b"})[0] == 1
    assert brute_force_max_linkable(t4, {"b"}) == (2, frozenset("xy"))


def test_largest_t_good(t3, t4):
    assert brute_force_largest_t_good(t3, "b") == {"b"}
    assert brute_force_largest_t_good(t4, "b") == {"a", "b"}
    assert brute_force_is_t_good(t4, "b", {"b"})


def test_tight_and_dangerous(t1, t4):
    assert brute_force_is_tight(t4, {"b"})
    assert brute_force_dangerous(t4, "y", "e1") == {"b"}
    assert brute_force_dangerous(t4, "x", "e1") is None
    assert brute_force_dangerous(t1, "x", "e1") is None


def test_packing_oracle(t1, t3):
    p = brute_force_packing(t1)
    assert p["x"].edges == {"e1"}
    assert brute_force_packing(t3) is None


def test_packing_oracle_on_star_fixture():
    r = fig2_truncate(1).rooted
    p = brute_force_packing(r, Guard(vertices=8, edges=10, elements=7))
    assert p is not None and verify_packing(r, p).passed


def test_guards():
    r = fig2_truncate(1).rooted
    with pytest.raises(GuardExceededError):
        brute_force_packing(r)
    with pytest.raises(GuardExceededError):
        brute_force_max_linkable(r, {"w"}, Guard(vertices=99))
