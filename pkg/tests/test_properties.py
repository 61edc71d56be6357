from itertools import combinations

from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from branchpack import oracle
from branchpack.linkage import (
    check_complementarity,
    check_linkage_condition,
    holds_at,
    is_t_good,
    is_tight,
    max_linkage,
)
from branchpack.packing import solve
from branchpack.serialize import InstanceDoc, emit_instance, parse_instance

from helpers import matroid_zoo, rooted_strategy, subsets

ZOO = matroid_zoo()
SETTINGS = settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])


def nonempty(vertices):
    return [X for X in subsets(vertices) if X]


@SETTINGS
@given(st.sampled_from(ZOO), st.data())
def test_hereditary_and_augmentation(m, data):
    ground = list(m.ground)
    I = frozenset(data.draw(st.lists(st.sampled_from(ground), unique=True)))
    J = frozenset(data.draw(st.lists(st.sampled_from(ground), unique=True)))
    if m.is_independent(I):
        assert all(m.is_independent(I - {e}) for e in I)
        if m.is_independent(J) and len(I) < len(J):
            assert any(m.is_independent(I | {e}) for e in J - I)


@SETTINGS
@given(rooted_strategy())
def test_engine_rank_matches_oracle(r):
    for v in r.d.vertices:
        res = max_linkage(r, {v})
        assert res.rank == oracle.brute_force_max_linkable(r, {v})[0]
        assert check_complementarity(r, res.linkage, res.certificate.X).holds
        assert is_t_good(r, v, res.certificate.X)


@SETTINGS
@given(rooted_strategy())
def test_need_of_set_is_span_of_vertex_needs(r):
    for X in nonempty(r.d.vertices):
        union = set()
        for v in X:
            union |= r.need({v})
        assert r.need(X) == r.m.span(union)


@SETTINGS
@given(rooted_strategy())
def test_singleton_condition_implies_set_condition(r):
    if check_linkage_condition(r).holds:
        assert all(holds_at(r, X) for X in nonempty(r.d.vertices))


@SETTINGS
@given(rooted_strategy())
def test_to_set_is_a_monotone_closure(r):
    for X in nonempty(r.d.vertices):
        up = r.d.to_set(X)
        assert X <= up and r.d.to_set(up) == up
        for v in r.d.vertices:
            assert up <= r.d.to_set(X | {v})


@SETTINGS
@given(rooted_strategy())
def test_extension_never_grows_needs(r):
    for st_ in r.defined_steps():
        r1 = r.extend(st_)
        assert all(r1.need({v}) <= r.need({v}) for v in r.d.vertices)


@SETTINGS
@given(rooted_strategy(max_vertices=4))
def test_t_good_sets_are_union_closed(r):
    for t in r.d.vertices:
        good = [X for X in nonempty(r.d.vertices) if t in X and is_t_good(r, t, X)]
        for X, Y in combinations(good, 2):
            assert is_t_good(r, t, X | Y)


@SETTINGS
@given(rooted_strategy(max_vertices=4))
def test_tight_sets_meet_in_tight_sets(r):
    assume(r.is_independent() and check_linkage_condition(r).holds)
    tight = [X for X in nonempty(r.d.vertices) if is_tight(r, X)]
    for X, Y in combinations(tight, 2):
        if X & Y:
            assert is_tight(r, X & Y)
            for i in r.m.ground:
                if i in r.m.span(r.s_of(X)) and i in r.m.span(r.s_of(Y)) and i in r.need(X & Y):
                    assert i in r.m.span(r.s_of(X & Y))


@SETTINGS
@given(rooted_strategy(max_vertices=5, max_edges=7))
def test_solver_output_verifies(r):
    assume(r.is_independent() and check_linkage_condition(r).holds)
    p, trace = solve(r)
    assert oracle.verify_packing(r, p).passed
    assert len(trace) <= len(r.d.edges)


@SETTINGS
@given(rooted_strategy())
def test_instance_round_trip(r):
    doc = InstanceDoc(r, "h")
    assert parse_instance(emit_instance(doc)) == doc
