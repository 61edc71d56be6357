import json
from fractions import Fraction

import pytest

from branchpack import (
    DirectSum,
    Explicit,
    ExtensionStep,
    Free,
    LinearQ,
    Minor,
    Partition,
    RootedDigraph,
    Uniform,
    fig1_truncate,
    fig2_truncate,
    fig3_truncate,
    gen_random,
)
from branchpack.errors import SchemaError
from branchpack.linkage import max_linkage
from branchpack.packing import solve
from branchpack.serialize import (
    InstanceDoc,
    emit_certificate,
    emit_instance,
    emit_packing,
    emit_trace,
    matroid_from_json,
    matroid_to_json,
    parse_certificate,
    parse_instance,
    parse_packing,
    parse_trace,
)


def test_round_trip_t1(t1):
    doc = InstanceDoc(t1, "T1")
    text = emit_instance(doc)
    back = parse_instance(text)
    assert back == doc
    assert emit_instance(back) == text


def test_linear_negative_rationals():
    m = LinearQ(["p", "q"], [[Fraction(-3, 4), 2], [Fraction(5, -7), 0]])
    assert matroid_from_json(matroid_to_json(m)) == m
    assert matroid_to_json(m)["columns"][1] == [[-5, 7], [0, 1]]


@pytest.mark.parametrize(
    "m",
    [
        Free("ab"),
        Uniform("abc", 2),
        Partition([("ab", 1), ("c", 1)]),
        Explicit("abc", [["a", "b"]]),
        DirectSum([Free("a"), Uniform("bc", 1)]),
        Minor(Uniform("abcd", 3), "abc", "a"),
    ],
    ids=lambda m: m.kind,
)
def test_matroid_round_trip(m):
    doc = json.loads(json.dumps(matroid_to_json(m)))
    assert matroid_from_json(doc) == m


@pytest.mark.parametrize(
    "doc", [fig1_truncate(3), fig2_truncate(2), fig3_truncate(2, 2), gen_random(5)], ids=lambda d: d.name
)
def test_fixture_round_trip(doc):
    assert parse_instance(emit_instance(doc)) == doc


def test_packing_and_trace_round_trip(t2):
    p, trace = solve(t2)
    assert parse_packing(emit_packing(p, t2), t2) == p
    assert parse_trace(emit_trace(trace)) == trace
    assert parse_trace("[]") == []


def test_certificate_round_trip(t3, t4):
    for r in (t3, t4):
        cert = max_linkage(r, {"b"}).certificate
        assert parse_certificate(emit_certificate(cert, r), r) == cert


def _base(t1):
    return json.loads(emit_instance(t1))


def _pointer(obj):
    with pytest.raises(SchemaError) as info:
        parse_instance(obj)
    return info.value.pointer


def test_empty_root_set_rejected(t1):
    doc = _base(t1)
    doc["pi"]["x"] = []
    assert _pointer(doc) == "/pi/x"


def test_unknown_vertex_in_pi(t1):
    doc = _base(t1)
    doc["pi"]["x"] = ["zz"]
    assert _pointer(doc) == "/pi/x/0"


def test_unknown_edge_endpoint(t1):
    doc = _base(t1)
    doc["digraph"]["edges"][0]["head"] = "q"
    assert _pointer(doc) == "/digraph/edges/0/head"


def test_ground_mismatch(t1):
    doc = _base(t1)
    doc["pi"]["y"] = ["a"]
    assert _pointer(doc) == "/pi/y"
    doc = _base(t1)
    doc["matroid"]["ground"] = ["x", "y"]
    assert _pointer(doc) == "/pi"


def test_bad_matroid_kind(t1):
    doc = _base(t1)
    doc["matroid"] = {"kind": "graphic", "ground": ["x"]}
    assert _pointer(doc).startswith("/matroid")


def test_invalid_json():
    with pytest.raises(SchemaError):
        parse_instance("{not json")


def test_invalid_explicit_matroid(t1):
    doc = _base(t1)
    doc["matroid"] = {"kind": "explicit", "ground": ["x"], "circuits": [["x"], ["x", "x"]]}
    with pytest.raises(SchemaError):
        parse_instance(doc)


def test_certificate_with_wrong_flags(t3):
    cert = max_linkage(t3, {"b"}).certificate
    doc = json.loads(emit_certificate(cert, t3))
    doc["conditions"] = [True, True, True, False]
    with pytest.raises(SchemaError) as info:
        parse_certificate(doc, t3)
    assert info.value.pointer == "/conditions"


def test_packing_unknown_edge(t1):
    with pytest.raises(SchemaError) as info:
        parse_packing({"x": {"vertices": ["a"], "edges": ["nope"]}}, t1)
    assert info.value.pointer == "/x/edges/0"


def test_emit_is_deterministic():
    assert emit_instance(gen_random(9)) == emit_instance(gen_random(9))
