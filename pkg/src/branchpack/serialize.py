"""JSON documents for instances, packings, traces and certificates.

Every parser validates against the bundled JSON schema first, then checks
referential integrity; both kinds of failure raise ``SchemaError`` carrying a
JSON pointer to the offending value.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

import jsonschema

from .digraph import Digraph, Edge, Path, emit_dot
from .errors import BranchpackError, SchemaError
from .matroid import DirectSum, Explicit, Free, LinearQ, Matroid, Minor, Partition, Uniform
from .rooted import ExtensionStep, RootedDigraph

__all__ = [
    "InstanceDoc",
    "emit_certificate",
    "emit_dot",
    "emit_instance",
    "emit_packing",
    "emit_trace",
    "parse_certificate",
    "parse_instance",
    "parse_packing",
    "parse_trace",
]


@lru_cache(maxsize=None)
def schema(name: str) -> dict:
    text = resources.files("branchpack.schemas").joinpath(f"{name}.schema.json").read_text()
    return json.loads(text)


def _ptr(parts) -> str:
    return "".join("/" + str(p).replace("~", "~0").replace("/", "~1") for p in parts)


def _load(obj):
    if isinstance(obj, (str, bytes)):
        try:
            return json.loads(obj)
        except json.JSONDecodeError as exc:
            raise SchemaError("", f"invalid JSON: {exc}") from None
    return obj


def _validate(obj, name: str) -> None:
    v = jsonschema.Draft202012Validator(schema(name))
    errors = sorted(v.iter_errors(obj), key=lambda e: (len(e.absolute_path), list(map(str, e.absolute_path))))
    if errors:
        err = jsonschema.exceptions.best_match(errors)
        raise SchemaError(_ptr(err.absolute_path), err.message)


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


# -- matroids --------------------------------------------------------------------


def matroid_to_json(m: Matroid) -> dict:
    if isinstance(m, Free):
        return {"kind": "free", "ground": list(m.ground)}
    if isinstance(m, Uniform):
        return {"kind": "uniform", "ground": list(m.ground), "rank": m.r}
    if isinstance(m, Partition):
        return {
            "kind": "partition",
            "blocks": [{"elements": list(b), "capacity": c} for b, c in m.blocks],
        }
    if isinstance(m, LinearQ):
        return {
            "kind": "linear",
            "ground": list(m.ground),
            "columns": [[[a.numerator, a.denominator] for a in col] for col in m.columns],
        }
    if isinstance(m, Explicit):
        return {
            "kind": "explicit",
            "ground": list(m.ground),
            "circuits": [m.sorted(c) for c in m.circuit_list],
        }
    if isinstance(m, DirectSum):
        return {"kind": "direct_sum", "children": [matroid_to_json(c) for c in m.children]}
    if isinstance(m, Minor):
        return {
            "kind": "minor",
            "parent": matroid_to_json(m.parent),
            "keep": m.parent.sorted(m.keep),
            "contract": m.parent.sorted(m.contract),
        }
    raise TypeError(f"cannot serialise {type(m).__name__}")


def matroid_from_json(doc: dict, where=("matroid",)) -> Matroid:
    kind = doc["kind"]
    try:
        if kind == "free":
            return Free(doc["ground"])
        if kind == "uniform":
            return Uniform(doc["ground"], doc["rank"])
        if kind == "partition":
            return Partition([(b["elements"], b["capacity"]) for b in doc["blocks"]])
        if kind == "linear":
            return LinearQ(doc["ground"], [[tuple(a) for a in col] for col in doc["columns"]])
        if kind == "explicit":
            return Explicit(doc["ground"], doc["circuits"])
        if kind == "direct_sum":
            return DirectSum(
                [matroid_from_json(c, where + ("children", k)) for k, c in enumerate(doc["children"])]
            )
        if kind == "minor":
            parent = matroid_from_json(doc["parent"], where + ("parent",))
            return Minor(parent, doc["keep"], doc["contract"])
    except SchemaError:
        raise
    except (BranchpackError, ValueError, KeyError) as exc:
        raise SchemaError(_ptr(where), str(exc)) from None
    raise SchemaError(_ptr(where + ("kind",)), f"unknown matroid kind {kind!r}")


# -- instances ---------------------------------------------------------------------


@dataclass
class InstanceDoc:
    rooted: RootedDigraph
    name: str = ""
    generator: str = ""
    parameters: dict = field(default_factory=dict)
    metadata: dict = field(default_factory=dict)

    def __eq__(self, other):
        return isinstance(other, InstanceDoc) and (
            self.rooted,
            self.name,
            self.generator,
            self.parameters,
            self.metadata,
        ) == (other.rooted, other.name, other.generator, other.parameters, other.metadata)


def instance_to_json(doc: InstanceDoc) -> dict:
    r = doc.rooted
    out: dict = {}
    if doc.name:
        out["name"] = doc.name
    if doc.generator:
        out["generator"] = doc.generator
    if doc.parameters:
        out["parameters"] = doc.parameters
    if doc.metadata:
        out["metadata"] = doc.metadata
    out["digraph"] = {
        "vertices": list(r.d.vertices),
        "edges": [{"id": e.id, "tail": e.tail, "head": e.head} for e in r.d.edges],
    }
    out["matroid"] = matroid_to_json(r.m)
    out["pi"] = {i: r.d.sort_vertices(r.pi[i]) for i in r.m.ground}
    return out


def emit_instance(doc) -> str:
    if isinstance(doc, RootedDigraph):
        doc = InstanceDoc(doc)
    return dumps(instance_to_json(doc))


def parse_instance(obj) -> InstanceDoc:
    obj = _load(obj)
    _validate(obj, "instance")
    g = obj["digraph"]
    vset = set(g["vertices"])
    seen_e = set()
    for k, e in enumerate(g["edges"]):
        for end in ("tail", "head"):
            if e[end] not in vset:
                raise SchemaError(_ptr(("digraph", "edges", k, end)), f"unknown vertex {e[end]!r}")
        if e["tail"] == e["head"]:
            raise SchemaError(_ptr(("digraph", "edges", k)), "loops are not allowed")
        if e["id"] in seen_e:
            raise SchemaError(_ptr(("digraph", "edges", k, "id")), f"duplicate edge id {e['id']!r}")
        seen_e.add(e["id"])
    d = Digraph(g["vertices"], [Edge(e["id"], e["tail"], e["head"]) for e in g["edges"]])
    m = matroid_from_json(obj["matroid"])
    pi = obj["pi"]
    for i, vs in pi.items():
        if i not in m:
            raise SchemaError(_ptr(("pi", i)), f"{i!r} is not a matroid element")
        for k, v in enumerate(vs):
            if v not in vset:
                raise SchemaError(_ptr(("pi", i, k)), f"unknown vertex {v!r}")
    missing = [i for i in m.ground if i not in pi]
    if missing:
        raise SchemaError("/pi", f"no root set for {missing!r}")
    r = RootedDigraph(d, m, pi)
    return InstanceDoc(
        r,
        obj.get("name", ""),
        obj.get("generator", ""),
        obj.get("parameters", {}),
        obj.get("metadata", {}),
    )


# -- packings and traces ---------------------------------------------------------------


def packing_to_json(p, r: RootedDigraph) -> dict:
    return {
        i: {
            "vertices": r.d.sort_vertices(p.branchings[i].vertices),
            "edges": r.d.sort_edges(p.branchings[i].edges),
        }
        for i in r.m.ground
        if i in p.branchings
    }


def emit_packing(p, r: RootedDigraph) -> str:
    return dumps(packing_to_json(p, r))


def parse_packing(obj, r: RootedDigraph | None = None):
    from .packing import Branching, Packing

    obj = _load(obj)
    _validate(obj, "packing")
    if r is not None:
        for i, b in obj.items():
            if i not in r.m:
                raise SchemaError(_ptr((i,)), f"{i!r} is not a matroid element")
            for k, v in enumerate(b["vertices"]):
                if v not in r.d._vindex:
                    raise SchemaError(_ptr((i, "vertices", k)), f"unknown vertex {v!r}")
            for k, e in enumerate(b["edges"]):
                if not r.d.has_edge(e):
                    raise SchemaError(_ptr((i, "edges", k)), f"unknown edge {e!r}")
    return Packing({i: Branching(b["vertices"], b["edges"]) for i, b in obj.items()})


def trace_to_json(trace) -> list:
    return [{"elem": st.elem, "edge": st.edge} for st in trace]


def emit_trace(trace) -> str:
    return dumps(trace_to_json(trace))


def parse_trace(obj) -> list:
    obj = _load(obj)
    _validate(obj, "trace")
    return [ExtensionStep(st["elem"], st["edge"]) for st in obj]


# -- certificates ------------------------------------------------------------------------


def _path_json(p: Path) -> dict:
    return {"vertices": list(p.vertices), "edges": list(p.edges)}


def certificate_to_json(cert, r: RootedDigraph) -> dict:
    lk = cert.linkage
    return {
        "X": r.d.sort_vertices(cert.X),
        "targets": r.d.sort_vertices(lk.targets),
        "conditions": list(cert.conditions),
        "inner_base": r.m.sorted(cert.inner_base),
        "entry_edges": {i: cert.entry_edges[i] for i in r.m.sorted(cert.entry_edges)},
        "paths": {i: _path_json(lk.paths[i]) for i in r.m.sorted(lk.paths)},
    }


def emit_certificate(cert, r: RootedDigraph) -> str:
    return dumps(certificate_to_json(cert, r))


def parse_certificate(obj, r: RootedDigraph):
    """Rebuild a certificate against ``r``; the stated condition flags must
    match the recomputed ones."""
    from .linkage import Linkage, make_certificate

    obj = _load(obj)
    _validate(obj, "certificate")
    paths = {}
    for i, p in obj["paths"].items():
        try:
            paths[i] = Path(p["vertices"], p["edges"])
            r.d.check_path(paths[i])
        except BranchpackError as exc:
            raise SchemaError(_ptr(("paths", i)), str(exc)) from None
    lk = Linkage(obj["targets"], paths)
    try:
        lk.validate(r)
        cert = make_certificate(r, lk, obj["X"])
    except (BranchpackError, ValueError) as exc:
        raise SchemaError("", str(exc)) from None
    if list(cert.conditions) != obj["conditions"]:
        raise SchemaError("/conditions", f"stated {obj['conditions']}, recomputed {list(cert.conditions)}")
    if sorted(cert.inner_base) != sorted(obj["inner_base"]):
        raise SchemaError("/inner_base", "does not match the linkage")
    if cert.entry_edges != obj["entry_edges"]:
        raise SchemaError("/entry_edges", "does not match the linkage")
    return cert
