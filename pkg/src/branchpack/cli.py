"""Command line front end.

Every subcommand reads an instance document (a path, or ``-`` for stdin),
prints a JSON result on stdout and a one-line summary on stderr.

Exit codes: 0 success or true, 1 property false, 2 precondition failure,
3 input error, 4 guard exceeded.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor

from . import fixtures, linkage, oracle, packing, serialize
from .errors import BranchpackError, GuardExceededError, PreconditionError, SchemaError

OK, FALSE, PRECONDITION, INPUT, GUARD = 0, 1, 2, 3, 4


class InputError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None


def _instance(path: str) -> serialize.InstanceDoc:
    return serialize.parse_instance(_read(path))


def _vertex_list(r, text: str) -> list:
    vs = [v for v in text.split(",") if v]
    bad = [v for v in vs if v not in r.d._vindex]
    if bad or not vs:
        raise InputError(f"unknown or empty vertex list: {text!r}")
    return vs


def _out(obj) -> None:
    sys.stdout.write(serialize.dumps(obj))


def _say(msg: str) -> None:
    print(msg, file=sys.stderr)


def _cert_json(cert, r):
    return None if cert is None else serialize.certificate_to_json(cert, r)


def _parse_guard(text: str | None):
    if text is None:
        return None
    try:
        v, e, s = (int(x) for x in text.split(","))
    except ValueError:
        raise InputError("--guard expects VERTICES,EDGES,ELEMENTS") from None
    return oracle.Guard(v, e, s)


# -- subcommands ----------------------------------------------------------------------------


def _solve_one(text: str):
    doc = serialize.parse_instance(text)
    r = doc.rooted
    try:
        p, trace = packing.solve(r)
    except PreconditionError as exc:
        return doc.name, PRECONDITION, {
            "error": "precondition",
            "kind": exc.kind,
            "vertex": exc.vertex,
            "certificate": _cert_json(exc.certificate, r),
        }
    return doc.name, OK, {
        "packing": serialize.packing_to_json(p, r),
        "trace": serialize.trace_to_json(trace),
    }


def cmd_solve(a) -> int:
    texts = [_read(p) for p in a.instances]
    if len(texts) == 1:
        name, code, res = _solve_one(texts[0])
        _out(res)
        _say(f"{name or a.instances[0]}: " + ("solved" if code == OK else "precondition failed"))
        return code
    if a.jobs > 1:
        with ProcessPoolExecutor(a.jobs) as pool:
            results = list(pool.map(_solve_one, texts))
    else:
        results = [_solve_one(t) for t in texts]
    merged = {}
    for path, (name, code, res) in zip(a.instances, results):
        merged[name or path] = {"exit": code, **res}
    _out({k: merged[k] for k in sorted(merged)})
    worst = max(code for _, code, _ in results)
    _say(f"{sum(c == OK for _, c, _ in results)}/{len(results)} solved")
    return worst


def cmd_verify(a) -> int:
    r = _instance(a.instance).rooted
    p = serialize.parse_packing(_read(a.packing), r)
    rep = oracle.verify_packing(r, p)
    flags = ("edge_disjoint", "branching", "root_set", "independence", "maximality")
    _out({
        "passed": rep.passed,
        "checks": {f: getattr(rep, f) for f in flags},
        "witnesses": {k: [str(x) for x in v] for k, v in rep.witnesses.items()},
    })
    _say("packing verified" if rep.passed else "packing rejected: " + ", ".join(rep.witnesses))
    return OK if rep.passed else FALSE


def cmd_check(a) -> int:
    r = _instance(a.instance).rooted
    bad = r.independence_violation()
    if bad is not None:
        _out({"independent": False, "vertex": bad})
        _say(f"S({bad}) is dependent")
        return PRECONDITION
    rep = linkage.check_linkage_condition(r)
    if not rep.holds:
        _out({
            "independent": True,
            "linkage_condition": False,
            "vertex": rep.failing,
            "certificate": _cert_json(rep.certificate, r),
        })
        _say(f"linkage condition fails at {rep.failing}")
        return PRECONDITION
    _out({"independent": True, "linkage_condition": True})
    _say("both preconditions hold")
    return OK


def cmd_max_linkage(a) -> int:
    r = _instance(a.instance).rooted
    T = _vertex_list(r, a.target)
    res = linkage.max_linkage(r, T, log_rounds=a.emit_rounds)
    out = {
        "rank": res.rank,
        "elements": r.m.sorted(res.elements),
        "certificate": _cert_json(res.certificate, r),
    }
    if a.emit_rounds:
        out["rounds"] = res.log
    _out(out)
    _say(f"max linkable rank to {','.join(T)} is {res.rank} (need {r.need_rank(T)})")
    return OK


def cmd_tight(a) -> int:
    r = _instance(a.instance).rooted
    X = _vertex_list(r, a.set)
    tight = linkage.is_tight(r, X)
    _out({"X": r.d.sort_vertices(X), "tight": tight})
    _say(f"{','.join(X)} is {'' if tight else 'not '}tight")
    return OK if tight else FALSE


def cmd_dangerous(a) -> int:
    r = _instance(a.instance).rooted
    if a.elem not in r.m:
        raise InputError(f"unknown element {a.elem!r}")
    if a.set is not None:
        X = _vertex_list(r, a.set)
        hit = linkage.is_dangerous(r, X, a.elem)
        _out({"X": r.d.sort_vertices(X), "elem": a.elem, "dangerous": hit})
        _say(f"{','.join(X)} is {'' if hit else 'not '}{a.elem}-dangerous")
        return OK if hit else FALSE
    if a.edge is None:
        raise InputError("give --set or --edge")
    packing.check_preconditions(r)
    X = linkage.find_dangerous_for(r, a.elem, a.edge)
    _out({"elem": a.elem, "edge": a.edge, "X": None if X is None else r.d.sort_vertices(X)})
    _say("no dangerous set: the extension is feasible" if X is None else f"dangerous set {sorted(X)}")
    return OK if X is not None else FALSE


def cmd_gen(a) -> int:
    if a.family == "random":
        b = fixtures.Bounds(a.max_vertices, a.max_edges, a.max_rank, a.max_elements)
        doc = fixtures.gen_random(a.seed, b)
        _say(f"seed {a.seed}: accepted after {doc.metadata['rejected']} rejections")
    elif a.family == "fig1":
        doc = fixtures.fig1_truncate(a.n)
    elif a.family == "fig2":
        doc = fixtures.fig2_truncate(a.n)
    else:
        doc = fixtures.fig3_truncate(a.n, a.k)
    sys.stdout.write(serialize.emit_instance(doc))
    if a.family != "random":
        _say(doc.name)
    return OK


_ORACLE_NEEDS = {
    "max-linkage": ("target",),
    "t-good": ("vertex",),
    "tight": ("set",),
    "dangerous": ("elem", "edge"),
    "packing": (),
}


def cmd_oracle(a) -> int:
    missing = [f"--{n}" for n in _ORACLE_NEEDS[a.what] if getattr(a, n) is None]
    if missing:
        raise InputError(f"oracle {a.what} needs {' '.join(missing)}")
    r = _instance(a.instance).rooted
    g = _parse_guard(a.guard)
    if a.what == "max-linkage":
        T = _vertex_list(r, a.target)
        k, I = oracle.brute_force_max_linkable(r, T, g)
        _out({"rank": k, "elements": r.m.sorted(I)})
        _say(f"brute force: max linkable rank to {','.join(T)} is {k}")
        return OK
    if a.what == "t-good":
        X = oracle.brute_force_largest_t_good(r, a.vertex, g)
        _out({"t": a.vertex, "X": r.d.sort_vertices(X)})
        _say(f"brute force: largest {a.vertex}-good set has {len(X)} vertices")
        return OK
    if a.what == "tight":
        X = _vertex_list(r, a.set)
        oracle._guard(r, g, oracle.DEFAULT_GUARD)
        tight = oracle.brute_force_is_tight(r, X)
        _out({"X": r.d.sort_vertices(X), "tight": tight})
        _say(f"brute force: {'' if tight else 'not '}tight")
        return OK if tight else FALSE
    if a.what == "dangerous":
        X = oracle.brute_force_dangerous(r, a.elem, a.edge, g)
        _out({"elem": a.elem, "edge": a.edge, "X": None if X is None else r.d.sort_vertices(X)})
        _say("brute force: " + ("no dangerous set" if X is None else f"dangerous set {sorted(X)}"))
        return OK if X is not None else FALSE
    p = oracle.brute_force_packing(r, g)
    _out({"packing": None if p is None else serialize.packing_to_json(p, r)})
    _say("brute force: " + ("found a packing" if p is not None else "no packing exists"))
    return OK if p is not None else FALSE


# -- parser -------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="branchpack", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("solve", help="maximal independent branching packing")
    p.add_argument("instances", nargs="+")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(fn=cmd_solve)

    p = sub.add_parser("verify", help="check a packing against an instance")
    p.add_argument("instance")
    p.add_argument("packing")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("check", help="independence and linkage condition")
    p.add_argument("instance")
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("max-linkage", help="largest linkable independent set")
    p.add_argument("instance")
    p.add_argument("--target", required=True, help="comma separated vertices")
    p.add_argument("--emit-rounds", action="store_true")
    p.set_defaults(fn=cmd_max_linkage)

    p = sub.add_parser("tight", help="decide tightness of a vertex set")
    p.add_argument("instance")
    p.add_argument("--set", required=True)
    p.set_defaults(fn=cmd_tight)

    p = sub.add_parser("dangerous", help="dangerous set test or extraction")
    p.add_argument("instance")
    p.add_argument("--elem", required=True)
    p.add_argument("--edge")
    p.add_argument("--set")
    p.set_defaults(fn=cmd_dangerous)

    p = sub.add_parser("gen", help="emit a generated instance")
    p.add_argument("--family", choices=["random", "fig1", "fig2", "fig3"], default="random")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--max-vertices", type=int, default=8)
    p.add_argument("--max-edges", type=int, default=16)
    p.add_argument("--max-rank", type=int, default=4)
    p.add_argument("--max-elements", type=int, default=5)
    p.set_defaults(fn=cmd_gen)

    p = sub.add_parser("oracle", help="exhaustive counterparts on tiny instances")
    p.add_argument("what", choices=["max-linkage", "t-good", "tight", "dangerous", "packing"])
    p.add_argument("instance")
    p.add_argument("--target")
    p.add_argument("--vertex")
    p.add_argument("--set")
    p.add_argument("--elem")
    p.add_argument("--edge")
    p.add_argument("--guard", help="VERTICES,EDGES,ELEMENTS")
    p.set_defaults(fn=cmd_oracle)
    return ap


def main(argv=None) -> int:
    a = build_parser().parse_args(argv)
    try:
        return a.fn(a)
    except GuardExceededError as exc:
        _say(f"guard exceeded: {exc}")
        return GUARD
    except PreconditionError as exc:
        _say(f"precondition failed: {exc}")
        return PRECONDITION
    except (InputError, SchemaError) as exc:
        _say(f"input error: {exc}")
        return INPUT
    except (BranchpackError, ValueError) as exc:
        _say(f"input error: {exc}")
        return INPUT


if __name__ == "__main__":
    sys.exit(main())
