"""Maximum linkable sets and the vertex sets that prove them optimal.

Two elements are rooted at ``a`` and a single edge leads to ``b``.  Only one
of them can reach ``b``; the engine reports a linkage of rank one together
with the set ``X = {b}``, whose only in-edge is already used.  The same set
is tight, and when ``y`` is also rooted at ``b`` it becomes y-dangerous.
"""

from branchpack import Digraph, Free, RootedDigraph
from branchpack.linkage import find_dangerous_for, is_dangerous, is_tight, largest_t_good, max_linkage

d = Digraph(["a", "b"], [("e1", "a", "b")])
crowded = RootedDigraph(d, Free(["x", "y"]), {"x": ["a"], "y": ["a"]})

res = max_linkage(crowded, {"b"}, log_rounds=True)
print("rank reached:", res.rank, "need:", crowded.need_rank({"b"}))
print("certificate X:", sorted(res.certificate.X), "conditions:", res.certificate.conditions)
for entry in res.log:
    print("  round", entry)

shared = RootedDigraph(d, Free(["x", "y"]), {"x": ["a"], "y": ["a", "b"]})
print("\nlargest b-good set:", sorted(largest_t_good(shared, "b")))
print("{b} tight:", is_tight(shared, {"b"}))
print("{b} y-dangerous:", is_dangerous(shared, {"b"}, "y"), " x-dangerous:", is_dangerous(shared, {"b"}, "x"))
print("giving e1 to y is blocked by:", sorted(find_dangerous_for(shared, "y", "e1")))
print("giving e1 to x is blocked by:", find_dangerous_for(shared, "x", "e1"))
