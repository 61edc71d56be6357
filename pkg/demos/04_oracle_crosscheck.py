"""The engine against exhaustive search on a slice of the tiny corpus.

The oracles enumerate independent sets and edge-disjoint path systems
directly; they share nothing with the augmenting-path engine beyond the
digraph and matroid primitives.
"""

from itertools import islice

from branchpack.fixtures import tiny_instances
from branchpack.linkage import largest_t_good, max_linkage
from branchpack.oracle import brute_force_largest_t_good, brute_force_max_linkable

checked = agree = 0
for r in islice(tiny_instances(), 0, None, 11):
    for v in r.d.vertices:
        checked += 1
        same_rank = max_linkage(r, {v}).rank == brute_force_max_linkable(r, {v})[0]
        same_set = largest_t_good(r, v) == brute_force_largest_t_good(r, v)
        agree += same_rank and same_set
print(f"{agree}/{checked} (instance, vertex) pairs agree")
